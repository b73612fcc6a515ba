"""Partitions, compositions, cells, and their q,t bookkeeping statistics.

Shapes are plain tuples of ints: partitions weakly decreasing, compositions
arbitrary positive parts.  Cells use the French convention, zero-based, as
(col, row) with (0,0) the SW corner.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .qtfield import QTR_ONE, QTR_ZERO, QtRational

Partition = tuple[int, ...]
Composition = tuple[int, ...]
Cell = tuple[int, int]  # (col, row)


def check_partition(mu) -> Partition:
    mu = tuple(int(p) for p in mu)
    if any(p < 1 for p in mu):
        raise ValueError(f"partition parts must be >= 1: {mu}")
    if any(mu[i] < mu[i + 1] for i in range(len(mu) - 1)):
        raise ValueError(f"partition parts must be weakly decreasing: {mu}")
    return mu


def check_composition(alpha) -> Composition:
    alpha = tuple(int(p) for p in alpha)
    if any(p < 1 for p in alpha):
        raise ValueError(f"composition parts must be >= 1: {alpha}")
    return alpha


def conjugate(mu: Partition) -> Partition:
    if not mu:
        return ()
    out = [0] * mu[0]
    for p in mu:
        for i in range(p):
            out[i] += 1
    return tuple(out)


def cells(mu: Partition):
    """All cells of mu as (col, row)."""
    for row, p in enumerate(mu):
        for col in range(p):
            yield (col, row)


def cell_stats(mu: Partition, c: Cell) -> tuple[int, int, int, int]:
    """(arm, leg, coarm, coleg) of a cell: counts strictly E/N/W/S of it."""
    col, row = c
    if row < 0 or row >= len(mu) or col < 0 or col >= mu[row]:
        raise ValueError(f"cell {c} not in partition {mu}")
    conj = conjugate(mu)
    arm = mu[row] - col - 1
    leg = conj[col] - row - 1
    return arm, leg, col, row


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple[Partition, ...]:
    """All partitions of n, lexicographically decreasing from (n)."""
    if n < 0:
        return ()
    if n == 0:
        return ((),)

    def gen(remaining: int, maxpart: int):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, maxpart), 0, -1):
            for rest in gen(remaining - first, first):
                yield (first,) + rest

    return tuple(gen(n, n))


@lru_cache(maxsize=None)
def compositions_of(n: int) -> tuple[Composition, ...]:
    """All compositions of n in lex order; n=0 gives (), negative n gives none."""
    if n < 0:
        return ()
    if n == 0:
        return ((),)

    def gen(remaining: int):
        if remaining == 0:
            yield ()
            return
        for first in range(1, remaining + 1):
            for rest in gen(remaining - first):
                yield (first,) + rest

    return tuple(gen(n))


def enumerate_shapes(n: int, kind: str):
    if kind == "partitions":
        return partitions_of(n)
    if kind == "compositions":
        return compositions_of(n)
    raise ValueError(f"unknown shape kind: {kind!r}")


@dataclass(frozen=True)
class PartitionInvariants:
    """The scalar package attached to a partition, all exact."""

    nmu: int
    nmu_conj: int
    T: QtRational
    B: QtRational
    Pi: QtRational
    D: QtRational
    w: QtRational


def capital_m() -> QtRational:
    """(1-t)(1-q)."""
    return _CAP_M


_CAP_M = QtRational({(0, 0): 1, (1, 0): -1, (0, 1): -1, (1, 1): 1}, 1)


@lru_cache(maxsize=None)
def partition_invariants(mu: Partition) -> PartitionInvariants:
    mu = check_partition(mu)
    nmu = sum(i * p for i, p in enumerate(mu))
    nmu_conj = sum(p * (p - 1) // 2 for p in mu)
    T = QtRational({(nmu_conj, nmu): 1}, 1)
    B = QTR_ZERO
    Pi = QTR_ONE
    w = QTR_ONE
    for (col, row) in cells(mu):
        B = B + QtRational({(col, row): 1}, 1)
        if (col, row) != (0, 0):
            Pi = Pi * QtRational({(0, 0): 1, (col, row): -1}, 1)
        arm, leg, _, _ = cell_stats(mu, (col, row))
        w = w * QtRational({(arm, 0): 1, (0, leg + 1): -1}, 1)
        w = w * QtRational({(0, leg): 1, (arm + 1, 0): -1}, 1)
    D = _CAP_M * B - QTR_ONE
    return PartitionInvariants(nmu, nmu_conj, T, B, Pi, D, w)


def corners(mu: Partition) -> tuple[tuple[Partition, ...], tuple[Partition, ...]]:
    """(removable, addable) neighbours of mu in Young's lattice, by row."""
    mu = check_partition(mu)
    removable = []
    for i in range(len(mu)):
        nxt = mu[i + 1] if i + 1 < len(mu) else 0
        if mu[i] > nxt:
            parts = list(mu)
            parts[i] -= 1
            if parts[-1] == 0:
                parts.pop()
            removable.append(tuple(parts))
    addable = []
    for i in range(len(mu) + 1):
        prev = mu[i - 1] if i > 0 else None
        cur = mu[i] if i < len(mu) else 0
        if prev is None or prev > cur:
            parts = list(mu)
            if i < len(mu):
                parts[i] += 1
            else:
                parts.append(1)
            addable.append(tuple(parts))
    return tuple(removable), tuple(addable)


def remove_part(alpha: Composition, i: int) -> Composition:
    """Delete the i-th part (1-based), preserving the order of the others."""
    if not 1 <= i <= len(alpha):
        raise IndexError(f"part index {i} out of range for {alpha}")
    return alpha[: i - 1] + alpha[i:]


def dominance_leq(lam: Partition, mu: Partition):
    """True if lam <= mu in dominance, False if mu < lam, None if incomparable."""
    if sum(lam) != sum(mu):
        raise ValueError("dominance compares partitions of equal size")
    k = max(len(lam), len(mu))
    le = ge = True
    sl = sm = 0
    for i in range(k):
        sl += lam[i] if i < len(lam) else 0
        sm += mu[i] if i < len(mu) else 0
        if sl > sm:
            le = False
        if sl < sm:
            ge = False
    if le:
        return True
    if ge:
        return False
    return None


def zmu(mu: Partition) -> int:
    """Order of the centralizer of a permutation of cycle type mu."""
    out = 1
    mult: dict[int, int] = {}
    for p in mu:
        mult[p] = mult.get(p, 0) + 1
    for p, m in mult.items():
        f = 1
        for j in range(1, m + 1):
            f *= j
        out *= p**m * f
    return out


def partition_str(mu: Partition) -> str:
    return "[" + ",".join(str(p) for p in mu) + "]"


def composition_str(alpha: Composition) -> str:
    return "(" + ",".join(str(p) for p in alpha) + ")"


def parse_partition(s: str) -> Partition:
    s = s.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ValueError(f"bad partition string: {s!r}")
    body = s[1:-1].strip()
    if not body:
        return ()
    return check_partition(int(p) for p in body.split(","))


def parse_composition(s: str) -> Composition:
    s = s.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ValueError(f"bad composition string: {s!r}")
    body = s[1:-1].strip()
    if not body:
        return ()
    return check_composition(int(p) for p in body.split(","))
