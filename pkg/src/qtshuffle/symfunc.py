"""Symmetric functions over Q(q,t) with plethysm on formal alphabets.

The internal canonical basis is the power-sum basis, where plethysm is
diagonal and both scalar products are diagonal; conversions to the
elementary, homogeneous, monomial and Schur bases go through per-degree
transition matrices (Schur via Murnaghan-Nakayama characters).
"""

from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache

from .qtfield import (
    QTR_ONE,
    QTR_ZERO,
    QtRational,
    ZLaurent,
    qtr,
)
from .shapes import Partition, partitions_of, zmu

BASES = ("power", "elementary", "homogeneous", "monomial", "schur")
_BASIS_ALIAS = {"p": "power", "e": "elementary", "h": "homogeneous", "m": "monomial", "s": "schur"}

_degree_cap = 12
_cache_lock = threading.Lock()


def set_degree_cap(n: int) -> None:
    """Raise or lower the safety cap on symmetric-function degrees."""
    global _degree_cap
    _degree_cap = int(n)


def _check_degree(n: int) -> None:
    if n > _degree_cap:
        raise ValueError(f"degree {n} exceeds the configured cap {_degree_cap}")


# ---------------------------------------------------------------------------
# characters and transition matrices
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def character(lam: Partition, mu: Partition) -> int:
    """Irreducible symmetric group character chi^lam(mu), by rim-hook recursion."""
    if not mu:
        return 1 if not lam else 0
    r = mu[0]
    rest = mu[1:]
    k = len(lam)
    beta = [lam[j] + (k - 1 - j) for j in range(k)]
    bset = set(beta)
    total = 0
    for j, b in enumerate(beta):
        nb = b - r
        if nb < 0 or nb in bset:
            continue
        crossed = sum(1 for x in beta if nb < x < b)
        newbeta = sorted((x for idx, x in enumerate(beta) if idx != j), reverse=True)
        newbeta.append(nb)
        newbeta.sort(reverse=True)
        newlam = tuple(x - (k - 1 - i) for i, x in enumerate(newbeta))
        newlam = tuple(p for p in newlam if p > 0)
        term = character(newlam, rest)
        total += -term if crossed % 2 else term
    return total


def _merge_part(lam: Partition, k: int) -> Partition:
    return tuple(sorted(lam + (k,), reverse=True))


@lru_cache(maxsize=None)
def _e_in_p(k: int) -> dict:
    """e_k in the power basis: dict[partition] -> Fraction."""
    if k == 0:
        return {(): Fraction(1)}
    out: dict = {}
    for i in range(1, k + 1):
        sign = Fraction(1 if i % 2 else -1, k)
        for lam, c in _e_in_p(k - i).items():
            key = _merge_part(lam, i)
            out[key] = out.get(key, Fraction(0)) + sign * c
    return {kk: v for kk, v in out.items() if v}


@lru_cache(maxsize=None)
def _h_in_p(k: int) -> dict:
    if k == 0:
        return {(): Fraction(1)}
    out: dict = {}
    for i in range(1, k + 1):
        for lam, c in _h_in_p(k - i).items():
            key = _merge_part(lam, i)
            out[key] = out.get(key, Fraction(0)) + Fraction(1, k) * c
    return {kk: v for kk, v in out.items() if v}


def _prod_in_p(factors) -> dict:
    out = {(): Fraction(1)}
    for f in factors:
        nxt: dict = {}
        for lam, c in out.items():
            for rho, d in f.items():
                key = tuple(sorted(lam + rho, reverse=True))
                nxt[key] = nxt.get(key, Fraction(0)) + c * d
        out = {k: v for k, v in nxt.items() if v}
    return out


def _invert(parts, mat: dict) -> dict:
    """Invert {row: {col: Fraction}} over the given index set."""
    n = len(parts)
    idx = {p: i for i, p in enumerate(parts)}
    a = [[Fraction(0)] * n for _ in range(n)]
    for r, row in mat.items():
        for c, v in row.items():
            a[idx[r]][idx[c]] = v
    inv = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col])
        a[col], a[piv] = a[piv], a[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        inv[col] = [x / pv for x in inv[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    out: dict = {}
    for i, p in enumerate(parts):
        row = {parts[j]: inv[i][j] for j in range(n) if inv[i][j]}
        out[p] = row
    return out


class _BasisData:
    """Per-degree transition matrices between the classical bases and power."""

    def __init__(self, n: int):
        parts = partitions_of(n)
        self.parts = parts
        to_p = {
            "elementary": {lam: _prod_in_p([_e_in_p(k) for k in lam]) for lam in parts},
            "homogeneous": {lam: _prod_in_p([_h_in_p(k) for k in lam]) for lam in parts},
            "schur": {
                lam: {mu: Fraction(character(lam, mu), zmu(mu)) for mu in parts if character(lam, mu)}
                for lam in parts
            },
        }
        # p_lam = sum_mu z_lam * (h_mu in p)_lam * m_mu
        to_p["monomial"] = None  # filled below via inversion
        from_p = {
            "schur": {mu: {lam: Fraction(character(lam, mu)) for lam in parts if character(lam, mu)} for mu in parts},
            "elementary": _invert(parts, to_p["elementary"]),
            "homogeneous": _invert(parts, to_p["homogeneous"]),
        }
        p2m = {
            lam: {mu: zmu(lam) * to_p["homogeneous"][mu].get(lam, Fraction(0)) for mu in parts}
            for lam in parts
        }
        p2m = {lam: {mu: v for mu, v in row.items() if v} for lam, row in p2m.items()}
        from_p["monomial"] = p2m
        to_p["monomial"] = _invert(parts, p2m)
        self.to_p = to_p
        self.from_p = from_p


_basis_cache: dict[int, _BasisData] = {}


def _basis_data(n: int) -> _BasisData:
    data = _basis_cache.get(n)
    if data is None:
        _check_degree(n)
        with _cache_lock:
            data = _basis_cache.get(n)
            if data is None:
                data = _BasisData(n)
                _basis_cache[n] = data
    return data


# ---------------------------------------------------------------------------
# SymFunc
# ---------------------------------------------------------------------------


def _coerce_coeff(c):
    if isinstance(c, (QtRational, ZLaurent)):
        return c
    return qtr(c if isinstance(c, (int, Fraction)) else Fraction(c))


class SymFunc:
    """Graded symmetric function; coefficients QtRational or ZLaurent."""

    __slots__ = ("basis", "coeffs")

    def __init__(self, basis: str, coeffs: dict):
        basis = _BASIS_ALIAS.get(basis, basis)
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}")
        clean: dict[Partition, object] = {}
        for lam, c in coeffs.items():
            lam = tuple(int(p) for p in lam)
            if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)) or any(p < 1 for p in lam):
                raise ValueError(f"invalid partition key {lam}")
            c = _coerce_coeff(c)
            if not c.is_zero():
                clean[lam] = c
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, *a):  # pragma: no cover - immutability guard
        raise AttributeError("SymFunc is immutable")

    # -- constructors

    @staticmethod
    def zero() -> "SymFunc":
        return SymFunc("power", {})

    @staticmethod
    def one() -> "SymFunc":
        return SymFunc("power", {(): QTR_ONE})

    @staticmethod
    def scalar(c) -> "SymFunc":
        return SymFunc("power", {(): c})

    # -- structure

    def degrees(self) -> tuple[int, ...]:
        return tuple(sorted({sum(lam) for lam in self.coeffs}))

    def max_degree(self) -> int:
        return max((sum(lam) for lam in self.coeffs), default=0)

    def homogeneous_component(self, d: int) -> "SymFunc":
        return SymFunc(self.basis, {lam: c for lam, c in self.coeffs.items() if sum(lam) == d})

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_homogeneous(self) -> bool:
        return len({sum(lam) for lam in self.coeffs}) <= 1

    def map_coeffs(self, fn) -> "SymFunc":
        return SymFunc(self.basis, {lam: fn(c) for lam, c in self.coeffs.items()})

    def has_z(self) -> bool:
        return any(isinstance(c, ZLaurent) for c in self.coeffs.values())

    def demote(self) -> "SymFunc":
        """Collapse ZLaurent coefficients supported on z^0 back to QtRational."""
        out = {}
        for lam, c in self.coeffs.items():
            if isinstance(c, ZLaurent):
                flat = c.constant_or_none()
                out[lam] = flat if flat is not None else c
            else:
                out[lam] = c
        return SymFunc(self.basis, out)

    # -- basis conversion

    def to_power(self) -> "SymFunc":
        if self.basis == "power":
            return self
        out: dict = {}
        for lam, c in self.coeffs.items():
            table = _basis_data(sum(lam)).to_p[self.basis][lam]
            for mu, f in table.items():
                cur = out.get(mu)
                term = c * f
                out[mu] = term if cur is None else cur + term
        return SymFunc("power", out)

    def convert(self, target: str) -> "SymFunc":
        target = _BASIS_ALIAS.get(target, target)
        if target not in BASES:
            raise ValueError(f"unknown basis {target!r}")
        if target == self.basis:
            return self
        f = self.to_power()
        if target == "power":
            return f
        out: dict = {}
        for mu, c in f.coeffs.items():
            table = _basis_data(sum(mu)).from_p[target][mu]
            for lam, w in table.items():
                cur = out.get(lam)
                term = c * w
                out[lam] = term if cur is None else cur + term
        return SymFunc(target, out)

    # -- arithmetic

    def __add__(self, other: "SymFunc") -> "SymFunc":
        if not isinstance(other, SymFunc):
            return NotImplemented
        a, b = self, other
        if a.basis != b.basis:
            a, b = a.to_power(), b.to_power()
        out = dict(a.coeffs)
        for lam, c in b.coeffs.items():
            cur = out.get(lam)
            out[lam] = c if cur is None else cur + c
        return SymFunc(a.basis, out)

    def __neg__(self) -> "SymFunc":
        return SymFunc(self.basis, {lam: -c for lam, c in self.coeffs.items()})

    def __sub__(self, other: "SymFunc") -> "SymFunc":
        return self + (-other)

    def __mul__(self, other) -> "SymFunc":
        if isinstance(other, SymFunc):
            a, b = self.to_power(), other.to_power()
            out: dict = {}
            for lam, c in a.coeffs.items():
                for rho, d in b.coeffs.items():
                    key = tuple(sorted(lam + rho, reverse=True))
                    term = c * d
                    cur = out.get(key)
                    out[key] = term if cur is None else cur + term
            return SymFunc("power", out)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c) -> "SymFunc":
        if isinstance(c, (int, Fraction)):
            if c == 0:
                return SymFunc(self.basis, {})
            return SymFunc(self.basis, {lam: v * c for lam, v in self.coeffs.items()})
        c = _coerce_coeff(c)
        return SymFunc(self.basis, {lam: v * c for lam, v in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymFunc):
            return NotImplemented
        a, b = self.to_power().demote(), other.to_power().demote()
        if set(a.coeffs) != set(b.coeffs):
            return False
        return all(a.coeffs[k] == b.coeffs[k] for k in a.coeffs)

    def __hash__(self) -> int:
        f = self.to_power().demote()
        return hash(frozenset(f.coeffs.items()))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "SymFunc(0)"
        body = ", ".join(
            f"{lam}: {c.canonical() if isinstance(c, QtRational) else c!r}"
            for lam, c in sorted(self.coeffs.items())
        )
        return f"SymFunc[{self.basis}]({{{body}}})"


def p_(mu) -> SymFunc:
    return SymFunc("power", {tuple(sorted(mu, reverse=True)): QTR_ONE})


def e_(k: int) -> SymFunc:
    if k < 0:
        return SymFunc.zero()
    return SymFunc("elementary", {((k,) if k else ()): QTR_ONE})


def h_(k: int) -> SymFunc:
    if k < 0:
        return SymFunc.zero()
    return SymFunc("homogeneous", {((k,) if k else ()): QTR_ONE})


def s_(mu) -> SymFunc:
    return SymFunc("schur", {tuple(sorted(mu, reverse=True)): QTR_ONE})


def m_(mu) -> SymFunc:
    return SymFunc("monomial", {tuple(sorted(mu, reverse=True)): QTR_ONE})


def convert_basis(f: SymFunc, target: str) -> SymFunc:
    return f.convert(target)


def symfunc_to_json(f: SymFunc) -> dict:
    """JSON form of a homogeneous symmetric function, canonical coefficients."""
    from .qtfield import QtRational
    from .shapes import partition_str

    if not f.is_homogeneous():
        raise ValueError("only homogeneous symmetric functions serialize")
    coeffs = {}
    for lam, c in sorted(f.coeffs.items()):
        if not isinstance(c, QtRational):
            raise ValueError("coefficients with live z do not serialize")
        coeffs[partition_str(lam)] = c.canonical()
    return {"basis": f.basis, "degree": f.max_degree(), "coeffs": coeffs}


def symfunc_from_json(data: dict) -> SymFunc:
    from .qtfield import parse_rational
    from .shapes import parse_partition

    coeffs = {
        parse_partition(lam): parse_rational(c) for lam, c in data["coeffs"].items()
    }
    f = SymFunc(data["basis"], coeffs)
    if f.coeffs and f.max_degree() != data["degree"]:
        raise ValueError("degree field does not match the coefficients")
    return f


# ---------------------------------------------------------------------------
# scalar products and omega
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _star_weight(lam: Partition) -> QtRational:
    """<p_lam, p_lam>_* / z_lam without the z factor: the deformed diagonal."""
    w = QTR_ONE
    for part in lam:
        w = w * QtRational({(0, 0): 1, (0, part): -1}, 1) * QtRational({(0, 0): 1, (part, 0): -1}, 1)
    sign = (-1) ** (sum(lam) - len(lam))
    return w if sign == 1 else -w


def hall_inner(f: SymFunc, g: SymFunc):
    """Hall scalar product; diagonal on the power basis with weights z_mu."""
    a, b = f.to_power(), g.to_power()
    small, big = (a.coeffs, b.coeffs) if len(a.coeffs) <= len(b.coeffs) else (b.coeffs, a.coeffs)
    total = QTR_ZERO
    for lam, c in small.items():
        d = big.get(lam)
        if d is not None:
            total = total + c * d * zmu(lam)
    return total


def star_inner(f: SymFunc, g: SymFunc):
    """Deformed (star) scalar product."""
    a, b = f.to_power(), g.to_power()
    small, big = (a.coeffs, b.coeffs) if len(a.coeffs) <= len(b.coeffs) else (b.coeffs, a.coeffs)
    total = QTR_ZERO
    for lam, c in small.items():
        d = big.get(lam)
        if d is not None:
            total = total + c * d * (_star_weight(lam) * zmu(lam))
    return total


def omega_involution(f: SymFunc) -> SymFunc:
    fp = f.to_power()
    out = {}
    for lam, c in fp.coeffs.items():
        out[lam] = c if (sum(lam) - len(lam)) % 2 == 0 else -c
    return SymFunc("power", out)


def skew_by_e1(f: SymFunc) -> SymFunc:
    """Hall-adjoint of multiplication by e_1 (d/dp_1 on the power basis)."""
    fp = f.to_power()
    out: dict = {}
    for lam, c in fp.coeffs.items():
        m1 = lam.count(1)
        if not m1:
            continue
        key = lam[:-1]  # partitions are sorted decreasing, so 1s sit at the end
        term = c * m1
        cur = out.get(key)
        out[key] = term if cur is None else cur + term
    return SymFunc("power", out)


# ---------------------------------------------------------------------------
# plethystic alphabets
# ---------------------------------------------------------------------------


class Alphabet:
    """Formal plethystic argument: sum of X-terms and scalar terms.

    Each term is (is_x, value, eps) with value a ZLaurent over Q(q,t);
    p_k sends an X-term to value(q^k,t^k,z^k)*p_k and a scalar term to
    value(q^k,t^k,z^k), with an extra (-1)^k when the term is eps-marked.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        object.__setattr__(self, "terms", tuple(terms))

    def __setattr__(self, *a):  # pragma: no cover - immutability guard
        raise AttributeError("Alphabet is immutable")

    @staticmethod
    def X(mult=1, eps: bool = False) -> "Alphabet":
        m = mult if isinstance(mult, ZLaurent) else ZLaurent({0: mult})
        return Alphabet(((True, m, eps),))

    @staticmethod
    def scalar(value, eps: bool = False) -> "Alphabet":
        v = value if isinstance(value, ZLaurent) else ZLaurent({0: value})
        return Alphabet(((False, v, eps),))

    def __add__(self, other: "Alphabet") -> "Alphabet":
        return Alphabet(self.terms + other.terms)

    def __neg__(self) -> "Alphabet":
        return Alphabet(tuple((x, -v, e) for x, v, e in self.terms))

    def __sub__(self, other: "Alphabet") -> "Alphabet":
        return self + (-other)

    def pk(self, k: int) -> tuple[ZLaurent, ZLaurent]:
        """(multiplier of p_k, scalar part) of p_k applied to this alphabet."""
        xm = ZLaurent({})
        sc = ZLaurent({})
        sign = -1 if k % 2 else 1
        for is_x, value, eps in self.terms:
            v = value.frobenius(k)
            if eps and sign < 0:
                v = -v
            if is_x:
                xm = xm + v
            else:
                sc = sc + v
        return xm, sc


ALPHABET_X = Alphabet.X()


def plethysm(f: SymFunc, A: Alphabet) -> SymFunc:
    """f[A]: substitute the alphabet into every power sum of f."""
    fp = f.to_power()
    if not fp.coeffs:
        return SymFunc.zero()
    pk_cache: dict[int, tuple[ZLaurent, ZLaurent]] = {}

    def pk(k: int):
        got = pk_cache.get(k)
        if got is None:
            got = A.pk(k)
            pk_cache[k] = got
        return got

    out: dict = {}
    for lam, c in fp.coeffs.items():
        expanded: dict[Partition, object] = {(): c}
        for part in lam:
            xm, sc = pk(part)
            nxt: dict = {}
            for key, val in expanded.items():
                if not xm.is_zero():
                    nk = tuple(sorted(key + (part,), reverse=True))
                    term = val * xm
                    cur = nxt.get(nk)
                    nxt[nk] = term if cur is None else cur + term
                if not sc.is_zero():
                    term = val * sc
                    cur = nxt.get(key)
                    nxt[key] = term if cur is None else cur + term
            expanded = nxt
            if not expanded:
                break
        for key, val in expanded.items():
            cur = out.get(key)
            out[key] = val if cur is None else cur + val
    return SymFunc("power", out).demote()


def plethysm_eval(f: SymFunc, value: QtRational) -> QtRational:
    """f[value] for a pure q,t-scalar alphabet; returns the scalar result."""
    fp = f.to_power()
    total = QTR_ZERO
    for lam, c in fp.coeffs.items():
        term = c
        for part in lam:
            term = term * value.frobenius(part)
        total = total + term
    if not isinstance(total, QtRational):
        raise TypeError("plethysm_eval requires QtRational coefficients")
    return total


def extract_z(f: SymFunc, a: int) -> SymFunc:
    """Coefficient of z^a of every coefficient of f."""
    out = {}
    for lam, c in f.coeffs.items():
        if isinstance(c, ZLaurent):
            out[lam] = c.extract(a)
        elif a == 0:
            out[lam] = c
    return SymFunc(f.basis, out)


def omega_series(A: Alphabet, maxdeg: int, z_trunc: int | None = None) -> SymFunc:
    """The exponential kernel of A, truncated at X-degree maxdeg.

    Scalar terms of A must have strictly positive z-valuation; their
    exponential is truncated at z-degree z_trunc (defaults to maxdeg).
    """
    if maxdeg < 0:
        raise ValueError("maxdeg must be nonnegative")
    _check_degree(maxdeg)
    if z_trunc is None:
        z_trunc = maxdeg
    # X part: exp of sum_k xm_k p_k / k
    log_x: dict = {}
    scal_log = ZLaurent({})
    kmax = max(maxdeg, z_trunc if any(not t[0] for t in A.terms) else 0)
    for k in range(1, kmax + 1):
        xm, sc = A.pk(k)
        if k <= maxdeg and not xm.is_zero():
            log_x[(k,)] = xm * Fraction(1, k)
        if not sc.is_zero():
            if min(sc.terms) < 1:
                raise ValueError("scalar part of an omega argument needs positive z-valuation")
            if k <= z_trunc:
                scal_log = scal_log + _z_truncate(sc * Fraction(1, k), z_trunc)
    L = SymFunc("power", log_x)
    result = SymFunc.one()
    term = SymFunc.one()
    for j in range(1, maxdeg + 1):
        term = _deg_truncate(term * L, maxdeg).scale(Fraction(1, j))
        if term.is_zero():
            break
        result = result + term
    if not scal_log.is_zero():
        ez = ZLaurent({0: QTR_ONE})
        sterm = ZLaurent({0: QTR_ONE})
        for j in range(1, z_trunc + 1):
            sterm = _z_truncate(sterm * scal_log, z_trunc) * Fraction(1, j)
            if sterm.is_zero():
                break
            ez = ez + sterm
        result = result.map_coeffs(lambda c: c * ez)
    return result.demote()


def _deg_truncate(f: SymFunc, maxdeg: int) -> SymFunc:
    return SymFunc(f.basis, {lam: c for lam, c in f.coeffs.items() if sum(lam) <= maxdeg})


def _z_truncate(L: ZLaurent, zmax: int) -> ZLaurent:
    return ZLaurent({e: c for e, c in L.terms.items() if e <= zmax})


# ---------------------------------------------------------------------------
# quasisymmetric bridge
# ---------------------------------------------------------------------------


class QSymFunc:
    """Degree-n quasisymmetric function in Gessel's fundamental basis."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs: dict):
        clean: dict[frozenset, QtRational] = {}
        for S, c in coeffs.items():
            S = frozenset(int(i) for i in S)
            if any(i < 1 or i >= degree for i in S):
                raise ValueError(f"descent set {set(S)} out of range for degree {degree}")
            c = _coerce_coeff(c)
            if not c.is_zero():
                clean[S] = c
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, *a):  # pragma: no cover - immutability guard
        raise AttributeError("QSymFunc is immutable")

    def __add__(self, other: "QSymFunc") -> "QSymFunc":
        if self.degree != other.degree:
            raise ValueError("cannot add quasisymmetric functions of different degrees")
        out = dict(self.coeffs)
        for S, c in other.coeffs.items():
            cur = out.get(S)
            out[S] = c if cur is None else cur + c
        return QSymFunc(self.degree, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSymFunc):
            return NotImplemented
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.degree, frozenset(self.coeffs.items())))

    def monomials(self, nvars: int) -> dict:
        """Expansion into monomials of x_1..x_nvars: dict[exponents] -> QtRational."""
        out: dict = {}
        for S, c in self.coeffs.items():
            for exps, mult in gessel_Q(S, self.degree, nvars).items():
                cur = out.get(exps, QTR_ZERO)
                val = cur + c * mult
                if val.is_zero():
                    out.pop(exps, None)
                else:
                    out[exps] = val
        return out

    def __repr__(self) -> str:
        body = ", ".join(
            f"{sorted(S)}: {c.canonical()}" for S, c in sorted(self.coeffs.items(), key=lambda x: sorted(x[0]))
        )
        return f"QSymFunc(deg={self.degree}, {{{body}}})"


@lru_cache(maxsize=None)
def _syt_descent_counts(lam: Partition) -> tuple[tuple[frozenset, int], ...]:
    """Multiset of descent sets over standard tableaux of shape lam."""
    n = sum(lam)
    counts: dict[frozenset, int] = {}
    rows = len(lam)
    fill = [0] * rows
    rowof = [0] * (n + 1)

    def place(k: int):
        if k > n:
            des = frozenset(i for i in range(1, n) if rowof[i + 1] > rowof[i])
            counts[des] = counts.get(des, 0) + 1
            return
        for r in range(rows):
            if fill[r] < lam[r] and (r == 0 or fill[r - 1] > fill[r]):
                fill[r] += 1
                rowof[k] = r
                place(k + 1)
                fill[r] -= 1

    place(1)
    return tuple(sorted(counts.items(), key=lambda x: sorted(x[0])))


def fundamental_expand(f: SymFunc) -> QSymFunc:
    """Expand a homogeneous symmetric function in the fundamental basis."""
    if f.is_zero():
        return QSymFunc(0, {})
    if not f.is_homogeneous():
        raise ValueError("fundamental expansion needs a homogeneous input")
    n = f.max_degree()
    fs = f.convert("schur")
    out: dict = {}
    for lam, c in fs.coeffs.items():
        for des, mult in _syt_descent_counts(lam):
            cur = out.get(des)
            term = c * mult
            out[des] = term if cur is None else cur + term
    return QSymFunc(n, out)


@lru_cache(maxsize=None)
def _gessel_words(S: frozenset, n: int, nvars: int) -> tuple[tuple[int, ...], ...]:
    words = []

    def extend(word):
        if len(word) == n:
            words.append(tuple(word))
            return
        pos = len(word)
        lo = 1 if pos == 0 else (word[-1] + 1 if pos in S else word[-1])
        for v in range(lo, nvars + 1):
            extend(word + [v])

    extend([])
    return tuple(words)


def gessel_Q(S, n: int, nvars: int) -> dict:
    """Monomial expansion of the fundamental quasisymmetric function.

    Returns dict[exponent tuple (length nvars)] -> int multiplicity.
    """
    S = frozenset(int(i) for i in S)
    if any(i < 1 or i >= n for i in S):
        raise ValueError(f"descent set {set(S)} out of range for degree {n}")
    out: dict = {}
    for word in _gessel_words(S, n, nvars):
        exps = [0] * nvars
        for v in word:
            exps[v - 1] += 1
        key = tuple(exps)
        out[key] = out.get(key, 0) + 1
    return out


def monomial_restriction(f: SymFunc, nvars: int) -> dict:
    """f as a polynomial in x_1..x_nvars: dict[exponents] -> QtRational."""
    fm = f.convert("monomial")
    out: dict = {}
    for lam, c in fm.coeffs.items():
        if len(lam) > nvars:
            continue
        for exps in _distinct_perms(lam, nvars):
            out[exps] = c
    return out


@lru_cache(maxsize=None)
def _distinct_perms(lam: Partition, nvars: int) -> tuple[tuple[int, ...], ...]:
    padded = list(lam) + [0] * (nvars - len(lam))
    seen = set()

    def perms(rest):
        if not rest:
            yield ()
            return
        used = set()
        for i, v in enumerate(rest):
            if v in used:
                continue
            used.add(v)
            for tail in perms(rest[:i] + rest[i + 1 :]):
                yield (v,) + tail

    for pm in perms(padded):
        seen.add(pm)
    return tuple(sorted(seen))
