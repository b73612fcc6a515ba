"""The modified Macdonald basis, nabla, Pieri coefficients, the creation
operators and their star-adjoints, and the registry of checkable identities.

Tables are built per degree by solving the orthogonality + normalization
system over the rescaled Schur basis s_lam[X/(t-1)], then revalidated against
the defining invariants before use.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
from dataclasses import dataclass
from functools import lru_cache

from .qtfield import (
    Q,
    QTR_ONE,
    QTR_ZERO,
    QtRational,
    T,
    ZLaurent,
    parse_rational,
    qtr,
)
from .shapes import (
    Composition,
    Partition,
    capital_m,
    compositions_of,
    corners,
    partition_invariants,
    partition_str,
    parse_partition,
    partitions_of,
)
from .symfunc import (
    Alphabet,
    SymFunc,
    e_,
    extract_z,
    h_,
    hall_inner,
    omega_involution,
    omega_series,
    plethysm,
    plethysm_eval,
    skew_by_e1,
    star_inner,
)


class TableInvariantError(RuntimeError):
    """A Macdonald table failed its defining invariants (convention bug)."""


# ---------------------------------------------------------------------------
# the modified Macdonald table
# ---------------------------------------------------------------------------


class HTildeTable:
    """Per-degree table mu -> modified Macdonald polynomial (Schur basis)."""

    def __init__(self, degree: int, entries: dict):
        self.degree = degree
        self.entries = {mu: f.convert("schur") for mu, f in entries.items()}
        self.power = {mu: f.to_power() for mu, f in entries.items()}
        self.invariants = {mu: partition_invariants(mu) for mu in entries}

    def __getitem__(self, mu: Partition) -> SymFunc:
        return self.entries[tuple(mu)]

    def verify(self) -> None:
        """Assert star-orthogonality with norms w_mu and <.,h_n> = 1."""
        parts = partitions_of(self.degree)
        if set(self.entries) != set(parts):
            raise TableInvariantError(f"degree {self.degree} table has wrong support")
        hn = h_(self.degree).to_power()
        for i, mu in enumerate(parts):
            if hall_inner(self.power[mu], hn) != QTR_ONE:
                raise TableInvariantError(f"normalization failed for {mu}")
            for lam in parts[i:]:
                got = star_inner(self.power[lam], self.power[mu])
                want = self.invariants[mu].w if lam == mu else QTR_ZERO
                if got != want:
                    raise TableInvariantError(f"orthogonality failed at ({lam}, {mu})")

    # -- cache file round trip

    def to_json(self) -> dict:
        entries = {}
        for mu in sorted(self.entries):
            f = self.entries[mu]
            entries[partition_str(mu)] = {
                partition_str(lam): c.canonical() for lam, c in sorted(f.coeffs.items())
            }
        return {"degree": self.degree, "format": 1, "entries": entries}

    @classmethod
    def from_json(cls, data: dict) -> "HTildeTable":
        if data.get("format") != 1:
            raise ValueError(f"unsupported table format: {data.get('format')!r}")
        entries = {}
        for mu_s, coeffs in data["entries"].items():
            mu = parse_partition(mu_s)
            entries[mu] = SymFunc(
                "schur", {parse_partition(lam): parse_rational(c) for lam, c in coeffs.items()}
            )
        table = cls(int(data["degree"]), entries)
        table.verify()
        return table

    def save(self, path: str) -> None:
        """Atomic write: temp file in the target directory, then rename."""
        directory = os.path.dirname(os.path.abspath(path))
        os.makedirs(directory, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(self.to_json(), fh, sort_keys=True, indent=1)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    @classmethod
    def load(cls, path: str) -> "HTildeTable":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


_tables: dict[int, HTildeTable] = {}
_tables_lock = threading.Lock()


def _rescaled_schur(lam: Partition) -> SymFunc:
    """s_lam[X/(t-1)], the triangularity frame for the table solve."""
    mult = QtRational(1, {(0, 1): 1, (0, 0): -1})
    return plethysm(SymFunc("schur", {lam: QTR_ONE}), Alphabet.X(ZLaurent({0: mult})))


def _solve_table(n: int, ascending: bool) -> dict:
    parts = sorted(partitions_of(n)) if ascending else sorted(partitions_of(n), reverse=True)
    gs = [_rescaled_schur(lam) for lam in parts]
    hn = h_(n).to_power()
    built: dict[Partition, SymFunc] = {}
    star_rows: list[list[QtRational]] = []  # <g_j, Htilde_built_i>_*
    for idx, mu in enumerate(parts):
        size = idx + 1
        mat = [[QTR_ZERO] * size for _ in range(size)]
        rhs = [QTR_ZERO] * size
        for i in range(idx):
            for j in range(size):
                mat[i][j] = star_rows[i][j] if j < len(star_rows[i]) else star_inner(gs[j], built[parts[i]])
        for j in range(size):
            mat[idx][j] = hall_inner(gs[j], hn)
        rhs[idx] = QTR_ONE
        sol = _solve_linear(mat, rhs)
        if sol is None:
            raise TableInvariantError(f"singular system while building degree {n}")
        f = SymFunc.zero()
        for j, x in enumerate(sol):
            if not x.is_zero():
                f = f + gs[j].scale(x)
        built[mu] = f.to_power()
        star_rows.append([star_inner(gs[j], built[mu]) for j in range(len(parts))])
    return built


def _solve_linear(mat, rhs):
    """Gaussian elimination over Q(q,t); returns None when singular."""
    n = len(rhs)
    a = [row[:] + [rhs[i]] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not a[r][col].is_zero()), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = a[col][col].inverse()
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and not a[r][col].is_zero():
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


def build_htilde(n: int) -> HTildeTable:
    """Build (or fetch) the degree-n table; invariants asserted before return."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    table = _tables.get(n)
    if table is not None:
        return table
    with _tables_lock:
        table = _tables.get(n)
        if table is not None:
            return table
        if n == 0:
            table = HTildeTable(0, {(): SymFunc.one()})
        else:
            last_err = None
            table = None
            for ascending in (True, False):
                try:
                    entries = _solve_table(n, ascending)
                    cand = HTildeTable(n, entries)
                    cand.verify()
                    table = cand
                    break
                except TableInvariantError as err:
                    last_err = err
            if table is None:
                raise TableInvariantError(f"no triangularity direction works at degree {n}: {last_err}")
        _tables[n] = table
    return table


def install_table(table: HTildeTable) -> None:
    """Adopt a loaded (already verified) table into the in-process cache."""
    table.verify()
    with _tables_lock:
        _tables[table.degree] = table


def htilde_expand(f: SymFunc) -> dict:
    """Expansion coefficients of f on the modified Macdonald basis, per degree."""
    out: dict[Partition, QtRational] = {}
    fp = f.to_power()
    for d in fp.degrees():
        comp = fp.homogeneous_component(d)
        table = build_htilde(d)
        for mu in partitions_of(d):
            c = star_inner(comp, table.power[mu]) / table.invariants[mu].w
            if not c.is_zero():
                out[mu] = c
    return out


def nabla(f: SymFunc, sign: int = 1) -> SymFunc:
    """The Macdonald eigenoperator (sign=-1 gives its inverse)."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    out = SymFunc.zero()
    for mu, c in htilde_expand(f).items():
        tbl = build_htilde(sum(mu))
        eig = tbl.invariants[mu].T ** sign
        out = out + tbl.power[mu].scale(c * eig)
    return out


# ---------------------------------------------------------------------------
# Pieri coefficients
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PieriData:
    shape: Partition
    direction: str  # "add" (d coefficients) or "remove" (c coefficients)
    coeffs: dict


def _d_coeff(mu: Partition, nu: Partition) -> QtRational:
    """d_{mu,nu}: coefficient of H~_mu in e_1 H~_nu."""
    tn, tm = build_htilde(sum(nu)), build_htilde(sum(mu))
    f = e_(1) * tn.power[nu]
    return star_inner(f, tm.power[mu]) / tm.invariants[mu].w


def _c_coeff(mu: Partition, nu: Partition) -> QtRational:
    """c_{mu,nu}: coefficient of H~_nu in e_1-perp H~_mu."""
    tm, tn = build_htilde(sum(mu)), build_htilde(sum(nu))
    f = skew_by_e1(tm.power[mu])
    return star_inner(f, tn.power[nu]) / tn.invariants[nu].w


def pieri(shape: Partition, direction: str) -> PieriData:
    shape = tuple(shape)
    M = capital_m()
    if direction == "add":
        nu = shape
        addable = corners(nu)[1]
        tbl = build_htilde(sum(nu) + 1)
        f = e_(1) * build_htilde(sum(nu)).power[nu]
        coeffs = {}
        for mu in partitions_of(sum(nu) + 1):
            d = star_inner(f, tbl.power[mu]) / tbl.invariants[mu].w
            if mu in addable:
                coeffs[mu] = d
                c = _c_coeff(mu, nu)
                wn = partition_invariants(nu).w
                wm = partition_invariants(mu).w
                if d != M * c * wn / wm:
                    raise TableInvariantError(f"Pieri relation failed at {mu} <- {nu}")
            elif not d.is_zero():
                raise TableInvariantError(f"spurious Pieri support {mu} <- {nu}")
        return PieriData(nu, "add", coeffs)
    if direction == "remove":
        mu = shape
        if not mu:
            return PieriData(mu, "remove", {})
        removable = corners(mu)[0]
        tbl = build_htilde(sum(mu) - 1)
        f = skew_by_e1(build_htilde(sum(mu)).power[mu])
        coeffs = {}
        for nu in partitions_of(sum(mu) - 1):
            c = star_inner(f, tbl.power[nu]) / tbl.invariants[nu].w
            if nu in removable:
                coeffs[nu] = c
                d = _d_coeff(mu, nu)
                wn = partition_invariants(nu).w
                wm = partition_invariants(mu).w
                if d != M * c * wn / wm:
                    raise TableInvariantError(f"Pieri relation failed at {mu} -> {nu}")
            elif not c.is_zero():
                raise TableInvariantError(f"spurious Pieri support {mu} -> {nu}")
        return PieriData(mu, "remove", coeffs)
    raise ValueError(f"unknown Pieri direction {direction!r}")


@lru_cache(maxsize=None)
def _pieri_remove(mu: Partition) -> tuple[tuple[Partition, QtRational], ...]:
    data = pieri(mu, "remove")
    return tuple(sorted(data.coeffs.items()))


@lru_cache(maxsize=None)
def _pieri_add(nu: Partition) -> tuple[tuple[Partition, QtRational], ...]:
    data = pieri(nu, "add")
    return tuple(sorted(data.coeffs.items()))


# ---------------------------------------------------------------------------
# creation operators and star-adjoints
# ---------------------------------------------------------------------------


def op_C(a: int, P: SymFunc) -> SymFunc:
    """Composition creation operator; raises the degree by a (a >= 1)."""
    if a < 1:
        raise ValueError("op_C is defined here for a >= 1 only")
    shift = Alphabet.X() + Alphabet.scalar(ZLaurent({-1: Q.inverse() - 1}))
    om = omega_series(Alphabet.X(ZLaurent({1: QTR_ONE})), P.max_degree() + a)
    res = extract_z(plethysm(P, shift) * om, a)
    return res.scale((-Q.inverse()) ** (a - 1)).demote()


def op_B(a: int, P: SymFunc) -> SymFunc:
    """The companion creation operator; a may be zero or negative."""
    shift = Alphabet.X() + Alphabet.scalar(ZLaurent({-1: 1 - Q}), eps=True)
    om = omega_series(-Alphabet.X(ZLaurent({1: QTR_ONE}), eps=True), P.max_degree() + max(a, 0))
    return extract_z(plethysm(P, shift) * om, a).demote()


def op_C_star(a: int, P: SymFunc) -> SymFunc:
    """Star-adjoint of op_C; lowers the degree by a."""
    if a < 1:
        raise ValueError("op_C_star is defined here for a >= 1 only")
    M = capital_m()
    shift = Alphabet.X() + Alphabet.scalar(ZLaurent({-1: -M}), eps=True)
    om_mult = ZLaurent({1: -(Q * (1 - T)).inverse()})
    om = omega_series(Alphabet.X(om_mult, eps=True), max(P.max_degree() - a, 0))
    res = extract_z(plethysm(P, shift) * om, -a)
    return res.scale((-Q.inverse()) ** (a - 1)).demote()


def op_B_star(a: int, P: SymFunc) -> SymFunc:
    """Star-adjoint of op_B."""
    M = capital_m()
    shift = Alphabet.X() + Alphabet.scalar(ZLaurent({-1: M}))
    om = omega_series(Alphabet.X(ZLaurent({1: -(1 - T).inverse()})), max(P.max_degree() - a, 0))
    return extract_z(plethysm(P, shift) * om, -a).demote()


def op_adjoint(kind: str, a: int, P: SymFunc) -> SymFunc:
    if kind == "C":
        return op_C_star(a, P)
    if kind == "B":
        return op_B_star(a, P)
    raise ValueError(f"unknown operator kind {kind!r}")


def c_word(alpha: Composition) -> SymFunc:
    """C_{alpha_1} ... C_{alpha_l} applied to 1, right to left."""
    f = SymFunc.one()
    for part in reversed(tuple(alpha)):
        f = op_C(part, f)
    return f


@lru_cache(maxsize=None)
def _nabla_c_word(alpha: Composition) -> SymFunc:
    return nabla(c_word(alpha))


@lru_cache(maxsize=None)
def eh_target(a: int, b: int, c: int) -> SymFunc:
    return e_(a) * h_(b) * h_(c)


def lhs_inner(alpha: Composition, a: int, b: int, c: int) -> QtRational:
    """Hall pairing of nabla C_alpha 1 with e_a h_b h_c."""
    alpha = tuple(alpha)
    if a + b + c != sum(alpha):
        raise ValueError(f"(a,b,c)={(a, b, c)} must sum to |alpha|={sum(alpha)}")
    if min(a, b, c) < 0:
        return QTR_ZERO
    return _lhs_inner_cached(alpha, a, b, c)


@lru_cache(maxsize=None)
def _lhs_inner_cached(alpha: Composition, a: int, b: int, c: int) -> QtRational:
    return hall_inner(_nabla_c_word(alpha), eh_target(a, b, c))


# ---------------------------------------------------------------------------
# shared plethystic building blocks (cached)
# ---------------------------------------------------------------------------


def _x_times(v: QtRational) -> Alphabet:
    return Alphabet.X(ZLaurent({0: v}))


@lru_cache(maxsize=None)
def _e_scalar_invm(k: int) -> QtRational:
    return plethysm_eval(e_(k), capital_m().inverse()) if k >= 0 else QTR_ZERO


@lru_cache(maxsize=None)
def _h_scalar_invm(k: int) -> QtRational:
    return plethysm_eval(h_(k), capital_m().inverse()) if k >= 0 else QTR_ZERO


@lru_cache(maxsize=None)
def _e_of_B(r: int, nu: Partition) -> QtRational:
    return plethysm_eval(e_(r), partition_invariants(nu).B) if r >= 0 else QTR_ZERO


@lru_cache(maxsize=None)
def _e_of_D(r: int, nu: Partition) -> QtRational:
    return plethysm_eval(e_(r), partition_invariants(nu).D) if r >= 0 else QTR_ZERO


@lru_cache(maxsize=None)
def _e_xd(k: int, nu: Partition) -> SymFunc:
    """e_k[X D_nu / M]."""
    if k < 0:
        return SymFunc.zero()
    v = partition_invariants(nu).D / capital_m()
    return plethysm(e_(k), _x_times(v))


@lru_cache(maxsize=None)
def _e_x_1mt(k: int) -> SymFunc:
    """e_k[X/(1-t)]."""
    if k < 0:
        return SymFunc.zero()
    return plethysm(e_(k), _x_times((1 - T).inverse()))


@lru_cache(maxsize=None)
def _star_poly(k: int, which: str) -> SymFunc:
    """h_k[X/M] or e_k[X/M]."""
    if k < 0:
        return SymFunc.zero()
    base = h_(k) if which == "h" else e_(k)
    return plethysm(base, _x_times(capital_m().inverse()))


@lru_cache(maxsize=None)
def _nabla_hee(a: int, b: int, c: int) -> SymFunc:
    """nabla (h_a^* e_b^* e_c^*)."""
    if min(a, b, c) < 0:
        return SymFunc.zero()
    f = _star_poly(a, "h") * _star_poly(b, "e") * _star_poly(c, "e")
    return nabla(f)


@lru_cache(maxsize=None)
def _cstar_nabla_hee(m: int, a: int, b: int, c: int) -> SymFunc:
    return op_C_star(m, _nabla_hee(a, b, c))


@lru_cache(maxsize=None)
def _bstar_nabla_hee(m: int, a: int, b: int, c: int) -> SymFunc:
    return op_B_star(m, _nabla_hee(a, b, c))


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


# ---------------------------------------------------------------------------
# identity registry
# ---------------------------------------------------------------------------


@dataclass
class IdentityReport:
    ident: str
    params: dict
    passed: bool
    lhs: str
    rhs: str


def _sym_canonical(f: SymFunc) -> str:
    fp = f.to_power().demote()
    if fp.has_z():
        raise ValueError("cannot canonicalize a symmetric function with live z")
    items = sorted(fp.coeffs.items())
    return "; ".join(f"p{list(lam)}={c.canonical()}" for lam, c in items) or "0"


def _report(ident, params, lhs, rhs) -> IdentityReport:
    if isinstance(lhs, SymFunc) or isinstance(rhs, SymFunc):
        passed = lhs == rhs
        return IdentityReport(ident, params, passed, _sym_canonical(lhs), _sym_canonical(rhs))
    if isinstance(lhs, QtRational):
        return IdentityReport(ident, params, lhs == rhs, lhs.canonical(), rhs.canonical())
    return IdentityReport(ident, params, lhs == rhs, repr(lhs), repr(rhs))


def _tensor_canonical(d: dict) -> str:
    return "; ".join(f"{k}={v.canonical()}" for k, v in sorted(d.items())) or "0"


def _check_cauchy(n: int) -> IdentityReport:
    """Reproducing-kernel decomposition on a two-alphabet tensor basis."""
    lhs: dict = {}
    for lam, c in e_(n).to_power().coeffs.items():
        v = c
        for part in lam:
            v = v * capital_m().frobenius(part).inverse()
        lhs[(lam, lam)] = v
    rhs: dict = {}
    table = build_htilde(n)
    for mu in partitions_of(n):
        hmu = table.power[mu]
        winv = table.invariants[mu].w.inverse()
        for lam, cx in hmu.coeffs.items():
            for rho, cy in hmu.coeffs.items():
                key = (lam, rho)
                cur = rhs.get(key, QTR_ZERO) + cx * cy * winv
                if cur.is_zero():
                    rhs.pop(key, None)
                else:
                    rhs[key] = cur
    passed = lhs == rhs
    return IdentityReport("cauchy", {"n": n}, passed, _tensor_canonical(lhs), _tensor_canonical(rhs))


def _check_sym_ab(alpha: Partition, beta: Partition) -> IdentityReport:
    ia, ib = partition_invariants(alpha), partition_invariants(beta)
    M = capital_m()
    ha = build_htilde(sum(alpha)).power[alpha]
    hb = build_htilde(sum(beta)).power[beta]
    lhs_a = plethysm_eval(ha, M * ib.B) / ia.Pi
    rhs_a = plethysm_eval(hb, M * ia.B) / ib.Pi
    lhs_b = plethysm_eval(ha, ib.D) / ia.T * _sign(sum(alpha))
    rhs_b = plethysm_eval(hb, ia.D) / ib.T * _sign(sum(beta))
    passed = lhs_a == rhs_a and lhs_b == rhs_b
    return IdentityReport(
        "sym-ab",
        {"alpha": alpha, "beta": beta},
        passed,
        f"a:{lhs_a.canonical()} b:{lhs_b.canonical()}",
        f"a:{rhs_a.canonical()} b:{rhs_b.canonical()}",
    )


def _check_pieri_rel(mu: Partition) -> IdentityReport:
    M = capital_m()
    wm = partition_invariants(mu).w
    ok = True
    sides = []
    for nu, c in _pieri_remove(mu):
        d = _d_coeff(mu, nu)
        wn = partition_invariants(nu).w
        lhs, rhs = d, M * c * wn / wm
        sides.append((lhs, rhs))
        ok = ok and lhs == rhs
    return IdentityReport(
        "pieri-rel",
        {"mu": mu},
        ok,
        "; ".join(x.canonical() for x, _ in sides) or "0",
        "; ".join(y.canonical() for _, y in sides) or "0",
    )


def _check_sum_c(mu: Partition, k: int) -> IdentityReport:
    lhs = QTR_ZERO
    tm = partition_invariants(mu).T
    for nu, c in _pieri_remove(mu):
        tn = partition_invariants(nu).T
        lhs = lhs + c * (tm / tn) ** k
    if k == 0:
        rhs = partition_invariants(mu).B
    else:
        M = capital_m()
        val = partition_invariants(mu).D / (T * Q)
        rhs = (T * Q / M) * plethysm_eval(h_(k + 1), val)
    return _report("sum-c", {"mu": mu, "k": k}, lhs, rhs)


def _check_sum_d(nu: Partition, k: int) -> IdentityReport:
    lhs = QTR_ZERO
    tn = partition_invariants(nu).T
    for mu, d in _pieri_add(nu):
        tm = partition_invariants(mu).T
        lhs = lhs + d * (tm / tn) ** k
    if k == 0:
        rhs = QTR_ONE
    else:
        rhs = _e_of_D(k - 1, nu) * _sign(k - 1)
    return _report("sum-d", {"nu": nu, "k": k}, lhs, rhs)


def _check_exp_abc(n: int, k: int) -> IdentityReport:
    lhs = _star_poly(k, "h") * _star_poly(n - k, "e")
    rhs = SymFunc.zero()
    table = build_htilde(n)
    for mu in partitions_of(n):
        coeff = _e_of_B(k, mu) / table.invariants[mu].w
        rhs = rhs + table.power[mu].scale(coeff)
    return _report("exp-abc", {"n": n, "k": k}, lhs, rhs)


@lru_cache(maxsize=None)
def _htilde_at_d(nu: Partition, mu: Partition) -> QtRational:
    """H~_nu evaluated at the scalar alphabet D_mu."""
    return plethysm_eval(build_htilde(sum(nu)).power[nu], partition_invariants(mu).D)


def _check_reproducing(fname: str, r: int, lam: Partition | None, n: int) -> IdentityReport:
    if fname == "e":
        f = e_(r)
    elif fname == "h":
        f = h_(r)
    else:
        f = SymFunc("schur", {lam: QTR_ONE})
        r = sum(lam)
    M = capital_m()
    # omega composes with f before the substitution: (omega f)[(X-eps)/M]
    inner = plethysm(
        omega_involution(f),
        Alphabet.X(ZLaurent({0: M.inverse()}))
        + Alphabet.scalar(ZLaurent({0: -M.inverse()}), eps=True),
    )
    # nabla^{-1} then X -> D_mu, carried out on the eigenbasis expansion
    expansion = [
        (nu, c * partition_invariants(nu).T ** -1) for nu, c in htilde_expand(inner).items()
    ]
    table = build_htilde(n)
    ok = True
    ls, rs = [], []
    for mu in partitions_of(n):
        lhs = hall_inner(f * h_(n - r), table.power[mu])
        rhs = QTR_ZERO
        for nu, c in expansion:
            rhs = rhs + c * _htilde_at_d(nu, mu)
        ls.append(lhs)
        rs.append(rhs)
        ok = ok and lhs == rhs
    return IdentityReport(
        "reproducing",
        {"f": fname, "r": r, "lam": lam, "n": n},
        ok,
        "; ".join(x.canonical() for x in ls),
        "; ".join(x.canonical() for x in rs),
    )


def _check_erh(mu: Partition, r: int) -> IdentityReport:
    n = sum(mu)
    lhs = hall_inner(build_htilde(n).power[mu], e_(r) * h_(n - r))
    rhs = _e_of_B(r, mu)
    return _report("erh", {"mu": mu, "r": r}, lhs, rhs)


def _check_commute(a: int, b: int, P: SymFunc, tag: str) -> IdentityReport:
    lhs = op_B(a, op_C(b, P))
    rhs = op_C(b, op_B(a, P)).scale(Q)
    return _report("commute", {"a": a, "b": b, "P": tag}, lhs, rhs)


def _check_commutator(a: int, b: int, P: SymFunc, tag: str) -> IdentityReport:
    lhs = op_C(b, op_B(a, P)).scale(Q) - op_B(a, op_C(b, P))
    pref = qtr(_sign(a + b - 1)) * (Q - 1) * Q ** (-(b - 1))
    if a + b > 0:
        rhs = SymFunc.zero()
    elif a + b == 0:
        rhs = P.scale(pref)
    else:
        shift = Alphabet.X() + Alphabet.scalar(ZLaurent({-1: Q.inverse() - Q}))
        rhs = extract_z(plethysm(P, shift), a + b).scale(pref)
    return _report("commutator", {"a": a, "b": b, "P": tag}, lhs, rhs)


def _check_lemma31(a: int, b: int, c: int) -> IdentityReport:
    n = a + b + c
    lhs = _nabla_hee(a, b, c)
    rhs = SymFunc.zero()
    for r in range(a + 1):
        for s in range(b + 1):
            pref = _e_scalar_invm(a - r) * _h_scalar_invm(b - s) * _sign(n - r - s)
            if pref.is_zero():
                continue
            acc = SymFunc.zero()
            for nu in partitions_of(r + s):
                coeff = _e_of_B(r, nu) / partition_invariants(nu).w
                if not coeff.is_zero():
                    acc = acc + _e_xd(n, nu).scale(coeff)
            rhs = rhs + acc.scale(pref)
    return _report("lemma31", {"a": a, "b": b, "c": c}, lhs, rhs)


def _csum(nu: Partition, power: int) -> QtRational:
    """sum over corners tau of c_{nu,tau} (T_nu/T_tau)^power."""
    tn = partition_invariants(nu).T
    total = QTR_ZERO
    for tau, cc in _pieri_remove(nu):
        tt = partition_invariants(tau).T
        total = total + cc * (tn / tt) ** power
    return total


def _check_lemma32(m: int, nu: Partition, n: int) -> IdentityReport:
    lhs = op_C_star(m, _e_xd(n, nu))
    M = capital_m()
    rhs = SymFunc.zero()
    for u in range(m, n + 1):
        coeff = T ** (u - 1) * M * _csum(nu, u - 1)
        if coeff.is_zero():
            continue
        rhs = rhs + (_e_xd(n - u, nu) * _e_x_1mt(u - m)).scale(coeff)
    rhs = rhs.scale(_sign(m - 1))
    if m == 1:
        rhs = rhs - _e_xd(n - 1, nu)
    return _report("lemma32", {"m": m, "nu": nu, "n": n}, lhs, rhs)


def _gamma1(m: int, a: int, b: int, n: int) -> SymFunc:
    """The corner-sum block shared by the Gamma expansion (all-u version)."""
    M = capital_m()
    out = SymFunc.zero()
    for r in range(a + 1):
        for s in range(b + 1):
            pref = _e_scalar_invm(a - r) * _h_scalar_invm(b - s) * _sign(n - r - s)
            if pref.is_zero():
                continue
            acc = SymFunc.zero()
            for nu in partitions_of(r + s):
                coeff0 = _e_of_B(r, nu) / partition_invariants(nu).w
                if coeff0.is_zero():
                    continue
                inner = SymFunc.zero()
                for u in range(m, n + 1):
                    cu = T ** (u - 1) * M * _csum(nu, u - 1)
                    if cu.is_zero():
                        continue
                    inner = inner + (_e_xd(n - u, nu) * _e_x_1mt(u - m)).scale(cu)
                acc = acc + inner.scale(coeff0)
            out = out + acc.scale(pref)
    return out.scale(_sign(m - 1))


def _check_prop31(m: int, a: int, b: int, n: int) -> IdentityReport:
    c = n - a - b
    lhs = _cstar_nabla_hee(m, a, b, c)
    rhs = _gamma1(m, a, b, n)
    if m == 1:
        rhs = rhs + _nabla_hee(a, b, c - 1)
    return _report("prop31", {"m": m, "a": a, "b": b, "n": n}, lhs, rhs)


@lru_cache(maxsize=None)
def _phi1(m: int, a: int, b: int, n: int) -> SymFunc:
    out = SymFunc.zero()
    for r in range(a):
        for s in range(b + 1):
            pref = _e_scalar_invm(a - 1 - r) * _h_scalar_invm(b - s) * _sign(n - 1 - r - s)
            if pref.is_zero():
                continue
            acc = SymFunc.zero()
            for tau in partitions_of(r + s):
                coeff0 = _e_of_B(r, tau) / partition_invariants(tau).w
                if coeff0.is_zero():
                    continue
                inner = SymFunc.zero()
                for v in range(m, n + 1):
                    cv = _e_of_D(v - 1, tau) * _sign(v - 1)
                    if cv.is_zero():
                        continue
                    inner = inner + (_e_xd(n - v, tau) * _e_x_1mt(v - m)).scale(cv)
                acc = acc + inner.scale(coeff0)
            out = out + acc.scale(pref)
    return out.scale(_sign(m - 1))


@lru_cache(maxsize=None)
def _phi2(m: int, a: int, b: int, n: int) -> SymFunc:
    out = SymFunc.zero()
    for r in range(a + 1):
        for s in range(b):
            pref = _e_scalar_invm(a - r) * _h_scalar_invm(b - 1 - s) * _sign(n - 1 - r - s)
            if pref.is_zero():
                continue
            acc = SymFunc.zero()
            for tau in partitions_of(r + s):
                coeff0 = _e_of_B(r, tau) / partition_invariants(tau).w
                if coeff0.is_zero():
                    continue
                inner = SymFunc.zero()
                for v in range(m, n + 1):
                    cv = _e_of_D(v - 2, tau) * _sign(v)
                    if cv.is_zero():
                        continue
                    inner = inner + (_e_xd(n - v, tau) * _e_x_1mt(v - m)).scale(cv)
                acc = acc + inner.scale(coeff0)
            out = out + acc.scale(pref)
    return out.scale(_sign(m - 1))


def _check_thm31(m: int, a: int, b: int, n: int) -> IdentityReport:
    c = n - a - b
    lhs = _cstar_nabla_hee(m, a, b, c)
    rhs = (_phi1(m, a, b, n) + _phi2(m, a, b, n)).scale(T ** (m - 1))
    if m == 1:
        rhs = rhs + _nabla_hee(a, b, c - 1) + _nabla_hee(a, b - 1, c)
    return _report("thm31", {"m": m, "a": a, "b": b, "n": n}, lhs, rhs)


def _check_thm32(m: int, a: int, b: int, n: int) -> IdentityReport:
    c = n - a - b
    lhs1 = _phi1(m, a, b, n)
    rhs1 = _bstar_nabla_hee(m - 1, a - 1, b, c)
    lhs2 = _phi2(m, a, b, n)
    rhs2 = _bstar_nabla_hee(m - 2, a, b - 1, c - 1)
    passed = lhs1 == rhs1 and lhs2 == rhs2
    return IdentityReport(
        "thm32",
        {"m": m, "a": a, "b": b, "n": n},
        passed,
        f"1:{_sym_canonical(lhs1)} 2:{_sym_canonical(lhs2)}",
        f"1:{_sym_canonical(rhs1)} 2:{_sym_canonical(rhs2)}",
    )


def _check_thm21(m: int, a: int, b: int, c: int) -> IdentityReport:
    lhs = _cstar_nabla_hee(m, a, b, c)
    tm = T ** (m - 1)
    rhs = _bstar_nabla_hee(m - 1, a - 1, b, c).scale(tm)
    rhs = rhs + _bstar_nabla_hee(m - 2, a, b - 1, c - 1).scale(tm)
    if m == 1:
        rhs = rhs + _nabla_hee(a, b - 1, c) + _nabla_hee(a, b, c - 1)
    return _report("thm21", {"m": m, "a": a, "b": b, "c": c}, lhs, rhs)


def _check_rec_m(m: int, alpha: Composition, a: int, b: int, c: int) -> IdentityReport:
    if m <= 1:
        raise ValueError("this recursion case needs m > 1")
    lhs = lhs_inner((m,) + tuple(alpha), a, b, c)
    pref = T ** (m - 1) * Q ** len(alpha)
    acc = QTR_ZERO
    if a >= 1:
        for beta in compositions_of(m - 1):
            acc = acc + lhs_inner(tuple(alpha) + beta, a - 1, b, c)
    acc2 = QTR_ZERO
    if b >= 1 and c >= 1:
        for beta in compositions_of(m - 2):
            acc2 = acc2 + lhs_inner(tuple(alpha) + beta, a, b - 1, c - 1)
    rhs = pref * (acc + acc2)
    return _report("rec-m", {"m": m, "alpha": alpha, "a": a, "b": b, "c": c}, lhs, rhs)


def _check_rec_1(alpha: Composition, a: int, b: int, c: int) -> IdentityReport:
    alpha = tuple(alpha)
    lhs = lhs_inner((1,) + alpha, a, b, c)
    rhs = QTR_ZERO
    if a >= 1:
        rhs = rhs + Q ** len(alpha) * lhs_inner(alpha, a - 1, b, c)
    if b >= 1:
        rhs = rhs + lhs_inner(alpha, a, b - 1, c)
    if c >= 1:
        rhs = rhs + lhs_inner(alpha, a, b, c - 1)
    if b >= 1 and c >= 1:
        for i, part in enumerate(alpha, start=1):
            if part == 1:
                hat = alpha[: i - 1] + alpha[i:]
                rhs = rhs + (Q - 1) * Q ** (i - 1) * lhs_inner(hat, a, b - 1, c - 1)
    return _report("rec-1", {"alpha": alpha, "a": a, "b": b, "c": c}, lhs, rhs)


def _check_en_decomp(n: int) -> IdentityReport:
    total = SymFunc.zero()
    for p in compositions_of(n):
        total = total + c_word(p)
    return _report("en-decomp", {"n": n}, total, e_(n).to_power())


_REGISTRY = {
    "cauchy": _check_cauchy,
    "sym-ab": _check_sym_ab,
    "pieri-rel": _check_pieri_rel,
    "sum-c": _check_sum_c,
    "sum-d": _check_sum_d,
    "exp-abc": _check_exp_abc,
    "reproducing": _check_reproducing,
    "erh": _check_erh,
    "commute": _check_commute,
    "commutator": _check_commutator,
    "lemma31": _check_lemma31,
    "lemma32": _check_lemma32,
    "prop31": _check_prop31,
    "thm31": _check_thm31,
    "thm32": _check_thm32,
    "thm21": _check_thm21,
    "rec-m": _check_rec_m,
    "rec-1": _check_rec_1,
    "en-decomp": _check_en_decomp,
}


def identity_ids() -> tuple[str, ...]:
    return tuple(sorted(_REGISTRY))


def check_identity(ident: str, **params) -> IdentityReport:
    fn = _REGISTRY.get(ident)
    if fn is None:
        raise ValueError(f"unknown identity id {ident!r}; known: {', '.join(identity_ids())}")
    return fn(**params)
