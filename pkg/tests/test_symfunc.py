from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qtshuffle.qtfield import Q, QTR_ONE, QTR_ZERO, T, ZLaurent, qtr
from qtshuffle.shapes import capital_m, partition_invariants, partitions_of, zmu
from qtshuffle.symfunc import (
    Alphabet,
    QSymFunc,
    SymFunc,
    convert_basis,
    e_,
    extract_z,
    fundamental_expand,
    gessel_Q,
    h_,
    hall_inner,
    m_,
    monomial_restriction,
    omega_involution,
    omega_series,
    p_,
    plethysm,
    plethysm_eval,
    s_,
    skew_by_e1,
    star_inner,
)

M = capital_m()


# -- basis conversions -------------------------------------------------------


def test_h2_and_e2_in_power():
    assert h_(2).to_power() == SymFunc("p", {(1, 1): Fraction(1, 2), (2,): Fraction(1, 2)})
    assert e_(2).to_power() == SymFunc("p", {(1, 1): Fraction(1, 2), (2,): Fraction(-1, 2)})


def test_s21_in_homogeneous():
    assert convert_basis(s_((2, 1)), "homogeneous") == h_(2) * h_(1) - h_(3)


def test_round_trip_all_bases():
    f = s_((2, 1)) + h_(3).scale(Q) - e_(2).scale(T) * e_(1)
    ref = f.convert("power")
    for basis in ("elementary", "homogeneous", "monomial", "schur"):
        assert f.convert(basis).convert("power") == ref


def test_negative_index_bases_are_zero():
    assert e_(-1).is_zero()
    assert h_(-2).is_zero()


# -- scalar products ----------------------------------------------------------


def test_hall_power_diagonal():
    assert hall_inner(p_((2,)), p_((2,))) == qtr(2)
    assert hall_inner(p_((1, 1)), p_((1, 1))) == qtr(2)
    assert hall_inner(p_((2,)), p_((1, 1))) == QTR_ZERO
    assert hall_inner(h_(2), h_(2)) == QTR_ONE


def _hall_oracle(f, g):
    """Independent route: <h_lam, m_mu> = delta."""
    fh = f.convert("homogeneous")
    gm = g.convert("monomial")
    total = QTR_ZERO
    for lam, c in fh.coeffs.items():
        d = gm.coeffs.get(lam)
        if d is not None:
            total = total + c * d
    return total


def test_hall_against_hm_duality_oracle():
    probes = [h_(3), e_(3), s_((2, 1)), p_((2, 1)), s_((1, 1, 1)), h_(2) * e_(1)]
    for f in probes:
        for g in probes:
            assert hall_inner(f, g) == _hall_oracle(f, g)


def test_star_values():
    assert star_inner(p_((1,)), p_((1,))) == M
    assert star_inner(p_((2,)), p_((2,))) == -2 * (1 - T**2) * (1 - Q**2)


def test_schur_orthonormality():
    for n in (1, 2, 3, 4):
        for lam in partitions_of(n):
            for mu in partitions_of(n):
                want = QTR_ONE if lam == mu else QTR_ZERO
                assert hall_inner(s_(lam), s_(mu)) == want


# -- omega ---------------------------------------------------------------------


def test_omega_examples():
    assert omega_involution(p_((2,))) == -p_((2,))
    assert omega_involution(h_(3)) == e_(3)
    assert omega_involution(omega_involution(s_((2, 1)))) == s_((2, 1))


def test_omega_sends_schur_to_conjugate():
    assert omega_involution(s_((3, 1))) == s_((2, 1, 1))


# -- plethysm -------------------------------------------------------------------


def test_plethysm_examples():
    got = plethysm(p_((2,)), Alphabet.X(ZLaurent({0: M.inverse()})))
    assert got == p_((2,)).scale(((1 - T**2) * (1 - Q**2)).inverse())
    assert plethysm(p_((3,)), -Alphabet.X(eps=True)) == p_((3,))
    assert plethysm_eval(h_(2), 1 - Q) == 1 - Q
    assert plethysm_eval(h_(0), 1 - Q) == QTR_ONE
    assert plethysm_eval(e_(1), partition_invariants((2, 1)).B) == 1 + Q + T


def test_plethysm_with_x_is_identity():
    for f in (s_((2, 1)), h_(3), e_(2) * h_(1)):
        assert plethysm(f, Alphabet.X()) == f.to_power()


def test_plethysm_negated_alphabet_is_signed_omega():
    for f in (s_((2, 1)), h_(4), e_(3)):
        k = f.max_degree()
        want = omega_involution(f).scale((-1) ** k)
        assert plethysm(f, -Alphabet.X()) == want


def test_plethysm_pure_scalar_gives_degree_zero():
    out = plethysm(h_(2), Alphabet.scalar(ZLaurent({0: 1 - Q})))
    assert out.degrees() == (0,)
    assert out.coeffs[()] == 1 - Q


def test_plethysm_is_ring_hom():
    A = Alphabet.X(ZLaurent({0: Q})) + Alphabet.scalar(ZLaurent({0: T}), eps=True)
    f, g = h_(2), e_(2) + p_((1,))
    assert plethysm(f * g, A) == plethysm(f, A) * plethysm(g, A)
    assert plethysm(f + g, A) == plethysm(f, A) + plethysm(g, A)


def test_h_of_one_minus_q_values():
    one_minus_q = 1 - Q
    assert plethysm_eval(h_(0), one_minus_q) == QTR_ONE
    for s in (1, 2, 3, 4):
        assert plethysm_eval(h_(s), one_minus_q) == one_minus_q


# -- omega series ----------------------------------------------------------------


def test_omega_series_homogeneous_kernel():
    om = omega_series(Alphabet.X(ZLaurent({1: QTR_ONE})), 4)
    for m in range(5):
        assert extract_z(om, m) == h_(m).to_power()


def test_omega_series_elementary_kernel():
    om = omega_series(-Alphabet.X(ZLaurent({1: QTR_ONE}), eps=True), 4)
    for m in range(5):
        assert extract_z(om, m) == e_(m).to_power()


def test_omega_series_scalar_part():
    om = omega_series(Alphabet.scalar(ZLaurent({1: 1 - T})), 0, z_trunc=3)
    assert om.coeffs[()].extract(1) == 1 - T


def test_omega_series_rejects_bad_scalar():
    with pytest.raises(ValueError):
        omega_series(Alphabet.scalar(ZLaurent({0: Q})), 2)


# -- skewing ----------------------------------------------------------------------


def test_skew_examples():
    assert skew_by_e1(h_(2)) == h_(1)
    assert skew_by_e1(s_((2, 1))) == s_((2,)) + s_((1, 1))
    assert skew_by_e1(SymFunc.one()).is_zero()


def test_skew_is_hall_adjoint_of_e1():
    for d in (1, 2, 3, 4):
        for lam in partitions_of(d):
            for mu in partitions_of(d - 1):
                lhs = hall_inner(skew_by_e1(s_(lam)), s_(mu))
                rhs = hall_inner(s_(lam), e_(1) * s_(mu))
                assert lhs == rhs


def test_skew_matches_schur_corner_oracle():
    from qtshuffle.shapes import corners

    for d in (2, 3, 4, 5):
        for lam in partitions_of(d):
            want = SymFunc.zero()
            for nu in corners(lam)[0]:
                want = want + s_(nu)
            assert skew_by_e1(s_(lam)) == want


# -- quasisymmetric bridge ----------------------------------------------------------


def test_fundamental_single_row_and_column():
    assert fundamental_expand(s_((2,))) == QSymFunc(2, {frozenset(): QTR_ONE})
    assert fundamental_expand(s_((1, 1))) == QSymFunc(2, {frozenset({1}): QTR_ONE})


def test_gessel_examples():
    assert gessel_Q(set(), 2, 2) == {(2, 0): 1, (1, 1): 1, (0, 2): 1}
    assert gessel_Q({1}, 2, 2) == {(1, 1): 1}
    assert gessel_Q({1, 2}, 3, 3) == {(1, 1, 1): 1}


def test_gessel_full_descents_is_elementary():
    n, nvars = 3, 4
    full = gessel_Q(set(range(1, n)), n, nvars)
    restriction = monomial_restriction(e_(n), nvars)
    assert set(full) == set(restriction)
    for k, v in full.items():
        assert restriction[k] == qtr(v)


def test_fundamental_matches_monomial_restriction():
    probes = [h_(3), e_(3), s_((2, 1)), s_((2, 2)), h_(2) * e_(2)]
    for f in probes:
        n = f.max_degree()
        qs = fundamental_expand(f)
        assert qs.monomials(n + 1) == monomial_restriction(f, n + 1)


def test_fundamental_requires_homogeneous():
    with pytest.raises(ValueError):
        fundamental_expand(h_(1) + h_(2))


def test_symfunc_json_round_trip():
    from qtshuffle.symfunc import symfunc_from_json, symfunc_to_json

    f = SymFunc("schur", {(2, 1): Q, (1, 1, 1): (1 - T) / (1 - Q)})
    data = symfunc_to_json(f)
    assert data["basis"] == "schur" and data["degree"] == 3
    assert set(data["coeffs"]) == {"[2,1]", "[1,1,1]"}
    assert symfunc_from_json(data) == f
    with pytest.raises(ValueError):
        symfunc_to_json(h_(1) + h_(2))


# -- randomized laws ------------------------------------------------------------------

_shapes = [(), (1,), (2,), (1, 1), (3,), (2, 1), (1, 1, 1)]


@st.composite
def symfuncs(draw):
    coeffs = {}
    for lam in draw(st.lists(st.sampled_from(_shapes), min_size=1, max_size=3)):
        coeffs[lam] = draw(st.sampled_from([QTR_ONE, Q, T, 1 + Q, Q - T, qtr(2)]))
    return SymFunc("power", coeffs)


@settings(max_examples=25, deadline=None)
@given(symfuncs(), symfuncs())
def test_hall_star_duality(f, g):
    # <f, g> = <f, omega g*>_* with g* = g[X/M]
    gstar = plethysm(g, Alphabet.X(ZLaurent({0: M.inverse()})))
    assert hall_inner(f, g) == star_inner(f, omega_involution(gstar))


@settings(max_examples=25, deadline=None)
@given(symfuncs())
def test_star_phi_inversion(f):
    # f*[MX] = f and (f[MX])* = f
    fstar = plethysm(f, Alphabet.X(ZLaurent({0: M.inverse()})))
    fphi = plethysm(f, Alphabet.X(ZLaurent({0: M})))
    assert plethysm(fstar, Alphabet.X(ZLaurent({0: M}))) == f
    assert plethysm(fphi, Alphabet.X(ZLaurent({0: M.inverse()}))) == f


@settings(max_examples=20, deadline=None)
@given(symfuncs(), symfuncs())
def test_omega_is_hall_isometry(f, g):
    assert hall_inner(omega_involution(f), omega_involution(g)) == hall_inner(f, g)
