import json

import pytest

from qtshuffle.qtfield import Q, QTR_ONE, QTR_ZERO, T, qtr
from qtshuffle.shapes import capital_m, compositions_of, partition_invariants, partitions_of
from qtshuffle.symfunc import SymFunc, e_, h_, hall_inner, p_, s_, star_inner
from qtshuffle.macdonald import (
    HTildeTable,
    TableInvariantError,
    build_htilde,
    c_word,
    check_identity,
    identity_ids,
    lhs_inner,
    nabla,
    op_B,
    op_B_star,
    op_C,
    op_C_star,
    op_adjoint,
    pieri,
)

M = capital_m()


# -- tables -------------------------------------------------------------------


def test_table_degree_one():
    assert build_htilde(1)[(1,)] == s_((1,))


def test_table_degree_two_hand_solved():
    # solving the 2x2 orthogonality + normalization system by hand gives
    # s2 + q*s11 and s2 + t*s11
    table = build_htilde(2)
    assert table[(2,)] == s_((2,)) + s_((1, 1)).scale(Q)
    assert table[(1, 1)] == s_((2,)) + s_((1, 1)).scale(T)


def test_table_gram_matches_invariants():
    table = build_htilde(2)
    w = partition_invariants((2,)).w
    assert star_inner(table.power[(2,)], table.power[(2,)]) == w
    assert star_inner(table.power[(2,)], table.power[(1, 1)]) == QTR_ZERO


@pytest.mark.parametrize("n", range(0, 5))
def test_table_invariants(n):
    build_htilde(n).verify()


def test_schur_coefficients_are_polynomial():
    # modified Kostka coefficients live in N[q,t]
    for n in range(1, 5):
        for mu, f in build_htilde(n).entries.items():
            for lam, c in f.coeffs.items():
                assert c.is_polynomial(), (mu, lam)


def test_table_json_round_trip(tmp_path):
    table = build_htilde(3)
    path = tmp_path / "htilde-3.json"
    table.save(str(path))
    loaded = HTildeTable.load(str(path))
    assert loaded.degree == 3
    for mu in partitions_of(3):
        assert loaded[mu] == table[mu]
    # byte-stable re-save
    loaded.save(str(tmp_path / "again.json"))
    assert (tmp_path / "again.json").read_bytes() == path.read_bytes()


def test_corrupted_cache_fails_loudly(tmp_path):
    table = build_htilde(2)
    path = tmp_path / "htilde-2.json"
    table.save(str(path))
    data = json.loads(path.read_text())
    key = next(iter(data["entries"]))
    inner = data["entries"][key]
    field = next(iter(inner))
    inner[field] = "2*q^1*t^0|1*q^0*t^0"
    path.write_text(json.dumps(data))
    with pytest.raises(TableInvariantError):
        HTildeTable.load(str(path))


# -- nabla ---------------------------------------------------------------------


def test_nabla_examples():
    assert nabla(h_(1)) == h_(1)
    table = build_htilde(2)
    assert nabla(table.power[(2,)]) == table.power[(2,)].scale(Q)
    assert nabla(e_(2)) == s_((2,)) + s_((1, 1)).scale(Q + T)


def test_nabla_inverse_round_trip():
    for f in (e_(3), s_((2, 1)), h_(2) * h_(1)):
        assert nabla(nabla(f), -1) == f.to_power()
        assert nabla(nabla(f, -1)) == f.to_power()


def test_nabla_is_linear():
    f, g = e_(3), s_((2, 1))
    assert nabla(f + g) == nabla(f) + nabla(g)
    assert nabla(f.scale(Q)) == nabla(f).scale(Q)


# -- Pieri ------------------------------------------------------------------------


def test_pieri_add_from_single_box():
    data = pieri((1,), "add")
    assert data.coeffs[(2,)] == (1 - T) / (Q - T)
    assert data.coeffs[(1, 1)] == (Q - 1) / (Q - T)


def test_pieri_sums():
    for n in range(1, 5):
        for nu in partitions_of(n):
            data = pieri(nu, "add")
            total = QTR_ZERO
            weighted = QTR_ZERO
            t_nu = partition_invariants(nu).T
            for mu, d in data.coeffs.items():
                total = total + d
                weighted = weighted + d * (partition_invariants(mu).T / t_nu)
            assert total == QTR_ONE
            assert weighted == QTR_ONE


# -- creation operators -------------------------------------------------------------


def test_op_c_basics():
    assert op_C(1, SymFunc.one()) == h_(1)
    for a in range(1, 5):
        assert op_C(a, SymFunc.one()) == h_(a).scale((-Q.inverse()) ** (a - 1))
    with pytest.raises(ValueError):
        op_C(0, SymFunc.one())


def test_op_b_basics():
    for a in range(1, 5):
        assert op_B(a, SymFunc.one()) == e_(a)
    assert op_B(0, SymFunc.one()) == SymFunc.one()
    assert op_B(-1, SymFunc.one()).is_zero()


def test_c_word_examples():
    assert c_word(()) == SymFunc.one()
    assert c_word((1, 1)) == build_htilde(2).power[(2,)].scale(Q.inverse())
    assert c_word((2,)) == h_(2).scale(-Q.inverse())


def test_en_decomposition_small():
    for n in (1, 2, 3):
        total = SymFunc.zero()
        for p in compositions_of(n):
            total = total + c_word(p)
        assert total == e_(n)


def test_adjoints_are_star_adjoints():
    # full Gram-matrix check at every degree <= 4 on the high side
    for a in (1, 2):
        for d in range(0, 5 - a):
            for lam in partitions_of(d):
                for mu in partitions_of(d + a):
                    f, g = p_(lam), p_(mu)
                    assert star_inner(op_C(a, f), g) == star_inner(f, op_C_star(a, g))
                    assert star_inner(op_B(a, f), g) == star_inner(f, op_B_star(a, g))


def test_adjoint_degree_bookkeeping():
    out = op_adjoint("C", 2, h_(2))
    assert out.degrees() in ((), (0,))
    with pytest.raises(ValueError):
        op_adjoint("Q", 1, h_(1))


# -- pairings ------------------------------------------------------------------------


def test_lhs_inner_examples():
    assert lhs_inner((1,), 1, 0, 0) == QTR_ONE
    assert lhs_inner((1, 1), 0, 1, 1) == 1 + Q
    want = T**4 * Q**2 + T**3 * (Q**4 + 2 * Q**3 + 2 * Q**2)
    assert lhs_inner((3, 2), 1, 2, 2) == want


def test_lhs_inner_size_mismatch():
    with pytest.raises(ValueError):
        lhs_inner((2, 1), 1, 1, 2)


def test_lhs_inner_negative_index_is_zero():
    assert lhs_inner((2,), -1, 2, 1) == QTR_ZERO


# -- identity registry spot checks ----------------------------------------------------


def test_unknown_identity():
    with pytest.raises(ValueError):
        check_identity("nope")
    assert "thm21" in identity_ids()


def test_cauchy_small():
    for n in (1, 2, 3):
        assert check_identity("cauchy", n=n).passed


def test_erh_values():
    rep = check_identity("erh", mu=(2, 1), r=1)
    assert rep.passed
    assert hall_inner(build_htilde(3).power[(2, 1)], e_(1) * h_(2)) == 1 + Q + T


def test_commutator_zero_regime():
    rep = check_identity("commutator", a=1, b=1, P=h_(1), tag="h1")
    assert rep.passed
    assert rep.rhs == "0"


def test_failed_identity_reports_both_sides():
    # erh with a deliberately wrong right-hand side is not representable via
    # the registry, so check the report plumbing on a passing case instead
    rep = check_identity("sum-d", nu=(2,), k=1)
    assert rep.passed
    assert rep.lhs == rep.rhs != ""


def test_thm21_small_grid():
    for N in (1, 2, 3):
        for m in range(1, N + 1):
            for a in range(0, N + 1):
                for b in range(0, N - a + 1):
                    rep = check_identity("thm21", m=m, a=a, b=b, c=N - a - b)
                    assert rep.passed, rep


def test_recursion_identities_small():
    assert check_identity("rec-m", m=2, alpha=(1,), a=1, b=1, c=1).passed
    assert check_identity("rec-1", alpha=(1, 1), a=1, b=1, c=1).passed
    assert check_identity("rec-1", alpha=(), a=0, b=1, c=0).passed


def test_fundamental_expansion_of_degree_two_entry():
    from qtshuffle.symfunc import QSymFunc, fundamental_expand

    qs = fundamental_expand(build_htilde(2)[(2,)])
    assert qs == QSymFunc(2, {frozenset(): QTR_ONE, frozenset({1}): Q})
