import random

import pytest

from quongram.ring import Poly, GaussRat
from quongram.boxes import BoxFactor, BoxFraction
from quongram.fock import Word, Weight
from quongram.perms import Perm, all_perms, longest_element
from quongram.gram import (Basis, build_generic, build_degenerate, factor_CD,
                           q_mono)
from quongram.inverse import (Universe, lambda_sigma, tree_like,
                              lambda_scalar, random_tree_like, lambda_fast,
                              lambda_id, abs_q_sq, LambdaTable, psi_op,
                              inv_chains, inv_long, inv_short, e_op,
                              d_inverse_op, c_unimodal_op, inv_zagier,
                              inv_brute, inv_full, inverse_matrix_at,
                              inv_degenerate, zagier_check)

from conftest import hermitian_assignment


def one_param_box(k):
    return BoxFactor(tuple(range(1, k + 1)), frozenset(range(1, k + 1)), True)


def assert_is_identity(mat):
    for i, row in enumerate(mat.entries):
        for j, e in enumerate(row):
            if isinstance(e, Poly):
                e = BoxFraction(e)
            assert e == (BoxFraction.one() if i == j else BoxFraction.zero())


# ---------------------------------------------------------------------------
# scalar coefficients
# ---------------------------------------------------------------------------

def test_lambda_scalar_smallest():
    f = lambda_scalar((1, 2), Perm((2, 1)))
    assert str(f) == "-1 / Box{1,2}"
    assert lambda_scalar((1,), Perm((1,))) == BoxFraction.one()


def test_lambda_vanishes_off_tree_like():
    for img in ((2, 4, 1, 3), (3, 1, 4, 2)):
        g = Perm(img)
        assert not tree_like(g)
        assert lambda_scalar((1, 2, 3, 4), g).is_zero()


def test_random_tree_like(rng):
    for n in (3, 4, 5):
        for _ in range(5):
            assert tree_like(random_tree_like(n, rng))


def test_closed_form_checked_on_all_of_s4():
    # lambda_scalar cross-checks the two-step recursion against the full
    # reversal-sequence product when check_closed is on
    for g in all_perms(4):
        lambda_scalar((1, 2, 3, 4), g, check_closed=True)


def test_lambda_id_forms_agree():
    for n in (2, 3, 4):
        nu = Weight.generic_n(n)
        assert lambda_id(nu, "outer-bracket") == lambda_id(nu, "no-outer")
        assert lambda_id(nu, "outer-bracket", True) == \
            lambda_id(nu, "no-outer", True)
    with pytest.raises(ValueError):
        lambda_id(Weight.generic_n(2), "sideways")


def test_lambda_id_one_param_golden():
    nu = Weight.generic_n(3)
    d = lambda_id(nu, one_param=True)
    q = Poly.single_q()
    want = BoxFraction(Poly.one() + q * q,
                       (one_param_box(2), one_param_box(3)))
    assert d.value_at(Word((1, 2, 3))) == want


def test_lambda_matches_identity_coefficient():
    for n in (2, 3):
        nu = Weight.generic_n(n)
        assert lambda_fast(Perm.identity(n), nu) == lambda_id(nu)


def test_longest_element_invariance():
    # Lambda(g) = (-1)^(n-1) |Q(g w_n)|^2 Lambda(g w_n)  when g(1) > g(n)
    for n in (3, 4):
        w = longest_element(1, n, n)
        letters = tuple(range(1, n + 1))
        for g in all_perms(n):
            gw = g * w
            if not (tree_like(g) and tree_like(gw)):
                continue
            lhs = lambda_scalar(letters, g)
            pairs = []
            for a, b in gw.inverse().inversion_set():
                pairs.extend([(a, b), (b, a)])
            rhs = lambda_scalar(letters, gw) * q_mono(letters, pairs)
            if n % 2 == 0:
                rhs = -rhs
            assert (lhs == rhs) == (g(1) > g(n))


def test_abs_q_sq_longest():
    basis = Basis.of_weight(Weight.generic_n(3))
    d = abs_q_sq(basis, longest_element(1, 3, 3))
    w = Word((1, 2, 3))
    want = Poly.one()
    for i, j in ((1, 2), (1, 3), (2, 3)):
        want = want * Poly.var(i, j) * Poly.var(j, i)
    assert d.value_at(w) == want


def test_lambda_sigma_blocks():
    f = lambda_sigma((1, 2, 3), ((1, 2), (3, 3)))
    # one nontrivial block of two letters over the full interval
    assert not f.is_zero()
    # singleton blocks give the identity coefficient, one coarse block is 1
    assert lambda_sigma((1, 2), ((1, 1), (2, 2))) == BoxFraction(
        Poly.one(), (BoxFactor((1, 2), frozenset({1, 2})),))
    assert lambda_sigma((1, 2), ((1, 2),)) == BoxFraction.one()


# ---------------------------------------------------------------------------
# full tables: the methods agree and invert the matrix
# ---------------------------------------------------------------------------

ALL_METHODS = ("fast", "long", "short", "chains", "zagier", "brute")


def test_methods_agree_small():
    for n in (2, 3):
        nu = Weight.generic_n(n)
        ref = inv_full(nu, "fast")
        for m in ALL_METHODS[1:]:
            assert inv_full(nu, m) == ref


def test_methods_agree_one_param():
    nu = Weight.generic_n(3)
    ref = inv_full(nu, "fast", True)
    for m in ALL_METHODS[1:]:
        assert inv_full(nu, m, True) == ref


def test_inverse_times_matrix_is_identity():
    for n in (2, 3):
        nu = Weight.generic_n(n)
        inv = inv_full(nu, "fast").to_matrix()
        assert_is_identity(inv.matmul(build_generic(nu)))
        assert_is_identity(build_generic(nu).matmul(inv))


def test_support_is_tree_like():
    nu = Weight.generic_n(4)
    table = inv_full(nu, "fast")
    assert len(table.support()) == 22
    assert all(tree_like(g) for g in table.support())
    # missing permutations read back as zero
    z = table.coefficient(Perm((2, 4, 1, 3)))
    assert z.is_zero()


def test_unknown_method_and_degenerate_rejected():
    with pytest.raises(ValueError):
        inv_full(Weight.generic_n(2), "sideways")
    with pytest.raises(ValueError):
        inv_full(Weight({1: 2}))
    with pytest.raises(ValueError):
        inv_brute(Weight.generic_n(4))


# ---------------------------------------------------------------------------
# elimination building blocks
# ---------------------------------------------------------------------------

def test_d_inverse_inverts_d():
    nu = Weight.generic_n(3)
    basis = Basis.of_weight(nu)
    from quongram.gram import OpExpansion
    ident = OpExpansion.identity(basis)
    for m in (1, 2):
        _, D = factor_CD(nu, m, basis=basis)
        Dinv = d_inverse_op(basis, m)
        got = LambdaTable.from_expansion(D * Dinv)
        want = LambdaTable.from_expansion(ident)
        assert got == want
        assert LambdaTable.from_expansion(Dinv * D) == want


def test_c_unimodal_matches_elimination():
    for n in (3, 4):
        nu = Weight.generic_n(n)
        basis = Basis.of_weight(nu)
        for m in range(2, n + 1):
            C, _ = factor_CD(nu, m, basis=basis)
            assert c_unimodal_op(basis, m) == C


def test_psi_inverts_sign_corrected_reversal():
    nu = Weight.generic_n(3)
    basis = Basis.of_weight(nu)
    from quongram.gram import OpExpansion, rhat
    for a, b in ((1, 2), (2, 3), (1, 3)):
        wI = longest_element(a, b, 3)
        op = OpExpansion.identity(basis) + rhat(
            wI, nu, basis=basis).scale((-1) ** (b - a + 1))
        got = LambdaTable.from_expansion(op * psi_op(basis, a, b))
        assert got == LambdaTable.from_expansion(
            OpExpansion.identity(basis))


# ---------------------------------------------------------------------------
# numeric universe
# ---------------------------------------------------------------------------

def test_numeric_inverse_matches_symbolic(rng):
    nu = Weight.generic_n(3)
    a = hermitian_assignment(nu.labels, rng)
    table = inv_full(nu, "fast")
    want = table.evaluate(a, "hermitian")
    got = inverse_matrix_at(nu, a, "hermitian")
    assert got == want


def test_numeric_inverse_is_inverse(rng):
    nu = Weight.generic_n(3)
    a = hermitian_assignment(nu.labels, rng)
    A = build_generic(nu)
    Ap = [[e.evaluate(a, "hermitian") for e in row] for row in A.entries]
    inv = inverse_matrix_at(nu, a, "hermitian")
    size = len(Ap)
    for i in range(size):
        for j in range(size):
            s = GaussRat.of(0)
            for k in range(size):
                s = s + Ap[i][k] * inv[k][j]
            assert s == GaussRat.of(1 if i == j else 0)


# ---------------------------------------------------------------------------
# degenerate weights
# ---------------------------------------------------------------------------

def test_degenerate_inverse():
    for nu in (Weight({1: 2}), Weight({1: 3}), Weight({1: 2, 3: 1}),
               Weight({1: 2, 2: 2})):
        inv = inv_degenerate(nu)
        assert_is_identity(inv.matmul(build_degenerate(nu)))


def test_degenerate_falls_back_to_generic():
    nu = Weight.generic_n(2)
    assert inv_degenerate(nu).entries == \
        inv_full(nu, "fast").to_matrix().entries


# ---------------------------------------------------------------------------
# denominator reports
# ---------------------------------------------------------------------------

def test_denominator_modes_small():
    assert zagier_check(3, "multi").passed
    assert zagier_check(3, "extended-multi").passed
    assert zagier_check(3, "original-conjecture").passed
    assert zagier_check(4, "one-param").passed
    with pytest.raises(ValueError):
        zagier_check(2, "sideways")


def test_single_coefficient_counterexample():
    g = Perm((4, 3, 2, 1, 8, 7, 6, 5))
    bad = zagier_check(8, "original-conjecture", coeff=g)
    assert not bad.passed
    assert bad.checked == 1
    good = zagier_check(8, "one-param", coeff=g)
    assert good.passed


def test_report_serialization():
    rep = zagier_check(3, "multi")
    j = rep.to_json()
    assert j["passed"] and j["checked"] == rep.checked
    assert "PASS" in str(rep)


def test_table_json_keys():
    nu = Weight.generic_n(2)
    j = inv_full(nu, "fast").to_json()
    assert set(j) == {"12", "21"}
