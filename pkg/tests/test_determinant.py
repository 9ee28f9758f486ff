import itertools
import math
import random
from fractions import Fraction

import pytest

from quongram.ring import Poly, GaussRat
from quongram.fock import Weight
from quongram.gram import build_generic, build_degenerate
from quongram.determinant import (det_formula, det_cycle_factor,
                                  det_one_param, one_param_exponents,
                                  positivity_check, det_divides,
                                  det_poly_bareiss, det_single_cycle,
                                  det_point, det_elim, peel_check,
                                  peel_exponents, det_factor_chain,
                                  det_univariate, poly_to_univariate)

from conftest import hermitian_assignment, small_weights


def test_formula_matches_elimination_small():
    for n in (1, 2, 3):
        nu = Weight.generic_n(n)
        assert peel_check(det_elim(nu), det_formula(nu))


def test_formula_golden_strings():
    assert str(det_formula(Weight.generic_n(2))) == "(1 - q12*q21)"
    assert str(det_one_param(3)) == "(1 - q^2)^6 * (1 - q^6)"
    assert str(det_one_param(4)) == \
        "(1 - q^2)^36 * (1 - q^6)^8 * (1 - q^12)^2"


def test_formula_exponents():
    nu = Weight.generic_n(4)
    f = det_formula(nu)
    by_size = {}
    for letters, e in f.factors:
        by_size.setdefault(len(letters), set()).add(e)
    # exponent (k-2)!(n-k+1)! is constant in each layer
    assert by_size == {2: {6}, 3: {2}, 4: {2}}
    assert len(f.factors) == 6 + 4 + 1


def test_factor_chain_reproduces_formula():
    for n in (2, 3, 4):
        nu = Weight.generic_n(n)
        assert dict(det_factor_chain(nu).factors) == \
            dict(det_formula(nu).factors)


def test_cycle_factor_formulas():
    # certified orbit-block determinants against the closed layer formulas
    nu = Weight.generic_n(4)
    for a in range(1, 5):
        for b in range(a + 1, 5):
            p = det_single_cycle(nu, a, b, "plain")
            assert peel_exponents(p, nu) == dict(
                det_cycle_factor(a, b, nu, "plain").factors)
    for a in range(1, 4):
        for b in range(a, 4):
            p = det_single_cycle(nu, a, b, "boxed")
            assert peel_exponents(p, nu) == dict(
                det_cycle_factor(a, b, nu, "boxed").factors)


def test_one_param_collapse():
    for n in (2, 3, 4, 5):
        assert dict(one_param_exponents(det_formula(
            Weight.generic_n(n))).factors) == dict(det_one_param(n).factors)


def test_one_param_elimination_small():
    for n in (2, 3):
        assert det_elim(Weight.generic_n(n), True) == \
            det_one_param(n).expand()


def test_degenerate_elimination_values():
    # det of the 3x3 matrix on words of weight (2,0,1)
    d = det_elim(Weight({1: 2, 3: 1}))
    expect = Poly.parse("1 + q11") ** 2 * \
        Poly.parse("1 - q13*q31") ** 2 * Poly.parse("1 - q11*q13*q31")
    assert d == expect


def test_point_determinant_matches_formula(rng):
    for n in (2, 3, 4):
        nu = Weight.generic_n(n)
        a = hermitian_assignment(nu.labels, rng)
        A = build_generic(nu)
        ent = [[e.evaluate(a, "hermitian") for e in row] for row in A.entries]
        assert det_point(ent) == det_formula(nu).evaluate(a)


def test_point_determinant_basics():
    one = GaussRat.of(1)
    z = GaussRat.of(0)
    i = GaussRat(Fraction(0), Fraction(1))
    assert det_point([[one, i], [i, one]]) == GaussRat.of(2)
    assert det_point([[one, i], [i.conj(), one]]) == z
    assert det_point([[one, one], [one, one]]) == z
    assert det_point([]) == one


def test_univariate_slice(rng):
    nu = Weight.generic_n(3)
    slopes = {(i, j): rng.randint(2, 7)
              for i in nu.labels for j in nu.labels}
    slope = lambda i, j: slopes[(i, j)]
    A = build_generic(nu)
    rows = [[poly_to_univariate(e, slope) for e in row] for row in A.entries]
    got = det_univariate(rows)
    want = poly_to_univariate(det_formula(nu).expand(), slope)
    assert got == want


def test_bareiss_matches_cofactor(rng):
    def rand_poly():
        p = Poly.const(rng.randint(-2, 2))
        for _ in range(rng.randint(0, 2)):
            p = p * Poly.var(rng.randint(1, 2), rng.randint(1, 2))
        return p + Poly.const(rng.randint(0, 1))

    for _ in range(5):
        M = [[rand_poly() for _ in range(3)] for _ in range(3)]
        cof = Poly.zero()
        for perm in itertools.permutations(range(3)):
            sgn = 1
            for x in range(3):
                for y in range(x + 1, 3):
                    if perm[x] > perm[y]:
                        sgn = -sgn
            t = Poly.const(sgn)
            for r, c in enumerate(perm):
                t = t * M[r][c]
            cof = cof + t
        assert det_poly_bareiss(M) == cof


def test_positivity_inside_disc(rng):
    for nu in (Weight.generic_n(3), Weight({1: 2, 3: 1})):
        for _ in range(3):
            a = hermitian_assignment(nu.labels, rng)
            assert positivity_check(nu, a)


def test_positivity_rejects_bad_points(rng):
    nu = Weight.generic_n(2)
    big = {("q", 1, 2): GaussRat.of(2), ("q", 2, 1): GaussRat.of(2),
           ("q", 1, 1): GaussRat.of(0), ("q", 2, 2): GaussRat.of(0)}
    with pytest.raises(ValueError):
        positivity_check(nu, big)
    v = GaussRat(Fraction(1, 3), Fraction(1, 4))
    skew = {("q", 1, 2): v, ("q", 2, 1): v,
            ("q", 1, 1): GaussRat.of(0), ("q", 2, 2): GaussRat.of(0)}
    with pytest.raises(ValueError):
        positivity_check(nu, skew)


def test_degenerate_det_divides_generic():
    for nu in small_weights(4):
        assert det_divides(nu)


def test_one_param_degree():
    for n in (2, 3, 4):
        f = det_one_param(n)
        assert f.degree() == math.factorial(n) * n * (n - 1) // 2


def test_formula_requires_generic():
    with pytest.raises(ValueError):
        det_formula(Weight({1: 2}))
    with pytest.raises(ValueError):
        det_cycle_factor(2, 1, Weight.generic_n(3))
    with pytest.raises(ValueError):
        det_one_param(0)
