import itertools
import math
from fractions import Fraction

import pytest

from quongram.ring import Poly, GaussRat
from quongram.fock import Weight
from quongram.gram import build_generic
from quongram.determinant import det_point, det_poly_bareiss, det_one_param
from quongram.applications import (symmetrize, Arrangement, Edge,
                                   varchenko_matrix, varchenko_det, Laurent,
                                   BilinearData, contravariant_entry,
                                   contravariant_matrix,
                                   contravariant_matrix_operators,
                                   contravariant_det, substituted_gram_det)

from conftest import symmetric_assignment


def laurent_det(entries):
    """Cofactor determinant over the monomial ring (no division needed)."""
    m = len(entries)
    total = Laurent.zero()
    for perm in itertools.permutations(range(m)):
        sgn = 1
        for x in range(m):
            for y in range(x + 1, m):
                if perm[x] > perm[y]:
                    sgn = -sgn
        t = Laurent.const(sgn)
        for r, c in enumerate(perm):
            t = t * entries[r][c]
        total = total + t
    return total


# ---------------------------------------------------------------------------
# the symmetric bilinear form of the braid arrangement
# ---------------------------------------------------------------------------

def test_symmetrize():
    assert symmetrize(Poly.var(2, 1)) == Poly.var(1, 2)
    p = Poly.var(1, 2) * Poly.var(2, 1)
    assert symmetrize(p) == Poly.var(1, 2) ** 2
    # cancelling terms collapse
    assert symmetrize(Poly.var(1, 2) - Poly.var(2, 1)).is_zero()


def test_arrangement_shape():
    arr = Arrangement(3)
    assert len(arr.hyperplanes) == 3
    assert len(arr.domains()) == 6
    assert arr.weight(3, 1) == Poly.var(1, 3)
    with pytest.raises(ValueError):
        arr.weight(2, 2)


def test_domain_form_is_symmetrized_gram():
    for n in (2, 3, 4):
        B = varchenko_matrix(n)
        A = build_generic(Weight.generic_n(n))
        for i in range(B.basis.size):
            for j in range(B.basis.size):
                assert B.entries[i][j] == symmetrize(A.entries[i][j])


def test_domain_form_symmetric_unital():
    B = varchenko_matrix(3)
    for i in range(6):
        assert str(B.entries[i][i]) == "1"
        for j in range(6):
            assert B.entries[i][j] == B.entries[j][i]


def test_domain_det_small():
    for n in (2, 3):
        got = det_poly_bareiss(varchenko_matrix(n).entries)
        assert got == varchenko_det(n).expand()
    assert str(varchenko_det(2)) == "(1 - q12^2)"


def test_domain_det_edge_count():
    d = varchenko_det(4)
    assert len(d.edges) == 11  # 6 pairs + 4 triples + 1 full
    assert {len(e.subset): e.multiplicity for e in d.edges} == \
        {2: 6, 3: 2, 4: 2}


def test_domain_det_at_point(rng):
    n = 4
    a = symmetric_assignment(range(1, n + 1), rng)
    B = varchenko_matrix(n)
    ent = [[e.evaluate(a, "symmetric-real") for e in row]
           for row in B.entries]
    assert det_point(ent) == varchenko_det(n).evaluate(a)


# ---------------------------------------------------------------------------
# the Laurent monomial ring
# ---------------------------------------------------------------------------

def test_laurent_units_and_powers():
    u = Laurent.u(1, 2)
    assert u * Laurent.u(1, 2, -1) == Laurent.one()
    assert u ** -2 == Laurent.u(1, 2, -2)
    assert (Laurent.one() + u) * (Laurent.one() - u) == \
        Laurent.one() - u * u
    with pytest.raises(ValueError):
        (Laurent.one() + u) ** -1


def test_laurent_specialize_and_evaluate():
    # u_{12}^4 = q^{b_12} = t^{4 b_12}
    f = Laurent.u(1, 2, 4).specialize({(1, 2): -2})
    assert f == Laurent.t(-8)
    assert f.evaluate_t(Fraction(2)) == Fraction(1, 256)
    assert Laurent.zero().evaluate_t(Fraction(3)) == Fraction(0)


def test_laurent_str():
    assert str(Laurent.one() - Laurent.u(1, 2, 2)) in \
        ("1 - u12^2", "-u12^2 + 1")


# ---------------------------------------------------------------------------
# the contravariant form
# ---------------------------------------------------------------------------

def test_contravariant_two_letter_golden():
    S = contravariant_matrix(2)
    u = Laurent.u(1, 2)
    uinv = Laurent.u(1, 2, -1)
    assert S.entries == [[uinv, u], [u, uinv]]


def test_contravariant_closed_matches_recursion():
    for n in (2, 3, 4):
        assert contravariant_matrix(n, check=False) == \
            contravariant_matrix_operators(n)


def test_contravariant_symmetric():
    S = contravariant_matrix(3)
    for i in range(6):
        for j in range(6):
            assert S.entries[i][j] == S.entries[j][i]


def test_contravariant_entry_validation():
    with pytest.raises(ValueError):
        contravariant_entry((1, 2), (1, 3))
    with pytest.raises(ValueError):
        contravariant_entry((1, 1), (1, 1))


def test_contravariant_det_small_symbolic():
    for n in (2, 3):
        got = laurent_det(contravariant_matrix(n).entries)
        d = contravariant_det(n)
        assert got == d.prefactor_form()
        assert got == d.symmetric_form()


def test_contravariant_det_specialized(rng):
    n = 4
    b = BilinearData(n, {(i, j): rng.randint(-3, 3)
                         for i, j in itertools.combinations(range(1, 5), 2)})
    S = contravariant_matrix(n)
    t = Fraction(3, 5)
    ent = [[GaussRat(e.specialize(b.b).evaluate_t(t)) for e in row]
           for row in S.entries]
    want = contravariant_det(n).specialized(b, "prefactor").evaluate_t(t)
    assert det_point(ent) == GaussRat(want)
    # both factored presentations agree after specialization
    assert contravariant_det(n).specialized(b, "prefactor") == \
        contravariant_det(n).specialized(b, "symmetric")


def test_substituted_gram_route():
    for n in (2, 3, 4):
        b = BilinearData.constant(n, -1)
        assert substituted_gram_det(n, b) == \
            contravariant_det(n).specialized(b, "prefactor")


def test_one_param_bridge():
    # at b = -2 the contravariant determinant recovers the one-parameter
    # Gram determinant under q = t^4, up to the monomial prefactor and sign
    for n in (2, 3, 4):
        b = BilinearData.constant(n, -2)
        lhs = contravariant_det(n).specialized(b, "prefactor") * \
            Laurent.t(2 * math.factorial(n) * n * (n - 1) // 2)
        rhs = Laurent.one()
        total_e = 0
        for k, e in det_one_param(n).factors:
            rhs = rhs * (Laurent.one() - Laurent.t(4 * k * (k - 1))) ** e
            total_e += e
        if total_e % 2:
            rhs = -rhs
        assert lhs == rhs


def test_bilinear_data_validation():
    with pytest.raises(ValueError):
        BilinearData(2, {(2, 1): 1})
    with pytest.raises(ValueError):
        BilinearData(3, {(1, 2): Fraction(1, 2)})
    assert BilinearData.constant(3, 2).pairs() == [(1, 2), (1, 3), (2, 3)]
