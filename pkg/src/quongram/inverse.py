"""
Inversion of the word-basis Gram matrices, in the permutation expansion.

The inverse of the Gram matrix of a multiplicity-free weight is carried as

    [A]^{-1} = sum_g  Lambda(g) . Rhat(g)

with diagonal coefficients Lambda(g) whose entries are box fractions.  Five
independent routes produce the same table:

* ``fast``   -- the two-step Young-factor reversal recursion, with the
  closed-form product (global sign, Q-factors on the odd reversal levels)
  asserted against it;
* ``long``   -- inclusion-exclusion over all interval subdivisions;
* ``short``  -- the leading-block recursion (n-1 terms per interval);
* ``chains`` -- the signed sum of Psi-products over subdivision chains;
* ``zagier`` -- the multiplicative elimination form C^n [D^{n-1}]^{-1} ...
  C^2 [D^1]^{-1} with each D-factor inverted by its descent-set expansion.

Lambda(g) vanishes exactly when the block-reversal sequence of g (reverse all
minimal Young factors, repeat) never reaches the identity; permutations where
it does are called tree-like here.

>>> print(lambda_scalar((1, 2), Perm((2, 1)))) # doctest: +NORMALIZE_WHITESPACE
-1 / Box{1,2}
"""

from __future__ import annotations

__all__ = [
    "LambdaTable", "Universe",
    "lambda_sigma", "lambda_scalar", "lambda_id", "lambda_fast",
    "tree_like", "random_tree_like", "abs_q_sq",
    "psi_op", "e_op", "d_inverse_op", "c_unimodal_op",
    "inv_chains", "inv_long", "inv_short", "inv_zagier", "inv_full",
    "inv_brute", "inv_degenerate", "inverse_matrix_at",
    "ZagierReport", "zagier_check",
]

import itertools
from collections import Counter
from dataclasses import dataclass, field

from .ring import Poly, GaussRat
from .boxes import BoxFactor, BoxFraction
from .fock import Word, Weight
from .perms import (Perm, all_perms, longest_element, young_data,
                    young_sequence, block_reversal, unimodal_subset)
from .subdiv import enumerate_bracketings, enumerate_chains
from .gram import (Basis, GramMatrix, DiagOp, OpExpansion, rhat, q_mono,
                   q_diag_set, factor_CD, build_generic, build_degenerate,
                   embed_degenerate)


# ---------------------------------------------------------------------------
# scalar universes: where the Lambda recursion computes
# ---------------------------------------------------------------------------

_UNIVERSE_IDS = itertools.count()


class Universe:
    """Arithmetic context for the Lambda recursion.

    Symbolic (box fractions over the pair parameters, or over the single
    parameter) or numeric (exact Gaussian-rational values at an assignment).
    The recursion itself is written once against this interface.
    """

    __slots__ = ("one_param", "assignment", "mode", "_tag")

    def __init__(self, one_param: bool = False, assignment=None,
                 mode: str = "free"):
        self.one_param = one_param
        self.assignment = assignment
        self.mode = mode
        if assignment is None:
            self._tag = ("sym", one_param)
        else:
            self._tag = ("num", next(_UNIVERSE_IDS), mode, one_param)

    def key(self, letters: tuple):
        # one-parameter symbolic values only depend on interval sizes
        if self.assignment is None and self.one_param:
            return (self._tag, len(letters))
        return (self._tag, letters)

    def one(self):
        if self.assignment is None:
            return BoxFraction.one()
        return GaussRat.of(1)

    def zero(self):
        if self.assignment is None:
            return BoxFraction.zero()
        return GaussRat.of(0)

    def const(self, c: int):
        if self.assignment is None:
            return BoxFraction(Poly.const(c))
        return GaussRat.of(c)

    def box_inv(self, letters: tuple, positions):
        """1 / Box over the given 1-based positions of the letter tuple."""
        if self.assignment is None:
            return BoxFraction(Poly.one(),
                               (_box(letters, positions, self.one_param),))
        val = _box(letters, positions, self.one_param).expand().evaluate(
            self.assignment, self.mode)
        return GaussRat.of(1) / val

    def q_block(self, letters: tuple, positions):
        """The monomial prod_{a != b in positions} q_{letters_a letters_b}."""
        T = sorted(positions)
        pairs = [(a, b) for a in T for b in T if a != b]
        mono = q_mono(letters, pairs, self.one_param)
        if self.assignment is None:
            return BoxFraction(mono)
        return mono.evaluate(self.assignment, self.mode)

    def is_zero(self, v) -> bool:
        return v.is_zero()


_SYMBOLIC = Universe()
_ONE_PARAM = Universe(one_param=True)


def _universe(one_param: bool, universe: Universe | None) -> Universe:
    if universe is not None:
        return universe
    return _ONE_PARAM if one_param else _SYMBOLIC


def _box(letters: tuple, positions, one_param: bool) -> BoxFactor:
    if one_param:
        k = len(tuple(positions))
        return BoxFactor(tuple(range(1, k + 1)),
                         frozenset(range(1, k + 1)), True)
    return BoxFactor(tuple(letters), frozenset(positions), False)


def _restrict(g: Perm, a: int, b: int) -> Perm:
    """g confined to an invariant interval [a..b], renumbered to S_{b-a+1}."""
    return Perm(g(x) - (a - 1) for x in range(a, b + 1))


# ---------------------------------------------------------------------------
# the Lambda recursion
# ---------------------------------------------------------------------------

_SIGMA_MEMO: dict = {}
_LAMBDA_MEMO: dict = {}


def lambda_sigma(letters, blocks, one_param: bool = False,
                 universe: Universe | None = None):
    """Thickened identity coefficient of a subdivision of the positions.

    ``blocks`` is a tuple of intervals (a, b) partitioning 1..len(letters);
    the value is the identity coefficient of the inverse for a word of
    len(blocks) letters, with every box over a bracket [a..b] replaced by the
    box over the union of blocks a..b:

        sum over bracketings beta of 1..l with outer brackets of
        (-1)^(b(beta)+l-1) / prod_{[a..b] in beta} Box(J_a u ... u J_b)

    A single block gives 1.

    >>> print(lambda_sigma((1, 2, 3), ((1, 1), (2, 2), (3, 3))))
    (1 - q12*q21*q23*q32) / Box{1,2} Box{1,2,3} Box{2,3}
    """
    u = _universe(one_param, universe)
    letters = tuple(letters)
    blocks = tuple(blocks)
    key = (u.key(letters), blocks)
    cached = _SIGMA_MEMO.get(key)
    if cached is not None:
        return cached
    l = len(blocks)
    if l == 1:
        val = u.one()
    else:
        val = u.zero()
        for beta in enumerate_bracketings(l, True):
            term = u.const(1 if (len(beta) + l - 1) % 2 == 0 else -1)
            for a, b in beta:
                term = term * u.box_inv(
                    letters, range(blocks[a - 1][0], blocks[b - 1][1] + 1))
            val = val + term
    _SIGMA_MEMO[key] = val
    return val


def _singletons(m: int) -> tuple:
    return tuple((k, k) for k in range(1, m + 1))


def tree_like(g: Perm) -> bool:
    """Whether the block-reversal sequence of g reaches the identity."""
    return young_sequence(g)[1]


def lambda_scalar(letters, g: Perm, one_param: bool = False,
                  universe: Universe | None = None,
                  check_closed: bool = True):
    """The inverse coefficient Lambda(g) for a single word (given by its
    letter tuple); the workhorse behind every per-permutation method.

    Computed by the literal two-step reversal recursion; when
    ``check_closed`` is set, the closed-form product over the whole reversal
    sequence is evaluated independently and asserted equal.
    """
    u = _universe(one_param, universe)
    letters = tuple(letters)
    m = len(letters)
    if g.n != m:
        raise ValueError(f"permutation degree {g.n} != word length {m}")
    key = (u.key(letters), g)
    cached = _LAMBDA_MEMO.get(key)
    if cached is not None:
        return cached
    if g.is_identity():
        val = lambda_sigma(letters, _singletons(m), one_param, u)
    elif not tree_like(g):
        val = u.zero()
    else:
        val = _fast_step(letters, g, one_param, u)
        if check_closed:
            closed = _closed_form(letters, g, one_param, u)
            assert val == closed, (
                f"closed-form product disagrees with the recursion at {g}")
    _LAMBDA_MEMO[key] = val
    return val


def _fast_step(letters: tuple, g: Perm, one_param: bool, u: Universe):
    """One application of the combined two-step recursion:

    Lambda(g) = (-1)^(n(g)+n(g')) . Lambda_{sigma(g)}
                . prod_k Lambda_{sigma(g'|J_k(g))}
                . Q_{sigma(g')} . prod_K Lambda_K(g''|K)

    with g' = g w_{J(g)} (reverse all minimal Young blocks), g'' = g' w_{J(g')},
    and K running over the blocks of sigma(g').
    """
    m = len(letters)
    yd = young_data(g)
    gp = g * block_reversal(yd.blocks, m)
    ydp = young_data(gp)
    sign = 1 if (len(yd.blocks) + len(ydp.blocks)) % 2 == 0 else -1
    val = u.const(sign) * lambda_sigma(letters, yd.blocks, one_param, u)
    for a, b in yd.blocks:
        if b > a:
            sub = tuple((x - (a - 1), y - (a - 1))
                        for x, y in ydp.blocks if a <= x and y <= b)
            val = val * lambda_sigma(letters[a - 1:b], sub, one_param, u)
    for a, b in ydp.blocks:
        if b > a:
            val = val * u.q_block(letters, range(a, b + 1))
    gpp = gp * block_reversal(ydp.blocks, m)
    for a, b in ydp.blocks:
        if b > a:
            val = val * lambda_scalar(letters[a - 1:b], _restrict(gpp, a, b),
                                      one_param, u, check_closed=False)
    return val


def _closed_form(letters: tuple, g: Perm, one_param: bool, u: Universe):
    """The full reversal-sequence product for a tree-like permutation:
    global sign from the total excess of block sizes over block counts,
    relative thickened factors at every level, Q-monomials on odd levels."""
    m = len(letters)
    seq = [g]
    cur = g
    while not cur.is_identity():
        cur = cur * block_reversal(young_data(cur).blocks, m)
        seq.append(cur)
    subs = [young_data(h).blocks for h in seq]
    d = len(seq) - 1
    exponent = sum(b - a for blocks in subs for a, b in blocks)
    val = u.const(1 if exponent % 2 == 0 else -1)
    val = val * lambda_sigma(letters, subs[0], one_param, u)
    for k in range(1, d + 1):
        for a, b in subs[k - 1]:
            if b > a:
                sub = tuple((x - (a - 1), y - (a - 1))
                            for x, y in subs[k] if a <= x and y <= b)
                val = val * lambda_sigma(letters[a - 1:b], sub, one_param, u)
    for k in range(1, d + 1, 2):
        for a, b in subs[k]:
            if b > a:
                val = val * u.q_block(letters, range(a, b + 1))
    return val


def random_tree_like(n: int, rng) -> Perm:
    """Rejection-sample a tree-like permutation of S_n."""
    while True:
        img = list(range(1, n + 1))
        rng.shuffle(img)
        g = Perm(img)
        if tree_like(g):
            return g


# ---------------------------------------------------------------------------
# basis-level coefficients
# ---------------------------------------------------------------------------

def lambda_fast(g: Perm, nu: Weight | None = None, one_param: bool = False,
                basis: Basis | None = None,
                check_closed: bool = True) -> DiagOp:
    """Lambda(g) as a diagonal over all words of the weight."""
    if basis is None:
        basis = Basis.of_weight(nu)
    return DiagOp(basis, tuple(
        lambda_scalar(tuple(w), g, one_param, check_closed=check_closed)
        for w in basis.words))


def lambda_id(nu: Weight | None = None, form: str = "outer-bracket",
              one_param: bool = False, basis: Basis | None = None) -> DiagOp:
    """The identity coefficient of the inverse, from either bracketing sum.

    ``outer-bracket``: signed sum of 1/box-products over bracketings with
    outer brackets.  ``no-outer``: the same value written as
    (1/Box_full) . sum over bracketings without outer brackets of
    (monomial of each bracket)/(box of each bracket).
    """
    if basis is None:
        basis = Basis.of_weight(nu)
    n = basis.n

    def value(w):
        letters = tuple(w)
        if n == 1:
            return BoxFraction.one()
        if form == "outer-bracket":
            return lambda_sigma(letters, _singletons(n), one_param)
        if form == "no-outer":
            outer = _box(letters, range(1, n + 1), one_param)
            u = _universe(one_param, None)
            total = BoxFraction.zero()
            for beta in enumerate_bracketings(n, False):
                num = Poly.one()
                den = [outer]
                for a, b in beta:
                    T = range(a, b + 1)
                    pairs = [(x, y) for x in T for y in T if x != y]
                    num = num * q_mono(letters, pairs, one_param)
                    den.append(_box(letters, T, one_param))
                total = total + BoxFraction(num, tuple(den))
            return total
        raise ValueError(f"unknown form {form!r}")

    return DiagOp.of_func(basis, value)


def abs_q_sq(basis: Basis, g: Perm, one_param: bool = False) -> DiagOp:
    """|Q(g)|^2: the diagonal prod over inversions (a,b) of g^-1 of
    q_{i_a i_b} q_{i_b i_a}."""
    pairs = []
    for a, b in g.inverse().inversion_set():
        pairs.append((a, b))
        pairs.append((b, a))
    return DiagOp.of_func(basis, lambda w: q_mono(w, pairs, one_param))


# ---------------------------------------------------------------------------
# the inverse table
# ---------------------------------------------------------------------------

@dataclass
class LambdaTable:
    """[A]^{-1} = sum_g Lambda(g) Rhat(g): nonzero coefficients only."""

    basis: Basis
    one_param: bool
    entries: dict  # Perm -> DiagOp of BoxFraction

    def coefficient(self, g: Perm) -> DiagOp:
        d = self.entries.get(g)
        if d is not None:
            return d
        return DiagOp(self.basis, (BoxFraction.zero(),) * self.basis.size)

    def support(self):
        return sorted(self.entries, key=lambda g: g.images)

    def to_expansion(self) -> OpExpansion:
        coeffs = {}
        for g, lam in self.entries.items():
            inv = g.inverse().inversion_set()
            qd = DiagOp.of_func(
                self.basis,
                lambda w, inv=inv: q_mono(w, inv, self.one_param))
            coeffs[g] = lam * qd
        return OpExpansion(self.basis, coeffs)

    def to_matrix(self) -> GramMatrix:
        return self.to_expansion().to_matrix()

    def evaluate(self, assignment, mode: str = "free") -> list:
        """Dense inverse at an exact evaluation point (GaussRat entries)."""
        basis = self.basis
        size = basis.size
        zero = GaussRat.of(0)
        ent = [[zero for _ in range(size)] for _ in range(size)]
        for g, lam in self.entries.items():
            inv = g.inverse().inversion_set()
            for j, w in enumerate(basis.words):
                gw = g.act_word(w)
                i = basis.index(gw)
                val = lam.value_at(gw)
                if isinstance(val, BoxFraction):
                    val = val.evaluate(assignment, mode)
                mono = q_mono(gw, inv, self.one_param).evaluate(
                    assignment, mode)
                ent[i][j] = ent[i][j] + val * mono
        return ent

    def __eq__(self, o):
        return (isinstance(o, LambdaTable) and self.basis == o.basis
                and self.entries == o.entries)

    def to_json(self):
        return {str(g): d.to_json()
                for g, d in sorted(self.entries.items(),
                                   key=lambda kv: kv[0].images)}

    @staticmethod
    def from_expansion(op: OpExpansion, one_param: bool = False
                       ) -> "LambdaTable":
        """Divide out the Rhat monomials: coefficients D(g) = Lambda(g)Q(g)
        with Q(g) an invertible diagonal monomial."""
        entries = {}
        for g, d in op.coefficients.items():
            inv = g.inverse().inversion_set()
            vals = []
            for w, v in zip(op.basis.words, d.diagonal):
                mono = q_mono(w, inv, one_param)
                if isinstance(v, Poly):
                    vals.append(BoxFraction(v.exact_div(mono)))
                else:
                    vals.append(BoxFraction(v.num.exact_div(mono), v.den,
                                            reduce=False))
            dd = DiagOp(op.basis, tuple(vals))
            if not dd.is_zero():
                entries[g] = dd
        return LambdaTable(op.basis, one_param, entries)


# ---------------------------------------------------------------------------
# operator-product methods
# ---------------------------------------------------------------------------

def _inv_box_diag(basis: Basis, a: int, b: int, one_param: bool) -> DiagOp:
    return DiagOp.of_func(basis, lambda w: BoxFraction(
        Poly.one(), (_box(tuple(w), range(a, b + 1), one_param),)))


def psi_op(basis: Basis, a: int, b: int, one_param: bool = False
           ) -> OpExpansion:
    """Psi_[a..b] = [I + (-1)^(b-a+1) Rhat(w_[a..b])]^{-1}
                  = (1/Box_[a..b]) [I - (-1)^(b-a+1) Rhat(w_[a..b])]."""
    wI = longest_element(a, b, basis.n)
    op = OpExpansion.identity(basis) - rhat(
        wI, basis.weight, one_param, basis).scale((-1) ** (b - a + 1))
    return op.left_diag(_inv_box_diag(basis, a, b, one_param))


def inv_chains(nu: Weight | None = None, one_param: bool = False,
               basis: Basis | None = None) -> OpExpansion:
    """Signed sum of Psi-products over all subdivision chains (finest member
    leftmost in each product)."""
    if basis is None:
        basis = Basis.of_weight(nu)
    n = basis.n
    if n == 1:
        return OpExpansion.identity(basis)
    total = OpExpansion.zero(basis)
    for chain in enumerate_chains(n):
        op = OpExpansion.identity(basis)
        for sub in reversed(chain.members):
            for a, b in sub.nontrivial():
                op = op * psi_op(basis, a, b, one_param)
        sign = (-1) ** (chain.nondegenerate_count() + n - 1)
        total = total + op.scale(sign)
    return total


def inv_long(nu: Weight | None = None, one_param: bool = False,
             basis: Basis | None = None) -> OpExpansion:
    """Interval recursion: the inverse over [a..b] is the signed sum over
    proper subdivisions of products of sub-interval inverses, times
    Psi_[a..b]."""
    if basis is None:
        basis = Basis.of_weight(nu)
    memo: dict = {}

    def interval(a: int, b: int) -> OpExpansion:
        if a == b:
            return OpExpansion.identity(basis)
        if (a, b) in memo:
            return memo[(a, b)]
        total = OpExpansion.zero(basis)
        for r in range(1, b - a + 1):
            for cuts in itertools.combinations(range(a, b), r):
                term = OpExpansion.identity(basis)
                prev = a
                for c in cuts + (b,):
                    term = term * interval(prev, c)
                    prev = c + 1
                total = total + term.scale((-1) ** (r + 1))
        res = total * psi_op(basis, a, b, one_param)
        memo[(a, b)] = res
        return res

    return interval(1, basis.n)


def inv_short(nu: Weight | None = None, one_param: bool = False,
              basis: Basis | None = None) -> OpExpansion:
    """Leading-block recursion: inverse over [a..b] as the alternating sum
    over the first cut k of (inverse over [a..k]) (inverse over [k+1..b])
    Rhat(w_[a..k]), times Psi_[a..b]."""
    if basis is None:
        basis = Basis.of_weight(nu)
    nu = basis.weight
    memo: dict = {}

    def interval(a: int, b: int) -> OpExpansion:
        if a == b:
            return OpExpansion.identity(basis)
        if (a, b) in memo:
            return memo[(a, b)]
        total = OpExpansion.zero(basis)
        for k in range(a, b):
            term = interval(a, k) * interval(k + 1, b)
            if k > a:
                term = term * rhat(longest_element(a, k, basis.n), nu,
                                   one_param, basis)
            total = total + term.scale((-1) ** (k - a))
        res = total * psi_op(basis, a, b, one_param)
        memo[(a, b)] = res
        return res

    return interval(1, basis.n)


def e_op(basis: Basis, m: int, one_param: bool = False) -> OpExpansion:
    """E^m = sum over pi in S_m x 1^(n-m) of W_m(pi) Rhat(pi), with
    W_m(pi) = prod over descents i of pi^-1 of Q_[i+1..m+1]."""
    nu = basis.weight
    n = basis.n
    fixed = tuple(range(m + 1, n + 1))
    total = OpExpansion.zero(basis)
    for images in itertools.permutations(range(1, m + 1)):
        pi = Perm(images + fixed)
        W = DiagOp.identity(basis)
        for i in sorted(pi.inverse().descents()):
            W = W * q_diag_set(basis, range(i + 1, m + 2), one_param)
        total = total + rhat(pi, nu, one_param, basis).left_diag(W)
    return total


def d_inverse_op(basis: Basis, m: int, one_param: bool = False
                 ) -> OpExpansion:
    """[D^m]^{-1} = [Delta^m]^{-1} E^m with
    Delta^m = Box_[1..m+1] Box_[2..m+1] ... Box_[m..m+1]."""
    def dinv(w):
        den = tuple(_box(tuple(w), range(k, m + 2), one_param)
                    for k in range(1, m + 1))
        return BoxFraction(Poly.one(), den)

    return e_op(basis, m, one_param).left_diag(DiagOp.of_func(basis, dinv))


def c_unimodal_op(basis: Basis, m: int, one_param: bool = False
                  ) -> OpExpansion:
    """C^m as the signed sum of Rhat(pi^-1) over unimodal pi (peak at k)."""
    nu = basis.weight
    total = OpExpansion.zero(basis)
    for k in range(1, m + 1):
        for pi in unimodal_subset(m, k, basis.n):
            total = total + rhat(pi.inverse(), nu, one_param,
                                 basis).scale((-1) ** (m - k))
    return total


def inv_zagier(nu: Weight | None = None, one_param: bool = False,
               basis: Basis | None = None) -> OpExpansion:
    """[A]^{-1} = C^n [D^{n-1}]^{-1} C^{n-1} [D^{n-2}]^{-1} ... C^2 [D^1]^{-1}."""
    if basis is None:
        basis = Basis.of_weight(nu)
    nu = basis.weight
    n = basis.n
    op = OpExpansion.identity(basis)
    for m in range(n, 1, -1):
        C, _ = factor_CD(nu, m, one_param, basis)
        op = op * C * d_inverse_op(basis, m - 1, one_param)
    return op


def inv_brute(nu: Weight | None = None, one_param: bool = False,
              basis: Basis | None = None) -> GramMatrix:
    """Cofactor inverse of the generic Gram matrix, denominators factored
    through the closed-form determinant (n <= 3: the cofactors are dense
    symbolic determinants)."""
    from .determinant import det_formula, det_poly_bareiss
    if basis is None:
        basis = Basis.of_weight(nu)
    nu = basis.weight
    if basis.n > 3:
        raise ValueError("cofactor inversion is exponential; use another "
                         "method beyond 3 letters")
    A = build_generic(nu, one_param)
    size = basis.size
    det_boxes = []
    for letters, exp in det_formula(nu).factors:
        word = tuple(sorted(letters))
        det_boxes.extend([_box(word, range(1, len(word) + 1), one_param)] * exp)
    ent = []
    for i in range(size):
        row = []
        for j in range(size):
            minor = [[A.entries[r][c] for c in range(size) if c != i]
                     for r in range(size) if r != j]
            cof = det_poly_bareiss(minor) if minor else Poly.one()
            if (i + j) % 2:
                cof = -cof
            row.append(BoxFraction(cof, tuple(det_boxes)))
        ent.append(row)
    return GramMatrix(basis, ent)


_METHODS = {
    "chains": inv_chains,
    "long": inv_long,
    "short": inv_short,
    "zagier": inv_zagier,
}


def inv_full(nu: Weight | None = None, method: str = "fast",
             one_param: bool = False, basis: Basis | None = None
             ) -> LambdaTable:
    """The full inverse table of a multiplicity-free weight by any method."""
    if basis is None:
        basis = Basis.of_weight(nu)
    nu = basis.weight
    if not nu.generic:
        raise ValueError("weight has repeated letters; use inv_degenerate")
    if method == "fast":
        entries = {}
        for g in all_perms(basis.n):
            d = lambda_fast(g, nu, one_param, basis, check_closed=False)
            if not d.is_zero():
                entries[g] = d
        return LambdaTable(basis, one_param, entries)
    if method == "brute":
        mat = inv_brute(nu, one_param, basis)
        return _table_from_matrix(mat, one_param)
    fn = _METHODS.get(method)
    if fn is None:
        raise ValueError(f"unknown method {method!r}")
    return LambdaTable.from_expansion(fn(nu, one_param, basis), one_param)


def _table_from_matrix(mat: GramMatrix, one_param: bool) -> LambdaTable:
    """Read a dense inverse back into per-permutation coefficients (generic
    weights: each entry position corresponds to a unique place permutation)."""
    basis = mat.basis
    coeffs = {}
    for j, wj in enumerate(basis.words):
        pos = {ch: k + 1 for k, ch in enumerate(wj)}
        for i, wi in enumerate(basis.words):
            g = Perm(pos[ch] for ch in wi).inverse()
            val = mat.entries[i][j]
            d = coeffs.setdefault(
                g, [BoxFraction.zero()] * basis.size)
            d[basis.index(wi)] = val
    op_entries = {}
    for g, vals in coeffs.items():
        d = DiagOp(basis, tuple(vals))
        if not d.is_zero():
            op_entries[g] = d
    return LambdaTable.from_expansion(OpExpansion(basis, op_entries),
                                      one_param)


def inverse_matrix_at(nu: Weight, assignment, mode: str = "free",
                      one_param: bool = False) -> list:
    """Dense numeric inverse at an exact point, via the per-permutation
    recursion run directly over Gaussian rationals (no symbolic tables)."""
    basis = Basis.of_weight(nu)
    u = Universe(one_param=one_param, assignment=assignment, mode=mode)
    size = basis.size
    zero = GaussRat.of(0)
    ent = [[zero for _ in range(size)] for _ in range(size)]
    for g in all_perms(basis.n):
        if not tree_like(g):
            continue
        inv = g.inverse().inversion_set()
        for j, w in enumerate(basis.words):
            gw = g.act_word(w)
            val = lambda_scalar(tuple(gw), g, one_param, universe=u,
                                check_closed=False)
            if val.is_zero():
                continue
            mono = q_mono(gw, inv, one_param).evaluate(assignment, mode)
            i = basis.index(gw)
            ent[i][j] = ent[i][j] + val * mono
    return ent


# ---------------------------------------------------------------------------
# degenerate weights
# ---------------------------------------------------------------------------

def inv_degenerate(nu: Weight, one_param: bool = False) -> GramMatrix:
    """Inverse for a weight with repeated letters: sum the generic-model
    inverse over the fiber symmetry group and push the labels down.

    [A]^{-1}_{i,j} = sum_{h in H} [generic]^{-1}_{lift(i), h.lift(j)}
    """
    if nu.generic:
        return inv_full(nu, "fast", one_param).to_matrix()
    emb = embed_degenerate(nu)
    table = inv_full(emb.generic_weight, "fast", one_param)
    tilde = table.to_matrix()
    basis = Basis.of_weight(nu)
    f = emb.label_map()
    ent = []
    for wi in basis.words:
        ti = emb.lift(wi)
        row = []
        for wj in basis.words:
            tj = emb.lift(wj)
            total = None
            for h in emb.group:
                val = tilde.entry(ti, Word(h(ch) for ch in tj))
                total = val if total is None else total + val
            if isinstance(total, Poly):
                total = BoxFraction(total)
            mapped = total.map_labels(f)
            row.append(BoxFraction(mapped.num, mapped.den))
        ent.append(row)
    return GramMatrix(basis, ent)


# ---------------------------------------------------------------------------
# denominator conjecture checks
# ---------------------------------------------------------------------------

@dataclass
class ZagierReport:
    """Per-entry polynomiality report for a claimed common denominator."""

    mode: str
    n: int
    one_param: bool
    checked: int = 0
    failures: list = field(default_factory=list)  # (perm, word, leftover)
    notes: str = ""

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self):
        return {"mode": self.mode, "n": self.n, "one_param": self.one_param,
                "checked": self.checked, "passed": self.passed,
                "failures": [{"perm": p, "word": w, "leftover": l}
                             for p, w, l in self.failures],
                "notes": self.notes}

    def __str__(self):
        head = (f"{self.mode}: n={self.n} entries={self.checked} "
                f"{'PASS' if self.passed else 'FAIL'}")
        lines = [head]
        for p, w, l in self.failures:
            lines.append(f"  entry g={p} word={w}: leftover denominator {l}")
        if self.notes:
            lines.append("  " + self.notes)
        return "\n".join(lines)


def _clear_denominator(frac: BoxFraction, candidate) -> BoxFraction:
    """frac times the product of the candidate boxes, reduced; polynomial
    exactly when the resulting denominator is empty."""
    cden = Counter(frac.den)
    ccand = Counter(candidate)
    common = cden & ccand
    rem_den = tuple((cden - common).elements())
    num = frac.num
    for box, mult in (ccand - common).items():
        for _ in range(mult):
            num = num * box.expand()
    return BoxFraction(num, rem_den)


def _interval_boxes(letters: tuple, one_param: bool) -> list:
    n = len(letters)
    return [_box(letters, range(a, b + 1), one_param)
            for a in range(1, n) for b in range(a + 1, n + 1)]


def _subset_boxes(letters: tuple, one_param: bool) -> list:
    n = len(letters)
    out = []
    for k in range(2, n + 1):
        for T in itertools.combinations(range(1, n + 1), k):
            out.append(_box(letters, T, one_param))
    return out


def _one_param_boxes(n: int, multiplicities: bool) -> list:
    out = []
    for k in range(2, n + 1):
        box = _box(tuple(range(1, k + 1)), range(1, k + 1), True)
        out.extend([box] * ((n - k + 1) if multiplicities else 1))
    return out


def zagier_check(n: int, mode: str = "multi", coeff: Perm | None = None
                 ) -> ZagierReport:
    """Check a claimed common denominator of the inverse, entry by entry.

    modes: ``multi`` (product of all interval boxes, word by word),
    ``extended-multi`` (product of all letter-subset boxes),
    ``one-param`` (prod_k (1-q^(k(k-1)))^(n-k+1)),
    ``original-conjecture`` (prod_k (1-q^(k(k-1))), single copies -- the
    historical claim; fails at n=8).  ``coeff`` restricts the check to a
    single permutation's coefficient (used for the n=8 counterexample
    without touching the 8-letter basis).
    """
    one_param = mode in ("one-param", "original-conjecture")
    report = ZagierReport(mode=mode, n=n, one_param=one_param)
    nu = Weight.generic_n(n)

    def candidate(letters):
        if mode == "multi":
            return _interval_boxes(letters, False)
        if mode == "extended-multi":
            return _subset_boxes(letters, False)
        if mode == "one-param":
            return _one_param_boxes(n, True)
        if mode == "original-conjecture":
            return _one_param_boxes(n, False)
        raise ValueError(f"unknown mode {mode!r}")

    def check_entry(g, word, lam):
        # the matrix entry is lam . q_{word, g^{-1}}; the monomial cannot
        # cancel box factors, so polynomiality of the entry is decided on lam
        mono = q_mono(word, g.inverse().inversion_set(), one_param)
        frac = lam * mono
        left = _clear_denominator(frac, candidate(tuple(word)))
        report.checked += 1
        if left.den:
            report.failures.append((str(g), str(Word(word)), str(left)))

    if coeff is not None:
        letters = tuple(range(1, n + 1))
        lam = lambda_scalar(letters, coeff, one_param)
        check_entry(coeff, Word(letters), lam)
        if report.failures:
            report.notes = ("claimed denominator does not clear this "
                            "coefficient")
        return report

    table = inv_full(nu, "fast", one_param)
    for g in table.support():
        lam = table.entries[g]
        for w in table.basis.words:
            check_entry(g, w, lam.value_at(w))
    return report


if __name__ == "__main__":
    import doctest

    doctest.testmod()
