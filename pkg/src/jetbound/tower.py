"""Chern relations, canonical reduction and fiber integration on jet towers.

The tower over an n-dimensional base carries one tautological class ``u_j``
per level ``j = 1..k``.  Its cohomology is the base ring extended by the
``u_j`` subject to one monic relation of degree ``r = n`` per level, whose
coefficients are the rank-r lifted Chern classes of the previous level.  This
module builds those relations, reduces arbitrary classes to the canonical
form with ``deg(u_j) < r``, and integrates along the fibers down to the base
(extraction of the ``u_j^(r-1)`` coefficient, level by level from the top).

``pushforward_to_base`` computes ``integrate_fibers(reduce_tower(p))``
without materializing the reduced polynomial: per level it runs the adjoint
form of the same Euclidean division, keeping only what can still reach the
``u_j^(r-1)`` coefficient.  The two paths produce identical polynomials term
by term; the test suite pins that equality.
"""

from __future__ import annotations

from math import comb
from typing import Optional, Sequence, Union

from .errors import DimensionMismatchError, InhomogeneousClassError, UnreducedClassError
from .polyring import (
    NEG_INFINITY,
    Polynomial,
    Ring,
    VariableId,
    _EXP_MASK,
    _mul_into,
    reduce_monic,
)

__all__ = [
    "TowerContext",
    "RelationSet",
    "build_relations",
    "reduce_tower",
    "integrate_fibers",
    "pushforward_to_base",
    "intersect",
]


def _binom(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return comb(n, k)


class TowerContext:
    """Dimensions and variable table of one jet tower.

    ``n`` is the base dimension, ``r = n`` the rank of the directed bundle,
    ``k >= 1`` the jet order.  The ring orders its variables as
    ``u_1..u_k, c_1..c_r, h, d`` and, when ``symbolic_weights`` is set,
    ``a_1..a_k`` (weight-0 coefficient symbols used by the symbolic mode).
    """

    __slots__ = ("n", "r", "k", "symbolic_weights", "ring", "_relations")

    def __init__(self, n: int, k: int, symbolic_weights: bool = False):
        if n < 1:
            raise ValueError("base dimension n must be >= 1")
        if k < 1:
            raise ValueError("jet order k must be >= 1")
        self.n = n
        self.r = n
        self.k = k
        self.symbolic_weights = symbolic_weights
        names = [f"u{j}" for j in range(1, k + 1)]
        names += [f"c{l}" for l in range(1, self.r + 1)]
        names += ["h", "d"]
        if symbolic_weights:
            names += [f"a{j}" for j in range(1, k + 1)]
        self.ring = Ring(names)
        self._relations: Optional[RelationSet] = None

    @property
    def total_dim(self) -> int:
        """Dimension of the top tower level: n + k(r - 1)."""
        return self.n + self.k * (self.r - 1)

    def u(self, j: int) -> VariableId:
        if not 1 <= j <= self.k:
            raise IndexError(f"u index {j} outside 1..{self.k}")
        return j - 1

    def c(self, l: int) -> VariableId:
        if not 1 <= l <= self.r:
            raise IndexError(f"c index {l} outside 1..{self.r}")
        return self.k + l - 1

    @property
    def h(self) -> VariableId:
        return self.k + self.r

    @property
    def d(self) -> VariableId:
        return self.k + self.r + 1

    def a(self, j: int) -> VariableId:
        if not self.symbolic_weights:
            raise ValueError("symbolic weight variables were not enabled")
        if not 1 <= j <= self.k:
            raise IndexError(f"a index {j} outside 1..{self.k}")
        return self.k + self.r + 2 + (j - 1)

    @property
    def cohomology_weights(self) -> tuple[int, ...]:
        """Weighted degree of each ring variable: u, h -> 1; c_l -> l; d, a -> 0."""
        weights = [1] * self.k + list(range(1, self.r + 1)) + [1, 0]
        if self.symbolic_weights:
            weights += [0] * self.k
        return tuple(weights)

    @property
    def relations(self) -> "RelationSet":
        """The relation set of this tower, built once and cached."""
        if self._relations is None:
            self._relations = build_relations(self)
        return self._relations

    def __repr__(self) -> str:
        return f"TowerContext(n={self.n}, k={self.k})"


class RelationSet:
    """Lifted Chern classes and the monic relation of every level, memoized."""

    __slots__ = ("ctx", "lifted", "relations", "_neg_lifted")

    def __init__(self, ctx: TowerContext, lifted, relations):
        self.ctx = ctx
        self.lifted = lifted          # lifted[j][l-1] = class l at level j, j = 0..k-1
        self.relations = relations    # relations[j-1] = monic relation of level j
        self._neg_lifted: dict[int, list[dict[int, int]]] = {}

    def lifted_chern(self, j: int, l: int) -> Polynomial:
        """Lifted class ``l`` at level ``j`` (0 = base); zero for ``l > r``."""
        if not 0 <= j <= self.ctx.k - 1:
            raise IndexError(f"level {j} outside 0..{self.ctx.k - 1}")
        if l < 1:
            raise IndexError("class index must be >= 1")
        if l > self.ctx.r:
            return self.ctx.ring.zero
        return self.lifted[j][l - 1]

    def relation(self, j: int) -> Polynomial:
        """The monic degree-r relation of level ``j`` (1-based)."""
        return self.relations[j - 1]

    def negated_lifted_terms(self, j: int) -> list[dict[int, int]]:
        """Raw negated term maps of the level-j lifted classes, memoized."""
        cached = self._neg_lifted.get(j)
        if cached is None:
            cached = [
                {k: -c for k, c in self.lifted[j][l - 1]._terms.items()}
                for l in range(1, self.ctx.r + 1)
            ]
            self._neg_lifted[j] = cached
        return cached


def build_relations(ctx: TowerContext) -> RelationSet:
    """Build the lifted Chern classes and the monic relation of every level.

    Level-j classes follow the rank-r recursion
    ``c_l^[j] = sum_s [binom(r-s, l-s) - binom(r-s, l-s-1)] u_j^(l-s) c_s^[j-1]``
    with ``c_0 = 1``, and the level relation is
    ``q_j = u_j^r + sum_l c_l^[j-1] u_j^(r-l)``.
    """
    ring = ctx.ring
    r = ctx.r
    lifted: list[tuple[Polynomial, ...]] = []
    level = tuple(ring.variable(ctx.c(l)) for l in range(1, r + 1))
    lifted.append(level)
    for j in range(1, ctx.k):
        uj = ring.variable(ctx.u(j))
        upow = [ring.one]
        for _ in range(r):
            upow.append(upow[-1] * uj)
        prev = lifted[j - 1]
        nxt = []
        for l in range(1, r + 1):
            cls = (_binom(r, l) - _binom(r, l - 1)) * upow[l]
            for s in range(1, l):
                coeff = _binom(r - s, l - s) - _binom(r - s, l - s - 1)
                if coeff:
                    cls = cls + coeff * (prev[s - 1] * upow[l - s])
            cls = cls + prev[l - 1]
            nxt.append(cls)
        lifted.append(tuple(nxt))
    relations = []
    for j in range(1, ctx.k + 1):
        uj = ring.variable(ctx.u(j))
        rel = uj ** r
        upow = [ring.one]
        for _ in range(r):
            upow.append(upow[-1] * uj)
        for l in range(1, r + 1):
            rel = rel + lifted[j - 1][l - 1] * upow[r - l]
        relations.append(rel)
    return RelationSet(ctx, tuple(lifted), tuple(relations))


def reduce_tower(p: Polynomial, rels: RelationSet) -> Polynomial:
    """Canonical representative with ``deg(u_j) < r`` for every level.

    Levels are processed from ``u_k`` down to ``u_1``; relations of lower
    levels never reintroduce higher tautological variables, so one pass
    suffices and the order is part of the canonical-form contract.
    """
    ctx = rels.ctx
    for j in range(ctx.k, 0, -1):
        p = reduce_monic(p, ctx.u(j), rels.relation(j))
    return p


def integrate_fibers(p: Polynomial, ctx: TowerContext) -> Polynomial:
    """Pushforward of a reduced class down to the base.

    Requires ``deg(u_j) < r`` for every j (coefficient extraction is only the
    correct pushforward below the relation degree) and extracts the
    ``u_j^(r-1)`` coefficient from ``u_k`` down to ``u_1``.
    """
    r = ctx.r
    for j in range(1, ctx.k + 1):
        deg = p.degree_in(ctx.u(j))
        if deg is not NEG_INFINITY and deg >= r:
            raise UnreducedClassError(
                f"degree {deg} in u{j} is >= rank {r}; reduce the class first"
            )
    for j in range(ctx.k, 0, -1):
        p = p.coeff_of(ctx.u(j), r - 1)
    return p


def pushforward_to_base(p: Polynomial, rels: RelationSet) -> Polynomial:
    """Integrate an arbitrary tower class to the base in one pass per level.

    Returns exactly ``integrate_fibers(reduce_tower(p, rels), ctx)`` (it
    performs the same Euclidean divisions) but never materializes the
    reduced class, which is what makes high jet orders tractable.  Per level
    the class is split into strata ``A_m`` by the power of the top variable
    and the adjoint recurrence ``B_m = A_m - sum_l c_l^[j-1] B_(m+l)`` is run
    from the top power down; ``B_(r-1)`` is the pushforward (each B-step is
    one division step, restricted to what can still reach the ``u^(r-1)``
    coefficient).
    """
    ctx = rels.ctx
    r = ctx.r
    ring = ctx.ring
    terms = p._terms
    for j in range(ctx.k, 0, -1):
        if not terms:
            break
        sh = ring.shift(ctx.u(j))
        strata: dict[int, dict[int, int]] = {}
        for key, coeff in terms.items():
            m = (key >> sh) & _EXP_MASK
            strata.setdefault(m, {})[key - (m << sh)] = coeff
        top = max(strata)
        if top < r - 1:
            terms = {}
            continue
        negated = rels.negated_lifted_terms(j - 1)
        window: dict[int, dict[int, int]] = {}
        for m in range(top, r - 2, -1):
            acc = dict(strata.get(m, ()))
            for l in range(1, r + 1):
                above = window.get(m + l)
                if above:
                    _mul_into(acc, negated[l - 1], above)
            window[m] = {k: c for k, c in acc.items() if c}
            window.pop(m + r, None)
        terms = window.get(r - 1, {})
    return ring.polynomial(terms)


def intersect(
    ctx: TowerContext,
    exponents: Sequence[int],
    extra: Union[Polynomial, int, None] = None,
) -> Polynomial:
    """Intersection class of ``u_1^(e_1) ... u_k^(e_k) * extra`` on the base.

    The total weighted degree must equal the tower dimension ``n + k(r-1)``;
    the result is the base class of weighted degree ``n`` obtained by
    ``integrate_fibers(reduce_tower(...))``.
    """
    if len(exponents) != ctx.k:
        raise DimensionMismatchError(
            f"expected {ctx.k} exponents, got {len(exponents)}"
        )
    ring = ctx.ring
    if extra is None:
        extra = ring.one
    elif isinstance(extra, int):
        extra = ring.const(extra)
    weights = ctx.cohomology_weights
    if not extra.is_homogeneous(weights):
        raise InhomogeneousClassError("extra class is not homogeneous")
    extra_degree = extra.weighted_degree(weights)
    if extra_degree is NEG_INFINITY:
        extra_degree = 0
    total = sum(exponents) + extra_degree
    if total != ctx.total_dim:
        raise DimensionMismatchError(
            f"total degree {total} != tower dimension {ctx.total_dim}"
        )
    cls = extra
    for j, e in enumerate(exponents, start=1):
        if e:
            cls = cls * ring.variable(ctx.u(j)) ** e
    return integrate_fibers(reduce_tower(cls, ctx.relations), ctx)
