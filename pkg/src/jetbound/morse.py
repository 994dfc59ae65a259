"""Morse-inequality classes, degree polynomials and effective thresholds.

For an admissible weight vector ``a`` on a jet tower of total dimension
``N = n + k(n-1)``, the positivity criterion is the top intersection
``F^N - N * F^(N-1) * G`` with ``F = sum_j a_j u_j + 2|a| h`` and
``G = 2|a| h``; it is computed as the single product ``(F - N*G) * F^(N-1)``
so only one reduction pass is needed.  Evaluating the integrated class in the
degree variable yields a univariate polynomial ``P(d)``; when its leading
coefficient is positive, the effective threshold is the smallest positive
integer beyond which ``P`` stays strictly positive, located by exact integer
evaluation below the Cauchy root bound.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from math import comb
from typing import Optional, Sequence, Union

from .errors import InadmissibleWeightsError
from .geometry import EvaluatedClass, GeometrySpec, evaluate_in_degree
from .polyring import Polynomial
from .tower import RelationSet, TowerContext, pushforward_to_base

__all__ = [
    "WeightVector",
    "is_admissible",
    "default_weights",
    "morse_class",
    "morse_polynomial",
    "degree_threshold",
    "leading_degree_coefficient",
    "symbolic_leading_form",
    "MorseReport",
    "compute_report",
]


def is_admissible(a: Sequence[int]) -> bool:
    """Nefness admissibility: a_1 >= 3a_2, ..., a_(k-2) >= 3a_(k-1), a_(k-1) >= 2a_k > 0."""
    k = len(a)
    if k == 0 or any(not isinstance(x, int) or x <= 0 for x in a):
        return False
    if k == 1:
        return True
    if a[k - 2] < 2 * a[k - 1]:
        return False
    return all(a[j] >= 3 * a[j + 1] for j in range(k - 2))


@dataclass(frozen=True)
class WeightVector:
    """An admissible tuple of level weights."""

    a: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        if not is_admissible(self.a):
            raise InadmissibleWeightsError(f"weights {self.a} violate the admissibility chain")

    @property
    def k(self) -> int:
        return len(self.a)

    @property
    def b(self) -> tuple[int, ...]:
        """Partial sums b_j = a_1 + ... + a_j (all positive for admissible a)."""
        sums = []
        acc = 0
        for x in self.a:
            acc += x
            sums.append(acc)
        return tuple(sums)

    @property
    def total(self) -> int:
        return sum(self.a)

    def __str__(self) -> str:
        return ",".join(str(x) for x in self.a)


def default_weights(k: int) -> WeightVector:
    """The geometric weight ladder (2*3^(k-2), ..., 6, 2, 1); (1) for k = 1."""
    if k < 1:
        raise ValueError("jet order k must be >= 1")
    if k == 1:
        return WeightVector((1,))
    return WeightVector(tuple(2 * 3 ** (k - j - 1) for j in range(1, k)) + (1,))


def _as_weights(weights: Union[WeightVector, Sequence[int]]) -> WeightVector:
    if isinstance(weights, WeightVector):
        return weights
    return WeightVector(tuple(weights))


def _linear_power(p: Polynomial, e: int) -> Polynomial:
    """``p**e`` by direct multinomial expansion over the terms of ``p``.

    Produces the same canonical result as binary powering; preferred for the
    few-term first Chern forms whose powers drive the pipeline, where it
    avoids squaring large intermediates.
    """
    if e == 0:
        return p.ring.one
    items = list(p._terms.items())
    if not items:
        return p.ring.zero
    Polynomial._check_capacity(p.total_degree * e)
    powers = []
    for _, coeff in items:
        row = [1]
        for _ in range(e):
            row.append(row[-1] * coeff)
        powers.append(row)
    acc: dict[int, int] = {}

    def expand(index: int, remaining: int, key: int, coeff: int) -> None:
        if index == len(items) - 1:
            k = key + items[index][0] * remaining
            c = coeff * powers[index][remaining]
            acc[k] = acc.get(k, 0) + c
            return
        key_step = items[index][0]
        for take in range(remaining + 1):
            expand(
                index + 1,
                remaining - take,
                key + key_step * take,
                coeff * comb(remaining, take) * powers[index][take],
            )

    expand(0, e, 0, 1)
    return p.ring.polynomial(acc)


def morse_class(ctx: TowerContext, weights: Union[WeightVector, Sequence[int]]) -> Polynomial:
    """The unreduced tower class ``(F - N*G) * F^(N-1)``.

    ``F = sum_j a_j u_j + 2|a| h`` twists the weighted tautological bundle to
    a nef class, ``G = 2|a| h`` is the twisting class, and ``N`` is the total
    tower dimension.
    """
    w = _as_weights(weights)
    if w.k != ctx.k:
        raise InadmissibleWeightsError(f"got {w.k} weights for a tower of order {ctx.k}")
    ring = ctx.ring
    N = ctx.total_dim
    twist = 2 * w.total
    F = twist * ring.variable(ctx.h)
    for j, aj in enumerate(w.a, start=1):
        F = F + aj * ring.variable(ctx.u(j))
    G = twist * ring.variable(ctx.h)
    return (F - N * G) * _linear_power(F, N - 1)


def morse_polynomial(
    spec: GeometrySpec,
    k: int,
    weights: Union[WeightVector, Sequence[int], None] = None,
    *,
    rels: Optional[RelationSet] = None,
) -> EvaluatedClass:
    """Full pipeline: assemble, integrate to the base, evaluate in the degree.

    The value equals evaluating ``integrate_fibers(reduce_tower(...))``; the
    integration is performed by the single-pass pushforward.
    """
    w = default_weights(k) if weights is None else _as_weights(weights)
    if rels is None:
        rels = TowerContext(spec.n, k).relations
    ctx = rels.ctx
    cls = morse_class(ctx, w)
    base = pushforward_to_base(cls, rels)
    return evaluate_in_degree(ctx, base, spec)


def _integer_root_ceiling(x: int, i: int) -> int:
    """Smallest integer whose i-th power is >= x (x >= 0), by bisection."""
    if x <= 1 or i == 1:
        return x
    hi = 1 << (-(-x.bit_length() // i) + 1)
    lo = 0
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if mid**i < x:
            lo = mid
        else:
            hi = mid
    return hi


def degree_threshold(P: EvaluatedClass) -> Optional[int]:
    """Smallest positive integer beyond which ``P`` stays strictly positive.

    Absent (None) when the leading coefficient is not positive.  Every real
    root of ``P`` is bounded above by the Cauchy bound
    ``1 + max|coeff| / leading`` and by the Fujiwara bound
    ``2 max_i (|coeff_(deg-i)| / leading)^(1/i)``; scanning the integers down
    from the smaller of the two for the largest non-positive value is exact.
    (The Cauchy bound alone is astronomically loose at dimension 5.)
    """
    lead = P.leading_coefficient
    if lead <= 0:
        return None
    rest = [abs(c) for c in P.coeffs[:-1]]
    if not rest or not any(rest):
        return 1
    cauchy = 2 + max(rest) // lead
    fujiwara = 2 * max(
        _integer_root_ceiling(abs(c) // lead + 1, len(rest) - i)
        for i, c in enumerate(P.coeffs[:-1])
        if c
    )
    for x in range(min(cauchy, fujiwara + 1), 0, -1):
        if P(x) <= 0:
            return x + 1
    return 1


def leading_degree_coefficient(
    spec: GeometrySpec,
    k: int,
    weights: Union[WeightVector, Sequence[int]],
    *,
    rels: Optional[RelationSet] = None,
) -> int:
    """Coefficient of ``d^(n+1)`` of the evaluated top self-intersection.

    Uses the bare weighted class ``sum_j a_j u_j`` (no twist, no Morse
    correction); by the nef decomposition this coefficient agrees with the
    one of the full Morse polynomial, and it is the quantity that must vanish
    for ``k < n`` and be positive for a finite threshold to exist.
    """
    w = _as_weights(weights)
    if rels is None:
        rels = TowerContext(spec.n, k).relations
    ctx = rels.ctx
    if w.k != ctx.k:
        raise InadmissibleWeightsError(f"got {w.k} weights for a tower of order {ctx.k}")
    ring = ctx.ring
    F = ring.zero
    for j, aj in enumerate(w.a, start=1):
        F = F + aj * ring.variable(ctx.u(j))
    base = pushforward_to_base(_linear_power(F, ctx.total_dim), rels)
    return evaluate_in_degree(ctx, base, spec).coefficient(spec.n + 1)


def symbolic_leading_form(spec: GeometrySpec, k: int) -> Polynomial:
    """The ``d^(n+1)`` coefficient of the self-intersection with symbolic weights.

    Returns a polynomial in the weight variables ``a_1..a_k`` alone,
    homogeneous of degree ``n + k(n-1)`` (or zero).  Exponentially more
    expensive than integer-weight interpolation; intended for small n.
    """
    ctx = TowerContext(spec.n, k, symbolic_weights=True)
    ring = ctx.ring
    F = ring.zero
    for j in range(1, k + 1):
        F = F + ring.variable(ctx.a(j)) * ring.variable(ctx.u(j))
    base = pushforward_to_base(F ** ctx.total_dim, ctx.relations)
    # evaluate by hand: the weight variables block evaluate_in_degree
    result = base
    from .geometry import _chern_coefficient_in_degree

    dvar = ring.variable(ctx.d)
    for j in range(1, ctx.n + 1):
        evaluation = ring.zero
        for i, coeff in enumerate(_chern_coefficient_in_degree(spec, j)):
            if coeff:
                evaluation = evaluation + coeff * dvar ** i
        result = result.substitute(ctx.c(j), evaluation)
    result = result.substitute(ctx.h, ring.one) * dvar
    return result.coeff_of(ctx.d, spec.n + 1)


@dataclass(frozen=True)
class MorseReport:
    """Everything one pipeline run produces."""

    n: int
    k: int
    geometry: str            # 'compact' or 'log'
    weights: tuple[int, ...]
    total_dim: int
    morse_poly: EvaluatedClass
    leading_coeff: int
    threshold: Optional[int]
    elapsed_ms: float

    def to_json_dict(self) -> dict:
        """Report schema used by the CLI and the cache.

        Polynomial coefficients and the leading coefficient are decimal
        strings: they overflow 64-bit integers from dimension 5 on.
        """
        return {
            "dim": self.n,
            "order": self.k,
            "geometry": self.geometry,
            "weights": list(self.weights),
            "total_dim": self.total_dim,
            "polynomial": [str(c) for c in self.morse_poly.coeffs],
            "leading_coeff": str(self.leading_coeff),
            "threshold": self.threshold,
            "elapsed_ms": self.elapsed_ms,
        }

    @staticmethod
    def from_json_dict(data: dict) -> "MorseReport":
        return MorseReport(
            n=data["dim"],
            k=data["order"],
            geometry=data["geometry"],
            weights=tuple(data["weights"]),
            total_dim=data["total_dim"],
            morse_poly=EvaluatedClass(tuple(int(c) for c in data["polynomial"])),
            leading_coeff=int(data["leading_coeff"]),
            threshold=data["threshold"],
            elapsed_ms=data["elapsed_ms"],
        )


def compute_report(
    spec: GeometrySpec,
    k: int,
    weights: Union[WeightVector, Sequence[int], None] = None,
    *,
    rels: Optional[RelationSet] = None,
) -> MorseReport:
    """Run the full pipeline for one configuration and time it."""
    w = default_weights(k) if weights is None else _as_weights(weights)
    start = time.perf_counter()
    P = morse_polynomial(spec, k, w, rels=rels)
    elapsed_ms = round((time.perf_counter() - start) * 1000.0, 3)
    return MorseReport(
        n=spec.n,
        k=k,
        geometry=spec.token,
        weights=w.a,
        total_dim=spec.n + k * (spec.n - 1),
        morse_poly=P,
        leading_coeff=P.leading_coefficient,
        threshold=degree_threshold(P),
        elapsed_ms=elapsed_ms,
    )
