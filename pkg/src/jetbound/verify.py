"""Self-verification suites restating the structural facts the engine relies on.

Each check recomputes a fact with the engine and compares against the value
forced by the theory: the closed form of the first lifted Chern class, the
vanishing of the top degree coefficient for low jet orders (both for bare
exponent tuples and against powers of the first Chern class), and the unit
top coefficient of the balanced intersection at order n.  The CLI ``verify``
command prints one line per check; the test suite asserts them all.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from .geometry import GeometrySpec, compact_hypersurface, evaluate_in_degree
from .morse import WeightVector, is_admissible, leading_degree_coefficient
from .tower import TowerContext, intersect

__all__ = [
    "CheckResult",
    "check_first_chern_closed_form",
    "check_truncation",
    "check_vanishing_exponent_tuples",
    "check_vanishing_against_first_chern",
    "check_balanced_intersection_unit",
    "check_low_order_leading_vanishes",
    "run_all",
    "interpolate_leading_form",
]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def _exponent_tuples(k: int, total: int) -> Iterable[tuple[int, ...]]:
    """All k-tuples of non-negative integers with the given sum."""
    if k == 1:
        yield (total,)
        return
    for cuts in combinations_with_replacement(range(total + 1), k - 1):
        bounds = (0,) + cuts + (total,)
        yield tuple(bounds[i + 1] - bounds[i] for i in range(k))


def check_first_chern_closed_form(max_n: int = 5, max_k: int = 5) -> CheckResult:
    """Recursively built first classes equal c1 + (r-1)(u_1 + ... + u_j)."""
    for n in range(2, max_n + 1):
        for k in range(1, max_k + 1):
            ctx = TowerContext(n, k)
            rels = ctx.relations
            ring = ctx.ring
            for j in range(0, k):
                expected = ring.variable(ctx.c(1))
                for s in range(1, j + 1):
                    expected = expected + (n - 1) * ring.variable(ctx.u(s))
                if rels.lifted_chern(j, 1) != expected:
                    return CheckResult(
                        "first-chern-closed-form",
                        False,
                        f"mismatch at n={n}, k={k}, level {j}",
                    )
    return CheckResult("first-chern-closed-form", True)


def check_truncation(max_n: int = 5, max_k: int = 5) -> CheckResult:
    """Lifted classes above the bundle rank are identically zero."""
    for n in range(2, max_n + 1):
        ctx = TowerContext(n, max_k)
        rels = ctx.relations
        for j in range(0, max_k):
            for l in range(n + 1, n + 4):
                if rels.lifted_chern(j, l):
                    return CheckResult(
                        "rank-truncation", False, f"nonzero class {l} at n={n}, level {j}"
                    )
    return CheckResult("rank-truncation", True)


def check_vanishing_exponent_tuples(n: int) -> CheckResult:
    """For k < n, every pure exponent tuple has zero top degree coefficient."""
    spec = compact_hypersurface(n)
    for k in range(1, n):
        ctx = TowerContext(n, k)
        total = ctx.total_dim
        for exps in _exponent_tuples(k, total):
            cls = intersect(ctx, exps)
            value = evaluate_in_degree(ctx, cls, spec).coefficient(n + 1)
            if value != 0:
                return CheckResult(
                    f"low-order-vanishing-n{n}",
                    False,
                    f"k={k}, exponents {exps}: coefficient {value}",
                )
    return CheckResult(f"low-order-vanishing-n{n}", True)


def check_vanishing_against_first_chern(n: int) -> CheckResult:
    """Tuples of total (n-i-1)n + 1 against c1^i also have zero top coefficient."""
    spec = compact_hypersurface(n)
    for i in range(1, n - 1):
        k = n - i - 1
        if k < 1:
            continue
        ctx = TowerContext(n, k)
        extra = ctx.ring.variable(ctx.c(1)) ** i
        total = ctx.total_dim - i
        for exps in _exponent_tuples(k, total):
            cls = intersect(ctx, exps, extra)
            value = evaluate_in_degree(ctx, cls, spec).coefficient(n + 1)
            if value != 0:
                return CheckResult(
                    f"first-chern-vanishing-n{n}",
                    False,
                    f"i={i}, exponents {exps}: coefficient {value}",
                )
    return CheckResult(f"first-chern-vanishing-n{n}", True)


def check_balanced_intersection_unit(n: int) -> CheckResult:
    """The evaluated u_1^n ... u_n^n intersection has top coefficient exactly 1."""
    spec = compact_hypersurface(n)
    ctx = TowerContext(n, n)
    cls = intersect(ctx, (n,) * n)
    value = evaluate_in_degree(ctx, cls, spec).coefficient(n + 1)
    if value != 1:
        return CheckResult(f"balanced-unit-n{n}", False, f"coefficient {value}")
    return CheckResult(f"balanced-unit-n{n}", True)


def check_low_order_leading_vanishes(n: int) -> CheckResult:
    """leading_degree_coefficient is zero for k < n over sample small weights."""
    samples_by_k = {
        1: [(1,), (2,), (9,)],
        2: [(2, 1), (4, 2), (9, 3), (6, 3), (9, 4)],
    }
    spec = compact_hypersurface(n)
    for k in range(1, n):
        for a in samples_by_k.get(k, []):
            if not is_admissible(a):
                continue
            value = leading_degree_coefficient(spec, k, a)
            if value != 0:
                return CheckResult(
                    f"low-order-leading-n{n}", False, f"k={k}, weights {a}: {value}"
                )
    return CheckResult(f"low-order-leading-n{n}", True)


def run_all(max_n: int = 3) -> list[CheckResult]:
    """The full verification matrix used by the CLI and the test suite."""
    results = [
        check_first_chern_closed_form(),
        check_truncation(),
    ]
    for n in range(2, max_n + 1):
        results.append(check_vanishing_exponent_tuples(n))
        if n >= 3:
            results.append(check_vanishing_against_first_chern(n))
        results.append(check_balanced_intersection_unit(n))
        results.append(check_low_order_leading_vanishes(n))
    return results


def interpolate_leading_form(
    spec: GeometrySpec,
    k: int,
    samples: Sequence[Sequence[int]],
) -> dict[tuple[int, ...], int]:
    """Fit the top-coefficient function of the weights from integer samples.

    The function is homogeneous of degree N = n + k(n-1) in the k weights (or
    zero), so it is determined by finitely many monomial coefficients.  Those
    are recovered exactly by solving the linear system over the rationals and
    verified against every sample; the solution must be integral.
    """
    n = spec.n
    N = n + k * (n - 1)
    monomials = sorted(_exponent_tuples(k, N), reverse=True)
    if len(samples) < len(monomials):
        raise ValueError(f"need at least {len(monomials)} samples, got {len(samples)}")
    rows = []
    values = []
    for a in samples:
        w = WeightVector(tuple(a))
        row = [
            Fraction(_power_product(w.a, exps))
            for exps in monomials
        ]
        rows.append(row)
        values.append(Fraction(leading_degree_coefficient(spec, k, w)))
    solution = _solve_exact(rows, values)
    out = {}
    for exps, coeff in zip(monomials, solution):
        if coeff.denominator != 1:
            raise ArithmeticError(f"non-integral interpolated coefficient {coeff}")
        if coeff:
            out[exps] = int(coeff)
    return out


def _power_product(a: Sequence[int], exps: Sequence[int]) -> int:
    value = 1
    for base, e in zip(a, exps):
        value *= base ** e
    return value


def _solve_exact(rows: list[list[Fraction]], values: list[Fraction]) -> list[Fraction]:
    """Solve an overdetermined exact linear system; verify every equation."""
    m = len(rows[0])
    augmented = [row + [val] for row, val in zip(rows, values)]
    pivots = []
    row_at = 0
    for col in range(m):
        pivot = next(
            (i for i in range(row_at, len(augmented)) if augmented[i][col] != 0), None
        )
        if pivot is None:
            raise ValueError("sample set does not determine the form (rank deficiency)")
        augmented[row_at], augmented[pivot] = augmented[pivot], augmented[row_at]
        factor = augmented[row_at][col]
        augmented[row_at] = [x / factor for x in augmented[row_at]]
        for i in range(len(augmented)):
            if i != row_at and augmented[i][col]:
                scale = augmented[i][col]
                augmented[i] = [
                    x - scale * y for x, y in zip(augmented[i], augmented[row_at])
                ]
        pivots.append(col)
        row_at += 1
    for i in range(row_at, len(augmented)):
        if augmented[i][m] != 0:
            raise ValueError("inconsistent sample system (function is not the assumed form)")
    solution = [Fraction(0)] * m
    for idx, col in enumerate(pivots):
        solution[col] = augmented[idx][m]
    # verify every original equation
    for row, val in zip(rows, values):
        if sum(c * s for c, s in zip(row, solution)) != val:
            raise ValueError("interpolation failed verification")
    return solution
