"""Deterministic search over admissible weight vectors.

Candidates are enumerated by increasing total weight and, within one total,
in ascending lexicographic order; the first ``budget`` candidates form the
search space.  The minimal admissible vector for order k is the default
geometric ladder, so the default weights are always candidate number one.
Results are ranked by (threshold, total, vector), with an absent threshold
ranking last, which makes the winner independent of evaluation order and of
any parallelism.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .geometry import GeometrySpec
from .morse import MorseReport, WeightVector, compute_report
from .tower import TowerContext

__all__ = ["enumerate_admissible", "SweepResult", "run_sweep"]


def _tuples_with_total(k: int, total: int) -> list[tuple[int, ...]]:
    """All admissible k-tuples with the given total, ascending lex order."""
    found: list[tuple[int, ...]] = []

    def descend(position: int, remaining: int, suffix: tuple[int, ...]) -> None:
        # positions are filled from a_k leftwards; a_1 absorbs the rest
        if position == 1:
            a1 = remaining
            if k == 1:
                ok = a1 >= 1
            elif k == 2:
                ok = a1 >= 2 * suffix[0]
            else:
                ok = a1 >= 3 * suffix[0]
            if ok and a1 >= 1:
                found.append((a1,) + suffix)
            return
        if position == k:
            lower = 1
        elif position == k - 1:
            lower = 2 * suffix[0]
        else:
            lower = 3 * suffix[0]
        value = lower
        while value < remaining:  # a_1 needs at least 1 left
            descend(position - 1, remaining - value, (value,) + suffix)
            value += 1

    if k == 1:
        return [(total,)] if total >= 1 else []
    descend(k, total, ())
    found.sort()
    return found


def enumerate_admissible(k: int, count: int) -> list[WeightVector]:
    """The first ``count`` admissible weight vectors in (total, lex) order."""
    if count < 1:
        raise ValueError("candidate budget must be >= 1")
    out: list[WeightVector] = []
    total = 3 ** (k - 1)  # total of the default ladder, the admissible minimum
    while len(out) < count:
        for a in _tuples_with_total(k, total):
            out.append(WeightVector(a))
            if len(out) == count:
                break
        total += 1
    return out


@dataclass(frozen=True)
class SweepResult:
    best: MorseReport
    evaluated: int
    reports: tuple[MorseReport, ...]


def _rank(report: MorseReport):
    threshold = report.threshold if report.threshold is not None else float("inf")
    return (threshold, sum(report.weights), report.weights)


def _sweep_worker(job: tuple[str, int, int, tuple[int, ...]]) -> dict:
    token, n, k, weights = job
    spec = GeometrySpec.from_token(token, n)
    return compute_report(spec, k, weights).to_json_dict()


def run_sweep(
    spec: GeometrySpec,
    k: int,
    budget: int,
    threads: int = 1,
) -> SweepResult:
    """Evaluate the first ``budget`` admissible vectors and return the best."""
    candidates = enumerate_admissible(k, budget)
    reports: list[MorseReport]
    if threads > 1:
        jobs = [(spec.token, spec.n, k, w.a) for w in candidates]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            reports = [MorseReport.from_json_dict(d) for d in pool.map(_sweep_worker, jobs)]
    else:
        rels = TowerContext(spec.n, k).relations
        reports = [compute_report(spec, k, w, rels=rels) for w in candidates]
    best = min(reports, key=_rank)
    return SweepResult(best=best, evaluated=len(reports), reports=tuple(reports))
