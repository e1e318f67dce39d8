"""Solution-path ordering of candidates and information-criterion selection.

The threshold rule alone is sensitive to the choice of constant. The pipeline
here first over-detects with a deliberately lowered threshold, then orders the
candidates by importance (iteratively discarding the weakest triplet
contrast), and finally picks the prefix of that ordering that minimises a
Schwarz-type criterion built on an integrated profile log-likelihood of the
segment ECDFs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.special import xlogy

from .aggregation import Norm, norm_value
from .contrast import CusumTable, EvalPoints, as_series, full_points, rescale_factors
from .detector import DetectorConfig, Segmentation, StopRule, detect

__all__ = [
    "SolutionPath",
    "BicResult",
    "overestimate",
    "solution_path",
    "st_likelihood",
    "bic_penalty",
    "bic_select",
    "detect_bic",
    "segment",
]

OVERESTIMATE_FACTOR = 0.8  # threshold constant used for the candidate sweep


@dataclass(frozen=True)
class SolutionPath:
    """Candidate change-points ordered most-important-first.

    ``ordered[0]`` survived longest in the iterative removal;
    ``removal_scores[k]`` is the triplet norm value at which ``ordered[k]``
    was pruned.
    """

    ordered: tuple[int, ...]
    removal_scores: tuple[float, ...]

    def __post_init__(self):
        if len(self.ordered) != len(self.removal_scores):
            raise ValueError("ordered and removal_scores must align")
        if len(set(self.ordered)) != len(self.ordered):
            raise ValueError("solution path entries must be distinct")

    def __len__(self) -> int:
        return len(self.ordered)

    def model(self, j: int) -> tuple[int, ...]:
        """The ``j`` most important candidates, sorted ascending."""
        return tuple(sorted(self.ordered[:j]))


@dataclass(frozen=True)
class BicResult:
    """Outcome of minimising the information criterion along a path."""

    chosen_j: int
    scores: tuple[float, ...]
    penalty: float
    changepoints: tuple[int, ...]


def _overestimate_config(config: DetectorConfig) -> DetectorConfig:
    """The relaxed scan: 80% of the constant, always on raw contrasts."""
    return replace(
        config,
        threshold_constant=OVERESTIMATE_FACTOR * config.resolved_constant(),
        rescale=False,
    )


def overestimate(series, config: DetectorConfig | None = None) -> tuple[int, ...]:
    """Candidate change-points from a sweep at 80% of the threshold constant."""
    config = config or DetectorConfig()
    return detect(series, _overestimate_config(config)).changepoints


def solution_path(
    series,
    candidates,
    kind: Norm = Norm.LINF,
    eval_points: EvalPoints | None = None,
    rescale: bool = False,
) -> SolutionPath:
    """Order candidates by importance via iterative weakest-triplet removal.

    Each remaining candidate is scored by the norm of its CUSUM vector over
    the interval spanned by its two current neighbours (with sentinels 0 and
    T); the lowest-scoring candidate is removed and only its former
    neighbours are re-scored, which leaves every other triplet untouched.
    The returned ordering lists the last-removed candidate first.
    """
    series = as_series(series)
    T = len(series)
    work = [int(c) for c in candidates]
    if any(b <= a for a, b in zip(work, work[1:])):
        raise ValueError("candidates must be sorted strictly increasing")
    if any(c < 1 or c > T - 1 for c in work):
        raise ValueError(f"candidates must lie in [1, {T - 1}]")
    if not work:
        return SolutionPath((), ())

    if eval_points is None:
        eval_points = full_points(series)
    table = CusumTable(series, eval_points)
    sd = rescale_factors(series, eval_points.points) if rescale else None

    def triplet_score(prev: int, cur: int, nxt: int) -> float:
        row = table.row(prev + 1, nxt, cur)
        if sd is not None:
            row = row / sd
        return norm_value(kind, row)

    def rescore(idx: int) -> float:
        prev = work[idx - 1] if idx > 0 else 0
        nxt = work[idx + 1] if idx + 1 < len(work) else T
        return triplet_score(prev, work[idx], nxt)

    scores = [rescore(i) for i in range(len(work))]
    removed: list[int] = []
    removed_scores: list[float] = []
    while work:
        m = int(np.argmin(scores))  # leftmost on ties
        removed.append(work.pop(m))
        removed_scores.append(scores.pop(m))
        for idx in (m - 1, m):
            if 0 <= idx < len(work):
                scores[idx] = rescore(idx)

    return SolutionPath(tuple(reversed(removed)), tuple(reversed(removed_scores)))


def st_likelihood(series, breakpoints=()) -> float:
    """Integrated profile log-likelihood of a candidate segmentation.

    For breakpoints ``b_1 < .. < b_j`` (sentinels ``b_0 = 0``, ``b_{j+1} = T``)
    and ``F_i`` the ECDF of segment ``(b_i, b_{i+1}]``::

        T * sum_i sum_{l=2..T-1} (b_{i+1} - b_i) / (l (T - l))
              * [F_i(x_(l)) log F_i(x_(l)) + (1 - F_i(x_(l))) log(1 - F_i(x_(l)))]

    evaluated at the order statistics ``x_(l)`` of the full series, with the
    convention ``0 log 0 = 0``. Always finite and <= 0; refining a
    segmentation never decreases it.
    """
    series = as_series(series)
    x = series.values
    T = x.size
    bpts = [int(b) for b in breakpoints]
    if any(b <= a for a, b in zip(bpts, bpts[1:])):
        raise ValueError("breakpoints must be sorted strictly increasing")
    if any(b < 1 or b > T - 1 for b in bpts):
        raise ValueError(f"breakpoints must lie in [1, {T - 1}]")
    if T <= 2:
        return 0.0

    xs = np.sort(x)
    order_stats = xs[1 : T - 1]  # x_(l) for l = 2..T-1
    l = np.arange(2.0, T)
    weights = 1.0 / (l * (T - l))

    total = 0.0
    edges = [0, *bpts, T]
    for a, b in zip(edges, edges[1:]):
        seg = np.sort(x[a:b])
        f = np.searchsorted(seg, order_stats, side="right") / (b - a)
        entropy = xlogy(f, f) + xlogy(1.0 - f, 1.0 - f)
        total += (b - a) * float(weights @ entropy)
    return T * total


def bic_penalty(length: int) -> float:
    """Per-change-point penalty ``0.5 * log(T) ** 2.1`` (natural log)."""
    return 0.5 * math.log(length) ** 2.1


def bic_select(series, path: SolutionPath) -> BicResult:
    """Pick the prefix of the solution path minimising the criterion.

    Evaluates ``-st_likelihood + j * penalty`` for every ``j = 0..J`` and
    returns the smallest minimiser.
    """
    series = as_series(series)
    penalty = bic_penalty(len(series))
    scores = []
    for j in range(len(path) + 1):
        scores.append(-st_likelihood(series, path.model(j)) + j * penalty)
    chosen = int(np.argmin(scores))
    return BicResult(chosen, tuple(scores), penalty, path.model(chosen))


def detect_bic(series, config: DetectorConfig | None = None) -> Segmentation:
    """Full pipeline: overestimate, order by importance, select by criterion."""
    series = as_series(series)
    config = config or DetectorConfig()
    over = detect(series, _overestimate_config(config))
    path = solution_path(
        series,
        over.changepoints,
        kind=config.norm,
        eval_points=config.eval_points_for(series),
        rescale=config.path_rescale(),
    )
    choice = bic_select(series, path)
    score_of = dict(zip(path.ordered, path.removal_scores))
    return Segmentation(
        changepoints=choice.changepoints,
        scores=tuple(score_of[c] for c in choice.changepoints),
        config=config,
        length=len(series),
        intervals_evaluated=over.intervals_evaluated,
        path=path,
        bic=choice,
    )


def segment(series, config: DetectorConfig | None = None) -> Segmentation:
    """Dispatch to :func:`detect` or :func:`detect_bic` per ``config.stop``."""
    config = config or DetectorConfig()
    if config.stop is StopRule.THRESHOLD:
        return detect(series, config)
    return detect_bic(series, config)
