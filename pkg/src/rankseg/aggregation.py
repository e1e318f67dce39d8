"""Mean-dominant norms and per-candidate aggregation of contrast values."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .contrast import CusumTable, EvalPoints, as_series, full_points, rescale_factors

__all__ = ["Norm", "ContrastProfile", "norm_value", "aggregate"]


class Norm(str, Enum):
    """The three mean-dominant norms used for aggregation.

    Each satisfies ``L(x) >= mean(x)`` on nonnegative vectors; all are applied
    to absolute values, so sign conventions of the contrast do not matter.
    """

    L1 = "l1"
    L2 = "l2"
    LINF = "linf"


def norm_value(kind: Norm, y) -> float:
    """Evaluate a mean-dominant norm on a vector.

    ``l1`` is the mean of absolute values, ``l2`` the root mean square and
    ``linf`` the maximum absolute value. The normalising length is the length
    of ``y`` as passed, so the same routine serves both full-length and
    reduced evaluation sets.
    """
    kind = Norm(kind)
    y = np.asarray(y, dtype=float)
    if y.size == 0:
        raise ValueError("norm of an empty vector is undefined")
    if kind is Norm.L1:
        return float(np.abs(y).mean())
    if kind is Norm.L2:
        return float(np.sqrt(np.square(y).sum() / y.size))
    return float(np.abs(y).max())


def _profile_norms(matrix: np.ndarray, kind: Norm) -> np.ndarray:
    """Row-wise :func:`norm_value`, vectorised over candidate splits."""
    if kind is Norm.L1:
        return np.abs(matrix).mean(axis=1)
    if kind is Norm.L2:
        return np.sqrt(np.square(matrix).mean(axis=1))
    return np.abs(matrix).max(axis=1)


@dataclass(frozen=True)
class ContrastProfile:
    """Aggregated contrast per candidate split of one interval.

    ``values[k]`` is the norm of the CUSUM vector at candidate
    ``b = start + k``, for ``b`` in ``[start, end)``.
    """

    start: int
    end: int
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.size != self.end - self.start:
            raise ValueError("profile length must equal end - start")
        object.__setattr__(self, "values", values)

    @property
    def candidates(self) -> np.ndarray:
        return np.arange(self.start, self.end)


def aggregate(
    series,
    s: int,
    e: int,
    kind: Norm = Norm.LINF,
    eval_points: EvalPoints | None = None,
    rescale: bool = False,
) -> ContrastProfile:
    """Aggregate CUSUM values over evaluation points for each split of [s, e].

    Parameters
    ----------
    series : Series or array_like
        The full data sequence (indicators are always taken against it).
    s, e : int
        Interval bounds, 1-based inclusive, ``1 <= s < e <= T``.
    kind : Norm
        Mean-dominant norm applied across evaluation points.
    eval_points : EvalPoints, optional
        Defaults to the full data values of the series.
    rescale : bool
        Divide each evaluation point's contrasts by the estimated indicator
        standard deviation before aggregating.

    Returns
    -------
    ContrastProfile
        Nonnegative aggregated contrast for each ``b`` in ``[s, e)``.
    """
    series = as_series(series)
    if eval_points is None:
        eval_points = full_points(series)
    table = CusumTable(series, eval_points)
    matrix = table.profile_matrix(s, e)
    if rescale:
        matrix /= rescale_factors(series, eval_points.points)
    return ContrastProfile(s, e, _profile_norms(matrix, kind))
