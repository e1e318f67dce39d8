"""Indicator transforms, ECDFs and the weighted two-sample rank CUSUM.

Everything here works on the ranks of the data only: the raw values enter
exclusively through indicators ``1{X_t <= u}``, so all derived quantities are
invariant under strictly increasing transformations of the series.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Series",
    "EvalPoints",
    "as_series",
    "ecdf",
    "cusum",
    "rescale_sd",
    "rescale_factors",
    "grid_points",
    "full_points",
    "CusumTable",
]

FULL = "full"
VALUE_GRID = "grid"


@dataclass(frozen=True)
class Series:
    """A univariate data sequence with optional ground-truth change-points.

    Positions are 1-based throughout: a change-point at ``r`` separates the
    observations ``X_1..X_r`` from ``X_{r+1}..X_T``.

    Parameters
    ----------
    values : array_like
        The observations, length ``T >= 1``.
    truth : tuple of int, optional
        Strictly increasing true change-point positions, each in ``[1, T-1]``.
    """

    values: np.ndarray
    truth: tuple[int, ...] | None = None

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1 or values.size < 1:
            raise ValueError("series must be a nonempty one-dimensional sequence")
        object.__setattr__(self, "values", values)
        if self.truth is not None:
            truth = tuple(int(r) for r in self.truth)
            T = values.size
            if any(r < 1 or r > T - 1 for r in truth):
                raise ValueError(f"truth positions must lie in [1, {T - 1}]")
            if any(b <= a for a, b in zip(truth, truth[1:])):
                raise ValueError("truth positions must be strictly increasing")
            object.__setattr__(self, "truth", truth)

    def __len__(self) -> int:
        return int(self.values.size)


def as_series(data) -> Series:
    """Coerce an array-like (or pass through a ``Series``) to a ``Series``."""
    if isinstance(data, Series):
        return data
    return Series(np.asarray(data, dtype=float))


@dataclass(frozen=True)
class EvalPoints:
    """Points at which the indicator transforms are evaluated.

    ``mode`` is ``"full"`` when the points are exactly the data values of the
    series (rank-exact, Q = T) and ``"grid"`` for the equally spaced value
    grid used to cut computation on long series.
    """

    points: np.ndarray
    mode: str

    def __post_init__(self):
        points = np.asarray(self.points, dtype=float)
        if points.ndim != 1 or points.size < 1:
            raise ValueError("evaluation points must be a nonempty 1-d sequence")
        if np.any(np.diff(points) < 0):
            raise ValueError("evaluation points must be sorted ascending")
        if self.mode not in (FULL, VALUE_GRID):
            raise ValueError(f"unknown evaluation mode {self.mode!r}")
        object.__setattr__(self, "points", points)

    def __len__(self) -> int:
        return int(self.points.size)


def full_points(series: Series) -> EvalPoints:
    """All data values of the series, sorted (the exact, rank-based mode)."""
    series = as_series(series)
    return EvalPoints(np.sort(series.values), FULL)


def grid_points(series: Series, q: int) -> EvalPoints:
    """Equally spaced points spanning the data range.

    Returns the ``q`` interior points ``min + j * range / (q + 1)`` for
    ``j = 1..q``. A degenerate (constant) series yields the single point
    ``min`` so that downstream contrasts are well defined and identically
    zero.
    """
    series = as_series(series)
    if q < 1:
        raise ValueError("grid size must be >= 1")
    lo = float(series.values.min())
    hi = float(series.values.max())
    if hi == lo:
        return EvalPoints(np.array([lo]), VALUE_GRID)
    j = np.arange(1, q + 1, dtype=float)
    return EvalPoints(lo + j * (hi - lo) / (q + 1), VALUE_GRID)


def ecdf(sample, u: float) -> float:
    """Empirical CDF of ``sample`` at ``u``: the fraction of values <= u."""
    sample = np.asarray(sample, dtype=float)
    if sample.size == 0:
        raise ValueError("ecdf of an empty sample is undefined")
    return float(np.count_nonzero(sample <= u)) / sample.size


def cusum(series, s: int, e: int, b: int, u: float) -> float:
    """Weighted difference of pre-``b`` and post-``b`` indicator sums at ``u``.

    For the interval ``[s, e]`` (1-based, inclusive) and a split candidate
    ``b`` with ``s <= b < e``::

        sqrt((e-b) / ((b-s+1)(e-s+1))) * sum_{t=s..b}   1{X_t <= u}
      - sqrt((b-s+1) / ((e-b)(e-s+1))) * sum_{t=b+1..e} 1{X_t <= u}

    which is a weighted difference of the two segment ECDFs at ``u``.
    """
    series = as_series(series)
    T = len(series)
    if not (1 <= s <= b < e <= T):
        raise ValueError(f"need 1 <= s <= b < e <= T, got s={s}, b={b}, e={e}, T={T}")
    ind = series.values <= u
    n1 = b - s + 1
    n2 = e - b
    n = e - s + 1
    pre = float(np.count_nonzero(ind[s - 1 : b]))
    post = float(np.count_nonzero(ind[b:e]))
    # factored as weight * ECDF difference so equal segment ECDFs cancel
    # exactly (constant indicator vectors give a hard zero)
    return float(np.sqrt(n1 * n2 / n) * (pre / n1 - post / n2))


def rescale_sd(series, u: float) -> float:
    """Estimated standard deviation of the indicator sequence at ``u``.

    With ``p`` the fraction of values <= u, returns ``sqrt(p * (1 - p))``
    clamped to 0.3 whenever ``p < 0.1`` or ``p > 0.9``; dividing contrasts by
    an unclamped near-zero deviation would inflate them spuriously.
    """
    p = ecdf(as_series(series).values, u)
    if p < 0.1 or p > 0.9:
        return 0.3
    return float(np.sqrt(p * (1.0 - p)))


def rescale_factors(series, points) -> np.ndarray:
    """Vectorised :func:`rescale_sd` over an array of evaluation points."""
    series = as_series(series)
    xs = np.sort(series.values)
    points = np.asarray(points, dtype=float)
    p = np.searchsorted(xs, points, side="right") / xs.size
    sd = np.sqrt(p * (1.0 - p))
    return np.where((p < 0.1) | (p > 0.9), 0.3, sd)


class CusumTable:
    """Prefix indicator counts for one series against a fixed evaluation set.

    ``prefix[b, q]`` holds ``#{t <= b : X_t <= u_q}`` for ``b = 0..T``
    (1-based time), so any interval CUSUM row is two prefix lookups and a full
    profile over ``[s, e)`` costs O((e - s) * Q) after the one-off
    O(T * Q) build.
    """

    _BLOCK = 512  # columns per cumsum pass, bounds the boolean scratch

    def __init__(self, series, eval_points: EvalPoints):
        series = as_series(series)
        x = series.values
        u = eval_points.points
        T, Q = x.size, u.size
        prefix = np.zeros((T + 1, Q), dtype=np.int32)
        for q0 in range(0, Q, self._BLOCK):
            cols = slice(q0, min(q0 + self._BLOCK, Q))
            ind = x[:, None] <= u[None, cols]
            np.cumsum(ind, axis=0, dtype=np.int32, out=prefix[1:, cols])
        self.length = T
        self.prefix = prefix

    def _check(self, s: int, e: int) -> None:
        if not (1 <= s < e <= self.length):
            raise ValueError(
                f"need 1 <= s < e <= T, got s={s}, e={e}, T={self.length}"
            )

    def profile_matrix(self, s: int, e: int) -> np.ndarray:
        """CUSUM values for every candidate ``b`` in ``[s, e)``.

        Returns a float array of shape ``(e - s, Q)``; row ``k`` is the
        contrast at ``b = s + k`` across all evaluation points.
        """
        self._check(s, e)
        base = self.prefix[s - 1]
        counts = self.prefix[s:e] - base
        total = self.prefix[e] - base
        n = float(e - s + 1)
        n1 = np.arange(1.0, e - s + 1.0)
        n2 = n - n1
        weight = np.sqrt(n1 * n2 / n)
        # weight * ECDF difference: equal segment ECDFs cancel to a hard zero
        return weight[:, None] * (counts / n1[:, None] - (total - counts) / n2[:, None])

    def row(self, s: int, e: int, b: int) -> np.ndarray:
        """Single CUSUM vector at split ``b`` within ``[s, e]``."""
        self._check(s, e)
        if not (s <= b < e):
            raise ValueError(f"need s <= b < e, got s={s}, b={b}, e={e}")
        pre = self.prefix[b] - self.prefix[s - 1]
        post = self.prefix[e] - self.prefix[b]
        n1 = float(b - s + 1)
        n2 = float(e - b)
        n = float(e - s + 1)
        return np.sqrt(n1 * n2 / n) * (pre / n1 - post / n2)
