"""Shared naive oracles and helpers kept independent of the library paths."""

import math

import numpy as np
import pytest


def naive_cusum(values, s, e, b, u):
    """Direct per-term evaluation of the weighted indicator-sum difference."""
    pre = sum(1 for t in range(s, b + 1) if values[t - 1] <= u)
    post = sum(1 for t in range(b + 1, e + 1) if values[t - 1] <= u)
    n1 = b - s + 1
    n2 = e - b
    n = e - s + 1
    return math.sqrt(n2 / (n1 * n)) * pre - math.sqrt(n1 / (n2 * n)) * post


def naive_norm(kind, y):
    """Mean-dominant norms computed with plain Python arithmetic."""
    d = len(y)
    if kind == "l1":
        return sum(abs(v) for v in y) / d
    if kind == "l2":
        return math.sqrt(sum(v * v for v in y)) / math.sqrt(d)
    return max(abs(v) for v in y)


def naive_profile(values, s, e, kind, points, sd=None):
    """Per-(b, u) loop over the contrast, then the norm; no shared state."""
    out = []
    for b in range(s, e):
        row = [naive_cusum(values, s, e, b, u) for u in points]
        if sd is not None:
            row = [v / w for v, w in zip(row, sd)]
        out.append(naive_norm(kind, row))
    return np.asarray(out)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_series(rng, max_len=300, min_len=5, ties=False):
    """A random float series; with ``ties`` the values are small integers."""
    n = int(rng.integers(min_len, max_len + 1))
    if ties:
        return rng.integers(0, 6, n).astype(float)
    return rng.standard_normal(n)
