"""Segmentation accuracy metrics and the seeded replication harness."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .detector import DetectorConfig
from .selector import segment
from .simulate import ModelSpec, generate

__all__ = [
    "hausdorff",
    "largest_segment",
    "Replication",
    "StudyReport",
    "replicate_study",
]


def largest_segment(truth, length: int) -> int:
    """Length of the longest true segment, with sentinels 0 and T."""
    edges = [0, *sorted(int(r) for r in truth), int(length)]
    return max(b - a for a, b in zip(edges, edges[1:]))


def hausdorff(truth, est, scale: int) -> float | None:
    """Scaled Hausdorff distance between two change-point sets.

    The worst distance from any point of one set to the other set, in both
    directions, divided by ``scale`` (conventionally the longest true segment
    length). Returns ``None`` when either set is empty, where the distance
    carries no information.
    """
    if scale < 1:
        raise ValueError("scale must be >= 1")
    a = np.asarray(sorted(truth), dtype=float)
    b = np.asarray(sorted(est), dtype=float)
    if a.size == 0 or b.size == 0:
        return None
    gaps = np.abs(a[:, None] - b[None, :])
    return float(max(gaps.min(axis=1).max(), gaps.min(axis=0).max())) / scale


@dataclass(frozen=True)
class Replication:
    """One seeded run of a study: what was estimated, how fast, or why not."""

    seed: int
    estimates: tuple[int, ...]
    n_error: int | None
    distance: float | None
    runtime: float
    error: str | None = None


@dataclass(frozen=True)
class StudyReport:
    """Aggregate of seeded replications of one model under one config.

    ``frequencies`` maps the estimation error ``n_estimated - n_true`` to its
    count over the replications that completed. ``mean_distance`` averages
    the scaled Hausdorff distance over replications where both the truth and
    the estimate are nonempty.
    """

    model: str
    reps: int
    base_seed: int
    config: DetectorConfig
    frequencies: dict[int, int]
    mean_distance: float | None
    mean_runtime: float
    replications: tuple[Replication, ...] = field(repr=False)

    @property
    def n_errors(self) -> int:
        return sum(1 for r in self.replications if r.error is not None)

    def frequency_buckets(self) -> dict[str, int]:
        """Counts clamped to the <=-2 / -1 / 0 / 1 / >=2 reporting buckets."""
        buckets = {"<=-2": 0, "-1": 0, "0": 0, "1": 0, ">=2": 0}
        for diff, count in self.frequencies.items():
            if diff <= -2:
                buckets["<=-2"] += count
            elif diff >= 2:
                buckets[">=2"] += count
            else:
                buckets[str(diff)] += count
        return buckets

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "model": self.model,
            "reps": self.reps,
            "base_seed": self.base_seed,
            "config": self.config.to_dict(),
            "frequencies": {str(k): v for k, v in sorted(self.frequencies.items())},
            "buckets": self.frequency_buckets(),
            "mean_distance": self.mean_distance,
            "mean_runtime_s": self.mean_runtime,
            "n_errors": self.n_errors,
            "replications": [
                {
                    "seed": r.seed,
                    "estimates": list(r.estimates),
                    "n_error": r.n_error,
                    "distance": r.distance,
                    "runtime_s": r.runtime,
                    "error": r.error,
                }
                for r in self.replications
            ],
        }

    def csv_row(self) -> dict:
        """Flat row mirroring the benchmark tables' layout."""
        buckets = self.frequency_buckets()
        return {
            "model": self.model,
            "reps": self.reps,
            "freq_le_-2": buckets["<=-2"],
            "freq_-1": buckets["-1"],
            "freq_0": buckets["0"],
            "freq_1": buckets["1"],
            "freq_ge_2": buckets[">=2"],
            "mean_d_h": "" if self.mean_distance is None else f"{self.mean_distance:.4f}",
            "mean_time_s": f"{self.mean_runtime:.4f}",
        }


def replicate_study(
    model: str,
    config: DetectorConfig | None = None,
    reps: int = 100,
    base_seed: int = 0,
    length: int | None = None,
    rate: float | None = None,
) -> StudyReport:
    """Run seeded replications of one model and aggregate the outcomes.

    Seeds run from ``base_seed`` to ``base_seed + reps - 1``; a failing
    replication is recorded with its error message rather than aborting the
    study.
    """
    if reps < 1:
        raise ValueError("reps must be >= 1")
    config = config or DetectorConfig()
    records: list[Replication] = []
    for i in range(reps):
        seed = base_seed + i
        spec = ModelSpec(model, seed, length=length, rate=rate)
        try:
            series = generate(spec)
            start = time.perf_counter()
            result = segment(series, config)
            elapsed = time.perf_counter() - start
            truth = series.truth or ()
            dist = hausdorff(truth, result.changepoints, largest_segment(truth, len(series)))
            records.append(
                Replication(
                    seed=seed,
                    estimates=result.changepoints,
                    n_error=len(result.changepoints) - len(truth),
                    distance=dist,
                    runtime=elapsed,
                )
            )
        except Exception as exc:  # recorded, not fatal to the study
            records.append(Replication(seed, (), None, None, 0.0, error=str(exc)))

    frequencies: dict[int, int] = {}
    for r in records:
        if r.n_error is not None:
            frequencies[r.n_error] = frequencies.get(r.n_error, 0) + 1
    distances = [r.distance for r in records if r.distance is not None]
    runtimes = [r.runtime for r in records if r.error is None]
    return StudyReport(
        model=model,
        reps=reps,
        base_seed=base_seed,
        config=config,
        frequencies=frequencies,
        mean_distance=float(np.mean(distances)) if distances else None,
        mean_runtime=float(np.mean(runtimes)) if runtimes else 0.0,
        replications=tuple(records),
    )
