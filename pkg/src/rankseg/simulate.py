"""Seeded generators for the benchmark data sequences.

Every model is generated from a single ``numpy.random.default_rng`` (PCG64)
stream keyed by the seed, drawing segments left to right, so the same
(model, seed) pair reproduces bit-identical data on any platform running the
same numpy generation code. The ``*_TR`` models apply ``exp`` elementwise to
their base model drawn with the same seed.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .contrast import Series

__all__ = ["ModelSpec", "generate", "parse_model", "list_models"]

_SQRT3 = math.sqrt(3.0)


@dataclass(frozen=True)
class ModelSpec:
    """A benchmark model instance: id, seed and optional size parameters.

    ``length`` applies to the timing and no-change families; ``rate`` is the
    Poisson mean of the no-change Poisson family. Fixed-size models ignore
    both.
    """

    model: str
    seed: int
    length: int | None = None
    rate: float | None = None


def _alternating(levels, cps, length) -> np.ndarray:
    """Piecewise-constant signal over the segments defined by ``cps``."""
    edges = [0, *cps, length]
    out = np.empty(length)
    for i, (a, b) in enumerate(zip(edges, edges[1:])):
        out[a:b] = levels[i % len(levels)]
    return out


def _mean_plus_gauss(rng, means, cps, length):
    return _alternating(means, cps, length) + rng.standard_normal(length)


def _scaled_gauss(rng, sds, cps, length):
    return _alternating(sds, cps, length) * rng.standard_normal(length)


def _every(step: int, length: int) -> tuple[int, ...]:
    return tuple(int(c) for c in range(step, length, step))


def _gen_nc(rng, spec):
    return rng.standard_normal(500), ()


def _gen_m1(rng, spec):
    return _mean_plus_gauss(rng, [0.0, 1.0], [100], 200), (100,)


def _gen_v1(rng, spec):
    return _scaled_gauss(rng, [1.0, 2.0], [250], 500), (250,)


def _gen_d1(rng, spec):
    # Uniform(-3, 3) then Student-t3: same mean and variance, different shape.
    parts = [rng.uniform(-3.0, 3.0, 500), rng.standard_t(3, 500)]
    return np.concatenate(parts), (500,)


_MM_CPS = (100, 200, 300)
_MM_MEANS = (0.0, 1.0, -0.2, -1.3)


def _gen_mm_gauss(rng, spec):
    return _mean_plus_gauss(rng, _MM_MEANS, _MM_CPS, 400), _MM_CPS


def _gen_mm_student(rng, spec):
    signal = _alternating(_MM_MEANS, _MM_CPS, 400)
    return signal + rng.standard_t(3, 400), _MM_CPS


def _gen_mm_gauss2(rng, spec):
    cps = _every(80, 1600)
    return _mean_plus_gauss(rng, [0.0, 2.0], cps, 1600), cps


def _gen_mm_pois(rng, spec):
    # Poisson(1) noise added as drawn (not mean-centred); rank-based
    # detection is unaffected by the shared offset.
    signal = _alternating(_MM_MEANS, _MM_CPS, 400)
    return signal + rng.poisson(1.0, 400), _MM_CPS


def _gen_mv_gauss(rng, spec):
    sds = [1.0, 3.0, 1.2, math.sqrt(0.1)]
    return _scaled_gauss(rng, sds, [150, 350, 500], 600), (150, 350, 500)


def _gen_mv_gauss2(rng, spec):
    sds = [math.sqrt(v) for v in (10.0, 2.0, 0.3, 4.0, 20.0, 2.0)]
    cps = (200, 350, 550, 700, 900)
    return _scaled_gauss(rng, sds, cps, 1000), cps


def _gen_md1(rng, spec):
    # Three distributions sharing mean 1 and variance 1.
    parts = [
        rng.gamma(1.0, 1.0, 250),
        rng.poisson(1.0, 250).astype(float),
        rng.uniform(1.0 - _SQRT3, 1.0 + _SQRT3, 250),
    ]
    return np.concatenate(parts), (250, 500)


def _gen_md2(rng, spec):
    parts = [
        rng.standard_normal(100),
        rng.chisquare(1, 150),
        rng.standard_t(3, 100),
        rng.standard_normal(150) + 1.0,
    ]
    return np.concatenate(parts), (100, 250, 350)


def _gen_md3(rng, spec):
    parts = [
        rng.gamma(1.0, 1.0, 200),
        rng.chisquare(3, 300),
        rng.standard_normal(250) + 0.5,
        rng.standard_t(5, 250),
    ]
    return np.concatenate(parts), (200, 500, 750)


def _gen_t1(rng, spec):
    length = spec.length or 3000
    cps = _every(30, length)
    signal = _alternating([0.0, 4.0], cps, length)
    return signal + 0.5 * rng.standard_normal(length), cps


def _gen_t2(rng, spec):
    length = spec.length or 3000
    cps = _every(250, length)
    return _scaled_gauss(rng, [1.0, 2.0], cps, length), cps


def _gen_nochange_gauss(rng, spec):
    return rng.standard_normal(spec.length or 500), ()


def _gen_nochange_cauchy(rng, spec):
    return rng.standard_cauchy(spec.length or 500), ()


def _gen_nochange_pois(rng, spec):
    rate = 3.0 if spec.rate is None else float(spec.rate)
    return rng.poisson(rate, spec.length or 500).astype(float), ()


_GENERATORS = {
    "NC": _gen_nc,
    "M1": _gen_m1,
    "V1": _gen_v1,
    "D1": _gen_d1,
    "MM_GAUSS": _gen_mm_gauss,
    "MM_STUDENT_T3": _gen_mm_student,
    "MM_GAUSS2": _gen_mm_gauss2,
    "MM_POIS": _gen_mm_pois,
    "MV_GAUSS": _gen_mv_gauss,
    "MV_GAUSS2": _gen_mv_gauss2,
    "MD1": _gen_md1,
    "MD2": _gen_md2,
    "MD3": _gen_md3,
    "T1": _gen_t1,
    "T2": _gen_t2,
    "NOCHANGE_GAUSS": _gen_nochange_gauss,
    "NOCHANGE_CAUCHY": _gen_nochange_cauchy,
    "NOCHANGE_POIS": _gen_nochange_pois,
}

# exp-transformed twins share the base model's seed, draw and truth
_TRANSFORMED = {"MM_GAUSS_TR": "MM_GAUSS", "MM_POIS_TR": "MM_POIS"}


def list_models() -> tuple[str, ...]:
    """All known model ids, transformed variants included."""
    return tuple(sorted([*_GENERATORS, *_TRANSFORMED]))


def generate(spec: ModelSpec) -> Series:
    """Generate the series and ground truth for a benchmark model.

    Parameters
    ----------
    spec : ModelSpec
        Model id, seed and optional length/rate parameters.

    Returns
    -------
    Series
        Values plus the model's true change-point positions.
    """
    model = spec.model.upper()
    if model in _TRANSFORMED:
        base = generate(ModelSpec(_TRANSFORMED[model], spec.seed, spec.length, spec.rate))
        return Series(np.exp(base.values), base.truth)
    try:
        gen = _GENERATORS[model]
    except KeyError:
        raise ValueError(f"unknown model id {spec.model!r}") from None
    rng = np.random.default_rng(spec.seed)
    values, truth = gen(rng, spec)
    return Series(values, tuple(truth))


_MODEL_RE = re.compile(r"^\s*([A-Za-z0-9_]+)\s*(?:\(\s*([^)]*)\s*\))?\s*$")


def parse_model(text: str) -> tuple[str, dict]:
    """Parse a model id with optional parameters.

    Accepts bare ids (``"M1"``), a length argument (``"T1(6000)"``,
    ``"NOCHANGE_GAUSS(200)"``) and the rate-and-length form
    ``"NOCHANGE_POIS(3, 500)"``.
    """
    match = _MODEL_RE.match(text)
    if not match:
        raise ValueError(f"cannot parse model id {text!r}")
    model = match.group(1).upper()
    known = set(list_models())
    if model not in known:
        raise ValueError(f"unknown model id {model!r}; known: {', '.join(sorted(known))}")
    params: dict = {}
    if match.group(2):
        args = [a.strip() for a in match.group(2).split(",") if a.strip()]
        try:
            if model == "NOCHANGE_POIS":
                if len(args) not in (1, 2):
                    raise ValueError
                params["rate"] = float(args[0])
                if len(args) == 2:
                    params["length"] = int(args[1])
            else:
                if len(args) != 1:
                    raise ValueError
                params["length"] = int(args[0])
        except ValueError:
            raise ValueError(f"bad parameters in model id {text!r}") from None
    return model, params
