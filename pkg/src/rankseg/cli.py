"""Command-line interface: detect, simulate, study and evaluate subcommands.

Input series are CSV files with either one value per line or ``time,value``
rows; all reported positions are 1-based. Results are emitted as versioned
JSON so downstream goldens stay valid.

Exit codes: 0 on success (regardless of how many change-points were found),
1 for unreadable or non-numeric input and runtime failures, 2 for bad command
lines (argparse), 3 for an empty input series.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import dataclass

import numpy as np

from .detector import DEFAULT_GRID_SIZE, DetectorConfig, Norm, RestartRule, StopRule
from .evaluation import hausdorff, largest_segment, replicate_study
from .selector import segment
from .simulate import ModelSpec, generate, list_models, parse_model

__all__ = ["main", "RunOutput"]

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_EMPTY = 3


class CliError(Exception):
    """A user-facing failure with its process exit code."""

    def __init__(self, message: str, code: int = EXIT_ERROR):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class RunOutput:
    """JSON-serialisable result of one ``detect`` invocation."""

    length: int
    changepoints: tuple[int, ...]
    scores: tuple[float, ...]
    config: dict
    runtime_ms: float
    solution_path: tuple[int, ...] | None = None
    removal_scores: tuple[float, ...] | None = None
    bic_chosen_j: int | None = None
    bic_scores: tuple[float, ...] | None = None
    bic_penalty: float | None = None

    def to_dict(self) -> dict:
        bic = None
        if self.bic_chosen_j is not None:
            bic = {
                "chosen_j": self.bic_chosen_j,
                "scores": list(self.bic_scores or ()),
                "penalty": self.bic_penalty,
            }
        return {
            "schema": SCHEMA_VERSION,
            "length": self.length,
            "changepoints": list(self.changepoints),
            "scores": list(self.scores),
            "solution_path": None if self.solution_path is None else list(self.solution_path),
            "removal_scores": None if self.removal_scores is None else list(self.removal_scores),
            "bic": bic,
            "config": self.config,
            "runtime_ms": self.runtime_ms,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RunOutput":
        if data.get("schema") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema {data.get('schema')!r}")
        bic = data.get("bic")
        return cls(
            length=data["length"],
            changepoints=tuple(data["changepoints"]),
            scores=tuple(data["scores"]),
            config=data["config"],
            runtime_ms=data["runtime_ms"],
            solution_path=None
            if data.get("solution_path") is None
            else tuple(data["solution_path"]),
            removal_scores=None
            if data.get("removal_scores") is None
            else tuple(data["removal_scores"]),
            bic_chosen_j=None if bic is None else bic["chosen_j"],
            bic_scores=None if bic is None else tuple(bic["scores"]),
            bic_penalty=None if bic is None else bic["penalty"],
        )


def _read_series(path: str) -> np.ndarray:
    """Parse a one-column or time,value CSV into a float array."""
    try:
        with open(path, newline="") as handle:
            rows = [row for row in csv.reader(handle) if row and any(f.strip() for f in row)]
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise CliError(f"{path}: empty series", EXIT_EMPTY)
    values = []
    for lineno, row in enumerate(rows, start=1):
        fields = [f.strip() for f in row]
        cell = fields[-1] if len(fields) >= 2 else fields[0]
        try:
            values.append(float(cell))
        except ValueError:
            raise CliError(f"{path}:{lineno}: non-numeric value {cell!r}") from None
    return np.asarray(values, dtype=float)


def _config_from_args(args: argparse.Namespace) -> DetectorConfig:
    if args.grid == "full":
        eval_mode, grid_size = "full", DEFAULT_GRID_SIZE
    elif args.grid == "auto":
        eval_mode, grid_size = "auto", DEFAULT_GRID_SIZE
    else:
        try:
            grid_size = int(args.grid)
        except ValueError:
            raise CliError(f"--grid expects 'full', 'auto' or an integer, got {args.grid!r}") from None
        eval_mode = "grid"

    if args.split == "auto":
        split: int | str | None = "auto"
    elif args.split == "off":
        split = None
    else:
        try:
            split = int(args.split)
        except ValueError:
            raise CliError(f"--split expects 'auto', 'off' or an integer, got {args.split!r}") from None

    rescale = {"auto": None, "on": True, "off": False}[args.rescale]
    try:
        return DetectorConfig(
            expansion_step=args.expansion_step,
            norm=Norm(args.norm),
            threshold_constant=args.const,
            stop=StopRule(args.stop),
            eval_mode=eval_mode,
            grid_size=grid_size,
            rescale=rescale,
            restart=RestartRule(args.restart),
            split=split,
        )
    except ValueError as exc:
        raise CliError(str(exc)) from exc


def _write_json(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2)
    if out:
        with open(out, "w") as handle:
            handle.write(text + "\n")
    else:
        print(text)


def _cmd_detect(args: argparse.Namespace) -> int:
    values = _read_series(args.input)
    if values.size < 2:
        raise CliError(f"{args.input}: need at least 2 observations", EXIT_EMPTY)
    config = _config_from_args(args)
    start = time.perf_counter()
    try:
        result = segment(values, config)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    output = RunOutput(
        length=int(values.size),
        changepoints=result.changepoints,
        scores=result.scores,
        config=config.to_dict(),
        runtime_ms=elapsed_ms,
        solution_path=None if result.path is None else result.path.ordered,
        removal_scores=None if result.path is None else result.path.removal_scores,
        bic_chosen_j=None if result.bic is None else result.bic.chosen_j,
        bic_scores=None if result.bic is None else result.bic.scores,
        bic_penalty=None if result.bic is None else result.bic.penalty,
    )
    _write_json(output.to_dict(), args.out)
    return EXIT_OK


def _model_spec(args: argparse.Namespace, seed: int) -> ModelSpec:
    try:
        model, params = parse_model(args.model)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    if getattr(args, "length", None) is not None:
        params["length"] = args.length
    if getattr(args, "rate", None) is not None:
        params["rate"] = args.rate
    return ModelSpec(model, seed, params.get("length"), params.get("rate"))


def _cmd_simulate(args: argparse.Namespace) -> int:
    spec = _model_spec(args, args.seed)
    try:
        series = generate(spec)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    csv_path = f"{args.out}.csv"
    truth_path = f"{args.out}.truth.json"
    with open(csv_path, "w") as handle:
        for value in series.values:
            handle.write(f"{float(value)!r}\n")
    _write_json(
        {
            "schema": SCHEMA_VERSION,
            "model": spec.model,
            "seed": spec.seed,
            "length": len(series),
            "changepoints": list(series.truth or ()),
        },
        truth_path,
    )
    print(f"wrote {csv_path} and {truth_path}")
    return EXIT_OK


def _cmd_study(args: argparse.Namespace) -> int:
    spec = _model_spec(args, args.seed)
    config = _config_from_args(args)
    report = replicate_study(
        spec.model,
        config,
        reps=args.reps,
        base_seed=args.seed,
        length=spec.length,
        rate=spec.rate,
    )
    _write_json(report.to_dict(), args.out)
    if args.csv:
        row = report.csv_row()
        with open(args.csv, "w", newline="") as handle:
            writer = csv.DictWriter(handle, fieldnames=list(row))
            writer.writeheader()
            writer.writerow(row)
    return EXIT_OK


def _read_changepoints(path: str) -> list[int]:
    try:
        with open(path) as handle:
            data = json.load(handle)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}: invalid JSON: {exc}") from exc
    if isinstance(data, dict):
        data = data.get("changepoints")
    if not isinstance(data, list) or not all(isinstance(v, int) for v in data):
        raise CliError(f"{path}: expected a list of integers or a 'changepoints' key")
    return data


def _cmd_evaluate(args: argparse.Namespace) -> int:
    truth = _read_changepoints(args.truth)
    est = _read_changepoints(args.est)
    distance = hausdorff(truth, est, largest_segment(truth, args.length))
    print("NA" if distance is None else f"{distance:.10g}")
    return EXIT_OK


def _add_detector_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--norm", choices=[n.value for n in Norm], default="linf")
    parser.add_argument(
        "--lambda", dest="expansion_step", type=int, default=15, metavar="N",
        help="interval expansion step (default 15)",
    )
    parser.add_argument(
        "--const", type=float, default=None, metavar="C",
        help="threshold constant (default: calibrated per norm)",
    )
    parser.add_argument("--stop", choices=[s.value for s in StopRule], default="bic")
    parser.add_argument(
        "--grid", default="auto", metavar="Q|full",
        help="evaluation points: 'full', 'auto' or a grid size (default auto)",
    )
    parser.add_argument("--rescale", choices=["on", "off", "auto"], default="auto")
    parser.add_argument(
        "--restart", choices=[r.value for r in RestartRule], default="interval-end"
    )
    parser.add_argument(
        "--split", default="auto", metavar="auto|off|N",
        help="window length for splitting long series (default auto)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rankseg",
        description="Rank-based multiple change-point detection for univariate series.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_detect = sub.add_parser("detect", help="detect change-points in a CSV series")
    p_detect.add_argument("input", help="CSV file: one value per line or time,value rows")
    _add_detector_flags(p_detect)
    p_detect.add_argument("--out", default=None, help="write JSON here instead of stdout")
    p_detect.set_defaults(func=_cmd_detect)

    p_sim = sub.add_parser("simulate", help="generate a benchmark series")
    p_sim.add_argument(
        "--model", required=True,
        help=f"model id, e.g. {', '.join(list_models()[:4])}, ... (parameters as T1(6000))",
    )
    p_sim.add_argument("--seed", type=int, required=True)
    p_sim.add_argument("--length", type=int, default=None)
    p_sim.add_argument("--rate", type=float, default=None)
    p_sim.add_argument("--out", required=True, help="output prefix for .csv and .truth.json")
    p_sim.set_defaults(func=_cmd_simulate)

    p_study = sub.add_parser("study", help="run seeded replications of one model")
    p_study.add_argument("--model", required=True)
    p_study.add_argument("--reps", type=int, default=100)
    p_study.add_argument("--seed", type=int, default=0)
    p_study.add_argument("--length", type=int, default=None)
    p_study.add_argument("--rate", type=float, default=None)
    _add_detector_flags(p_study)
    p_study.add_argument("--out", default=None, help="write the JSON report here")
    p_study.add_argument("--csv", default=None, help="also write a one-row CSV summary")
    p_study.set_defaults(func=_cmd_study)

    p_eval = sub.add_parser("evaluate", help="scaled Hausdorff distance between two sets")
    p_eval.add_argument("--truth", required=True, help="JSON with true change-points")
    p_eval.add_argument("--est", required=True, help="JSON with estimated change-points")
    p_eval.add_argument("--T", dest="length", type=int, required=True, help="series length")
    p_eval.set_defaults(func=_cmd_evaluate)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"rankseg: error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
