import json

import numpy as np
import pytest

from rankseg.cli import RunOutput, main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_series(path, values, two_column=False):
    with open(path, "w") as handle:
        for i, v in enumerate(values, start=1):
            handle.write(f"{i},{v}\n" if two_column else f"{v}\n")


class TestSimulate:
    def test_m1_writes_csv_and_truth(self, tmp_path, capsys):
        prefix = tmp_path / "m1"
        code, out, _ = run(capsys, "simulate", "--model", "M1", "--seed", "1",
                           "--out", str(prefix))
        assert code == 0
        lines = (tmp_path / "m1.csv").read_text().strip().splitlines()
        assert len(lines) == 200
        float(lines[0])  # numeric
        truth = json.loads((tmp_path / "m1.truth.json").read_text())
        assert truth["changepoints"] == [100]
        assert truth["length"] == 200
        assert truth["seed"] == 1

    def test_parameterised_model_id(self, tmp_path, capsys):
        prefix = tmp_path / "g"
        code, _, _ = run(capsys, "simulate", "--model", "NOCHANGE_GAUSS(75)",
                         "--seed", "2", "--out", str(prefix))
        assert code == 0
        assert len((tmp_path / "g.csv").read_text().strip().splitlines()) == 75

    def test_unknown_model(self, tmp_path, capsys):
        code, _, err = run(capsys, "simulate", "--model", "M9", "--seed", "1",
                           "--out", str(tmp_path / "x"))
        assert code == 1
        assert "unknown model" in err


class TestDetect:
    def test_noise_gives_empty_changepoints(self, tmp_path, capsys):
        rng = np.random.default_rng(0)
        path = tmp_path / "noise.csv"
        write_series(path, rng.standard_normal(200))
        code, out, _ = run(capsys, "detect", str(path))
        assert code == 0
        payload = json.loads(out)
        assert payload["schema"] == 1
        assert payload["changepoints"] == []
        assert payload["length"] == 200
        assert payload["bic"] is not None

    def test_two_column_csv_and_out_file(self, tmp_path, capsys):
        rng = np.random.default_rng(1)
        values = np.concatenate([rng.normal(0, 1, 60), rng.normal(9, 1, 60)])
        path = tmp_path / "steps.csv"
        write_series(path, values, two_column=True)
        out_path = tmp_path / "result.json"
        code, out, _ = run(capsys, "detect", str(path), "--out", str(out_path))
        assert code == 0
        assert out.strip() == ""
        payload = json.loads(out_path.read_text())
        assert len(payload["changepoints"]) == 1
        assert abs(payload["changepoints"][0] - 60) <= 2

    def test_threshold_stop_omits_path(self, tmp_path, capsys):
        rng = np.random.default_rng(2)
        path = tmp_path / "x.csv"
        write_series(path, rng.standard_normal(100))
        code, out, _ = run(capsys, "detect", str(path), "--stop", "threshold")
        payload = json.loads(out)
        assert code == 0
        assert payload["solution_path"] is None
        assert payload["bic"] is None

    def test_flag_combinations(self, tmp_path, capsys):
        rng = np.random.default_rng(3)
        path = tmp_path / "x.csv"
        write_series(path, rng.standard_normal(150))
        code, out, _ = run(
            capsys, "detect", str(path), "--norm", "l2", "--lambda", "10",
            "--const", "0.8", "--grid", "40", "--rescale", "off",
            "--restart", "estimate", "--split", "off", "--stop", "threshold",
        )
        assert code == 0
        config = json.loads(out)["config"]
        assert config["norm"] == "l2"
        assert config["expansion_step"] == 10
        assert config["threshold_constant"] == 0.8
        assert config["eval_mode"] == "grid"
        assert config["grid_size"] == 40
        assert config["restart"] == "estimate"
        assert config["split"] is None

    def test_l1_without_constant_fails_cleanly(self, tmp_path, capsys):
        path = tmp_path / "x.csv"
        write_series(path, np.arange(50.0))
        code, _, err = run(capsys, "detect", str(path), "--norm", "l1")
        assert code == 1
        assert "constant" in err

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "detect", "/nonexistent/input.csv")
        assert code == 1
        assert "cannot read" in err

    def test_non_numeric_rows(self, tmp_path, capsys):
        path = tmp_path / "bad.csv"
        path.write_text("1.0\ntwo\n3.0\n")
        code, _, err = run(capsys, "detect", str(path))
        assert code == 1
        assert "non-numeric" in err

    def test_empty_series_distinct_exit(self, tmp_path, capsys):
        path = tmp_path / "empty.csv"
        path.write_text("")
        code, _, err = run(capsys, "detect", str(path))
        assert code == 3

    def test_unknown_flag_exits_2(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            main(["detect", "x.csv", "--frobnicate"])
        assert exc.value.code == 2

    def test_exit_zero_with_changepoints_found(self, tmp_path, capsys):
        rng = np.random.default_rng(4)
        values = np.concatenate([rng.normal(0, 1, 80), rng.normal(10, 1, 80)])
        path = tmp_path / "jump.csv"
        write_series(path, values)
        code, out, _ = run(capsys, "detect", str(path))
        assert code == 0
        assert len(json.loads(out)["changepoints"]) == 1


class TestStudy:
    def test_report_and_csv(self, tmp_path, capsys):
        report_path = tmp_path / "report.json"
        csv_path = tmp_path / "report.csv"
        code, _, _ = run(
            capsys, "study", "--model", "M1", "--reps", "3", "--seed", "0",
            "--out", str(report_path), "--csv", str(csv_path),
        )
        assert code == 0
        payload = json.loads(report_path.read_text())
        assert payload["model"] == "M1"
        assert sum(payload["buckets"].values()) == 3
        header, row = csv_path.read_text().strip().splitlines()
        assert header.startswith("model,")
        assert row.startswith("M1,3,")

    def test_stdout_report(self, capsys):
        code, out, _ = run(capsys, "study", "--model", "NC", "--reps", "2",
                           "--stop", "threshold")
        assert code == 0
        assert json.loads(out)["reps"] == 2


class TestEvaluate:
    def test_hand_value(self, tmp_path, capsys):
        truth = tmp_path / "truth.json"
        est = tmp_path / "est.json"
        truth.write_text(json.dumps({"changepoints": [50]}))
        est.write_text(json.dumps([55]))
        code, out, _ = run(capsys, "evaluate", "--truth", str(truth),
                           "--est", str(est), "--T", "100")
        assert code == 0
        assert float(out.strip()) == pytest.approx(0.1)

    def test_empty_est_prints_na(self, tmp_path, capsys):
        truth = tmp_path / "truth.json"
        est = tmp_path / "est.json"
        truth.write_text(json.dumps({"changepoints": [50]}))
        est.write_text(json.dumps([]))
        code, out, _ = run(capsys, "evaluate", "--truth", str(truth),
                           "--est", str(est), "--T", "100")
        assert code == 0
        assert out.strip() == "NA"

    def test_bad_json(self, tmp_path, capsys):
        truth = tmp_path / "truth.json"
        truth.write_text("{not json")
        est = tmp_path / "est.json"
        est.write_text("[1]")
        code, _, err = run(capsys, "evaluate", "--truth", str(truth),
                           "--est", str(est), "--T", "100")
        assert code == 1
        assert "invalid JSON" in err


class TestRunOutput:
    def test_roundtrip_with_bic(self):
        output = RunOutput(
            length=100,
            changepoints=(10, 55),
            scores=(3.2, 2.9),
            config={"norm": "linf"},
            runtime_ms=12.5,
            solution_path=(55, 10, 80),
            removal_scores=(4.0, 3.0, 1.0),
            bic_chosen_j=2,
            bic_scores=(10.0, 8.0, 7.5, 9.0),
            bic_penalty=11.1,
        )
        payload = json.loads(json.dumps(output.to_dict()))
        assert RunOutput.from_dict(payload) == output

    def test_roundtrip_threshold_only(self):
        output = RunOutput(
            length=10, changepoints=(), scores=(), config={}, runtime_ms=1.0
        )
        assert RunOutput.from_dict(json.loads(json.dumps(output.to_dict()))) == output

    def test_rejects_unknown_schema(self):
        with pytest.raises(ValueError):
            RunOutput.from_dict({"schema": 99})
