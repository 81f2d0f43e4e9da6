"""End-to-end checks of the command line, driven in-process through main()."""

import csv
import io
import json
import subprocess
import sys

import pytest

from wiretap_adc import (
    AdcSpec,
    ComplexAdcPair,
    ComplexGain,
    DiscreteInput,
    WiretapChannel,
    one_bit,
    one_bit_pair,
)
from wiretap_adc.cli import main


def worked_channel():
    return WiretapChannel(
        w1=ComplexGain(1.0),
        w2=ComplexGain(2.0),
        legit_adc=one_bit_pair(),
        eave_adc=ComplexAdcPair(AdcSpec((-0.5, 1.0), (0.0, 1.0, 2.0)), one_bit()),
        mode="real",
    )


def one_bit_complex_channel():
    return WiretapChannel(
        w1=ComplexGain(2.0),
        w2=ComplexGain(0.0, 1.0),
        legit_adc=one_bit_pair(),
        eave_adc=one_bit_pair(),
        mode="complex",
    )


def write_config(tmp_path, name="config.json", **sections):
    path = tmp_path / name
    path.write_text(json.dumps(sections), encoding="utf-8")
    return str(path)


def parse_csv(text):
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], rows[1:]


class TestRate:
    def make_config(self, tmp_path):
        dist = DiscreteInput((2.0, 4.0), (0.1, 0.9))
        return write_config(
            tmp_path, channel=worked_channel().to_json(), input=dist.to_json()
        )

    def test_json_output(self, tmp_path, capsys):
        assert main(["rate", "--config", self.make_config(tmp_path)]) == 0
        payload = json.loads(capsys.readouterr().out)
        report = payload["rate_report"]
        assert report["rs"] == pytest.approx(report["i1"] - report["i2"], abs=1e-15)
        assert payload["input"]["probs"] == [0.1, 0.9]

    def test_csv_output(self, tmp_path, capsys):
        cfg = self.make_config(tmp_path)
        assert main(["rate", "--config", cfg, "--format", "csv"]) == 0
        header, rows = parse_csv(capsys.readouterr().out)
        assert header == ["i1", "i2", "rs", "power"]
        assert len(rows) == 1
        i1, i2, rs, power = map(float, rows[0])
        assert rs == pytest.approx(i1 - i2, abs=1e-15)
        assert power == pytest.approx(0.1 * 4.0 + 0.9 * 16.0)

    def test_out_file(self, tmp_path, capsys):
        cfg = self.make_config(tmp_path)
        out = tmp_path / "rate.json"
        assert main(["rate", "--config", cfg, "--out", str(out)]) == 0
        assert capsys.readouterr().out == ""
        assert "rate_report" in json.loads(out.read_text())


class TestAchieve:
    def test_json_and_trace(self, tmp_path, capsys):
        cfg = write_config(tmp_path, channel=worked_channel().to_json())
        trace_path = tmp_path / "trace.csv"
        assert main(["achieve", "--config", cfg, "--trace", str(trace_path)]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["a"] == 2.0
        assert payload["b"] == 4.0
        assert payload["exact_rate"]["rs"] > 1e-9

        header, rows = parse_csv(trace_path.read_text())
        assert header == ["b", "phi", "i1", "i2", "rs", "limit_rate"]
        assert rows
        for row in rows:
            b, phi, i1, i2, rs, limit = map(float, row)
            assert rs == pytest.approx(i1 - i2, abs=1e-12)

    def test_csv_format_is_the_trace(self, tmp_path, capsys):
        cfg = write_config(tmp_path, channel=worked_channel().to_json())
        assert main(["achieve", "--config", cfg, "--format", "csv"]) == 0
        header, rows = parse_csv(capsys.readouterr().out)
        assert header == ["b", "phi", "i1", "i2", "rs", "limit_rate"]
        assert rows

    def test_power_budget_is_applied(self, tmp_path, capsys):
        cfg = write_config(tmp_path, channel=worked_channel().to_json(), J=2.0)
        assert main(["achieve", "--config", cfg]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["power_budget"] == 2.0
        assert 0.0 < payload["alpha"] < 1.0

    def test_unknown_option_rejected(self, tmp_path, capsys):
        cfg = write_config(
            tmp_path, channel=worked_channel().to_json(), achieve={"tolerance": 1e-6}
        )
        assert main(["achieve", "--config", cfg]) == 2
        assert "tolerance" in capsys.readouterr().err


class TestOptimize:
    def make_config(self, tmp_path, **extra):
        return write_config(
            tmp_path,
            channel=worked_channel().to_json(),
            J=4.0,
            optimize={"support_size": 3, "restarts": 2, "seed": 5},
            **extra,
        )

    def test_payload_and_seed_override(self, tmp_path, capsys):
        cfg = self.make_config(tmp_path)
        trace_path = tmp_path / "trace.csv"
        code = main(
            ["optimize", "--config", cfg, "--seed", "9", "--trace", str(trace_path)]
        )
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["seed"] == 9
        assert payload["kkt_report"]["grid_points"] == 2001
        assert payload["support_verdict"]["gain_order"] == "legit_weaker"
        assert payload["rate_report"]["power"] <= 4.0 + 1e-9

        header, rows = parse_csv(trace_path.read_text())
        assert header == ["seed", "restart", "iterations", "rs", "power"]
        assert len(rows) == 2
        assert [int(r[1]) for r in rows] == [0, 1]

    def test_byte_identical_reruns(self, tmp_path):
        cfg = self.make_config(tmp_path)
        out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
        assert main(["optimize", "--config", cfg, "--out", str(out1)]) == 0
        assert main(["optimize", "--config", cfg, "--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()


class TestKktCheck:
    def test_report(self, tmp_path, capsys):
        dist = DiscreteInput((-2.0, 2.0), (0.5, 0.5))
        cfg = write_config(
            tmp_path,
            channel=worked_channel().to_json(),
            input=dist.to_json(),
            J=4.0,
            kkt={"grid_points": 501},
        )
        assert main(["kkt-check", "--config", cfg, "--format", "csv"]) == 0
        header, rows = parse_csv(capsys.readouterr().out)
        assert header == [
            "lambda",
            "mean_square",
            "power_budget",
            "max_slack_violation",
            "support_residual",
            "slackness_residual",
        ]
        assert float(rows[0][1]) == pytest.approx(4.0)

    def test_needs_budget(self, tmp_path, capsys):
        dist = DiscreteInput((1.0,), (1.0,))
        cfg = write_config(
            tmp_path, channel=worked_channel().to_json(), input=dist.to_json()
        )
        assert main(["kkt-check", "--config", cfg]) == 2
        assert "'J'" in capsys.readouterr().err


class TestSweep:
    def test_far_point_axis(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("WIRETAP_ADC_THREADS", "1")
        cfg = write_config(
            tmp_path,
            channel=worked_channel().to_json(),
            sweep={"axis": "b", "start": 3.0, "stop": 7.0, "num": 5},
        )
        assert main(["sweep", "--config", cfg]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["axis"] == "b"
        values = [row[0] for row in payload["rows"]]
        assert values == sorted(values)
        assert len(values) == 5
        # larger far points approach the Z-channel limit from below
        last = payload["rows"][-1]
        assert abs(last[3] - last[4]) < abs(payload["rows"][0][3] - last[4])

    def test_budget_axis_csv(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("WIRETAP_ADC_THREADS", "1")
        cfg = write_config(
            tmp_path,
            channel=worked_channel().to_json(),
            sweep={"axis": "J", "start": 1.0, "stop": 16.0, "num": 3, "scale": "log"},
        )
        assert main(["sweep", "--config", cfg, "--format", "csv"]) == 0
        header, rows = parse_csv(capsys.readouterr().out)
        assert header == ["axis_value", "i1", "i2", "rs", "limit_rate"]
        assert [float(r[0]) for r in rows] == pytest.approx([1.0, 4.0, 16.0])

    def test_eavesdropper_gain_axis(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("WIRETAP_ADC_THREADS", "1")
        cfg = write_config(
            tmp_path,
            channel=worked_channel().to_json(),
            sweep={"axis": "w2_mag", "start": 2.0, "stop": 3.0, "num": 3},
        )
        assert main(["sweep", "--config", cfg]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert all(row[3] > 0.0 for row in payload["rows"])

    def test_bad_axis(self, tmp_path, capsys):
        cfg = write_config(
            tmp_path,
            channel=worked_channel().to_json(),
            sweep={"axis": "sigma", "start": 0.0, "stop": 1.0, "num": 2},
        )
        assert main(["sweep", "--config", cfg]) == 2
        assert "axis" in capsys.readouterr().err


class TestVerify:
    def test_subset_passes(self, tmp_path, capsys):
        cfg = write_config(
            tmp_path, verify={"seed": 3, "suites": ["closed_forms", "entropy_identity"]}
        )
        assert main(["verify", "--config", cfg]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["passed"] is True
        # suites run in registry order, not request order
        assert sorted(s["name"] for s in payload["suites"]) == [
            "closed_forms",
            "entropy_identity",
        ]

    def test_broken_invariant_fails(self, tmp_path, capsys, monkeypatch):
        import wiretap_adc.optimizer as optimizer

        real_gap = optimizer.folding_gap
        monkeypatch.setattr(
            optimizer, "folding_gap", lambda chan, dist: -real_gap(chan, dist)
        )
        cfg = write_config(tmp_path, verify={"suites": ["folding_gap_signs"]})
        assert main(["verify", "--config", cfg]) == 1
        payload = json.loads(capsys.readouterr().out)
        assert payload["passed"] is False
        assert payload["suites"][0]["passed"] is False


class TestExitCodes:
    def test_equal_gains(self, tmp_path, capsys):
        chan = WiretapChannel(
            w1=ComplexGain(1.0),
            w2=ComplexGain(-1.0),
            legit_adc=one_bit_pair(),
            eave_adc=one_bit_pair(),
            mode="real",
        )
        cfg = write_config(tmp_path, channel=chan.to_json())
        assert main(["achieve", "--config", cfg]) == 3
        assert "error" in capsys.readouterr().err

    def test_sweep_exhausted(self, tmp_path, capsys):
        # two-sided far-out thresholds push every candidate into saturation
        chan = WiretapChannel(
            w1=ComplexGain(2.868969027989957),
            w2=ComplexGain(3.4769744226145676),
            legit_adc=one_bit_pair(),
            eave_adc=ComplexAdcPair(
                AdcSpec(
                    (-2.7331714163422323, -1.2906134580853619,
                     1.2949445706683873, 2.9372238452499735),
                    (0.0, 1.0, 2.0, 3.0, 4.0),
                ),
                AdcSpec((-1.0, 1.75), (0.0, 1.0, 2.0)),
            ),
            mode="real",
        )
        cfg = write_config(tmp_path, channel=chan.to_json())
        assert main(["achieve", "--config", cfg]) == 4
        err = capsys.readouterr().err
        diag = json.loads(err[err.index("{"):])
        assert diag["rate_floor"] == 1e-9
        assert diag["best_rate"] <= 1e-9

    def test_missing_config(self, capsys):
        assert main(["rate"]) == 2
        assert "--config" in capsys.readouterr().err

    def test_malformed_channel(self, tmp_path, capsys):
        cfg = write_config(tmp_path, channel={"w1": [1.0, 0.0]})
        assert main(["rate", "--config", cfg]) == 2
        assert "error" in capsys.readouterr().err


class TestQpskBound:
    def test_report(self, tmp_path, capsys):
        cfg = write_config(tmp_path, channel=one_bit_complex_channel().to_json(), J=4.0)
        assert main(["qpsk-bound", "--config", cfg]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["rs"] >= payload["bound"] - 1e-10
        assert payload["bound"] > 0.0

    def test_csv(self, tmp_path, capsys):
        cfg = write_config(tmp_path, channel=one_bit_complex_channel().to_json(), J=4.0)
        assert main(["qpsk-bound", "--config", cfg, "--format", "csv"]) == 0
        header, rows = parse_csv(capsys.readouterr().out)
        assert header == ["i1", "i2", "rs", "bound"]
        assert len(rows) == 1


def test_module_entry_point(tmp_path):
    dist = DiscreteInput((2.0, 4.0), (0.1, 0.9))
    cfg = write_config(
        tmp_path, channel=worked_channel().to_json(), input=dist.to_json()
    )
    proc = subprocess.run(
        [sys.executable, "-m", "wiretap_adc.cli", "rate", "--config", cfg],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert "rate_report" in json.loads(proc.stdout)
