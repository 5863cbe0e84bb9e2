"""Tests for the command-line interface.

All subcommands are exercised through ``main(argv)``; printed values are
cross-checked against direct library calls.
"""

import numpy as np
import pytest

from rdtargets import (
    AlphabetSizes,
    BAConfig,
    DistortionMatrix,
    Distribution,
    blahut_arimoto,
    required_samples,
)
from rdtargets.cli import main
from rdtargets.harness import read_records

CONFIG = """\
kind = bernoulli
arms = 4
horizon = 25
trials = 2
seed = 321
agents = ts, blasts:1.5
z = 4
ba_tol = 1e-4
"""


@pytest.fixture()
def config_path(tmp_path):
    path = tmp_path / "exp.cfg"
    path.write_text(CONFIG + f"out = {tmp_path / 'regret.csv'}\n", encoding="utf-8")
    return str(path)


class TestRun:
    def test_writes_csv_and_reports(self, config_path, tmp_path, capsys):
        assert main(["run", "--config", config_path]) == 0
        out = capsys.readouterr().out
        expected = 2 * 2 * 25
        assert f"wrote {expected} records to {tmp_path / 'regret.csv'}" in out
        records = read_records(str(tmp_path / "regret.csv"))
        assert len(records) == expected

    def test_identical_invocations_are_byte_identical(self, config_path, tmp_path):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        assert main(["run", "--config", config_path, "--out", str(a)]) == 0
        assert main(["run", "--config", config_path, "--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_seed_override_changes_output(self, config_path, tmp_path):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        assert main(["run", "--config", config_path, "--out", str(a)]) == 0
        assert main(
            ["run", "--config", config_path, "--out", str(b), "--seed", "555"]
        ) == 0
        assert a.read_bytes() != b.read_bytes()

    def test_bad_config_exits_2_with_message(self, tmp_path, capsys):
        path = tmp_path / "bad.cfg"
        path.write_text("kind = bernoulli\n", encoding="utf-8")
        assert main(["run", "--config", str(path)]) == 2
        assert capsys.readouterr().err.startswith("error:")

    def test_missing_config_file_exits_2(self, tmp_path, capsys):
        assert main(["run", "--config", str(tmp_path / "nope.cfg")]) == 2
        assert "error:" in capsys.readouterr().err


class TestRDCompare:
    def test_writes_points(self, config_path, tmp_path, capsys):
        out = tmp_path / "rd.csv"
        code = main([
            "rd-compare", "--config", config_path,
            "--betas", "0.5", "2.0",
            "--epsilons", "0.0", "0.1",
            "--out", str(out),
        ])
        assert code == 0
        lines = out.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "method,param,rate_bits,distortion"
        assert len(lines) == 1 + 4
        assert "wrote 4 points" in capsys.readouterr().out

    def test_deterministic(self, config_path, tmp_path):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        args = ["rd-compare", "--config", config_path, "--betas", "1.0",
                "--epsilons", "0.2", "--out"]
        assert main(args + [str(a)]) == 0
        assert main(args + [str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()


class TestBASolve:
    def write_inputs(self, tmp_path):
        src = tmp_path / "source.csv"
        src.write_text("label,prob\nheads,0.5\ntails,0.5\n", encoding="utf-8")
        dst = tmp_path / "dist.csv"
        dst.write_text(
            "label,pick_heads,pick_tails\nheads,0.0,1.0\ntails,1.0,0.0\n",
            encoding="utf-8",
        )
        return str(src), str(dst)

    def test_prints_solution_matching_library(self, tmp_path, capsys):
        src, dst = self.write_inputs(tmp_path)
        assert main(["ba-solve", "--source", src, "--distortion", dst, "--beta", "2"]) == 0
        out = capsys.readouterr().out
        source = Distribution(("heads", "tails"), [0.5, 0.5])
        dist = DistortionMatrix(
            ("heads", "tails"), ("pick_heads", "pick_tails"),
            [[0.0, 1.0], [1.0, 0.0]],
        )
        sol = blahut_arimoto(source, dist, 2.0, BAConfig())
        assert f"rate_bits={sol.rate!r}" in out
        assert f"distortion={sol.distortion!r}" in out
        assert "converged=True" in out

    def test_bad_source_header_exits_2(self, tmp_path, capsys):
        src = tmp_path / "source.csv"
        src.write_text("name,p\nheads,0.5\n", encoding="utf-8")
        dst = tmp_path / "dist.csv"
        dst.write_text("label,a\nheads,0.0\n", encoding="utf-8")
        code = main(["ba-solve", "--source", str(src), "--distortion", str(dst),
                     "--beta", "1"])
        assert code == 2
        assert "label,prob" in capsys.readouterr().err

    def test_label_mismatch_exits_2(self, tmp_path, capsys):
        src, _ = self.write_inputs(tmp_path)
        dst = tmp_path / "swapped.csv"
        dst.write_text(
            "label,a,b\ntails,0.0,1.0\nheads,1.0,0.0\n", encoding="utf-8"
        )
        code = main(["ba-solve", "--source", src, "--distortion", str(dst),
                     "--beta", "1"])
        assert code == 2
        assert "match the source labels" in capsys.readouterr().err

    def test_invalid_probabilities_exit_2(self, tmp_path, capsys):
        src = tmp_path / "source.csv"
        src.write_text("label,prob\nheads,0.9\ntails,0.9\n", encoding="utf-8")
        dst = tmp_path / "dist.csv"
        dst.write_text("label,a\nheads,0.0\ntails,1.0\n", encoding="utf-8")
        code = main(["ba-solve", "--source", str(src), "--distortion", str(dst),
                     "--beta", "1"])
        assert code == 2
        assert "error:" in capsys.readouterr().err


class TestBounds:
    def test_prints_required_samples(self, capsys):
        code = main([
            "bounds", "--epsilon", "0.5", "--delta", "0.05",
            "--dmin", "0.2", "--nenv", "4", "--ntarget", "4",
        ])
        assert code == 0
        got = int(capsys.readouterr().out.strip())
        assert got == required_samples(0.5, 0.05, 0.2, AlphabetSizes(4, 4))
        assert got == 10_968_228

    def test_bad_delta_exits_2(self, capsys):
        code = main([
            "bounds", "--epsilon", "0.5", "--delta", "0",
            "--dmin", "0.2", "--nenv", "4", "--ntarget", "4",
        ])
        assert code == 2
        assert "delta" in capsys.readouterr().err


class TestParser:
    def test_requires_subcommand(self):
        with pytest.raises(SystemExit) as info:
            main([])
        assert info.value.code == 2

    def test_unknown_subcommand(self):
        with pytest.raises(SystemExit) as info:
            main(["frobnicate"])
        assert info.value.code == 2
