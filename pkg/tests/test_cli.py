"""CLI surface: flag plumbing, config files, exit codes, console output."""

import json

import numpy as np
import pytest

import qhaug.cli as cli
from qhaug.checks import IdentityReport
from qhaug.cli import EXIT_GATE, EXIT_OK, EXIT_USAGE, main


def synth_args(tmp_path, *extra):
    return [
        "synthetic-gaussian",
        "--n",
        "16",
        "--jitter-radius",
        "4",
        "--omega",
        "rect:-1,-1,3,3",
        "--components",
        "2",
        "--num-signals",
        "5",
        "--metric-radii",
        "2,4",
        "--out",
        str(tmp_path / "out"),
        *extra,
    ]


class TestSyntheticCommand:
    def test_happy_path(self, tmp_path, capsys):
        assert main(synth_args(tmp_path)) == EXIT_OK
        out = capsys.readouterr().out
        assert "experiment: synthetic-gaussian" in out
        assert "lattice size: 16" in out
        assert "top eigenvalue raw:" in out
        assert "mean tail fraction beyond 2 bins:" in out
        names = {p.name for p in (tmp_path / "out").iterdir()}
        assert {"eigenvalues.csv", "metrics.csv", "summary.json"} <= names
        assert "pc_raw_1.pgm" in names and "pc_augmented_2.pgm" in names

    def test_config_file_supplies_options(self, tmp_path, capsys):
        cfg_path = tmp_path / "cfg.json"
        cfg_path.write_text(
            json.dumps(
                {
                    "n": 16,
                    "jitter_radius": 4,
                    "omega": "rect:-1,-1,3,3",
                    "components": 1,
                    "num_signals": 5,
                    "metric_radii": [2.0],
                    "out": str(tmp_path / "from-config"),
                }
            )
        )
        code = main(["synthetic-gaussian", "--config", str(cfg_path)])
        assert code == EXIT_OK
        assert (tmp_path / "from-config" / "summary.json").exists()

    def test_flag_beats_config_file(self, tmp_path):
        cfg_path = tmp_path / "cfg.json"
        cfg_path.write_text(
            json.dumps(
                {
                    "n": 16,
                    "jitter_radius": 4,
                    "omega": "rect:-1,-1,3,3",
                    "components": 1,
                    "num_signals": 5,
                    "seed": 1,
                    "out": str(tmp_path / "a"),
                }
            )
        )
        code = main(
            [
                "synthetic-gaussian",
                "--config",
                str(cfg_path),
                "--seed",
                "2",
                "--out",
                str(tmp_path / "b"),
            ]
        )
        assert code == EXIT_OK
        assert not (tmp_path / "a").exists()
        with open(tmp_path / "b" / "summary.json") as fh:
            assert json.load(fh)["config"]["seed"] == 2

    def test_same_seed_same_bytes(self, tmp_path):
        assert main(synth_args(tmp_path)) == EXIT_OK
        first = {
            p.name: p.read_bytes() for p in (tmp_path / "out").iterdir()
        }
        assert main(synth_args(tmp_path)) == EXIT_OK
        second = {
            p.name: p.read_bytes() for p in (tmp_path / "out").iterdir()
        }
        assert first == second


class TestErrorPaths:
    def test_invalid_lattice_size(self, tmp_path, capsys):
        code = main(synth_args(tmp_path, "--n", "10"))
        assert code == EXIT_USAGE
        err = capsys.readouterr().err
        assert err.startswith("error:")
        assert "power of two" in err

    def test_missing_config_file(self, tmp_path, capsys):
        code = main(
            ["synthetic-gaussian", "--config", str(tmp_path / "nope.json")]
        )
        assert code == EXIT_USAGE
        assert "cannot read config" in capsys.readouterr().err

    def test_config_not_json(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        code = main(["synthetic-gaussian", "--config", str(bad)])
        assert code == EXIT_USAGE
        assert "not valid JSON" in capsys.readouterr().err

    def test_config_not_an_object(self, tmp_path, capsys):
        bad = tmp_path / "list.json"
        bad.write_text("[1, 2]")
        code = main(["synthetic-gaussian", "--config", str(bad)])
        assert code == EXIT_USAGE
        assert "must hold a JSON object" in capsys.readouterr().err

    def test_unknown_config_key(self, tmp_path, capsys):
        bad = tmp_path / "k.json"
        bad.write_text(json.dumps({"bogus": 1}))
        code = main(["synthetic-gaussian", "--config", str(bad)])
        assert code == EXIT_USAGE
        assert "unknown config key 'bogus'" in capsys.readouterr().err

    def test_malformed_radius_list(self, tmp_path, capsys):
        code = main(synth_args(tmp_path, "--metric-radii", "2,x"))
        assert code == EXIT_USAGE
        assert "malformed radius list" in capsys.readouterr().err

    def test_malformed_omega(self, tmp_path, capsys):
        code = main(synth_args(tmp_path, "--omega", "blob:1,2"))
        assert code == EXIT_USAGE
        assert "malformed mask spec" in capsys.readouterr().err

    def test_unreadable_wav(self, tmp_path, capsys):
        code = main(
            [
                "audio-pca",
                "--n",
                "16",
                "--jitter-radius",
                "4",
                "--wav",
                str(tmp_path / "missing.wav"),
            ]
        )
        assert code == EXIT_USAGE
        assert "error:" in capsys.readouterr().err

    def test_not_a_wav(self, tmp_path, capsys):
        fake = tmp_path / "fake.wav"
        fake.write_bytes(b"ID3\x00 this is something else entirely")
        code = main(
            [
                "audio-pca",
                "--n",
                "16",
                "--jitter-radius",
                "4",
                "--wav",
                str(fake),
            ]
        )
        assert code == EXIT_USAGE
        assert "missing RIFF magic" in capsys.readouterr().err


class TestAudioCommand:
    def test_runs_on_generated_wav(self, tmp_path, capsys):
        from qhaug.audio import write_wav

        rng = np.random.default_rng(3)
        wav = tmp_path / "in.wav"
        write_wav(wav, rng.standard_normal(600) * 0.2, 8000)
        code = main(
            [
                "audio-pca",
                "--n",
                "16",
                "--jitter-radius",
                "4",
                "--omega",
                "rect:-1,-1,3,3",
                "--components",
                "2",
                "--metric-radii",
                "2",
                "--wav",
                str(wav),
                "--frame-hop",
                "8",
                "--out",
                str(tmp_path / "audio-out"),
            ]
        )
        assert code == EXIT_OK
        assert "experiment: audio-pca" in capsys.readouterr().out
        with open(tmp_path / "audio-out" / "summary.json") as fh:
            payload = json.load(fh)
        assert payload["config"]["frame_hop"] == 8
        assert payload["config"]["wav"] == str(wav)


class TestQhaCheck:
    def test_default_sizes_pass(self, capsys):
        assert main(["qha-check"]) == EXIT_OK
        out = capsys.readouterr().out
        for n in (4, 8, 16):
            assert f"lattice size {n}, seed 1:" in out
        assert out.count("-> PASS (gate 1e-09)") == 3
        assert "FAIL" not in out

    def test_explicit_sizes_and_seed(self, capsys):
        assert main(["qha-check", "--n", "5", "--n", "12", "--seed", "7"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "lattice size 5, seed 7:" in out
        assert "lattice size 12, seed 7:" in out

    def test_out_of_range_size(self, capsys):
        assert main(["qha-check", "--n", "64"]) == EXIT_USAGE
        assert "must lie in [4, 32]" in capsys.readouterr().err

    def test_gate_failure_exits_2(self, capsys, monkeypatch):
        # simulate a broken build: the gate must translate a failing
        # report into exit code 2, not a crash and not success
        def broken(n_values, seed):
            return [
                IdentityReport(
                    n=int(n), seed=seed, errors={"weyl_round_trip": 0.25}
                )
                for n in n_values
            ]

        monkeypatch.setattr(cli, "run_qha_check", broken)
        assert main(["qha-check", "--n", "8"]) == EXIT_GATE
        out = capsys.readouterr().out
        assert "weyl_round_trip: 2.500e-01" in out
        assert "-> FAIL (gate 1e-09)" in out


class TestParser:
    def test_version_flag(self, capsys):
        import qhaug

        with pytest.raises(SystemExit) as info:
            main(["--version"])
        assert info.value.code == 0
        assert f"qhaug {qhaug.__version__}" in capsys.readouterr().out

    def test_subcommand_required(self):
        with pytest.raises(SystemExit) as info:
            main([])
        assert info.value.code == 2  # argparse usage error

    def test_entry_point_is_exposed(self):
        import importlib.metadata as md

        eps = md.entry_points(group="console_scripts")
        names = {ep.name: ep.value for ep in eps}
        assert names.get("qhaug") == "qhaug.cli:main"
