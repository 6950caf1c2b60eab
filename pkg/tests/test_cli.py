import math

import numpy as np
import pytest

from aoa_pla.arrays import ArrayGeometry, NoiseModel, synthesize_legitimate
from aoa_pla.auth import enroll, save_acl
from aoa_pla.cli import (
    ConfigError,
    load_config,
    main,
    read_signal_block,
    write_signal_block,
    _parse_angle,
)


def test_parse_angle_deg_suffix():
    assert _parse_angle("0.4") == 0.4
    assert _parse_angle("90 deg") == pytest.approx(math.pi / 2)
    assert _parse_angle("-45deg") == pytest.approx(-math.pi / 4)


def test_load_config(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(
        "# comment\n"
        "[array]\n"
        "num_elements = 16\n"
        "spacing = 0.5\n"
        "[source]\n"
        "theta = 30 deg\n"
        "[attacker]\n"
        "angles = 0.1, 45 deg\n"
        "betas = 0.5,0.5\n"
        "[experiment]\n"
        "figure = fig5\n"
        "seed = 3\n"
    )
    values = load_config(cfg)
    assert values["array.num_elements"] == 16
    assert values["source.theta"] == pytest.approx(math.pi / 6)
    assert values["attacker.angles"][1] == pytest.approx(math.pi / 4)
    assert values["attacker.betas"] == (0.5, 0.5)
    assert values["experiment.figure"] == "fig5"
    assert values["experiment.seed"] == 3


def test_load_config_rejects_unknown_key(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("[array]\nnum_antennas = 16\n")
    with pytest.raises(ConfigError, match="array.num_antennas"):
        load_config(cfg)


def test_load_config_rejects_bad_value(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("[array]\nnum_elements = lots\n")
    with pytest.raises(ConfigError, match="num_elements"):
        load_config(cfg)


def test_load_config_rejects_bare_line(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("just a line\n")
    with pytest.raises(ConfigError, match="key = value"):
        load_config(cfg)


def test_signal_block_roundtrip(tmp_path):
    geom = ArrayGeometry(6)
    block = synthesize_legitimate(geom, 0.25, NoiseModel.from_db(10.0), 15, 3)
    path = tmp_path / "block.txt"
    write_signal_block(path, block)
    back = read_signal_block(path)
    assert back.samples.shape == block.samples.shape
    assert np.array_equal(back.samples, block.samples)


def test_signal_block_malformed(tmp_path):
    path = tmp_path / "block.txt"
    path.write_text("3 2\n1+0j,2+0j,3+0j\n")
    with pytest.raises(ValueError, match="2 snapshots"):
        read_signal_block(path)
    path.write_text("3 1\n1+0j,2+0j\n")
    with pytest.raises(ValueError, match="expected 3 entries"):
        read_signal_block(path)
    path.write_text("")
    with pytest.raises(ValueError, match="empty"):
        read_signal_block(path)


def test_cli_attack_opt(capsys):
    rc = main(["attack-opt", "--M", "16", "--theta", "0.4", "--theta-hat", "0.2"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "beta*" in out and "gradient res" in out


def test_cli_attack_opt_aligned_degenerates_to_unity(capsys):
    rc = main(["attack-opt", "--M", "16", "--theta", "0.4", "--theta-hat", "0.4"])
    out = capsys.readouterr().out
    assert rc == 0
    fields = dict(
        line.split("=", 1) for line in out.splitlines() if "=" in line
    )
    assert float(fields["beta*        "]) == pytest.approx(1.0, abs=1e-12)
    assert float(fields["phi*         "]) == pytest.approx(0.0, abs=1e-12)


def test_cli_attack_opt_gradient_residual(capsys):
    rc = main(["attack-opt", "--M", "16", "--theta", "0.4", "--theta-hat", "0.2"])
    out = capsys.readouterr().out
    assert rc == 0
    residual = float(out.splitlines()[-1].split("=")[1])
    assert residual <= 1e-9


def test_cli_reproduce_twice_identical_bytes(tmp_path, capsys):
    args = [
        "reproduce", "fig3", "--seed", "7",
        "--set", "phi_points=7", "--set", "trials=2000",
    ]
    assert main(args + ["--out", str(tmp_path / "a")]) == 0
    assert main(args + ["--out", str(tmp_path / "b")]) == 0
    capsys.readouterr()
    first = (tmp_path / "a" / "fig3__7.csv").read_bytes()
    second = (tmp_path / "b" / "fig3__7.csv").read_bytes()
    assert first == second


def test_cli_music_synthesized(capsys):
    rc = main(
        [
            "music",
            "--num-antennas",
            "16",
            "--theta",
            "0.3",
            "--snr-db",
            "15",
            "--snapshots",
            "500",
            "--seed",
            "1",
        ]
    )
    out = capsys.readouterr().out
    assert rc == 0
    est = float(out.split()[2])
    assert est == pytest.approx(0.3, abs=0.01)


def test_cli_music_from_file_with_spectrum(tmp_path, capsys):
    geom = ArrayGeometry(8)
    block = synthesize_legitimate(geom, -0.2, NoiseModel.from_db(20.0), 400, 2)
    blk = tmp_path / "blk.txt"
    write_signal_block(blk, block)
    spec = tmp_path / "spec.csv"
    rc = main(["music", "--input", str(blk), "--spectrum-csv", str(spec)])
    assert rc == 0
    lines = spec.read_text().splitlines()
    assert lines[0] == "angle_rad,pseudospectrum"
    assert len(lines) > 1000


def test_cli_verify_exit_codes(tmp_path, capsys):
    acl = tmp_path / "acl.txt"
    save_acl(acl, [enroll("alice", [0.4])])
    common = ["verify", "--acl", str(acl), "--threshold", "0.05", "--num-antennas", "16", "--snapshots", "500"]
    assert main(common + ["--identity", "alice", "--theta", "0.4", "--seed", "1"]) == 0
    assert "ACCEPT" in capsys.readouterr().out
    assert main(common + ["--identity", "alice", "--theta", "0.6", "--seed", "1"]) == 1
    assert "REJECT" in capsys.readouterr().out
    assert main(common + ["--identity", "mallory", "--theta", "0.4", "--seed", "1"]) == 2
    assert main(["verify", "--acl", str(tmp_path / "none.txt"), "--identity", "a", "--threshold", "0.05"]) == 2


def test_cli_sweep_far_frr(capsys):
    rc = main(
        [
            "sweep-far-frr",
            "--theta",
            "0.4",
            "--theta-hat",
            "0.1",
            "--snr-db",
            "10",
            "--thresholds",
            "0.05,0.5",
            "--trials",
            "5",
            "--num-antennas",
            "8",
            "--snapshots",
            "200",
            "--seed",
            "0",
        ]
    )
    out = capsys.readouterr().out.splitlines()
    assert rc == 0
    assert out[0] == "threshold_rad,far,frr"
    assert len(out) == 3


def test_cli_reproduce(tmp_path, capsys):
    rc = main(
        [
            "reproduce",
            "fig5",
            "--seed",
            "2",
            "--out",
            str(tmp_path),
        ]
    )
    out = capsys.readouterr().out
    assert rc == 0
    assert (tmp_path / "fig5__2.csv").exists()
    assert (tmp_path / "fig5__2.svg").exists()
    assert "[PASS]" in out


def test_cli_reproduce_env_default_out(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("AOA_PLA_OUT", str(tmp_path))
    rc = main(["reproduce", "fig5", "--seed", "5"])
    capsys.readouterr()
    assert rc == 0
    assert (tmp_path / "fig5__5.csv").exists()


def test_cli_reproduce_with_overrides_and_bad_key(tmp_path, capsys):
    rc = main(
        ["reproduce", "fig3", "--out", str(tmp_path), "--set", "phi_points=5", "--set", "trials=3000"]
    )
    capsys.readouterr()
    assert rc == 0
    rc = main(["reproduce", "fig3", "--out", str(tmp_path), "--set", "bogus=1"])
    err = capsys.readouterr().err
    assert rc == 2
    assert "bogus" in err


def test_cli_reproduce_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(f"[experiment]\nfigure = fig5\nseed = 9\noutput_dir = {tmp_path}\n")
    rc = main(["reproduce", "fig5", "--config", str(cfg)])
    capsys.readouterr()
    assert rc == 0
    assert (tmp_path / "fig5__9.csv").exists()
