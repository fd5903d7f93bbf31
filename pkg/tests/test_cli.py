"""Command-line surface: experiment runs, CSV schemas, determinism,
parameter validation, config files, and the generic designer."""

import numpy as np
import pytest

from springctl.cli import main


def _read_csv(path):
    with open(path) as fh:
        header = fh.readline().strip().split(",")
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    return header, data


def test_list_enumerates_experiments(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    for name in ("fig1", "fig2", "fig3", "table1", "icr", "fig6", "fig7"):
        assert name in out
    assert "design methods" in out


def test_fig1_schema_and_determinism(tmp_path):
    args = ["run", "fig1", "--set", "n_omega=41", "-o", str(tmp_path / "a")]
    assert main(args) == 0
    radius = tmp_path / "a" / "fig1" / "fig1_radius.csv"
    phase = tmp_path / "a" / "fig1" / "fig1_phase.csv"
    header, data = _read_csv(radius)
    assert header == ["omega", "radius_exact", "radius_stationary"]
    assert data.shape == (41, 3)
    header2, _ = _read_csv(phase)
    assert header2 == ["omega", "phase_exact", "phase_stationary"]

    assert main(["run", "fig1", "--set", "n_omega=41",
                 "-o", str(tmp_path / "b")]) == 0
    a = (tmp_path / "a" / "fig1" / "fig1_radius.csv").read_bytes()
    b = (tmp_path / "b" / "fig1" / "fig1_radius.csv").read_bytes()
    assert a == b


def test_unknown_parameter_names_valid_keys(tmp_path, capsys):
    code = main(["run", "icr", "--set", "lamda=3", "-o", str(tmp_path)])
    assert code == 1
    err = capsys.readouterr().err
    assert "lamda" in err
    assert "lambda" in err  # the valid spelling is offered


def test_config_file_applies_before_set(tmp_path):
    cfg = tmp_path / "icr.cfg"
    cfg.write_text("# comment line\n"
                   "mu = 0.2\n"
                   "with_full = 0\n"
                   "with_adiabatic = 0\n"
                   "n_ions = 5\n"
                   "n_design_freqs = 30\n")
    out = tmp_path / "out"
    assert main(["run", "icr", "--config", str(cfg),
                 "--set", "mu=0.1", "-o", str(out)]) == 0
    summary = dict(
        line.split(" = ", 1)
        for line in (out / "icr" / "summary.txt").read_text().splitlines())
    assert float(summary["mu"]) == 0.1      # --set wins over config
    assert int(summary["n_ions"]) == 5


def test_config_file_rejects_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("e0_vm = 10\n")
    assert main(["run", "icr", "--config", str(cfg), "-o", str(tmp_path)]) == 1
    assert "e0_vm" in capsys.readouterr().err


def test_output_dir_env_var(tmp_path, monkeypatch):
    monkeypatch.setenv("SPRINGCTL_OUTPUT", str(tmp_path / "envout"))
    monkeypatch.chdir(tmp_path)
    assert main(["run", "fig1", "--set", "n_omega=11"]) == 0
    assert (tmp_path / "envout" / "fig1" / "summary.txt").exists()


def test_design_oct1_single_resonant_spring_constant_field(tmp_path):
    assert main(["design", "oct1", "--set", "n=1", "--set", "band_min=0",
                 "--set", "band_max=0", "--set", "t_f=24",
                 "--set", "n_time=51", "-o", str(tmp_path)]) == 0
    _, data = _read_csv(tmp_path / "design-oct1" / "oct1_pulse.csv")
    assert np.allclose(data[:, 1], 1.0 / 24.0, atol=1e-12)


def test_design_sta_zero_ends_field_starts_at_zero(tmp_path):
    assert main(["design", "sta", "--set", "n=2", "--set", "t_f=24",
                 "--set", "n_time=41", "-o", str(tmp_path)]) == 0
    _, data = _read_csv(tmp_path / "design-sta" / "sta_pulse.csv")
    assert abs(data[0, 1]) < 1e-12
    header, sweep = _read_csv(tmp_path / "design-sta" / "sta_sweep.csv")
    assert header == ["omega", "distance", "modulus", "arg"]


def test_design_adiabatic_first_sample_is_one(tmp_path):
    assert main(["design", "adiabatic", "--set", "n_time=21",
                 "--set", "n_omega=11", "-o", str(tmp_path)]) == 0
    _, data = _read_csv(tmp_path / "design-adiabatic" / "adiabatic_pulse.csv")
    assert data[0, 1] == pytest.approx(1.0, abs=1e-15)


def test_run_fig2_small(tmp_path):
    assert main(["run", "fig2", "--set", "n_values=2,4",
                 "--set", "n_omega=21", "--set", "n_time=51",
                 "-o", str(tmp_path)]) == 0
    header, data = _read_csv(tmp_path / "fig2" / "fig2_distance.csv")
    assert header == ["omega", "d_N2", "d_N4"]
    summary = (tmp_path / "fig2" / "summary.txt").read_text()
    assert "u_max_N2" in summary


def test_run_table1_contains_all_cells(tmp_path):
    assert main(["run", "table1", "-o", str(tmp_path)]) == 0
    text = (tmp_path / "table1" / "table1.csv").read_text()
    lines = text.strip().split("\n")
    assert lines[0] == "method,grid,n_springs,u_max,energy"
    assert len(lines) == 1 + 2 * 2 * 2  # two grids, two N, two methods
    summary = (tmp_path / "table1" / "summary.txt").read_text()
    for key in ("u_max_STA_N4", "E_STA_N4", "u_max_OCT_N4", "E_OCT_N4",
                "u_max_STA_N6", "E_STA_N6", "u_max_OCT_N6", "E_OCT_N6"):
        assert key in summary


def test_run_fig6_small(tmp_path):
    assert main(["run", "fig6", "--set", "n_values=2",
                 "--set", "n_omega=9", "--set", "n_steps=1024",
                 "-o", str(tmp_path)]) == 0
    header, data = _read_csv(tmp_path / "fig6" / "fig6_fidelity.csv")
    assert header == ["omega", "J_N2"]
    assert data.shape == (9, 2)


def test_run_fig7_small(tmp_path):
    assert main(["run", "fig7", "--set", "n_steps=2048",
                 "--set", "n_frames=101", "-o", str(tmp_path)]) == 0
    header, data = _read_csv(tmp_path / "fig7" / "fig7_z.csv")
    assert header == ["t", "z_first", "z_second"]
    assert data[0, 1] == pytest.approx(1.0)   # starts at the north pole
    assert data[-1, 1] < -0.99
    assert data[-1, 2] > 0.99


def test_run_icr_rwa_only_schema(tmp_path):
    assert main(["run", "icr", "--set", "with_full=0",
                 "--set", "with_adiabatic=1", "--set", "n_ions=7",
                 "--set", "n_design_freqs=30", "-o", str(tmp_path)]) == 0
    header, data = _read_csv(tmp_path / "icr" / "icr_sweep.csv")
    assert header == ["f_khz", "r_mm_rwa", "r_mm_full", "phi_rad_rwa",
                      "phi_rad_full"]
    assert data.shape == (7, 5)
    assert np.all(np.isnan(data[:, 2]))  # full columns empty when disabled
    assert (tmp_path / "icr" / "icr_adiabatic_sweep.csv").exists()


def test_run_icr_with_worker_pool_matches_serial(tmp_path):
    args = ["run", "icr", "--set", "n_ions=2", "--set", "with_adiabatic=0",
            "--set", "n_design_freqs=20", "--set", "steps_per_period=100",
            "--set", "f_min_khz=495", "--set", "f_max_khz=505"]
    assert main(args + ["-o", str(tmp_path / "serial")]) == 0
    assert main(args + ["--workers", "2", "-o", str(tmp_path / "pool")]) == 0
    a = (tmp_path / "serial" / "icr" / "icr_sweep.csv").read_bytes()
    b = (tmp_path / "pool" / "icr" / "icr_sweep.csv").read_bytes()
    assert a == b


def test_run_custom_delegates_to_designer(tmp_path):
    assert main(["run", "custom", "--set", "method=oct2", "--set", "n=2",
                 "--set", "lambda=0.01", "--set", "n_time=31",
                 "--set", "n_omega=11", "-o", str(tmp_path)]) == 0
    assert (tmp_path / "custom" / "oct2_pulse.csv").exists()
    summary = (tmp_path / "custom" / "summary.txt").read_text()
    assert "method = oct2" in summary


def test_run_custom_unknown_method(tmp_path, capsys):
    assert main(["run", "custom", "--set", "method=nope",
                 "-o", str(tmp_path)]) == 1
    assert "nope" in capsys.readouterr().err
