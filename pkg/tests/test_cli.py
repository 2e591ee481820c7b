import numpy as np
import pytest

from dgadvect.cli import main, parse_config_file


def _read(path):
    return path.read_bytes()


def test_presets_lists_all(capsys):
    assert main(["presets"]) == 0
    out = capsys.readouterr().out
    for name in ("ex1", "ex2", "ex3", "ex4"):
        assert name in out


def test_run_writes_artifacts_and_is_deterministic(tmp_path):
    d1, d2 = tmp_path / "a", tmp_path / "b"
    args = ["run", "--preset", "ex1", "--k", "1", "--N", "16,32", "--profile"]
    assert main(args + ["--out", str(d1)]) == 0
    assert main(args + ["--out", str(d2)]) == 0
    names = [
        "convergence_ex1_k1.csv",
        "profile_ex1_k1_N16_c0.csv",
        "profile_ex1_k1_N32_c0.csv",
        "spectrum_ex1_k1.csv",
        "manifest.txt",
    ]
    for n in names:
        assert (d1 / n).exists(), n
        if n.endswith(".csv"):
            assert _read(d1 / n) == _read(d2 / n)


def test_manifest_round_trip(tmp_path):
    d1, d2 = tmp_path / "a", tmp_path / "b"
    assert main(["run", "--preset", "ex2", "--k", "1", "--N", "16,32",
                 "--out", str(d1)]) == 0
    assert main(["run", "--config", str(d1 / "manifest.txt"), "--out", str(d2)]) == 0
    assert _read(d1 / "convergence_ex2_k1.csv") == _read(d2 / "convergence_ex2_k1.csv")


def test_transient_profile_dump(tmp_path):
    d = tmp_path / "t"
    assert main(["run", "--preset", "ex3", "--k", "1", "--N", "16", "--profile",
                 "--out", str(d)]) == 0
    f = d / "transient_ex3_k1_N16.csv"
    assert f.exists()
    header = f.read_text().splitlines()[0]
    assert header == "t,scaled_linf,init_kind"


def test_vector_run_profiles_per_component(tmp_path):
    d = tmp_path / "v"
    assert main(["run", "--preset", "ex4", "--k", "1", "--N", "16", "--profile",
                 "--out", str(d)]) == 0
    assert (d / "profile_ex4_k1_N16_c0.csv").exists()
    assert (d / "profile_ex4_k1_N16_c1.csv").exists()


def test_config_file_errors(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("preset = ex1\nwhatever = 3\n")
    assert main(["run", "--config", str(cfg)]) == 2

    cfg2 = tmp_path / "bad2.cfg"
    cfg2.write_text("preset = ex1\nk 2\n")  # missing '='
    assert main(["run", "--config", str(cfg2)]) == 2

    assert main(["run", "--config", str(tmp_path / "missing.cfg")]) == 2


def test_invalid_flag_combinations():
    assert main(["run", "--preset", "ex1", "--k", "1", "--N", "4"]) == 2  # N too small
    assert main(["run", "--preset", "ex4", "--k", "1", "--N", "16", "--flux", "upwind"]) == 2
    assert main(["run", "--preset", "ex1", "--k", "9", "--N", "64"]) == 2
    assert main(["run", "--preset", "ex2", "--k", "1", "--N", "15"]) == 2  # kinks need even N


def test_config_line_numbers(tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("preset = ex1\nbogus_key = 1\n")
    with pytest.raises(Exception):
        parse_config_file(str(cfg))
    try:
        parse_config_file(str(cfg))
    except Exception as exc:
        assert ":2:" in str(exc)


def test_runtime_failure_exit_code(monkeypatch):
    import dgadvect.cli as cli

    def boom(*a, **k):
        raise RuntimeError("synthetic")

    monkeypatch.setattr(cli, "run_experiment", boom)
    assert main(["run", "--preset", "ex1", "--k", "1", "--N", "16"]) == 3


def test_spectrum_summary(tmp_path, capsys):
    assert main(["spectrum", "--k", "2", "--flux", "upwind", "--N", "32",
                 "--out", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "alpha = 3" in out
    assert (tmp_path / "spectrum_k2_upwind.csv").exists()

    assert main(["spectrum", "--k", "1", "--flux", "lf", "--M", "2", "--a", "1",
                 "--N", "16", "--out", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    # odd k: fitted constant is C_1 / M = 1/144
    assert "0.0069" in out

    assert main(["spectrum", "--k", "1", "--flux", "lf", "--M", "1", "--a", "1",
                 "--N", "16", "--out", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "coincides with upwind" in out


def test_csv_float_format(tmp_path):
    d = tmp_path / "f"
    assert main(["run", "--preset", "ex1", "--k", "1", "--N", "16", "--out", str(d)]) == 0
    body = (d / "convergence_ex1_k1.csv").read_text().splitlines()[1]
    first_float = body.split(",")[1]
    assert len(first_float.replace("-", "").replace(".", "").replace("e", "").lstrip("0")) >= 15
