import numpy as np
import pytest

from pocsrecon import cli
from pocsrecon.fileio import decode_pgm, read_image, read_observation
from pocsrecon.fourier import measure, radial_mask
from pocsrecon.phantom import shepp_logan

SMALL = """
sampling.n = 64
sampling.lines = 12
run.k_max = 15
filter.kind = {kind}
"""


def write_cfg(tmp_path, text, name="run.cfg"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_phantom_command(tmp_path):
    assert cli.main(["phantom", "--n", "256", "--out", str(tmp_path)]) == 0
    gray = decode_pgm((tmp_path / "phantom.pgm").read_bytes())
    assert gray.shape == (256, 256) and gray[0, 0] == 0
    assert np.array_equal(read_image(str(tmp_path / "phantom.fpr")), shepp_logan(256))


def test_phantom_unit_disk(tmp_path):
    assert cli.main(["phantom", "--n", "2", "--phantom", "unit_disk", "--out", str(tmp_path)]) == 0
    assert decode_pgm((tmp_path / "phantom.pgm").read_bytes()).tolist() == [[255, 255], [255, 255]]


def test_phantom_too_small(tmp_path, capsys):
    assert cli.main(["phantom", "--n", "1", "--out", str(tmp_path)]) == cli.EXIT_CONFIG
    assert "--n" in capsys.readouterr().err


def test_mask_command(tmp_path, capsys):
    assert cli.main(["mask", "--n", "8", "--lines", "2", "--out", str(tmp_path)]) == 0
    assert "sampled=15" in capsys.readouterr().out
    assert (tmp_path / "mask.fpm").exists()


@pytest.mark.parametrize("kind", ["perona_malik", "ti_haar"])
def test_reconstruct_outputs(tmp_path, capsys, kind):
    cfg = write_cfg(tmp_path, SMALL.format(kind=kind))
    assert cli.main(["reconstruct", "--config", cfg, "--out", str(tmp_path)]) == 0
    for name in ("recon.fpr", "recon.pgm", "trace.csv", "psnr.svg"):
        assert (tmp_path / name).exists()
    out = capsys.readouterr().out
    assert "final_psnr_db=" in out
    trace = (tmp_path / "trace.csv").read_text().splitlines()
    assert trace[0] == "k,psnr_db,data_residual,param_value" and len(trace) == 16
    assert out.split("final_psnr_db=")[1].split()[0] == trace[-1].split(",")[1]


def test_reconstruct_is_byte_reproducible(tmp_path):
    cfg = write_cfg(tmp_path, SMALL.format(kind="block_dct"))
    a, b = tmp_path / "a", tmp_path / "b"
    assert cli.main(["reconstruct", "--config", cfg, "--out", str(a)]) == 0
    assert cli.main(["reconstruct", "--config", cfg, "--out", str(b)]) == 0
    assert (a / "trace.csv").read_bytes() == (b / "trace.csv").read_bytes()
    assert (a / "recon.fpr").read_bytes() == (b / "recon.fpr").read_bytes()
    assert (a / "psnr.svg").read_bytes() == (b / "psnr.svg").read_bytes()


def test_invalid_config_exit_code(tmp_path, capsys):
    cfg = write_cfg(tmp_path, "filter.pm.time_step = 0.5\nbogus.key = 1\n")
    assert cli.main(["reconstruct", "--config", cfg, "--out", str(tmp_path)]) == cli.EXIT_CONFIG
    err = capsys.readouterr().err
    assert "bogus.key" in err


def test_divergence_exit_code(tmp_path, monkeypatch, capsys):
    import pocsrecon.recon as recon_mod
    monkeypatch.setattr(recon_mod, "apply_filter", lambda img, spec, k: img * np.nan)
    cfg = write_cfg(tmp_path, SMALL.format(kind="ti_haar"))
    assert cli.main(["reconstruct", "--config", cfg, "--out", str(tmp_path)]) == cli.EXIT_DIVERGED
    assert "k=0" in capsys.readouterr().err


def test_print_config_round_trip(tmp_path, capsys):
    cfg = write_cfg(tmp_path, SMALL.format(kind="regdiff"))
    assert cli.main(["reconstruct", "--config", cfg, "--print-config"]) == 0
    printed = capsys.readouterr().out
    again = write_cfg(tmp_path, printed, "printed.cfg")
    assert cli.main(["reconstruct", "--config", again, "--print-config"]) == 0
    assert capsys.readouterr().out == printed
    a, b = tmp_path / "a", tmp_path / "b"
    assert cli.main(["reconstruct", "--config", cfg, "--out", str(a)]) == 0
    assert cli.main(["reconstruct", "--config", again, "--out", str(b)]) == 0
    assert (a / "trace.csv").read_bytes() == (b / "trace.csv").read_bytes()


def test_measure_then_reconstruct(tmp_path):
    cfg = write_cfg(tmp_path, SMALL.format(kind="ti_haar"))
    assert cli.main(["measure", "--config", cfg, "--out", str(tmp_path / "m")]) == 0
    obs = read_observation(str(tmp_path / "m" / "observation.fpo"))
    direct = measure(shepp_logan(64), radial_mask(64, 12))
    assert np.array_equal(obs.values, direct.values)
    split = write_cfg(tmp_path, SMALL.format(kind="ti_haar") +
                      f"input.observation = {tmp_path / 'm' / 'observation.fpo'}\n"
                      f"input.reference = {tmp_path / 'm' / 'phantom.fpr'}\n", "split.cfg")
    assert cli.main(["reconstruct", "--config", split, "--out", str(tmp_path / "s")]) == 0
    assert cli.main(["reconstruct", "--config", cfg, "--out", str(tmp_path / "d")]) == 0
    assert (tmp_path / "s" / "trace.csv").read_bytes() == (tmp_path / "d" / "trace.csv").read_bytes()


def test_missing_input_is_io_error(tmp_path):
    cfg = write_cfg(tmp_path, SMALL.format(kind="ti_haar") + "input.observation = /nonexistent/obs.fpo\n")
    assert cli.main(["reconstruct", "--config", cfg, "--out", str(tmp_path)]) == cli.EXIT_IO


def test_sweep_single_cell_matches_reconstruct(tmp_path):
    base = SMALL.format(kind="ti_haar")
    sweep = write_cfg(tmp_path, base + "sweep.schedule.decay = 0.99\n", "sweep.cfg")
    assert cli.main(["sweep", "--config", sweep, "--out", str(tmp_path / "sw")]) == 0
    rows = (tmp_path / "sw" / "sweep_summary.csv").read_text().splitlines()
    assert rows[0] == "cell,params,terminal_psnr_db,iters_to_48db"
    assert len(rows) == 2
    single = write_cfg(tmp_path, base + "schedule.decay = 0.99\n", "single.cfg")
    assert cli.main(["reconstruct", "--config", single, "--out", str(tmp_path / "r")]) == 0
    trace = (tmp_path / "r" / "trace.csv").read_text()
    assert rows[1].split(",")[2] == trace.splitlines()[-1].split(",")[1]
    assert (tmp_path / "sw" / "cells" / "cell_0000_trace.csv").read_text() == trace


def test_sweep_grid_and_errors(tmp_path):
    text = SMALL.format(kind="perona_malik")
    text += "sweep.schedule.initial = 0.2, 0.5\nsweep.filter.pm.time_step = 0.25, 0.6\n"
    sweep = write_cfg(tmp_path, text, "grid.cfg")
    assert cli.main(["sweep", "--config", sweep, "--out", str(tmp_path / "g")]) == 0
    rows = (tmp_path / "g" / "sweep_summary.csv").read_text().splitlines()
    assert len(rows) == 5
    assert [r.split(",")[0] for r in rows[1:]] == ["0", "1", "2", "3"]
    assert "error" in rows[2] and "error" in rows[4]
    assert "error" not in rows[1] and "error" not in rows[3]


def test_sweep_too_large(tmp_path):
    values = ", ".join(str(i + 1) for i in range(40))
    sweep = write_cfg(tmp_path, f"sweep.run.k_max = {values}\nsweep.sampling.lines = {values}\n")
    assert cli.main(["sweep", "--config", sweep, "--out", str(tmp_path)]) == cli.EXIT_CONFIG
