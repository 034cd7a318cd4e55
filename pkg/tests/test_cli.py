import math
import os

import numpy as np
import pytest

from kfsteiner.cli import build_parser, main
from kfsteiner.polygons import Ball, load_polygon
from kfsteiner.rasters import GridSpec, rasterize, read_pgm, write_pgm
from kfsteiner.sequences import GAMMA


def run_cli(args, capsys=None):
    code = main(args)
    return code


def test_seq_kf_golden(tmp_path):
    out = tmp_path / "seq.csv"
    assert main(["seq", "--kind", "kf", "--n", "12", "--out", str(out)]) == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "k,x,theta"
    assert len(lines) == 13
    first = lines[1].split(",")
    assert float(first[1]) == pytest.approx(GAMMA, abs=1e-14)
    assert float(first[2]) == pytest.approx(math.pi * GAMMA, abs=1e-14)
    twelfth = lines[12].split(",")
    assert float(twelfth[1]) == pytest.approx(GAMMA**5 + GAMMA**3 + GAMMA, abs=1e-12)


def test_seq_vdc(tmp_path):
    out = tmp_path / "v.csv"
    assert main(["seq", "--kind", "vdc", "--base", "2", "--n", "4",
                 "--out", str(out)]) == 0
    xs = [float(line.split(",")[1]) for line in out.read_text().splitlines()[1:]]
    assert xs == [0.5, 0.25, 0.75, 0.125]


def test_seq_rejects_zero_n(capsys):
    assert main(["seq", "--kind", "kf", "--n", "0"]) == 2
    assert "usage error" in capsys.readouterr().err


def test_partition_gamma_table(tmp_path):
    out = tmp_path / "p.csv"
    assert main(["partition", "--alpha", "gamma", "--level", "5",
                 "--out", str(out)]) == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "level,t,l,s"
    assert lines[-1] == "5,13,8,5"


def test_partition_dyadic_table(tmp_path):
    out = tmp_path / "p.csv"
    assert main(["partition", "--alpha", "0.5", "--level", "3",
                 "--out", str(out)]) == 0
    assert out.read_text().strip().splitlines()[-1] == "3,8,8,0"


def test_partition_breakpoint_dump(tmp_path):
    out = tmp_path / "p.csv"
    dump = tmp_path / "bp.txt"
    assert main(["partition", "--alpha", "gamma", "--level", "3",
                 "--out", str(out), "--dump-breakpoints", str(dump)]) == 0
    vals = [float(v) for v in dump.read_text().split()]
    assert len(vals) == 6  # t_3 + 1 breakpoints
    assert vals[0] == 0.0 and vals[-1] == 1.0


def test_partition_rejects_bad_alpha(capsys):
    assert main(["partition", "--alpha", "1.2", "--level", "3"]) == 2


def test_disc_table(tmp_path):
    out = tmp_path / "d.csv"
    assert main(["disc", "--kind", "kf", "--ns", "100,1000", "--out", str(out)]) == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "N,d_star,d_extreme,normalized"
    rows = [line.split(",") for line in lines[1:]]
    assert [r[0] for r in rows] == ["100", "1000"]
    assert all(r[2] == "" for r in rows)  # extreme skipped without the flag
    assert float(rows[0][3]) <= 3.0


def test_disc_extreme_flag(tmp_path):
    out = tmp_path / "d.csv"
    assert main(["disc", "--kind", "kronecker", "--alpha", "0.5", "--ns", "100",
                 "--extreme", "--out", str(out)]) == 0
    row = out.read_text().strip().splitlines()[1].split(",")
    assert float(row[1]) >= 0.49
    assert float(row[2]) >= float(row[1]) - 1e-12


def test_disc_requires_ns(capsys):
    with pytest.raises(SystemExit) as err:
        main(["disc", "--kind", "kf"])
    assert err.value.code == 2


def test_symmetrize_polygon(tmp_path):
    src = tmp_path / "sq.txt"
    src.write_text("0 0\n1 0\n1 1\n0 1\n")
    dst = tmp_path / "out.txt"
    assert main(["symmetrize", "--in", str(src), "--x", "0.5",
                 "--out", str(dst)]) == 0
    poly = load_polygon(dst)
    ys = sorted(poly.vertices[:, 1])
    assert ys[0] == pytest.approx(-0.5, abs=1e-12)
    assert ys[-1] == pytest.approx(0.5, abs=1e-12)


def test_symmetrize_raster_ball_fixed(tmp_path):
    grid = GridSpec.cover(1.0, n=128)
    ball = rasterize(Ball(0.8), grid)
    src = tmp_path / "ball.pgm"
    write_pgm(src, ball)
    dst = tmp_path / "out.pgm"
    assert main(["symmetrize", "--in", str(src), "--theta", "0.9",
                 "--out", str(dst)]) == 0
    back = read_pgm(dst)
    gap = np.abs(back.occ - ball.occ).sum() * grid.h**2
    assert gap < 8 * grid.h * 2 * math.pi * 0.8


def test_symmetrize_rejects_both_angles(tmp_path, capsys):
    src = tmp_path / "sq.txt"
    src.write_text("0 0\n1 0\n1 1\n0 1\n")
    with pytest.raises(SystemExit) as err:
        main(["symmetrize", "--in", str(src), "--x", "0.5", "--theta", "1.0",
              "--out", str(tmp_path / "o.txt")])
    assert err.value.code == 2


def test_symmetrize_unparseable_input(tmp_path, capsys):
    bad = tmp_path / "bad.bin"
    bad.write_bytes(b"\x00\x01\x02junk")
    code = main(["symmetrize", "--in", str(bad), "--x", "0.5",
                 "--out", str(tmp_path / "o.txt")])
    assert code == 1
    assert "error:" in capsys.readouterr().err


def test_process_writes_trace(tmp_path):
    outdir = tmp_path / "run"
    assert main(["process", "--seed", "builtin:square", "--kind", "kf",
                 "--steps", "10", "--cadence", "5", "--out", str(outdir)]) == 0
    lines = (outdir / "trace.csv").read_text().strip().splitlines()
    assert lines[0] == "step,x,theta,area,mu,d1_to_ball,hausdorff,perimeter"
    assert [line.split(",")[0] for line in lines[1:]] == ["0", "5", "10"]


def test_process_frames(tmp_path):
    outdir = tmp_path / "run"
    assert main(["process", "--seed", "builtin:annulus", "--kind", "kf",
                 "--steps", "4", "--cadence", "2", "--resolution", "96",
                 "--frames", "--out", str(outdir)]) == 0
    names = sorted(os.listdir(outdir))
    assert "frame_0.pgm" in names and "frame_4.pgm" in names
    read_pgm(outdir / "frame_4.pgm")


def test_process_unknown_builtin(tmp_path, capsys):
    code = main(["process", "--seed", "builtin:blob", "--kind", "kf",
                 "--steps", "3", "--out", str(tmp_path)])
    assert code == 1
    msg = capsys.readouterr().err
    assert "square" in msg and "annulus" in msg  # lists the builtins


def test_compare_writes_csv(tmp_path):
    outdir = tmp_path / "cmp"
    assert main(["compare", "--seed", "builtin:square", "--kinds", "kf,vdc2",
                 "--steps", "6", "--cadence", "3", "--out", str(outdir)]) == 0
    lines = (outdir / "compare.csv").read_text().strip().splitlines()
    assert lines[0].split(",") == [
        "step", "d1_to_ball:kf", "mu:kf", "d1_to_ball:vdc2", "mu:vdc2"
    ]
    assert len(lines) == 4


def test_identical_argv_byte_identical_outputs(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    argv = ["seq", "--kind", "kf", "--n", "500"]
    assert main(argv + ["--out", str(a)]) == 0
    assert main(argv + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_help_on_every_subcommand(capsys):
    parser = build_parser()
    for cmd in ("seq", "partition", "disc", "symmetrize", "process", "compare"):
        with pytest.raises(SystemExit) as err:
            parser.parse_args([cmd, "--help"])
        assert err.value.code == 0
        assert "--" in capsys.readouterr().out
