"""CLI contract: flags, exit codes, stream separation, determinism."""

import json
import os
import subprocess
import sys

import pytest

from afkit.cli import build_parser, main


def run_main(args, capsys=None):
    code = main(args)
    if capsys is None:
        return code, None, None
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parser_defaults():
    ns = build_parser().parse_args([])
    assert ns.mode == "all"
    assert ns.seed == 0 and ns.trials == 5 and ns.n == 3
    assert ns.r == 2 and ns.m == 2 and ns.grid == 11
    assert ns.tol == 1e-9 and ns.entry_bound == 5
    assert ns.out is None and ns.fixture is None
    assert ns.exact_only is False


def test_invalid_mode_exits_2():
    with pytest.raises(SystemExit) as exc:
        build_parser().parse_args(["--mode", "wrong"])
    assert exc.value.code == 2


def test_run_ok_with_out_file(tmp_path):
    out = tmp_path / "run.jsonl"
    code = main(
        ["--mode", "discriminant", "--seed", "7", "--trials", "4", "--out", str(out)]
    )
    assert code == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 5
    summary = json.loads(lines[-1])
    assert summary["type"] == "summary"
    assert summary["failures"] == 0


def test_stdout_is_pure_jsonl(capsys):
    code, outs, errs = run_main(
        ["--mode", "shephard", "--trials", "3", "--seed", "1"], capsys
    )
    assert code == 0
    for line in outs.splitlines():
        json.loads(line)
    assert "elapsed" in errs
    assert "3 instances, 0 failures" in errs


def test_determinism_across_invocations(tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    args = ["--mode", "all", "--seed", "9", "--trials", "2", "--n", "3"]
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_failing_fixture_exits_1(tmp_path, capsys):
    fx = tmp_path / "bad.json"
    fx.write_text(json.dumps({"r": 1, "d": [["100", "3"], ["3", "1"]]}))
    code, outs, errs = run_main(
        ["--mode", "shephard", "--in", str(fx)], capsys
    )
    assert code == 1
    lines = outs.splitlines()
    assert json.loads(lines[-1])["failures"] == 1
    assert json.loads(lines[0])["witness"] == [1, "-91"]


def test_config_errors_exit_2(tmp_path, capsys):
    cases = [
        ["--trials", "0"],
        ["--mode", "bm", "--exact-only"],
        ["--mode", "volume", "--n", "5"],
        ["--in", str(tmp_path / "missing.json")],
    ]
    for args in cases:
        code, outs, errs = run_main(args, capsys)
        assert code == 2
        assert outs == ""
        assert "configuration error" in errs

    broken = tmp_path / "broken.json"
    broken.write_text("{oops")
    code, outs, errs = run_main(["--mode", "shephard", "--in", str(broken)], capsys)
    assert code == 2
    assert "configuration error" in errs

    fx = tmp_path / "ok.json"
    fx.write_text(json.dumps({"r": 1, "d": [["8", "8"], ["8", "8"]]}))
    code, outs, errs = run_main(["--mode", "all", "--in", str(fx)], capsys)
    assert code == 2


def test_exit_2_leaves_no_out_file(tmp_path):
    out = tmp_path / "never.jsonl"
    assert main(["--trials", "0", "--out", str(out)]) == 2
    assert not out.exists()


def test_console_script_subprocess(tmp_path):
    args = [
        sys.executable,
        "-m",
        "afkit.cli",
        "--mode",
        "discriminant",
        "--seed",
        "11",
        "--trials",
        "3",
    ]
    env = dict(os.environ)
    env.pop("AFKIT_THREADS", None)
    serial = subprocess.run(args, capture_output=True, text=True, env=env)
    assert serial.returncode == 0
    env["AFKIT_THREADS"] = "2"
    threaded = subprocess.run(args, capture_output=True, text=True, env=env)
    assert threaded.returncode == 0
    assert serial.stdout == threaded.stdout
    assert "elapsed" in serial.stderr
