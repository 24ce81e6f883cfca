"""End-to-end checks of the command line interface."""
from __future__ import annotations

import json
import os

import pytest

from conftest import PROGRAMS_DIR

from galkit import catalog, fileio
from galkit.cli import main
from galkit.functions import AbstractFn, ConcreteFn


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_builtin_prints_a_domain(capsys):
    code, out, _ = run(capsys, "builtin", "parity", "--bound", "8")
    assert code == 0
    data = json.loads(out)
    assert data["kind"] == "cgc"
    assert data["carrier"]["ints"]["mode"] == "modular"


def test_builtin_emit_and_transform(tmp_path, capsys):
    domain = tmp_path / "sign.json"
    code, out, _ = run(
        capsys, "builtin", "sign_pgi", "--bound", "6", "--emit", str(domain)
    )
    assert code == 0 and domain.exists()
    out_path = tmp_path / "cgp.json"
    code, _, _ = run(
        capsys, "transform", "gc-cgp", str(domain), "--out", str(out_path)
    )
    assert code == 0
    back = fileio.load_domain(str(out_path))
    assert back.kind == "cgp"


def test_bca_subcommand(tmp_path, capsys):
    domain = tmp_path / "sign.json"
    fileio.save_domain(catalog.builtin("sign_pgi", 6), str(domain))
    fn = tmp_path / "neg.json"
    carrier = catalog.builtin("sign_pgi", 6).carrier
    fileio.save_fn(
        "concrete",
        ConcreteFn(1, {v: carrier.clamp(-int(v)) for v in carrier.values}),
        str(fn),
    )
    code, out, _ = run(capsys, "bca", str(domain), str(fn))
    assert code == 0
    table = json.loads(out)["table"]
    assert table["<0"] == ">0" and table["≥0"] == "≤0"


def test_soundcheck_subcommand(tmp_path, capsys):
    C = catalog.builtin("parity", 6)
    domain = tmp_path / "parity.json"
    fileio.save_domain(C, str(domain))
    cf = tmp_path / "succ.json"
    fileio.save_fn(
        "concrete",
        ConcreteFn(1, {v: C.carrier.clamp(int(v) + 1) for v in C.carrier.values}),
        str(cf),
    )
    af = tmp_path / "flip.json"
    fileio.save_fn(
        "abstract",
        AbstractFn(1, {"even": "odd", "odd": "even"}),
        str(af),
    )
    code, out, _ = run(
        capsys, "soundcheck", str(domain), str(cf), str(af), "--complete"
    )
    assert code == 0
    assert "sound/ημ: pass" in out and "complete/μμ: pass" in out

    bad = tmp_path / "stuck.json"
    fileio.save_fn(
        "abstract",
        AbstractFn(1, {"even": "even", "odd": "even"}),
        str(bad),
    )
    code, out, _ = run(capsys, "soundcheck", str(domain), str(cf), str(bad))
    assert code == 1
    assert "fail at" in out


def test_fuzz_subcommand(capsys):
    code, out, _ = run(
        capsys, "fuzz", "cgc", "--cases", "5", "--seed", "3",
        "--amax", "5", "--bmax", "5",
    )
    assert code == 0
    assert "5 passed, 0 failed" in out


def test_analyze_subcommand_text_and_json(capsys):
    path = os.path.join(PROGRAMS_DIR, "p01_doubling_loop.while")
    code, out, _ = run(capsys, "analyze", path)
    assert code == 0
    assert "{x ↦ >0, y ↦ 2}" in out
    code, out, _ = run(capsys, "analyze", path, "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["points"]["end"] == {"x": ">0", "y": "2"}


def test_analyze_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.while"
    bad.write_text("x := ;\n", encoding="utf-8")
    code, _, err = run(capsys, "analyze", str(bad))
    assert code == 2 and "parse error" in err


def test_analyze_domain_error_exit_code(capsys):
    path = os.path.join(PROGRAMS_DIR, "p01_doubling_loop.while")
    code, _, err = run(capsys, "analyze", path, "--domain", "parity")
    assert code == 3 and "domain error" in err


def test_unknown_domain_file_reports_error(tmp_path, capsys):
    missing = tmp_path / "missing.json"
    with pytest.raises(FileNotFoundError):
        run(capsys, "transform", "cgc-pgc", str(missing))
