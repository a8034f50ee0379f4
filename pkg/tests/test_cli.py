import json
import subprocess
import sys

import pytest

from cubecolor.certificate import C0
from cubecolor.cli import main
from cubecolor.hamming import Code, format_codelist
from cubecolor.search import Partition, format_partition


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def reports(path):
    return [json.loads(line) for line in (path / "reports.jsonl").read_text().splitlines()]


def test_verify_builtin(capsys, tmp_path):
    code, out, _ = run(["verify", "--builtin-certificate", "--out", str(tmp_path)], capsys)
    assert code == 0
    assert "chi(Q8^2) = 13" in out and "chi(Q17^2) <= 26" in out
    assert "automorphism group order: 48" in out and out.rstrip().endswith("VERIFIED")
    [rep] = reports(tmp_path)
    assert rep["subcommand"] == "verify" and rep["exit_status"] == 0
    assert rep["result"]["aut_order"] == 48 and rep["version"]
    for key in ("parameters", "wall_time", "outputs", "input_digests"):
        assert key in rep


def test_verify_corrupted_file(capsys, tmp_path, certificate):
    P = certificate
    codes = [list(c.words) for c in P.codes]
    # Move a word at distance 2 from a word of C0 into C0.
    w = codes[0][0] ^ 0b110000000
    owner = next(i for i, ws in enumerate(codes) if w in ws)
    codes[owner].remove(w)
    codes[0].append(w)
    text = format_partition(Partition.of(9, [Code.of(9, ws) for ws in codes]))
    f = tmp_path / "bad.txt"
    f.write_text(text)
    code, out, err = run(["verify", "--partition", str(f)], capsys)
    assert code == 1 and "VERIFICATION FAILED" in out
    rep = json.loads(err.strip().splitlines()[-1])
    assert rep["exit_status"] == 1 and str(f) in rep["input_digests"]


def test_verify_roundtrip_file(capsys, tmp_path, certificate):
    f = tmp_path / "p.txt"
    f.write_text(format_partition(certificate))
    code, out, _ = run(["verify", "--partition", str(f)], capsys)
    assert code == 0 and "VERIFIED" in out


def test_bounds_example(capsys):
    code, out, _ = run(["bounds", "--n", "8", "--k", "2", "--A", "20"], capsys)
    assert code == 0
    assert "lower bound: 13" in out and "upper bound: 16" in out
    code, out, _ = run(["bounds", "--n", "8", "--A", "20", "--colors", "13", "--doubling", "1"], capsys)
    assert code == 0 and "chi(Q17^2) <= 26" in out


def test_usage_errors(capsys, tmp_path):
    assert run(["frobnicate"], capsys)[0] == 2
    assert run(["bounds", "--n", "8", "--A", "20", "--bogus"], capsys)[0] == 2
    code, _, err = run(["bounds", "--n", "8"], capsys)
    assert code == 2 and "usage" in err
    assert run(["verify", "--partition", str(tmp_path / "missing.txt")], capsys)[0] == 2
    assert run(["bounds", "--n", "8", "--A", "20", "--doubling", "1"], capsys)[0] == 2
    assert run(["classify", "--n", "7", "--M", "8", "--jobs", "0"], capsys)[0] == 2


def test_canon_output(capsys, tmp_path):
    f = tmp_path / "c0.txt"
    f.write_text(format_codelist(C0))
    code, out, _ = run(["canon", "--input", str(f), "--out", str(tmp_path / "o")], capsys)
    assert code == 0 and "certificate:" in out
    first = (tmp_path / "o" / "canonical.txt").read_text()
    run(["canon", "--input", str(f), "--out", str(tmp_path / "o2")], capsys)
    assert (tmp_path / "o2" / "canonical.txt").read_text() == first
    [rep] = reports(tmp_path / "o")
    assert len(rep["outputs"]) == 2 and str(f) in rep["input_digests"]


def test_maxcode_and_classify(capsys, tmp_path):
    code, out, _ = run(["maxcode", "--n", "7", "--d", "4", "--even"], capsys)
    assert code == 0 and "maximum even code, n = 7, d = 4: 8" in out
    code, out, _ = run(["maxcode", "--n", "5", "--d", "4", "--even", "--enumerate", "2",
                        "--anchor-zero"], capsys)
    assert code == 0 and "codes listed: 5" in out
    code, out, _ = run(["classify", "--n", "7", "--M", "8", "--out", str(tmp_path)], capsys)
    assert code == 0 and "even (7,8,4) codes:" in out


def test_extend_certificate(capsys, tmp_path):
    code, out, _ = run(["extend", "--builtin-certificate", "--out", str(tmp_path)], capsys)
    assert code == 0
    assert "size tuples: 1820" in out and out.rstrip().endswith("no extension")
    assert not list(tmp_path.glob("extension_*.txt"))


def test_search_and_doublecount_sandbox(capsys, tmp_path, sandbox_run):
    ck = tmp_path / "ck"
    code, out, _ = run(["search", "--case", "sandbox", "--checkpoint", str(ck), "--jobs", "1"], capsys)
    assert code == 0 and "case sandbox7" in out
    assert len(list((ck / "case_sandbox7").glob("*.json"))) == 3
    # Class representatives from the shared fixture keep isomorph rejection cheap.
    reps = tmp_path / "reps"
    reps.mkdir()
    for i, (P, _) in enumerate(sandbox_run[2]):
        (reps / f"p{i:03d}.txt").write_text(format_partition(P))
    code, out, _ = run(["doublecount", "--case", "sandbox", "--checkpoint", str(ck),
                        "--reps", str(reps)], capsys)
    assert code == 0 and out.rstrip().endswith("PASS")


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cubecolor.cli", "bounds", "--n", "10", "--A", "72"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "lower bound: 15" in proc.stdout
