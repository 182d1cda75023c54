import json

import pytest

from leechpart.cli import main


def run(argv, capsys):
    status = main(argv)
    captured = capsys.readouterr()
    return status, captured.out, captured.err


def test_golay_check(capsys):
    status, out, _ = run(["golay", "--check"], capsys)
    assert status == 0
    assert "759" in out and "729" in out
    assert "FAIL" not in out


def test_golay_dump(tmp_path, capsys):
    dump = tmp_path / "words.txt"
    status, _, _ = run(["golay", "--check", "--dump", str(dump)], capsys)
    assert status == 0
    lines = dump.read_text().splitlines()
    assert len(lines) == 4096
    assert all(len(line) == 24 and set(line) <= {"0", "1"} for line in lines)
    manifest = json.loads((tmp_path / "words.txt.manifest.json").read_text())
    assert str(dump) in manifest["output_digests"]


def test_enumerate_and_slice(tmp_path, capsys):
    out = tmp_path / "m1.txt"
    status, _, _ = run(["enumerate", "--dim", "1", "--out", str(out)], capsys)
    assert status == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 2
    assert all(len(line.split()) == 24 for line in lines)
    out8 = tmp_path / "m8.txt"
    status, _, _ = run(["slice", "--dim", "8", "--out", str(out8)], capsys)
    assert status == 0
    assert len(out8.read_text().splitlines()) == 240


def test_counts_all(capsys):
    status, out, _ = run(["counts", "--all"], capsys)
    assert status == 0
    assert "ALL PASS" in out
    assert out.count("FAIL") == 0


def test_stats_full_set_sample(capsys):
    status, out, _ = run(["stats", "--dim", "24", "--sample", "3"], capsys)
    assert status == 0
    assert "PASS" in out


def test_stats_dimension_eight_no_eights(capsys):
    status, out, _ = run(["stats", "--dim", "8", "--full-pairs", "--jobs", "2"],
                         capsys)
    assert status == 0
    assert "=    8" not in out and "=   -8" not in out


def test_export_dimacs(tmp_path, capsys):
    out = tmp_path / "g2.col"
    status, _, _ = run(["export", "--dim", "2", "--format", "dimacs",
                        "--out", str(out)], capsys)
    assert status == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "p edge 6 9"
    assert len(lines) == 10


def test_peel_writes_sets(tmp_path, capsys):
    out = tmp_path / "sets.txt"
    status, stdout, _ = run(["peel", "--dim", "12", "-k", "2",
                             "--out", str(out)], capsys)
    assert status == 0
    lines = out.read_text().splitlines()
    assert 1 <= len(lines) <= 2
    ids = [int(tok) for tok in lines[0].split()]
    assert all(i >= 1 for i in ids)


def test_color_and_verify_cycle(tmp_path, capsys):
    out = tmp_path / "c2.json"
    status, stdout, _ = run(["color", "--dim", "2", "-k", "3", "--seed", "1",
                             "--out", str(out)], capsys)
    assert status == 0
    assert "conflicts=0" in stdout
    doc = json.loads(out.read_text())
    assert doc["colors"] == 3 and doc["conflicts"] == 0
    assert doc["dimension"] == 2 and doc["seed"] == 1
    assert len(doc["assignment"]) == 6
    status, stdout, _ = run(["verify", "--dim", "2", "--coloring", str(out)],
                            capsys)
    assert status == 0
    assert "recount=0" in stdout


def test_verify_rejects_one_color_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({
        "dimension": 8, "colors": 1, "seed": 0, "strategy": "none",
        "iterations": 0, "conflicts": 0, "assignment": [0] * 240,
    }))
    status, stdout, _ = run(["verify", "--dim", "8", "--coloring", str(bad)],
                            capsys)
    assert status == 1
    assert "recount=6840" in stdout


def test_verify_rejects_wrong_dimension(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({
        "dimension": 4, "colors": 1, "seed": 0, "strategy": "none",
        "iterations": 0, "conflicts": 0, "assignment": [0] * 24,
    }))
    status, _, err = run(["verify", "--dim", "8", "--coloring", str(bad)],
                         capsys)
    assert status == 1
    assert "dimension" in err


def test_color_with_dsatur_strategy(tmp_path, capsys):
    out = tmp_path / "c4.json"
    status, stdout, _ = run(["color", "--dim", "4", "--seed", "1",
                             "--strategy", "dsatur", "--out", str(out)], capsys)
    assert status == 0
    doc = json.loads(out.read_text())
    assert doc["strategy"] == "dsatur"
    assert doc["conflicts"] == 0


def test_color_with_peeling(tmp_path, capsys):
    out = tmp_path / "c12.json"
    status, stdout, _ = run(["color", "--dim", "12", "-k", "10", "--seed", "1",
                             "--peel", "2", "--out", str(out)], capsys)
    assert status == 0
    assert "recount 0" in stdout
    doc = json.loads(out.read_text())
    assert doc["conflicts"] == 0
    assert "peel" in doc["strategy"]


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["color", "--dim", "2", "-k", "3", "--out", "x.json"])  # no --seed
    assert exc.value.code == 2


def test_invalid_dimension_exit_code(capsys):
    status, _, err = run(["slice", "--dim", "99", "--out", "/tmp/x.txt"], capsys)
    assert status == 2
    assert "dimension" in err


def test_hset_cli_round_trip(tmp_path, capsys):
    dat = tmp_path / "sel.dat"
    status, stdout, _ = run(["hset", "make", "--dim", "24",
                             "--rule", "canonical", "--out", str(dat)], capsys)
    assert status == 0
    assert dat.stat().st_size == 589_680
    status, stdout, _ = run(["hset", "validate", "--in", str(dat)], capsys)
    assert status == 0
    assert "PASS" in stdout and "min inner product: -16" in stdout
    txt = tmp_path / "sel.txt"
    status, _, _ = run(["hset", "decode", "--in", str(dat), "--out", str(txt)],
                       capsys)
    assert status == 0
    assert len(txt.read_text().splitlines()) == 98280
    dat2 = tmp_path / "sel2.dat"
    status, _, _ = run(["hset", "encode", "--in", str(txt), "--out", str(dat2)],
                       capsys)
    assert status == 0
    assert dat2.read_bytes() == dat.read_bytes()
    manifest = json.loads((tmp_path / "sel2.dat.manifest.json").read_text())
    assert str(txt) in manifest["input_digests"]


def test_hset_validate_rejects_truncated(tmp_path, capsys):
    bad = tmp_path / "trunc.dat"
    bad.write_bytes(b"\x55" * 600)
    status, _, err = run(["hset", "validate", "--in", str(bad)], capsys)
    assert status == 1
    assert "SizeMismatch" in err


def test_hset_make_seeded(tmp_path, capsys):
    a = tmp_path / "a.dat"
    b = tmp_path / "b.dat"
    for path in (a, b):
        status, _, _ = run(["hset", "make", "--dim", "24", "--rule", "seed:9",
                            "--out", str(path)], capsys)
        assert status == 0
    assert a.read_bytes() == b.read_bytes()
    manifest = json.loads((tmp_path / "a.dat.manifest.json").read_text())
    assert manifest["seeds"] == [9]
