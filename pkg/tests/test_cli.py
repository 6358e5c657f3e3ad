"""CLI surface: fixture generation, check runs, report merging, determinism."""

import json
import os

from gerbekit.cli import main
from gerbekit.cochain import load_fields
from gerbekit.simplicial import SimplicialComplex


def test_gen_builtin_delta4(tmp_path, capsys):
    out = tmp_path / "delta4.json"
    assert main(["gen", "--builtin", "delta4", "--out", str(out)]) == 0
    cx = SimplicialComplex.from_json(out.read_text())
    assert cx.n_vertices == 5 and len(cx.triangles) == 10


def test_gen_builtin_boundary5(tmp_path):
    out = tmp_path / "b5.json"
    assert main(["gen", "--builtin", "boundary5", "--out", str(out)]) == 0
    cx = SimplicialComplex.from_json(out.read_text())
    assert len(cx.four_cells) == 6


def test_gen_file_round_trip(tmp_path):
    first = tmp_path / "a.json"
    second = tmp_path / "b.json"
    main(["gen", "--builtin", "delta3", "--out", str(first)])
    assert main(["gen", "--file", str(first), "--out", str(second)]) == 0
    assert first.read_text() == second.read_text()


def test_gen_unknown_builtin(tmp_path):
    assert main(["gen", "--builtin", "dodecahedron",
                 "--out", str(tmp_path / "x.json")]) == 2


def test_seed_writes_loadable_fields(tmp_path):
    out = tmp_path / "fields.json"
    assert main(["seed", "--kind", "gerbe", "--group", "so3", "--eps", "0.05",
                 "--seed", "3", "--complex", "delta3", "--out", str(out)]) == 0
    group, sections = load_fields(out)
    assert group.name == "so3"
    assert set(sections) == {"edges", "triangles"}


def test_check_writes_reports_and_exit_code(tmp_path):
    out = tmp_path / "reports"
    rc = main(["check", "bianchi-exact", "--n-seeds", "2", "--out", str(out)])
    assert rc == 0
    summary = json.loads((out / "bianchi-exact.json").read_text())
    assert summary["pass"] is True
    assert (out / "bianchi-exact.csv").read_text().startswith("check,group,cell")


def test_check_unknown_name():
    assert main(["check", "no-such-check"]) == 2


def test_check_determinism_byte_identical(tmp_path):
    """Same config, same seed: byte-identical CSV output."""
    out1, out2 = tmp_path / "r1", tmp_path / "r2"
    for out in (out1, out2):
        main(["check", "gauge", "--n-seeds", "2", "--seed", "11",
              "--out", str(out)])
    assert (out1 / "gauge.csv").read_bytes() == (out2 / "gauge.csv").read_bytes()


def test_report_merges_and_is_idempotent(tmp_path):
    out = tmp_path / "reports"
    main(["check", "bianchi-exact", "--n-seeds", "1", "--out", str(out)])
    main(["check", "zigzag", "--n-seeds", "1", "--out", str(out)])
    assert main(["report", "--out", str(out)]) == 0
    merged = (out / "report.csv").read_text()
    assert merged.count("check,group,cell") == 1
    assert "bianchi-exact" in merged and "zigzag" in merged
    main(["report", "--out", str(out)])
    assert (out / "report.csv").read_text() == merged


def test_report_empty_dir_gives_header_only(tmp_path):
    out = tmp_path / "empty"
    os.makedirs(out)
    assert main(["report", "--out", str(out)]) == 0
    assert (out / "report.csv").read_text().strip() == \
        "check,group,cell,seed,epsilon,delta,S,deltaS,residual,slope"


def test_report_missing_dir_errors(tmp_path):
    assert main(["report", "--out", str(tmp_path / "nope")]) == 2
