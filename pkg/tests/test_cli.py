import json
import subprocess
import sys
from pathlib import Path

import pytest

from tilecoh import catalog, cli
from tilecoh.cli import ValidationError, main, parse_input, run
from tilecoh.cohomology import CochainSystem, InvalidSystemError
from tilecoh.subst1d import Substitution1D
from tilecoh.subst2d import BlockSubstitution2D

GOLDENS = Path(__file__).resolve().parent.parent / "goldens"
FIB_DOC = '{"mode":"subst1d","alphabet":["a","b"],"rules":{"a":"ab","b":"a"}}'
THREE_SQUARE_DOC = (
    '{"mode":"subst2d","block_size":2,"alphabet":["A","B","C"],'
    '"rules":{"A":[["A","A"],["B","C"]],"B":[["A","B"],["B","C"]],"C":[["A","C"],["B","C"]]}}'
)


def test_parse_examples():
    job = parse_input(FIB_DOC)
    assert job.mode == "subst1d" and job.payload == Substitution1D.from_dict({"a": "ab", "b": "a"})
    job = parse_input(THREE_SQUARE_DOC)
    assert isinstance(job.payload, BlockSubstitution2D) and job.payload.block_size == 2
    job = parse_input(catalog.example_document("solenoid-graph"))
    assert isinstance(job.payload, CochainSystem) and job.payload.dims == (1, 1)


def test_parse_raw_complex():
    doc = {"mode": "complex", "dims": [1, 1, 1], "coboundaries": [[[0]], [[2]]], "endo": [[[1]], [[1]], [[1]]]}
    report = run(parse_input(doc))
    assert "  H^2: Z/2" in report.lines


def test_parse_list_rules_with_long_letter_names():
    doc = {"mode": "subst1d", "alphabet": ["x1", "x2"], "rules": {"x1": ["x1", "x2"], "x2": ["x1"]}}
    assert parse_input(doc).payload.rules == (("x1", "x2"), ("x1",))


@pytest.mark.parametrize(
    "doc, fragment",
    [
        ('{"mode":"subst1d","alphabet":["a"],\n"rules":{"a":"ab"}}', "line 2: rules.a: unknown letter 'b'"),
        ('{"mode":"subst1d","alphabet":["a","b"],\n"rules":{"a":"ab","b":""}}', "empty rule"),
        ('{"mode":"subst1d","alphabet":["a"],"rules":{"a":"aa"},\n"colour":1}', "line 2: colour: unknown field"),
        ('{"mode":"subst2d","block_size":2,"alphabet":["A"],"rules":{"A":[["A","A"],["A"]]}}', "non-square grid"),
        ('{"mode":"subst1d","schema":2,"alphabet":["a"],"rules":{"a":"aa"}}', "unsupported schema"),
        ('{"mode":"tiles"}', "mode must be one of"),
        ('{"mode":"subst1d",', "invalid JSON"),
        ('{"mode":"complex","vertices":["v"],"edges":[["e","v","w"]],"vertex_map":{"v":"v"},"edge_paths":{"e":["e"]}}', "dangling"),
        ('{"mode":"complex","dims":[1,1],"coboundaries":[[[1]]],"endo":[[[1]],[[2]]]}', "F_1 delta_0"),
    ],
)
def test_malformed_documents(doc, fragment):
    with pytest.raises((ValidationError, InvalidSystemError)) as info:
        job = parse_input(doc)
        run(job)
    if fragment:
        assert fragment in str(info.value)


def _run_main(capsys, argv):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_cli_reports_and_exit_codes(tmp_path, capsys):
    f = tmp_path / "fib.json"
    f.write_text(FIB_DOC)
    code, out, err = _run_main(capsys, ["cohomology", str(f)])
    assert code == 0 and "H^1: Z^2" in out and "pipelines: AGREE" in out and not err
    code, out, _ = _run_main(capsys, ["cohomology", "--example", "thue-morse"])
    assert code == 0 and "H^1: Z (+) Z[1/2]" in out
    bad = tmp_path / "bad.json"
    bad.write_text('{"mode":"subst1d","alphabet":["a"],"rules":{"a":"ab"}}')
    code, out, err = _run_main(capsys, ["cohomology", str(bad)])
    assert code == 2 and out == "" and err.startswith("tilecoh: invalid input: ")
    out_file = tmp_path / "never.txt"
    assert main(["cohomology", str(bad), "--output", str(out_file)]) == 2
    assert not out_file.exists()


def test_uncollared_is_tagged(capsys):
    code, out, _ = _run_main(capsys, ["cohomology", "--example", "thue-morse", "--uncollared"])
    assert code == 0
    assert "diagnostic only" in out
    assert "DISAGREE (uncollared pipeline is diagnostic only)" in out


def test_2d_rejects_bd_pipeline(capsys):
    code, _, err = _run_main(capsys, ["cohomology", "--example", "three-square", "--pipeline", "bd"])
    assert code == 2 and "1D" in err


def test_pipeline_disagreement_exits_3(monkeypatch, capsys):
    monkeypatch.setattr(cli, "results_agree", lambda a, b: False)
    code, out, err = _run_main(capsys, ["cohomology", "--example", "fibonacci"])
    assert code == 3 and out == "" and err.startswith("tilecoh: pipeline disagreement: ")


def test_internal_error_exits_4(monkeypatch, capsys):
    def boom(job):
        raise AssertionError("forced")

    monkeypatch.setitem(cli.COMMANDS, "diagnose", boom)
    code, out, err = _run_main(capsys, ["diagnose", "--example", "fibonacci"])
    assert code == 4 and out == "" and err.startswith("tilecoh: internal error: ")


def test_analysis_subcommands(capsys):
    code, out, _ = _run_main(capsys, ["frequencies", "--example", "fibonacci", "--lengths", "1.618033988749895,1"])
    assert code == 0 and "generator traces" in out
    code, out, _ = _run_main(capsys, ["deform", "--example", "fibonacci"])
    assert code == 0 and "asymptotically negligible dimension: 1" in out and "pisot: true" in out
    code, out, _ = _run_main(capsys, ["regularity", "--example", "fibonacci", "--patch", "ab", "--patch", "b"])
    assert code == 0 and "[i_ab] = (0, 1)" in out and "pass" in out
    code, out, _ = _run_main(capsys, ["diagnose", "--example", "thue-morse"])
    assert code == 0 and "k = 1, ell = 1" in out
    code, _, err = _run_main(capsys, ["regularity", "--example", "three-square", "--patch", "A"])
    assert code == 2


def test_json_output_is_byte_identical_across_processes(tmp_path):
    outs = []
    for i in range(2):
        target = tmp_path / f"r{i}.json"
        subprocess.run(
            [sys.executable, "-m", "tilecoh", "cohomology", "--example", "three-square", "--format", "json", "-o", str(target)],
            check=True,
        )
        outs.append(target.read_bytes())
    assert outs[0] == outs[1]
    rec = json.loads(outs[0])
    assert rec["pipelines"]["ap-collared"]["degrees"][2]["cech"]["string"] == "Z^2 (+) Z[1/2]"


def _golden_cases():
    return json.loads((GOLDENS / "manifest.json").read_text())


@pytest.mark.parametrize("case", _golden_cases(), ids=lambda c: c["id"])
def test_golden_round_trip(case):
    text = (GOLDENS / "inputs" / f"{case['id']}.json").read_text()
    report = run(parse_input(text), case["command"])
    assert report.render("text") == (GOLDENS / "reports" / f"{case['id']}.txt").read_text()
    assert report.render("json") == (GOLDENS / "reports" / f"{case['id']}.json").read_text()
