import json

import pytest

from pptextreme.cli import main


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_test_extreme_exit_codes(capsys):
    code, out, _ = _run(capsys, "test-extreme", "--state", "upb-tiles")
    assert code == 0
    assert "b_rank: 1" in out
    assert _run(capsys, "test-extreme", "--state", "horodecki:0.42")[0] == 1
    code, _, err = _run(capsys, "test-extreme", "--state", "bell")
    assert code == 3 and "not PPT" in err
    assert _run(capsys, "test-extreme", "--state", "no-such-file.json")[0] == 4


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 3
    with pytest.raises(SystemExit) as exc:
        main(["rank-survey", "--dims", "3by3"])
    assert exc.value.code == 3
    assert _run(capsys, "rank-survey", "--dims", "2x2", "--runs", "0")[0] == 3


def test_find_extreme_deterministic(capsys, tmp_path):
    code, first, _ = _run(capsys, "find-extreme", "--dims", "2x3", "--seed", "7")
    assert code == 0
    second = _run(capsys, "find-extreme", "--dims", "2x3", "--seed", "7")[1]
    assert first == second
    obj = json.loads(first)
    assert obj["report"]["is_extreme"]
    out = tmp_path / "trace.json"
    assert _run(capsys, "find-extreme", "--state", "horodecki:0.42", "--out", str(out))[0] == 0
    assert json.loads(out.read_text())["rank_pairs"][0] == [7, 6]


def test_rank_survey(capsys):
    code, out, _ = _run(capsys, "rank-survey", "--dims", "2x2", "--runs", "3")
    assert code == 0 and out == "n,m,count\n1,1,3\n"


def test_scan_section_modes(capsys, tmp_path):
    code, out, _ = _run(capsys, "scan-section", "--grid", "3x2", "--state", "mixed:2x2")
    assert code == 0 and len(out.splitlines()) == 7
    code, out, _ = _run(capsys, "scan-section", "--through", "mixed:3x3", "upb-tiles", "--grid", "4x4")
    assert code == 0 and len(out.splitlines()) == 17
    trace = tmp_path / "t.json"
    _run(capsys, "find-extreme", "--dims", "3x3", "--seed", "26", "--out", str(trace))
    bnd = tmp_path / "b.csv"
    args = ["scan-section", "--face-of", str(trace), "--grid", "3x3", "--rays", "8", "--boundary-out", str(bnd)]
    code, out, _ = _run(capsys, *args)
    assert code == 0 and len(out.splitlines()) == 10
    lines = bnd.read_text().splitlines()
    assert lines[0] == "angle,radius,n,m,b_rank,is_extreme" and len(lines) == 9
    # a two-qubit trace ends on a face of dimension one, which has no planar section
    _run(capsys, "find-extreme", "--dims", "2x2", "--seed", "1", "--out", str(trace))
    assert _run(capsys, "scan-section", "--face-of", str(trace))[0] == 3
    with pytest.raises(SystemExit) as exc:
        main(["scan-section", "--extent", "1,2,3"])
    assert exc.value.code == 3
