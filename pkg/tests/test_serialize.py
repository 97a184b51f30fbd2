import json

import numpy as np
import pytest

from pptextreme.catalog import horodecki_state, maximally_mixed
from pptextreme.extremality import test_extremality
from pptextreme.search import find_extreme
from pptextreme.serialize import (
    MatrixFileError,
    dumps_trace,
    load_matrix,
    load_state,
    load_trace_states,
    report_to_dict,
    save_matrix,
    survey_to_csv,
)


def test_matrix_roundtrip_exact(tmp_path):
    rho = horodecki_state(0.42).rho
    path = tmp_path / "h.json"
    save_matrix(path, rho.mat, rho.dims)
    mat, dims = load_matrix(path)
    np.testing.assert_array_equal(mat, rho.mat)
    assert dims == rho.dims
    assert load_state(path).n == 9


def test_bad_matrix_files(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(MatrixFileError):
        load_matrix(p)
    p.write_text(json.dumps({"dims": [1, 2], "re": [[1, 1], [0, 1]], "im": [[0, 0], [0, 0]]}))
    with pytest.raises(MatrixFileError):
        load_matrix(p)
    p.write_text(json.dumps({"dims": [1, 2], "re": [[1]], "im": [[0]]}))
    with pytest.raises(MatrixFileError):
        load_matrix(p)


def test_trace_roundtrip(tmp_path):
    trace = find_extreme(maximally_mixed("2x3").rho, 4)
    text = dumps_trace(trace)
    obj = json.loads(text)
    assert obj["rank_pairs"] == [list(p) for p in trace.rank_pairs]
    assert obj["report"]["is_extreme"] is True
    path = tmp_path / "t.json"
    path.write_text(text)
    states = load_trace_states(path)
    for a, b in zip(states, trace.states):
        np.testing.assert_array_equal(a.mat, b.mat)


def test_report_and_survey_format():
    d = report_to_dict(test_extremality(horodecki_state(0.42).rho))
    assert d["verdict"] == "not-extreme" and d["b_rank"] == 10
    assert survey_to_csv({(6, 6): 3, (5, 7): 2}) == "n,m,count\n5,7,2\n6,6,3\n"
