"""JSON matrix files, search traces and survey CSVs.

A matrix file is ``{"dims": [n_a, n_b], "re": [[...]], "im": [[...]]}`` with
row-major nested lists.  Floats are written by ``repr``, which round-trips
every double exactly.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np

from .bipartite import BipartiteDims, DensityMatrix, density_matrix
from .extremality import ExtremalityReport
from .linalg import DEFAULT_TOL, Tolerances


class MatrixFileError(ValueError):
    """Malformed or non-Hermitian matrix file."""


def matrix_to_dict(mat, dims) -> dict:
    mat = np.asarray(mat, dtype=complex)
    return {
        "dims": [dims.n_a, dims.n_b],
        "re": mat.real.tolist(),
        "im": mat.imag.tolist(),
    }


def matrix_from_dict(obj: dict) -> tuple[np.ndarray, BipartiteDims]:
    try:
        dims = BipartiteDims(*obj["dims"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise MatrixFileError(f"malformed matrix object: {exc}") from exc
    shape = (dims.n, dims.n)
    if re.shape != shape or im.shape != shape:
        raise MatrixFileError(f"arrays have shapes {re.shape}, {im.shape}; expected {shape}")
    if np.max(np.abs(re - re.T)) > 1e-10 or np.max(np.abs(im + im.T)) > 1e-10:
        raise MatrixFileError("matrix is not Hermitian (re symmetric, im antisymmetric)")
    return re + 1j * im, dims


def save_matrix(path, mat, dims) -> None:
    Path(path).write_text(json.dumps(matrix_to_dict(mat, dims)) + "\n")


def load_matrix(path) -> tuple[np.ndarray, BipartiteDims]:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise MatrixFileError(f"{path}: not valid JSON ({exc})") from exc
    return matrix_from_dict(obj)


def load_state(path, tol: Tolerances = DEFAULT_TOL) -> DensityMatrix:
    mat, dims = load_matrix(path)
    return density_matrix(mat, dims, tol)


def report_to_dict(report: ExtremalityReport) -> dict:
    return {
        "n": report.n,
        "m": report.m,
        "b_rank": report.b_rank,
        "next_eigenvalue": report.next_eigenvalue,
        "spectrum_gap": report.spectrum_gap,
        "is_extreme": report.is_extreme,
        "verdict": report.verdict.value,
    }


def trace_to_dict(trace) -> dict:
    seed = trace.seed
    if isinstance(seed, np.ndarray):
        seed = seed.tolist()
    final = trace.final_report
    return {
        "seed": seed,
        "dims": [trace.states[0].dims.n_a, trace.states[0].dims.n_b],
        "rank_pairs": [list(p) for p in trace.rank_pairs],
        "step_sizes": list(trace.step_sizes),
        "report": report_to_dict(final) if final is not None else None,
        "terminal": matrix_to_dict(trace.states[-1].mat, trace.states[-1].dims),
        "states": [matrix_to_dict(s.mat, s.dims) for s in trace.states],
    }


def dumps_trace(trace) -> str:
    return json.dumps(trace_to_dict(trace), indent=1) + "\n"


def load_trace_states(path, tol: Tolerances = DEFAULT_TOL) -> list[DensityMatrix]:
    obj = json.loads(Path(path).read_text())
    states = []
    for item in obj["states"]:
        mat, dims = matrix_from_dict(item)
        states.append(density_matrix(mat, dims, tol))
    return states


SURVEY_HEADER = ("n", "m", "count")


def survey_to_csv(hist) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(SURVEY_HEADER)
    for (n, m), count in sorted(hist.items()):
        w.writerow([n, m, count])
    return out.getvalue()
