"""Command line entry point: ``pptextreme <command> ...``.

Exit codes: 0 success or extreme, 1 not extreme, 2 borderline spectrum,
3 invalid input or usage, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import catalog
from .bipartite import BipartiteDims, NotDensityMatrixError, NotPPTError, is_ppt
from .extremality import Verdict, test_extremality
from .linalg import Tolerances
from .search import BorderlineSpectrumError, SearchError, SearchTrace, find_extreme, rank_survey
from .sections import (
    SectionSpec,
    orthonormal_traceless,
    sample_section,
    samples_to_csv,
    section_through,
    trace_face_section,
)
from .serialize import MatrixFileError, dumps_trace, load_state, load_trace_states, report_to_dict, survey_to_csv

EXIT_OK, EXIT_NEGATIVE, EXIT_BORDERLINE, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3, 4

log = logging.getLogger("pptextreme")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _grid(text: str) -> tuple[int, int]:
    dims = BipartiteDims.parse(text)
    return dims.n_a, dims.n_b


def _extent(text: str) -> tuple[float, float, float, float]:
    parts = [float(v) for v in text.split(",")]
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("extent needs four comma-separated numbers x0,x1,y0,y1")
    return tuple(parts)


def _tolerances(args) -> Tolerances:
    base = Tolerances()
    return Tolerances(
        zero_eig=args.tol_zero_eig if args.tol_zero_eig is not None else base.zero_eig,
        one_eig=args.tol_one_eig if args.tol_one_eig is not None else base.one_eig,
        recon=args.tol_recon if args.tol_recon is not None else base.recon,
        orth=args.tol_orth if args.tol_orth is not None else base.orth,
        bisect=args.tol_bisect if args.tol_bisect is not None else base.bisect,
    )


def _resolve_state(spec: str, tol: Tolerances):
    """Catalog name, or path to a matrix file."""
    try:
        return catalog.by_name(spec).rho
    except KeyError:
        pass
    path = Path(spec)
    if not path.exists():
        raise FileNotFoundError(f"{spec!r} is neither a catalog state nor an existing file")
    return load_state(path, tol)


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def cmd_find_extreme(args) -> int:
    tol = _tolerances(args)
    if args.state is not None:
        rho = _resolve_state(args.state, tol)
    else:
        rho = catalog.maximally_mixed(args.dims or "3x3").rho
    if not is_ppt(rho, tol):
        raise NotPPTError("start state is not PPT")
    try:
        trace = find_extreme(rho, args.seed, tol)
    except BorderlineSpectrumError as exc:
        log.error("%s", exc)
        if exc.trace is not None:
            _emit(dumps_trace(exc.trace), args.out)
        return EXIT_BORDERLINE
    _emit(dumps_trace(trace), args.out)
    rep = trace.final_report
    log.info("ranks %s in %d states; next eigenvalue below 1: %.17g", rep.rank_pair, len(trace), rep.next_eigenvalue)
    return EXIT_OK


def cmd_test_extreme(args) -> int:
    tol = _tolerances(args)
    rho = _resolve_state(args.state, tol)
    rep = test_extremality(rho, tol)
    info = report_to_dict(rep)
    lines = [f"{k}: {v}" for k, v in info.items()]
    sys.stdout.write("\n".join(lines) + "\n")
    if args.out:
        Path(args.out).write_text(json.dumps(info, indent=1) + "\n")
    return {Verdict.EXTREME: EXIT_OK, Verdict.NOT_EXTREME: EXIT_NEGATIVE, Verdict.BORDERLINE: EXIT_BORDERLINE}[
        rep.verdict
    ]


def cmd_rank_survey(args) -> int:
    tol = _tolerances(args)
    if args.runs < 1:
        raise ValueError("--runs must be >= 1")
    try:
        hist = rank_survey(args.dims, args.runs, args.seed, tol, workers=args.workers)
    except BorderlineSpectrumError as exc:
        log.error("%s", exc)
        return EXIT_BORDERLINE
    _emit(survey_to_csv(hist), args.out)
    return EXIT_OK


def cmd_scan_section(args) -> int:
    tol = _tolerances(args)
    grid = args.grid
    if args.face_of:
        states = load_trace_states(args.face_of, tol)
        if len(states) < 2:
            raise ValueError("trace has fewer than two states; no penultimate face")
        trace = SearchTrace(seed=None, states=states, reports=[test_extremality(s, tol) for s in states])
        section = trace_face_section(trace, args.seed, grid, tol, num_rays=args.rays, extent=args.extent)
        samples = section.samples
        if args.boundary_out:
            rows = ["angle,radius,n,m,b_rank,is_extreme"]
            rows += [
                f"{p.angle:.17g},{p.radius:.17g},{p.rank_pair[0]},{p.rank_pair[1]},{p.b_rank},{int(p.is_extreme)}"
                for p in section.boundary
            ]
            Path(args.boundary_out).write_text("\n".join(rows) + "\n")
        for pair, count in sorted(section.boundary_pairs().items()):
            log.info("boundary rank pair %s: %d rays", pair, count)
    elif args.through:
        a = _resolve_state(args.through[0], tol)
        b = _resolve_state(args.through[1], tol)
        spec = section_through(a, b, grid, args.extent, rng=args.seed)
        samples = sample_section(spec, tol)
    else:
        origin = _resolve_state(args.state or "mixed:3x3", tol)
        n = origin.n
        rng = np.random.default_rng(args.seed)
        z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        d1 = z + z.conj().T
        d1 = d1 - np.trace(d1).real / n * np.eye(n)
        d1, d2 = orthonormal_traceless(d1, None, rng)
        spec = SectionSpec(origin, d1, d2, grid, args.extent or (-0.5, 0.5, -0.5, 0.5))
        samples = sample_section(spec, tol)
    _emit(samples_to_csv(samples), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--tol-zero-eig", type=float, default=None)
    common.add_argument("--tol-one-eig", type=float, default=None)
    common.add_argument("--tol-recon", type=float, default=None)
    common.add_argument("--tol-orth", type=float, default=None)
    common.add_argument("--tol-bisect", type=float, default=None)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="pptextreme", description="Extreme points of the set of PPT density matrices.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("find-extreme", parents=[common], help="random face walk to an extreme point")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--dims", type=BipartiteDims.parse, help="start at 1/N on AxB (default 3x3)")
    src.add_argument("--state", help="catalog name or matrix file to start from")
    p.set_defaults(func=cmd_find_extreme)

    p = sub.add_parser("test-extreme", parents=[common], help="extremality test of one state")
    p.add_argument("--state", required=True, help="catalog name or matrix file")
    p.set_defaults(func=cmd_test_extreme)

    p = sub.add_parser("rank-survey", parents=[common], help="histogram of terminal rank pairs from 1/N")
    p.add_argument("--dims", type=BipartiteDims.parse, required=True)
    p.add_argument("--runs", type=int, default=100)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_rank_survey)

    p = sub.add_parser("scan-section", parents=[common], help="sample a 2D section to CSV")
    p.add_argument("--state", help="origin for random sections (default mixed:3x3)")
    how = p.add_mutually_exclusive_group()
    how.add_argument("--random", action="store_true", help="two random traceless directions (default)")
    how.add_argument("--face-of", metavar="TRACE", help="section of the penultimate face of a find-extreme trace")
    how.add_argument("--through", nargs=2, metavar=("A", "B"), help="plane through states A and B")
    p.add_argument("--grid", type=_grid, default=(41, 41), help="NXxNY (default 41x41)")
    p.add_argument("--extent", type=_extent, default=None, help="x0,x1,y0,y1")
    p.add_argument("--rays", type=int, default=180, help="boundary rays for --face-of")
    p.add_argument("--boundary-out", default=None, help="CSV of boundary points for --face-of")
    p.set_defaults(func=cmd_scan_section)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (NotDensityMatrixError, NotPPTError, MatrixFileError, ValueError) as exc:
        print(f"pptextreme: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SearchError as exc:
        print(f"pptextreme: {exc}", file=sys.stderr)
        return EXIT_BORDERLINE
    except OSError as exc:
        print(f"pptextreme: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
