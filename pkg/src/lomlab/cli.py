"""Command-line interface.

One executable, ``lomlab``, dispatching to the library: travel and circuit
inspection, f counting, plain-travel enumeration, chessboard encoding and
class representatives, formula evaluation, per-class surveys, preset
verification, and engine cross-checks.  Every subcommand accepts ``--json``
for stable machine-readable output.  Exit codes: 0 success, 1 usage or I/O
error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import formulas, survey
from .chessboard import (
    chessboard_of,
    class_count,
    index_of_chessboard,
    relevant_squares,
    render_board,
    representative_of_index,
)
from .sign_core import (
    SignMatrix,
    all_circuits,
    chirotope_from_matrix,
    count_k_neighborly_reorientations,
    count_k_neighborly_reorientations_chirotope,
    reorient_columns,
    reorient_rows,
)
from .travels import (
    bottom_travel,
    count_k_neighborly_plain_travels,
    enumerate_plain_travels,
    f_via_travels,
    top_travel,
)

__all__ = ["main"]


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that exits with code 1 on usage errors (2 is reserved
    for verification failures)."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _parse_labels(text: str, flag: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part != ""]
    except ValueError:
        raise ValueError(f"{flag}: expected comma-separated integers, got {text!r}") from None


def _parse_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split("..")
        return int(lo), int(hi)
    except ValueError:
        raise ValueError(f"--range: expected LO..HI, got {text!r}") from None


def _load_matrix(args) -> SignMatrix:
    path = Path(args.matrix)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ValueError(f"--matrix: cannot read {path}: {exc.strerror or exc}") from None
    try:
        A = SignMatrix.parse(text)
    except ValueError as exc:
        raise ValueError(f"--matrix: {path}: {exc}") from None
    if getattr(args, "flip_cols", None):
        A = reorient_columns(A, _parse_labels(args.flip_cols, "--flip-cols"))
    if getattr(args, "flip_rows", None):
        A = reorient_rows(A, _parse_labels(args.flip_rows, "--flip-rows"))
    return A


def _emit_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2))


def _fraction_str(x: Fraction) -> str:
    return str(x)


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------

def _cmd_travel(args) -> int:
    A = _load_matrix(args)
    travel = bottom_travel(A) if args.bottom else top_travel(A)
    if args.json:
        _emit_json(
            {
                "kind": travel.kind,
                "path": [
                    {"row": i, "col": j, "sign": "+" if A.sign(i, j) > 0 else "-"}
                    for i, j in travel.path
                ],
                "drop_columns": list(travel.drop_columns),
                "positive": travel.positive,
            }
        )
        return 0
    for i, j in travel.path:
        print(f"({i},{j})={'+' if A.sign(i, j) > 0 else '-'}")
    print(f"positive: {'yes' if travel.positive else 'no'}")
    return 0


def _cmd_circuits(args) -> int:
    A = _load_matrix(args)
    circuits = all_circuits(A)
    if args.json:
        _emit_json(
            {
                "rank": A.rows,
                "elements": A.cols,
                "count": len(circuits),
                "circuits": [
                    {"support": list(c.support), "signs": list(c.signs)}
                    for c in circuits
                ],
            }
        )
        return 0
    for c in circuits:
        print(" ".join(f"{'+' if s > 0 else '-'}{e}" for e, s in zip(c.support, c.signs)))
    print(f"count: {len(circuits)}")
    return 0


def _cmd_fcount(args) -> int:
    A = _load_matrix(args)
    if args.engine == "circuits":
        f = count_k_neighborly_reorientations(A, args.k)
    elif args.engine == "travels":
        f = f_via_travels(A, args.k)
    else:
        f = count_k_neighborly_reorientations_chirotope(chirotope_from_matrix(A), args.k)
    if args.json:
        _emit_json(
            {
                "rank": A.rows,
                "elements": A.cols,
                "k": args.k,
                "engine": args.engine,
                "f": f,
            }
        )
        return 0
    print(f"f = {f}")
    return 0


def _cmd_plain_travels(args) -> int:
    if args.matrix is not None:
        A = _load_matrix(args)
        r, n = A.rows, A.cols
    else:
        if args.rank is None or args.elements is None:
            raise ValueError("plain-travels needs either --matrix or --rank and --elements")
        A = None
        r, n = args.rank, args.elements
    travels_list = enumerate_plain_travels(r, n)
    neighborly = None
    if A is not None and args.k is not None:
        neighborly = count_k_neighborly_plain_travels(A, args.k)
    if args.json:
        payload = {
            "rank": r,
            "elements": n,
            "total": len(travels_list),
            "travels": [list(t.drop_columns) for t in travels_list],
        }
        if neighborly is not None:
            payload["k"] = args.k
            payload["k_neighborly"] = neighborly
            payload["f"] = 2 * neighborly
        _emit_json(payload)
        return 0
    for t in travels_list:
        print("drops: " + (",".join(map(str, t.drop_columns)) if t.drop_columns else "(none)"))
    print(f"total: {len(travels_list)}")
    if neighborly is not None:
        print(f"k_neighborly: {neighborly}")
        print(f"f = {2 * neighborly}")
    return 0


def _cmd_chessboard(args) -> int:
    A = _load_matrix(args)
    board = chessboard_of(A)
    r, n = A.rows, A.cols
    if args.json:
        payload = {
            "rank": r,
            "elements": n,
            "board": render_board(board, r, n).splitlines(),
        }
        if n >= r + 1:
            payload["relevant_squares"] = [list(sq) for sq in relevant_squares(r, n)]
            payload["index"] = index_of_chessboard(board, r, n)
        _emit_json(payload)
        return 0
    print(render_board(board, r, n))
    return 0


def _cmd_representative(args) -> int:
    A = representative_of_index(args.rank, args.elements, args.index)
    if args.json:
        _emit_json(
            {
                "rank": args.rank,
                "elements": args.elements,
                "index": args.index,
                "matrix": A.format().splitlines(),
            }
        )
        return 0
    print(A.format())
    return 0


def _cmd_formulas(args) -> int:
    r, n, k = args.rank, args.elements, args.k
    c = formulas.c_value(r, n, k)
    travels_total = formulas.total_plain_travels(r, n)
    classes = class_count(r, n)
    bound = None
    if k >= 1 and n >= 2 * r - 1:
        bound = formulas.lom_upper_bound(r, n, k)
    asymptotic = None
    if k >= 1 and r >= 2 * k + 2:
        asymptotic = formulas.asymptotic_bound(r, n, k)
    if args.json:
        _emit_json(
            {
                "rank": r,
                "elements": n,
                "k": k,
                "c_value": c.value,
                "c_source": c.source,
                "total_plain_travels": travels_total,
                "class_count": classes,
                "lom_upper_bound": bound,
                "asymptotic_bound": _fraction_str(asymptotic) if asymptotic is not None else None,
            }
        )
        return 0
    print(f"c = {c.value} ({c.source})")
    print(f"total_plain_travels = {travels_total}")
    print(f"class_count = {classes}")
    if bound is not None:
        print(f"lom_upper_bound = {bound}")
    if asymptotic is not None:
        print(f"F = {_fraction_str(asymptotic)}")
    return 0


def _cmd_survey(args) -> int:
    cfg = survey.SurveyConfig(
        rank=args.rank,
        elements=args.elements,
        k=args.k,
        engine=args.engine,
        threads=args.threads,
        chunk_size=args.chunk_size,
        checkpoint_path=args.checkpoint,
        index_range=_parse_range(args.range) if args.range else None,
        crosscheck_samples=args.crosscheck_samples,
    )
    result = survey.run_survey(cfg)
    payload = result.to_json_dict()
    if args.out:
        Path(args.out).write_text(json.dumps(payload, indent=2) + "\n")
    if args.json:
        _emit_json(payload)
        return 0
    print(f"rank {result.rank}, elements {result.elements}, k {result.k}, engine {result.engine}")
    print(f"classes: {result.class_count} (surveyed {result.surveyed})")
    print(f"c = {result.c.value} ({result.c.source})")
    print(f"max_f = {result.max_f}")
    print(
        f"maximizers: {result.maximizer_count_total} total, "
        f"{result.maximizer_count_excluding_alternating} excluding the alternating class"
    )
    print(f"f(alternating class) = {result.alternating_class_f}")
    print(f"distinct f values: {len(result.histogram)}")
    print(f"elapsed: {result.elapsed_seconds:.3f}s")
    if args.out:
        print(f"result written to {args.out}")
    return 0


def _cmd_verify(args) -> int:
    report = survey.verify_case(
        args.case,
        threads=args.threads,
        chunk_size=args.chunk_size,
        checkpoint_path=args.checkpoint,
    )
    if args.json:
        _emit_json(report.to_json_dict())
    else:
        print(f"case {report.case} (rank {report.result.rank}, "
              f"elements {report.result.elements}, k {report.result.k})")
        for line in report.lines():
            print(line)
        print(f"result: {'PASS' if report.passed else 'FAIL'}")
    return 0 if report.passed else 2


def _cmd_crosscheck(args) -> int:
    if args.minors:
        report = survey.minor_recursion_check(
            args.rank, args.elements, args.k, args.samples, args.seed
        )
        issues = report.violations
        label = "violations"
    else:
        report = survey.engine_crosscheck(
            args.rank, args.elements, args.k, args.samples, args.seed
        )
        issues = report.mismatches
        label = "mismatches"
    if args.json:
        _emit_json(report.to_json_dict())
    else:
        kind = "minor recursion" if args.minors else "engine agreement"
        print(f"{kind} check: rank {args.rank}, elements {args.elements}, k {args.k}, "
              f"{len(report.indices)} classes, seed {args.seed}")
        for issue in issues:
            print(f"{label[:-2]}: {issue}")
        print(f"result: {'PASS' if report.passed else 'FAIL'} ({len(issues)} {label})")
    return 0 if report.passed else 2


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> _Parser:
    parser = _Parser(prog="lomlab", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit stable JSON")

    matrix_opts = argparse.ArgumentParser(add_help=False)
    matrix_opts.add_argument("--matrix", required=True, help="matrix text file (+/- rows)")
    matrix_opts.add_argument(
        "--flip-cols", help="comma-separated column labels to reorient before computing"
    )
    matrix_opts.add_argument(
        "--flip-rows", help="comma-separated row labels to reorient before computing"
    )

    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("travel", parents=[common, matrix_opts],
                       help="print the top (or bottom) travel of a matrix")
    p.add_argument("--bottom", action="store_true", help="bottom travel instead of top")
    p.set_defaults(func=_cmd_travel)

    p = sub.add_parser("circuits", parents=[common, matrix_opts],
                       help="list every circuit of a matrix")
    p.set_defaults(func=_cmd_circuits)

    p = sub.add_parser("fcount", parents=[common, matrix_opts],
                       help="count k-neighborly reorientation subsets")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--engine", choices=("circuits", "travels", "chirotope"),
                   default="circuits")
    p.set_defaults(func=_cmd_fcount)

    p = sub.add_parser("plain-travels", parents=[common],
                       help="enumerate plain travels; with --matrix/--k, count the k-neighborly ones")
    p.add_argument("--rank", type=int)
    p.add_argument("--elements", type=int)
    p.add_argument("--matrix")
    p.add_argument("--flip-cols")
    p.add_argument("--flip-rows")
    p.add_argument("--k", type=int)
    p.set_defaults(func=_cmd_plain_travels)

    p = sub.add_parser("chessboard", parents=[common, matrix_opts],
                       help="print the chessboard of a matrix (B/W relevant, b/w irrelevant)")
    p.set_defaults(func=_cmd_chessboard)

    p = sub.add_parser("representative", parents=[common],
                       help="print the canonical matrix of a class index")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--elements", type=int, required=True)
    p.add_argument("--index", type=int, required=True)
    p.set_defaults(func=_cmd_representative)

    p = sub.add_parser("formulas", parents=[common],
                       help="evaluate the closed forms and bounds at (rank, elements, k)")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--elements", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=_cmd_formulas)

    p = sub.add_parser("survey", parents=[common],
                       help="evaluate f for every reorientation class")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--elements", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--engine", choices=survey.ENGINES, default="circuits")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--chunk-size", type=int, default=survey.DEFAULT_CHUNK_SIZE)
    p.add_argument("--checkpoint", help="checkpoint JSON path (resume if it exists)")
    p.add_argument("--out", help="write the result JSON to this path")
    p.add_argument("--range", help="survey only class indices LO..HI (half-open)")
    p.add_argument("--crosscheck-samples", type=int, default=0,
                   help="verify this many sampled classes against the travels engine first")
    p.set_defaults(func=_cmd_survey)

    p = sub.add_parser("verify", parents=[common],
                       help="run a preset survey and assert its expected statistics")
    p.add_argument("--case", required=True, choices=sorted(survey.PRESETS))
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--chunk-size", type=int, default=survey.DEFAULT_CHUNK_SIZE)
    p.add_argument("--checkpoint")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("crosscheck", parents=[common],
                       help="sampled engine agreement (or, with --minors, minor recursion) check")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--elements", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--minors", action="store_true",
                   help="check f(M) <= f(M/e) + f(M\\e) instead of engine agreement")
    p.set_defaults(func=_cmd_crosscheck)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except survey.EngineMismatchError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
