"""Command-line front end.

    trigsolve solve  --a "a11,a12,a21,a22" --b "..." --c "c1,c2" | --json FILE
    trigsolve batch  --in FILE [--out FILE] [--parallel N] [--format json|csv]
    trigsolve random --count N --seed S [--singular mixed|none|rank0|rank1] [--timing]
    trigsolve oracle --in FILE [--grid N]
    trigsolve ik     --l1 L1 --l2 L2 --x X --y Y

Exit codes: 0 solved (finite or family), 2 input error, 3 no solutions.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Sequence

from .bench import run_random
from .core import DEFAULT_TOL, SolutionTag, ToleranceConfig, TrigSystem, Vec2
from .dispatch import SolveReport, solve
from .kinematics import TwoLinkArm, ik_two_link
from .oracle import oracle_match, oracle_solve

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_EMPTY = 3

CSV_COLUMNS = ("index", "status", "branch", "n_solutions", "max_residual", "micros")
_TOL_KEYS = {"residual": "eps_residual", "rank": "eps_rank", "det": "eps_det"}


class InputError(ValueError):
    pass


def _number(x: Any) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise InputError(f"expected a number, got {x!r}")
    v = float(x)
    if not math.isfinite(v):
        raise InputError(f"non-finite number {x!r}")
    return v


def _matrix(doc: Any, name: str) -> list[list[float]]:
    if not (isinstance(doc, list) and len(doc) == 2 and all(isinstance(r, list) and len(r) == 2 for r in doc)):
        raise InputError(f"{name} must be a 2x2 array")
    return [[_number(v) for v in row] for row in doc]


def _vector(doc: Any, name: str) -> list[float]:
    if not (isinstance(doc, list) and len(doc) == 2):
        raise InputError(f"{name} must be a length-2 array")
    return [_number(v) for v in doc]


def parse_system(doc: Any) -> tuple[TrigSystem, ToleranceConfig]:
    """Read ``{"A": [[..],[..]], "B": ..., "C": [..], "tol": {...}}``."""
    if not isinstance(doc, dict):
        raise InputError("system document must be a JSON object")
    for key in ("A", "B", "C"):
        if key not in doc:
            raise InputError(f"missing key {key!r}")
    system = TrigSystem.of(_matrix(doc["A"], "A"), _matrix(doc["B"], "B"), _vector(doc["C"], "C"))
    tol = DEFAULT_TOL
    if "tol" in doc:
        given = doc["tol"]
        if not isinstance(given, dict):
            raise InputError("tol must be an object")
        unknown = set(given) - set(_TOL_KEYS)
        if unknown:
            raise InputError(f"unknown tolerance keys {sorted(unknown)}")
        try:
            tol = ToleranceConfig(**{_TOL_KEYS[k]: _number(v) for k, v in given.items()})
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    return system, tol


def _csv_floats(text: str, n: int, name: str) -> list[float]:
    try:
        values = [float(p) for p in text.split(",")]
    except ValueError:
        raise InputError(f"--{name}: malformed number list {text!r}") from None
    if len(values) != n:
        raise InputError(f"--{name}: expected {n} comma-separated numbers, got {len(values)}")
    if not all(math.isfinite(v) for v in values):
        raise InputError(f"--{name}: non-finite value")
    return values


def result_document(report: SolveReport, message: str = "") -> dict:
    sols = report.solutions
    return {
        "status": sols.tag.value,
        "branch": report.branch,
        "det_b": report.det_B,
        "solutions": [
            {"theta1": s.theta1, "theta2": s.theta2, "residual": s.residual} for s in sols.solutions
        ],
        "theta1_values": list(sols.theta1_values),
        "message": message,
    }


def error_document(message: str) -> dict:
    return {
        "status": "error",
        "branch": None,
        "det_b": None,
        "solutions": [],
        "theta1_values": [],
        "message": message,
    }


def _csv_row(index: int, doc: dict, micros: float | None) -> dict:
    sols = doc["solutions"]
    return {
        "index": index,
        "status": doc["status"],
        "branch": doc["branch"] or "",
        "n_solutions": len(sols),
        "max_residual": repr(max((s["residual"] for s in sols), default=0.0)),
        "micros": "" if micros is None else f"{micros:.1f}",
    }


def _write_csv(rows: list[dict], out) -> None:
    writer = csv.DictWriter(out, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)


def _exit_for(status: str) -> int:
    if status == SolutionTag.EMPTY.value:
        return EXIT_EMPTY
    return EXIT_OK


def _fail(msg: str) -> int:
    print(f"trigsolve: {msg}", file=sys.stderr)
    return EXIT_INPUT


def solve_line(line: str) -> tuple[dict, float | None]:
    """Solve one batch line; never raises."""
    try:
        doc = json.loads(line)
        system, tol = parse_system(doc)
    except (json.JSONDecodeError, ValueError) as exc:
        return error_document(str(exc)), None
    report = solve(system, tol)
    return result_document(report), report.elapsed * 1e6


def _read_lines(path: str) -> list[str]:
    with open(path, encoding="utf-8") as fh:
        return fh.read().splitlines()


# ---------------------------------------------------------------- commands


def cmd_solve(args: argparse.Namespace) -> int:
    try:
        if args.json:
            with open(args.json, encoding="utf-8") as fh:
                system, tol = parse_system(json.load(fh))
        else:
            if args.a is None or args.b is None or args.c is None:
                raise InputError("give --a, --b and --c, or --json FILE")
            a = _csv_floats(args.a, 4, "a")
            b = _csv_floats(args.b, 4, "b")
            c = _csv_floats(args.c, 2, "c")
            system = TrigSystem.of([a[:2], a[2:]], [b[:2], b[2:]], c)
            tol = DEFAULT_TOL
    except OSError as exc:
        return _fail(f"cannot read {args.json}: {exc.strerror}")
    except (json.JSONDecodeError, ValueError) as exc:
        return _fail(str(exc))
    report = solve(system, tol)
    doc = result_document(report)
    if args.format == "csv":
        _write_csv([_csv_row(0, doc, report.elapsed * 1e6)], sys.stdout)
    else:
        print(json.dumps(doc))
    return _exit_for(doc["status"])


def cmd_batch(args: argparse.Namespace) -> int:
    try:
        lines = _read_lines(args.infile)
    except OSError as exc:
        return _fail(f"cannot read {args.infile}: {exc.strerror}")
    if args.parallel > 1 and len(lines) > 1:
        with ProcessPoolExecutor(max_workers=args.parallel) as pool:
            results = list(pool.map(solve_line, lines, chunksize=max(1, len(lines) // (4 * args.parallel))))
    else:
        results = [solve_line(line) for line in lines]

    buf = io.StringIO()
    if args.format == "csv":
        _write_csv([_csv_row(i, doc, us) for i, (doc, us) in enumerate(results)], buf)
    else:
        for doc, _ in results:
            buf.write(json.dumps(doc) + "\n")
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(buf.getvalue())
        except OSError as exc:
            return _fail(f"cannot write {args.out}: {exc.strerror}")
    else:
        sys.stdout.write(buf.getvalue())
    return EXIT_OK


def cmd_random(args: argparse.Namespace) -> int:
    if args.count < 1:
        return _fail("--count must be >= 1")
    run = run_random(args.count, args.seed, args.singular, timing=args.timing)
    if args.format == "csv":
        rows = []
        for rec in run.records:
            report = rec["report"]
            micros = report.elapsed * 1e6 if args.timing else None
            rows.append(_csv_row(rec["index"], result_document(report), micros))
        _write_csv(rows, sys.stdout)
    else:
        print(json.dumps(run.summary, indent=2))
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    if args.grid < 256:
        return _fail("--grid must be at least 256")
    try:
        lines = _read_lines(args.infile)
    except OSError as exc:
        return _fail(f"cannot read {args.infile}: {exc.strerror}")
    records = []
    n_matched = 0
    for i, line in enumerate(lines):
        try:
            system, tol = parse_system(json.loads(line))
        except (json.JSONDecodeError, ValueError) as exc:
            records.append({"index": i, "match": False, "note": f"input error: {exc}"})
            continue
        report = solve(system, tol)
        found = oracle_solve(system, args.grid, tol_accept=args.accept)
        verdict = oracle_match(report, found, args.match)
        note = verdict.note
        if not verdict.ok:
            note = "unmatched (oracle resolution)" if args.grid < 1024 else "unmatched"
        n_matched += verdict.ok
        records.append(
            {
                "index": i,
                "match": verdict.ok,
                "status": report.status,
                "n_solver": verdict.n_solver,
                "n_oracle": verdict.n_oracle,
                "family_suspected": found.family_suspected,
                "max_distance": verdict.max_distance,
                "note": note,
            }
        )
    rate = n_matched / len(lines) if lines else 1.0
    print(json.dumps({"grid": args.grid, "match_rate": rate, "lines": records}, indent=2))
    return EXIT_OK


def cmd_ik(args: argparse.Namespace) -> int:
    try:
        arm = TwoLinkArm(args.l1, args.l2, Vec2(args.x, args.y))
    except ValueError as exc:
        return _fail(str(exc))
    sols = ik_two_link(arm)
    doc = {
        "status": sols.tag.value,
        "l1": arm.l1,
        "l2": arm.l2,
        "target": arm.target.as_list(),
        "solutions": [
            {"theta1": s.theta1, "theta2": s.theta2, "residual": s.residual} for s in sols.solutions
        ],
    }
    print(json.dumps(doc))
    return _exit_for(doc["status"])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="trigsolve", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one system")
    p.add_argument("--a", help="A entries, row-major: a11,a12,a21,a22")
    p.add_argument("--b", help="B entries, row-major")
    p.add_argument("--c", help="C entries: c1,c2")
    p.add_argument("--json", help="read the system document from FILE")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("batch", help="solve one system document per input line")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out")
    p.add_argument("--parallel", type=int, default=1)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("random", help="seeded self-test on systems with planted solutions")
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--singular", choices=("mixed", "none", "rank0", "rank1"), default="mixed")
    p.add_argument("--timing", action="store_true", help="include wall-clock statistics")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("oracle", help="cross-check solver output against brute force")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--grid", type=int, default=1024)
    p.add_argument("--accept", type=float, default=1e-8, help="oracle residual acceptance")
    p.add_argument("--match", type=float, default=1e-3, help="match distance in radians")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("ik", help="two-link planar inverse kinematics")
    p.add_argument("--l1", type=float, required=True)
    p.add_argument("--l2", type=float, required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--y", type=float, required=True)
    p.set_defaults(func=cmd_ik)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
