"""Command-line entry point: ``domtorus {gamma,alpha,table,construct,verify,normalize}``.

Exit codes: 0 success / agreement, 1 disagreement or invalid input function,
2 usage or input error, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .assignment import (
    AssignmentError,
    parse_grid,
    serialize_grid,
    set_to_grid,
    verify_italian,
    weight,
)
from .constructions import ConstructionFailed, build_idf, build_independent_set
from .digraph import make_torus
from .formulas import alpha_formula, gamma_formula
from .normalizer import NormalizationError, PreconditionViolated, normalize
from .solver import NAIVE_CAP, PROFILE_CAP, CapExceeded, SolverError, alpha_exact, gamma_naive, gamma_torus_dp

EXIT_OK, EXIT_DISAGREE, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3
CSV_HEADER = ["m", "n", "alpha_formula", "gamma_formula", "alpha_dp", "gamma_dp", "agree"]


class UsageError(Exception):
    pass


@dataclass
class Report:
    command: str
    inputs: dict
    results: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    elapsed_ms: float = 0.0

    @property
    def agreement(self) -> bool:
        return len(set(self.results.values())) <= 1

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "agreement": self.agreement,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }

    def to_text(self) -> str:
        args = " ".join(str(v) for v in self.inputs.values())
        lines = [f"{self.command} {args}"]
        lines += [f"  {k}: {v}" for k, v in self.results.items()]
        lines += [f"  note: {x}" for x in self.notes]
        lines.append(f"  agreement: {str(self.agreement).lower()}")
        return "\n".join(lines)


def _threads() -> int:
    raw = os.environ.get("DOMTORUS_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise UsageError(f"DOMTORUS_THREADS must be an integer, got {raw!r}") from None
    return os.cpu_count() or 1


def _check_dims(m, n):
    if m < 2 or n < 2:
        raise UsageError(f"need m, n >= 2, got ({m}, {n})")


def cmd_gamma(m, n, method="all", naive_cap=NAIVE_CAP, profile_cap=PROFILE_CAP, closure="loop"):
    _check_dims(m, n)
    t0 = time.perf_counter()
    rep = Report("gamma", {"m": m, "n": n, "method": method})
    wanted = ("formula", "dp", "naive") if method == "all" else (method,)
    for name in wanted:
        try:
            if name == "formula":
                rep.results[name] = gamma_formula(m, n)
            elif name == "dp":
                res = gamma_torus_dp(m, n, profile_cap=profile_cap, closure=closure)
                rep.results[name] = res.value
                if res.stats["transposed"]:
                    rep.notes.append(f"dp solved the isomorphic torus ({n}, {m})")
            else:
                rep.results[name] = gamma_naive(make_torus(m, n), cap=naive_cap).value
        except CapExceeded as exc:
            if method != "all":
                raise UsageError(f"{exc}; use --naive-cap/--profile-cap or another method") from None
            rep.notes.append(f"{name} skipped: {exc}")
    rep.elapsed_ms = 1000 * (time.perf_counter() - t0)
    return rep


def cmd_alpha(m, n, method="all", profile_cap=PROFILE_CAP):
    _check_dims(m, n)
    t0 = time.perf_counter()
    rep = Report("alpha", {"m": m, "n": n, "method": method})
    wanted = ("formula", "dp") if method == "all" else (method,)
    for name in wanted:
        try:
            if name == "formula":
                rep.results[name] = alpha_formula(m, n)
            else:
                rep.results[name] = alpha_exact(m, n, profile_cap=profile_cap).value
        except CapExceeded as exc:
            if method != "all":
                raise UsageError(f"{exc}; use --profile-cap or another method") from None
            rep.notes.append(f"{name} skipped: {exc}")
    rep.elapsed_ms = 1000 * (time.perf_counter() - t0)
    return rep


def table_row(m, n, dp_max):
    row = {"m": m, "n": n, "alpha_formula": alpha_formula(m, n), "gamma_formula": gamma_formula(m, n),
           "alpha_dp": None, "gamma_dp": None}
    if min(m, n) <= dp_max:
        row["alpha_dp"] = alpha_exact(m, n, profile_cap=dp_max).value
        row["gamma_dp"] = gamma_torus_dp(m, n, profile_cap=dp_max).value
    row["agree"] = all(
        row[dp] is None or row[dp] == row[fm]
        for dp, fm in (("alpha_dp", "alpha_formula"), ("gamma_dp", "gamma_formula"))
    )
    return row


def cmd_table(m_max, n_max, dp_max=6):
    if m_max < 2 or n_max < 2:
        raise UsageError("table ranges must be >= 2")
    pairs = [(m, n) for m in range(2, m_max + 1) for n in range(2, n_max + 1)]
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        # map() yields in submission order, so rows stay sorted by (m, n)
        return list(pool.map(lambda mn: table_row(*mn, dp_max), pairs))


def format_table(rows, fmt, elapsed_ms=0.0, inputs=None):
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in rows:
            w.writerow([_csv_cell(r[k]) for k in CSV_HEADER])
        return buf.getvalue()
    if fmt == "json":
        doc = {
            "command": "table",
            "inputs": inputs or {},
            "rows": rows,
            "agreement": all(r["agree"] for r in rows),
            "elapsed_ms": round(elapsed_ms, 3),
        }
        return json.dumps(doc, indent=2) + "\n"
    widths = [max(len(h), 5) for h in CSV_HEADER]
    out = ["  ".join(h.rjust(w) for h, w in zip(CSV_HEADER, widths))]
    for r in rows:
        out.append("  ".join(_csv_cell(r[k]).rjust(w) for k, w in zip(CSV_HEADER, widths)))
    return "\n".join(out) + "\n"


def read_table_csv(text):
    """Inverse of the CSV emitter."""
    rows = []
    for rec in csv.DictReader(io.StringIO(text)):
        row = {}
        for k in CSV_HEADER:
            v = rec[k]
            row[k] = (v == "true") if k == "agree" else (int(v) if v != "" else None)
        rows.append(row)
    return rows


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def cmd_construct(m, n, kind="idf"):
    _check_dims(m, n)
    if kind == "idf":
        return serialize_grid(build_idf(m, n))
    return set_to_grid(build_independent_set(m, n), m, n)


def _read_text(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def cmd_verify(text, m=None, n=None):
    f = parse_grid(text)
    gm, gn = f.host.dims
    if (m is not None and m != gm) or (n is not None and n != gn):
        raise UsageError(f"grid is {gm}x{gn}, expected {m}x{n}")
    violations = verify_italian(f)
    return {
        "valid": not violations,
        "weight": weight(f),
        "violations": [
            {"vertex": list(f.host.coord(v.vertex)), "reason": v.reason} for v in violations
        ],
    }


def cmd_normalize(text):
    f = parse_grid(text)
    if verify_italian(f):
        raise UsageError("input grid is not an Italian dominating function")
    out, trace = normalize(f)
    return out, trace


def build_parser():
    p = argparse.ArgumentParser(prog="domtorus", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gamma", help="Italian domination number of C_m x C_n")
    g.add_argument("m", type=int)
    g.add_argument("n", type=int)
    g.add_argument("--method", choices=["formula", "dp", "naive", "all"], default="all")
    g.add_argument("--naive-cap", type=int, default=NAIVE_CAP)
    g.add_argument("--profile-cap", type=int, default=PROFILE_CAP)
    g.add_argument("--closure", choices=["loop", "power"], default="loop")
    g.add_argument("--format", choices=["text", "json"], default="text")

    a = sub.add_parser("alpha", help="independence number of C_m x C_n")
    a.add_argument("m", type=int)
    a.add_argument("n", type=int)
    a.add_argument("--method", choices=["formula", "dp", "all"], default="all")
    a.add_argument("--profile-cap", type=int, default=PROFILE_CAP)
    a.add_argument("--format", choices=["text", "json"], default="text")

    t = sub.add_parser("table", help="tabulate formulas against the exact solvers")
    t.add_argument("m_max", type=int)
    t.add_argument("n_max", type=int)
    t.add_argument("--format", choices=["csv", "json", "text"], default="csv")
    t.add_argument("--dp-max", type=int, default=6,
                   help="solve exactly only when min(m, n) <= this (default 6)")

    c = sub.add_parser("construct", help="print an optimal construction as a grid")
    c.add_argument("m", type=int)
    c.add_argument("n", type=int)
    c.add_argument("--kind", choices=["idf", "independent-set"], default="idf")

    v = sub.add_parser("verify", help="check a grid file (use - for stdin)")
    v.add_argument("file")
    v.add_argument("m", type=int, nargs="?")
    v.add_argument("n", type=int, nargs="?")
    v.add_argument("--format", choices=["text", "json"], default="text")

    z = sub.add_parser("normalize", help="make the zero set of a valid grid independent")
    z.add_argument("file")
    z.add_argument("--trace-out", help="write the step trace here instead of after the grid")
    return p


def _emit_report(rep: Report, fmt):
    if fmt == "json":
        print(json.dumps(rep.to_json(), indent=2))
    else:
        print(rep.to_text())
    return EXIT_OK if rep.agreement else EXIT_DISAGREE


def run(args) -> int:
    if args.command == "gamma":
        rep = cmd_gamma(args.m, args.n, args.method, args.naive_cap, args.profile_cap, args.closure)
        return _emit_report(rep, args.format)
    if args.command == "alpha":
        return _emit_report(cmd_alpha(args.m, args.n, args.method, args.profile_cap), args.format)
    if args.command == "table":
        t0 = time.perf_counter()
        rows = cmd_table(args.m_max, args.n_max, args.dp_max)
        inputs = {"m_max": args.m_max, "n_max": args.n_max, "dp_max": args.dp_max}
        sys.stdout.write(format_table(rows, args.format, 1000 * (time.perf_counter() - t0), inputs))
        return EXIT_OK if all(r["agree"] for r in rows) else EXIT_DISAGREE
    if args.command == "construct":
        print(cmd_construct(args.m, args.n, args.kind))
        return EXIT_OK
    if args.command == "verify":
        res = cmd_verify(_read_text(args.file), args.m, args.n)
        if args.format == "json":
            print(json.dumps(res, indent=2))
        else:
            print(f"{'valid' if res['valid'] else 'invalid'} weight={res['weight']}"
                  f" violations={len(res['violations'])}")
            for x in res["violations"]:
                print(f"  ({x['vertex'][0]},{x['vertex'][1]}) {x['reason']}")
        return EXIT_OK if res["valid"] else EXIT_DISAGREE
    if args.command == "normalize":
        out, trace = cmd_normalize(_read_text(args.file))
        print(serialize_grid(out))
        if args.trace_out:
            with open(args.trace_out, "w", encoding="utf-8") as fh:
                fh.write(trace.to_text())
        elif len(trace):
            print()
            sys.stdout.write(trace.to_text())
        return EXIT_OK
    raise UsageError(f"unknown command {args.command!r}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return run(args)
    except (UsageError, AssignmentError, CapExceeded, PreconditionViolated, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SolverError, NormalizationError, ConstructionFailed) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
