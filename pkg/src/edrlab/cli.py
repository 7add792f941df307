"""Command-line front end.

Exit codes: 0 success, 1 a counterexample was found, 2 usage error,
3 a budget-limited UNKNOWN under ``--strict-unknown``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import classify as C
from . import lab
from .constructive import EuclidError, cr3_witness, eq4_witness, snf
from .lifting import PreconditionError, prop4
from .matrices import Mat
from .polys import parse_int_poly
from .rings import UNKNOWN, RingError, _split_top, make_ring
from .scan import DEFAULT_SEED, MATRIX_BUDGET, SAMPLE_SIZE
from .unitmaps import upsilon_image

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_USAGE, EXIT_UNKNOWN = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _common(p: argparse.ArgumentParser):
    p.add_argument("--budget-nodes", type=int, default=MATRIX_BUDGET,
                   help="largest tuple space enumerated exhaustively before sampling")
    p.add_argument("--samples", type=int, default=SAMPLE_SIZE, help="sample size beyond the budget")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--strict-unknown", action="store_true", help="exit 3 when any result is UNKNOWN")
    p.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
    p.add_argument("--out", help="write output to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="edrlab", description="Finite ring and matrix-lifting laboratory.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="flags of one ring or a batch of rings")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--ring")
    g.add_argument("--rings-file", help="file with one ring spec per line (CSV batch mode)")
    p.add_argument("--flags", default="all", help="comma separated flag names")
    _common(p)

    p = sub.add_parser("matrix", help="matrix-level checks")
    msub = p.add_subparsers(dest="matrix_command", required=True)
    q = msub.add_parser("check", help="lifting properties of a 2x2 matrix")
    q.add_argument("--ring", required=True)
    q.add_argument("--mat", required=True)
    q.add_argument("--props", default="all", help="all or a subset of se,e,dl,wdl,nf")
    _common(q)

    p = sub.add_parser("upsilon", help="image of the unit product map")
    p.add_argument("--ring", required=True)
    for name in ("a", "b", "c"):
        p.add_argument(f"--{name}", required=True)
    _common(p)

    p = sub.add_parser("snf", help="Smith normal form certificate over Z or F_p[x]")
    p.add_argument("--base", default="Z", help="Z or F_p with p prime, e.g. F_3")
    p.add_argument("--mat", required=True)
    _common(p)

    p = sub.add_parser("cr3", help="bounded witness for the EDD pair criterion over Z")
    for name in ("a", "b", "s"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--bound", type=int, default=30)
    _common(p)

    p = sub.add_parser("eq4", help="bounded witness for the EDD test equation over Z")
    for name in ("a", "u", "t"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--bound", type=int, default=30)
    _common(p)

    p = sub.add_parser("verify", help="check the theorem suite over a corpus")
    p.add_argument("--corpus", default="default", help="default, small, char2 or a comma separated spec list")
    p.add_argument("--theorems", default="all")
    _common(p)

    p = sub.add_parser("hunt", help="first corpus hit of a flag predicate")
    p.add_argument("predicate", help='e.g. "bezout & !hermite"')
    p.add_argument("--corpus", default="default")
    _common(p)
    return ap


def _cfg(args) -> C.ScanConfig:
    if args.budget_nodes <= 0 or args.samples <= 0:
        raise UsageError("budgets must be positive")
    return C.ScanConfig(budget=args.budget_nodes, sample=args.samples, seed=args.seed)


def _emit(args, text: str):
    if not text.endswith("\n"):
        text += "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _table(rows, header) -> str:
    rows = [[str(x) for x in r] for r in rows]
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths))]
    lines += ["  ".join(x.ljust(w) for x, w in zip(r, widths)) for r in rows]
    return "\n".join(lines)


def _flat(obj, prefix="") -> list[tuple[str, str]]:
    if isinstance(obj, dict):
        out = []
        for k, v in obj.items():
            out += _flat(v, f"{prefix}.{k}" if prefix else str(k))
        return out
    return [(prefix, json.dumps(obj) if isinstance(obj, (list, dict)) else str(obj))]


def _render(args, obj) -> str:
    if args.format == "json":
        return lab.dumps(obj)
    rows = _flat(obj)
    return _csv(rows, ["key", "value"]) if args.format == "csv" else _table(rows, ["key", "value"])


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _classify_one(job):
    spec, flags, cfg = job
    return C.classify(make_ring(spec), flags, cfg).to_json()


def cmd_classify(args) -> int:
    cfg = _cfg(args)
    flags = C.ALL_FLAGS if args.flags == "all" else tuple(f.strip() for f in args.flags.split(","))
    if args.ring:
        specs = [args.ring]
    else:
        with open(args.rings_file, encoding="utf-8") as fh:
            specs = [ln.split(",")[0].strip() for ln in fh if ln.strip() and not ln.startswith("#")]
        if specs and specs[0].lower() in ("ring", "spec"):
            specs = specs[1:]
    for s in specs:
        if not getattr(make_ring(s), "is_finite", True):
            raise UsageError(f"classify needs a finite ring, got {s}")
    jobs = [(s, flags, cfg) for s in specs]
    if args.threads > 1 and len(jobs) > 1:
        import multiprocessing as mp

        with mp.get_context("fork").Pool(args.threads) as pool:
            reports = pool.map(_classify_one, jobs, chunksize=1)
    else:
        reports = [_classify_one(j) for j in jobs]
    if args.format == "json":
        _emit(args, lab.dumps(reports[0] if args.ring else reports))
    else:
        names = list(reports[0]["flags"]) if reports else []
        rows = [[r["ring"]] + [r["flags"][n] for n in names] for r in reports]
        header = ["ring"] + names
        _emit(args, _csv(rows, header) if args.format == "csv" else _table(rows, header))
    unknown = any(v == "UNKNOWN" for r in reports for v in r["flags"].values())
    return EXIT_UNKNOWN if unknown and args.strict_unknown else EXIT_OK


def cmd_matrix_check(args) -> int:
    R = make_ring(args.ring)
    A = Mat.parse(R, args.mat)
    if A.shape != (2, 2):
        raise UsageError("matrix check expects a 2x2 matrix")
    props = ("se", "e", "dl", "wdl", "nf") if args.props == "all" else tuple(p.strip() for p in args.props.split(","))
    bad = set(props) - {"se", "e", "dl", "wdl", "nf"}
    if bad:
        raise UsageError(f"unknown properties {sorted(bad)}")
    rec = prop4(A, props).to_json()
    out = {"ring": R.spec, "matrix": A.tolist(), **rec}
    _emit(args, _render(args, out))
    unknown = any(v == "UNKNOWN" for v in rec["flags"].values())
    return EXIT_UNKNOWN if unknown and args.strict_unknown else EXIT_OK


def cmd_upsilon(args) -> int:
    R = make_ring(args.ring)
    img = upsilon_image(R, args.a, args.b, args.c)
    _emit(args, _render(args, img.to_json()))
    return EXIT_OK


def _parse_rect(text: str, conv) -> list[list]:
    s = text.strip().replace(" ", "")
    if not (s.startswith("[[") and s.endswith("]]")):
        raise UsageError(f"matrix literal {text!r} must look like [[a,b],[c,d]]")
    rows = []
    for part in _split_top(s[1:-1], ","):
        rows.append([conv(x) for x in _split_top(part[1:-1], ",")])
    if len({len(r) for r in rows}) != 1:
        raise UsageError("ragged matrix literal")
    return rows


def cmd_snf(args) -> int:
    base = args.base.strip()
    if base == "Z":
        B = _parse_rect(args.mat, int)
        cert = snf(B)
    elif base.startswith("F_") or base.startswith("F"):
        try:
            p = int(base.lstrip("F_").split("[")[0])
        except ValueError:
            raise UsageError(f"bad base {base!r}") from None
        B = _parse_rect(args.mat, parse_int_poly)
        cert = snf(B, p)
    else:
        raise UsageError(f"bad base {base!r}; use Z or F_p")
    cert.verify()
    _emit(args, _render(args, cert.to_json()))
    return EXIT_OK


def _witness_cmd(args, fn, names) -> int:
    vals = [getattr(args, n) for n in names]
    w = fn(*vals, bound=args.bound)
    out = {n: v for n, v in zip(names, vals)}
    out["bound"] = args.bound
    if w is UNKNOWN:
        out["status"] = "UNKNOWN"
        _emit(args, _render(args, out))
        return EXIT_UNKNOWN if args.strict_unknown else EXIT_OK
    out["status"] = "FOUND"
    out["witness"] = w
    _emit(args, _render(args, out))
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = _cfg(args)
    try:
        ths = lab.resolve_theorems(args.theorems)
    except ValueError as e:
        raise UsageError(str(e)) from None
    report = lab.sweep(args.corpus, ths, cfg, threads=args.threads)
    if args.format == "json":
        _emit(args, lab.dumps(report))
    else:
        rows = [[c["theorem"], c["ring"], c["verdict"], c["coverage"]] for c in report["cases"]]
        header = ["theorem", "ring", "verdict", "coverage"]
        body = _csv(rows, header) if args.format == "csv" else _table(rows, header)
        if args.format == "pretty":
            body += "\n\n" + "  ".join(f"{k}={v}" for k, v in report["summary"].items())
        _emit(args, body)
    if report["summary"][lab.COUNTEREXAMPLE]:
        return EXIT_COUNTEREXAMPLE
    if report["summary"][lab.UNKNOWN_V] and args.strict_unknown:
        return EXIT_UNKNOWN
    return EXIT_OK


def cmd_hunt(args) -> int:
    cfg = _cfg(args)
    try:
        hit = lab.hunt(args.predicate, args.corpus, cfg)
    except ValueError as e:
        raise UsageError(str(e)) from None
    _emit(args, _render(args, {"predicate": args.predicate, "hit": hit}))
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    handlers = {
        "classify": cmd_classify, "upsilon": cmd_upsilon, "snf": cmd_snf, "verify": cmd_verify, "hunt": cmd_hunt,
        "cr3": lambda a: _witness_cmd(a, cr3_witness, ("a", "b", "s")),
        "eq4": lambda a: _witness_cmd(a, eq4_witness, ("a", "u", "t")),
        "matrix": cmd_matrix_check,
    }
    try:
        if args.threads <= 0:
            raise UsageError("--threads must be positive")
        return handlers[args.command](args)
    except (UsageError, RingError, PreconditionError, EuclidError, ValueError, OSError) as e:
        print(f"edrlab: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
