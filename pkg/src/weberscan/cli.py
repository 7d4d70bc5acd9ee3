"""Command-line interface.

Exit codes: 0 success, 2 usage error (including arguments the math rejects as malformed, such
as a composite p), 3 empty result, 4 mathematical failure with a structured error record.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

from .errors import InvalidInput, WeberScanError
from .scan import FIELD_ORDER, KINDS, ScanJob, default_jobs, dumps, make_record, run_job

EXIT_OK, EXIT_USAGE, EXIT_EMPTY, EXIT_MATH = 0, 2, 3, 4
JSON_FIELDS = ("factors", "components", "caveats")


def pretty_poly(coeffs) -> str:
    """[5, 1] -> 'x+5'."""
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        if i == 0:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(terms) or "0"


def to_csv(records, fh) -> None:
    """CSV with the record fields plus an additive human-readable 'pretty' column."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(list(FIELD_ORDER) + ["pretty"])
    for rec in records:
        row = []
        for key in FIELD_ORDER:
            val = rec.get(key)
            if val is None:
                row.append("")
            elif key in JSON_FIELDS:
                row.append(json.dumps(val, separators=(",", ":")))
            else:
                row.append(str(val))
        facs = rec.get("factors")
        row.append(" ; ".join(pretty_poly(f) for f in facs) if facs else "")
        writer.writerow(row)


def from_csv(text: str) -> list[dict]:
    """Inverse of :func:`to_csv` (the 'pretty' column is dropped)."""
    out = []
    for row in csv.DictReader(io.StringIO(text)):
        rec = {}
        for key in FIELD_ORDER:
            val = row.get(key, "")
            if val == "":
                if key == "caveats":
                    rec[key] = []
                continue
            if key in JSON_FIELDS:
                rec[key] = json.loads(val)
            elif key in ("kind", "verdict", "error"):
                rec[key] = val
            else:
                rec[key] = int(val)
        out.append(rec)
    return out


def from_jsonl(text: str) -> list[dict]:
    return [json.loads(line) for line in text.splitlines() if line.strip()]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"{text!r} must be positive")
    return v


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a comma-separated integer list") from None


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="weberscan", description=__doc__)
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    a = sub.add_parser("annihilate", help="annihilator factors of the measure for one (N, p)")
    a.add_argument("--N", type=_positive, required=True)
    a.add_argument("--p", type=_positive, required=True)
    a.add_argument("--c", type=_positive)
    a.add_argument("--method", choices=("classsum", "direct"), default="classsum")

    s = sub.add_parser("scan", help="scan a range of layers")
    s.add_argument("--kind", choices=KINDS, default="torsion")
    s.add_argument("--nmin", type=_positive, required=True)
    s.add_argument("--nmax", type=_positive, required=True)
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--pmax", type=_positive)
    g.add_argument("--pbudget", type=_positive)
    s.add_argument("--pmin", type=_positive, default=3)
    s.add_argument("--filter", choices=("all", "split-muN", "split-K"), default="all")
    s.add_argument("--jobs", type=_positive)
    s.add_argument("--checkpoint")
    s.add_argument("--force-resume", action="store_true",
                   help="discard unreadable checkpoint lines instead of refusing to resume")
    s.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    s.add_argument("--timing", action="store_true", help="fill ms (output is then not reproducible)")

    gn = sub.add_parser("genus", help="normic-symbol matrix rank for a prime-power layer")
    gn.add_argument("--N", type=_positive, required=True)
    gn.add_argument("--p", type=_positive, required=True)
    gn.add_argument("--mode", choices=("full", "circulant"), default="circulant")
    gn.add_argument("--route", choices=("ring", "embedding"))

    sp = sub.add_parser("split", help="decomposition of p in Q(N)")
    sp.add_argument("--N", type=_positive, required=True)
    sp.add_argument("--p", type=_positive, required=True)

    r = sub.add_parser("regrank", help="F_p-rank of the unit logarithm matrix")
    r.add_argument("--N", type=_positive, required=True)
    r.add_argument("--p", type=_positive, required=True)

    w = sub.add_parser("weber", help="torsion components and genus verdict for one (N, p)")
    w.add_argument("--N", type=_positive, required=True)
    w.add_argument("--p", type=_positive, required=True)

    c = sub.add_parser("chevalley", help="Chevalley fixed-point count")
    c.add_argument("--h", type=_positive, required=True)
    c.add_argument("--ram", type=_int_list, required=True, help="comma-separated ramification indices")
    c.add_argument("--deg", type=_positive, required=True)
    c.add_argument("--index", type=_positive, required=True)

    st = sub.add_parser("selftest", help="check the embedded reference tables")
    st.add_argument("--long", action="store_true")
    return ap


def _emit(rec: dict, out) -> None:
    out.write(dumps(rec) + "\n")


def _cmd_annihilate(args, out) -> int:
    from .stickelberger import annihilate, build_setup

    setup = build_setup(args.N, args.p, args.c)
    sys.stderr.write(f"estimate: ~{setup.cost_estimate():,} inner iterations (direct route)\n")
    rep = annihilate(args.N, args.p, args.c, args.method)
    _emit(make_record("torsion", rep.N, rep.p, c=rep.c, factors=rep.factors,
                      caveats=rep.caveats, ms=rep.ms), out)
    return EXIT_OK if rep.factors else EXIT_EMPTY


def _cmd_scan(args, out) -> int:
    if args.nmin > args.nmax:
        sys.stderr.write("weberscan: error: --nmin exceeds --nmax\n")
        return EXIT_USAGE
    job = ScanJob(kind=args.kind, n_values=tuple(range(args.nmin, args.nmax + 1)), pmax=args.pmax,
                  budget=args.pbudget, pmin=args.pmin, filters=args.filter,
                  jobs=args.jobs or default_jobs(), checkpoint=args.checkpoint, timing=args.timing)
    sys.stderr.write(f"estimate: ~{job.cost_estimate():,} inner iterations over "
                     f"{len(job.n_values)} layers, {job.jobs} worker(s)\n")
    records = run_job(job, force=args.force_resume)
    n = 0
    if args.format == "csv":
        recs = list(records)
        to_csv(recs, out)
        n = len(recs)
    else:
        for rec in records:
            _emit(rec, out)
            out.flush()
            n += 1
    return EXIT_OK if n else EXIT_EMPTY


def _cmd_genus(args, out) -> int:
    from .genus import genus

    t0 = time.perf_counter()
    sm = genus(args.N, args.p, args.mode, args.route)
    _emit(make_record("genus", args.N, args.p, rank=sm.rank, genus_exponent=sm.genus_exponent,
                      caveats=sm.caveats, ms=(time.perf_counter() - t0) * 1000), out)
    return EXIT_OK


def _cmd_split(args, out) -> int:
    from .layers import split_profile

    _emit(split_profile(args.N, args.p).as_dict(), out)
    return EXIT_OK


def _cmd_regrank(args, out) -> int:
    from .genus import UNIT_CAVEAT, regulator_rank

    t0 = time.perf_counter()
    r = regulator_rank(args.N, args.p)
    _emit(make_record("regulator", args.N, args.p, rank=r, caveats=[UNIT_CAVEAT],
                      ms=(time.perf_counter() - t0) * 1000), out)
    return EXIT_OK


def _cmd_weber(args, out) -> int:
    from .scan import run_unit

    recs = run_unit("weber", args.N, (args.p,), timing=True, keep_empty=True)
    for rec in recs:
        _emit(rec, out)
    if recs and "error" in recs[0]:
        return EXIT_MATH
    return EXIT_OK if recs and recs[0].get("components") else EXIT_EMPTY


def _cmd_chevalley(args, out) -> int:
    from .genus import chevalley_order

    out.write(f"{chevalley_order(args.h, args.ram, args.deg, args.index)}\n")
    return EXIT_OK


def _cmd_selftest(args, out) -> int:
    from .selftest import run_selftest

    return EXIT_OK if run_selftest(long=args.long, out=out) else EXIT_MATH


COMMANDS = {
    "annihilate": _cmd_annihilate, "scan": _cmd_scan, "genus": _cmd_genus, "split": _cmd_split,
    "regrank": _cmd_regrank, "weber": _cmd_weber, "chevalley": _cmd_chevalley,
    "selftest": _cmd_selftest,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return COMMANDS[args.cmd](args, out)
    except WeberScanError as exc:
        rec = {"kind": "error", "error": exc.kind, "message": str(exc)}
        for key in ("N", "p"):
            if hasattr(args, key):
                rec[key] = getattr(args, key)
        _emit(rec, out)
        if isinstance(exc, InvalidInput):
            sys.stderr.write(f"weberscan: error: {exc}\n")
            return EXIT_USAGE
        return EXIT_MATH


if __name__ == "__main__":
    raise SystemExit(main())
