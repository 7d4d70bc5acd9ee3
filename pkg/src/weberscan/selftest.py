"""Quick consistency run against the embedded reference tables."""
from __future__ import annotations

import sys
import time

from . import golden
from .genus import genus, regulator_rank
from .stickelberger import annihilate

LONG_GENUS = {(81, 487)}
LONG_TORSION = {(1024, 114689)}


def _check(name: str, ok: bool, detail: str, out) -> bool:
    out.write(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}\n")
    return ok


def run_selftest(long: bool = False, out=None) -> bool:
    out = out or sys.stdout
    t0 = time.perf_counter()
    ok = True

    rows: dict[tuple, list] = {}
    spurious = set()
    for N, p, co, sp, _ in golden.TABLE_ROWS:
        (spurious.add((N, p)) if sp else rows.setdefault((N, p), []).append(list(co)))
    missing = []
    for (N, p), facs in sorted(rows.items()):
        got = annihilate(N, p).factors
        missing += [(N, p, f) for f in facs if f not in got]
    ok &= _check("annihilator table", not missing, f"{len(rows)} pairs, missing {missing}", out)
    extra = [(N, p) for N, p in sorted(spurious) if annihilate(N, p).factors]
    ok &= _check("spurious rows absent", not extra, f"{sorted(spurious)} present: {extra}", out)

    for N, p, a in golden.COROLLARY_ROWS:
        if (N, p) in LONG_TORSION and not long:
            continue
        got = annihilate(N, p).factors
        ok &= _check(f"corollary N={N} p={p}", [a, 1] in got, f"expected x+{a}, got {got}", out)

    for (N, p), r in sorted(golden.REGULATOR_RANKS.items()):
        got = regulator_rank(N, p)
        ok &= _check(f"regulator N={N} p={p}", got == r, f"expected {r}, got {got}", out)

    for (N, p), r in sorted(golden.GENUS_RANKS.items()):
        if (N, p) in LONG_GENUS and not long:
            continue
        got = genus(N, p, route="ring").rank
        ok &= _check(f"genus N={N} p={p}", got == r, f"expected {r}, got {got}", out)

    out.write(f"{'all passed' if ok else 'FAILURES'} in {time.perf_counter() - t0:.1f}s\n")
    return ok
