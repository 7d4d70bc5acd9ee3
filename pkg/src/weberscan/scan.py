"""Batch drivers: work partitioning over layers, a process pool, and JSONL checkpoints."""
from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Iterator

from . import golden
from .arith import primes_in
from .errors import CheckpointError, InvalidInput, WeberScanError
from .genus import UNIT_CAVEAT, genus, regulator_rank, weber_pipeline
from .stickelberger import FILTERS, PBound, candidate_primes, torsion_task

KINDS = ("torsion", "weber", "genus", "regulator")
FIELD_ORDER = ("kind", "N", "p", "c", "factors", "rank", "genus_exponent", "components",
               "verdict", "error", "caveats", "ms")


def make_record(kind: str, N: int, p: int, *, caveats=(), ms: float = 0, **payload) -> dict:
    """Output record with the fixed field order; absent optional fields are omitted."""
    rec = {"kind": kind, "N": N, "p": p}
    for key in FIELD_ORDER[3:-2]:
        if payload.get(key) is not None:
            rec[key] = payload[key]
    rec["caveats"] = list(caveats)
    rec["ms"] = int(round(ms))
    return rec


def dumps(rec: dict) -> str:
    return json.dumps(rec, separators=(",", ":"))


@dataclass(frozen=True)
class ScanJob:
    kind: str
    n_values: tuple = ()
    pairs: tuple = ()  # explicit (N, p) list; overrides n_values and the bound
    pmax: int | None = None
    budget: int | None = None
    pmin: int = 3
    filters: str = "all"
    method: str = "classsum"
    jobs: int = 1
    checkpoint: str | None = None
    timing: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidInput(f"kind must be one of {KINDS}")
        if self.filters not in FILTERS:
            raise InvalidInput(f"filter must be one of {FILTERS}")
        if self.pairs:
            object.__setattr__(self, "pairs", tuple(sorted({(int(N), int(p)) for N, p in self.pairs})))
        else:
            if not self.n_values:
                raise InvalidInput("empty N range")
            if min(self.n_values) < 2:
                raise InvalidInput("N must be at least 2")
            object.__setattr__(self, "n_values", tuple(sorted(set(self.n_values))))
            rule = self.rule
            if max(rule.bound(N) for N in self.n_values) >= 2**31:
                raise InvalidInput("p bound exceeds 2^31")
        if self.jobs < 1:
            raise InvalidInput("jobs must be positive")

    @property
    def rule(self) -> PBound:
        return PBound(self.pmax, self.budget, self.pmin)

    def fingerprint(self) -> dict:
        """Fields that determine the output; jobs, checkpoint path and timing do not."""
        d = asdict(self)
        for k in ("jobs", "checkpoint", "timing"):
            d.pop(k)
        d["n_values"] = list(d["n_values"])
        d["pairs"] = [list(x) for x in d["pairs"]]
        return d

    def units(self) -> list[tuple[int, tuple]]:
        """(N, primes) work units in N order."""
        if self.pairs:
            by_n: dict[int, list[int]] = {}
            for N, p in self.pairs:
                by_n.setdefault(N, []).append(p)
            return [(N, tuple(ps)) for N, ps in sorted(by_n.items())]
        rule = self.rule
        top = max(rule.bound(N) for N in self.n_values)
        primes = primes_in(rule.pmin, top)
        out = []
        for N in self.n_values:
            flt = self.filters
            if self.kind in ("genus",) and flt == "all":
                flt = "split-K"
            ps = candidate_primes(N, rule, flt, primes)
            out.append((N, tuple(ps)))
        return out

    def cost_estimate(self) -> int:
        """Rough inner-iteration count: sum of p over the work."""
        return sum(sum(ps) for _, ps in self.units())


def _error_record(kind, N, p, exc, ms):
    return make_record(kind, N, p, error=f"{exc.kind}: {exc}", ms=ms)


def _torsion_unit(N, primes, method, timing, keep_empty):
    out = []
    for p in primes:
        rep = torsion_task(N, p, method=method)
        if rep.factors or rep.error or keep_empty:
            out.append(make_record("torsion", N, p, c=rep.c or None, factors=rep.factors,
                                   error=rep.error, caveats=rep.caveats,
                                   ms=rep.ms if timing else 0))
    return out


def _weber_unit(N, primes, timing, keep_empty):
    out = []
    for p in primes:
        t0 = time.perf_counter()
        try:
            rep = weber_pipeline(N, p)
        except WeberScanError as exc:
            out.append(_error_record("weber", N, p, exc, 0))
            continue
        if not rep.components and not keep_empty:
            continue
        ms = (time.perf_counter() - t0) * 1000 if timing else 0
        top = next((r for r in rep.components if r.N == N), None)
        gen = dict(rep.genus).get(N)
        out.append(make_record(
            "weber", N, p, c=top.c if top else None, factors=top.factors if top else None,
            rank=gen.rank if gen else None, genus_exponent=gen.genus_exponent if gen else None,
            components=[r.N for r in rep.components], verdict=rep.verdict,
            caveats=rep.caveats, ms=ms))
    return out


def _genus_unit(N, primes, timing):
    out = []
    for p in primes:
        t0 = time.perf_counter()
        try:
            sm = genus(N, p)
        except WeberScanError as exc:
            out.append(_error_record("genus", N, p, exc, 0))
            continue
        ms = (time.perf_counter() - t0) * 1000 if timing else 0
        out.append(make_record("genus", N, p, rank=sm.rank, genus_exponent=sm.genus_exponent,
                               caveats=sm.caveats, ms=ms))
    return out


def _regulator_unit(N, primes, timing):
    out = []
    for p in primes:
        t0 = time.perf_counter()
        try:
            r = regulator_rank(N, p)
        except WeberScanError as exc:
            out.append(_error_record("regulator", N, p, exc, 0))
            continue
        ms = (time.perf_counter() - t0) * 1000 if timing else 0
        out.append(make_record("regulator", N, p, rank=r,
                               caveats=[UNIT_CAVEAT], ms=ms))
    return out


def run_unit(kind: str, N: int, primes: tuple, method: str = "classsum", timing: bool = False,
             keep_empty: bool = False) -> list[dict]:
    """All records for one layer; a pure function of its arguments (timing aside)."""
    if kind == "torsion":
        return _torsion_unit(N, primes, method, timing, keep_empty)
    if kind == "weber":
        return _weber_unit(N, primes, timing, keep_empty)
    if kind == "genus":
        return _genus_unit(N, primes, timing)
    if kind == "regulator":
        return _regulator_unit(N, primes, timing)
    raise InvalidInput(f"unknown kind {kind!r}")


# -- checkpoints ------------------------------------------------------------------------

def _read_checkpoint(path: str, job: ScanJob, force: bool) -> tuple[dict[int, list[dict]], int]:
    """Completed layers and the byte offset just past the last completion marker."""
    done: dict[int, list[dict]] = {}
    pending: list[dict] = []
    good_end = 0
    with open(path, "rb") as fh:
        data = fh.read()
    if not data:
        return done, 0
    offset = 0
    header_seen = False
    for raw in data.splitlines(keepends=True):
        line_end = offset + len(raw)
        try:
            if not raw.endswith(b"\n"):
                raise ValueError("truncated line")
            obj = json.loads(raw)
            if not isinstance(obj, dict):
                raise ValueError("not an object")
        except ValueError as exc:
            if force:
                break
            raise CheckpointError(f"{path}: unreadable line at byte {offset} ({exc}); "
                                  "rerun with the override flag to discard it") from None
        if not header_seen:
            if obj.get("checkpoint") != job.fingerprint():
                raise CheckpointError(f"{path} was written by a different job")
            header_seen = True
            good_end = line_end
        elif "done" in obj:
            done[int(obj["done"])] = pending
            pending = []
            good_end = line_end
        elif obj.get("kind") == job.kind:
            pending.append(obj)
        elif not force:
            raise CheckpointError(f"{path}: unexpected record at byte {offset}")
        offset = line_end
    if not header_seen:
        if not force:
            raise CheckpointError(f"{path}: missing header")
        good_end = 0
    return done, good_end


def _write_unit(fh, N: int, records: list[dict]):
    fh.write("".join(dumps(r) + "\n" for r in records) + dumps({"done": N}) + "\n")
    fh.flush()
    os.fsync(fh.fileno())


def default_jobs() -> int:
    env = os.environ.get("WEBERSCAN_JOBS")
    try:
        return max(1, int(env)) if env else 1
    except ValueError:
        raise InvalidInput(f"WEBERSCAN_JOBS={env!r} is not an integer") from None


def run_job(job: ScanJob, force: bool = False, keep_empty: bool = False,
            progress=None) -> Iterator[dict]:
    """Records in (N, p) order. With a checkpoint, completed layers are replayed, not recomputed."""
    units = job.units()
    done: dict[int, list[dict]] = {}
    fh = None
    if job.checkpoint:
        if os.path.exists(job.checkpoint) and os.path.getsize(job.checkpoint):
            done, end = _read_checkpoint(job.checkpoint, job, force)
            fh = open(job.checkpoint, "r+", encoding="utf-8")
            fh.truncate(end)
            fh.seek(end)
            if end == 0:
                fh.write(dumps({"checkpoint": job.fingerprint()}) + "\n")
        else:
            fh = open(job.checkpoint, "w", encoding="utf-8")
            fh.write(dumps({"checkpoint": job.fingerprint()}) + "\n")
            fh.flush()
    todo = [(N, ps) for N, ps in units if N not in done]
    args = dict(method=job.method, timing=job.timing, keep_empty=keep_empty)
    try:
        if job.jobs > 1 and len(todo) > 1:
            pool = ProcessPoolExecutor(max_workers=job.jobs)
            futures = {N: pool.submit(run_unit, job.kind, N, ps, **args) for N, ps in todo}
        else:
            pool, futures = None, {}
        try:
            for N, ps in units:
                if N in done:
                    recs = done[N]
                else:
                    recs = futures[N].result() if pool else run_unit(job.kind, N, ps, **args)
                    if fh:
                        _write_unit(fh, N, recs)
                if progress:
                    progress(N)
                yield from sorted(recs, key=lambda r: r["p"])
        finally:
            if pool:
                pool.shutdown(cancel_futures=True)
    finally:
        if fh:
            fh.close()


def golden_tables() -> dict:
    """Embedded expected results, keyed by table; each carries a short description."""
    return {
        "annihilators": {"description": "all-primes annihilator table, p <= 2e5/N",
                         "rows": golden.TABLE_ROWS},
        "corollary": {"description": "totally split pairs with a degree-one annihilator",
                      "rows": golden.COROLLARY_ROWS},
        "regulator": {"description": "regulator ranks", "rows": golden.REGULATOR_RANKS},
        "genus": {"description": "normic-symbol matrix ranks", "rows": golden.GENUS_RANKS},
        "prime_powers": {"description": "prime-power layers with nontrivial T* component",
                         "rows": golden.PRIME_POWER_SOLUTIONS},
    }


def lookup(table: str, N: int, p: int) -> list:
    """Golden entries for (N, p); annihilator rows keep their SPURIOUS tag."""
    if table == "annihilators":
        return [{"factor": list(co), "tag": "SPURIOUS" if sp else sec}
                for n, q, co, sp, sec in golden.TABLE_ROWS if (n, q) == (N, p)]
    if table == "corollary":
        return [a for n, q, a in golden.COROLLARY_ROWS if (n, q) == (N, p)]
    if table in ("regulator", "genus"):
        src = golden.REGULATOR_RANKS if table == "regulator" else golden.GENUS_RANKS
        return [src[(N, p)]] if (N, p) in src else []
    raise InvalidInput(f"unknown table {table!r}")
