"""Exhaustive enumeration of signed-basis Cayley tables and requirement filtering.

Tables are unital, so only the lower-right 3x3 block is free (8**9
candidates).  Requiring commutativity leaves the 6 upper-triangle entries
of that block (8**6); also pinning i*i = -1 leaves 5 (8**5 = 32,768).

Candidates are identified by an integer index whose base-8 digits are the
free entries in row-major order, so index order is the lexicographic order
of the free assignment.  Worker processes receive contiguous index ranges
and the merge concatenates their outputs in range order; the result is the
same for any worker count.

Predicates, cheapest first:

P_psi          span(1, i) closed and i*i = -1
P_phi_closed   span(j, k) closed
P_coupling     1*f and i*f lie in span(j, k) for f in {j, k}
P_phi_complex  span(j, k) has a unity e and an element u with u*u = -e
P_assoc        all 64 basis triples associate
"""
from __future__ import annotations

import json
import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from pathlib import Path
from typing import Iterator, Mapping

from .algebra import (
    BASIS_NAMES,
    Algebra,
    ComplexStructure,
    MultiplicationTable,
    SignedBasis,
    _complex_structure,
)

PREDICATES = ("P_psi", "P_phi_closed", "P_coupling", "P_phi_complex", "P_assoc")
PSI = (0, 1)
PHI = (2, 3)


def default_workers() -> int:
    return int(os.environ.get("OMEGA_WORKERS", "1"))


@dataclass(frozen=True)
class SearchConfig:
    require_commutative: bool = True
    require_i_squared_minus_one: bool = True
    predicates: frozenset = frozenset(PREDICATES)
    worker_count: int = field(default_factory=default_workers)
    output_path: str | None = None
    # extra pinned entries, {(row, col): "symbol"}; may make the space empty
    fixed_entries: Mapping[tuple[int, int], str] = field(default_factory=dict)

    def __post_init__(self):
        preds = frozenset(self.predicates)
        unknown = preds - set(PREDICATES)
        if unknown:
            raise ValueError(f"unknown predicates: {sorted(unknown)}")
        if not preds:
            raise ValueError("at least one predicate must be enabled")
        if self.worker_count < 1:
            raise ValueError("worker_count must be >= 1")
        object.__setattr__(self, "predicates", preds)

    @property
    def constraint_level(self) -> str:
        parts = ["unital"]
        if self.require_commutative:
            parts.append("commutative")
        if self.require_i_squared_minus_one:
            parts.append("i2=-1")
        parts += [f"{BASIS_NAMES[a]}{BASIS_NAMES[b]}={s}" for (a, b), s in sorted(self.fixed_entries.items())]
        return "+".join(parts)


@dataclass(frozen=True)
class _Layout:
    """Which of the 16 entries are free, pinned or mirrored."""

    free: tuple[tuple[int, int], ...]
    pinned: dict
    mirrored: bool
    empty: bool


def _layout(cfg: SearchConfig) -> _Layout:
    pinned: dict[tuple[int, int], int] = {}
    empty = False

    def pin(pos, code):
        nonlocal empty
        if pinned.get(pos, code) != code:
            empty = True
        pinned[pos] = code

    for a in range(4):
        pin((0, a), SignedBasis(1, a).code)
        pin((a, 0), SignedBasis(1, a).code)
    if cfg.require_i_squared_minus_one:
        pin((1, 1), SignedBasis(-1, 0).code)
    for (a, b), sym in cfg.fixed_entries.items():
        pin((a, b), SignedBasis.parse(sym).code)
    if cfg.require_commutative:
        for (a, b), code in list(pinned.items()):
            pin((b, a), code)
    free = tuple(
        (a, b)
        for a in range(1, 4)
        for b in range(1, 4)
        if (a, b) not in pinned and not (cfg.require_commutative and b < a)
    )
    return _Layout(free, pinned, cfg.require_commutative, empty)


def count_candidates(cfg: SearchConfig) -> int:
    """Closed-form size of the candidate space."""
    lay = _layout(cfg)
    return 0 if lay.empty else 8 ** len(lay.free)


def _fill(lay: _Layout, digits) -> tuple[int, ...]:
    codes = [0] * 16
    for (a, b), c in lay.pinned.items():
        codes[4 * a + b] = c
    for (a, b), c in zip(lay.free, digits):
        codes[4 * a + b] = c
        if lay.mirrored:
            codes[4 * b + a] = c
    return tuple(codes)


def _decode(index: int, width: int) -> list[int]:
    digits = [0] * width
    for pos in range(width - 1, -1, -1):
        index, digits[pos] = divmod(index, 8)
    return digits


def enumerate_codes(cfg: SearchConfig, start: int = 0, stop: int | None = None) -> Iterator[tuple[int, ...]]:
    """Row-major entry codes of every candidate with index in [start, stop)."""
    lay = _layout(cfg)
    if lay.empty:
        return
    total = 8 ** len(lay.free)
    stop = total if stop is None else min(stop, total)
    if start == 0 and stop == total:
        for digits in product(range(8), repeat=len(lay.free)):
            yield _fill(lay, digits)
        return
    for idx in range(start, stop):
        yield _fill(lay, _decode(idx, len(lay.free)))


def enumerate_tables(cfg: SearchConfig) -> Iterator[MultiplicationTable]:
    for codes in enumerate_codes(cfg):
        yield MultiplicationTable.from_codes(codes)


# -- predicates ---------------------------------------------------------------

@dataclass
class PredicateReport:
    results: dict = field(default_factory=dict)      # name -> True / False / None (not evaluated)
    witnesses: dict = field(default_factory=dict)    # name -> description of the deciding evidence
    phi_structure: ComplexStructure | None = None

    @property
    def passed(self) -> bool:
        return all(v is True for v in self.results.values())

    @property
    def first_failure(self) -> str | None:
        return next((k for k in PREDICATES if self.results.get(k) is False), None)


def _entry(codes, a, b) -> SignedBasis:
    return SignedBasis.from_code(codes[4 * a + b])


def _closure_witness(codes, left, right, target):
    for a in left:
        for b in right:
            e = _entry(codes, a, b)
            if e.basis not in target:
                return (BASIS_NAMES[a], BASIS_NAMES[b], str(e))
    return None


def _check_psi(codes, table):
    ii = _entry(codes, 1, 1)
    if ii != (-1, 0):
        return False, ("i", "i", str(ii))
    w = _closure_witness(codes, PSI, PSI, PSI)
    return w is None, w


def _check_phi_closed(codes, table):
    w = _closure_witness(codes, PHI, PHI, PHI)
    return w is None, w


def _check_coupling(codes, table):
    w = _closure_witness(codes, PSI, PHI, PHI)
    return w is None, w


def _check_phi_complex(codes, table):
    if _closure_witness(codes, PHI, PHI, PHI) is not None:
        return False, "span(j,k) not closed"
    cs = _complex_structure(Algebra(table()), PHI)
    if cs is None:
        return False, "no unity e with u*u = -e in span(j,k)"
    return True, cs


def _check_assoc(codes, table):
    for a in range(4):
        for b in range(4):
            s1, ab = _entry(codes, a, b)
            for c in range(4):
                s2, abc = _entry(codes, ab, c)
                s3, bc = _entry(codes, b, c)
                s4, a_bc = _entry(codes, a, bc)
                if (s1 * s2, abc) != (s3 * s4, a_bc):
                    return False, tuple(BASIS_NAMES[x] for x in (a, b, c))
    return True, None


_CHECKS = {
    "P_psi": _check_psi,
    "P_phi_closed": _check_phi_closed,
    "P_coupling": _check_coupling,
    "P_phi_complex": _check_phi_complex,
    "P_assoc": _check_assoc,
}


def _suite_codes(codes, predicates=PREDICATES, fail_fast=False) -> PredicateReport:
    report = PredicateReport(results={p: None for p in PREDICATES if p in predicates})
    cached = []

    def table():
        if not cached:
            cached.append(MultiplicationTable.from_codes(codes))
        return cached[0]

    for name in PREDICATES:
        if name not in predicates:
            continue
        ok, witness = _CHECKS[name](codes, table)
        report.results[name] = ok
        if name == "P_phi_complex" and ok:
            report.phi_structure = witness
        if witness is not None:
            report.witnesses[name] = witness
        if fail_fast and not ok:
            break
    return report


def predicate_suite(table: MultiplicationTable, predicates=PREDICATES, fail_fast: bool = False) -> PredicateReport:
    """Evaluate the requirement predicates on ``table`` in pruning order."""
    return _suite_codes(table.codes(), frozenset(predicates), fail_fast)


# -- symmetry -----------------------------------------------------------------

def _symmetries():
    for swap in (False, True):
        perm = (0, 1, 3, 2) if swap else (0, 1, 2, 3)
        for si, sj, sk in product((1, -1), repeat=3):
            yield perm, (1, si, sj, sk)


SYMMETRIES = tuple(_symmetries())


def apply_symmetry(codes, perm, signs) -> tuple[int, ...]:
    """Table in the new basis e'_a = signs[a] * e_perm[a] (perm an involution)."""
    src, cmap = _symmetry_maps(perm, signs)
    return tuple(m[codes[i]] for i, m in zip(src, cmap))


@lru_cache(maxsize=None)
def _symmetry_maps(perm, signs):
    src = tuple(4 * perm[a] + perm[b] for a in range(4) for b in range(4))
    cmap = []
    for a in range(4):
        for b in range(4):
            row = []
            for code in range(8):
                s, c = SignedBasis.from_code(code)
                nc = perm[c]
                row.append(SignedBasis(signs[a] * signs[b] * s * signs[nc], nc).code)
            cmap.append(tuple(row))
    return src, tuple(cmap)


def canonical_codes(codes) -> tuple[int, ...]:
    return min(apply_symmetry(codes, p, s) for p, s in SYMMETRIES)


def canonicalize(table: MultiplicationTable) -> MultiplicationTable:
    """Lexicographically smallest relabeling under j<->k swap and sign flips of i, j, k."""
    return MultiplicationTable.from_codes(canonical_codes(table.codes()), name=table.name)


# -- search -------------------------------------------------------------------

@dataclass
class SearchResult:
    total_candidates: int
    constraint_level: str
    predicates: tuple
    census: dict
    survivors: list            # raw surviving tables, enumeration order
    canonical: list            # (canonical table, multiplicity), sorted by canonical codes
    wall_time: float = 0.0

    def to_dict(self, include_timing: bool = True) -> dict:
        out = {
            "total_candidates": self.total_candidates,
            "constraint_level": self.constraint_level,
            "predicates": list(self.predicates),
            "first_failure_census": self.census,
            "survivor_count": len(self.survivors),
            "canonical_count": len(self.canonical),
            "survivors": [
                {"table": t.to_strings(), "canonical": canonicalize(t).to_strings()} for t in self.survivors
            ],
            "canonical_forms": [{"table": t.to_strings(), "multiplicity": m} for t, m in self.canonical],
        }
        if include_timing:
            out["wall_time_seconds"] = self.wall_time
        return out

    def to_json(self, include_timing: bool = True) -> str:
        return json.dumps(self.to_dict(include_timing), indent=1, sort_keys=True)


def _scan(args):
    cfg, start, stop = args
    survivors = []
    census = Counter()
    for codes in enumerate_codes(cfg, start, stop):
        rep = _suite_codes(codes, cfg.predicates, fail_fast=True)
        fail = rep.first_failure
        census[fail or "passed"] += 1
        if fail is None:
            survivors.append(codes)
    return survivors, census


def _ranges(total: int, parts: int):
    step, extra = divmod(total, parts)
    lo = 0
    for p in range(parts):
        hi = lo + step + (p < extra)
        yield lo, hi
        lo = hi


def search(cfg: SearchConfig) -> SearchResult:
    """Enumerate, filter, canonicalize and deduplicate; write JSON if configured."""
    t0 = time.perf_counter()
    total = count_candidates(cfg)
    jobs = [(cfg, lo, hi) for lo, hi in _ranges(total, cfg.worker_count) if hi > lo]
    if cfg.worker_count > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.worker_count) as pool:
            parts = list(pool.map(_scan, jobs))
    else:
        parts = [_scan(job) for job in jobs]

    survivors: list[tuple[int, ...]] = []
    census: Counter = Counter({name: 0 for name in PREDICATES if name in cfg.predicates})
    census["passed"] = 0
    for surv, cen in parts:
        survivors.extend(surv)
        census.update(cen)

    classes = Counter(canonical_codes(c) for c in survivors)
    result = SearchResult(
        total_candidates=total,
        constraint_level=cfg.constraint_level,
        predicates=tuple(p for p in PREDICATES if p in cfg.predicates),
        census=dict(sorted(census.items())),
        survivors=[MultiplicationTable.from_codes(c) for c in survivors],
        canonical=[(MultiplicationTable.from_codes(c), classes[c]) for c in sorted(classes)],
        wall_time=time.perf_counter() - t0,
    )
    if cfg.output_path:
        Path(cfg.output_path).write_text(result.to_json() + "\n", encoding="utf-8")
    return result


def load_result(path: str | Path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
