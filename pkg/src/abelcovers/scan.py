"""Bounded scans over (group, s) cells, with per-row consistency checks.

Cells are independent, so they are farmed out to a process pool and the
rows merged and sorted afterwards; the output does not depend on the
number of workers.
"""

from __future__ import annotations

import csv
import io
import json
import os
import re
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

from .classifier import (
    TOTALLY_DECOMPOSABLE,
    ClassificationReport,
    classify,
    decomposable_structure_check,
)
from .errors import GroupSpecError, OracleFailure, ScanBoundExceeded, UnknownFormat
from .groups import AbelianGroup, automorphism_table, tables
from .hodge import STRICT, dim_sym_square_invariants, eigenspace_multiplicities, factors
from .monodromy import enumerate_data

FORMATS = ("csv", "json", "md")
CSV_HEADER = ["group", "s", "theta", "genus", "dim_Z", "dim_SG", "star", "factors", "verdict"]
VERDICTS = ("SPECIAL", "NOT_SPECIAL", "INCONCLUSIVE")

DEFAULT_SCAN_MAX_ORDER = 64
DEFAULT_SCAN_MAX_POINTS = 12


def scan_max_order() -> int:
    """Largest |G| a scan accepts; SCANNER_MAX_GROUP_ORDER overrides the default."""
    value = os.environ.get("SCANNER_MAX_GROUP_ORDER")
    return int(value) if value else DEFAULT_SCAN_MAX_ORDER


def abelian_groups_up_to(n_max: int) -> list[AbelianGroup]:
    """One group per isomorphism class, orders 2..n_max, in invariant-factor form n1 | n2 | ..."""
    out = []
    for n in range(2, n_max + 1):
        out.extend(abelian_groups_of_order(n))
    return out


def abelian_groups_of_order(n: int) -> list[AbelianGroup]:
    per_prime = []
    for p, e in _factor(n).items():
        per_prime.append([(p, lam) for lam in _partitions(e)])
    found = []
    for choice in _cartesian(per_prime):
        width = max(len(lam) for _, lam in choice)
        inv = [1] * width
        for p, lam in choice:
            # largest parts go to the last invariant factors
            for i, part in enumerate(lam):
                inv[width - 1 - i] *= p**part
        found.append(tuple(inv))
    return [AbelianGroup(t) for t in sorted(found)]


def _factor(n: int) -> dict[int, int]:
    out, p = {}, 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _partitions(e: int, largest: int | None = None) -> list[tuple[int, ...]]:
    largest = e if largest is None else largest
    if e == 0:
        return [()]
    out = []
    for first in range(min(e, largest), 0, -1):
        out.extend((first, *rest) for rest in _partitions(e - first, first))
    return out


def _cartesian(lists):
    if not lists:
        yield ()
        return
    for head in lists[0]:
        for tail in _cartesian(lists[1:]):
            yield (head, *tail)


def parse_groups(spec: str) -> list[AbelianGroup]:
    """Parse e.g. ``"6,2x2x2"`` or ``"all:16"`` (also ``"<=16"``); duplicates are dropped."""
    groups: list[AbelianGroup] = []
    for item in (part.strip() for part in spec.split(",")):
        if not item:
            continue
        m = re.fullmatch(r"(?:all:|<=)(\d+)", item)
        if m:
            groups.extend(abelian_groups_up_to(int(m.group(1))))
        elif re.fullmatch(r"\d+(x\d+)*", item):
            groups.append(AbelianGroup(tuple(int(n) for n in item.split("x"))))
        else:
            raise GroupSpecError(f"cannot parse group spec {item!r}")
    if not groups:
        raise GroupSpecError(f"group spec {spec!r} names no groups")
    return sorted(set(groups), key=lambda G: (G.order, G.cyclic_orders))


def parse_points(spec: str) -> tuple[int, int]:
    m = re.fullmatch(r"(\d+)(?:\.\.(\d+))?", spec.strip())
    if not m:
        raise GroupSpecError(f"cannot parse branch point range {spec!r}; use LO..HI")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) else lo
    if lo < 4 or hi < lo:
        raise GroupSpecError(f"branch point range {lo}..{hi} must satisfy 4 <= LO <= HI")
    return lo, hi


@dataclass(frozen=True)
class ScanJob:
    groups: tuple[AbelianGroup, ...]
    s_min: int
    s_max: int
    genus_max: int | None = None
    assertions: frozenset[str] = frozenset()
    jobs: int = 1
    mode: str = STRICT
    max_points: int = DEFAULT_SCAN_MAX_POINTS

    def __post_init__(self):
        if self.jobs < 1:
            raise ValueError("worker count must be >= 1")
        if self.genus_max is not None and self.genus_max < 1:
            raise ValueError("genus cap must be positive")
        if self.s_max > self.max_points:
            raise ScanBoundExceeded(f"s = {self.s_max} exceeds the scan bound {self.max_points}")
        bound = scan_max_order()
        too_big = [G for G in self.groups if G.order > bound]
        if too_big:
            raise ScanBoundExceeded(f"|{too_big[0]}| = {too_big[0].order} exceeds the scan bound {bound}")

    def cells(self) -> list[tuple[AbelianGroup, int]]:
        return [(G, s) for G in self.groups for s in range(self.s_min, self.s_max + 1)]


@dataclass(frozen=True)
class ScanRow:
    group: tuple[int, ...]
    s: int
    theta: tuple[tuple[int, ...], ...]
    genus: int
    dim_Z: int
    dim_SG: int
    star: bool
    factors: str
    verdict: str
    codes: tuple[int, ...] = field(default=(), compare=False, repr=False)

    def sort_key(self):
        order = 1
        for n in self.group:
            order *= n
        return (order, self.group, self.s, self.codes)

    def csv_fields(self) -> list[str]:
        return [
            "x".join(map(str, self.group)),
            str(self.s),
            json.dumps([list(x) for x in self.theta], separators=(",", ":")),
            str(self.genus),
            str(self.dim_Z),
            str(self.dim_SG),
            "true" if self.star else "false",
            self.factors,
            self.verdict,
        ]

    def to_json(self) -> dict:
        out = asdict(self)
        del out["codes"]
        out["group"] = list(self.group)
        out["theta"] = [list(x) for x in self.theta]
        return out


def run_cell(group: AbelianGroup, s: int, genus_max: int | None = None,
             assertions: frozenset[str] = frozenset(), mode: str = STRICT) -> list[ScanRow]:
    rows = []
    for datum in enumerate_data(group, s):
        if genus_max is not None and datum.genus > genus_max:
            continue
        profile = eigenspace_multiplicities(datum)
        fm = factors(profile)
        if sum(profile.mult) != datum.genus:
            raise OracleFailure(f"sum of multiplicities != genus for {datum}")
        used = assertions
        if TOTALLY_DECOMPOSABLE in assertions and not decomposable_structure_check(fm):
            used = assertions - {TOTALLY_DECOMPOSABLE}
        report = classify(datum, used, mode=mode)
        if report.dim_SG != dim_sym_square_invariants(profile):
            raise OracleFailure(f"dim S(G) != dim (S^2 H^0(K))^G for {datum}")
        rows.append(row_from_report(report))
    return rows


def row_from_report(report: ClassificationReport) -> ScanRow:
    d = report.datum
    return ScanRow(
        group=d.group.cyclic_orders,
        s=d.s,
        theta=d.theta,
        genus=d.genus,
        dim_Z=report.dim_Z,
        dim_SG=report.dim_SG,
        star=report.star_holds,
        factors=report.factor_multiset.summary(),
        verdict=report.verdict.value,
        codes=d.codes(),
    )


def _run_cell_args(args):
    return run_cell(*args)


def run_scan(job: ScanJob) -> list[ScanRow]:
    # Build the shared tables up front: bound violations surface here, and
    # forked workers inherit the caches.
    for G in job.groups:
        tables(G)
        automorphism_table(G)
    args = [(G, s, job.genus_max, job.assertions, job.mode) for G, s in job.cells()]
    if job.jobs == 1:
        chunks = map(_run_cell_args, args)
        rows = [row for chunk in chunks for row in chunk]
    else:
        with ProcessPoolExecutor(max_workers=job.jobs) as pool:
            rows = [row for chunk in pool.map(_run_cell_args, args) for row in chunk]
    return sorted(rows, key=ScanRow.sort_key)


def summarize(rows: Iterable[ScanRow]) -> dict[str, int]:
    counts = Counter(row.verdict for row in rows)
    out = {v: counts.get(v, 0) for v in VERDICTS}
    out["total"] = sum(out.values())
    return out


def emit(rows: Sequence[ScanRow], fmt: str, summary: dict[str, int] | None = None) -> bytes:
    """Serialise rows; identical input gives identical bytes."""
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for row in rows:
            writer.writerow(row.csv_fields())
        if summary is not None:
            buf.write("# " + " ".join(f"{k}={v}" for k, v in summary.items()) + "\n")
        return buf.getvalue().encode()
    if fmt == "json":
        obj: dict = {"rows": [row.to_json() for row in rows]}
        if summary is not None:
            obj["summary"] = summary
        return (json.dumps(obj, indent=2) + "\n").encode()
    if fmt == "md":
        lines = ["| " + " | ".join(CSV_HEADER) + " |", "|" + "---|" * len(CSV_HEADER)]
        for row in rows:
            cells = row.csv_fields()
            cells[2] = "`" + cells[2] + "`"
            lines.append("| " + " | ".join(cells) + " |")
        if summary is not None:
            lines.append("")
            lines.append(", ".join(f"{k}: {v}" for k, v in summary.items()))
        return ("\n".join(lines) + "\n").encode()
    raise UnknownFormat(f"unknown output format {fmt!r}; expected one of {FORMATS}")
