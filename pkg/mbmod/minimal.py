import heapq
from dataclasses import dataclass, field
from typing import Iterable, Literal

import numpy as np

from mbmod import kernels
from mbmod.connect import components
from mbmod.decompose import ComponentModule, decompose
from mbmod.errors import EmptyModule, NotStarMultiplicative
from mbmod.star import IndexSet, WIndexOrBar, index_set
from mbmod.table import ActionTable
from utils.logger import log

MinimalityMethod = Literal["connectivity", "closure-scan"]


@dataclass(frozen=True)
class ClosureReport:
    """
    Least closed superset of seed. trace maps every member added by the
    closure to the entry position that first produced it; seed members
    are absent from trace.
    """
    seed: IndexSet
    closure: IndexSet
    trace: dict[int, int] = field(default_factory=dict)


@dataclass(frozen=True)
class StarMultReport:
    holds: bool
    violations: tuple[tuple[int, int, WIndexOrBar], ...] = ()


@dataclass(frozen=True)
class MinimalityReport:
    minimal: bool
    method: MinimalityMethod


def forward_closure(t: ActionTable, seed: Iterable[int]) -> ClosureReport:
    seed_set = index_set(seed)
    for i in seed_set:
        t.check_v(i)

    members = set(seed_set)
    trace: dict[int, int] = {}
    worklist = list(seed_set)
    heapq.heapify(worklist)
    while worklist:
        a = heapq.heappop(worklist)
        for position in t.row(a):
            k = int(t.targets[position])
            if k not in members:
                members.add(k)
                trace[k] = position
                heapq.heappush(worklist, k)

    return ClosureReport(seed_set, tuple(sorted(members)), trace)


def check_star_multiplicative(t: ActionTable) -> StarMultReport:
    """
    Every entry (b, j, a, c) puts b in a * j~, so some entry (a, j', b, c')
    must exist. Violations are reported as (a, b, j~) sorted by (a, b, j).
    """
    if t.entry_count == 0:
        return StarMultReport(True)

    size = np.int64(max(t.v_size, 1))
    present = np.unique(t.sources * size + t.targets)
    required = t.targets * size + t.sources
    missing = np.flatnonzero(~np.isin(required, present))
    if missing.size == 0:
        return StarMultReport(True)

    violations = sorted((int(t.targets[p]), int(t.sources[p]), WIndexOrBar(int(t.columns[p]), True)) for p in missing.tolist())
    return StarMultReport(False, tuple(violations))


def _forward_reaches_all(t: ActionTable) -> bool:
    n = t.v_size
    if not kernels.reachable(n, t.row_offsets, t.targets, 0).all():
        return False
    reverse_neighbors = np.ascontiguousarray(t.sources[t.inverse_order])
    return bool(kernels.reachable(n, t.inverse_offsets, reverse_neighbors, 0).all())


def is_minimal(t: ActionTable) -> MinimalityReport:
    """
    Minimal iff every singleton closure is all of I. Under star-multiplicativity
    this is decided by connectivity alone; otherwise by checking that index 0
    reaches, and is reached from, every index along forward products.
    """
    if t.v_size == 0:
        raise EmptyModule("The zero module has no nonzero submodule")

    if check_star_multiplicative(t).holds:
        return MinimalityReport(components(t).count == 1, "connectivity")

    return MinimalityReport(_forward_reaches_all(t), "closure-scan")


def minimal_closed_subsets(t: ActionTable) -> list[IndexSet]:
    """
    Inclusion-minimal nonempty closed subsets: the strongly connected
    components with no product leaving them. Pairwise disjoint, ordered by
    smallest member.
    """
    if t.v_size == 0:
        return []

    strong = kernels.strong_components(t.v_size, t.row_offsets, t.targets)
    count = int(strong.max()) + 1
    leaving = np.zeros(count, dtype=np.bool_)
    crossing = strong[t.sources] != strong[t.targets]
    leaving[strong[t.sources[crossing]]] = True

    sinks = np.flatnonzero(~leaving[strong])
    blocks: dict[int, list[int]] = {}
    for i in sinks.tolist():
        blocks.setdefault(int(strong[i]), []).append(i)

    result = sorted(tuple(members) for members in blocks.values())
    log(f"{len(result)} minimal closed subsets out of {count} strong components")
    return result


def minimal_decomposition(t: ActionTable) -> list[ComponentModule]:
    """The direct sum of minimal submodules; needs a star-multiplicative basis."""
    report = check_star_multiplicative(t)
    if not report.holds:
        raise NotStarMultiplicative(len(report.violations))
    return decompose(t)
