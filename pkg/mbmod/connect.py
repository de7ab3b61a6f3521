from collections import deque
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from mbmod import kernels
from mbmod.errors import NotConnected
from mbmod.star import IndexSet, WIndexOrBar, phi
from mbmod.table import ActionTable
from utils.logger import log


@dataclass(frozen=True)
class ConnectionWitness:
    """The steps j_1..j_n of a connection from source to target."""
    source: int
    target: int
    steps: tuple[WIndexOrBar, ...] = ()


@dataclass(frozen=True, eq=False)
class Decomposition:
    """
    Partition of 0..v_size-1. labels[i] is the block id of i; block ids are
    ordered by their representative (smallest member).
    """
    labels: np.ndarray
    count: int

    @cached_property
    def blocks(self) -> tuple[IndexSet, ...]:
        order = np.argsort(self.labels, kind="stable")
        sizes = np.bincount(self.labels, minlength=self.count)
        return tuple(tuple(part.tolist()) for part in np.split(order, np.cumsum(sizes)[:-1])) if self.count > 0 else ()

    @property
    def representatives(self) -> tuple[int, ...]:
        return tuple(block[0] for block in self.blocks)

    def block_of(self, i: int) -> IndexSet:
        return self.blocks[int(self.labels[i])]

    def same_block(self, a: int, b: int) -> bool:
        return bool(self.labels[a] == self.labels[b])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Decomposition):
            return NotImplemented
        return self.count == other.count and np.array_equal(self.labels, other.labels)

    __hash__ = None  # type: ignore[assignment]

def decomposition_from_blocks(v_size: int, blocks: list[IndexSet]) -> Decomposition:
    labels = np.full(v_size, -1, dtype=np.int64)
    for block in sorted(blocks):
        labels[list(block)] = labels.max(initial=-1) + 1
    return Decomposition(labels, len(blocks))


def components(t: ActionTable) -> Decomposition:
    """Classes of the connection relation, as connected components of the support graph."""
    labels, count = kernels.component_labels(t.v_size, t.sources, t.targets)
    log(f"{t.entry_count} entries over {t.v_size} indices form {count} components")
    return Decomposition(labels, count)


class SupportGraph:
    """
    Undirected view of the action: an edge a -> b labelled (j, forward) for every
    entry (a, j, b, c) and (j, barred) in the other direction. Adjacency of each
    vertex is sorted by (neighbor, j, barred).
    """

    def __init__(self, t: ActionTable):
        self.v_size = t.v_size
        vertices = np.concatenate((t.sources, t.targets))
        neighbors = np.concatenate((t.targets, t.sources))
        labels = np.concatenate((t.columns, t.columns))
        barred = np.concatenate((np.zeros(t.entry_count, dtype=np.int64), np.ones(t.entry_count, dtype=np.int64)))

        order = np.lexsort((barred, labels, neighbors, vertices))
        self.neighbor_array = neighbors[order]
        self.label_array = labels[order]
        self.barred_array = barred[order]
        self.offsets = np.zeros(t.v_size + 1, dtype=np.int64)
        if t.v_size > 0:
            np.cumsum(np.bincount(vertices, minlength=t.v_size), out=self.offsets[1:])

    def neighbors(self, a: int) -> list[tuple[int, WIndexOrBar]]:
        low, high = int(self.offsets[a]), int(self.offsets[a + 1])
        return [(int(b), WIndexOrBar(int(j), bool(barred)))
                for b, j, barred in zip(self.neighbor_array[low:high], self.label_array[low:high], self.barred_array[low:high])]


def find_witness(t: ActionTable, source: int, target: int) -> ConnectionWitness:
    """Shortest connection by breadth-first search; raises NotConnected across components."""
    t.check_v(source)
    t.check_v(target)
    if source == target:
        return ConnectionWitness(source, target)

    graph = SupportGraph(t)
    parent: dict[int, tuple[int, WIndexOrBar]] = {}
    queue = deque([source])
    seen = {source}
    while queue:
        a = queue.popleft()
        for b, step in graph.neighbors(a):
            if b in seen:
                continue
            seen.add(b)
            parent[b] = (a, step)
            if b == target:
                steps: list[WIndexOrBar] = []
                current = target
                while current != source:
                    current, step = parent[current]
                    steps.append(step)
                return ConnectionWitness(source, target, tuple(reversed(steps)))
            queue.append(b)

    raise NotConnected(source, target)


def verify_witness(t: ActionTable, w: ConnectionWitness) -> bool:
    """Evaluates the chain of phi images literally."""
    if not (0 <= w.source < t.v_size and 0 <= w.target < t.v_size):
        return False
    if len(w.steps) == 0:
        return w.source == w.target
    if any(not 0 <= x.j < t.w_size for x in w.steps):
        return False

    current: IndexSet = (w.source,)
    for x in w.steps:
        if len(current) == 0:
            return False
        current = phi(t, current, x)
    return w.target in current


def reverse_witness(w: ConnectionWitness) -> ConnectionWitness:
    return ConnectionWitness(w.target, w.source, tuple(x.bar() for x in reversed(w.steps)))


def concatenate_witness(first: ConnectionWitness, second: ConnectionWitness) -> ConnectionWitness:
    if first.target != second.source:
        raise ValueError(f"Witness ends at {first.target} but the next one starts at {second.source}")
    return ConnectionWitness(first.source, second.target, first.steps + second.steps)
