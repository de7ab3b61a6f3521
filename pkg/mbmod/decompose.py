from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from mbmod.connect import Decomposition, components
from mbmod.star import IndexSet
from mbmod.scalar import Scalar
from mbmod.table import ActionTable, CoordVector, Entry


@dataclass(frozen=True, eq=False)
class ComponentModule:
    """
    The submodule spanned by {v_i : i in component}, as a view over the
    parent's entries. entry_positions are the parent's positions whose
    source lies in the component.
    """
    parent: ActionTable
    component: IndexSet
    entry_positions: np.ndarray

    @property
    def representative(self) -> int:
        return self.component[0]

    @property
    def inherited_basis(self) -> tuple[str, ...]:
        return tuple(self.parent.v_name(i) for i in self.component)

    @property
    def entry_count(self) -> int:
        return int(self.entry_positions.shape[0])

    def entries(self) -> Iterator[Entry]:
        for position in self.entry_positions.tolist():
            yield self.parent.entry(position)

    def materialize(self) -> ActionTable:
        """Standalone table over the component, reindexed 0..|component|-1 in ascending order."""
        t = self.parent
        new_index = np.full(t.v_size, -1, dtype=np.int64)
        new_index[list(self.component)] = np.arange(len(self.component), dtype=np.int64)
        positions = self.entry_positions
        return ActionTable.from_arrays(
            t.field, len(self.component), t.w_size,
            new_index[t.sources[positions]], t.columns[positions], new_index[t.targets[positions]],
            [t.coefficients[p] for p in positions.tolist()],
            v_labels=[t.v_name(i) for i in self.component],
            w_labels=t.w_labels,
        )


def modules_for(t: ActionTable, decomposition: Decomposition) -> list[ComponentModule]:
    if decomposition.count == 0:
        return []

    entry_blocks = decomposition.labels[t.sources]
    order = np.argsort(entry_blocks, kind="stable")
    sizes = np.bincount(entry_blocks, minlength=decomposition.count)
    routed = np.split(order, np.cumsum(sizes)[:-1])
    return [ComponentModule(t, block, positions) for block, positions in zip(decomposition.blocks, routed)]


def decompose(t: ActionTable) -> list[ComponentModule]:
    """One submodule per connection class; together they form a direct sum equal to V."""
    return modules_for(t, components(t))


def is_closed_subset(t: ActionTable, s: Iterable[int]) -> bool:
    """True iff every product v_a w_j with a in s lands in the span of s."""
    members = np.zeros(t.v_size, dtype=np.bool_)
    for a in s:
        t.check_v(a)
        members[a] = True
    from_members = members[t.sources]
    return bool(members[t.targets[from_members]].all())


def split_vector(decomposition: Decomposition, v: CoordVector) -> list[CoordVector]:
    """The parts of v in each component, in block order; they sum back to v."""
    parts: list[list[tuple[int, Scalar]]] = [[] for _ in range(decomposition.count)]
    for index, value in v.items:
        parts[int(decomposition.labels[index])].append((index, value))
    return [CoordVector("V", tuple(part)) for part in parts]
