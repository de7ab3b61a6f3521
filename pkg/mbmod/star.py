from dataclasses import dataclass
from typing import Iterable

from constants.instance import bar_suffix
from mbmod.table import ActionTable

IndexSet = tuple[int, ...]

def index_set(indices: Iterable[int]) -> IndexSet:
    return tuple(sorted(set(int(i) for i in indices)))


@dataclass(frozen=True, order=True)
class WIndexOrBar:
    """A W index j, or its formal inverse j~ when barred."""
    j: int
    barred: bool = False

    def bar(self) -> "WIndexOrBar":
        return WIndexOrBar(self.j, not self.barred)


def all_steps(t: ActionTable) -> list[WIndexOrBar]:
    return [WIndexOrBar(j, barred) for j in range(t.w_size) for barred in (False, True)]

def step_name(t: ActionTable, x: WIndexOrBar) -> str:
    return t.w_name(x.j) + (bar_suffix if x.barred else "")


def star(t: ActionTable, i: int, x: WIndexOrBar) -> IndexSet:
    t.check_v(i)
    t.check_w(x.j)
    if x.barred:
        return tuple(t.inverse_index(i, x.j).tolist())

    position = t.lookup(i, x.j)
    return () if position is None else (int(t.targets[position]),)

def phi(t: ActionTable, u: Iterable[int], x: WIndexOrBar) -> IndexSet:
    t.check_w(x.j)
    result: set[int] = set()
    for i in u:
        result.update(star(t, i, x))
    return tuple(sorted(result))
