"""
Brute-force versions of the connection and minimality computations. They
only scan the entry list, never the derived indexes, and exist to cross-check
the fast paths on small instances.
"""
from collections import deque

from mbmod.connect import Decomposition, decomposition_from_blocks
from mbmod.errors import SizeLimitExceeded
from mbmod.star import IndexSet, WIndexOrBar, all_steps
from mbmod.table import ActionTable
from utils.config import config
from utils.logger import log


def _check_size(t: ActionTable) -> None:
    limit = config["oracle"]["max_size"]
    if t.v_size > limit:
        raise SizeLimitExceeded(t.v_size, limit)


def _triples(t: ActionTable) -> list[tuple[int, int, int]]:
    return list(zip(t.sources.tolist(), t.columns.tolist(), t.targets.tolist()))


def oracle_star(t: ActionTable, i: int, x: WIndexOrBar) -> frozenset[int]:
    if x.barred:
        return frozenset(a for a, j, k in _triples(t) if j == x.j and k == i)
    return frozenset(k for a, j, k in _triples(t) if a == i and j == x.j)


Stars = dict[tuple[int, WIndexOrBar], frozenset[int]]


def _star_images(t: ActionTable) -> Stars:
    stars: Stars = {(a, x): frozenset() for a in range(t.v_size) for x in all_steps(t)}
    for a, j, k in _triples(t):
        stars[(a, WIndexOrBar(j))] |= {k}
        stars[(k, WIndexOrBar(j, True))] |= {a}
    return stars


def _reached(t: ActionTable, stars: Stars, i: int, max_len: int, stop_at: int | None = None) -> frozenset[int]:
    """Every index in some phi chain image from {i} of length at most max_len, plus i itself."""
    reached = {i}
    if stop_at == i:
        return frozenset(reached)

    steps = all_steps(t)
    start = frozenset([i])
    seen = {start}
    queue = deque([(start, 0)])
    while queue:
        current, depth = queue.popleft()
        if depth >= max_len:
            continue
        for x in steps:
            image = frozenset().union(*(stars[(a, x)] for a in current))
            reached.update(image)
            if stop_at is not None and stop_at in image:
                return frozenset(reached)
            if len(image) > 0 and image not in seen:
                seen.add(image)
                queue.append((image, depth + 1))

    return frozenset(reached)


def oracle_connected(t: ActionTable, i: int, k: int, max_len: int | None = None) -> bool:
    """
    Searches step sequences over J and J~ breadth first, evaluating the phi
    chain on sets. Each reachable set is expanded once.
    """
    t.check_v(i)
    t.check_v(k)
    if max_len is None:
        max_len = t.v_size * 2 * t.w_size
    return k in _reached(t, _star_images(t), i, max_len, stop_at=k)


def oracle_components(t: ActionTable) -> Decomposition:
    _check_size(t)
    log(f"Running connection oracle on {t.v_size} indices")

    # indices with the same set of connected indices share a block
    blocks: dict[frozenset[int], list[int]] = {}
    for i, related in enumerate(oracle_relation(t)):
        blocks.setdefault(related, []).append(i)

    return decomposition_from_blocks(t.v_size, [tuple(block) for block in blocks.values()])


def oracle_relation(t: ActionTable) -> list[frozenset[int]]:
    """For every i, the set of k that i is connected to, searched from i alone."""
    _check_size(t)
    stars = _star_images(t)
    max_len = t.v_size * 2 * t.w_size
    return [_reached(t, stars, i, max_len) for i in range(t.v_size)]


def oracle_minimal_closed(t: ActionTable) -> list[IndexSet]:
    """Enumerates every nonempty subset as a bitmask and keeps the inclusion-minimal closed ones."""
    _check_size(t)
    n = t.v_size
    log(f"Running minimality oracle over {2 ** n - 1} subsets")

    images = [0] * n
    for a, _, k in _triples(t):
        images[a] |= 1 << k

    closed = [mask for mask in range(1, 1 << n)
              if all(images[a] & ~mask == 0 for a in range(n) if mask >> a & 1)]
    closed.sort(key=lambda mask: (bin(mask).count("1"), mask))

    minimal: list[int] = []
    for mask in closed:
        if not any(smaller & mask == smaller for smaller in minimal):
            minimal.append(mask)

    return sorted(tuple(a for a in range(n) if mask >> a & 1) for mask in minimal)
