from dataclasses import dataclass
from typing import Iterable, Iterator, Literal, Sequence

import numpy as np

from constants.instance import max_basis_size, v_prefix, w_prefix
from mbmod.errors import (DuplicateLabel, DuplicatePair, FieldMismatch, IndexOutOfRange, InstanceError, InvalidSize, UnknownIndex,
                          ZeroCoefficient)
from mbmod.scalar import FieldSpec, RawScalar, Scalar

Space = Literal["V", "W"]

@dataclass(frozen=True)
class Entry:
    """v_i w_j = c v_k"""
    i: int
    j: int
    k: int
    c: Scalar


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.ascontiguousarray(array, dtype=np.int64)
    array.setflags(write=False)
    return array

def _offsets(keys: np.ndarray, size: int) -> np.ndarray:
    offsets = np.zeros(size + 1, dtype=np.int64)
    if size > 0:
        np.cumsum(np.bincount(keys, minlength=size), out=offsets[1:])
    return offsets

def _check_labels(space: str, labels: Sequence[str] | None, size: int) -> tuple[str, ...] | None:
    if labels is None:
        return None
    labels = tuple(labels)
    if len(labels) != size:
        raise InvalidSize(f"{space} has {size} basis vectors but {len(labels)} labels")
    seen: set[str] = set()
    for label in labels:
        if type(label) is not str:
            raise InvalidSize(f"{space} labels must be strings")
        if label in seen:
            raise DuplicateLabel(space, label)
        seen.add(label)
    return labels


@dataclass(frozen=True, eq=False)
class ActionTable:
    """
    Sparse action of the W basis on the V basis, one entry per nonzero
    product v_i w_j = c v_k. Entries are stored column-wise, sorted by (i, j).

    row_offsets indexes entries by source i; inverse_order lists entry
    positions sorted by (k, j, i) and inverse_offsets indexes it by target k.
    Immutable after construction.
    """
    field: FieldSpec
    v_size: int
    w_size: int
    sources: np.ndarray
    columns: np.ndarray
    targets: np.ndarray
    coefficients: tuple[RawScalar, ...]
    v_labels: tuple[str, ...] | None
    w_labels: tuple[str, ...] | None
    row_offsets: np.ndarray
    inverse_order: np.ndarray
    inverse_offsets: np.ndarray

    @staticmethod
    def from_arrays(field: FieldSpec, v_size: int, w_size: int,
                    sources: np.ndarray, columns: np.ndarray, targets: np.ndarray,
                    coefficients: Sequence[RawScalar],
                    v_labels: Sequence[str] | None = None, w_labels: Sequence[str] | None = None) -> "ActionTable":
        """Validates and canonicalizes raw columns. Coefficients must already be reduced in field."""
        if type(v_size) is not int or type(w_size) is not int or v_size < 0 or w_size < 0:
            raise InvalidSize(f"Invalid sizes {v_size}x{w_size}")
        if v_size > max_basis_size or w_size > max_basis_size:
            raise InvalidSize(f"Sizes {v_size}x{w_size} exceed the supported maximum of {max_basis_size}")

        sources = np.asarray(sources, dtype=np.int64)
        columns = np.asarray(columns, dtype=np.int64)
        targets = np.asarray(targets, dtype=np.int64)
        if not (sources.shape == columns.shape == targets.shape) or sources.shape[0] != len(coefficients):
            raise InvalidSize("Entry columns have different lengths")

        for space, values, size in (("V", sources, v_size), ("W", columns, w_size), ("V", targets, v_size)):
            bad = np.flatnonzero((values < 0) | (values >= size))
            if bad.size > 0:
                raise IndexOutOfRange(space, int(values[bad[0]]), size).located(int(bad[0]))

        order = np.lexsort((columns, sources))
        sources, columns, targets = sources[order], columns[order], targets[order]
        ordered = tuple(coefficients[p] for p in order.tolist())

        duplicated = np.flatnonzero((sources[1:] == sources[:-1]) & (columns[1:] == columns[:-1]))
        if duplicated.size > 0:
            first = int(duplicated[0]) + 1
            raise DuplicatePair(int(sources[first]), int(columns[first])).located(int(order[first]))
        for position, c in enumerate(ordered):
            if c == 0:
                raise ZeroCoefficient(int(sources[position]), int(columns[position])).located(int(order[position]))

        inverse_order = np.lexsort((sources, columns, targets))
        return ActionTable(
            field=field,
            v_size=v_size,
            w_size=w_size,
            sources=_frozen(sources),
            columns=_frozen(columns),
            targets=_frozen(targets),
            coefficients=ordered,
            v_labels=_check_labels("V", v_labels, v_size),
            w_labels=_check_labels("W", w_labels, w_size),
            row_offsets=_frozen(_offsets(sources, v_size)),
            inverse_order=_frozen(inverse_order),
            inverse_offsets=_frozen(_offsets(targets, v_size)),
        )

    @property
    def entry_count(self) -> int:
        return int(self.sources.shape[0])

    def coefficient(self, position: int) -> Scalar:
        return Scalar(self.coefficients[position], self.field)

    def entry(self, position: int) -> Entry:
        return Entry(int(self.sources[position]), int(self.columns[position]), int(self.targets[position]),
                     self.coefficient(position))

    def entries(self) -> Iterator[Entry]:
        for position in range(self.entry_count):
            yield self.entry(position)

    def check_v(self, i: int) -> None:
        if not 0 <= i < self.v_size:
            raise IndexOutOfRange("V", i, self.v_size)

    def check_w(self, j: int) -> None:
        if not 0 <= j < self.w_size:
            raise IndexOutOfRange("W", j, self.w_size)

    def row(self, i: int) -> range:
        """Entry positions with source i, ordered by column."""
        return range(int(self.row_offsets[i]), int(self.row_offsets[i + 1]))

    def lookup(self, i: int, j: int) -> int | None:
        """Position of the entry for (i, j), or None when v_i w_j = 0."""
        low, high = int(self.row_offsets[i]), int(self.row_offsets[i + 1])
        position = low + int(np.searchsorted(self.columns[low:high], j))
        if position < high and self.columns[position] == j:
            return position
        return None

    def inverse_index(self, k: int, j: int) -> np.ndarray:
        """Ascending sources i with an entry (i, j, k, c)."""
        block = self.inverse_order[self.inverse_offsets[k]:self.inverse_offsets[k + 1]]
        block_columns = self.columns[block]
        low = int(np.searchsorted(block_columns, j, side="left"))
        high = int(np.searchsorted(block_columns, j, side="right"))
        return self.sources[block[low:high]]

    def v_name(self, i: int) -> str:
        return self.v_labels[i] if self.v_labels is not None else f"{v_prefix}{i}"

    def w_name(self, j: int) -> str:
        return self.w_labels[j] if self.w_labels is not None else f"{w_prefix}{j}"

    def v_index(self, token: str | int) -> int:
        return _resolve(token, self.v_labels, v_prefix, self.v_size)

    def w_index(self, token: str | int) -> int:
        return _resolve(token, self.w_labels, w_prefix, self.w_size)

    def scaled(self, factor: object) -> "ActionTable":
        c = self.field.element(factor)
        if c.is_zero():
            raise ZeroCoefficient(-1, -1)
        return ActionTable.from_arrays(self.field, self.v_size, self.w_size,
                                       self.sources, self.columns, self.targets,
                                       [(self.coefficient(p) * c).value for p in range(self.entry_count)],
                                       self.v_labels, self.w_labels)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ActionTable):
            return NotImplemented
        return (self.field == other.field and self.v_size == other.v_size and self.w_size == other.w_size
                and self.v_labels == other.v_labels and self.w_labels == other.w_labels
                and np.array_equal(self.sources, other.sources)
                and np.array_equal(self.columns, other.columns)
                and np.array_equal(self.targets, other.targets)
                and self.coefficients == other.coefficients)

    __hash__ = None  # type: ignore[assignment]


def _resolve(token: str | int, labels: tuple[str, ...] | None, prefix: str, size: int) -> int:
    # labels win over numerals
    if isinstance(token, str):
        if labels is not None and token in labels:
            return labels.index(token)
        text = token.strip()
        if labels is None and text.startswith(prefix) and text[len(prefix):].isdigit():
            text = text[len(prefix):]
        try:
            index = int(text)
        except ValueError:
            raise UnknownIndex(f"Unknown index or label: {token}")
    else:
        index = token

    if not 0 <= index < size:
        raise UnknownIndex(f"Index {index} out of range for size {size}")
    return index


def build_table(raw_entries: Iterable[tuple[int, int, int, object]], v_size: int, w_size: int, field_spec: FieldSpec,
                v_labels: Sequence[str] | None = None, w_labels: Sequence[str] | None = None) -> ActionTable:
    """
    Validates (i, j, k, c) tuples into an ActionTable. c may be an int,
    Fraction, canonical string or Scalar of field_spec.
    """
    sources: list[int] = []
    columns: list[int] = []
    targets: list[int] = []
    coefficients: list[RawScalar] = []
    for position, (i, j, k, c) in enumerate(raw_entries):
        for space, index, size in (("V", i, v_size), ("W", j, w_size), ("V", k, v_size)):
            if not isinstance(index, (int, np.integer)) or isinstance(index, bool) or not 0 <= index < size:
                raise IndexOutOfRange(space, index, size).located(position)
        try:
            value = field_spec.reduce(c)
        except InstanceError as e:
            raise e.located(position)
        if value == 0:
            raise ZeroCoefficient(i, j).located(position)
        sources.append(int(i))
        columns.append(int(j))
        targets.append(int(k))
        coefficients.append(value)

    return ActionTable.from_arrays(field_spec, v_size, w_size,
                                   np.array(sources, dtype=np.int64), np.array(columns, dtype=np.int64),
                                   np.array(targets, dtype=np.int64), coefficients, v_labels, w_labels)


@dataclass(frozen=True)
class CoordVector:
    """Sparse coordinates in the V or W basis: distinct indices, nonzero scalars, ascending."""
    space: Space
    items: tuple[tuple[int, Scalar], ...] = ()

    def __add__(self, other: "CoordVector") -> "CoordVector":
        if other.space != self.space:
            raise FieldMismatch(f"Cannot add a {other.space} vector to a {self.space} vector")
        return _canonical(self.space, list(self.items) + list(other.items))

    def scale(self, factor: Scalar) -> "CoordVector":
        return _canonical(self.space, [(index, value * factor) for index, value in self.items])

    def is_zero(self) -> bool:
        return len(self.items) == 0

    def as_dict(self) -> dict[int, Scalar]:
        return dict(self.items)


def _canonical(space: Space, pairs: Iterable[tuple[int, Scalar]]) -> CoordVector:
    summed: dict[int, Scalar] = {}
    for index, value in pairs:
        summed[index] = summed[index] + value if index in summed else value
    return CoordVector(space, tuple((index, summed[index]) for index in sorted(summed) if not summed[index].is_zero()))


def make_vector(t: ActionTable, space: Space, pairs: Iterable[tuple[int, object]]) -> CoordVector:
    size = t.v_size if space == "V" else t.w_size
    checked: list[tuple[int, Scalar]] = []
    for index, value in pairs:
        if not 0 <= index < size:
            raise IndexOutOfRange(space, index, size)
        checked.append((index, t.field.element(value)))
    return _canonical(space, checked)


def basis_vector(t: ActionTable, space: Space, index: int) -> CoordVector:
    return make_vector(t, space, [(index, 1)])


def _check_vector(t: ActionTable, vector: CoordVector, space: Space) -> None:
    if vector.space != space:
        raise FieldMismatch(f"Expected a {space} vector, got a {vector.space} vector")
    size = t.v_size if space == "V" else t.w_size
    for index, value in vector.items:
        if value.field != t.field:
            raise FieldMismatch(f"Coordinate in {value.field.describe()}, table over {t.field.describe()}")
        if not 0 <= index < size:
            raise IndexOutOfRange(space, index, size)


def apply_action(t: ActionTable, v: CoordVector, w: CoordVector) -> CoordVector:
    """Evaluates v w by bilinear expansion over the table's entries."""
    _check_vector(t, v, "V")
    _check_vector(t, w, "W")

    w_coordinates = w.as_dict()
    products: list[tuple[int, Scalar]] = []
    for i, a in v.items:
        for position in t.row(i):
            b = w_coordinates.get(int(t.columns[position]))
            if b is not None:
                products.append((int(t.targets[position]), a * b * t.coefficient(position)))

    return _canonical("V", products)
