"""
Seeded instance generator.

Randomness comes from numpy's PCG64 bit generator (128-bit LCG state,
multiplier 0x2360ED051FC65DA44385DF649FCCF645, XSL-RR output), seeded through
SeedSequence(seed) and spawned into five independent streams: pools, support,
targets, numerators (or residues) and denominators. Each stream is consumed
in row-major (i, j) order, so the output does not depend on how rows are
chunked.
"""
from fractions import Fraction
from typing import Optional

import numpy as np
from pydantic import BaseModel, confloat, conint, root_validator
from retry.api import retry_call

from constants.instance import max_basis_size, symmetrized_w_prefix
from mbmod.connect import components
from mbmod.errors import ComponentCountMismatch, NonPrimeModulus, Unsatisfiable
from mbmod.minimal import check_star_multiplicative
from mbmod.scalar import FieldSpec, RawScalar
from mbmod.table import ActionTable
from utils.config import config
from utils.logger import log

max_generated_modulus = 2 ** 63 - 1


class GenSpec(BaseModel):
    v_size: conint(ge=0, le=max_basis_size)  # type: ignore[valid-type]
    w_size: conint(ge=0, le=max_basis_size)  # type: ignore[valid-type]
    density: confloat(ge=0, le=1)  # type: ignore[valid-type]
    seed: conint(ge=0, lt=2 ** 64)  # type: ignore[valid-type]
    modulus: Optional[int] = None
    target_components: Optional[conint(ge=0)] = None  # type: ignore[valid-type]
    star_multiplicative: bool = False

    class Config:
        allow_mutation = False

    @root_validator(skip_on_failure=True)
    def check_spec(cls, values: dict) -> dict:
        target = values.get("target_components")
        v_size = values["v_size"]
        if target is not None and (target > v_size or (target == 0 and v_size > 0)):
            raise ValueError(f"target_components must be in 1..{v_size}")
        modulus = values.get("modulus")
        if modulus is not None and modulus > max_generated_modulus:
            raise ValueError(f"The generator supports moduli below 2^63, got {modulus}")
        try:
            FieldSpec(modulus)
        except NonPrimeModulus as e:
            raise ValueError(str(e))
        return values

    @property
    def field_spec(self) -> FieldSpec:
        return FieldSpec(self.modulus)


class _Streams:
    def __init__(self, seed: int):
        pools, support, targets, numerators, denominators = np.random.SeedSequence(seed).spawn(5)
        self.pools = np.random.Generator(np.random.PCG64(pools))
        self.support = np.random.Generator(np.random.PCG64(support))
        self.targets = np.random.Generator(np.random.PCG64(targets))
        self.numerators = np.random.Generator(np.random.PCG64(numerators))
        self.denominators = np.random.Generator(np.random.PCG64(denominators))


def _pools(spec: GenSpec, streams: _Streams) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Returns (members ordered by pool, pool start per index, pool size per index)."""
    n = spec.v_size
    if spec.target_components is None or n == 0:
        return np.arange(n, dtype=np.int64), np.zeros(n, dtype=np.int64), np.full(n, n, dtype=np.int64)

    members = streams.pools.permutation(n).astype(np.int64)
    cuts = np.sort(streams.pools.choice(np.arange(1, n), size=spec.target_components - 1, replace=False)) \
        if spec.target_components > 1 else np.zeros(0, dtype=np.int64)
    bounds = np.concatenate(([0], cuts, [n])).astype(np.int64)

    start = np.empty(n, dtype=np.int64)
    size = np.empty(n, dtype=np.int64)
    for low, high in zip(bounds[:-1], bounds[1:]):
        start[members[low:high]] = low
        size[members[low:high]] = high - low
    return members, start, size


def _coefficients(spec: GenSpec, streams: _Streams, count: int) -> list[RawScalar]:
    modulus = spec.field_spec.modulus
    if modulus is not None:
        return streams.numerators.integers(1, modulus, size=count, dtype=np.int64).tolist()

    numerator_bound = config["generator"]["rational_numerator_bound"]
    denominator_bound = config["generator"]["rational_denominator_bound"]
    # uniform over the nonzero integers in [-bound, bound]
    draws = streams.numerators.integers(0, 2 * numerator_bound, size=count)
    numerators = np.where(draws < numerator_bound, draws - numerator_bound, draws - numerator_bound + 1)
    denominators = streams.denominators.integers(1, denominator_bound + 1, size=count)
    return [Fraction(int(a), int(b)) for a, b in zip(numerators.tolist(), denominators.tolist())]


def _sample(spec: GenSpec, streams: _Streams) -> ActionTable:
    members, pool_start, pool_size = _pools(spec, streams)
    chunk_rows = config["generator"]["chunk_rows"]

    sources: list[np.ndarray] = []
    columns: list[np.ndarray] = []
    targets: list[np.ndarray] = []
    coefficients: list[RawScalar] = []
    if spec.w_size > 0:
        for low in range(0, spec.v_size, chunk_rows):
            high = min(low + chunk_rows, spec.v_size)
            hits = streams.support.random((high - low, spec.w_size)) < spec.density
            rows, cols = np.nonzero(hits)
            rows = rows.astype(np.int64) + low
            offsets = streams.targets.integers(0, pool_size[rows]) if rows.size > 0 else np.zeros(0, dtype=np.int64)
            sources.append(rows)
            columns.append(cols.astype(np.int64))
            targets.append(members[pool_start[rows] + offsets])
            coefficients.extend(_coefficients(spec, streams, int(rows.size)))

    def joined(parts: list[np.ndarray]) -> np.ndarray:
        return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)

    return ActionTable.from_arrays(spec.field_spec, spec.v_size, spec.w_size,
                                   joined(sources), joined(columns), joined(targets), coefficients)


def _sample_with_component_count(spec: GenSpec, streams: _Streams) -> ActionTable:
    t = _sample(spec, streams)
    found = components(t).count
    if found != spec.target_components:
        log(f"Resampling: {found} components instead of {spec.target_components}")
        raise ComponentCountMismatch(found, spec.target_components or 0)
    return t


def generate(spec: GenSpec) -> ActionTable:
    """
    Draws each (i, j) independently with probability density, pointing it at
    a uniform index of i's pool with a uniform nonzero coefficient.
    """
    streams = _Streams(spec.seed)
    if spec.target_components is None:
        t = _sample(spec, streams)
    else:
        tries = config["generator"]["max_retries"]
        try:
            t = retry_call(_sample_with_component_count, fargs=[spec, streams],
                           exceptions=ComponentCountMismatch, tries=tries, delay=0, logger=None)
        except ComponentCountMismatch as e:
            raise Unsatisfiable(f"No instance with {spec.target_components} components after {tries} tries "
                                f"(last had {e.found})") from e

    log(f"Generated {t.v_size}x{t.w_size} instance with {t.entry_count} entries")
    return symmetrize(t) if spec.star_multiplicative else t


def symmetrize(t: ActionTable) -> ActionTable:
    """
    For every missing reverse product (b in a * j~ with v_a W not reaching v_b)
    adds a fresh W column with the single entry (a, j_new, b, 1).
    """
    report = check_star_multiplicative(t)
    if report.holds:
        return t

    missing = sorted({(a, b) for a, b, _ in report.violations})
    fresh = np.arange(t.w_size, t.w_size + len(missing), dtype=np.int64)
    w_labels: list[str] | None = None
    if t.w_labels is not None:
        taken = set(t.w_labels)
        w_labels = list(t.w_labels)
        counter = 0
        while len(w_labels) < t.w_size + len(missing):
            label = f"{symmetrized_w_prefix}{counter}"
            counter += 1
            if label not in taken:
                w_labels.append(label)

    log(f"Symmetrize adds {len(missing)} columns")
    one = t.field.one().value
    return ActionTable.from_arrays(
        t.field, t.v_size, t.w_size + len(missing),
        np.concatenate((t.sources, np.array([a for a, _ in missing], dtype=np.int64))),
        np.concatenate((t.columns, fresh)),
        np.concatenate((t.targets, np.array([b for _, b in missing], dtype=np.int64))),
        list(t.coefficients) + [one] * len(missing),
        t.v_labels, w_labels,
    )
