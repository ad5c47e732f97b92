"""Discrete joint probability distributions over named variables.

The probability tensor is stored dense in row-major (C) order, so the flat
``probabilities`` sequence runs with the *last* variable fastest.  Mixed
cardinalities are allowed.  Instances are immutable after construction and
all operations are pure functions, so values can be shared freely across
threads.

Validation happens on every construction: entries must be nonnegative, at
most one, and sum to one within ``NORMALIZATION_ATOL`` (1e-9 by default).
Internal arithmetic never renormalizes silently; drift would surface as a
validation failure instead of being papered over.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import PreconditionError, ValidationError

NORMALIZATION_ATOL = 1e-9
ZERO_CONDITION_FLOOR = 1e-12

# An ordered selection of variable positions; see validate_subset().
VariableSubset = tuple[int, ...]


class Variable(NamedTuple):
    name: str
    cardinality: int


def _coerce_variables(variables: Iterable) -> tuple[Variable, ...]:
    out = []
    for pair in variables:
        name, cardinality = pair
        if not isinstance(name, str) or not name:
            raise ValidationError("INVALID_NAME", f"variable name must be a nonempty string, got {name!r}")
        if isinstance(cardinality, bool) or not isinstance(cardinality, (int, np.integer)) or cardinality < 1:
            raise ValidationError(
                "INVALID_CARDINALITY",
                f"cardinality of {name!r} must be a positive integer, got {cardinality!r}",
            )
        out.append(Variable(name, int(cardinality)))
    if not out:
        raise ValidationError("INVALID_NAME", "a distribution needs at least one variable")
    return tuple(out)


@dataclass(frozen=True, eq=False)
class JointDistribution:
    """A validated, immutable joint distribution over discrete variables."""

    variables: tuple[Variable, ...]
    tensor: np.ndarray
    atol: float = field(default=NORMALIZATION_ATOL, compare=False)

    def __post_init__(self):
        variables = _coerce_variables(self.variables)
        object.__setattr__(self, "variables", variables)

        names = [v.name for v in variables]
        if len(set(names)) != len(names):
            dupes = sorted({n for n in names if names.count(n) > 1})
            raise ValidationError("DUPLICATE_NAME", f"duplicate variable names: {dupes}")

        shape = tuple(v.cardinality for v in variables)
        tensor = np.asarray(self.tensor, dtype=float)
        if tensor.size != int(np.prod(shape)):
            raise ValidationError(
                "SHAPE_MISMATCH",
                f"expected {int(np.prod(shape))} probabilities for shape {shape}, got {tensor.size}",
            )
        tensor = tensor.reshape(shape)

        if not np.all(np.isfinite(tensor)):
            raise ValidationError("NOT_FINITE", "probabilities must be finite numbers")
        if np.any(tensor < 0.0):
            worst = float(tensor.min())
            raise ValidationError("NEGATIVE_PROBABILITY", f"negative probability entry {worst!r}")
        atol = float(self.atol)
        if np.any(tensor > 1.0 + atol):
            raise ValidationError("NOT_NORMALIZED", f"probability entry {float(tensor.max())!r} exceeds 1")
        total = float(tensor.sum())
        if abs(total - 1.0) > atol:
            raise ValidationError("NOT_NORMALIZED", f"probabilities sum to {total!r}, not 1 within {atol}")

        tensor = np.ascontiguousarray(tensor)
        tensor.setflags(write=False)
        object.__setattr__(self, "tensor", tensor)
        # Per-instance memo of subset joint entropies (bits), keyed by sorted
        # index tuples.  Entries are deterministic, so concurrent last-write-
        # wins refills are harmless.
        object.__setattr__(self, "_entropy_cache", {})

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_flat(
        cls,
        variables: Iterable,
        probabilities: Sequence[float] | np.ndarray,
        *,
        atol: float = NORMALIZATION_ATOL,
    ) -> "JointDistribution":
        """Build from ``(name, cardinality)`` pairs and a flat row-major sequence."""
        probs = np.asarray(probabilities, dtype=float).ravel()
        if probs.size == 0:
            raise ValidationError("SHAPE_MISMATCH", "probabilities must be nonempty")
        return cls(tuple(tuple(p) for p in variables), probs, atol)

    @classmethod
    def from_samples(
        cls,
        records: Sequence[Sequence[int]],
        variables: Iterable,
        *,
        atol: float = NORMALIZATION_ATOL,
    ) -> "JointDistribution":
        """Empirical frequencies (count / total) from outcome-index tuples.

        No smoothing is applied; unobserved outcomes get probability zero.
        """
        variables = _coerce_variables(variables)
        shape = tuple(v.cardinality for v in variables)
        if len(records) == 0:
            raise ValidationError("EMPTY_SAMPLE", "no sample records given")
        arr = np.asarray(records)
        if arr.ndim != 2 or arr.shape[1] != len(variables):
            raise ValidationError(
                "SHAPE_MISMATCH",
                f"each record must have {len(variables)} outcome indices",
            )
        if not np.issubdtype(arr.dtype, np.integer):
            if not np.all(arr == np.floor(arr)):
                raise ValidationError("OUT_OF_RANGE_OUTCOME", "outcome indices must be integers")
            arr = arr.astype(np.int64)
        for k, v in enumerate(variables):
            col = arr[:, k]
            if col.min() < 0 or col.max() >= v.cardinality:
                raise ValidationError(
                    "OUT_OF_RANGE_OUTCOME",
                    f"outcome index for {v.name!r} outside [0, {v.cardinality})",
                )
        counts = np.zeros(shape, dtype=float)
        np.add.at(counts, tuple(arr.T), 1.0)
        return cls(variables, counts / arr.shape[0], atol)

    @classmethod
    def from_json_dict(cls, obj, *, atol: float = NORMALIZATION_ATOL) -> "JointDistribution":
        """Parse the distribution wire schema.

        Expected shape::

            {"variables": [{"name": str, "cardinality": int}, ...],
             "probabilities": [float, ...]}
        """
        if not isinstance(obj, dict):
            raise ValidationError("MALFORMED_INPUT", "distribution document must be a JSON object")
        try:
            raw_vars = obj["variables"]
            raw_probs = obj["probabilities"]
            variables = [(v["name"], v["cardinality"]) for v in raw_vars]
        except (KeyError, TypeError) as exc:
            raise ValidationError(
                "MALFORMED_INPUT",
                'distribution document needs "variables" [{name, cardinality}] and "probabilities"',
            ) from exc
        if not isinstance(raw_probs, (list, tuple)):
            raise ValidationError("MALFORMED_INPUT", '"probabilities" must be an array of numbers')
        return cls.from_flat(variables, raw_probs, atol=atol)

    # -- views --------------------------------------------------------------

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    @property
    def cardinalities(self) -> tuple[int, ...]:
        return tuple(v.cardinality for v in self.variables)

    @property
    def n_variables(self) -> int:
        return len(self.variables)

    @property
    def probabilities(self) -> np.ndarray:
        """Flat row-major view (read-only), last variable fastest."""
        return self.tensor.reshape(-1)

    def index_of(self, name: str) -> int:
        for k, v in enumerate(self.variables):
            if v.name == name:
                return k
        raise PreconditionError("INDEX_OUT_OF_RANGE", f"no variable named {name!r}")

    def subset_for(self, names: Sequence[str]) -> VariableSubset:
        return tuple(self.index_of(n) for n in names)

    def to_json_dict(self) -> dict:
        return {
            "variables": [{"name": v.name, "cardinality": v.cardinality} for v in self.variables],
            "probabilities": [float(p) for p in self.probabilities],
        }

    # -- operations ---------------------------------------------------------

    def marginalize(self, keep: Sequence[int]) -> "JointDistribution":
        """Marginal over ``keep`` (in the given order), summing out the rest."""
        keep = validate_subset(self, keep)
        discard = tuple(k for k in range(self.n_variables) if k not in keep)
        summed = self.tensor.sum(axis=discard) if discard else self.tensor
        kept_sorted = sorted(keep)
        summed = summed.transpose([kept_sorted.index(k) for k in keep])
        return JointDistribution(tuple(self.variables[k] for k in keep), summed)

    def condition(self, given: int, value: int) -> "JointDistribution":
        """Distribution of the remaining variables given ``variables[given] == value``."""
        if self.n_variables < 2:
            raise PreconditionError("TOO_FEW_VARIABLES", "conditioning needs at least two variables")
        if not 0 <= given < self.n_variables:
            raise PreconditionError("INDEX_OUT_OF_RANGE", f"variable index {given} out of range")
        if not 0 <= value < self.variables[given].cardinality:
            raise ValidationError("OUT_OF_RANGE_OUTCOME", f"outcome {value} out of range for {self.variables[given].name!r}")
        axes = tuple(k for k in range(self.n_variables) if k != given)
        marginal = self.tensor.sum(axis=axes)
        weight = float(marginal[value])
        if weight <= ZERO_CONDITION_FLOOR:
            raise PreconditionError(
                "ZERO_CONDITION",
                f"conditioning event has probability {weight!r}, below {ZERO_CONDITION_FLOOR}",
            )
        sliced = np.take(self.tensor, value, axis=given) / weight
        return JointDistribution(tuple(self.variables[k] for k in axes), sliced)

    # -- internal fast paths (no object construction, no revalidation) ------

    def _marginal_array(self, sorted_subset: tuple[int, ...]) -> np.ndarray:
        """Marginal tensor over an ascending-index subset; raw array."""
        discard = tuple(k for k in range(self.n_variables) if k not in sorted_subset)
        return self.tensor.sum(axis=discard) if discard else self.tensor


def validate_subset(
    dist: JointDistribution,
    subset: Sequence[int],
    *,
    allow_empty: bool = False,
) -> VariableSubset:
    """Check a variable-index selection: in range, distinct, optionally nonempty."""
    subset = tuple(int(k) for k in subset)
    if not subset:
        if allow_empty:
            return subset
        raise PreconditionError("EMPTY_SUBSET", "variable subset must be nonempty")
    for k in subset:
        if not 0 <= k < dist.n_variables:
            raise PreconditionError(
                "INDEX_OUT_OF_RANGE",
                f"variable index {k} out of range for {dist.n_variables} variables",
            )
    if len(set(subset)) != len(subset):
        raise PreconditionError("DUPLICATE_INDEX", f"variable indices must be distinct, got {subset}")
    return subset


def product(d1: JointDistribution, d2: JointDistribution) -> JointDistribution:
    """Independent product: p(x, y) = p1(x) * p2(y); variable names must not clash."""
    collision = set(d1.names) & set(d2.names)
    if collision:
        raise ValidationError("NAME_COLLISION", f"variable names appear in both factors: {sorted(collision)}")
    tensor = np.multiply.outer(d1.tensor, d2.tensor)
    return JointDistribution(d1.variables + d2.variables, tensor)


def parse_samples_csv(text: str) -> tuple[list[str], list[tuple[int, ...]]]:
    """Parse the sample CSV schema: header of variable names, then integer outcome rows."""
    reader = csv.reader(io.StringIO(text))
    rows = [row for row in reader if row and any(cell.strip() for cell in row)]
    if not rows:
        raise ValidationError("EMPTY_SAMPLE", "sample CSV is empty")
    header = [cell.strip() for cell in rows[0]]
    records: list[tuple[int, ...]] = []
    for lineno, row in enumerate(rows[1:], start=2):
        try:
            records.append(tuple(int(cell) for cell in row))
        except ValueError as exc:
            raise ValidationError("MALFORMED_INPUT", f"non-integer outcome on CSV line {lineno}") from exc
        if len(records[-1]) != len(header):
            raise ValidationError("MALFORMED_INPUT", f"CSV line {lineno} has {len(row)} cells, expected {len(header)}")
    if not records:
        raise ValidationError("EMPTY_SAMPLE", "sample CSV has a header but no records")
    return header, records


def distribution_from_csv(text: str, *, atol: float = NORMALIZATION_ATOL) -> JointDistribution:
    """Empirical distribution from sample CSV; cardinality is max index + 1 per column."""
    header, records = parse_samples_csv(text)
    arr = np.asarray(records, dtype=np.int64)
    if arr.min() < 0:
        raise ValidationError("OUT_OF_RANGE_OUTCOME", "outcome indices must be nonnegative")
    cards = arr.max(axis=0) + 1
    variables = [(name, int(card)) for name, card in zip(header, cards)]
    return JointDistribution.from_samples(records, variables, atol=atol)
