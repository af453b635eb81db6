"""Ground set, monotone submodular function families, and objectives.

An :class:`Instance` holds a ground set of ``n`` items (indices 0..n-1), a
cardinality bound ``k``, and ``m`` user-specific functions. A solution is a
small menu of candidate sets; each function scores the menu by its best
candidate, and the overall objective is the sum of those per-function
maxima. All types here are immutable and all evaluation is pure, so values
may be shared freely across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import ClassVar, Iterable, Sequence

from .errors import (
    CardinalityError,
    FunctionIndexError,
    ItemIndexError,
    PreconditionError,
)


@dataclass(frozen=True, order=True)
class ItemSet:
    """Canonical subset of ground-set items: a sorted, duplicate-free tuple.

    Ordering and hashing follow the item tuple, so equal sets compare equal
    regardless of construction order and tuples sort lexicographically.
    """

    items: tuple[int, ...] = ()

    def __post_init__(self):
        canonical = tuple(sorted(set(self.items)))
        for item in canonical:
            if not isinstance(item, int) or isinstance(item, bool) or item < 0:
                raise PreconditionError(f"item indices must be non-negative integers, got {item!r}")
        object.__setattr__(self, "items", canonical)

    @classmethod
    def of(cls, items: Iterable[int]) -> "ItemSet":
        return cls(tuple(items))

    def with_item(self, item: int) -> "ItemSet":
        return ItemSet(self.items + (item,))

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __contains__(self, item: int) -> bool:
        return item in self.items


class SubmodularFunction:
    """Base class for the provided function families.

    Subclasses are immutable, define ``kind`` (the serialization tag) and
    ``n_items`` (the item index space), and implement ``_value`` on a
    validated item tuple. Every family is normalized (empty set scores 0),
    monotone non-decreasing, and submodular.
    """

    kind: ClassVar[str]

    @property
    def n_items(self) -> int:
        raise NotImplementedError

    def _value(self, items: tuple[int, ...]) -> float:
        raise NotImplementedError

    def evaluate(self, subset: ItemSet) -> float:
        """Value of ``subset``; raises ItemIndexError on out-of-range items."""
        self._check_items(subset)
        return self._value(subset.items)

    def marginal_gain(self, item: int, subset: ItemSet) -> float:
        """Gain of adding ``item`` to ``subset``; requires ``item`` not in it."""
        if item in subset:
            raise PreconditionError(f"item {item} is already in the set")
        if not 0 <= item < self.n_items:
            raise ItemIndexError(item, self.n_items)
        return self.evaluate(subset.with_item(item)) - self.evaluate(subset)

    def _check_items(self, subset: ItemSet) -> None:
        # items are sorted, so the last one is the largest
        if subset.items and subset.items[-1] >= self.n_items:
            raise ItemIndexError(subset.items[-1], self.n_items)


def _check_weights(weights: Sequence[float], what: str) -> tuple[float, ...]:
    out = tuple(float(w) for w in weights)
    for w in out:
        if not (math.isfinite(w) and w >= 0.0):
            raise PreconditionError(f"{what} must be finite and non-negative, got {w!r}")
    return out


@dataclass(frozen=True)
class Modular(SubmodularFunction):
    """Additive function: the value of a set is the sum of its item weights."""

    weights: tuple[float, ...]
    kind: ClassVar[str] = "modular"

    def __post_init__(self):
        object.__setattr__(self, "weights", _check_weights(self.weights, "weights"))

    @property
    def n_items(self) -> int:
        return len(self.weights)

    def _value(self, items):
        return sum(self.weights[i] for i in items)


@dataclass(frozen=True)
class WeightedCoverage(SubmodularFunction):
    """Weighted coverage: each item covers universe elements, value is the
    total weight of elements covered at least once."""

    universe_weights: tuple[float, ...]
    covers: tuple[tuple[int, ...], ...]
    kind: ClassVar[str] = "coverage"

    def __post_init__(self):
        object.__setattr__(
            self, "universe_weights", _check_weights(self.universe_weights, "universe weights")
        )
        universe = len(self.universe_weights)
        canonical = []
        for cover in self.covers:
            cover = tuple(sorted(set(cover)))
            for element in cover:
                if not isinstance(element, int) or element < 0 or element >= universe:
                    raise PreconditionError(
                        f"cover element {element!r} outside universe of size {universe}"
                    )
            canonical.append(cover)
        object.__setattr__(self, "covers", tuple(canonical))

    @property
    def n_items(self) -> int:
        return len(self.covers)

    def _value(self, items):
        covered = set()
        for i in items:
            covered.update(self.covers[i])
        return sum(self.universe_weights[u] for u in sorted(covered))


@dataclass(frozen=True)
class FacilityLocation(SubmodularFunction):
    """Facility location: each client (row) is served by its most similar
    selected item (column); value is the sum of best similarities."""

    similarity: tuple[tuple[float, ...], ...]
    kind: ClassVar[str] = "facility_location"

    def __post_init__(self):
        rows = tuple(_check_weights(row, "similarity") for row in self.similarity)
        if not rows:
            raise PreconditionError("similarity matrix needs at least one client row")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise PreconditionError("similarity matrix rows must have equal length")
        if width == 0:
            raise PreconditionError("similarity matrix needs at least one item column")
        object.__setattr__(self, "similarity", rows)

    @property
    def n_items(self) -> int:
        return len(self.similarity[0])

    def _value(self, items):
        if not items:
            return 0.0
        return sum(max(row[i] for i in items) for row in self.similarity)


@dataclass(frozen=True)
class ConcaveOverModular(SubmodularFunction):
    """Concave power of a modular sum: (sum of weights)**exponent with the
    exponent in (0, 1]."""

    weights: tuple[float, ...]
    exponent: float
    kind: ClassVar[str] = "concave_over_modular"

    def __post_init__(self):
        object.__setattr__(self, "weights", _check_weights(self.weights, "weights"))
        exponent = float(self.exponent)
        if not 0.0 < exponent <= 1.0:
            raise PreconditionError(f"exponent must lie in (0, 1], got {exponent!r}")
        object.__setattr__(self, "exponent", exponent)

    @property
    def n_items(self) -> int:
        return len(self.weights)

    def _value(self, items):
        return sum(self.weights[i] for i in items) ** self.exponent


@dataclass(frozen=True)
class Instance:
    """A ground set of ``n`` items, a bound ``k``, and ``m`` functions.

    Invariants checked at construction: 1 <= k <= n, at least one function,
    and every function's index space matches ``n``.
    """

    n: int
    k: int
    functions: tuple[SubmodularFunction, ...]

    def __post_init__(self):
        object.__setattr__(self, "functions", tuple(self.functions))
        if self.n < 1:
            raise PreconditionError(f"ground set size must be positive, got {self.n}")
        if not 1 <= self.k <= self.n:
            raise PreconditionError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")
        if not self.functions:
            raise PreconditionError("an instance needs at least one function")
        for idx, fn in enumerate(self.functions):
            if fn.n_items != self.n:
                raise PreconditionError(
                    f"function {idx} addresses {fn.n_items} items, instance has {self.n}"
                )

    @property
    def m(self) -> int:
        return len(self.functions)


def _check_group(inst: Instance, group: Iterable[int]) -> tuple[int, ...]:
    indices = tuple(sorted(set(group)))
    for i in indices:
        if not isinstance(i, int) or i < 0 or i >= inst.m:
            raise FunctionIndexError(i, inst.m)
    return indices


def group_evaluate(inst: Instance, group: Iterable[int], subset: ItemSet) -> float:
    """Sum of ``f_i(subset)`` over the function indices in ``group``.

    The sum runs in ascending index order, so the result is deterministic.
    An empty group evaluates to 0.
    """
    return sum(inst.functions[i].evaluate(subset) for i in _check_group(inst, group))


def _check_cardinality(inst: Instance, subset: ItemSet) -> None:
    if len(subset) > inst.k:
        raise CardinalityError(len(subset), inst.k)


def multi_objective(inst: Instance, sets: Sequence[ItemSet]) -> float:
    """Best-of-menu objective: each function takes its best candidate.

    Returns ``sum_i max_j f_i(sets[j])``. The value is invariant under
    permutation of the menu, and a single-candidate menu reduces to the
    plain sum of the functions.
    """
    if not sets:
        raise PreconditionError("the candidate menu must contain at least one set")
    for candidate in sets:
        _check_cardinality(inst, candidate)
    return sum(max(fn.evaluate(candidate) for candidate in sets) for fn in inst.functions)


def pair_objective(inst: Instance, first: ItemSet, second: ItemSet) -> float:
    """Two-candidate objective ``sum_i max(f_i(first), f_i(second))``.

    Symmetric in its arguments, and bounded between the plain sum on either
    candidate and the sum of both candidates' plain sums.
    """
    return multi_objective(inst, (first, second))


def lifted_objective(inst: Instance, selection: ItemSet) -> float:
    """Two-candidate objective read off a flattened (item, slot) selection.

    The flattened ground set has ``2n`` elements; element ``2*i + s`` means
    "place item ``i`` in candidate ``s``" (slots 0 and 1). This encoding
    turns the pair problem into single-set selection, but the resulting set
    function is not submodular even when every ``f_i`` is, which is why the
    solvers here work on partitions of the functions instead. Cardinality
    bounds are not enforced: the value is defined for infeasible selections
    too, and the non-submodularity witness needs them.
    """
    slots: tuple[list[int], list[int]] = ([], [])
    for element in selection:
        if element >= 2 * inst.n:
            raise ItemIndexError(element, 2 * inst.n)
        slots[element & 1].append(element >> 1)
    first, second = ItemSet.of(slots[0]), ItemSet.of(slots[1])
    return sum(max(fn.evaluate(first), fn.evaluate(second)) for fn in inst.functions)
