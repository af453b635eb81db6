"""Inner solvers for ``max |S| <= k`` of a group sum of functions.

Two interchangeable solvers sit behind :class:`InnerSolver`: a lazy greedy
that certifies a ``1 - 1/e`` fraction of the group optimum on monotone
submodular sums, and an exhaustive exact solver for desk-scale ground
sets. Both are pure functions of (instance, group, k) with pinned
tie-breaking, so repeated and concurrent runs return identical sets.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass
from math import comb
from typing import Iterable

from .core import Instance, ItemSet, group_evaluate
from .errors import BudgetError, PreconditionError

GREEDY_ALPHA = 1.0 - 1.0 / math.e

# Cap on C(n, k) candidate sets the exact solver will enumerate.
EXACT_SET_BUDGET = 2_000_000


def _group_gain(inst: Instance, group: tuple[int, ...], subset: ItemSet, item: int) -> float:
    # Shared by both greedy variants so their float arithmetic is identical.
    return group_evaluate(inst, group, subset.with_item(item)) - group_evaluate(inst, group, subset)


def _normalize(inst: Instance, group: Iterable[int], k: int) -> tuple[tuple[int, ...], int]:
    if k < 1:
        raise PreconditionError(f"cardinality bound must be positive, got {k}")
    # k > n is clamped: degenerate configs in batch sweeps should not abort.
    return tuple(sorted(set(group))), min(k, inst.n)


def greedy_max(inst: Instance, group: Iterable[int], k: int) -> ItemSet:
    """Lazy greedy maximization of the group sum under ``|S| <= min(k, n)``.

    Builds the set one item at a time, always adding the item with the
    largest total marginal gain, ties going to the lowest item index.
    Cached gains are only ever overestimates on submodular inputs, so a
    popped entry whose gain is stale is re-scored and re-queued; an entry
    scored against the current set is optimal when popped. The result is
    identical to :func:`naive_greedy_max` by construction.
    """
    group, size = _normalize(inst, group, k)
    chosen = ItemSet()
    # heap entries: (-gain, item, size of the set the gain was scored against)
    heap = [(-_group_gain(inst, group, chosen, x), x, 0) for x in range(inst.n)]
    heapq.heapify(heap)
    while len(chosen) < size:
        neg_gain, item, scored_at = heapq.heappop(heap)
        if scored_at == len(chosen):
            chosen = chosen.with_item(item)
        else:
            gain = _group_gain(inst, group, chosen, item)
            heapq.heappush(heap, (-gain, item, len(chosen)))
    return chosen


def naive_greedy_max(inst: Instance, group: Iterable[int], k: int) -> ItemSet:
    """Reference greedy: re-scores every remaining item at every step.

    Kept as the ground truth for the lazy implementation; the two must
    return equal sets on every input.
    """
    group, size = _normalize(inst, group, k)
    chosen = ItemSet()
    for _ in range(size):
        best_item = -1
        best_gain = -math.inf
        for item in range(inst.n):
            if item in chosen:
                continue
            gain = _group_gain(inst, group, chosen, item)
            if gain > best_gain:
                best_gain, best_item = gain, item
        chosen = chosen.with_item(best_item)
    return chosen


def exact_max(
    inst: Instance, group: Iterable[int], k: int, *, budget: int = EXACT_SET_BUDGET
) -> ItemSet:
    """Exhaustive maximization of the group sum under ``|S| <= k``.

    Scans every subset of size exactly ``min(k, n)``; on the monotone
    families that loses nothing against smaller subsets and pins the
    degenerate cases (an all-ties group yields the lexicographically
    smallest size-k set, never the empty set). Ties break toward the
    lexicographically smallest item tuple. Raises :class:`BudgetError`
    when C(n, k) exceeds ``budget``.
    """
    group, size = _normalize(inst, group, k)
    candidates = comb(inst.n, size)
    if candidates > budget:
        raise BudgetError(f"exact enumeration of C({inst.n}, {size}) candidate sets", candidates, budget)
    best_set = None
    best_value = -math.inf
    for items in itertools.combinations(range(inst.n), size):
        value = group_evaluate(inst, group, ItemSet(items))
        if value > best_value:
            best_value, best_set = value, items
    return ItemSet(best_set)


@dataclass(frozen=True)
class InnerSolver:
    """A pluggable group-sum maximizer together with the ratio it certifies.

    ``reported_alpha`` is the fraction of the group optimum the solver
    guarantees: ``1 - 1/e`` for greedy on monotone submodular sums, 1 for
    exact enumeration. ``exact_budget`` only applies to the exact kind.
    """

    kind: str
    reported_alpha: float
    exact_budget: int = EXACT_SET_BUDGET

    def __post_init__(self):
        if self.kind not in ("greedy", "exact"):
            raise PreconditionError(f"unknown inner solver kind {self.kind!r}")
        if not 0.0 < self.reported_alpha <= 1.0:
            raise PreconditionError(f"reported_alpha must lie in (0, 1], got {self.reported_alpha}")

    @classmethod
    def greedy(cls) -> "InnerSolver":
        return cls("greedy", GREEDY_ALPHA)

    @classmethod
    def exact(cls, budget: int = EXACT_SET_BUDGET) -> "InnerSolver":
        return cls("exact", 1.0, budget)

    def solve(self, inst: Instance, group: Iterable[int], k: int) -> ItemSet:
        if self.kind == "greedy":
            return greedy_max(inst, group, k)
        return exact_max(inst, group, k, budget=self.exact_budget)
