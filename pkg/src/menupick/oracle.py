"""Exhaustive solvers used as ground truth at desk scale.

These deliberately avoid pruning or cleverness: they scan every candidate
in a pinned order and keep the first maximum, which makes them trustworthy
referees for the approximation guarantees of the real solvers. All three
raise :class:`BudgetError` instead of silently attempting oversized scans.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from math import comb

from .core import Instance, ItemSet, group_evaluate, multi_objective
from .errors import BudgetError, PreconditionError
from .maximize import exact_max
from .personalize import enumerate_partitions

# Cap on candidate tuples scanned by the pair/menu oracles and on
# (partitions x subsets) work done by the partition oracle.
ORACLE_TUPLE_BUDGET = 10_000_000


@dataclass(frozen=True)
class OracleResult:
    """Optimal value, one optimal argument, and how many candidates were scanned."""

    opt_value: float
    argmax_sets: tuple[ItemSet, ...]
    enumerated_count: int


def candidate_sets(n: int, k: int) -> list[ItemSet]:
    """Every subset of 0..n-1 with at most ``min(k, n)`` items, in
    lexicographic order of the item tuples (empty set first)."""
    size_cap = min(k, n)
    tuples = sorted(
        itertools.chain.from_iterable(
            itertools.combinations(range(n), size) for size in range(size_cap + 1)
        )
    )
    return [ItemSet(items) for items in tuples]


def exact_pair_solve(inst: Instance, *, budget: int = ORACLE_TUPLE_BUDGET) -> OracleResult:
    """True optimum of the two-candidate objective by scanning all pairs.

    The objective is symmetric, so only unordered pairs (repeats included)
    are scanned; ties keep the lexicographically smallest pair.
    """
    return exact_multi_solve(inst, 2, budget=budget)


def exact_multi_solve(inst: Instance, l: int, *, budget: int = ORACLE_TUPLE_BUDGET) -> OracleResult:
    """True optimum of the ``l``-candidate objective by scanning all menus.

    Scans every unordered ``l``-tuple (with repetition) of feasible sets;
    the optimum is non-decreasing in ``l`` and saturates at the sum of the
    per-function optima once every function can have its own candidate.
    """
    if l < 1:
        raise PreconditionError(f"need at least one candidate, got l={l}")
    sets = candidate_sets(inst.n, inst.k)
    count = comb(len(sets) + l - 1, l)
    if count > budget:
        raise BudgetError(f"oracle scan of unordered {l}-tuples of candidate sets", count, budget)
    best_value = -math.inf
    best_menu = None
    for menu in itertools.combinations_with_replacement(sets, l):
        value = multi_objective(inst, menu)
        if value > best_value:
            best_value, best_menu = value, menu
    return OracleResult(best_value, tuple(best_menu), count)


def exact_p1_solve(inst: Instance, *, budget: int = ORACLE_TUPLE_BUDGET) -> OracleResult:
    """True optimum of the two-group partition relaxation.

    For every unordered two-group partition of the functions, solves both
    groups exactly and adds the group values; the best partition's total
    upper-bounds the two-candidate optimum. ``opt_value`` is that total (a
    sum of two group sums, not a best-of-menu recomputation);
    ``argmax_sets`` holds the two group maximizers realizing it.
    """
    partitions = 2 ** (inst.m - 1)
    work = partitions * comb(inst.n, min(inst.k, inst.n))
    if work > budget:
        raise BudgetError(
            "partition oracle work (2**(m-1) partitions x C(n, k) subsets)", work, budget
        )
    best_value = -math.inf
    best_menu = None
    for partition in enumerate_partitions(inst.m, cap=inst.m):
        menu = tuple(exact_max(inst, group, inst.k, budget=budget) for group in partition.groups)
        value = sum(
            group_evaluate(inst, group, chosen) for group, chosen in zip(partition.groups, menu)
        )
        if value > best_value:
            best_value, best_menu = value, menu
    return OracleResult(best_value, tuple(best_menu), partitions)
