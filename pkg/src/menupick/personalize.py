"""Outer solvers: partition the functions, solve each group, keep the best menu.

Both solvers share one engine. A round takes a partition of the function
indices, asks the inner solver for one candidate set per group, and scores
the resulting menu with the best-of-menu objective. The incumbent is
replaced whenever a round scores at least as high (later ties win), so the
best-so-far value is non-decreasing and the full round trace records every
incumbent change.

* :func:`enumeration_solve` visits every unordered two-group partition and
  certifies the inner solver's full ratio ``alpha``.
* :func:`sampling_solve` visits ``T`` partitions drawn uniformly (each
  function joins the first group with probability 1/2, independently) and
  certifies ``alpha / 2`` deterministically for every round; the stronger
  ``T``-dependent factor from :func:`gamma_bound` holds in expectation
  only and is reported alongside, never certified.
* :func:`multi_enumeration_solve` generalizes enumeration to menus of
  ``l`` candidates by visiting every partition into at most ``l`` groups.

Rounds are independent given the immutable instance; with ``workers > 1``
they are evaluated in a thread pool and folded in round order, so reports
are identical for every worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from . import rng
from .core import Instance, ItemSet, group_evaluate, multi_objective
from .errors import BudgetError, PreconditionError
from .maximize import InnerSolver

PARTITION_CAP = 20  # largest m the two-group enumeration will accept
MULTI_PARTITION_BUDGET = 1_000_000  # cap on enumerated l-group partitions
DEFAULT_EPS = (0.0, 0.05, 0.1)

# Above this, the success-probability term of the expectation bound is
# non-positive and only the unconditional alpha/2 floor remains.
VACUOUS_EPS = math.pi / (2.0 * math.e)


@dataclass(frozen=True)
class Partition:
    """Disjoint groups of function indices covering 0..m-1 exactly.

    Groups may be empty (the engine still requests a candidate for them,
    which comes back as the zero-value default set). Two groups is the
    standard case; the multi-candidate solver uses up to ``l``.
    """

    groups: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        canonical = tuple(tuple(sorted(group)) for group in self.groups)
        object.__setattr__(self, "groups", canonical)
        if len(canonical) < 2:
            raise PreconditionError("a partition needs at least two groups")
        seen: set[int] = set()
        total = 0
        for group in canonical:
            for index in group:
                if index in seen:
                    raise PreconditionError(f"function index {index} appears in two groups")
                seen.add(index)
            total += len(group)
        if seen and seen != set(range(total)):
            raise PreconditionError("groups must cover the function indices 0..m-1 exactly")

    @property
    def m(self) -> int:
        return sum(len(group) for group in self.groups)


@dataclass(frozen=True)
class RoundRecord:
    """One engine round: the partition tried, what it scored, whether it won."""

    index: int
    groups: tuple[tuple[int, ...], ...]
    group_values: tuple[float, ...]
    objective: float
    incumbent: bool


@dataclass(frozen=True)
class SolveReport:
    """Outcome of a solver run.

    ``objective`` always equals ``multi_objective(inst, sets)`` recomputed
    on the reported sets, and equals the largest round objective.
    ``certified_ratio`` is the deterministic lower-bound factor relative to
    the true optimum; ``expectation_bounds`` carries the per-epsilon
    expectation-only factors for sampled runs (None otherwise).
    """

    sets: tuple[ItemSet, ...]
    objective: float
    certified_ratio: float
    rounds: tuple[RoundRecord, ...]
    seed: Optional[int]
    warnings: tuple[str, ...]
    expectation_bounds: Optional[tuple[tuple[float, float], ...]] = None


def enumerate_partitions(m: int, *, cap: int = PARTITION_CAP) -> Iterator[Partition]:
    """All unordered two-group partitions of ``m`` function indices.

    Function 0 is pinned to the first group, which removes the mirror-image
    duplicate of every partition and leaves exactly ``2**(m-1)`` of them,
    from ({0}, rest) up to (everything, empty). Raises
    :class:`BudgetError` when ``m`` exceeds ``cap``.
    """
    if m < 1:
        raise PreconditionError(f"m must be positive, got {m}")
    if m > cap:
        raise BudgetError("two-group partition enumeration, functions m", m, cap)
    for mask in range(1 << (m - 1)):
        first = [0] + [i + 1 for i in range(m - 1) if mask >> i & 1]
        second = [i + 1 for i in range(m - 1) if not mask >> i & 1]
        yield Partition((tuple(first), tuple(second)))


def random_partition(m: int, bits: rng.BitStream) -> Partition:
    """Draw a two-group partition, each index joining the first group with
    probability 1/2, independently.

    Consumes exactly ``m`` bits from the stream (bit set means "first
    group"), so round ``r`` of a sampled run reads stream positions
    ``r*m .. r*m + m - 1``.
    """
    if m < 1:
        raise PreconditionError(f"m must be positive, got {m}")
    draws = bits.take_bits(m)
    first = tuple(i for i in range(m) if draws[i])
    second = tuple(i for i in range(m) if not draws[i])
    return Partition((first, second))


def partition_at(m: int, seed: int, round_index: int) -> Partition:
    """The partition round ``round_index`` of a sampled run draws for ``seed``.

    Position-addressed equivalent of calling :func:`random_partition`
    ``round_index + 1`` times; parallel rounds use this to stay off shared
    generator state.
    """
    return random_partition(m, rng.BitStream(seed, round_index * m))


def gamma_factor(rounds: int, eps: float) -> float:
    """Success-probability term ``1 - (1/2 + eps*e/pi)**rounds``."""
    if rounds < 1:
        raise PreconditionError(f"rounds must be positive, got {rounds}")
    if eps < 0.0:
        raise PreconditionError(f"eps must be non-negative, got {eps}")
    return 1.0 - (0.5 + eps * math.e / math.pi) ** rounds


def gamma_bound(rounds: int, eps: float, m: int, alpha: float) -> float:
    """Expectation-bound factor for a sampled run of ``rounds`` rounds.

    Evaluates ``max(1/2, gamma * (1/2 + eps/sqrt(m))) * alpha`` with
    ``gamma`` from :func:`gamma_factor`. The factor is non-decreasing in
    ``rounds`` and never falls below the unconditional ``alpha/2`` floor;
    for ``eps >= VACUOUS_EPS`` the gamma term is non-positive and the floor
    is all that remains.
    """
    if m < 1:
        raise PreconditionError(f"m must be positive, got {m}")
    if not 0.0 < alpha <= 1.0:
        raise PreconditionError(f"alpha must lie in (0, 1], got {alpha}")
    term = gamma_factor(rounds, eps) * (0.5 + eps / math.sqrt(m))
    return max(0.5, term) * alpha


def _solve_round(inst: Instance, partition: Partition, inner: InnerSolver):
    sets = tuple(inner.solve(inst, group, inst.k) for group in partition.groups)
    values = tuple(
        group_evaluate(inst, group, chosen) for group, chosen in zip(partition.groups, sets)
    )
    return sets, values, multi_objective(inst, sets)


def _scan(
    inst: Instance,
    partitions: Sequence[Partition],
    inner: InnerSolver,
    *,
    certified_ratio: float,
    seed: Optional[int] = None,
    warnings: Iterable[str] = (),
    expectation_bounds: Optional[tuple[tuple[float, float], ...]] = None,
    workers: int = 1,
) -> SolveReport:
    """Run one round per partition and fold the incumbent in round order.

    The fold applies the "at least as good" rule: a later round replaces
    the incumbent on ties. With ``workers > 1`` rounds are scored in a
    thread pool; the fold still walks them by index, so output does not
    depend on scheduling.
    """
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(lambda p: _solve_round(inst, p, inner), partitions))
    else:
        outcomes = [_solve_round(inst, partition, inner) for partition in partitions]

    best_sets: Optional[tuple[ItemSet, ...]] = None
    best_objective = -math.inf
    records = []
    for index, (partition, (sets, values, objective)) in enumerate(zip(partitions, outcomes)):
        takes = objective >= best_objective
        if takes:
            best_sets, best_objective = sets, objective
        records.append(RoundRecord(index, partition.groups, values, objective, takes))

    assert best_sets is not None
    return SolveReport(
        sets=best_sets,
        objective=best_objective,
        certified_ratio=certified_ratio,
        rounds=tuple(records),
        seed=seed,
        warnings=tuple(warnings),
        expectation_bounds=expectation_bounds,
    )


def enumeration_solve(
    inst: Instance,
    inner: InnerSolver,
    *,
    cap: int = PARTITION_CAP,
    workers: int = 1,
) -> SolveReport:
    """Try every two-group partition; certify the inner solver's ``alpha``.

    With the exact inner solver the returned objective equals the true
    two-candidate optimum: no feasible menu can beat it, and the best
    partition's group optima already add up to at least that optimum.
    """
    partitions = list(enumerate_partitions(inst.m, cap=cap))
    return _scan(inst, partitions, inner, certified_ratio=inner.reported_alpha, workers=workers)


def sampling_solve(
    inst: Instance,
    rounds: int,
    seed: int,
    inner: InnerSolver,
    *,
    eps: Sequence[float] = DEFAULT_EPS,
    workers: int = 1,
) -> SolveReport:
    """Try ``rounds`` sampled partitions; certify ``alpha / 2``.

    The half ratio holds for every sampled partition individually (any
    single round already scores at least half the optimum times ``alpha``),
    so it is certified deterministically regardless of the draw. The
    report also carries, per requested ``eps``, the stronger
    expectation-only factor from :func:`gamma_bound`.
    """
    if rounds < 1:
        raise PreconditionError(f"rounds must be positive, got {rounds}")
    partitions = [partition_at(inst.m, seed, r) for r in range(rounds)]
    warnings = tuple(
        f"eps={value:g} at or above {VACUOUS_EPS:.6f} makes the expectation bound vacuous; "
        "only the alpha/2 floor applies"
        for value in eps
        if value >= VACUOUS_EPS
    )
    bounds = tuple((float(value), gamma_bound(rounds, value, inst.m, inner.reported_alpha)) for value in eps)
    return _scan(
        inst,
        partitions,
        inner,
        certified_ratio=inner.reported_alpha / 2.0,
        seed=seed,
        warnings=warnings,
        expectation_bounds=bounds,
        workers=workers,
    )


def _count_group_partitions(m: int, l: int) -> int:
    # Stirling numbers of the second kind, summed over 1..min(l, m) blocks.
    counts = [[0] * (m + 1) for _ in range(m + 1)]
    counts[0][0] = 1
    for items in range(1, m + 1):
        for blocks in range(1, items + 1):
            counts[items][blocks] = counts[items - 1][blocks - 1] + blocks * counts[items - 1][blocks]
    return sum(counts[m][blocks] for blocks in range(1, min(l, m) + 1))


def _group_partitions(m: int, l: int) -> Iterator[Partition]:
    """Partitions of 0..m-1 into at most ``l`` unordered groups.

    Generated as restricted growth strings in lexicographic order: index 0
    opens group 0 and every later index joins an existing group or opens
    the next one. Groups come out ordered by smallest member, padded with
    empty groups to exactly ``l``.
    """
    assignment = [0] * m

    def emit() -> Partition:
        groups: list[list[int]] = [[] for _ in range(l)]
        for index, group in enumerate(assignment):
            groups[group].append(index)
        return Partition(tuple(tuple(group) for group in groups))

    def descend(position: int, used: int) -> Iterator[Partition]:
        if position == m:
            yield emit()
            return
        for group in range(min(used + 1, l)):
            assignment[position] = group
            yield from descend(position + 1, max(used, group + 1))

    yield from descend(1, 1)


def multi_enumeration_solve(
    inst: Instance,
    l: int,
    inner: InnerSolver,
    *,
    max_partitions: int = MULTI_PARTITION_BUDGET,
    cap: int = PARTITION_CAP,
    workers: int = 1,
) -> SolveReport:
    """Enumerate menus of ``l`` candidates via partitions into <= l groups.

    For ``l == 2`` this runs the exact same partition sequence as
    :func:`enumeration_solve` and returns an identical report. Larger
    menus only help: the objective is non-decreasing in ``l``, and with
    the exact inner solver it equals the true ``l``-candidate optimum.
    """
    if l < 2:
        raise PreconditionError(f"the menu needs at least two candidates, got l={l}")
    if l == 2:
        partitions: Sequence[Partition] = list(enumerate_partitions(inst.m, cap=cap))
    else:
        count = _count_group_partitions(inst.m, l)
        if count > max_partitions:
            raise BudgetError(
                f"enumeration of partitions of {inst.m} functions into <= {l} groups",
                count,
                max_partitions,
            )
        partitions = list(_group_partitions(inst.m, l))
    return _scan(inst, partitions, inner, certified_ratio=inner.reported_alpha, workers=workers)
