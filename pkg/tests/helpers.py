"""Shared deterministic fixture generation for the test suite."""

import os

from menupick import rng
from menupick.core import Instance
from menupick.generate import generate_instance

FIXTURE_DIR = os.path.join(os.path.dirname(__file__), "fixtures")

FOUR_FAMILIES = ("modular", "coverage", "facility_location", "concave_over_modular")

_SWEEP_SALT = 0x5EED5EED


def sweep_instance(index: int, *, n_range=(3, 7), k_range=(1, 2), m_range=(1, 4)) -> Instance:
    """Desk-scale random instance number ``index`` of a deterministic sweep.

    Sizes are drawn from the index, families cycle so every fourth
    instance exercises the same family, and the generator seed is the
    index itself, so any sweep member can be regenerated in isolation.
    """
    family = FOUR_FAMILIES[index % len(FOUR_FAMILIES)]
    lane = rng.substream_seed(_SWEEP_SALT, index)
    n = n_range[0] + rng.below_at(lane, 0, n_range[1] - n_range[0] + 1)
    k = min(n, k_range[0] + rng.below_at(lane, 1, k_range[1] - k_range[0] + 1))
    m = m_range[0] + rng.below_at(lane, 2, m_range[1] - m_range[0] + 1)
    return generate_instance(family, n, k, m, seed=index).instance


def random_subset(seed: int, draw: int, n: int, max_size: int) -> list[int]:
    """Deterministic subset of 0..n-1 with at most ``max_size`` items."""
    lane = rng.substream_seed(seed, draw)
    size = rng.below_at(lane, 0, max_size + 1)
    items: set[int] = set()
    position = 1
    while len(items) < size:
        items.add(rng.below_at(lane, position, n))
        position += 1
    return sorted(items)


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURE_DIR, name)
