"""Deterministic random instance generation for desk-scale experiments.

Every function draws from its own derived stream (lane ``j`` of the master
seed drives function ``j``), and draws are addressed by fixed positions
within that stream, so the emitted instance depends only on the arguments
and the seed. Layouts per family:

* modular: weight of item ``i`` is the uniform double at position ``i``.
* coverage: universe-element weights sit at positions ``0..u-1``; the
  inclusion test for (item ``i``, element ``e``) reads the uniform double
  at position ``u + i*u + e`` and includes the element when it is below
  the density.
* facility_location: similarity of (client ``c``, item ``i``) is the
  uniform double at position ``c*n + i``.
* concave_over_modular: weights as modular, plus a fixed exponent.
"""

from __future__ import annotations

from typing import Optional

from . import rng
from .core import (
    ConcaveOverModular,
    FacilityLocation,
    Instance,
    Modular,
    SubmodularFunction,
    WeightedCoverage,
)
from .errors import PreconditionError
from .files import InstanceDoc

FAMILIES = ("modular", "coverage", "facility_location", "concave_over_modular", "mixed")
_MIXED_CYCLE = ("modular", "coverage", "facility_location", "concave_over_modular")


def _modular(seed: int, n: int) -> Modular:
    return Modular(tuple(rng.unit_at(seed, i) for i in range(n)))


def _coverage(seed: int, n: int, universe: int, density: float) -> WeightedCoverage:
    weights = tuple(rng.unit_at(seed, e) for e in range(universe))
    covers = tuple(
        tuple(e for e in range(universe) if rng.unit_at(seed, universe + i * universe + e) < density)
        for i in range(n)
    )
    return WeightedCoverage(weights, covers)


def _facility(seed: int, n: int, clients: int) -> FacilityLocation:
    return FacilityLocation(
        tuple(tuple(rng.unit_at(seed, c * n + i) for i in range(n)) for c in range(clients))
    )


def _concave(seed: int, n: int, exponent: float) -> ConcaveOverModular:
    return ConcaveOverModular(tuple(rng.unit_at(seed, i) for i in range(n)), exponent)


def generate_instance(
    family: str,
    n: int,
    k: int,
    m: int,
    seed: int,
    *,
    density: float = 0.3,
    universe: Optional[int] = None,
    clients: Optional[int] = None,
    exponent: float = 0.5,
) -> InstanceDoc:
    """Build a random instance of one family (or the round-robin mix).

    The returned document carries full provenance (family, seed, and the
    parameters actually used), so the file regenerates bit-identically.
    """
    if family not in FAMILIES:
        raise PreconditionError(f"unknown family {family!r}; choose one of {', '.join(FAMILIES)}")
    if n < 1 or m < 1 or not 1 <= k <= n:
        raise PreconditionError(f"need n >= 1, m >= 1 and 1 <= k <= n; got n={n}, k={k}, m={m}")
    if not 0.0 < density <= 1.0:
        raise PreconditionError(f"density must lie in (0, 1], got {density}")
    universe = n if universe is None else universe
    clients = n if clients is None else clients
    if universe < 1 or clients < 1:
        raise PreconditionError("universe and clients must be positive")

    functions: list[SubmodularFunction] = []
    for j in range(m):
        kind = _MIXED_CYCLE[j % len(_MIXED_CYCLE)] if family == "mixed" else family
        lane = rng.substream_seed(seed, j)
        if kind == "modular":
            functions.append(_modular(lane, n))
        elif kind == "coverage":
            functions.append(_coverage(lane, n, universe, density))
        elif kind == "facility_location":
            functions.append(_facility(lane, n, clients))
        else:
            functions.append(_concave(lane, n, exponent))

    params: dict = {}
    if family in ("coverage", "mixed"):
        params["universe"] = universe
        params["density"] = density
    if family in ("facility_location", "mixed"):
        params["clients"] = clients
    if family in ("concave_over_modular", "mixed"):
        params["exponent"] = exponent
    provenance = {
        "generator": "menupick-gen",
        "family": family,
        "seed": seed,
        "params": params,
    }
    return InstanceDoc(Instance(n, k, tuple(functions)), provenance=provenance)
