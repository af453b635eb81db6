"""Versioned JSON schemas for instance and report files.

Both formats are plain JSON with a pinned key order, two-space indent, and
a trailing newline; floats are written with ``repr`` (shortest exact
round-trip), so serializing the same data always yields the same bytes and
parsing then serializing any valid file is the identity on that canonical
form. Reports contain no wall-clock data unless timings are explicitly
requested, which keeps identical runs byte-identical.

Instance files (``schema_version`` 1)::

    {
      "schema_version": 1,
      "n": <int>, "k": <int>, "m": <int>,
      "functions": [
        {"kind": "modular", "weights": [...]},
        {"kind": "coverage", "universe_weights": [...], "covers": [[...], ...]},
        {"kind": "facility_location", "similarity": [[...], ...]},
        {"kind": "concave_over_modular", "weights": [...], "exponent": <float>}
      ],
      "labels": {"items": [...], "functions": [...]},   # optional
      "provenance": {"generator": ..., "seed": ..., "params": {...}}  # optional
    }

A ``k`` larger than ``n`` is clamped to ``n`` at load time with a warning
recorded on the document, so sweep scripts survive degenerate configs.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from typing import Any, Optional

from .core import (
    ConcaveOverModular,
    FacilityLocation,
    Instance,
    Modular,
    SubmodularFunction,
    WeightedCoverage,
)
from .errors import MenupickError, SchemaError
from .personalize import SolveReport

INSTANCE_SCHEMA_VERSION = 1
REPORT_SCHEMA_VERSION = 1


@dataclass
class InstanceDoc:
    """An instance plus the optional file-level metadata around it."""

    instance: Instance
    item_labels: Optional[list[str]] = None
    function_labels: Optional[list[str]] = None
    provenance: Optional[dict] = None
    warnings: list[str] = field(default_factory=list)


def dumps_canonical(payload: dict) -> str:
    """Serialize a payload dict to the canonical byte form."""
    return json.dumps(payload, indent=2, allow_nan=False) + "\n"


def write_atomic(path: str, text: str) -> None:
    """Write a file via a same-directory temp file and rename.

    Readers never observe a partial file, and a failed run leaves no
    output at ``path`` at all.
    """
    directory = os.path.dirname(os.path.abspath(path))
    handle = tempfile.NamedTemporaryFile(
        "w", dir=directory, prefix=os.path.basename(path) + ".", suffix=".tmp", delete=False
    )
    try:
        with handle:
            handle.write(text)
        os.replace(handle.name, path)
    except BaseException:
        os.unlink(handle.name)
        raise


def _function_payload(fn: SubmodularFunction) -> dict:
    if isinstance(fn, Modular):
        return {"kind": fn.kind, "weights": list(fn.weights)}
    if isinstance(fn, WeightedCoverage):
        return {
            "kind": fn.kind,
            "universe_weights": list(fn.universe_weights),
            "covers": [list(cover) for cover in fn.covers],
        }
    if isinstance(fn, FacilityLocation):
        return {"kind": fn.kind, "similarity": [list(row) for row in fn.similarity]}
    if isinstance(fn, ConcaveOverModular):
        return {"kind": fn.kind, "weights": list(fn.weights), "exponent": fn.exponent}
    raise SchemaError(f"cannot serialize function of type {type(fn).__name__}")


def instance_payload(doc: InstanceDoc) -> dict:
    inst = doc.instance
    payload: dict[str, Any] = {
        "schema_version": INSTANCE_SCHEMA_VERSION,
        "n": inst.n,
        "k": inst.k,
        "m": inst.m,
        "functions": [_function_payload(fn) for fn in inst.functions],
    }
    if doc.item_labels is not None or doc.function_labels is not None:
        labels: dict[str, Any] = {}
        if doc.item_labels is not None:
            labels["items"] = list(doc.item_labels)
        if doc.function_labels is not None:
            labels["functions"] = list(doc.function_labels)
        payload["labels"] = labels
    if doc.provenance is not None:
        payload["provenance"] = doc.provenance
    return payload


def _require(obj: dict, key: str, kinds, where: str):
    if key not in obj:
        raise SchemaError(f"{where}: missing required key {key!r}")
    value = obj[key]
    if not isinstance(value, kinds) or isinstance(value, bool):
        raise SchemaError(f"{where}: key {key!r} has the wrong type")
    return value


def _number_list(obj: dict, key: str, where: str) -> list[float]:
    raw = _require(obj, key, list, where)
    out = []
    for i, value in enumerate(raw):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise SchemaError(f"{where}: {key}[{i}] is not a number")
        out.append(float(value))
    return out


def _parse_function(obj: Any, index: int) -> SubmodularFunction:
    where = f"functions[{index}]"
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected an object")
    kind = _require(obj, "kind", str, where)
    try:
        if kind == Modular.kind:
            return Modular(tuple(_number_list(obj, "weights", where)))
        if kind == WeightedCoverage.kind:
            covers_raw = _require(obj, "covers", list, where)
            covers = []
            for i, cover in enumerate(covers_raw):
                if not isinstance(cover, list) or any(
                    isinstance(e, bool) or not isinstance(e, int) for e in cover
                ):
                    raise SchemaError(f"{where}: covers[{i}] must be a list of integers")
                covers.append(tuple(cover))
            return WeightedCoverage(
                tuple(_number_list(obj, "universe_weights", where)), tuple(covers)
            )
        if kind == FacilityLocation.kind:
            rows_raw = _require(obj, "similarity", list, where)
            rows = []
            for i, row in enumerate(rows_raw):
                if not isinstance(row, list):
                    raise SchemaError(f"{where}: similarity[{i}] must be a list")
                rows.append(tuple(float(v) for v in row))
            return FacilityLocation(tuple(rows))
        if kind == ConcaveOverModular.kind:
            exponent = _require(obj, "exponent", (int, float), where)
            return ConcaveOverModular(tuple(_number_list(obj, "weights", where)), float(exponent))
    except MenupickError as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(f"{where}: {exc}") from exc
    raise SchemaError(f"{where}: unknown function kind {kind!r}")


def parse_instance(payload: Any) -> InstanceDoc:
    """Build an :class:`InstanceDoc` from a decoded JSON payload."""
    if not isinstance(payload, dict):
        raise SchemaError("instance document must be a JSON object")
    version = _require(payload, "schema_version", int, "instance")
    if version != INSTANCE_SCHEMA_VERSION:
        raise SchemaError(f"unsupported instance schema_version {version}")
    n = _require(payload, "n", int, "instance")
    k = _require(payload, "k", int, "instance")
    m = _require(payload, "m", int, "instance")
    functions_raw = _require(payload, "functions", list, "instance")
    if len(functions_raw) != m:
        raise SchemaError(f"instance: m={m} but {len(functions_raw)} functions are listed")
    functions = tuple(_parse_function(obj, i) for i, obj in enumerate(functions_raw))

    warnings = []
    if n >= 1 and k > n:
        warnings.append(f"instance file requests k={k} > n={n}; clamped to k={n}")
        k = n
    try:
        instance = Instance(n, k, functions)
    except MenupickError as exc:
        raise SchemaError(f"instance: {exc}") from exc

    item_labels = function_labels = None
    if "labels" in payload:
        labels = _require(payload, "labels", dict, "instance")
        if "items" in labels:
            item_labels = [str(s) for s in _require(labels, "items", list, "labels")]
            if len(item_labels) != n:
                raise SchemaError(f"labels: {len(item_labels)} item labels for n={n} items")
        if "functions" in labels:
            function_labels = [str(s) for s in _require(labels, "functions", list, "labels")]
            if len(function_labels) != m:
                raise SchemaError(
                    f"labels: {len(function_labels)} function labels for m={m} functions"
                )
    provenance = payload.get("provenance")
    if provenance is not None and not isinstance(provenance, dict):
        raise SchemaError("instance: provenance must be an object")
    return InstanceDoc(instance, item_labels, function_labels, provenance, warnings)


def loads_instance(text: str) -> InstanceDoc:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}") from exc
    return parse_instance(payload)


def load_instance(path: str) -> InstanceDoc:
    with open(path, "r", encoding="utf-8") as handle:
        return loads_instance(handle.read())


def save_instance(doc: InstanceDoc, path: str) -> None:
    write_atomic(path, dumps_canonical(instance_payload(doc)))


def solve_payload(report: SolveReport) -> dict:
    """Serializable form of a :class:`SolveReport` (canonical key order)."""
    payload: dict[str, Any] = {
        "sets": [list(s.items) for s in report.sets],
        "objective": report.objective,
        "certified_ratio": report.certified_ratio,
        "seed": report.seed,
        "warnings": list(report.warnings),
        "rounds": [
            {
                "round": record.index,
                "groups": [list(group) for group in record.groups],
                "group_values": list(record.group_values),
                "objective": record.objective,
                "incumbent": record.incumbent,
            }
            for record in report.rounds
        ],
    }
    if report.expectation_bounds is not None:
        payload["expectation_bounds"] = [
            {"eps": eps, "factor": factor} for eps, factor in report.expectation_bounds
        ]
    return payload


def report_payload(
    solver: dict,
    instance_summary: dict,
    report: SolveReport,
    *,
    oracle: Optional[dict] = None,
    timings: Optional[dict] = None,
) -> dict:
    """Full report-file payload wrapping a solver result.

    ``oracle`` is present only when the oracle comparison ran; ``timings``
    only when explicitly requested (they vary run to run and would break
    byte-for-byte reproducibility).
    """
    payload: dict[str, Any] = {
        "schema_version": REPORT_SCHEMA_VERSION,
        "solver": solver,
        "instance": instance_summary,
        "result": solve_payload(report),
    }
    if oracle is not None:
        payload["oracle"] = oracle
    if timings is not None:
        payload["timings"] = timings
    return payload
