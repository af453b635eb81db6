#!/usr/bin/env python3
"""Regenerate the committed golden oracle values.

Each fixture is identified purely by its generator arguments; the oracle
values stored next to them are recomputed here and re-derived in CI, so
no expected value is ever typed in by hand. Run from the repo root:

    python3 scripts/regen_golden.py
"""

import json
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from menupick.generate import generate_instance
from menupick.oracle import exact_multi_solve, exact_p1_solve, exact_pair_solve

OUT = os.path.join(os.path.dirname(__file__), "..", "tests", "fixtures", "golden_oracle.json")

# (family, n, k, m, seed); keep every fixture well inside the oracle budgets.
FIXTURES = [
    ("coverage", 7, 2, 3, 7),
    ("coverage", 6, 2, 3, 11),
    ("modular", 6, 2, 3, 3),
    ("facility_location", 6, 2, 3, 5),
    ("concave_over_modular", 6, 2, 3, 9),
    ("mixed", 6, 2, 4, 13),
    ("mixed", 5, 1, 3, 21),
    ("coverage", 5, 1, 3, 17),
]


def main() -> None:
    entries = []
    for family, n, k, m, seed in FIXTURES:
        doc = generate_instance(family, n, k, m, seed)
        inst = doc.instance
        entry = {
            "family": family,
            "n": n,
            "k": k,
            "m": m,
            "seed": seed,
            "opt0": exact_pair_solve(inst).opt_value,
            "opt1": exact_p1_solve(inst).opt_value,
        }
        if k == 1 and m == 3:
            entry["opt_l2"] = exact_multi_solve(inst, 2).opt_value
            entry["opt_l3"] = exact_multi_solve(inst, 3).opt_value
        entries.append(entry)
    with open(OUT, "w", encoding="utf-8") as handle:
        json.dump({"fixtures": entries}, handle, indent=2)
        handle.write("\n")
    print(f"wrote {len(entries)} fixtures to {os.path.normpath(OUT)}")


if __name__ == "__main__":
    main()
