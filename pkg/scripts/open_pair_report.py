#!/usr/bin/env python3
"""Report open-pair counts for a list of benchmark settings.

Useful for eyeballing how complete the shipped fact dataset is; the three
counts asserted by the acceptance suite are marked.
"""

from __future__ import annotations

from fairdiv.engine import query
from fairdiv.kb import load_kb
from fairdiv.settings import Setting

ROWS = [
    ("additive", "goods", True, "asserted = 1"),
    ("additive", "chores", True, "asserted = 0"),
    ("additive", "general", True, "asserted = 0"),
    ("submodular", "goods", True, ""),
    ("subadditive", "goods", True, ""),
    ("general", "goods", True, ""),
    ("additive", "goods", None, ""),
    ("additive", "chores", None, ""),
    ("additive", "general", None, ""),
    ("subadditive", "goods", None, ""),
    ("general", "goods", None, ""),
    ("additive", "neg_binary", True, ""),
    ("additive", "binary", True, ""),
    ("submodular", "binary", True, ""),
    ("subadditive", "binary", True, ""),
    ("general", "binary", True, ""),
]


def main() -> None:
    kb = load_kb()
    for valuation, marginals, equal, note in ROWS:
        s = Setting(equal, None, None, valuation, marginals)
        result = query(kb, s)
        ent = "equal" if equal else "any"
        pairs = ", ".join(f"{a}/{b}" for a, b in result.open_pairs)
        print(
            f"{valuation:12s} {marginals:10s} {ent:5s} "
            f"open={len(result.open_pairs):3d}  {note}"
            + (f"  [{pairs}]" if 0 < len(result.open_pairs) <= 4 else "")
        )


if __name__ == "__main__":
    main()
