#!/usr/bin/env python3
"""Regenerate the packaged knowledge base from the fact dataset in
``fairdiv.kbdata``.  Output is canonical JSON, so reruns are byte-stable."""

from __future__ import annotations

import argparse
import pathlib

from fairdiv.kb import kb_from_json, kb_to_text
from fairdiv.kbdata import build_kb

DEFAULT_OUT = (
    pathlib.Path(__file__).resolve().parent.parent
    / "src" / "fairdiv" / "data" / "kb.json"
)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=pathlib.Path, default=DEFAULT_OUT)
    args = parser.parse_args()

    kb = build_kb()
    text = kb_to_text(kb)
    # Round-trip through the loader so the shipped file is known-valid.
    import json

    kb_from_json(json.loads(text))
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(text, encoding="utf-8")
    counts: dict[str, int] = {}
    for fact in kb.facts:
        counts[fact.kind] = counts.get(fact.kind, 0) + 1
    summary = ", ".join(f"{k}={v}" for k, v in sorted(counts.items()))
    print(f"wrote {args.out} ({len(kb.facts)} facts: {summary})")


if __name__ == "__main__":
    main()
