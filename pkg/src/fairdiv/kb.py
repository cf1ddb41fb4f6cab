"""Knowledge base of conditional implications, counterexamples, and feasibility.

A fact is one of:

- ``implies``:      f1 ⇒ f2 for every instance in the fact's setting,
- ``not_implies``:  f1 ⇏ f2, usually with a concrete witness,
- ``feasible``:     an allocation satisfying the notion always exists,
- ``infeasible``:   some instance in the setting admits no such allocation.

The shipped dataset lives in ``data/kb.json``; the ``FIMP_KB`` environment
variable or an explicit path overrides it.  Serialization is canonical
(sorted keys) so regenerated files diff cleanly.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from importlib import resources

from .notions import NOTIONS
from .oracle import Witness
from .settings import (
    MARGINAL_CLASSES,
    MARGINAL_EDGES,
    VALUATION_CLASSES,
    VALUATION_EDGES,
    Setting,
    SettingSpace,
    setting_from_json,
    setting_to_json,
)

FACT_KINDS = ("implies", "not_implies", "feasible", "infeasible")

ENV_KB_PATH = "FIMP_KB"


class KbError(Exception):
    """The KB file is malformed or inconsistent with the notion/poset names."""


@dataclass(frozen=True)
class Fact:
    kind: str
    setting: Setting
    ref: str
    f1: str | None = None  # implication kinds
    f2: str | None = None
    notion: str | None = None  # feasibility kinds
    witness: Witness | None = None

    def to_json(self) -> dict:
        data: dict = {"kind": self.kind, "ref": self.ref}
        if self.kind in ("implies", "not_implies"):
            data["from"] = self.f1
            data["to"] = self.f2
        else:
            data["notion"] = self.notion
        data["setting"] = setting_to_json(self.setting)
        if self.witness is not None:
            data["witness"] = self.witness.to_json()
        return data


@dataclass(frozen=True)
class KnowledgeBase:
    facts: tuple[Fact, ...]
    notions: tuple[str, ...] = NOTIONS
    space: SettingSpace = field(default_factory=SettingSpace)

    def to_json(self) -> dict:
        return {
            "notions": list(self.notions),
            "posets": {
                "valuation": {
                    "nodes": list(self.space.valuation_nodes),
                    "edges": [list(e) for e in self.space.valuation_edges],
                },
                "marginal": {
                    "nodes": list(self.space.marginal_nodes),
                    "edges": [list(e) for e in self.space.marginal_edges],
                },
            },
            "facts": [f.to_json() for f in self.facts],
        }


def _fact_from_json(data: dict, where: str, notions: tuple[str, ...]) -> Fact:
    kind = data.get("kind")
    if kind not in FACT_KINDS:
        raise KbError(f"{where}: unknown fact kind {kind!r}")
    ref = data.get("ref")
    if not ref or not isinstance(ref, str):
        raise KbError(f"{where}: missing or empty ref")
    try:
        setting = setting_from_json(data.get("setting", {}))
    except ValueError as exc:
        raise KbError(f"{where}: {exc}") from exc
    f1 = f2 = notion = None
    if kind in ("implies", "not_implies"):
        f1, f2 = data.get("from"), data.get("to")
        for name in (f1, f2):
            if name not in notions:
                raise KbError(f"{where}: unknown notion {name!r}")
    else:
        notion = data.get("notion")
        if notion not in notions:
            raise KbError(f"{where}: unknown notion {notion!r}")
    witness = None
    if data.get("witness") is not None:
        if kind != "not_implies":
            raise KbError(f"{where}: only not_implies facts carry a witness")
        try:
            witness = Witness.from_json(data["witness"])
        except (KeyError, ValueError, ZeroDivisionError) as exc:
            raise KbError(f"{where}: bad witness: {exc}") from exc
        from .model import validate_allocation

        errors = validate_allocation(witness.instance, witness.allocation)
        if errors:
            raise KbError(f"{where}: bad witness: {'; '.join(errors)}")
        if not (0 <= witness.violating_agent < witness.instance.n):
            raise KbError(
                f"{where}: violating agent {witness.violating_agent} out of range"
            )
    return Fact(kind, setting, ref, f1, f2, notion, witness)


def kb_from_json(data: dict) -> KnowledgeBase:
    notions = tuple(data.get("notions", NOTIONS))
    for name in notions:
        if name not in NOTIONS:
            raise KbError(f"notions: unknown notion {name!r}")
    posets = data.get("posets", {})

    def poset(key: str, default_nodes, default_edges):
        sub = posets.get(key)
        if sub is None:
            return tuple(default_nodes), tuple(default_edges)
        return (
            tuple(sub["nodes"]),
            tuple((a, b) for a, b in sub["edges"]),
        )

    vn, ve = poset("valuation", VALUATION_CLASSES, VALUATION_EDGES)
    mn, me = poset("marginal", MARGINAL_CLASSES, MARGINAL_EDGES)
    try:
        space = SettingSpace(vn, ve, mn, me)
    except ValueError as exc:
        raise KbError(f"posets: {exc}") from exc
    facts = tuple(
        _fact_from_json(raw, f"facts[{idx}]", notions)
        for idx, raw in enumerate(data.get("facts", []))
    )
    for idx, fact in enumerate(facts):
        errors = space.validate_setting(fact.setting)
        if errors:
            raise KbError(f"facts[{idx}]: {'; '.join(errors)}")
    return KnowledgeBase(facts=facts, notions=notions, space=space)


def kb_to_text(kb: KnowledgeBase) -> str:
    return json.dumps(kb.to_json(), indent=1, sort_keys=True) + "\n"


def default_kb_path() -> str | None:
    return os.environ.get(ENV_KB_PATH)


def load_kb(path: str | None = None) -> KnowledgeBase:
    """Load and validate a KB; without a path, honor FIMP_KB then the
    packaged dataset."""
    if path is None:
        path = default_kb_path()
    if path is None:
        text = (
            resources.files("fairdiv").joinpath("data/kb.json").read_text()
        )
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise KbError(f"not valid JSON: {exc}") from exc
    return kb_from_json(data)
