"""Knowledge-base loading, canonical serialization, and validation errors."""

from __future__ import annotations

import json
import pathlib

import pytest

from fairdiv.kb import (
    ENV_KB_PATH,
    KbError,
    kb_from_json,
    kb_to_text,
    load_kb,
)
from fairdiv.kbdata import build_kb
from fairdiv.notions import NOTIONS

SHIPPED = (
    pathlib.Path(__file__).parent.parent
    / "src" / "fairdiv" / "data" / "kb.json"
)


def base_fact(**overrides):
    fact = {
        "kind": "implies",
        "ref": "test ref",
        "from": "EF",
        "to": "EF1",
        "setting": {
            "entitlements": "any",
            "agents": "any",
            "identical": None,
            "valuation": "general",
            "marginals": "general",
        },
    }
    fact.update(overrides)
    return fact


class TestRoundTrip:
    def test_shipped_kb_round_trips(self, kb):
        text = kb_to_text(kb)
        again = kb_from_json(json.loads(text))
        assert kb_to_text(again) == text

    def test_shipped_file_matches_regeneration(self, kb):
        # scripts/build_kb.py writes kb_to_text(build_kb()); the checked-in
        # dataset must be byte-identical to a fresh regeneration.
        assert SHIPPED.read_text() == kb_to_text(build_kb())

    def test_fact_counts(self, kb):
        counts = {}
        for fact in kb.facts:
            counts[fact.kind] = counts.get(fact.kind, 0) + 1
        assert counts["implies"] > 80
        assert counts["not_implies"] > 60
        assert counts["feasible"] > 10
        assert counts["infeasible"] > 10

    def test_every_ref_nonempty(self, kb):
        assert all(fact.ref for fact in kb.facts)


class TestLoading:
    def test_explicit_path(self, tmp_path, kb):
        path = tmp_path / "kb.json"
        path.write_text(kb_to_text(kb))
        assert len(load_kb(str(path)).facts) == len(kb.facts)

    def test_env_var_override(self, tmp_path, monkeypatch):
        path = tmp_path / "kb.json"
        path.write_text(json.dumps({"facts": [base_fact()]}))
        monkeypatch.setenv(ENV_KB_PATH, str(path))
        assert len(load_kb().facts) == 1

    def test_missing_file(self):
        with pytest.raises(OSError):
            load_kb("/no/such/kb.json")

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "kb.json"
        path.write_text("{not json")
        with pytest.raises(KbError, match="not valid JSON"):
            load_kb(str(path))


class TestValidation:
    def test_empty_kb(self):
        kb = kb_from_json({})
        assert kb.facts == ()
        assert kb.notions == NOTIONS

    def test_unknown_kind_located(self):
        with pytest.raises(KbError, match=r"facts\[1\].*kind"):
            kb_from_json({"facts": [base_fact(), base_fact(kind="maybe")]})

    def test_unknown_notion(self):
        with pytest.raises(KbError, match="unknown notion 'EF9'"):
            kb_from_json({"facts": [base_fact(to="EF9")]})

    def test_missing_ref(self):
        with pytest.raises(KbError, match="ref"):
            kb_from_json({"facts": [base_fact(ref="")]})

    def test_bad_setting(self):
        fact = base_fact()
        fact["setting"]["valuation"] = "linear"
        with pytest.raises(KbError, match=r"facts\[0\]"):
            kb_from_json({"facts": [fact]})

    def test_witness_only_on_not_implies(self):
        witness = {
            "instance": {
                "n": 2,
                "m": 1,
                "entitlements": ["1/2", "1/2"],
                "valuations": [
                    {"type": "additive", "values": ["1"]},
                    {"type": "additive", "values": ["1"]},
                ],
            },
            "allocation": [[0], []],
            "violating_agent": 1,
        }
        with pytest.raises(KbError, match="witness"):
            kb_from_json({"facts": [base_fact(witness=witness)]})
        ok = kb_from_json(
            {"facts": [base_fact(kind="not_implies", witness=witness)]}
        )
        assert ok.facts[0].witness is not None

    def test_witness_allocation_must_partition(self):
        witness = {
            "instance": {
                "n": 2,
                "m": 2,
                "entitlements": ["1/2", "1/2"],
                "valuations": [
                    {"type": "additive", "values": ["1", "1"]},
                    {"type": "additive", "values": ["1", "1"]},
                ],
            },
            "allocation": [[0], [0, 1]],
            "violating_agent": 0,
        }
        with pytest.raises(KbError, match="bad witness"):
            kb_from_json(
                {"facts": [base_fact(kind="not_implies", witness=witness)]}
            )

    def test_violating_agent_range(self):
        witness = {
            "instance": {
                "n": 2,
                "m": 1,
                "entitlements": ["1/2", "1/2"],
                "valuations": [
                    {"type": "additive", "values": ["1"]},
                    {"type": "additive", "values": ["1"]},
                ],
            },
            "allocation": [[0], []],
            "violating_agent": 5,
        }
        with pytest.raises(KbError, match="out of range"):
            kb_from_json(
                {"facts": [base_fact(kind="not_implies", witness=witness)]}
            )

    def test_custom_poset_cycle_rejected(self):
        data = {
            "posets": {
                "valuation": {
                    "nodes": ["additive", "general"],
                    "edges": [
                        ["additive", "general"],
                        ["general", "additive"],
                    ],
                }
            }
        }
        with pytest.raises(KbError, match="posets"):
            kb_from_json(data)
