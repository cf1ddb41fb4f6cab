"""Inference engine: closure, non-implication expansion, feasibility."""

from __future__ import annotations

import itertools
import random

import pytest

from fairdiv.engine import (
    FEASIBLE,
    INFEASIBLE,
    OPEN,
    InconsistencyError,
    derived_nonimplications,
    implication_closure,
    query,
)
from fairdiv.kb import Fact, KnowledgeBase
from fairdiv.notions import NOTIONS
from fairdiv.settings import TOP, Setting


def S(vc="general", mc="general", ident=None, two=None, eq=None):
    return Setting(eq, two, ident, vc, mc)


def imp(f1, f2, setting=TOP, ref="test"):
    return Fact("implies", setting, ref, f1, f2)


def nimp(f1, f2, setting=TOP, ref="test-cex"):
    return Fact("not_implies", setting, ref, f1, f2)


def make_kb(*facts):
    return KnowledgeBase(facts=tuple(facts))


ADDITIVE_GOODS_EQ = S("additive", "goods", eq=True)
ADDITIVE_CHORES_EQ = S("additive", "chores", eq=True)


class TestClosure:
    def test_reflexive_and_transitive(self, kb):
        closure = implication_closure(kb, ADDITIVE_GOODS_EQ)
        for n in kb.notions:
            assert closure[(n, n)] == ()
        for (a, b), (c, d) in itertools.product(list(closure), repeat=2):
            if b == c:
                assert (a, d) in closure

    def test_known_chain(self, kb):
        closure = implication_closure(kb, ADDITIVE_GOODS_EQ)
        for pair in [
            ("PROP", "MMS"),
            ("MMS", "EEF1"),
            ("EEF1", "PROP1"),
            ("PROP", "PROP1"),
        ]:
            assert pair in closure
            assert closure[pair]  # non-trivial edge carries provenance

    def test_chain_refs_are_implies_facts(self, kb):
        closure = implication_closure(kb, ADDITIVE_GOODS_EQ)
        for chain in closure.values():
            for fact in chain:
                assert fact.kind == "implies"

    def test_more_specific_setting_implies_more(self, kb):
        general = set(implication_closure(kb, TOP))
        specific = set(implication_closure(kb, ADDITIVE_GOODS_EQ))
        assert general < specific

    def test_matches_reachability_on_random_relations(self):
        rng = random.Random(5)
        names = list(NOTIONS[:7])
        for _ in range(20):
            edges = {
                (a, b)
                for a in names
                for b in names
                if a != b and rng.random() < 0.2
            }
            kb = make_kb(*(imp(a, b) for a, b in sorted(edges)))
            closure = implication_closure(kb, TOP)
            # Independent oracle: Floyd-Warshall reachability.
            reach = {(n, n) for n in NOTIONS} | edges
            for k in names:
                for a in names:
                    for b in names:
                        if (a, k) in reach and (k, b) in reach:
                            reach.add((a, b))
            assert set(closure) == reach


class TestNonImplications:
    def test_chores_figure_examples(self, kb):
        nonimps = derived_nonimplications(kb, ADDITIVE_CHORES_EQ)
        assert ("MMS", "PROP1") in nonimps
        assert ("PROP", "EEF1") in nonimps

    def test_provenance_refs(self, kb):
        nonimps = derived_nonimplications(kb, ADDITIVE_CHORES_EQ)
        prov = nonimps[("MMS", "PROP1")]
        assert prov.source.kind == "not_implies"
        assert prov.refs()[0] == prov.source.ref

    def test_expansion_uses_closure_at_fact_setting(self):
        # The not_implies fact lives at a specific setting where an extra
        # implication holds; expansion must use that implication even when
        # the queried setting is more general.
        kb = make_kb(
            imp("MMS", "PROP", ADDITIVE_GOODS_EQ),
            nimp("EF1", "PROP", ADDITIVE_GOODS_EQ),
        )
        nonimps = derived_nonimplications(kb, TOP)
        assert ("EF1", "PROP") in nonimps
        # MMS -> PROP only holds at the fact's setting, yet EF1 =/=> MMS
        # follows at TOP: if EF1 implied MMS in general, the counterexample
        # at the small setting (where MMS -> PROP) would be contradicted.
        assert ("EF1", "MMS") in nonimps
        assert [f.f1 for f in nonimps[("EF1", "MMS")].chain_to] == ["MMS"]

    def test_facts_above_query_setting_ignored(self):
        kb = make_kb(nimp("EF", "PROP", TOP))
        assert derived_nonimplications(kb, ADDITIVE_GOODS_EQ) == {}


class TestFeasibility:
    def test_forward_propagation(self, kb):
        result = query(kb, ADDITIVE_GOODS_EQ)
        # EF1 allocations always exist for goods; everything EF1 implies is
        # then feasible too.
        assert result.feasibility["EF1"] == FEASIBLE
        for (f1, f2), _ in result.closure.items():
            if f1 == "EF1":
                assert result.feasibility[f2] == FEASIBLE

    def test_backward_propagation(self):
        kb = make_kb(
            imp("EF", "PROP"),
            Fact("infeasible", TOP, "no-prop", notion="PROP"),
        )
        result = query(kb, TOP)
        assert result.feasibility["PROP"] == INFEASIBLE
        assert result.feasibility["EF"] == INFEASIBLE
        assert result.feasibility["EF1"] == OPEN
        assert [f.ref for f in result.feasibility_provenance["EF"]] == [
            "no-prop",
            "test",
        ]

    def test_conflicting_feasibility_raises(self):
        kb = make_kb(
            Fact("feasible", TOP, "yes", notion="EF"),
            Fact("infeasible", TOP, "no", notion="EF"),
        )
        with pytest.raises(InconsistencyError):
            query(kb, TOP)

    def test_implied_and_refuted_pair_raises(self):
        kb = make_kb(imp("EF", "PROP"), nimp("EF", "PROP"))
        with pytest.raises(InconsistencyError, match="refuted"):
            query(kb, TOP)


class TestQuery:
    def test_empty_kb(self):
        kb = make_kb()
        result = query(kb, TOP)
        assert set(result.closure) == {(n, n) for n in kb.notions}
        assert result.nonimplications == {}
        assert set(result.feasibility.values()) == {OPEN}
        n = len(kb.notions)
        assert len(result.open_pairs) == n * (n - 1) // 2

    def test_open_pairs_exclude_resolved(self, kb):
        result = query(kb, ADDITIVE_GOODS_EQ)
        for a, b in result.open_pairs:
            assert a < b
            assert any(
                key not in result.closure
                and key not in result.nonimplications
                for key in ((a, b), (b, a))
            )

    def test_invalid_setting_rejected(self, kb):
        with pytest.raises(ValueError):
            query(kb, S("bogus", "goods"))

    def test_false_coordinates_rejected(self, kb):
        # The lattice tracks True (constrained) and None (unconstrained).
        with pytest.raises(ValueError):
            query(kb, Setting(False, None, None, "additive", "goods"))
