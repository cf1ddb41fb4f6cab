"""Fairness-notion evaluators and share computations on concrete instances."""

from __future__ import annotations

from fractions import Fraction
import random

import pytest

from fairdiv import model
from fairdiv.notions import (
    DEFAULT_BUDGETS,
    check_ef,
    check_ef1,
    check_efx,
    check_efx_fast,
    check_efx0,
    check_epistemic,
    check_prop,
    check_prop1,
    check_propm_avg,
    check_propx,
    check_propx_fast,
    evaluate,
    enumerate_allocations,
    min_share,
    proportional_share,
    restrict,
    share_aps,
    share_pessshare,
    share_wmms,
)
from fairdiv.oracle import GeneratorConfig, generate_instances
from fairdiv.settings import Setting

from conftest import additive_instance, alloc, identical_additive

F = Fraction


# Three-agent goods instance where every agent's minimum EF share is the
# 30-valued good (shows PROP without MEFS).
BIG_GOOD = additive_instance([(10, 20, 30), (20, 10, 30), (10, 20, 30)])


class TestEf:
    def test_symmetric_split(self):
        inst = identical_additive((2, 2), 2)
        a = alloc([0], [1])
        assert check_ef(inst, a, 0) and check_ef(inst, a, 1)

    def test_big_good_instance_not_ef(self):
        a = alloc([1], [0], [2])
        assert not check_ef(BIG_GOOD, a, 1)  # 20 < 30 for agent 1

    def test_weighted_comparison(self):
        inst = identical_additive((1, 1), 2, entitlements=[F(2, 3), F(1, 3)])
        a = alloc([0], [1])
        # 1/(2/3) = 3/2 < 1/(1/3) = 3 for the heavy agent.
        assert not check_ef(inst, a, 0)


class TestEf1:
    def test_five_unit_goods_unbalanced(self):
        inst = identical_additive((1, 1, 1, 1, 1), 3)
        a = alloc([0], [1], [2, 3, 4])
        assert not check_ef1(inst, a, 0)

    def test_ef_implies_ef1(self):
        inst = identical_additive((2, 2), 2)
        a = alloc([0], [1])
        assert check_ef1(inst, a, 0)

    def test_mixed_manna_weighted(self):
        inst = identical_additive(
            (1, 1, 1, 1, -1), 2, entitlements=[F(4, 5), F(1, 5)]
        )
        a = alloc([1, 2, 3, 4], [0])
        assert check_ef1(inst, a, 0) and check_ef1(inst, a, 1)
        # The heavy agent still envies after dropping the chore from her own
        # bundle, so the allocation is EF1 but not EFX.
        assert not check_efx(inst, a, 0)


class TestEfx:
    def test_bivalued_split(self):
        inst = identical_additive((3, 3, 2, 2, 2), 2)
        a = alloc([0, 2], [1, 3, 4])
        assert check_efx(inst, a, 0) and check_efx(inst, a, 1)

    def test_empty_handed_agent(self):
        inst = identical_additive((1, 1), 2)
        a = alloc([0, 1], [])
        assert not check_efx(inst, a, 1)

    def test_efx0_stricter_on_zero_goods(self):
        inst = identical_additive((2, 1, 0), 2)
        a = alloc([1], [0, 2])
        assert check_efx(inst, a, 0)
        assert not check_efx0(inst, a, 0)

    def test_efx0_on_ef_allocation(self):
        inst = identical_additive((-1, -1), 2)
        a = alloc([0], [1])
        assert check_efx0(inst, a, 0) and check_efx0(inst, a, 1)

    @pytest.mark.parametrize("marginals", ["positive", "negative"])
    def test_fast_path_matches_enumeration(self, marginals):
        # The single-item fast paths are licensed only for all-positive or
        # all-negative marginals (or submodular pure manna).
        setting = Setting(None, None, None, "additive", marginals)
        config = GeneratorConfig(seed=3, m_range=(1, 5))
        for inst in generate_instances(setting, config, 20):
            for a in enumerate_allocations(inst.n, inst.m):
                for i in range(inst.n):
                    assert check_efx_fast(inst, a, i) == check_efx(inst, a, i)
                    assert check_propx_fast(inst, a, i) == check_propx(
                        inst, a, i
                    )


class TestProp:
    def test_prop_and_prop1(self):
        inst = identical_additive((1, 1), 2)
        a = alloc([0], [1])
        assert check_prop(inst, a, 0)
        assert check_prop1(inst, a, 0)

    def test_heavy_chore_blocks_prop1(self):
        inst = identical_additive((-18, -3, -3, -3, -3, -3), 3)
        a = alloc([1, 2, 3, 4, 5], [0], [])
        # Share is -11; removing any chore still leaves -12, not > -11.
        assert not check_prop1(inst, a, 0)

    def test_prop_implies_prop1(self):
        inst = identical_additive((-18, -3, -3, -3, -3, -3), 3)
        a = alloc([1, 2], [0], [3, 4, 5])
        assert check_prop(inst, a, 0)
        assert check_prop1(inst, a, 0)


class TestPropx:
    def test_near_uniform_goods(self):
        inst = identical_additive((1, 1, 1, F(3, 2)), 2)
        a = alloc([3], [0, 1, 2])
        assert check_propx(inst, a, 0) and check_propx(inst, a, 1)

    def test_empty_agent_fails(self):
        inst = identical_additive((50, 10), 3)
        a = alloc([0], [1], [])
        assert not check_propx(inst, a, 2)


class TestPropmPropavg:
    def test_propm_without_propavg(self):
        inst = identical_additive((60, 60, 30), 3)
        a = alloc([2], [0, 1], [])
        propm, propavg = check_propm_avg(inst, a, 2)
        assert propm and not propavg

    def test_prop_satisfies_both(self):
        inst = identical_additive((1, 1, 1), 3)
        a = alloc([0], [1], [2])
        assert check_propm_avg(inst, a, 0) == (True, True)

    def test_propx_to_propavg_to_propm(self):
        setting = Setting(True, None, None, "additive", "general")
        config = GeneratorConfig(seed=5, m_range=(1, 5))
        for inst in generate_instances(setting, config, 25):
            for a in enumerate_allocations(inst.n, inst.m):
                for i in range(inst.n):
                    propm, propavg = check_propm_avg(inst, a, i)
                    if check_propx(inst, a, i):
                        assert propavg
                    if propavg:
                        assert propm


class TestShares:
    def test_wmms_bivalued(self):
        inst = identical_additive((3, 3, 2, 2, 2), 2)
        assert share_wmms(inst, 0, DEFAULT_BUDGETS) == 6

    def test_wmms_unequal_chores(self):
        inst = identical_additive((-1, -1), 2, entitlements=[F(9, 10), F(1, 10)])
        assert share_wmms(inst, 0, DEFAULT_BUDGETS) == -2
        assert share_wmms(inst, 1, DEFAULT_BUDGETS) == F(-2, 9)

    def test_pess_share_single_good(self):
        inst = identical_additive((1,), 2)
        assert share_pessshare(inst, 0, DEFAULT_BUDGETS) == 0

    def test_pess_share_heavy_agent(self):
        inst = identical_additive((1, 1, 1), 2, entitlements=[F(2, 3), F(1, 3)])
        assert share_pessshare(inst, 0, DEFAULT_BUDGETS) == 2

    def test_aps_unit_entitlements(self):
        inst = identical_additive(
            (1,) * 7, 3, entitlements=[F(7, 12), F(5, 24), F(5, 24)]
        )
        assert share_aps(inst, 0, DEFAULT_BUDGETS) == 4
        assert share_aps(inst, 1, DEFAULT_BUDGETS) == 1
        assert share_aps(inst, 2, DEFAULT_BUDGETS) == 1

    def test_aps_priced_goods(self):
        inst = identical_additive((60, 30, 10, 10, 10, 10), 3)
        assert share_aps(inst, 0, DEFAULT_BUDGETS) == 30

    def test_min_ef_share_big_good(self):
        for i in range(3):
            assert min_share("EF", BIG_GOOD, i, DEFAULT_BUDGETS) == 30

    def test_min_ef_share_two_unit_goods(self):
        inst = identical_additive((1, 1), 2)
        assert min_share("EF", inst, 0, DEFAULT_BUDGETS) == 1

    def test_min_efx_share_near_uniform(self):
        # EFX allocations must give the agent two unit goods or more; the
        # cheapest EFX-certifying own bundle is worth 2.
        inst = identical_additive((1, 1, 1, F(3, 2)), 2)
        assert min_share("EFX", inst, 0, DEFAULT_BUDGETS) == 2

    def test_aps_at_most_proportional_share(self):
        setting = Setting(None, None, None, "additive", "general")
        config = GeneratorConfig(seed=9, m_range=(1, 5))
        for inst in generate_instances(setting, config, 25):
            for i in range(inst.n):
                aps = share_aps(inst, i, DEFAULT_BUDGETS)
                assert aps <= proportional_share(inst, i)

    def test_aps_at_least_pess_share_goods(self):
        # The pessimistic share is a goods notion: with chores, isolating
        # every chore in its own bundle inflates the 1-out-of-d share above
        # both MMS and APS (e.g. chores (-3, -6, -8), n=2: pessShare -8,
        # APS -9), so the comparison is only tested over goods.
        setting = Setting(None, None, None, "additive", "goods")
        config = GeneratorConfig(seed=9, m_range=(1, 5))
        for inst in generate_instances(setting, config, 25):
            for i in range(inst.n):
                aps = share_aps(inst, i, DEFAULT_BUDGETS)
                assert aps >= share_pessshare(inst, i, DEFAULT_BUDGETS)

    def test_tribool_aps_formula(self):
        setting = Setting(None, None, None, "additive", "tribool")
        config = GeneratorConfig(seed=13, m_range=(1, 6))
        for inst in generate_instances(setting, config, 25):
            for i in range(inst.n):
                prop = proportional_share(inst, i)
                floor = Fraction(prop.numerator // prop.denominator)
                assert share_aps(inst, i, DEFAULT_BUDGETS) == floor

    def test_unit_demand_shares(self):
        values = tuple(F(x) for x in (200, 30, 10, 10, 10))
        v = model.UnitDemand(values)
        inst = model.Instance((F(1, 4),) * 4, (v,) * 4)
        assert share_wmms(inst, 0, DEFAULT_BUDGETS) == 10  # 4th largest
        assert share_aps(inst, 0, DEFAULT_BUDGETS) == 10


class TestEpistemic:
    def test_two_agents_reduces_to_direct_check(self):
        setting = Setting(True, True, None, "additive", "general")
        config = GeneratorConfig(seed=21, m_range=(1, 4))
        for inst in generate_instances(setting, config, 15):
            for a in enumerate_allocations(inst.n, inst.m):
                for i in range(inst.n):
                    assert check_epistemic(
                        "EF", inst, a, i, DEFAULT_BUDGETS
                    ) == check_ef(inst, a, i)

    def test_epistemic_chain(self):
        setting = Setting(True, None, None, "additive", "goods")
        config = GeneratorConfig(seed=22, m_range=(1, 4))
        for inst in generate_instances(setting, config, 15):
            for a in enumerate_allocations(inst.n, inst.m):
                for i in range(inst.n):
                    if check_ef(inst, a, i):
                        assert check_epistemic("EF", inst, a, i, DEFAULT_BUDGETS)
                    if check_epistemic("EF", inst, a, i, DEFAULT_BUDGETS):
                        mefs = min_share("EF", inst, i, DEFAULT_BUDGETS)
                        assert inst.valuations[i].value(a[i]) >= mefs


class TestRestrict:
    def test_entitlement_renormalization(self):
        inst = identical_additive(
            (1, 1, 1), 3, entitlements=[F(7, 12), F(5, 24), F(5, 24)]
        )
        a = alloc([0], [1], [2])
        rinst, ralloc = restrict(inst, a, [0, 1])
        assert rinst.entitlements == (F(14, 19), F(5, 19))
        assert rinst.m == 2 and len(ralloc) == 2

    def test_full_group_is_identity(self):
        inst = identical_additive((1, 2), 2)
        a = alloc([0], [1])
        rinst, ralloc = restrict(inst, a, [0, 1])
        assert rinst.entitlements == inst.entitlements
        assert ralloc == a

    def test_pair_of_equals(self):
        inst = identical_additive((1, 1, 1), 3)
        a = alloc([0], [1], [2])
        rinst, _ = restrict(inst, a, [1, 2])
        assert rinst.entitlements == (F(1, 2), F(1, 2))

    def test_small_group_rejected(self):
        inst = identical_additive((1, 1), 2)
        with pytest.raises(ValueError):
            restrict(inst, alloc([0], [1]), [0])


class TestEvaluate:
    def test_pmms_without_mms(self):
        inst = identical_additive((6, 4, 3, 3, 2, 2, 1), 3)
        a = alloc([0], [2, 3, 4], [1, 5, 6])
        for i in range(3):
            assert evaluate("PMMS", inst, a, i)
        assert not evaluate("MMS", inst, a, 0)  # 6 < MMS 7

    def test_two_agents_collapse_prop_family(self):
        setting = Setting(None, True, None, "additive", "general")
        config = GeneratorConfig(seed=31, m_range=(1, 4))
        for inst in generate_instances(setting, config, 15):
            for a in enumerate_allocations(inst.n, inst.m):
                for i in range(inst.n):
                    p = evaluate("PROP", inst, a, i)
                    assert evaluate("PPROP", inst, a, i) == p
                    assert evaluate("GPROP", inst, a, i) == p

    def test_gaps_with_unbalanced_goods(self):
        inst = identical_additive((50, 10), 3)
        a = alloc([0], [1], [])
        for i in range(3):
            assert evaluate("GAPS", inst, a, i)

    def test_groupwise_implies_pairwise_implies_base(self):
        setting = Setting(True, None, None, "additive", "general")
        config = GeneratorConfig(seed=37, m_range=(1, 4))
        for inst in generate_instances(setting, config, 15):
            for a in enumerate_allocations(inst.n, inst.m):
                for i in range(inst.n):
                    for g, p, b in (
                        ("GPROP", "PPROP", "PROP"),
                        ("GMMS", "PMMS", "MMS"),
                        ("GAPS", "PAPS", "APS"),
                    ):
                        if evaluate(g, inst, a, i, DEFAULT_BUDGETS):
                            assert evaluate(p, inst, a, i, DEFAULT_BUDGETS)
                            assert evaluate(b, inst, a, i, DEFAULT_BUDGETS)

    def test_ef_implies_efx_and_ef1(self):
        setting = Setting(None, None, None, "additive", "general")
        config = GeneratorConfig(seed=41, m_range=(1, 5))
        for inst in generate_instances(setting, config, 25):
            for a in enumerate_allocations(inst.n, inst.m):
                for i in range(inst.n):
                    if check_ef(inst, a, i):
                        assert check_efx(inst, a, i)
                        assert check_ef1(inst, a, i)
                    if check_efx(inst, a, i):  # additive: EFX => EF1
                        assert check_ef1(inst, a, i)
