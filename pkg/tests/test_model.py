"""Core data model: valuation variants, validation, classification, JSON."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings as hyp_settings, strategies as st

from fairdiv import model
from fairdiv.classify import classify_instance
from fairdiv.settings import Setting

from conftest import additive_instance, alloc, identical_additive


def fs(*items):
    return frozenset(items)


class TestValue:
    def test_additive_subset(self):
        v = model.Additive(tuple(Fraction(x) for x in (3, 3, 2, 2, 2)))
        assert v.value(fs(0, 2)) == 5

    @pytest.mark.parametrize(
        "v",
        [
            model.Additive((Fraction(1), Fraction(-2))),
            model.UnitDemand((Fraction(1), Fraction(2))),
            model.CeilDiv(5, 2),
            model.FloorDiv(5, 2),
            model.CappedCountPlusEps(4, 2, Fraction(1, 4)),
            model.PartitionRankPlusEps(3, ((0, 1), (2,)), Fraction(0)),
            model.BinPackingPlusEps((Fraction(1, 2), Fraction(3, 4)), Fraction(0)),
            model.Scale(Fraction(-1), model.Additive((Fraction(2),))),
        ],
    )
    def test_empty_set_is_zero(self, v):
        assert v.value(fs()) == 0

    def test_ceil_div(self):
        v = model.CeilDiv(9, 4)
        assert v.value(frozenset(range(9))) == 3
        assert v.value(frozenset(range(4))) == 1
        assert v.value(frozenset(range(5))) == 2

    def test_unit_demand_is_max(self):
        v = model.UnitDemand((Fraction(1), Fraction(5), Fraction(3)))
        assert v.value(fs(0, 2)) == 3
        assert v.value(fs(0, 1, 2)) == 5

    def test_bin_packing_minimum_bins(self):
        half = Fraction(1, 2)
        v = model.BinPackingPlusEps((half, half, half, Fraction(3, 4)), Fraction(0))
        assert v.value(fs(0, 1)) == 1
        assert v.value(fs(0, 1, 2)) == 2
        assert v.value(fs(0, 1, 2, 3)) == 3


class TestMarginal:
    def test_additive(self):
        v = model.Additive(tuple(Fraction(x) for x in (3, 3, 2, 2, 2)))
        assert v.marginal(fs(1), fs(0)) == 3

    def test_partition_rank_same_block(self):
        v = model.PartitionRankPlusEps(2, ((0, 1),), Fraction(0))
        assert v.marginal(fs(1), fs(0)) == 0

    def test_capped_count_at_cap(self):
        v = model.CappedCountPlusEps(7, 6, Fraction(0))
        assert v.marginal(fs(6), frozenset(range(6))) == 0

    def test_overlap_rejected(self):
        v = model.Additive((Fraction(1), Fraction(1)))
        with pytest.raises(ValueError):
            v.marginal(fs(0), fs(0, 1))

    @given(
        entries=st.lists(
            st.integers(min_value=-4, max_value=4), min_size=7, max_size=7
        ),
        g=st.integers(min_value=0, max_value=2),
        base_mask=st.integers(min_value=0, max_value=7),
    )
    @hyp_settings(max_examples=100, deadline=None)
    def test_marginal_consistent_with_value(self, entries, g, base_mask):
        v = model.Table(3, tuple(Fraction(x) for x in [0] + entries))
        base = model.items_of(base_mask) - {g}
        assert v.marginal(fs(g), base) == v.value(base | {g}) - v.value(base)


class TestValidate:
    def test_valid_instance(self):
        inst = identical_additive((1, 2), 2)
        assert model.validate_instance(inst) == []

    def test_entitlement_sum(self):
        inst = additive_instance(
            [[1], [1]], entitlements=[Fraction(1, 2), Fraction(1, 3)]
        )
        errors = model.validate_instance(inst)
        assert any("sum" in e for e in errors)

    def test_nonpositive_entitlement(self):
        inst = additive_instance(
            [[1], [1]], entitlements=[Fraction(3, 2), Fraction(-1, 2)]
        )
        assert model.validate_instance(inst)

    def test_table_size_checked(self):
        with pytest.raises(ValueError, match="table size"):
            model.Table(2, (Fraction(0), Fraction(1), Fraction(1)))

    def test_allocation_must_partition(self):
        inst = identical_additive((1, 1), 2)
        assert model.validate_allocation(inst, alloc([0], [1])) == []
        assert model.validate_allocation(inst, alloc([0], []))  # missing item
        assert model.validate_allocation(inst, alloc([0, 1], [1]))  # overlap


class TestClassify:
    def test_pos_bivalued_additive(self):
        inst = identical_additive((3, 3, 2, 2, 2), 2)
        assert classify_instance(inst) == Setting(
            equal_entitlements=True,
            two_agents=True,
            identical_valuations=True,
            valuation_class="additive",
            marginal_class="pos_bivalued",
        )

    def test_single_unit_good(self):
        inst = identical_additive((1,), 2)
        assert classify_instance(inst).marginal_class == "all_ones"

    def test_partition_rank_is_submodular(self):
        v = model.PartitionRankPlusEps(4, ((0, 1), (2, 3)), Fraction(0))
        inst = model.Instance((Fraction(1, 2), Fraction(1, 2)), (v, v))
        assert classify_instance(inst).valuation_class == "submodular"

    def test_floor_div_is_superadditive(self):
        # floor(|S|/2) has alternating 0/1 marginals: superadditive but not
        # supermodular.
        v = model.FloorDiv(4, 2)
        inst = model.Instance((Fraction(1, 2), Fraction(1, 2)), (v, v))
        assert classify_instance(inst).valuation_class == "superadditive"

    def test_unit_demand(self):
        v = model.UnitDemand((Fraction(2), Fraction(3)))
        inst = model.Instance((Fraction(1, 2), Fraction(1, 2)), (v, v))
        assert classify_instance(inst).valuation_class == "unit_demand"

    def test_unequal_and_non_identical(self):
        inst = additive_instance(
            [[1, 2], [2, 1]], entitlements=[Fraction(2, 3), Fraction(1, 3)]
        )
        s = classify_instance(inst)
        assert s.equal_entitlements is None
        assert s.identical_valuations is None


class TestAdditivity:
    @given(
        values=st.lists(
            st.integers(min_value=-5, max_value=5), min_size=1, max_size=6
        ),
        mask=st.integers(min_value=0),
    )
    @hyp_settings(max_examples=100, deadline=None)
    def test_additive_value_is_item_sum(self, values, mask):
        v = model.Additive(tuple(Fraction(x) for x in values))
        items = model.items_of(mask % (1 << len(values)))
        assert v.value(items) == sum(v.value(fs(j)) for j in items)


class TestBinPackingMarginals:
    def test_marginals_are_eps_or_one_plus_eps(self):
        eps = Fraction(1, 8)
        sizes = (Fraction(2, 5), Fraction(2, 5), Fraction(3, 5), Fraction(1))
        v = model.BinPackingPlusEps(sizes, eps)
        for mask in range(1 << v.m):
            base = model.items_of(mask)
            for g in range(v.m):
                if g in base:
                    continue
                assert v.marginal(fs(g), base) in (eps, 1 + eps)


class TestJson:
    @pytest.mark.parametrize(
        "v",
        [
            model.Additive((Fraction(3), Fraction(-1, 2))),
            model.UnitDemand((Fraction(1), Fraction(2))),
            model.Table(2, (Fraction(0), Fraction(1), Fraction(1), Fraction(3))),
            model.PartitionRankPlusEps(3, ((0, 2), (1,)), Fraction(1, 4)),
            model.CeilDiv(4, 2),
            model.FloorDiv(4, 3),
            model.BinPackingPlusEps((Fraction(1, 2), Fraction(1)), Fraction(0)),
            model.CappedCountPlusEps(5, 3, Fraction(1, 8)),
            model.Scale(Fraction(-1), model.CeilDiv(4, 2)),
        ],
    )
    def test_valuation_round_trip(self, v):
        data = model.valuation_to_json(v)
        back = model.valuation_from_json(data, v.m)
        for mask in range(1 << min(v.m, 6)):
            items = model.items_of(mask)
            assert back.value(items) == v.value(items)

    def test_instance_round_trip(self):
        inst = additive_instance(
            [[1, -2], [3, 4]], entitlements=[Fraction(2, 3), Fraction(1, 3)]
        )
        back = model.instance_from_json(model.instance_to_json(inst))
        assert back.entitlements == inst.entitlements
        assert back.valuations[0].value(fs(0, 1)) == -1

    def test_allocation_round_trip(self):
        a = alloc([0, 2], [1])
        assert model.allocation_from_json(model.allocation_to_json(a)) == a
