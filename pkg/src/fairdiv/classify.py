"""Classify instances into the most specific setting provably containing them.

For small item counts (default m <= 12) class membership is decided by
exhaustive comparisons over subsets.  Closed-form valuation variants carry
construction guarantees so large instances remain classifiable without 2^m
work; those guarantees are themselves exercised against the exhaustive tests
in the test suite.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from . import model
from .model import Instance, ItemSet, ValuationFunction
from .settings import DEFAULT_SPACE, Setting, SettingSpace

DEFAULT_CLASSIFY_BOUND = 12


class ClassificationError(Exception):
    pass


def _subsets(items: tuple[int, ...]):
    for r in range(len(items) + 1):
        yield from (frozenset(c) for c in combinations(items, r))


# ---------------------------------------------------------------------------
# Exhaustive valuation-class membership tests (m small).


def is_additive(v: ValuationFunction) -> bool:
    items = tuple(range(v.m))
    singles = [v.value(frozenset({j})) for j in items]
    return all(
        v.value(s) == sum((singles[j] for j in s), Fraction(0))
        for s in _subsets(items)
    )


def is_subadditive(v: ValuationFunction) -> bool:
    return _check_disjoint_pairs(v, lambda u, a, b: u <= a + b)


def is_superadditive(v: ValuationFunction) -> bool:
    return _check_disjoint_pairs(v, lambda u, a, b: u >= a + b)


def _check_disjoint_pairs(v: ValuationFunction, ok) -> bool:
    items = tuple(range(v.m))
    for s in _subsets(items):
        rest = tuple(j for j in items if j not in s)
        for t in _subsets(rest):
            if not ok(v.value(s | t), v.value(s), v.value(t)):
                return False
    return True


def is_submodular(v: ValuationFunction) -> bool:
    # Diminishing marginals: v(g | T) >= v(g | T + h) for all T and g, h not in T.
    return _check_marginal_pairs(v, lambda small, large: small >= large)


def is_supermodular(v: ValuationFunction) -> bool:
    return _check_marginal_pairs(v, lambda small, large: small <= large)


def _check_marginal_pairs(v: ValuationFunction, ok) -> bool:
    items = tuple(range(v.m))
    for t in _subsets(items):
        outside = [j for j in items if j not in t]
        for g, h in combinations(outside, 2):
            gm = frozenset({g})
            if not ok(v.marginal(gm, t), v.marginal(gm, t | {h})):
                return False
            hm = frozenset({h})
            if not ok(v.marginal(hm, t), v.marginal(hm, t | {g})):
                return False
    return True


def is_cancelable(v: ValuationFunction) -> bool:
    # Single-item cancelability implies the set version by induction:
    # v(S1) <= v(S2)  =>  v(S1 + x) <= v(S2 + x), for x outside both.
    items = tuple(range(v.m))
    for x in items:
        rest = tuple(j for j in items if j != x)
        pairs = sorted(
            (v.value(s), v.value(s | {x})) for s in _subsets(rest)
        )
        for (a1, b1), (a2, b2) in zip(pairs, pairs[1:]):
            if b1 > b2:
                return False
            if a1 == a2 and b1 != b2:
                return False
    return True


def is_unit_demand(v: ValuationFunction) -> bool:
    items = tuple(range(v.m))
    singles = [v.value(frozenset({j})) for j in items]
    if any(x < 0 for x in singles):
        return False
    for s in _subsets(items):
        expected = max((singles[j] for j in s), default=Fraction(0))
        if v.value(s) != expected:
            return False
    return True


_EXHAUSTIVE_TESTS = {
    "additive": is_additive,
    "unit_demand": is_unit_demand,
    "submodular": is_submodular,
    "supermodular": is_supermodular,
    "cancelable": is_cancelable,
    "subadditive": is_subadditive,
    "superadditive": is_superadditive,
}

# XOS membership (existence of a covering set of additive functions) is not
# decided here; "xos" is available as a query point but never emitted by
# classification.

_VALUATION_PRIORITY = (
    "additive",
    "unit_demand",
    "submodular",
    "supermodular",
    "cancelable",
    "subadditive",
    "superadditive",
    "general",
)

_MARGINAL_PRIORITY = (
    "all_ones",
    "all_neg_ones",
    "binary",
    "neg_binary",
    "plus_minus_one",
    "pos_bivalued",
    "neg_bivalued",
    "tribool",
    "mixed_bivalued",
    "positive",
    "negative",
    "bivalued",
    "goods",
    "chores",
    "general",
)


def marginal_values(v: ValuationFunction) -> set[Fraction]:
    values: set[Fraction] = set()
    items = tuple(range(v.m))
    for s in _subsets(items):
        for g in items:
            if g not in s:
                values.add(v.marginal(frozenset({g}), s))
    return values


def marginal_class_of(values: set[Fraction]) -> str:
    holds = {name for name, pred in _MARGINAL_TESTS.items() if pred(values)}
    return _pick_minimal(holds, _MARGINAL_PRIORITY, DEFAULT_SPACE.marginal_leq)


_MARGINAL_TESTS = {
    "all_ones": lambda V: V <= {Fraction(1)},
    "all_neg_ones": lambda V: V <= {Fraction(-1)},
    "plus_minus_one": lambda V: V <= {Fraction(-1), Fraction(1)},
    "binary": lambda V: V <= {Fraction(0), Fraction(1)},
    "neg_binary": lambda V: V <= {Fraction(0), Fraction(-1)},
    "tribool": lambda V: V <= {Fraction(-1), Fraction(0), Fraction(1)},
    "pos_bivalued": lambda V: len(V) <= 2 and all(x > 0 for x in V),
    "neg_bivalued": lambda V: len(V) <= 2 and all(x < 0 for x in V),
    "mixed_bivalued": lambda V: len(V) <= 2
    and any(x > 0 for x in V)
    and any(x < 0 for x in V),
    "bivalued": lambda V: len(V) <= 2,
    "positive": lambda V: all(x > 0 for x in V),
    "negative": lambda V: all(x < 0 for x in V),
    "goods": lambda V: all(x >= 0 for x in V),
    "chores": lambda V: all(x <= 0 for x in V),
    "general": lambda V: True,
}


def _pick_minimal(holds: set[str], priority: tuple[str, ...], leq) -> str:
    minimal = [
        c for c in holds if not any(d != c and leq(d, c) for d in holds)
    ]
    for name in priority:
        if name in minimal:
            return name
    raise AssertionError("no minimal class found")


# ---------------------------------------------------------------------------
# Construction guarantees for closed-form variants (any m).


def construction_hints(v: ValuationFunction) -> tuple[set[str], str] | None:
    """Return (valuation classes guaranteed, marginal class) or None."""
    if isinstance(v, model.Additive):
        return {"additive"}, marginal_class_of(set(v.values))
    if isinstance(v, model.UnitDemand):
        return {"unit_demand"}, "goods"
    if isinstance(v, model.CeilDiv):
        return {"subadditive"}, "binary"
    if isinstance(v, model.FloorDiv):
        return {"superadditive"}, "binary"
    if isinstance(v, model.BinPackingPlusEps):
        return {"subadditive"}, "binary" if v.eps == 0 else "pos_bivalued"
    if isinstance(v, model.PartitionRankPlusEps):
        return {"submodular"}, "binary" if v.eps == 0 else "pos_bivalued"
    if isinstance(v, model.CappedCountPlusEps):
        return {"submodular"}, "binary" if v.eps == 0 else "pos_bivalued"
    if isinstance(v, model.Scale):
        inner = construction_hints(v.inner)
        if inner is None:
            return None
        classes, marg = inner
        if v.factor > 0:
            scaled = {
                x * v.factor
                for x in _REPRESENTATIVE_MARGINALS.get(marg, set())
            }
            return classes, marginal_class_of(scaled) if scaled else marg
        if v.factor == 0:
            return {"additive"}, "binary"
        flipped_classes = {_FLIP_VALUATION.get(c, "general") for c in classes}
        flip = _FLIP_MARGINAL.get(marg, "general")
        if v.factor == -1:
            return flipped_classes, flip
        scaled = {
            x * v.factor for x in _REPRESENTATIVE_MARGINALS.get(marg, set())
        }
        return flipped_classes, marginal_class_of(scaled) if scaled else flip
    return None


_REPRESENTATIVE_MARGINALS: dict[str, set[Fraction]] = {
    "all_ones": {Fraction(1)},
    "all_neg_ones": {Fraction(-1)},
    "binary": {Fraction(0), Fraction(1)},
    "neg_binary": {Fraction(0), Fraction(-1)},
    "pos_bivalued": {Fraction(1), Fraction(2)},
    "neg_bivalued": {Fraction(-1), Fraction(-2)},
}

_FLIP_VALUATION = {
    "additive": "additive",
    "submodular": "supermodular",
    "supermodular": "submodular",
    "subadditive": "superadditive",
    "superadditive": "subadditive",
}

_FLIP_MARGINAL = {
    "goods": "chores",
    "chores": "goods",
    "positive": "negative",
    "negative": "positive",
    "binary": "neg_binary",
    "neg_binary": "binary",
    "all_ones": "all_neg_ones",
    "all_neg_ones": "all_ones",
    "pos_bivalued": "neg_bivalued",
    "neg_bivalued": "pos_bivalued",
    "mixed_bivalued": "mixed_bivalued",
    "plus_minus_one": "plus_minus_one",
    "tribool": "tribool",
    "bivalued": "bivalued",
    "general": "general",
}


# ---------------------------------------------------------------------------
# Instance classification.


def _valuations_identical(inst: Instance, exhaustive: bool) -> bool:
    if inst.n <= 1:
        return True
    if exhaustive:
        items = tuple(range(inst.m))
        first = inst.valuations[0]
        return all(
            all(v.value(s) == first.value(s) for s in _subsets(items))
            for v in inst.valuations[1:]
        )
    try:
        blobs = [model.valuation_to_json(v) for v in inst.valuations]
    except ValueError:
        return False
    return all(b == blobs[0] for b in blobs[1:])


def classify_instance(
    inst: Instance,
    bound: int = DEFAULT_CLASSIFY_BOUND,
    space: SettingSpace = DEFAULT_SPACE,
) -> Setting:
    errors = model.validate_instance(inst)
    if errors:
        raise ValueError("; ".join(errors))
    equal = True if len(set(inst.entitlements)) == 1 else None
    two = True if inst.n == 2 else None
    exhaustive = inst.m <= bound
    identical = True if _valuations_identical(inst, exhaustive) else None

    if exhaustive:
        holds = {
            name
            for name, test in _EXHAUSTIVE_TESTS.items()
            if all(test(v) for v in inst.valuations)
        }
        holds.add("general")
        valuation_class = _pick_minimal(
            holds, _VALUATION_PRIORITY, space.valuation_leq
        )
        values: set[Fraction] = set()
        for v in inst.valuations:
            values |= marginal_values(v)
        marginal_class = marginal_class_of(values)
        return Setting(equal, two, identical, valuation_class, marginal_class)

    hints = [construction_hints(v) for v in inst.valuations]
    if any(h is None for h in hints):
        raise ClassificationError(
            f"instance with m={inst.m} exceeds the exhaustive classification "
            f"bound ({bound}) and has a valuation without construction "
            f"guarantees; only closed-form variants are classifiable at this size"
        )
    class_sets = []
    marg_hints = []
    for classes, marg in hints:  # type: ignore[misc]
        closed = set()
        for c in classes:
            closed |= space.valuation_up[c]
        class_sets.append(closed)
        marg_hints.append(marg)
    common = set.intersection(*class_sets)
    valuation_class = _pick_minimal(common, _VALUATION_PRIORITY, space.valuation_leq)
    # Join of the hinted marginal classes: smallest class above all of them.
    candidates = [
        c
        for c in space.marginal_nodes
        if all(space.marginal_leq(h, c) for h in marg_hints)
    ]
    marginal_class = _pick_minimal(
        set(candidates), _MARGINAL_PRIORITY, space.marginal_leq
    )
    return Setting(equal, two, identical, valuation_class, marginal_class)
