"""Exact-rational data model: instances, valuation functions, allocations.

All set-function values are computed with `fractions.Fraction`; floating point
is never used, since strict-vs-weak inequality comparisons decide fairness.
Items and agents are 0-indexed everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .rational import format_rational, parse_rational

ItemSet = frozenset[int]

EMPTY: ItemSet = frozenset()


def mask_of(items: Iterable[int]) -> int:
    mask = 0
    for j in items:
        mask |= 1 << j
    return mask


def items_of(mask: int) -> ItemSet:
    out = []
    j = 0
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return frozenset(out)


class ValuationFunction:
    """Base class for set functions v: 2^[m] -> Q with v(empty) = 0.

    Subclasses implement `raw_value`; `value` adds a per-subset cache so
    evaluators can treat lookups as O(1).
    """

    m: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "_cache", {})

    def raw_value(self, items: ItemSet) -> Fraction:
        raise NotImplementedError

    def value(self, items: ItemSet) -> Fraction:
        mask = mask_of(items)
        cache = self._cache  # type: ignore[attr-defined]
        hit = cache.get(mask)
        if hit is None:
            hit = cache[mask] = self.raw_value(items)
        return hit

    def marginal(self, items: ItemSet, base: ItemSet) -> Fraction:
        """v(items | base) = v(items ∪ base) - v(base); items and base disjoint."""
        if items & base:
            raise ValueError(f"marginal sets overlap: {sorted(items & base)}")
        return self.value(items | base) - self.value(base)


@dataclass(frozen=True, eq=False)
class Additive(ValuationFunction):
    values: tuple[Fraction, ...]

    @property
    def m(self) -> int:
        return len(self.values)

    def raw_value(self, items: ItemSet) -> Fraction:
        return sum((self.values[j] for j in items), Fraction(0))


@dataclass(frozen=True, eq=False)
class UnitDemand(ValuationFunction):
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        super().__post_init__()
        if any(v < 0 for v in self.values):
            raise ValueError("unit-demand item values must be non-negative")

    @property
    def m(self) -> int:
        return len(self.values)

    def raw_value(self, items: ItemSet) -> Fraction:
        if not items:
            return Fraction(0)
        return max(self.values[j] for j in items)


@dataclass(frozen=True, eq=False)
class Table(ValuationFunction):
    """Explicit set function: entry k is the value of the subset with bitmask k."""

    m: int
    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        super().__post_init__()
        if len(self.entries) != 1 << self.m:
            raise ValueError(
                f"table size {len(self.entries)} != 2^{self.m}"
            )
        if self.entries[0] != 0:
            raise ValueError("table entry for the empty set must be 0")

    def raw_value(self, items: ItemSet) -> Fraction:
        return self.entries[mask_of(items)]

    def value(self, items: ItemSet) -> Fraction:
        return self.entries[mask_of(items)]


@dataclass(frozen=True, eq=False)
class PartitionRankPlusEps(ValuationFunction):
    """v(X) = #{blocks P_i : X ∩ P_i nonempty} + |X|·eps over a partition of [m]."""

    m: int
    partition: tuple[tuple[int, ...], ...]
    eps: Fraction

    def __post_init__(self) -> None:
        super().__post_init__()
        seen: set[int] = set()
        for block in self.partition:
            for j in block:
                if j in seen:
                    raise ValueError(f"item {j} appears in two partition blocks")
                seen.add(j)
        if seen != set(range(self.m)):
            raise ValueError("partition blocks must cover the items exactly")
        if self.eps < 0:
            raise ValueError("eps must be non-negative")

    def raw_value(self, items: ItemSet) -> Fraction:
        rank = sum(1 for block in self.partition if items & frozenset(block))
        return rank + len(items) * self.eps


@dataclass(frozen=True, eq=False)
class CeilDiv(ValuationFunction):
    """v(S) = ceil(|S| / k)."""

    m: int
    k: int

    def __post_init__(self) -> None:
        super().__post_init__()
        if self.k < 1:
            raise ValueError("k must be >= 1")

    def raw_value(self, items: ItemSet) -> Fraction:
        return Fraction(-(-len(items) // self.k))


@dataclass(frozen=True, eq=False)
class FloorDiv(ValuationFunction):
    """v(S) = floor(|S| / k)."""

    m: int
    k: int

    def __post_init__(self) -> None:
        super().__post_init__()
        if self.k < 1:
            raise ValueError("k must be >= 1")

    def raw_value(self, items: ItemSet) -> Fraction:
        return Fraction(len(items) // self.k)


@dataclass(frozen=True, eq=False)
class BinPackingPlusEps(ValuationFunction):
    """v(S) = minimum number of unit-capacity bins packing S, plus |S|·eps."""

    sizes: tuple[Fraction, ...]
    eps: Fraction

    def __post_init__(self) -> None:
        super().__post_init__()
        if any(not (0 < s <= 1) for s in self.sizes):
            raise ValueError("item sizes must lie in (0, 1]")
        if self.eps < 0:
            raise ValueError("eps must be non-negative")

    @property
    def m(self) -> int:
        return len(self.sizes)

    def raw_value(self, items: ItemSet) -> Fraction:
        return Fraction(self._opt_bins(mask_of(items))) + len(items) * self.eps

    def _opt_bins(self, mask: int) -> int:
        cache = self._cache  # type: ignore[attr-defined]
        key = ("bins", mask)
        hit = cache.get(key)
        if hit is not None:
            return hit
        if mask == 0:
            result = 0
        else:
            low = mask & -mask
            rest = mask ^ low
            best = None
            # The bin holding the lowest item ranges over feasible subsets.
            sub = rest
            while True:
                bin_mask = sub | low
                total = sum(
                    self.sizes[j] for j in range(self.m) if bin_mask >> j & 1
                )
                if total <= 1:
                    cand = 1 + self._opt_bins(mask ^ bin_mask)
                    if best is None or cand < best:
                        best = cand
                if sub == 0:
                    break
                sub = (sub - 1) & rest
            assert best is not None  # singleton bin is always feasible
            result = best
        cache[key] = result
        return result


@dataclass(frozen=True, eq=False)
class CappedCountPlusEps(ValuationFunction):
    """v(S) = min(cap, |S|) + |S|·eps."""

    m: int
    cap: int
    eps: Fraction

    def __post_init__(self) -> None:
        super().__post_init__()
        if self.cap < 0:
            raise ValueError("cap must be non-negative")
        if self.eps < 0:
            raise ValueError("eps must be non-negative")

    def raw_value(self, items: ItemSet) -> Fraction:
        return min(self.cap, len(items)) + len(items) * self.eps


@dataclass(frozen=True, eq=False)
class Scale(ValuationFunction):
    """v(S) = factor · inner(S); factor -1 turns goods into chores."""

    factor: Fraction
    inner: ValuationFunction

    @property
    def m(self) -> int:
        return self.inner.m

    def raw_value(self, items: ItemSet) -> Fraction:
        return self.factor * self.inner.value(items)


@dataclass(frozen=True, eq=False)
class Restricted(ValuationFunction):
    """A valuation over a subset of items, re-indexed 0..k-1 (in-process only)."""

    inner: ValuationFunction
    items: tuple[int, ...]  # new index -> original item

    @property
    def m(self) -> int:
        return len(self.items)

    def raw_value(self, items: ItemSet) -> Fraction:
        return self.inner.value(frozenset(self.items[j] for j in items))


@dataclass(frozen=True)
class Instance:
    entitlements: tuple[Fraction, ...]
    valuations: tuple[ValuationFunction, ...]

    @property
    def n(self) -> int:
        return len(self.entitlements)

    @property
    def m(self) -> int:
        return self.valuations[0].m if self.valuations else 0

    def all_items(self) -> ItemSet:
        return frozenset(range(self.m))


Allocation = tuple[ItemSet, ...]


def make_allocation(bundles: Iterable[Iterable[int]]) -> Allocation:
    return tuple(frozenset(b) for b in bundles)


def validate_instance(inst: Instance) -> list[str]:
    errors: list[str] = []
    if inst.n < 2:
        errors.append(f"agent count {inst.n} < 2")
    for i, w in enumerate(inst.entitlements):
        if w <= 0:
            errors.append(f"entitlement of agent {i} is {format_rational(w)} <= 0")
    total = sum(inst.entitlements, Fraction(0))
    if total != 1:
        errors.append(f"entitlements sum {format_rational(total)} != 1")
    if len(inst.valuations) != inst.n:
        errors.append(
            f"{len(inst.valuations)} valuations for {inst.n} agents"
        )
    for i, v in enumerate(inst.valuations):
        if v.m != inst.m:
            errors.append(f"valuation of agent {i} covers {v.m} items, expected {inst.m}")
        if v.value(EMPTY) != 0:
            errors.append(f"valuation of agent {i} has v(empty) != 0")
    return errors


def validate_allocation(inst: Instance, alloc: Allocation) -> list[str]:
    errors: list[str] = []
    if len(alloc) != inst.n:
        errors.append(f"{len(alloc)} bundles for {inst.n} agents")
        return errors
    seen: set[int] = set()
    for i, bundle in enumerate(alloc):
        overlap = seen & bundle
        if overlap:
            errors.append(f"items {sorted(overlap)} assigned twice (bundle {i})")
        seen |= bundle
        bad = [j for j in bundle if not 0 <= j < inst.m]
        if bad:
            errors.append(f"bundle {i} has out-of-range items {bad}")
    missing = set(range(inst.m)) - seen
    if missing:
        errors.append(f"items {sorted(missing)} unallocated")
    return errors


# ---------------------------------------------------------------------------
# JSON interchange


def valuation_to_json(v: ValuationFunction) -> dict:
    if isinstance(v, Additive):
        return {"type": "additive", "values": [format_rational(x) for x in v.values]}
    if isinstance(v, UnitDemand):
        return {"type": "unit_demand", "values": [format_rational(x) for x in v.values]}
    if isinstance(v, Table):
        return {
            "type": "table",
            "m": v.m,
            "values": [format_rational(x) for x in v.entries],
        }
    if isinstance(v, PartitionRankPlusEps):
        return {
            "type": "partition_rank",
            "m": v.m,
            "partition": [list(block) for block in v.partition],
            "eps": format_rational(v.eps),
        }
    if isinstance(v, CeilDiv):
        return {"type": "ceil_div", "m": v.m, "k": v.k}
    if isinstance(v, FloorDiv):
        return {"type": "floor_div", "m": v.m, "k": v.k}
    if isinstance(v, BinPackingPlusEps):
        return {
            "type": "bin_packing",
            "sizes": [format_rational(s) for s in v.sizes],
            "eps": format_rational(v.eps),
        }
    if isinstance(v, CappedCountPlusEps):
        return {
            "type": "capped_count",
            "m": v.m,
            "cap": v.cap,
            "eps": format_rational(v.eps),
        }
    if isinstance(v, Scale):
        return {
            "type": "scale",
            "factor": format_rational(v.factor),
            "inner": valuation_to_json(v.inner),
        }
    raise ValueError(f"valuation {type(v).__name__} has no JSON form")


def valuation_from_json(data: dict, m: int) -> ValuationFunction:
    kind = data.get("type")
    if kind == "additive":
        return Additive(tuple(parse_rational(x) for x in data["values"]))
    if kind == "unit_demand":
        return UnitDemand(tuple(parse_rational(x) for x in data["values"]))
    if kind == "table":
        return Table(m, tuple(parse_rational(x) for x in data["values"]))
    if kind == "partition_rank":
        return PartitionRankPlusEps(
            m,
            tuple(tuple(block) for block in data["partition"]),
            parse_rational(data["eps"]),
        )
    if kind == "ceil_div":
        return CeilDiv(m, int(data["k"]))
    if kind == "floor_div":
        return FloorDiv(m, int(data["k"]))
    if kind == "bin_packing":
        return BinPackingPlusEps(
            tuple(parse_rational(s) for s in data["sizes"]),
            parse_rational(data["eps"]),
        )
    if kind == "capped_count":
        return CappedCountPlusEps(m, int(data["cap"]), parse_rational(data["eps"]))
    if kind == "scale":
        return Scale(parse_rational(data["factor"]), valuation_from_json(data["inner"], m))
    raise ValueError(f"unknown valuation type {kind!r}")


def instance_to_json(inst: Instance) -> dict:
    return {
        "n": inst.n,
        "m": inst.m,
        "entitlements": [format_rational(w) for w in inst.entitlements],
        "valuations": [valuation_to_json(v) for v in inst.valuations],
    }


def instance_from_json(data: dict) -> Instance:
    m = int(data["m"])
    inst = Instance(
        entitlements=tuple(parse_rational(w) for w in data["entitlements"]),
        valuations=tuple(valuation_from_json(v, m) for v in data["valuations"]),
    )
    if int(data["n"]) != inst.n:
        raise ValueError(f"declared n={data['n']} but {inst.n} entitlements given")
    errors = validate_instance(inst)
    if errors:
        raise ValueError("; ".join(errors))
    return inst


def allocation_to_json(alloc: Allocation) -> list[list[int]]:
    return [sorted(bundle) for bundle in alloc]


def allocation_from_json(data: list[list[int]]) -> Allocation:
    return make_allocation(data)
