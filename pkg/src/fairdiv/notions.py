"""Exact evaluators for all fairness notions and share values.

Every predicate is a pure function of (instance, allocation, agent) computed
with `fractions.Fraction`.  Weighted comparisons divide bundle values by
entitlements; approximate notions use the strict-inequality forms throughout.
Enumerations (subset conditions, allocation spaces, partition spaces) are
exhaustive and bounded by an explicit `Budgets` configuration — exceeding a
budget raises, it never silently approximates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .model import (
    Allocation,
    Instance,
    ItemSet,
    Restricted,
    ValuationFunction,
)

NOTIONS = (
    "EF",
    "EF1",
    "EFX",
    "EEF",
    "EEF1",
    "EEFX",
    "MEFS",
    "M1S",
    "MXS",
    "PROP",
    "PROP1",
    "PROPX",
    "PROPM",
    "PROPAVG",
    "MMS",
    "APS",
    "PPROP",
    "PMMS",
    "PAPS",
    "GPROP",
    "GMMS",
    "GAPS",
)

AUX_NOTIONS = ("EFX0", "PESS_SHARE")

EPISTEMIC_BASE = {"EEF": "EF", "EEF1": "EF1", "EEFX": "EFX"}
MIN_SHARE_BASE = {"MEFS": "EF", "M1S": "EF1", "MXS": "EFX"}
PAIRWISE_BASE = {"PPROP": "PROP", "PMMS": "MMS", "PAPS": "APS"}
GROUPWISE_BASE = {"GPROP": "PROP", "GMMS": "MMS", "GAPS": "APS"}


@dataclass(frozen=True)
class Budgets:
    """Hard limits on exhaustive enumeration; exceeding one is an error."""

    bundle_items: int = 20  # subset enumeration inside EFX/PROPx/PROPm
    allocation_leaves: int = 10_000_000  # n^m / d^m style enumerations
    aps_items: int = 15  # price-share LP handles up to 2^aps_items columns


DEFAULT_BUDGETS = Budgets()


class BudgetExceeded(Exception):
    pass


class NoFairAllocation(Exception):
    """A minimum-share filter matched no allocation (empty feasible set)."""


def _subsets(items: ItemSet, include_empty: bool = True):
    ordered = sorted(items)
    start = 0 if include_empty else 1
    for r in range(start, len(ordered) + 1):
        for combo in combinations(ordered, r):
            yield frozenset(combo)


def _check_bundle(bundle: ItemSet, budgets: Budgets, what: str) -> None:
    if len(bundle) > budgets.bundle_items:
        raise BudgetExceeded(
            f"{what} needs subset enumeration over {len(bundle)} items "
            f"(budget {budgets.bundle_items})"
        )


def enumerate_allocations(n: int, m: int):
    """All n^m labeled allocations of items 0..m-1, in lexicographic order."""
    bundles: list[list[int]] = [[] for _ in range(n)]

    def rec(t: int):
        if t == m:
            yield tuple(frozenset(b) for b in bundles)
            return
        for j in range(n):
            bundles[j].append(t)
            yield from rec(t + 1)
            bundles[j].pop()

    yield from rec(0)


# ---------------------------------------------------------------------------
# Envy-based notions.


def check_ef(inst: Instance, alloc: Allocation, i: int) -> bool:
    vi = inst.valuations[i]
    w = inst.entitlements
    mine = vi.value(alloc[i]) / w[i]
    return all(
        mine >= vi.value(alloc[j]) / w[j] for j in range(inst.n) if j != i
    )


def check_ef1(inst: Instance, alloc: Allocation, i: int) -> bool:
    vi = inst.valuations[i]
    w = inst.entitlements
    mine = vi.value(alloc[i]) / w[i]
    for j in range(inst.n):
        if j == i:
            continue
        theirs = vi.value(alloc[j]) / w[j]
        if mine >= theirs:
            continue
        if any(
            mine >= vi.value(alloc[j] - {g}) / w[j] for g in alloc[j]
        ):
            continue
        if any(
            vi.value(alloc[i] - {c}) / w[i] >= theirs for c in alloc[i]
        ):
            continue
        return False
    return True


def check_efx(
    inst: Instance,
    alloc: Allocation,
    i: int,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> bool:
    vi = inst.valuations[i]
    w = inst.entitlements
    mine_raw = vi.value(alloc[i])
    mine = mine_raw / w[i]
    # Removal condition on the own bundle: dropping any subset whose marginal
    # contribution is negative must leave a bundle at least as good (weighted)
    # as the envied one.  It depends on j only through the envied value, so
    # precompute the worst surviving own value.
    own_floor: Fraction | None = None
    own_checked = False
    for j in range(inst.n):
        if j == i:
            continue
        theirs_raw = vi.value(alloc[j])
        theirs = theirs_raw / w[j]
        if mine >= theirs:
            continue
        _check_bundle(alloc[j], budgets, "EFX")
        for s in _subsets(alloc[j], include_empty=False):
            if vi.marginal(s, alloc[i]) > 0:
                if mine < vi.value(alloc[j] - s) / w[j]:
                    return False
        if not own_checked:
            own_checked = True
            _check_bundle(alloc[i], budgets, "EFX")
            for s in _subsets(alloc[i], include_empty=False):
                rest = vi.value(alloc[i] - s)
                if mine_raw - rest < 0:  # v_i(S | A_i \ S) < 0
                    cand = rest / w[i]
                    if own_floor is None or cand < own_floor:
                        own_floor = cand
        if own_floor is not None and own_floor < theirs:
            return False
    return True


def check_efx_fast(inst: Instance, alloc: Allocation, i: int) -> bool:
    """Single-item form of the EFX conditions.

    Coincides with `check_efx` when all marginals are positive, when all are
    negative, or for submodular valuations over pure goods or pure chores;
    callers must ensure one of those holds.
    """
    vi = inst.valuations[i]
    w = inst.entitlements
    mine_raw = vi.value(alloc[i])
    mine = mine_raw / w[i]
    for j in range(inst.n):
        if j == i:
            continue
        theirs = vi.value(alloc[j]) / w[j]
        if mine >= theirs:
            continue
        for g in alloc[j]:
            if vi.marginal(frozenset({g}), alloc[i]) > 0:
                if mine < vi.value(alloc[j] - {g}) / w[j]:
                    return False
        for c in alloc[i]:
            rest = vi.value(alloc[i] - {c})
            if mine_raw - rest < 0 and rest / w[i] < theirs:
                return False
    return True


def check_efx0(
    inst: Instance,
    alloc: Allocation,
    i: int,
    mode: str | None = None,
) -> bool:
    """EFX with no positivity filter; defined for pure goods or pure chores."""
    vi = inst.valuations[i]
    w = inst.entitlements
    if mode is None:
        mode = _manna_mode(inst)
    if mode not in ("goods", "chores"):
        raise ValueError(f"EFX0 requires goods or chores, got {mode!r}")
    mine = vi.value(alloc[i]) / w[i]
    for j in range(inst.n):
        if j == i:
            continue
        theirs = vi.value(alloc[j]) / w[j]
        if mine >= theirs:
            continue
        if mode == "goods":
            # Envy with an empty A_j is impossible for goods, so the
            # all-removals condition is never vacuous here.
            if all(mine >= vi.value(alloc[j] - {g}) / w[j] for g in alloc[j]):
                continue
        else:
            if all(
                vi.value(alloc[i] - {c}) / w[i] >= theirs for c in alloc[i]
            ):
                continue
        return False
    return True


def _manna_mode(inst: Instance) -> str:
    from .classify import marginal_values  # local import to avoid a cycle

    values: set[Fraction] = set()
    for v in inst.valuations:
        if v.m > 16:
            raise BudgetExceeded(
                "cannot detect goods/chores by enumeration beyond 16 items; "
                "pass mode explicitly"
            )
        values |= marginal_values(v)
    if all(x >= 0 for x in values):
        return "goods"
    if all(x <= 0 for x in values):
        return "chores"
    return "mixed"


# ---------------------------------------------------------------------------
# Proportionality-based notions.


def proportional_share(inst: Instance, i: int) -> Fraction:
    return inst.entitlements[i] * inst.valuations[i].value(inst.all_items())


def check_prop(inst: Instance, alloc: Allocation, i: int) -> bool:
    return inst.valuations[i].value(alloc[i]) >= proportional_share(inst, i)


def check_prop1(inst: Instance, alloc: Allocation, i: int) -> bool:
    vi = inst.valuations[i]
    share = proportional_share(inst, i)
    mine = vi.value(alloc[i])
    if mine >= share:
        return True
    outside = inst.all_items() - alloc[i]
    if any(vi.value(alloc[i] | {g}) > share for g in outside):
        return True
    return any(vi.value(alloc[i] - {c}) > share for c in alloc[i])


def check_propx(
    inst: Instance,
    alloc: Allocation,
    i: int,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> bool:
    vi = inst.valuations[i]
    share = proportional_share(inst, i)
    mine = vi.value(alloc[i])
    if mine >= share:
        return True
    outside = inst.all_items() - alloc[i]
    _check_bundle(outside, budgets, "PROPx")
    _check_bundle(alloc[i], budgets, "PROPx")
    for s in _subsets(outside, include_empty=False):
        if vi.marginal(s, alloc[i]) > 0 and not vi.value(alloc[i] | s) > share:
            return False
    for s in _subsets(alloc[i], include_empty=False):
        rest = vi.value(alloc[i] - s)
        if mine - rest < 0 and not rest > share:
            return False
    return True


def check_propx_fast(inst: Instance, alloc: Allocation, i: int) -> bool:
    """Single-item form of the PROPx conditions (same license as EFX fast)."""
    vi = inst.valuations[i]
    share = proportional_share(inst, i)
    mine = vi.value(alloc[i])
    if mine >= share:
        return True
    for g in inst.all_items() - alloc[i]:
        gain = vi.value(alloc[i] | {g})
        if gain - mine > 0 and not gain > share:
            return False
    for c in alloc[i]:
        rest = vi.value(alloc[i] - {c})
        if mine - rest < 0 and not rest > share:
            return False
    return True


def check_propm_avg(
    inst: Instance,
    alloc: Allocation,
    i: int,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> tuple[bool, bool]:
    """Returns (PROPm, PROPavg)."""
    vi = inst.valuations[i]
    share = proportional_share(inst, i)
    mine = vi.value(alloc[i])
    if mine >= share:  # C1
        return True, True
    # C2: removing any subset with negative marginal contribution must leave
    # strictly more than the proportional share.
    _check_bundle(alloc[i], budgets, "PROPm")
    c2 = True
    for s in _subsets(alloc[i], include_empty=False):
        rest = vi.value(alloc[i] - s)
        if mine - rest < 0 and not rest > share:
            c2 = False
            break
    if not c2:
        return False, False
    # tau_j: smallest strictly positive marginal of a subset of A_j, or 0.
    taus: list[Fraction] = []
    for j in range(inst.n):
        if j == i:
            continue
        _check_bundle(alloc[j], budgets, "PROPm")
        best: Fraction | None = None
        for s in _subsets(alloc[j], include_empty=False):
            marg = vi.marginal(s, alloc[i])
            if marg > 0 and (best is None or marg < best):
                best = marg
        taus.append(best if best is not None else Fraction(0))
    positive = [t for t in taus if t > 0]
    if not positive:
        return True, True
    propm = mine + max(positive) > share
    propavg = mine + sum(positive, Fraction(0)) / len(positive) > share
    return propm, propavg


# ---------------------------------------------------------------------------
# Share values.


def _cached_share(vi: ValuationFunction, key: tuple, compute) -> Fraction:
    cache = vi._cache  # type: ignore[attr-defined]
    hit = cache.get(key)
    if hit is None:
        hit = cache[key] = compute()
    return hit


def share_wmms(
    inst: Instance, i: int, budgets: Budgets = DEFAULT_BUDGETS
) -> Fraction:
    """w_i times the best-possible worst weighted bundle, over all allocations."""
    vi = inst.valuations[i]
    w = inst.entitlements

    def compute() -> Fraction:
        if inst.n**inst.m > budgets.allocation_leaves:
            raise BudgetExceeded(
                f"WMMS needs {inst.n}^{inst.m} allocations "
                f"(budget {budgets.allocation_leaves})"
            )
        best: Fraction | None = None
        for alloc in enumerate_allocations(inst.n, inst.m):
            worst = min(vi.value(alloc[j]) / w[j] for j in range(inst.n))
            if best is None or worst > best:
                best = worst
        assert best is not None
        return w[i] * best

    return _cached_share(vi, ("wmms", w), compute)


def share_pessshare(
    inst: Instance, i: int, budgets: Budgets = DEFAULT_BUDGETS
) -> Fraction:
    """Best sum of the l smallest of d bundles, over all l/d <= w_i, d <= D_max.

    D_max is max(m, ceil(1/w_i)): beyond m bundles at least d - m are empty,
    and the second term guarantees at least one admissible (l, d) pair.
    """
    vi = inst.valuations[i]
    wi = inst.entitlements[i]

    def compute() -> Fraction:
        m = inst.m
        d_max = max(m, math.ceil(1 / wi))
        total = sum(d**m for d in range(1, d_max + 1))
        if total > budgets.allocation_leaves:
            raise BudgetExceeded(
                f"pessimistic share needs {total} partitions "
                f"(budget {budgets.allocation_leaves})"
            )
        best: Fraction | None = None
        for d in range(1, d_max + 1):
            ells = [ell for ell in range(1, d + 1) if Fraction(ell, d) <= wi]
            if not ells:
                continue
            for part in enumerate_allocations(d, m):
                vals = sorted(vi.value(b) for b in part)
                run = Fraction(0)
                sums = []
                for x in vals:
                    run += x
                    sums.append(run)
                for ell in ells:
                    cand = sums[ell - 1]
                    if best is None or cand > best:
                        best = cand
        assert best is not None  # d = ceil(1/w_i) admits ell = 1
        return best

    return _cached_share(vi, ("pess", wi), compute)


def share_aps(
    inst: Instance, i: int, budgets: Budgets = DEFAULT_BUDGETS
) -> Fraction:
    """Largest z admitting a unit lottery over bundles of value >= z that
    covers every item with probability exactly w_i."""
    vi = inst.valuations[i]
    wi = inst.entitlements[i]

    def compute() -> Fraction:
        from .simplex import feasible_eq

        m = inst.m
        if m > budgets.aps_items:
            raise BudgetExceeded(
                f"price share needs 2^{m} LP columns (budget 2^{budgets.aps_items})"
            )
        values = [
            vi.value(frozenset(j for j in range(m) if mask >> j & 1))
            for mask in range(1 << m)
        ]
        candidates = sorted(set(values))

        def ok(z: Fraction) -> bool:
            cols = []
            for mask, val in enumerate(values):
                if val >= z:
                    cols.append(
                        [Fraction(1)]
                        + [
                            Fraction(1) if mask >> j & 1 else Fraction(0)
                            for j in range(m)
                        ]
                    )
            return feasible_eq(cols, [Fraction(1)] + [wi] * m)

        # The answer is attained at some bundle value; feasibility is
        # monotone decreasing in z, and the smallest candidate is feasible
        # (mix the empty set and the full set).
        lo, hi = 0, len(candidates) - 1
        if not ok(candidates[lo]):
            raise AssertionError("price-share LP infeasible at minimum value")
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if ok(candidates[mid]):
                lo = mid
            else:
                hi = mid - 1
        return candidates[lo]

    return _cached_share(vi, ("aps", wi), compute)


# ---------------------------------------------------------------------------
# Epistemic and minimum-share certificates.


def _base_checker(base: str):
    if base == "EF":
        return lambda inst, alloc, i, budgets: check_ef(inst, alloc, i)
    if base == "EF1":
        return lambda inst, alloc, i, budgets: check_ef1(inst, alloc, i)
    if base == "EFX":
        return check_efx
    raise ValueError(f"no per-agent checker for {base!r}")


def min_share(
    base: str, inst: Instance, i: int, budgets: Budgets = DEFAULT_BUDGETS
) -> Fraction:
    """Minimum own-bundle value over all allocations fair to agent i."""
    checker = _base_checker(base)
    vi = inst.valuations[i]

    def compute() -> Fraction:
        if inst.n**inst.m > budgets.allocation_leaves:
            raise BudgetExceeded(
                f"minimum {base} share needs {inst.n}^{inst.m} allocations "
                f"(budget {budgets.allocation_leaves})"
            )
        best: Fraction | None = None
        for alloc in enumerate_allocations(inst.n, inst.m):
            if checker(inst, alloc, i, budgets):
                val = vi.value(alloc[i])
                if best is None or val < best:
                    best = val
        if best is None:
            raise NoFairAllocation(
                f"no allocation is {base}-fair to agent {i}"
            )
        return best

    return _cached_share(vi, ("minshare", base, inst.entitlements), compute)


def check_epistemic(
    base: str,
    inst: Instance,
    alloc: Allocation,
    i: int,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> bool:
    """True iff some completion of A_i over the other agents is fair to i."""
    checker = _base_checker(base)
    others = [j for j in range(inst.n) if j != i]
    rest = sorted(inst.all_items() - alloc[i])
    if len(others) ** len(rest) > budgets.allocation_leaves:
        raise BudgetExceeded(
            f"epistemic {base} needs {len(others)}^{len(rest)} completions "
            f"(budget {budgets.allocation_leaves})"
        )
    bundles: list[set[int]] = [set() for _ in range(inst.n)]
    bundles[i] = set(alloc[i])

    def rec(t: int) -> bool:
        if t == len(rest):
            b = tuple(frozenset(x) for x in bundles)
            return checker(inst, b, i, budgets)
        g = rest[t]
        for j in others:
            bundles[j].add(g)
            if rec(t + 1):
                bundles[j].discard(g)
                return True
            bundles[j].discard(g)
        return False

    return rec(0)


# ---------------------------------------------------------------------------
# Restriction, pairwise and groupwise notions.


def restrict(
    inst: Instance, alloc: Allocation, agents
) -> tuple[Instance, Allocation]:
    """Sub-instance over the agents in `agents` and the items they hold.

    Entitlements are renormalized to sum to 1; items are re-indexed 0..k-1
    (the mapping is recorded inside the restricted valuations).
    """
    group = sorted(set(agents))
    if len(group) < 2:
        raise ValueError("restriction needs at least 2 agents")
    if any(not 0 <= j < inst.n for j in group):
        raise ValueError("agent index out of range")
    items = tuple(sorted(set().union(*(alloc[j] for j in group))))
    total = sum((inst.entitlements[j] for j in group), Fraction(0))
    index = {g: t for t, g in enumerate(items)}

    def restricted(v: ValuationFunction) -> ValuationFunction:
        cache = v._cache  # type: ignore[attr-defined]
        key = ("restricted", items)
        hit = cache.get(key)
        if hit is None:
            hit = cache[key] = Restricted(v, items)
        return hit

    rinst = Instance(
        entitlements=tuple(inst.entitlements[j] / total for j in group),
        valuations=tuple(restricted(inst.valuations[j]) for j in group),
    )
    ralloc = tuple(
        frozenset(index[g] for g in alloc[j]) for j in group
    )
    return rinst, ralloc


def _check_share_notion(
    base: str,
    inst: Instance,
    alloc: Allocation,
    i: int,
    budgets: Budgets,
) -> bool:
    if base == "PROP":
        return check_prop(inst, alloc, i)
    if base == "MMS":
        return inst.valuations[i].value(alloc[i]) >= share_wmms(
            inst, i, budgets
        )
    if base == "APS":
        return inst.valuations[i].value(alloc[i]) >= share_aps(
            inst, i, budgets
        )
    raise ValueError(f"not a share notion: {base!r}")


def _check_on_groups(
    base: str,
    inst: Instance,
    alloc: Allocation,
    i: int,
    groups,
    budgets: Budgets,
) -> bool:
    for group in groups:
        rinst, ralloc = restrict(inst, alloc, group)
        ri = sorted(group).index(i)
        if not _check_share_notion(base, rinst, ralloc, ri, budgets):
            return False
    return True


def _pairwise_groups(inst: Instance, i: int):
    return ([i, j] for j in range(inst.n) if j != i)


def _groupwise_groups(inst: Instance, i: int):
    others = [j for j in range(inst.n) if j != i]
    for r in range(1, len(others) + 1):
        for combo in combinations(others, r):
            yield [i, *combo]


# ---------------------------------------------------------------------------
# Dispatch.


def evaluate(
    notion: str,
    inst: Instance,
    alloc: Allocation,
    i: int,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> bool:
    if notion == "EF":
        return check_ef(inst, alloc, i)
    if notion == "EF1":
        return check_ef1(inst, alloc, i)
    if notion == "EFX":
        return check_efx(inst, alloc, i, budgets)
    if notion == "EFX0":
        return check_efx0(inst, alloc, i)
    if notion in EPISTEMIC_BASE:
        return check_epistemic(EPISTEMIC_BASE[notion], inst, alloc, i, budgets)
    if notion in MIN_SHARE_BASE:
        try:
            bar = min_share(MIN_SHARE_BASE[notion], inst, i, budgets)
        except NoFairAllocation:
            return False
        return inst.valuations[i].value(alloc[i]) >= bar
    if notion == "PROP":
        return check_prop(inst, alloc, i)
    if notion == "PROP1":
        return check_prop1(inst, alloc, i)
    if notion == "PROPX":
        return check_propx(inst, alloc, i, budgets)
    if notion == "PROPM":
        return check_propm_avg(inst, alloc, i, budgets)[0]
    if notion == "PROPAVG":
        return check_propm_avg(inst, alloc, i, budgets)[1]
    if notion in ("MMS", "APS"):
        return _check_share_notion(notion, inst, alloc, i, budgets)
    if notion == "PESS_SHARE":
        return inst.valuations[i].value(alloc[i]) >= share_pessshare(
            inst, i, budgets
        )
    if notion in PAIRWISE_BASE:
        return _check_on_groups(
            PAIRWISE_BASE[notion], inst, alloc, i, _pairwise_groups(inst, i), budgets
        )
    if notion in GROUPWISE_BASE:
        return _check_on_groups(
            GROUPWISE_BASE[notion],
            inst,
            alloc,
            i,
            _groupwise_groups(inst, i),
            budgets,
        )
    raise ValueError(f"unknown notion {notion!r}")


def allocation_fair(
    notion: str,
    inst: Instance,
    alloc: Allocation,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> bool:
    return all(evaluate(notion, inst, alloc, i, budgets) for i in range(inst.n))
