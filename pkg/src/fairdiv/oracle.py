"""Brute-force ground truth: enumeration, witness verification, falsification.

Everything here is exhaustive and exact; it exists to audit both the notion
evaluators and the knowledge base, not to be fast.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import model
from .classify import classify_instance
from .model import Allocation, Instance, ItemSet, ValuationFunction
from .notions import (
    Budgets,
    BudgetExceeded,
    DEFAULT_BUDGETS,
    enumerate_allocations,
    evaluate,
)
from .settings import DEFAULT_SPACE, Setting


@dataclass(frozen=True)
class Witness:
    instance: Instance
    allocation: Allocation
    violating_agent: int

    def to_json(self) -> dict:
        return {
            "instance": model.instance_to_json(self.instance),
            "allocation": model.allocation_to_json(self.allocation),
            "violating_agent": self.violating_agent,
        }

    @staticmethod
    def from_json(data: dict) -> "Witness":
        return Witness(
            instance=model.instance_from_json(data["instance"]),
            allocation=model.allocation_from_json(data["allocation"]),
            violating_agent=int(data["violating_agent"]),
        )


@dataclass(frozen=True)
class VerificationResult:
    ok: bool
    diagnostics: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def verify_witness(fact, budgets: Budgets = DEFAULT_BUDGETS) -> VerificationResult:
    """Check that a non-implication fact's witness proves what it claims.

    `fact` needs fields f1, f2, setting, witness.  Passes iff f1 holds for
    every agent, f2 fails for the recorded violating agent, and the witness
    classifies at or below the fact's setting.
    """
    w: Witness = fact.witness
    problems: list[str] = []
    errs = model.validate_instance(w.instance)
    errs += model.validate_allocation(w.instance, w.allocation)
    if errs:
        return VerificationResult(False, tuple(errs))
    for i in range(w.instance.n):
        if not evaluate(fact.f1, w.instance, w.allocation, i, budgets):
            problems.append(f"{fact.f1} fails for agent {i}")
    if evaluate(fact.f2, w.instance, w.allocation, w.violating_agent, budgets):
        problems.append(
            f"{fact.f2} holds for claimed violating agent {w.violating_agent}"
        )
    observed = classify_instance(w.instance)
    if not DEFAULT_SPACE.setting_leq(observed, fact.setting):
        problems.append(
            f"witness classifies as {observed}, not below fact setting {fact.setting}"
        )
    return VerificationResult(not problems, tuple(problems))


# ---------------------------------------------------------------------------
# Leximin partitions and Pareto optimality.


def leximin_partition(
    v: ValuationFunction, n: int, m: int, budgets: Budgets = DEFAULT_BUDGETS
) -> Allocation:
    """The n-partition maximizing the sorted value vector lexicographically."""
    if n**m > budgets.allocation_leaves:
        raise BudgetExceeded(f"leximin needs {n}^{m} partitions")
    best: Allocation | None = None
    best_key: tuple | None = None
    for part in enumerate_allocations(n, m):
        key = tuple(sorted(v.value(b) for b in part))
        if best_key is None or key > best_key:
            best, best_key = part, key
    assert best is not None
    return best


def is_pareto_optimal(
    inst: Instance, alloc: Allocation, budgets: Budgets = DEFAULT_BUDGETS
) -> bool:
    if inst.n**inst.m > budgets.allocation_leaves:
        raise BudgetExceeded(f"Pareto check needs {inst.n}^{inst.m} allocations")
    utils = [inst.valuations[i].value(alloc[i]) for i in range(inst.n)]
    for other in enumerate_allocations(inst.n, inst.m):
        dominated = True
        strict = False
        for i in range(inst.n):
            u = inst.valuations[i].value(other[i])
            if u < utils[i]:
                dominated = False
                break
            if u > utils[i]:
                strict = True
        if dominated and strict:
            return False
    return True


# ---------------------------------------------------------------------------
# Zero-marginal improvement walk (doubly monotone valuations).


def doubly_monotone_split(
    v: ValuationFunction,
) -> tuple[ItemSet, ItemSet] | None:
    """Split items into goods/chores if v is doubly monotone, else None.

    Item g is a good when its marginal is >= 0 against every base set, a
    chore when <= 0 against every base set; items with marginal identically 0
    count as goods.
    """
    goods: set[int] = set()
    chores: set[int] = set()
    items = tuple(range(v.m))
    from itertools import combinations

    for g in items:
        rest = tuple(j for j in items if j != g)
        signs = set()
        gm = frozenset({g})
        for r in range(len(rest) + 1):
            for base in combinations(rest, r):
                marg = v.marginal(gm, frozenset(base))
                signs.add(0 if marg == 0 else (1 if marg > 0 else -1))
        if signs <= {0, 1}:
            goods.add(g)
        elif signs <= {0, -1}:
            chores.add(g)
        else:
            return None
    return frozenset(goods), frozenset(chores)


def improve_certificate(
    inst: Instance, alloc: Allocation, i: int
) -> Allocation:
    """Move zero-marginal goods into agent i's bundle and zero-marginal
    chores out, lowest item index first, until neither rule applies.

    Requires v_i to be doubly monotone; preserves v_i(Z_i) exactly.
    """
    vi = inst.valuations[i]
    split = doubly_monotone_split(vi)
    if split is None:
        raise ValueError("valuation of the improving agent is not doubly monotone")
    goods, chores = split
    bundles = [set(b) for b in alloc]
    for _ in range(inst.m + 1):
        moved = False
        # Zero-marginal good held by someone else: take it.
        candidates = sorted(
            g
            for j in range(inst.n)
            if j != i
            for g in bundles[j]
            if g in goods and vi.marginal(frozenset({g}), frozenset(bundles[i])) == 0
        )
        if candidates:
            g = candidates[0]
            donor = min(j for j in range(inst.n) if j != i and g in bundles[j])
            bundles[donor].discard(g)
            bundles[i].add(g)
            moved = True
        else:
            # Zero-marginal chore held by i: give it away.
            mine = frozenset(bundles[i])
            candidates = sorted(
                c
                for c in bundles[i]
                if c in chores
                and vi.marginal(frozenset({c}), mine - {c}) == 0
            )
            if candidates:
                c = candidates[0]
                recipient = min(j for j in range(inst.n) if j != i)
                bundles[i].discard(c)
                bundles[recipient].add(c)
                moved = True
        if not moved:
            break
    else:
        raise AssertionError("improvement walk failed to terminate")
    return tuple(frozenset(b) for b in bundles)


# ---------------------------------------------------------------------------
# Seeded instance generation and counterexample search.


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int = 0
    n_range: tuple[int, int] = (2, 3)
    m_range: tuple[int, int] = (1, 6)
    value_bound: int = 8


def _item_value_pool(marginal_class: str, rng: random.Random, bound: int) -> list[Fraction]:
    """Additive per-item value pool respecting a marginal class."""
    pos = [Fraction(k) for k in range(1, bound + 1)]
    nonneg = [Fraction(0)] + pos
    neg = [-x for x in pos]
    nonpos = [Fraction(0)] + neg
    if marginal_class == "general":
        return neg + nonneg
    if marginal_class == "goods":
        return nonneg
    if marginal_class == "chores":
        return nonpos
    if marginal_class == "positive":
        return pos
    if marginal_class == "negative":
        return neg
    if marginal_class == "binary":
        return [Fraction(0), Fraction(1)]
    if marginal_class == "neg_binary":
        return [Fraction(0), Fraction(-1)]
    if marginal_class == "tribool":
        return [Fraction(-1), Fraction(0), Fraction(1)]
    if marginal_class == "all_ones":
        return [Fraction(1)]
    if marginal_class == "all_neg_ones":
        return [Fraction(-1)]
    if marginal_class == "plus_minus_one":
        return [Fraction(-1), Fraction(1)]
    if marginal_class == "bivalued":
        a = Fraction(rng.randint(-bound, bound))
        b = Fraction(rng.randint(-bound, bound))
        return [a, b]
    if marginal_class == "pos_bivalued":
        a = Fraction(rng.randint(1, bound))
        b = Fraction(rng.randint(1, bound))
        return [a, b]
    if marginal_class == "neg_bivalued":
        a = Fraction(-rng.randint(1, bound))
        b = Fraction(-rng.randint(1, bound))
        return [a, b]
    if marginal_class == "mixed_bivalued":
        return [Fraction(rng.randint(1, bound)), Fraction(-rng.randint(1, bound))]
    raise ValueError(f"unknown marginal class {marginal_class!r}")


def _random_valuation(
    setting: Setting, m: int, rng: random.Random, config: GeneratorConfig
) -> ValuationFunction:
    vc = setting.valuation_class
    mc = setting.marginal_class
    if vc in ("additive", "cancelable", "xos", "general", "submodular",
              "supermodular", "subadditive", "superadditive"):
        # Additive draws classify below every class; non-additive members of
        # the broader classes come from dedicated constructs below, chosen
        # with some probability when the marginal class allows it.
        if vc in ("submodular", "subadditive") and rng.random() < 1 / 2:
            if mc in ("goods", "binary", "positive", "pos_bivalued", "general"):
                if vc == "submodular":
                    cap = rng.randint(1, max(1, m - 1))
                    eps = Fraction(0) if mc in ("binary", "goods", "general") else Fraction(1)
                    return model.CappedCountPlusEps(m, cap, eps)
                return model.CeilDiv(m, rng.randint(2, max(2, m)))
        if vc in ("supermodular", "superadditive") and rng.random() < 1 / 2:
            if mc in ("goods", "binary", "general"):
                return model.FloorDiv(m, rng.randint(2, max(2, m)))
        pool = _item_value_pool(mc, rng, config.value_bound)
        return model.Additive(tuple(rng.choice(pool) for _ in range(m)))
    if vc == "unit_demand":
        values = tuple(
            Fraction(rng.randint(0, config.value_bound)) for _ in range(m)
        )
        return model.UnitDemand(values)
    raise ValueError(f"unknown valuation class {vc!r}")


def _random_entitlements(n: int, equal: bool | None, rng: random.Random):
    if equal:
        return tuple(Fraction(1, n) for _ in range(n))
    weights = [rng.randint(1, 5) for _ in range(n)]
    total = sum(weights)
    return tuple(Fraction(w, total) for w in weights)


def random_instance(
    setting: Setting, config: GeneratorConfig, rng: random.Random
) -> Instance:
    n = 2 if setting.two_agents else rng.randint(*config.n_range)
    m = rng.randint(*config.m_range)
    if setting.identical_valuations:
        v = _random_valuation(setting, m, rng, config)
        vals = tuple([v] * n)
    else:
        vals = tuple(
            _random_valuation(setting, m, rng, config) for _ in range(n)
        )
    return Instance(_random_entitlements(n, setting.equal_entitlements, rng), vals)


def generate_instances(
    setting: Setting,
    config: GeneratorConfig,
    count: int,
    max_attempts_factor: int = 50,
):
    """Yield up to `count` seeded random instances classifying below `setting`."""
    rng = random.Random(config.seed)
    produced = 0
    attempts = 0
    limit = count * max_attempts_factor
    while produced < count and attempts < limit:
        attempts += 1
        inst = random_instance(setting, config, rng)
        if model.validate_instance(inst):
            continue
        observed = classify_instance(inst)
        if DEFAULT_SPACE.setting_leq(observed, setting):
            produced += 1
            yield inst
    if produced < count:
        raise ValueError(
            f"generator produced only {produced}/{count} instances below "
            f"{setting} in {attempts} attempts"
        )


def search_counterexample(
    f1: str,
    f2: str,
    setting: Setting,
    config: GeneratorConfig = GeneratorConfig(),
    budget: int = 200,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> Witness | None:
    """First seeded random witness with f1 fair for all and f2 violated."""
    for inst in generate_instances(setting, config, budget):
        for alloc in enumerate_allocations(inst.n, inst.m):
            if not all(
                evaluate(f1, inst, alloc, i, budgets) for i in range(inst.n)
            ):
                continue
            for i in range(inst.n):
                if not evaluate(f2, inst, alloc, i, budgets):
                    return Witness(inst, alloc, i)
    return None
