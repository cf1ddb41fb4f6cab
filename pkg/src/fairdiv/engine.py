"""Inference engine over the knowledge base.

For a query setting ``s``:

1. The implication closure takes every ``implies`` fact whose setting is at
   least as general as ``s`` (``s ⪯ T``) and closes the edge set reflexively
   and transitively.  Each derived edge carries one witnessing chain of KB
   facts: the first-found shortest chain, with ties broken by lexicographic
   notion order, so provenance is stable across runs.
2. Every ``not_implies`` fact whose setting is at most as general as ``s``
   (``T ⪯ s``) is expanded at *its own* setting ``T``: with ``R`` the closure
   at ``T``, the fact ``f1 ⇏ f2`` refutes ``g1 → g2`` whenever ``f1 → g1``
   and ``g2 → f2`` are in ``R`` (otherwise ``f1 → g1 → g2 → f2`` would
   contradict the fact).  Expanding at ``T`` rather than ``s`` is sound and
   strictly stronger, since ``R(T) ⊇ R(s)``.
3. Feasibility seeds from ``feasible`` facts with ``s ⪯ T`` and
   ``infeasible`` facts with ``T ⪯ s``; feasible propagates forward along
   closure edges, infeasible backward.  A notion marked both ways, or a pair
   both implied and refuted, is a hard inconsistency — never silently
   resolved.
"""

from __future__ import annotations

from dataclasses import dataclass

from .kb import Fact, KnowledgeBase
from .settings import Setting

Chain = tuple[Fact, ...]

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
OPEN = "open"


class InconsistencyError(Exception):
    """The KB derives contradictory conclusions for the queried setting."""


@dataclass(frozen=True)
class NonImplication:
    """Provenance for a derived non-implication g1 ⇏ g2."""

    f1: str
    f2: str
    source: Fact
    # Implication chains f1 → source.f1 and source.f2 → f2 at the source
    # fact's setting.
    chain_from: Chain
    chain_to: Chain

    def refs(self) -> tuple[str, ...]:
        return (
            self.source.ref,
            *(f.ref for f in self.chain_from),
            *(f.ref for f in self.chain_to),
        )


@dataclass(frozen=True)
class QueryResult:
    setting: Setting
    # (f1, f2) → chain of implies-facts deriving f1 → f2 (empty if f1 == f2).
    closure: dict[tuple[str, str], Chain]
    # (f1, f2) → provenance for f1 ⇏ f2.
    nonimplications: dict[tuple[str, str], NonImplication]
    # notion → FEASIBLE / INFEASIBLE / OPEN.
    feasibility: dict[str, str]
    # notion → seed fact followed by the propagation chain (empty if open).
    feasibility_provenance: dict[str, Chain]
    # Unordered pairs (a, b), a < b, with at least one direction unresolved.
    open_pairs: tuple[tuple[str, str], ...]


def implication_closure(
    kb: KnowledgeBase, s: Setting
) -> dict[tuple[str, str], Chain]:
    """Reflexive-transitive closure of the implies-facts applicable at s."""
    leq = kb.space.setting_leq
    # For parallel facts on the same edge keep one deterministically.
    edge_fact: dict[tuple[str, str], Fact] = {}
    for fact in kb.facts:
        if fact.kind != "implies" or not leq(s, fact.setting):
            continue
        key = (fact.f1, fact.f2)
        prev = edge_fact.get(key)
        if prev is None or fact.ref < prev.ref:
            edge_fact[key] = fact
    adjacency: dict[str, list[tuple[str, Fact]]] = {n: [] for n in kb.notions}
    for (f1, f2), fact in sorted(edge_fact.items()):
        if f1 != f2:
            adjacency[f1].append((f2, fact))

    closure: dict[tuple[str, str], Chain] = {}
    for source in kb.notions:
        # BFS gives shortest chains; neighbors are visited in lexicographic
        # notion order, so the first chain found is the canonical one.
        closure[(source, source)] = ()
        frontier = [source]
        chains = {source: ()}
        while frontier:
            next_frontier: list[str] = []
            for node in frontier:
                for succ, fact in adjacency[node]:
                    if succ in chains:
                        continue
                    chains[succ] = chains[node] + (fact,)
                    closure[(source, succ)] = chains[succ]
                    next_frontier.append(succ)
            frontier = next_frontier
    return closure


def derived_nonimplications(
    kb: KnowledgeBase,
    s: Setting,
    _closure_cache: dict[Setting, dict[tuple[str, str], Chain]] | None = None,
) -> dict[tuple[str, str], NonImplication]:
    leq = kb.space.setting_leq
    cache = _closure_cache if _closure_cache is not None else {}
    result: dict[tuple[str, str], NonImplication] = {}
    for fact in kb.facts:
        if fact.kind != "not_implies" or not leq(fact.setting, s):
            continue
        closure = cache.get(fact.setting)
        if closure is None:
            closure = implication_closure(kb, fact.setting)
            cache[fact.setting] = closure
        ups = sorted(g1 for (a, g1) in closure if a == fact.f1)
        downs = sorted(g2 for (g2, b) in closure if b == fact.f2)
        for g1 in ups:
            for g2 in downs:
                key = (g1, g2)
                if key in result:
                    continue
                result[key] = NonImplication(
                    g1,
                    g2,
                    fact,
                    closure[(fact.f1, g1)],
                    closure[(g2, fact.f2)],
                )
    return result


def feasibility_status(
    kb: KnowledgeBase,
    s: Setting,
    closure: dict[tuple[str, str], Chain],
) -> tuple[dict[str, str], dict[str, Chain]]:
    leq = kb.space.setting_leq
    status = {n: OPEN for n in kb.notions}
    provenance: dict[str, Chain] = {n: () for n in kb.notions}

    def mark(notion: str, new: str, chain: Chain) -> None:
        if status[notion] == new:
            return
        if status[notion] != OPEN:
            old_refs = ", ".join(f.ref for f in provenance[notion])
            new_refs = ", ".join(f.ref for f in chain)
            raise InconsistencyError(
                f"notion {notion} is {status[notion]} via [{old_refs}] "
                f"but {new} via [{new_refs}]"
            )
        status[notion] = new
        provenance[notion] = chain

    for fact in kb.facts:
        if fact.kind == "feasible" and leq(s, fact.setting):
            mark(fact.notion, FEASIBLE, (fact,))
        elif fact.kind == "infeasible" and leq(fact.setting, s):
            mark(fact.notion, INFEASIBLE, (fact,))

    # Propagation needs no fixpoint loop: the closure is already transitive.
    for (f1, f2), chain in sorted(closure.items()):
        if f1 == f2:
            continue
        if status[f1] == FEASIBLE and status[f2] != FEASIBLE:
            mark(f2, FEASIBLE, provenance[f1] + chain)
        if status[f2] == INFEASIBLE and status[f1] != INFEASIBLE:
            mark(f1, INFEASIBLE, provenance[f2] + chain)
    return status, provenance


def query(kb: KnowledgeBase, s: Setting) -> QueryResult:
    errors = kb.space.validate_setting(s)
    if errors:
        raise ValueError("; ".join(errors))
    closure = implication_closure(kb, s)
    nonimps = derived_nonimplications(kb, s)
    for key in sorted(set(closure) & set(nonimps)):
        f1, f2 = key
        chain = ", ".join(f.ref for f in closure[key])
        raise InconsistencyError(
            f"{f1} -> {f2} is implied via [{chain}] but refuted via "
            f"[{', '.join(nonimps[key].refs())}]"
        )
    status, provenance = feasibility_status(kb, s, closure)
    open_pairs = []
    for i, a in enumerate(sorted(kb.notions)):
        for b in sorted(kb.notions)[i + 1:]:
            unresolved = any(
                key not in closure and key not in nonimps
                for key in ((a, b), (b, a))
            )
            if unresolved:
                open_pairs.append((a, b))
    return QueryResult(
        setting=s,
        closure=closure,
        nonimplications=nonimps,
        feasibility=status,
        feasibility_provenance=provenance,
        open_pairs=tuple(open_pairs),
    )
