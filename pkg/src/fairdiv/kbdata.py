"""The shipped fact dataset: conditional implications among the 22 fairness
notions, counterexamples with concrete witnesses, and (in)feasibility results.

Facts are written here as Python so they are reviewable next to their
witnesses; ``scripts/build_kb.py`` serializes them to ``data/kb.json``.

Conventions:

- A fact's setting is the most general lattice point the result is claimed
  for.  Conditions that have no lattice coordinate (specific item counts,
  "n = 3", "identical = no") are recorded at the nearest point that still
  contains the witness; this is sound because implications apply to queries
  at or below their setting, while counterexamples and infeasibility apply
  at or above theirs.
- Rows claiming "F1 and F2 do not imply G" are split into F1 ⇏ G and
  F2 ⇏ G sharing one witness; rows claiming "F ⇏ G1 or G2" are split into
  F ⇏ G1 and F ⇏ G2.
- "Doubly monotone" side conditions are encoded at the pure-goods and
  pure-chores marginal classes, the lattice points where they provably hold.
- A few results rest on constructions too large to re-check by enumeration
  (or on irrational entitlements); those facts ship without a witness and
  are reported as unverified by the witness checker.
"""

from __future__ import annotations

from fractions import Fraction

from . import model
from .kb import Fact, KnowledgeBase
from .model import Instance, make_allocation
from .oracle import Witness
from .settings import Setting

F = Fraction


def _setting(
    valuation: str = "general",
    marginals: str = "general",
    identical: bool | None = None,
    two: bool | None = None,
    equal: bool | None = None,
) -> Setting:
    return Setting(equal, two, identical, valuation, marginals)


def _frac_row(values) -> tuple[Fraction, ...]:
    return tuple(F(x) for x in values)


def _instance(valuations, entitlements=None) -> Instance:
    n = len(valuations)
    if entitlements is None:
        entitlements = [F(1, n)] * n
    return Instance(
        entitlements=_frac_row(entitlements),
        valuations=tuple(valuations),
    )


def _additive(rows, entitlements=None) -> Instance:
    return _instance([model.Additive(_frac_row(r)) for r in rows], entitlements)


def _identical_additive(values, n, entitlements=None) -> Instance:
    v = model.Additive(_frac_row(values))
    return _instance([v] * n, entitlements)


def _witness(inst: Instance, bundles, violating_agent: int) -> Witness:
    return Witness(inst, make_allocation(bundles), violating_agent)


def _symmetric_table(m: int, value_of_size) -> model.Table:
    entries = tuple(
        F(value_of_size(bin(mask).count("1"))) for mask in range(1 << m)
    )
    return model.Table(m, entries)


# ---------------------------------------------------------------------------
# Witnesses.


def _threshold_count_instance(n: int, k: int, eps: Fraction) -> Instance:
    # Identical supermodular v(X) = |X|·eps + max(0, |X| - k) over 4n goods.
    v = _symmetric_table(4 * n, lambda x: x * eps + max(0, x - k))
    return _instance([v] * n)


def _perturbed_unit_demand(values, n: int, bump: Fraction) -> Instance:
    # max_{g in X} v(g) + |X|·bump: submodular and cancelable with positive
    # marginals, used for the perturbed variants of the unit-demand results.
    vals = _frac_row(values)

    def value_of(items):
        return (max((vals[j] for j in items), default=F(0))
                + len(items) * bump)

    m = len(vals)
    entries = tuple(
        value_of([j for j in range(m) if mask >> j & 1])
        for mask in range(1 << m)
    )
    return _instance([model.Table(m, entries)] * n)


def _pmrf_instance(n: int, partition, eps) -> Instance:
    m = sum(len(block) for block in partition)
    v = model.PartitionRankPlusEps(m, tuple(tuple(b) for b in partition), F(eps))
    return _instance([v] * n)


def _submod_non_aps_instance(eps: Fraction) -> Instance:
    covers = (
        frozenset({0, 1, 2}),
        frozenset({0, 4, 5}),
        frozenset({1, 3, 5}),
        frozenset({2, 3, 4}),
    )
    base = {0: F(0), 1: F(2), 2: F(4), 3: F(5)}

    def value_of(items: frozenset) -> Fraction:
        if items in covers or len(items) >= 4:
            v = F(6)
        else:
            v = base[len(items)]
        return v + len(items) * eps

    entries = tuple(
        value_of(frozenset(j for j in range(6) if mask >> j & 1))
        for mask in range(1 << 6)
    )
    v = model.Table(6, entries)
    return _instance([v] * 2)


_EEF_ROWS = {
    1: (0, 0, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0),
    2: (0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1),
    3: (1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 1, 1),
}


def _eef_not_ef1_witness(t: int, a: int = 1, b: int = 3) -> Witness:
    # The construction works for any 0 <= 2a < b; (a, b) = (0, 1) gives
    # binary marginals, (1, 3) gives bivalued ones.
    rows = [
        [t * (b if x else a) for x in _EEF_ROWS[i]] for i in (1, 2, 3)
    ]
    return _witness(
        _additive(rows),
        [range(0, 4), range(4, 8), range(8, 12)],
        0,
    )


def _bundles(*parts):
    return [list(p) for p in parts]


# ---------------------------------------------------------------------------
# Implication facts.

_IMPLIES: list[tuple[str, str, Setting, str]] = []


def _imp(f1: str, f2: str, ref: str, **kw) -> None:
    _IMPLIES.append((f1, f2, _setting(**kw), ref))


# A notion implies its epistemic variant (the allocation certifies itself),
# and the epistemic variant bounds the minimum share.
for _e, _b in (("EEF", "EF"), ("EEF1", "EF1"), ("EEFX", "EFX")):
    _imp(_b, _e, "the allocation is its own certificate")
_for_min = (("MEFS", "EEF"), ("M1S", "EEF1"), ("MXS", "EEFX"))
for _mn, _e in _for_min:
    _imp(_e, _mn, "a certificate's own bundle attains the minimum share")
# Groupwise implies the base notion (full group) and the pairwise variant.
for _g, _b, _p in (
    ("GPROP", "PROP", "PPROP"),
    ("GMMS", "MMS", "PMMS"),
    ("GAPS", "APS", "PAPS"),
):
    _imp(_g, _b, "the full agent set is a group")
    _imp(_g, _p, "pairs are groups")
    # With two agents the only group is the whole instance.
    _imp(_b, _g, "two agents: the only group is everyone", two=True)
    _imp(_p, _g, "two agents: the only pair is everyone", two=True)
for _e, _b in (("EEF", "EF"), ("EEF1", "EF1"), ("EEFX", "EFX")):
    _imp(_e, _b, "two agents: the certificate fixes both bundles", two=True)

# Exact envy-freeness is stronger than both relaxations; this lifts to the
# epistemic and minimum-share families.
_imp("EF", "EFX", "removing a subset only helps")
_imp("EF", "EF1", "removing one item only helps")
_imp("EEF", "EEFX", "relax the certificate's guarantee")
_imp("EEF", "EEF1", "relax the certificate's guarantee")
_imp("MEFS", "MXS", "a larger feasible set has a smaller minimum")
_imp("MEFS", "M1S", "a larger feasible set has a smaller minimum")

# EFX implies EF1 under a marginal-sign analysis; the same argument covers
# the epistemic and minimum-share variants.
for _x, _o in (("EFX", "EF1"), ("EEFX", "EEF1"), ("MXS", "M1S")):
    _ref = "marginal-sign analysis of the envied and owned bundles"
    _imp(_x, _o, _ref, valuation="additive")
    _imp(_x, _o, _ref, marginals="positive")
    _imp(_x, _o, _ref, marginals="negative")
    _imp(_x, _o, _ref, valuation="submodular", marginals="goods", equal=True)
    _imp(_x, _o, _ref, valuation="submodular", marginals="chores")
_imp("MXS", "M1S", "certificate surgery on zero-marginal chores",
     marginals="chores")
_imp("MXS", "M1S", "certificate surgery on zero-marginal items, two agents",
     marginals="goods", two=True)
_imp("MXS", "EF1", "an EFX certificate caps the other bundle's value",
     valuation="additive", two=True)

# The proportionality family.
_imp("PROP", "PROPX", "full share beats any relaxed share")
_imp("PROP", "PROP1", "full share beats any relaxed share")
_imp("PROPX", "PROPAVG", "the worst subset bounds the average")
_imp("PROPAVG", "PROPM", "the average bounds the minimum")
_imp("PROPM", "PROPX", "two agents: the other bundle is the only donor",
     two=True)
_imp("PROPM", "PROPX", "chores: only removals matter", marginals="chores")
_imp("PROPM", "PROP1", "single items attain the minimum marginal",
     valuation="submodular")
_imp("PROPM", "PROP1", "single items attain the minimum marginal",
     marginals="positive")
_imp("PROPM", "PROP1", "single items attain the minimum marginal",
     marginals="negative")

_imp("MEFS", "PROP", "averaging an envy-free certificate",
     valuation="subadditive")
_imp("EF", "GPROP", "averaging within each group", valuation="subadditive")
_imp("PROP", "EF", "identical superadditive valuations",
     valuation="superadditive", identical=True)
_imp("PPROP", "EF", "pairwise averaging", valuation="superadditive")
_imp("PPROP", "GPROP", "pair shares bound group shares",
     valuation="submodular")

_imp("EEF1", "PROP1", "averaging an EF1 certificate",
     valuation="submodular", equal=True)
_imp("EEF1", "PROP1", "averaging an EF1 certificate",
     valuation="subadditive", marginals="chores")
_imp("EF1", "PROP1", "two agents: the other bundle is the complement",
     valuation="submodular", two=True)
_imp("EF1", "PROP1", "two agents: the other bundle is the complement",
     valuation="subadditive", marginals="positive", two=True)
_imp("EF1", "PROP1", "two agents: the other bundle is the complement",
     valuation="subadditive", marginals="negative", two=True)
_imp("EEFX", "PROPX", "averaging an EFX certificate",
     valuation="subadditive", marginals="chores")
_imp("EFX", "PROPAVG", "averaging subset marginals",
     valuation="submodular", marginals="goods", equal=True)
_imp("EFX", "PROPX", "two agents: complement bundle argument",
     valuation="subadditive", two=True)
_imp("MXS", "PROP1", "Caragiannis, Garg, Rathi, Sharma, Varricchio (2023)",
     valuation="additive", marginals="goods", equal=True)

# Share notions versus envy notions.
_imp("PMMS", "EFX", "a pair's maximin partition refutes EFX-envy",
     valuation="additive", equal=True)
_imp("PMMS", "EFX", "a pair's maximin partition refutes EFX-envy",
     marginals="goods")
_imp("MMS", "EEFX", "Caragiannis, Garg, Rathi, Sharma, Varricchio (2023)",
     marginals="goods")
_imp("MMS", "MXS", "a maximin partition is an EFX certificate",
     valuation="additive", equal=True)
_imp("MMS", "MXS", "a maximin partition is an EFX certificate",
     marginals="goods", equal=True)
_imp("MMS", "M1S", "a maximin partition is an EF1 certificate",
     marginals="goods", equal=True)

# Price-based shares.  PROP dominates APS dominates MMS; each of these also
# holds pairwise and groupwise.
_imp("PROP", "APS", "Babaioff, Ezra, Feige (2023)", valuation="additive")
_imp("PPROP", "PAPS", "Babaioff, Ezra, Feige (2023)", valuation="additive")
_imp("GPROP", "GAPS", "Babaioff, Ezra, Feige (2023)", valuation="additive")
_imp("PROP", "MMS", "splitting beats the worst bundle",
     valuation="superadditive")
_imp("PPROP", "PMMS", "splitting beats the worst bundle",
     valuation="superadditive")
_imp("GPROP", "GMMS", "splitting beats the worst bundle",
     valuation="superadditive")
_imp("APS", "MMS", "any partition yields feasible prices", equal=True)
_imp("PAPS", "PMMS", "any partition yields feasible prices", equal=True)
_imp("GAPS", "GMMS", "any partition yields feasible prices", equal=True)
_imp("PMMS", "PAPS", "two-agent shares coincide for additive valuations",
     valuation="additive")

# Binary / negative-binary ({-1, 0, 1}-marginal) additive results.
for _a, _b in (("EF1", "EFX"), ("EEF1", "EEFX"), ("M1S", "MXS")):
    _ref = "unit marginals: one item is as bad as any subset"
    _imp(_a, _b, _ref, valuation="additive", marginals="tribool", equal=True)
    _imp(_a, _b, _ref, valuation="additive", marginals="binary")
    _imp(_a, _b, _ref, valuation="additive", marginals="neg_binary")
_imp("PROP1", "PROPX", "unit marginals: one item is as bad as any subset",
     marginals="tribool")
_imp("PROP", "EEF", "round-robin completion of a proportional bundle",
     valuation="additive", marginals="tribool", equal=True)
_imp("APS", "PROPX", "the any-price share is the floored proportional share",
     valuation="additive", marginals="tribool")
_imp("PROP1", "APS", "the any-price share is the floored proportional share",
     valuation="additive", marginals="tribool")
_imp("M1S", "APS", "EF1 certificates cap bundle sizes",
     valuation="additive", marginals="tribool", equal=True)
_imp("MMS", "EEFX", "maximin partitions balance item counts",
     valuation="additive", marginals="tribool", equal=True)
_imp("EF1", "GAPS", "balanced counts stay balanced under restriction",
     valuation="additive", marginals="tribool", equal=True)
_imp("EF1", "PAPS", "balanced counts stay balanced under restriction",
     valuation="additive", marginals="tribool")
_imp("EF1", "GAPS", "balanced counts stay balanced under restriction",
     valuation="additive", marginals="neg_binary")
_imp("MMS", "APS", "Kulkarni, Mehlhorn, Rathi (2024)",
     valuation="submodular", marginals="binary", equal=True)
_imp("PMMS", "PAPS", "Kulkarni, Mehlhorn, Rathi (2024)",
     valuation="submodular", marginals="binary", equal=True)
_imp("GMMS", "GAPS", "Kulkarni, Mehlhorn, Rathi (2024)",
     valuation="submodular", marginals="binary", equal=True)
_imp("PROPM", "PROPAVG", "unit marginals equalize subset marginals",
     marginals="tribool")
_imp("PROPM", "PROPX", "unit marginals equalize subset marginals",
     valuation="subadditive", marginals="tribool", equal=True)
_imp("M1S", "PROPX", "counting argument over EF1 certificates",
     valuation="subadditive", marginals="binary", equal=True)
_imp("M1S", "PROPX", "counting argument over EF1 certificates",
     valuation="subadditive", marginals="tribool", two=True)
_imp("M1S", "PROPX", "counting argument over EF1 certificates",
     valuation="subadditive", marginals="neg_binary")

# Unit-demand valuations over goods with equal entitlements.
for _f1, _f2 in (
    ("MEFS", "EF"),
    ("MMS", "APS"),
    ("PMMS", "PAPS"),
    ("GMMS", "GAPS"),
    ("M1S", "APS"),
    ("EF1", "GAPS"),
):
    _imp(_f1, _f2, "unit-demand shares are order statistics",
         valuation="unit_demand", marginals="goods", equal=True)


# ---------------------------------------------------------------------------
# Non-implication facts.

_NOT_IMPLIES: list[tuple[str, str, Setting, str, Witness | None]] = []


def _nimp(f1: str, f2: str, ref: str, witness: Witness | None, **kw) -> None:
    _NOT_IMPLIES.append((f1, f2, _setting(**kw), ref, witness))


# Single item: every allocation satisfies the relaxed and share-based
# notions (EF1 and its consequences under the unit-marginal implications),
# while the exact notions all fail whoever ends up empty-handed.
_w = _witness(_identical_additive([1], 2), _bundles([0], []), 1)
for _f1 in ("EF1", "APS", "PROPX"):
    _nimp(_f1, "PROP", "single good", _w,
          valuation="additive", marginals="all_ones", identical=True,
          equal=True)
_w = _witness(_identical_additive([-1], 2), _bundles([0], []), 0)
for _f1 in ("EF1", "APS", "PROPX"):
    _nimp(_f1, "PROP", "single chore", _w,
          valuation="additive", marginals="all_neg_ones", identical=True,
          equal=True)

# Share notions tolerate envy: 5 unit goods split (1, 1, 3).
_w = _witness(
    _identical_additive([1] * 5, 3),
    _bundles([0], [1], [2, 3, 4]),
    0,
)
for _f1 in ("APS", "PROPX"):
    _nimp(_f1, "EF1", "five unit goods split 1/1/3", _w,
          valuation="additive", marginals="all_ones", identical=True,
          equal=True)
# 4 unit chores split (2, 2, 0).
_w = _witness(
    _identical_additive([-1] * 4, 3),
    _bundles([0, 1], [2, 3], []),
    0,
)
for _f1 in ("APS", "EEFX"):
    _nimp(_f1, "EF1", "four unit chores split 2/2/0", _w,
          valuation="additive", marginals="all_neg_ones", identical=True,
          equal=True)

# Epistemic relaxations are weaker than one-item relaxations.
_nimp("EEF", "EF1", "12-item bivalued certificate construction",
      _eef_not_ef1_witness(1),
      valuation="additive", marginals="pos_bivalued", equal=True)
_nimp("EEF", "EF1", "12-item bivalued certificate construction",
      _eef_not_ef1_witness(-1),
      valuation="additive", marginals="neg_bivalued", equal=True)
# The same construction with low value 0 instead of 1 lands in the
# binary / negative-binary marginal classes.
_nimp("EEF", "EF1", "12-item binary certificate construction",
      _eef_not_ef1_witness(1, a=0, b=1),
      valuation="additive", marginals="binary", equal=True)
_nimp("EEF", "EF1", "12-item binary certificate construction",
      _eef_not_ef1_witness(-1, a=0, b=1),
      valuation="additive", marginals="neg_binary", equal=True)

_w = _witness(
    _additive([(10, 20, 30), (20, 10, 30), (10, 20, 30)]),
    _bundles([1], [0], [2]),
    0,
)
_nimp("PROP", "MEFS", "everyone's minimum envy-free share is the big good",
      _w, valuation="additive", marginals="positive", equal=True)
_w = _witness(
    _additive([(-30, -20, -10), (-20, -30, -10), (-30, -20, -10)]),
    _bundles([1], [0], [2]),
    0,
)
_nimp("PROP", "MEFS", "everyone's minimum envy-free share is the small chore",
      _w, valuation="additive", marginals="negative", equal=True)

_w = _witness(
    _additive([
        (20, 20, 20, 10, 10, 10),
        (20, 10, 10, 1, 1, 1),
        (20, 10, 10, 1, 1, 1),
    ]),
    _bundles([3, 4, 5], [0], [1, 2]),
    0,
)
_nimp("MEFS", "EEF", "no epistemic-EF completion exists", _w,
      valuation="additive", marginals="positive", equal=True)

_w = _witness(
    _additive([
        [-70, -70, -70] + [-10] * 9,
        [-10] * 12,
        [-10] * 12,
    ]),
    _bundles(range(3, 12), [0, 1], [2]),
    0,
)
_nimp("MEFS", "EEF1", "every completion leaves a lightly-loaded agent", _w,
      valuation="additive", marginals="neg_bivalued", equal=True)

# Two equally-entitled agents, identical bivalued valuations.


def _bival2(values, bundles, viol_pos, viol_neg, f1, f2, ref):
    for t, marg, viol in (
        (1, "pos_bivalued", viol_pos),
        (-1, "neg_bivalued", viol_neg),
    ):
        w = _witness(
            _identical_additive([t * x for x in values], 2),
            bundles,
            viol,
        )
        _nimp(f1, f2, ref, w,
              valuation="additive", marginals=marg, identical=True,
              two=True, equal=True)


_bival2((3, 3, 2, 2, 2), _bundles([0, 2], [1, 3, 4]), 0, 1,
        "EFX", "MMS", "a 3+2 / 3+2+2 split")
for _f2 in ("PROPX", "MXS"):
    _bival2((4, 4, 1, 1, 1), _bundles([0], [1, 2, 3, 4]), 0, 1,
            "EF1", _f2, "a lone big item versus the rest")
_bival2((1, 1, 1, F(3, 2)), _bundles([3], [0, 1, 2]), 0, 1,
        "PROPX", "M1S", "every EF1 certificate needs two items")
_bival2((4, 4, 1, 1, 1, 1, 1), _bundles([0, 2], [1, 3, 4, 5, 6]), 0, 1,
        "MXS", "PROPX", "EFX certificates separate the big items")
_bival2((1,) * 8 + (4,), _bundles([8], range(8)), 0, 1,
        "M1S", "PROP1", "one big item versus eight small ones")

# Three equally-entitled agents.
_w = _witness(_identical_additive([50, 10], 3), _bundles([0], [1], []), 2)
_nimp("GAPS", "PROPX", "two goods among three agents", _w,
      valuation="additive", marginals="pos_bivalued", identical=True,
      equal=True)
_w = _witness(
    _instance([model.UnitDemand(_frac_row([50, 10]))] * 3),
    _bundles([0], [1], []),
    2,
)
_nimp("GAPS", "PROPX", "two goods among three agents", _w,
      valuation="unit_demand", marginals="goods", identical=True, equal=True)

for _t, _marg, _viol in ((1, "positive", 0), (-1, "negative", 1)):
    _w = _witness(
        _identical_additive([_t * x for x in (6, 4, 3, 3, 2, 2, 1)], 3),
        _bundles([0], [2, 3, 4], [1, 5, 6]),
        _viol,
    )
    _nimp("PMMS", "MMS", "Caragiannis, Kaklamanis, Kanellopoulos, "
          "Kyropoulou, Voudouris (2019)", _w,
          valuation="additive", marginals=_marg, identical=True, equal=True)

_nimp("GMMS", "APS", "15-item instance whose any-price share exceeds every "
      "partition minimum (too large to re-check here)", None,
      valuation="additive", marginals="positive", identical=True, equal=True)
_nimp("GMMS", "APS", "15-item instance whose any-price share exceeds every "
      "partition minimum (too large to re-check here)", None,
      valuation="additive", marginals="negative", identical=True, equal=True)

_w = _witness(
    _identical_additive([60, 30, 10, 10, 10, 10], 3),
    _bundles([1], [2, 3, 4], [0, 5]),
    0,
)
_nimp("APS", "PROPM", "prices 4/3/1/1/1/1 cap the any-price share", _w,
      valuation="additive", marginals="positive", identical=True, equal=True)

_w = _witness(
    _identical_additive([-18, -3, -3, -3, -3, -3], 3),
    _bundles([1, 2, 3, 4, 5], [0], []),
    0,
)
_nimp("APS", "PROP1", "one large chore prices out the rest", _w,
      valuation="additive", marginals="neg_bivalued", identical=True,
      equal=True)

_w = _witness(
    _identical_additive([-3, -3, -3, -3, -3, F(3, 4)], 3),
    _bundles([0, 1], [2, 3, 5], [4]),
    0,
)
_nimp("GAPS", "PROPM", "five chores and a small good", _w,
      valuation="additive", marginals="mixed_bivalued", identical=True,
      equal=True)

_w = _witness(
    _identical_additive([60, 60, 30], 3),
    _bundles([2], [0, 1], []),
    2,
)
_nimp("PROPM", "PROPAVG", "the empty bundle's average donor is too small",
      _w, valuation="additive", marginals="pos_bivalued", identical=True,
      equal=True)

# Unequal entitlements.
for _t, _marg, _viol in ((1, "all_ones", 1), (-1, "all_neg_ones", 0)):
    _w = _witness(
        _identical_additive([_t, _t], 2, [F(2, 3), F(1, 3)]),
        _bundles([0, 1], []),
        _viol,
    )
    _nimp("PROP1", "M1S", "two unit items, entitlements 2/3 and 1/3", _w,
          valuation="additive", marginals=_marg, identical=True, two=True)

for _t, _marg, _viol in ((1, "pos_bivalued", 0), (-1, "neg_bivalued", 1)):
    _w = _witness(
        _identical_additive(
            [_t * x for x in (10, 10) + (1,) * 10], 2, [F(2, 5), F(3, 5)]
        ),
        _bundles([0], range(1, 12)),
        _viol,
    )
    _nimp("GAPS", "PROPX", "adversarial prices concentrate on the big items",
          _w, valuation="additive", marginals=_marg, identical=True, two=True)

_w = _witness(
    _identical_additive([1, 1, 1, 1, -1], 2, [F(4, 5), F(1, 5)]),
    _bundles([1, 2, 3, 4], [0]),
    0,
)
_nimp("EF1", "EFX", "a chore hides behind removable goods", _w,
      valuation="additive", marginals="plus_minus_one", identical=True,
      two=True)

_chores2 = _identical_additive([-1, -1], 2, [F(9, 10), F(1, 10)])
_nimp("MMS", "M1S", "weighted maximin loads the large-entitlement agent",
      _witness(_chores2, _bundles([0, 1], []), 0),
      valuation="additive", marginals="all_neg_ones", identical=True,
      two=True)
_nimp("EFX", "MMS", "weighted maximin loads the large-entitlement agent",
      _witness(_chores2, _bundles([0], [1]), 1),
      valuation="additive", marginals="all_neg_ones", identical=True,
      two=True)

_goods7 = _identical_additive([1] * 7, 3, [F(7, 12), F(5, 24), F(5, 24)])
_nimp("GMMS", "PROP1", "seven unit goods, entitlements 7/12, 5/24, 5/24",
      _witness(_goods7, _bundles([0, 1, 2], [3, 4], [5, 6]), 0),
      valuation="additive", marginals="all_ones", identical=True)
_nimp("GAPS", "M1S", "seven unit goods, entitlements 7/12, 5/24, 5/24",
      _witness(_goods7, _bundles([0, 1, 2, 3, 4], [5], [6]), 1),
      valuation="additive", marginals="all_ones", identical=True)

_chores7 = _identical_additive([-1] * 7, 3, [F(9, 16), F(7, 32), F(7, 32)])
_w = _witness(_chores7, _bundles([0, 1, 2, 3, 4], [5], [6]), 0)
for _f2 in ("PROP1", "M1S"):
    _nimp("GMMS", _f2, "seven unit chores, entitlements 9/16, 7/32, 7/32",
          _w, valuation="additive", marginals="all_neg_ones", identical=True)

_w = _witness(
    _additive(
        [
            [-1] * 7,
            [-1, -1, -1, -1, -F(1, 4), -F(1, 4), -F(1, 4)],
            [-1, -1, -1, -1, -F(1, 4), -F(1, 4), -F(1, 4)],
        ],
        [F(4, 7), F(3, 14), F(3, 14)],
    ),
    _bundles([0, 1, 2, 3], [4, 5], [6]),
    0,
)
_nimp("PROP", "M1S", "unequal chores: every EF1 certificate overloads agent 1",
      _w, valuation="additive", marginals="neg_bivalued")

# Supermodular valuations: v(X) depends only on |X| with a threshold.
for _eps, _marg in ((F(0), "binary"), (F(1, 28), "pos_bivalued")):
    _w = _witness(
        _threshold_count_instance(2, 5, _eps),
        _bundles(range(0, 4), range(4, 8)),
        0,
    )
    for _f1 in ("EF", "GAPS"):
        for _f2 in ("PROP1", "PROPM"):
            _nimp(_f1, _f2, "threshold count function over 8 goods", _w,
                  valuation="supermodular", marginals=_marg, identical=True,
                  equal=True)
    _w12 = _witness(
        _threshold_count_instance(3, 8, _eps),
        _bundles(range(0, 4), range(4, 8), range(8, 12)),
        0,
    )
    _nimp("PPROP", "PROP1", "threshold count function over 12 goods", _w12,
          valuation="supermodular", marginals=_marg, identical=True,
          equal=True)
    if _eps == 0:
        _nimp("PROPAVG", "PROPX", "threshold count function over 12 goods",
              _w12, valuation="supermodular", marginals=_marg,
              identical=True, equal=True)

# Unit-demand valuations and their perturbed submodular variants.


def _ud_pair(values, n, bundles, viol, f1, f2, ref):
    inst = _instance([model.UnitDemand(_frac_row(values))] * n)
    _nimp(f1, f2, ref, _witness(inst, bundles, viol),
          valuation="unit_demand", marginals="goods", identical=True,
          two=(True if n == 2 else None), equal=True)
    pert = _perturbed_unit_demand(values, n, F(1, 4))
    _nimp(f1, f2, ref + " (perturbed to positive marginals)",
          _witness(pert, bundles, viol),
          valuation="submodular", marginals="positive", identical=True,
          two=(True if n == 2 else None), equal=True)


_ud_pair((4, 4, 3), 2, _bundles([0, 1], [2]), 1,
         "PROP", "M1S", "unit-demand: EF1 certificates overvalue the pair")
_ud_pair((30, 10), 2, _bundles([0, 1], []), 1,
         "PROP1", "PROPM", "unit-demand: the marginal donor is the small good")
_ud_pair((30, 11, 11), 3, _bundles([0], [1], [2]), 1,
         "PROP", "PPROP", "unit-demand: the pair with the big good fails")
_ud_pair((75, 30, 10), 3, _bundles([0, 2], [1], []), 2,
         "PROPM", "PROPAVG", "unit-demand: averaging beats the minimum donor")

_w = _witness(
    _instance([model.UnitDemand(_frac_row((200, 30, 10, 10, 10)))] * 4),
    _bundles([0, 1], [2], [3], [4]),
    1,
)
for _f2 in ("EF1", "PROPM"):
    _nimp("MMS", _f2, "unit-demand: the maximin share is the smallest good",
          _w, valuation="unit_demand", marginals="goods", identical=True,
          equal=True)

# Partition-rank (matroid rank) submodular instances.
for _eps, _marg in ((F(0), "binary"), (F(1, 4), "pos_bivalued")):
    _w = _witness(
        _pmrf_instance(2, ((0, 1), (2, 3)), _eps),
        _bundles([0, 1], [2, 3]),
        0,
    )
    _nimp("EF", "MMS", "partition rank over two blocks", _w,
          valuation="submodular", marginals=_marg, identical=True,
          two=True, equal=True)
    _w = _witness(
        _pmrf_instance(
            2, ((0,), (1,), (2,), (3,), (4, 5), (6, 7), (8, 9)), _eps
        ),
        _bundles([0, 4, 6, 8], [1, 2, 3, 5, 7, 9]),
        0,
    )
    _nimp("MEFS", "EF1", "partition rank: certificates trade singletons "
          "for pairs", _w,
          valuation="submodular", marginals=_marg, identical=True,
          two=True, equal=True)

for _eps, _marg in ((F(0), "binary"), (F(1, 8), "pos_bivalued")):
    _w = _witness(
        _pmrf_instance(
            3,
            tuple((j, 6 + j) for j in range(6))
            + tuple((j,) for j in range(12, 16)),
            _eps,
        ),
        _bundles(range(0, 6), range(6, 12), range(12, 16)),
        2,
    )
    for _f2 in ("EF1", "PPROP"):
        _nimp("EEF", _f2, "partition rank over 16 items", _w,
              valuation="submodular", marginals=_marg, identical=True,
              equal=True)

for _eps, _marg in ((F(0), "binary"), (F(1, 4), "pos_bivalued")):
    _w = _witness(
        _instance([model.CappedCountPlusEps(10, 6, _eps)] * 2),
        _bundles(range(0, 4), range(4, 10)),
        0,
    )
    _nimp("PROP", "M1S", "uniform matroid rank over 10 items", _w,
          valuation="submodular", marginals=_marg, identical=True,
          two=True, equal=True)

_nimp("MMS", "APS", "cover family where the any-price share beats every "
      "partition",
      _witness(
          _submod_non_aps_instance(F(1, 4)),
          _bundles([0, 1, 2], [3, 4, 5]),
          1,
      ),
      valuation="submodular", marginals="positive", identical=True,
      two=True, equal=True)

# Subadditive valuations.
for _eps, _marg in ((F(0), "binary"), (F(1, 4), "pos_bivalued")):
    _w = _witness(
        _instance(
            [
                model.BinPackingPlusEps(
                    _frac_row((F(1, 5), F(1, 5), F(3, 5), F(3, 5),
                               F(3, 5), F(3, 5))),
                    _eps,
                )
            ]
            * 3
        ),
        _bundles([0, 1], [2, 3], [4, 5]),
        0,
    )
    for _f1 in ("GAPS", "PPROP"):
        _nimp(_f1, "PROP1", "bin packing with two small and four large items",
              _w, valuation="subadditive", marginals=_marg, identical=True,
              equal=True)

_w = _witness(
    _instance([model.CeilDiv(9, 4)] * 2),
    _bundles(range(0, 3), range(3, 9)),
    0,
)
for _f2 in ("EF1", "PROP1"):
    _nimp("GAPS", _f2, "ceiling of the item count over 9 goods", _w,
          valuation="subadditive", marginals="binary", identical=True,
          two=True, equal=True)
for _f1 in ("PAPS", "PPROP"):
    for _f2 in ("PROPM", "M1S"):
        _nimp(_f1, _f2, "49-item bin-packing construction (too large to "
              "re-check here)", None,
              valuation="subadditive", marginals="binary", identical=True,
              equal=True)
_nimp("GMMS", "APS", "15-item bin-packing construction (too large to "
      "re-check here)", None,
      valuation="subadditive", marginals="binary", identical=True,
      equal=True)


# ---------------------------------------------------------------------------
# Feasibility facts.

_FEASIBLE: list[tuple[str, Setting, str]] = []
_INFEASIBLE: list[tuple[str, Setting, str]] = []


def _feas(notion: str, ref: str, **kw) -> None:
    _FEASIBLE.append((notion, _setting(**kw), ref))


def _infeas(notion: str, ref: str, **kw) -> None:
    _INFEASIBLE.append((notion, _setting(**kw), ref))


_feas("EF1", "Bhaskar, Sricharan, Vaish (2021)",
      marginals="goods", equal=True)
_feas("EF1", "Bhaskar, Sricharan, Vaish (2021)",
      marginals="chores", equal=True)
_feas("EF1", "Chakraborty, Igarashi, Suksompong, Zick (2021)",
      valuation="additive", marginals="goods")
_feas("EF1", "Springer, Hosseini, Dickerson (2024)",
      valuation="additive", marginals="chores")
_feas("EF1", "Garg, Murhekar, Qin (2024)", valuation="additive", two=True)
_feas("MMS", "cut and choose", valuation="additive", two=True, equal=True)
_feas("MMS", "identical valuations: any maximin partition works",
      identical=True)
_feas("APS", "Babaioff, Ezra, Feige (2023)", valuation="additive", two=True)
_feas("PROPX", "Li, Li, Wu (2022)", valuation="additive", marginals="chores")
_feas("PROPM", "Baklanov, Garimidi, Gkatzelis, Schoepflin (2021)",
      valuation="additive", marginals="goods", equal=True)
_feas("PROPAVG", "Kobayashi, Mahara (2025)",
      valuation="additive", marginals="goods", equal=True)
_feas("PROP1", "Aziz, Caragiannis, Igarashi, Walsh (2020)",
      valuation="additive")
_feas("EFX", "Springer, Hosseini, Dickerson (2024)",
      valuation="additive", marginals="goods", identical=True)
_feas("EFX", "Springer, Hosseini, Dickerson (2024)",
      valuation="additive", marginals="chores", identical=True)
_feas("EEFX", "Caragiannis, Garg, Rathi, Sharma, Varricchio (2022)",
      valuation="cancelable", marginals="goods", equal=True)
_feas("EEFX", "Caragiannis, Garg, Rathi, Sharma, Varricchio (2022)",
      valuation="cancelable", marginals="chores", equal=True)
_feas("EEFX", "Akrami, Rathi (2025)", marginals="goods", equal=True)
_feas("EEFX", "Akrami, Rathi (2025)", marginals="chores", equal=True)
_feas("EFX", "Amanatidis, Birmpas, Filos-Ratsikas, Hollender, "
      "Voudouris (2021)",
      valuation="additive", marginals="pos_bivalued", equal=True)
_feas("EFX", "Amanatidis, Birmpas, Filos-Ratsikas, Hollender, "
      "Voudouris (2021)",
      valuation="additive", marginals="binary", equal=True)
for _marg in ("pos_bivalued", "binary", "neg_bivalued", "neg_binary"):
    _feas("MMS", "Feige, Norkin (2022)",
          valuation="additive", marginals=_marg, equal=True)
_feas("MMS", "Barman, Verma (2021)",
      valuation="submodular", marginals="binary", equal=True)
_feas("EFX", "Babaioff, Ezra, Feige (2021)",
      valuation="submodular", marginals="binary", equal=True)
_feas("MMS", "Barman, Verma (2023)",
      valuation="submodular", marginals="neg_binary", equal=True)
_feas("GMMS", "leximin allocations are groupwise maximin",
      identical=True, equal=True)

_infeas("PROP", "single good", valuation="additive", marginals="all_ones",
        identical=True, equal=True)
_infeas("PROP", "single chore", valuation="additive",
        marginals="all_neg_ones", identical=True, equal=True)
_infeas("APS", "cover family where the any-price share beats every partition",
        valuation="submodular", marginals="positive", identical=True,
        two=True, equal=True)
_infeas("APS", "Babaioff, Ezra, Feige (2023)",
        valuation="additive", marginals="positive", identical=True,
        equal=True)
_infeas("APS", "Babaioff, Ezra, Feige (2023)",
        valuation="additive", marginals="negative", identical=True,
        equal=True)
_infeas("APS", "15-item bin-packing construction",
        valuation="subadditive", marginals="binary", identical=True,
        equal=True)
_infeas("MMS", "Kurokawa, Procaccia, Wang (2018); Feige, Sapir, Tauber (2022)",
        valuation="additive", marginals="positive", equal=True)
_infeas("MMS", "Kurokawa, Procaccia, Wang (2018); Feige, Sapir, Tauber (2022)",
        valuation="additive", marginals="negative", equal=True)
_infeas("MMS", "Barman, Verma (2021)",
        valuation="xos", marginals="binary", two=True, equal=True)
_infeas("PROPX", "two goods of values 10 and 1 among three agents",
        valuation="additive", marginals="pos_bivalued", identical=True,
        equal=True)
_infeas("PROPM", "five chores and a small good",
        valuation="additive", marginals="mixed_bivalued", identical=True,
        equal=True)
_infeas("MXS", "Springer, Hosseini, Dickerson (2024): golden-ratio "
        "entitlements (irrational, not re-checkable here)",
        valuation="additive", marginals="positive", two=True)
_infeas("MXS", "Springer, Hosseini, Dickerson (2024): golden-ratio "
        "entitlements (irrational, not re-checkable here)",
        valuation="additive", marginals="negative", two=True)
for _marg in ("binary", "pos_bivalued"):
    _infeas("PROP1", "threshold count function over 8 goods",
            valuation="supermodular", marginals=_marg, identical=True,
            two=True, equal=True)
    _infeas("PROPM", "threshold count function over 8 goods",
            valuation="supermodular", marginals=_marg, identical=True,
            two=True, equal=True)
    _infeas("MMS", "paired-threshold supermodular construction",
            valuation="supermodular", marginals=_marg, two=True, equal=True)
for _marg in ("neg_binary", "neg_bivalued"):
    _infeas("MMS", "paired-threshold supermodular construction",
            valuation="supermodular", marginals=_marg, two=True, equal=True)
_infeas("MMS", "Ghodsi, Hajiaghayi, Seddighin, Seddighin, Yami (2018)",
        valuation="submodular", marginals="positive", two=True, equal=True)


# ---------------------------------------------------------------------------


def build_kb() -> KnowledgeBase:
    facts: list[Fact] = []
    for f1, f2, setting, ref in _IMPLIES:
        facts.append(Fact("implies", setting, ref, f1=f1, f2=f2))
    for f1, f2, setting, ref, witness in _NOT_IMPLIES:
        facts.append(
            Fact("not_implies", setting, ref, f1=f1, f2=f2, witness=witness)
        )
    for notion, setting, ref in _FEASIBLE:
        facts.append(Fact("feasible", setting, ref, notion=notion))
    for notion, setting, ref in _INFEASIBLE:
        facts.append(Fact("infeasible", setting, ref, notion=notion))
    return KnowledgeBase(facts=tuple(facts))
