"""The 5-feature product partial order over fair-division settings.

A setting is (entitlements, agents, identical, valuation class, marginal
class).  The first three features use the two-point order true ⪯ unknown;
the last two use the class posets below (child ⪯ parent = "is a subclass
of").  Settings compare coordinatewise.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

VALUATION_CLASSES = (
    "general",
    "subadditive",
    "superadditive",
    "submodular",
    "supermodular",
    "cancelable",
    "xos",
    "additive",
    "unit_demand",
)

# (child, parent) Hasse edges; the order is the reflexive-transitive closure.
VALUATION_EDGES = (
    ("subadditive", "general"),
    ("superadditive", "general"),
    ("cancelable", "general"),
    ("submodular", "subadditive"),
    ("xos", "subadditive"),
    ("supermodular", "superadditive"),
    ("additive", "submodular"),
    ("additive", "supermodular"),
    ("additive", "cancelable"),
    ("additive", "xos"),
    ("unit_demand", "submodular"),
    ("unit_demand", "xos"),
    ("unit_demand", "cancelable"),
)

MARGINAL_CLASSES = (
    "general",
    "goods",
    "chores",
    "positive",
    "negative",
    "bivalued",
    "pos_bivalued",
    "neg_bivalued",
    "mixed_bivalued",
    "binary",
    "neg_binary",
    "tribool",
    "all_ones",
    "all_neg_ones",
    "plus_minus_one",
)

MARGINAL_EDGES = (
    ("goods", "general"),
    ("chores", "general"),
    ("bivalued", "general"),
    ("tribool", "general"),
    ("positive", "goods"),
    ("negative", "chores"),
    ("pos_bivalued", "positive"),
    ("pos_bivalued", "bivalued"),
    ("neg_bivalued", "negative"),
    ("neg_bivalued", "bivalued"),
    ("mixed_bivalued", "bivalued"),
    ("binary", "goods"),
    ("binary", "bivalued"),
    ("binary", "tribool"),
    ("neg_binary", "chores"),
    ("neg_binary", "bivalued"),
    ("neg_binary", "tribool"),
    ("plus_minus_one", "mixed_bivalued"),
    ("plus_minus_one", "tribool"),
    ("all_ones", "pos_bivalued"),
    ("all_ones", "binary"),
    ("all_ones", "plus_minus_one"),
    ("all_neg_ones", "neg_bivalued"),
    ("all_neg_ones", "neg_binary"),
    ("all_neg_ones", "plus_minus_one"),
)


def _closure(nodes: tuple[str, ...], edges: tuple[tuple[str, str], ...]) -> dict[str, frozenset[str]]:
    """Reflexive-transitive closure: node -> set of ancestors (including itself)."""
    parents: dict[str, set[str]] = {u: set() for u in nodes}
    for child, parent in edges:
        if child not in parents or parent not in parents:
            raise ValueError(f"edge ({child}, {parent}) references unknown node")
        parents[child].add(parent)
    result: dict[str, frozenset[str]] = {}

    def ancestors(u: str, seen: tuple[str, ...]) -> frozenset[str]:
        if u in seen:
            raise ValueError(f"cycle through {u} in class poset")
        if u in result:
            return result[u]
        acc = {u}
        for p in parents[u]:
            acc |= ancestors(p, seen + (u,))
        result[u] = frozenset(acc)
        return result[u]

    for u in nodes:
        ancestors(u, ())
    return result


class SettingSpace:
    """Holds the per-feature posets and answers order queries on settings."""

    def __init__(
        self,
        valuation_nodes: tuple[str, ...] = VALUATION_CLASSES,
        valuation_edges: tuple[tuple[str, str], ...] = VALUATION_EDGES,
        marginal_nodes: tuple[str, ...] = MARGINAL_CLASSES,
        marginal_edges: tuple[tuple[str, str], ...] = MARGINAL_EDGES,
    ) -> None:
        self.valuation_nodes = valuation_nodes
        self.valuation_edges = valuation_edges
        self.marginal_nodes = marginal_nodes
        self.marginal_edges = marginal_edges
        self.valuation_up = _closure(valuation_nodes, valuation_edges)
        self.marginal_up = _closure(marginal_nodes, marginal_edges)

    def valuation_leq(self, a: str, b: str) -> bool:
        return b in self.valuation_up[a]

    def marginal_leq(self, a: str, b: str) -> bool:
        return b in self.marginal_up[a]

    def setting_leq(self, s: "Setting", t: "Setting") -> bool:
        return (
            _bool_leq(s.equal_entitlements, t.equal_entitlements)
            and _bool_leq(s.two_agents, t.two_agents)
            and _bool_leq(s.identical_valuations, t.identical_valuations)
            and self.valuation_leq(s.valuation_class, t.valuation_class)
            and self.marginal_leq(s.marginal_class, t.marginal_class)
        )

    def all_settings(self) -> list["Setting"]:
        return [
            Setting(ee, two, ident, vc, mc)
            for ee in (True, None)
            for two in (True, None)
            for ident in (True, None)
            for vc in self.valuation_nodes
            for mc in self.marginal_nodes
        ]

    def validate_setting(self, s: "Setting") -> list[str]:
        errors = []
        if s.valuation_class not in self.valuation_up:
            errors.append(f"unknown valuation class {s.valuation_class!r}")
        if s.marginal_class not in self.marginal_up:
            errors.append(f"unknown marginal class {s.marginal_class!r}")
        for name, v in (
            ("equal_entitlements", s.equal_entitlements),
            ("two_agents", s.two_agents),
            ("identical_valuations", s.identical_valuations),
        ):
            if v not in (True, None):
                errors.append(f"{name} must be true or unknown, got {v!r}")
        return errors

    def lint(self, s: "Setting") -> list[str]:
        """Warn when an equivalent strictly smaller setting exists."""
        warnings = []
        if s.marginal_class in ("all_ones", "all_neg_ones"):
            suggested = replace(s, valuation_class="additive", identical_valuations=True)
            if suggested != s and self.setting_leq(suggested, s):
                warnings.append(
                    f"marginals {s.marginal_class!r} force additive identical "
                    f"valuations; querying the smaller equivalent setting "
                    f"{setting_to_json(suggested)} is more informative"
                )
        if s.valuation_class == "unit_demand" and not self.marginal_leq(
            s.marginal_class, "goods"
        ):
            suggested = replace(s, marginal_class="goods")
            warnings.append(
                "unit-demand valuations have non-negative marginals; querying "
                f"with {setting_to_json(suggested)} is more informative"
            )
        return warnings


def _bool_leq(a: bool | None, b: bool | None) -> bool:
    return b is None or a is True


@dataclass(frozen=True)
class Setting:
    equal_entitlements: bool | None
    two_agents: bool | None
    identical_valuations: bool | None
    valuation_class: str
    marginal_class: str


TOP = Setting(None, None, None, "general", "general")

DEFAULT_SPACE = SettingSpace()


def setting_leq(s: Setting, t: Setting) -> bool:
    return DEFAULT_SPACE.setting_leq(s, t)


def setting_to_json(s: Setting) -> dict:
    return {
        "entitlements": "equal" if s.equal_entitlements else "any",
        "agents": "two" if s.two_agents else "any",
        "identical": True if s.identical_valuations else None,
        "valuation": s.valuation_class,
        "marginals": s.marginal_class,
    }


def setting_from_json(data: dict) -> Setting:
    ent = data.get("entitlements", "any")
    if ent not in ("equal", "any"):
        raise ValueError(f"entitlements must be 'equal' or 'any', got {ent!r}")
    agents = data.get("agents", "any")
    if agents not in ("two", "any"):
        raise ValueError(f"agents must be 'two' or 'any', got {agents!r}")
    ident = data.get("identical")
    if ident not in (True, None):
        raise ValueError(f"identical must be true or null, got {ident!r}")
    valuation = data.get("valuation", "general")
    marginals = data.get("marginals", "general")
    s = Setting(
        equal_entitlements=True if ent == "equal" else None,
        two_agents=True if agents == "two" else None,
        identical_valuations=ident,
        valuation_class=valuation,
        marginal_class=marginals,
    )
    errors = DEFAULT_SPACE.validate_setting(s)
    if errors:
        raise ValueError("; ".join(errors))
    return s
