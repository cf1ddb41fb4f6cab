"""Shared JSON shapes for the CLI and the HTTP service.

Both front ends serialize query results through this module, so
``fairdiv query --format json`` and ``POST /api/query`` agree byte-for-byte
(modulo whitespace).
"""

from __future__ import annotations

import hashlib

from .dag import build_dag, dag_to_json
from .engine import QueryResult
from .kb import KnowledgeBase, kb_to_text
from .settings import setting_to_json


def query_response_json(kb: KnowledgeBase, result: QueryResult) -> dict:
    dag = build_dag(result)
    return {
        "setting": setting_to_json(result.setting),
        "dag": dag_to_json(dag),
        "feasibility": {
            notion: {
                "status": result.feasibility[notion],
                "refs": [
                    f.ref for f in result.feasibility_provenance[notion]
                ],
            }
            for notion in sorted(result.feasibility)
        },
        "open_pairs": [list(p) for p in result.open_pairs],
        "warnings": kb.space.lint(result.setting),
    }


def kb_hash(kb: KnowledgeBase) -> str:
    return hashlib.sha256(kb_to_text(kb).encode("utf-8")).hexdigest()


def meta_json(kb: KnowledgeBase) -> dict:
    return {
        "notions": list(kb.notions),
        "features": {
            "entitlements": ["any", "equal"],
            "agents": ["any", "two"],
            "identical": [None, True],
        },
        "posets": {
            "valuation": {
                "nodes": list(kb.space.valuation_nodes),
                "edges": [list(e) for e in kb.space.valuation_edges],
            },
            "marginal": {
                "nodes": list(kb.space.marginal_nodes),
                "edges": [list(e) for e in kb.space.marginal_edges],
            },
        },
        "kb_hash": kb_hash(kb),
    }
