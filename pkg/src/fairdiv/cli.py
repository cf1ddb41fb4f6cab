"""Command-line front end.

Commands:

- ``query``   print the implication DAG for a setting (DOT or JSON),
- ``verify``  re-check every shipped counterexample witness with the oracle,
- ``shares``  print the share values of each agent of a concrete instance.

Exit codes: 0 ok, 1 verification failure, 2 KB inconsistency, 64 usage
error, 65 data error (unreadable KB or instance file).
"""

from __future__ import annotations

import dataclasses
import json
import random
import sys

import click

from .api import query_response_json
from .dag import build_dag, emit
from .engine import InconsistencyError, query
from .kb import ENV_KB_PATH, KbError, load_kb
from .model import instance_from_json
from .notions import (
    DEFAULT_BUDGETS,
    BudgetExceeded,
    NoFairAllocation,
    min_share,
    proportional_share,
    share_aps,
    share_pessshare,
    share_wmms,
)
from .oracle import verify_witness
from .rational import format_rational
from .settings import MARGINAL_CLASSES, VALUATION_CLASSES, Setting

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INCONSISTENT = 2
EXIT_USAGE = 64
EXIT_DATA = 65


class _DataError(Exception):
    pass


def _load_kb(path: str | None):
    try:
        return load_kb(path)
    except (KbError, OSError) as exc:
        raise _DataError(f"cannot load knowledge base: {exc}") from exc


def _budgets(budget: int | None):
    if budget is None:
        return DEFAULT_BUDGETS
    return dataclasses.replace(DEFAULT_BUDGETS, allocation_leaves=budget)


@click.group()
@click.option(
    "--kb",
    "kb_path",
    envvar=ENV_KB_PATH,
    default=None,
    help="Path to a knowledge-base JSON file (default: packaged dataset).",
)
@click.option(
    "--budget",
    type=click.IntRange(min=1),
    default=None,
    help="Allocation-enumeration budget for brute-force checks.",
)
@click.option(
    "--seed",
    type=int,
    default=None,
    help="Seed for any randomized subroutine (reproducibility).",
)
@click.pass_context
def cli(ctx, kb_path, budget, seed):
    """Fair-division implication workbench."""
    if seed is not None:
        random.seed(seed)
    ctx.obj = {"kb_path": kb_path, "budgets": _budgets(budget)}


@cli.command("query")
@click.option(
    "--valuation",
    type=click.Choice(VALUATION_CLASSES),
    default="general",
    show_default=True,
)
@click.option(
    "--marginals",
    type=click.Choice(MARGINAL_CLASSES),
    default="general",
    show_default=True,
)
@click.option("--identical", is_flag=True, help="Identical valuations.")
@click.option("--two-agents", is_flag=True, help="Exactly two agents.")
@click.option(
    "--entitlements",
    type=click.Choice(["equal", "any"]),
    default="any",
    show_default=True,
)
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["dot", "json"]),
    default="json",
    show_default=True,
)
@click.pass_context
def cmd_query(ctx, valuation, marginals, identical, two_agents, entitlements, fmt):
    """Print inferred implications, counterexamples, and feasibility."""
    kb = _load_kb(ctx.obj["kb_path"])
    setting = Setting(
        equal_entitlements=True if entitlements == "equal" else None,
        two_agents=True if two_agents else None,
        identical_valuations=True if identical else None,
        valuation_class=valuation,
        marginal_class=marginals,
    )
    result = query(kb, setting)
    if fmt == "dot":
        click.echo(emit(build_dag(result), "dot"), nl=False)
    else:
        click.echo(
            json.dumps(query_response_json(kb, result), indent=2, sort_keys=True)
        )


@cli.command("verify")
@click.pass_context
def cmd_verify(ctx):
    """Re-check every witnessed counterexample in the knowledge base."""
    kb = _load_kb(ctx.obj["kb_path"])
    budgets = ctx.obj["budgets"]
    failures = 0
    for idx, fact in enumerate(kb.facts):
        if fact.kind != "not_implies":
            continue
        label = f"facts[{idx}] {fact.f1} -/-> {fact.f2} ({fact.ref})"
        if fact.witness is None:
            click.echo(f"SKIP  {label}: no witness")
            continue
        result = verify_witness(fact, budgets)
        if result.ok:
            click.echo(f"PASS  {label}")
        else:
            failures += 1
            click.echo(f"FAIL  {label}: {'; '.join(result.diagnostics)}")
    click.echo(f"{failures} failure(s)")
    if failures:
        sys.exit(EXIT_VERIFY_FAILED)


_SHARE_COLUMNS = ("PROP", "WMMS", "pessShare", "APS", "minEF", "minEF1", "minEFX")


def _share_value(inst, i, column, budgets):
    try:
        if column == "PROP":
            value = proportional_share(inst, i)
        elif column == "WMMS":
            value = share_wmms(inst, i, budgets)
        elif column == "pessShare":
            value = share_pessshare(inst, i, budgets)
        elif column == "APS":
            value = share_aps(inst, i, budgets)
        else:
            value = min_share(column.removeprefix("min"), inst, i, budgets)
    except BudgetExceeded:
        return "budget"
    except NoFairAllocation:
        return "none"
    return format_rational(value)


@cli.command("shares")
@click.argument("instance_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--agent", type=int, default=None, help="Only this agent (0-based).")
@click.pass_context
def cmd_shares(ctx, instance_file, agent):
    """Print exact share values for an instance JSON file."""
    budgets = ctx.obj["budgets"]
    try:
        with open(instance_file, encoding="utf-8") as fh:
            inst = instance_from_json(json.load(fh))
    except (OSError, ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise _DataError(f"cannot read instance: {exc}") from exc
    if agent is not None and not 0 <= agent < inst.n:
        raise click.UsageError(f"agent must be in [0, {inst.n})")
    agents = range(inst.n) if agent is None else [agent]
    header = ["agent", *_SHARE_COLUMNS]
    rows = [
        [str(i)] + [_share_value(inst, i, c, budgets) for c in _SHARE_COLUMNS]
        for i in agents
    ]
    widths = [
        max(len(r[c]) for r in [header] + rows) for c in range(len(header))
    ]
    for row in [header] + rows:
        click.echo("  ".join(cell.rjust(w) for cell, w in zip(row, widths)))


def main(argv=None):
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.UsageError as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        if exc.ctx is not None:
            click.echo(exc.ctx.get_usage(), err=True)
        sys.exit(EXIT_USAGE)
    except click.ClickException as exc:
        exc.show()
        sys.exit(EXIT_USAGE)
    except click.exceptions.Abort:
        sys.exit(EXIT_USAGE)
    except InconsistencyError as exc:
        click.echo(f"knowledge base inconsistency: {exc}", err=True)
        sys.exit(EXIT_INCONSISTENT)
    except _DataError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_DATA)


if __name__ == "__main__":
    main()
