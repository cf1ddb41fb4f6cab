/** Notion-level reachability helpers over the condensed DAG.
 *
 * The server ships equivalence classes plus a transitive reduction; the UI
 * never infers anything new, but tests (and the tooltip panel) need to ask
 * "does the displayed graph show notion A implying notion B?".
 */

import type { Dag } from "./types";

export function classOf(dag: Dag): Map<string, string> {
  const rep = new Map<string, string>();
  for (const node of dag.nodes) {
    for (const member of node.members) rep.set(member, node.id);
  }
  return rep;
}

/** All (from, to) notion pairs implied by the rendered graph. */
export function impliedPairs(dag: Dag): Set<string> {
  const adjacency = new Map<string, string[]>();
  for (const e of dag.edges) {
    const list = adjacency.get(e.from) ?? [];
    list.push(e.to);
    adjacency.set(e.from, list);
  }
  const membersOf = new Map(dag.nodes.map((n) => [n.id, n.members]));
  const pairs = new Set<string>();
  for (const node of dag.nodes) {
    const seen = new Set([node.id]);
    const stack = [node.id];
    while (stack.length > 0) {
      const current = stack.pop()!;
      for (const next of adjacency.get(current) ?? []) {
        if (!seen.has(next)) {
          seen.add(next);
          stack.push(next);
        }
      }
    }
    for (const from of membersOf.get(node.id)!) {
      for (const repId of seen) {
        for (const to of membersOf.get(repId)!) {
          pairs.add(`${from}->${to}`);
        }
      }
    }
  }
  return pairs;
}

export function implies(dag: Dag, from: string, to: string): boolean {
  return impliedPairs(dag).has(`${from}->${to}`);
}
