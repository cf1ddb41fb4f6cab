/** Layered (Sugiyama-style) layout for the implication DAG.
 *
 * Longest-path layering, a few barycenter ordering sweeps, then evenly
 * spaced coordinates with each layer centered.  Purely deterministic:
 * identical input graphs always yield identical geometry.
 */

import type { Dag } from "./types";

export interface Point {
  x: number;
  y: number;
}

export interface Layout {
  positions: Map<string, Point>;
  layers: string[][];
  width: number;
  height: number;
  nodeWidth: Map<string, number>;
  nodeHeight: Map<string, number>;
}

const CHAR_W = 8.5;
const LINE_H = 16;
const PAD_X = 14;
const PAD_Y = 10;
const GAP_X = 28;
const GAP_Y = 56;
const MARGIN = 24;

export function assignLayers(
  ids: string[],
  edges: { from: string; to: string }[],
): Map<string, number> {
  const preds = new Map<string, string[]>(ids.map((id) => [id, []]));
  for (const e of edges) preds.get(e.to)?.push(e.from);
  const layer = new Map<string, number>();
  const visiting = new Set<string>();
  const depth = (id: string): number => {
    const known = layer.get(id);
    if (known !== undefined) return known;
    if (visiting.has(id)) throw new Error(`cycle through ${id}`);
    visiting.add(id);
    const ps = preds.get(id) ?? [];
    const d = ps.length === 0 ? 0 : 1 + Math.max(...ps.map(depth));
    visiting.delete(id);
    layer.set(id, d);
    return d;
  };
  for (const id of ids) depth(id);
  return layer;
}

function orderLayers(
  layerOf: Map<string, number>,
  edges: { from: string; to: string }[],
): string[][] {
  const depth = Math.max(0, ...layerOf.values());
  const layers: string[][] = Array.from({ length: depth + 1 }, () => []);
  for (const id of [...layerOf.keys()].sort()) {
    layers[layerOf.get(id)!].push(id);
  }
  // Barycenter sweeps: order each layer by the mean index of its
  // neighbors in the adjacent layer, alternating direction.
  const index = new Map<string, number>();
  const reindex = () =>
    layers.forEach((l) => l.forEach((id, i) => index.set(id, i)));
  reindex();
  const neighbors = (id: string, up: boolean) =>
    edges
      .filter((e) => (up ? e.to === id : e.from === id))
      .map((e) => (up ? e.from : e.to));
  for (let sweep = 0; sweep < 4; sweep++) {
    const up = sweep % 2 === 0;
    const order = up
      ? [...layers.keys()].slice(1)
      : [...layers.keys()].slice(0, -1).reverse();
    for (const li of order) {
      layers[li] = [...layers[li]].sort((a, b) => {
        const bary = (id: string) => {
          const ns = neighbors(id, up).map((n) => index.get(n) ?? 0);
          return ns.length ? ns.reduce((s, v) => s + v, 0) / ns.length : index.get(id)!;
        };
        return bary(a) - bary(b) || a.localeCompare(b);
      });
      reindex();
    }
  }
  return layers;
}

export function layoutDag(dag: Dag): Layout {
  const ids = dag.nodes.map((n) => n.id);
  const layerOf = assignLayers(ids, dag.edges);
  const layers = orderLayers(layerOf, dag.edges);

  const nodeWidth = new Map<string, number>();
  const nodeHeight = new Map<string, number>();
  for (const node of dag.nodes) {
    const longest = Math.max(...node.members.map((m) => m.length));
    nodeWidth.set(node.id, longest * CHAR_W + 2 * PAD_X);
    nodeHeight.set(node.id, node.members.length * LINE_H + 2 * PAD_Y);
  }

  const rowWidth = (layer: string[]) =>
    layer.reduce((s, id) => s + nodeWidth.get(id)!, 0) +
    GAP_X * Math.max(0, layer.length - 1);
  const width = Math.max(...layers.map(rowWidth), 0) + 2 * MARGIN;
  const rowHeight = (layer: string[]) =>
    Math.max(0, ...layer.map((id) => nodeHeight.get(id)!));

  const positions = new Map<string, Point>();
  let y = MARGIN;
  for (const layer of layers) {
    let x = (width - rowWidth(layer)) / 2;
    const h = rowHeight(layer);
    for (const id of layer) {
      positions.set(id, { x, y: y + (h - nodeHeight.get(id)!) / 2 });
      x += nodeWidth.get(id)! + GAP_X;
    }
    y += h + GAP_Y;
  }
  const height = y - GAP_Y + MARGIN;
  return { positions, layers, width, height, nodeWidth, nodeHeight };
}
