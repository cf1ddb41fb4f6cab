import { describe, expect, it } from "vitest";

import { assignLayers, layoutDag } from "../src/layout";
import type { Dag } from "../src/types";
import goods from "./fixtures/goods_equal.json";

const goodsDag = (goods as unknown as { dag: Dag }).dag;

function miniDag(): Dag {
  return {
    nodes: [
      { id: "A", members: ["A"], feasibility: "feasible" },
      { id: "B", members: ["B"], feasibility: "open" },
      { id: "C", members: ["C", "D"], feasibility: "infeasible" },
    ],
    edges: [
      { from: "A", to: "B", refs: ["r1"] },
      { from: "B", to: "C", refs: ["r2"] },
    ],
    nonimplications: [],
    open_pairs: [],
  };
}

describe("assignLayers", () => {
  it("puts every edge strictly downward", () => {
    const layers = assignLayers(
      goodsDag.nodes.map((n) => n.id),
      goodsDag.edges,
    );
    for (const e of goodsDag.edges) {
      expect(layers.get(e.from)!).toBeLessThan(layers.get(e.to)!);
    }
  });

  it("sources sit on layer zero", () => {
    const layers = assignLayers(["A", "B", "C"], miniDag().edges);
    expect(layers.get("A")).toBe(0);
    expect(layers.get("B")).toBe(1);
    expect(layers.get("C")).toBe(2);
  });

  it("rejects cycles", () => {
    expect(() =>
      assignLayers(["A", "B"], [
        { from: "A", to: "B" },
        { from: "B", to: "A" },
      ]),
    ).toThrow(/cycle/);
  });
});

describe("layoutDag", () => {
  it("positions every node inside the canvas", () => {
    const layout = layoutDag(goodsDag);
    expect(layout.positions.size).toBe(goodsDag.nodes.length);
    for (const [id, p] of layout.positions) {
      expect(p.x).toBeGreaterThanOrEqual(0);
      expect(p.y).toBeGreaterThanOrEqual(0);
      expect(p.x + layout.nodeWidth.get(id)!).toBeLessThanOrEqual(layout.width);
      expect(p.y + layout.nodeHeight.get(id)!).toBeLessThanOrEqual(
        layout.height,
      );
    }
  });

  it("never overlaps nodes within a layer", () => {
    const layout = layoutDag(goodsDag);
    for (const layer of layout.layers) {
      for (let i = 1; i < layer.length; i++) {
        const prev = layout.positions.get(layer[i - 1])!;
        const prevW = layout.nodeWidth.get(layer[i - 1])!;
        const cur = layout.positions.get(layer[i])!;
        expect(cur.x).toBeGreaterThanOrEqual(prev.x + prevW);
      }
    }
  });

  it("is deterministic for identical input", () => {
    const a = layoutDag(goodsDag);
    const b = layoutDag(goodsDag);
    expect([...a.positions.entries()]).toEqual([...b.positions.entries()]);
    expect(a.layers).toEqual(b.layers);
  });

  it("taller labels get taller boxes", () => {
    const layout = layoutDag(miniDag());
    expect(layout.nodeHeight.get("C")!).toBeGreaterThan(
      layout.nodeHeight.get("A")!,
    );
  });
});
