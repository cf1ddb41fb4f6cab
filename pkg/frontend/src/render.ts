/** Render a query response into the DOM.
 *
 * Visual convention mirrors the DOT emitter: feasible classes are green
 * rounded boxes, infeasible classes are borderless red labels, open classes
 * are gray boxes.  Hovering an edge shows the citation chain backing it.
 */

import { layoutDag } from "./layout";
import type { Dag, DagNode, QueryResponse } from "./types";

const SVG_NS = "http://www.w3.org/2000/svg";

function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) el.setAttribute(k, v);
  return el;
}

const NODE_STYLE: Record<DagNode["feasibility"], { rect: boolean; cls: string }> = {
  feasible: { rect: true, cls: "feasible" },
  infeasible: { rect: false, cls: "infeasible" },
  open: { rect: true, cls: "open" },
};

export function renderDag(dag: Dag): SVGSVGElement {
  const layout = layoutDag(dag);
  const svg = svgEl("svg", {
    viewBox: `0 0 ${layout.width} ${layout.height}`,
    width: String(layout.width),
    height: String(layout.height),
  });
  const defs = svgEl("defs");
  const marker = svgEl("marker", {
    id: "arrow",
    viewBox: "0 0 10 10",
    refX: "9",
    refY: "5",
    markerWidth: "7",
    markerHeight: "7",
    orient: "auto-start-reverse",
  });
  marker.appendChild(svgEl("path", { d: "M 0 0 L 10 5 L 0 10 z" }));
  defs.appendChild(marker);
  svg.appendChild(defs);

  const center = (id: string) => {
    const p = layout.positions.get(id)!;
    return {
      x: p.x + layout.nodeWidth.get(id)! / 2,
      top: p.y,
      bottom: p.y + layout.nodeHeight.get(id)!,
    };
  };

  for (const edge of dag.edges) {
    const a = center(edge.from);
    const b = center(edge.to);
    const group = svgEl("g", { class: "edge" });
    group.dataset.from = edge.from;
    group.dataset.to = edge.to;
    const midY = (a.bottom + b.top) / 2;
    const path = svgEl("path", {
      d: `M ${a.x} ${a.bottom} C ${a.x} ${midY}, ${b.x} ${midY}, ${b.x} ${b.top}`,
      "marker-end": "url(#arrow)",
    });
    // <title> is the SVG-native hover tooltip: the provenance chain.
    const title = svgEl("title");
    title.textContent = edge.refs.join("; ");
    path.appendChild(title);
    group.appendChild(path);
    svg.appendChild(group);
  }

  for (const node of dag.nodes) {
    const p = layout.positions.get(node.id)!;
    const w = layout.nodeWidth.get(node.id)!;
    const h = layout.nodeHeight.get(node.id)!;
    const style = NODE_STYLE[node.feasibility];
    const group = svgEl("g", { class: `node ${style.cls}` });
    group.dataset.id = node.id;
    if (style.rect) {
      group.appendChild(
        svgEl("rect", {
          x: String(p.x),
          y: String(p.y),
          width: String(w),
          height: String(h),
          rx: node.feasibility === "feasible" ? "9" : "0",
        }),
      );
    }
    const text = svgEl("text", {
      x: String(p.x + w / 2),
      y: String(p.y + 14),
      "text-anchor": "middle",
    });
    node.members.forEach((member, i) => {
      const tspan = svgEl("tspan", {
        x: String(p.x + w / 2),
        dy: i === 0 ? "0" : "16",
      });
      tspan.textContent = member;
      text.appendChild(tspan);
    });
    group.appendChild(text);
    svg.appendChild(group);
  }
  return svg;
}

export function renderOpenPairs(pairs: [string, string][]): HTMLElement {
  const panel = document.createElement("div");
  panel.className = "open-pairs";
  const heading = document.createElement("h2");
  heading.textContent = `Open pairs (${pairs.length})`;
  panel.appendChild(heading);
  const list = document.createElement("ul");
  for (const [a, b] of pairs) {
    const item = document.createElement("li");
    item.textContent = `${a} vs ${b}`;
    list.appendChild(item);
  }
  if (pairs.length === 0) {
    const item = document.createElement("li");
    item.className = "none";
    item.textContent = "none — every pair is resolved";
    list.appendChild(item);
  }
  panel.appendChild(list);
  return panel;
}

export function renderResponse(
  response: QueryResponse,
  graphHost: HTMLElement,
  panelHost: HTMLElement,
  warningsHost: HTMLElement,
): void {
  graphHost.replaceChildren(renderDag(response.dag));
  panelHost.replaceChildren(renderOpenPairs(response.open_pairs));
  warningsHost.replaceChildren();
  for (const warning of response.warnings) {
    const div = document.createElement("div");
    div.className = "warning";
    div.textContent = warning;
    warningsHost.appendChild(div);
  }
}
