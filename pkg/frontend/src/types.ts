/** JSON shapes produced by the query service. */

export type Feasibility = "feasible" | "infeasible" | "open";

export interface DagNode {
  id: string;
  members: string[];
  feasibility: Feasibility;
}

export interface DagEdge {
  from: string;
  to: string;
  refs: string[];
}

export interface Dag {
  nodes: DagNode[];
  edges: DagEdge[];
  nonimplications: { from: string; to: string; refs: string[] }[];
  open_pairs: [string, string][];
}

export interface SettingJson {
  entitlements: "any" | "equal";
  agents: "any" | "two";
  identical: true | null;
  valuation: string;
  marginals: string;
}

export interface QueryResponse {
  setting: SettingJson;
  dag: Dag;
  feasibility: Record<string, { status: Feasibility; refs: string[] }>;
  open_pairs: [string, string][];
  warnings: string[];
}

export interface MetaResponse {
  notions: string[];
  features: {
    entitlements: string[];
    agents: string[];
    identical: (true | null)[];
  };
  posets: {
    valuation: { nodes: string[]; edges: [string, string][] };
    marginal: { nodes: string[]; edges: [string, string][] };
  };
  kb_hash: string;
}
