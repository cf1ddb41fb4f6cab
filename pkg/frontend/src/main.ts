/** Wire the setting form to the query service and keep the view current. */

import { renderResponse } from "./render";
import { postQuery, QueryController } from "./state";
import type { MetaResponse, SettingJson } from "./types";

interface DropdownSpec {
  id: string;
  label: string;
  options: { value: string; label: string }[];
}

function dropdowns(meta: MetaResponse): DropdownSpec[] {
  return [
    {
      id: "entitlements",
      label: "Entitlements",
      options: meta.features.entitlements.map((v) => ({ value: v, label: v })),
    },
    {
      id: "agents",
      label: "Agents",
      options: meta.features.agents.map((v) => ({ value: v, label: v })),
    },
    {
      id: "identical",
      label: "Identical valuations",
      options: meta.features.identical.map((v) => ({
        value: v === null ? "any" : "identical",
        label: v === null ? "any" : "identical",
      })),
    },
    {
      id: "valuation",
      label: "Valuation class",
      options: meta.posets.valuation.nodes.map((v) => ({ value: v, label: v })),
    },
    {
      id: "marginals",
      label: "Marginal class",
      options: meta.posets.marginal.nodes.map((v) => ({ value: v, label: v })),
    },
  ];
}

export function currentSetting(form: HTMLElement): SettingJson {
  const pick = (id: string) =>
    (form.querySelector(`select[data-feature="${id}"]`) as HTMLSelectElement)
      .value;
  return {
    entitlements: pick("entitlements") as SettingJson["entitlements"],
    agents: pick("agents") as SettingJson["agents"],
    identical: pick("identical") === "identical" ? true : null,
    valuation: pick("valuation"),
    marginals: pick("marginals"),
  };
}

export function buildForm(
  meta: MetaResponse,
  form: HTMLElement,
  onChange: () => void,
): void {
  form.replaceChildren();
  for (const spec of dropdowns(meta)) {
    const wrapper = document.createElement("label");
    wrapper.className = "feature";
    const caption = document.createElement("span");
    caption.textContent = spec.label;
    const select = document.createElement("select");
    select.dataset.feature = spec.id;
    for (const option of spec.options) {
      const el = document.createElement("option");
      el.value = option.value;
      el.textContent = option.label;
      select.appendChild(el);
    }
    select.addEventListener("change", onChange);
    wrapper.append(caption, select);
    form.appendChild(wrapper);
  }
}

export async function start(doc: Document = document): Promise<void> {
  const form = doc.getElementById("form")!;
  const graph = doc.getElementById("graph")!;
  const panel = doc.getElementById("open-pairs")!;
  const warnings = doc.getElementById("warnings")!;
  const error = doc.getElementById("error")!;

  const controller = new QueryController(postQuery);

  const refresh = async () => {
    const outcome = await controller.run(currentSetting(form));
    if (outcome.kind === "stale") return;
    if (outcome.kind === "error") {
      // Leave the previous graph and the user's selection untouched.
      error.textContent = `Query failed: ${outcome.message}`;
      return;
    }
    error.textContent = "";
    renderResponse(outcome.response, graph, panel, warnings);
  };

  try {
    const resp = await fetch("/api/meta");
    if (!resp.ok) throw new Error(`${resp.status} ${resp.statusText}`);
    const meta = (await resp.json()) as MetaResponse;
    buildForm(meta, form, () => void refresh());
  } catch (err) {
    error.textContent = `Cannot load metadata: ${
      err instanceof Error ? err.message : String(err)
    }`;
    return;
  }
  await refresh();
}

if (typeof window !== "undefined" && document.getElementById("form")) {
  void start();
}
