/** Query dispatch with a latest-wins policy.
 *
 * The UI issues at most one *applied* query at a time: responses to
 * superseded requests are dropped, so a slow early answer can never
 * overwrite a fast later one.
 */

import type { QueryResponse, SettingJson } from "./types";

export type Fetcher = (setting: SettingJson) => Promise<QueryResponse>;

export type QueryOutcome =
  | { kind: "ok"; response: QueryResponse }
  | { kind: "error"; message: string }
  | { kind: "stale" };

export class QueryController {
  private sequence = 0;

  constructor(private readonly fetcher: Fetcher) {}

  async run(setting: SettingJson): Promise<QueryOutcome> {
    const ticket = ++this.sequence;
    try {
      const response = await this.fetcher(setting);
      if (ticket !== this.sequence) return { kind: "stale" };
      return { kind: "ok", response };
    } catch (err) {
      if (ticket !== this.sequence) return { kind: "stale" };
      const message = err instanceof Error ? err.message : String(err);
      return { kind: "error", message };
    }
  }
}

export async function postQuery(setting: SettingJson): Promise<QueryResponse> {
  const resp = await fetch("/api/query", {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify({ setting }),
  });
  if (!resp.ok) {
    let detail = `${resp.status} ${resp.statusText}`;
    try {
      const body = await resp.json();
      if (body && typeof body.detail === "string") detail = body.detail;
    } catch {
      // keep the status line
    }
    throw new Error(detail);
  }
  return (await resp.json()) as QueryResponse;
}
