// The check boundary: the same CheckResponse schema whether computed by the
// embedded core (offline) or fetched from a local service endpoint.

import { CheckMode, CheckResponse, handleCheck } from "./core/check";

export interface CheckBackend {
  readonly label: string;
  check(scriptText: string, mode: CheckMode): Promise<CheckResponse>;
}

export class EmbeddedBackend implements CheckBackend {
  readonly label = "embedded";

  check(scriptText: string, mode: CheckMode): Promise<CheckResponse> {
    return Promise.resolve(handleCheck(scriptText, mode));
  }
}

export class HttpBackend implements CheckBackend {
  readonly label: string;

  constructor(private endpoint: string) {
    this.label = endpoint;
  }

  async check(scriptText: string, mode: CheckMode): Promise<CheckResponse> {
    const resp = await fetch(`${this.endpoint}/v1/check`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ script_text: scriptText, mode }),
    });
    if (!resp.ok) {
      throw new Error(`check service responded with HTTP ${resp.status}`);
    }
    return (await resp.json()) as CheckResponse;
  }
}
