// Offline parity: the embedded core and the service-backed build must return
// identical CheckResponse payloads for every fixture script, in both modes.

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { handleCheck } from "../src/core/check";
import { FIXTURE_SCRIPTS, oversizedScript } from "./fixtures";
import { ServiceHandle, serviceCheck, startService } from "./service";

let service: ServiceHandle;

beforeAll(async () => {
  service = await startService();
}, 30000);

afterAll(() => {
  service?.stop();
});

describe("embedded core matches the check service", () => {
  for (const [name, text] of Object.entries(FIXTURE_SCRIPTS)) {
    for (const mode of ["full", "prefix"] as const) {
      it(`${name} (${mode})`, async () => {
        const embedded = handleCheck(text, mode);
        const served = await serviceCheck(service.url, text, mode);
        expect(embedded).toEqual(served);
      });
    }
  }

  it("oversized body (full)", async () => {
    const text = oversizedScript();
    const embedded = handleCheck(text, "full");
    const served = await serviceCheck(service.url, text, "full");
    expect(embedded).toEqual(served);
    expect(embedded.status).toBe("parse_error");
    expect(embedded.diagnostics[0].code).toBe("BODY_TOO_LARGE");
  });
});
