import { describe, expect, it } from "vitest";

import { GameFlow } from "../src/flow.js";
import { FakeService } from "./fakes.js";

function memoryStorage() {
  const data = new Map<string, string>();
  return {
    getItem: (key: string) => data.get(key) ?? null,
    setItem: (key: string, value: string) => void data.set(key, value),
    removeItem: (key: string) => void data.delete(key),
  };
}

describe("GameFlow", () => {
  it("walks a Game I session to resolution and records history", async () => {
    const service = new FakeService();
    service.script = [["R", "L"]]; // car at R: host forced to open L
    const flow = new GameFlow(service);

    await flow.newGame("I", "1/2");
    expect(flow.state().session?.phase).toBe("awaiting_pick");
    await flow.pick();
    expect(flow.state().session?.phase).toBe("awaiting_decision");
    expect(flow.state().session?.host_opened).toBe("L");
    await flow.decide("switch");

    const state = flow.state();
    expect(state.session?.phase).toBe("resolved");
    expect(state.session?.outcome).toBe("win");
    expect(state.history).toEqual([
      { variant: "I", q: "1/2", opened: "L", decision: "switch", outcome: "win" },
    ]);
  });

  it("keeps history append-only across games", async () => {
    const service = new FakeService();
    service.script = [
      ["T", "R"],
      ["L", "R"],
    ];
    const flow = new GameFlow(service);
    for (let game = 0; game < 2; game++) {
      await flow.newGame("II", "1/4");
      await flow.pick();
      await flow.decide("stay");
    }
    const history = flow.state().history;
    expect(history).toHaveLength(2);
    expect(history[0].outcome).toBe("win"); // stayed with car at T
    expect(history[1].outcome).toBe("lose");
  });

  it("turns connection failures into a retryable banner without touching history", async () => {
    const service = new FakeService();
    service.script = [["L", "R"], ["L", "R"]];
    const flow = new GameFlow(service);
    await flow.newGame("I", "1/2");
    await flow.pick();
    await flow.decide("switch");
    expect(flow.state().history).toHaveLength(1);

    service.failNext = 1;
    await flow.newGame("I", "1/2");
    const failed = flow.state();
    expect(failed.banner).toMatch(/connection failed/);
    expect(failed.history).toHaveLength(1); // unchanged

    await flow.newGame("I", "1/2"); // retry succeeds
    const retried = flow.state();
    expect(retried.banner).toBeNull();
    expect(retried.session?.phase).toBe("awaiting_pick");
  });

  it("shows the service's message for phase conflicts", async () => {
    const service = new FakeService();
    service.script = [["L", "R"]];
    const flow = new GameFlow(service);
    await flow.newGame("I", "1/2");
    await flow.decide("switch"); // decision before pick: 409 from the service
    expect(flow.state().banner).toMatch(/decision not allowed/);
    expect(flow.state().session?.phase).toBe("awaiting_pick");
  });

  it("restores an in-flight session after a reload, preserving phase", async () => {
    const service = new FakeService();
    service.script = [["T", "R"]];
    const storage = memoryStorage();

    const before = new GameFlow(service, storage);
    await before.newGame("I", "3/4");
    await before.pick();
    expect(before.state().session?.phase).toBe("awaiting_decision");

    // Same storage, fresh controller: the reload path.
    const after = new GameFlow(service, storage);
    await after.restore();
    expect(after.state().session?.phase).toBe("awaiting_decision");
    expect(after.state().session?.id).toBe(before.state().session?.id);
  });

  it("discards storage for resolved or unknown sessions on restore", async () => {
    const service = new FakeService();
    service.script = [["L", "R"]];
    const storage = memoryStorage();
    const flow = new GameFlow(service, storage);
    await flow.newGame("I", "1/2");
    await flow.pick();
    await flow.decide("switch");
    expect(storage.getItem("montyhall.session_id")).toBeNull();

    storage.setItem("montyhall.session_id", "gone");
    const fresh = new GameFlow(service, storage);
    await fresh.restore();
    expect(fresh.state().session).toBeNull();
    expect(storage.getItem("montyhall.session_id")).toBeNull();
  });
});
