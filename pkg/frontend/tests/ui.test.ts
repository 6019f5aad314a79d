// @vitest-environment jsdom
//
// Interaction tests for the reveal-order rules: variant II must collect the
// decision while every door is still closed; variant I must show the
// opened door before the decision controls exist.

import { beforeEach, describe, expect, it } from "vitest";

import { GameFlow } from "../src/flow.js";
import { mountApp } from "../src/ui.js";
import { FakeService, rational, theoryBucket } from "./fakes.js";

function flushAsync(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}

function click(root: HTMLElement, selector: string): void {
  const element = root.querySelector<HTMLElement>(selector);
  if (!element) throw new Error(`nothing matches ${selector}`);
  element.dispatchEvent(new MouseEvent("click", { bubbles: true }));
}

describe("mountApp", () => {
  let root: HTMLElement;
  let service: FakeService;
  let flow: GameFlow;

  beforeEach(() => {
    document.body.innerHTML = `<div id="app"></div>`;
    root = document.getElementById("app")!;
    service = new FakeService();
    service.statsResponse = {
      buckets: [theoryBucket(1, 2, rational(2, 3)), theoryBucket(1, 1, rational(1, 2))],
    };
    flow = new GameFlow(service);
  });

  async function startGame(variant: "I" | "II", script: Array<["T" | "L" | "R", "L" | "R"]>) {
    service.script = script;
    mountApp(root, service, flow, { variant, q: "1/2" });
    await flushAsync();
    click(root, '[data-action="new-game"]');
    await flushAsync();
    click(root, '[data-action="pick"]');
    await flushAsync();
  }

  it("variant II collects the decision while every door is closed", async () => {
    await startGame("II", [["T", "R"]]);

    // Decision controls exist now, before any reveal.
    const controls = root.querySelectorAll("[data-action='decide']");
    expect(controls).toHaveLength(2);
    // And no door anywhere is open.
    expect(root.querySelectorAll('[data-door-state="open"]')).toHaveLength(0);
    expect(root.textContent).toContain("before any door opens");

    click(root, '[data-decision="switch"]');
    await flushAsync();

    // Only at resolution does a door open (and the car appear).
    expect(root.querySelectorAll('[data-door-state="open"]').length).toBeGreaterThan(0);
    expect(root.textContent).toContain("you lose");
  });

  it("variant I shows the opened door before asking for the decision", async () => {
    await startGame("I", [["L", "R"]]); // car at L forces door R open

    const opened = root.querySelector('[data-door-state="open"]');
    expect(opened?.getAttribute("data-box")).toBe("R");
    expect(root.querySelectorAll("[data-action='decide']")).toHaveLength(2);
    expect(root.textContent).toContain("host opened door R");

    click(root, '[data-decision="switch"]');
    await flushAsync();
    expect(root.textContent).toContain("you win");
    expect(root.querySelector("#history-list")?.children).toHaveLength(1);
  });

  it("never renders the car before resolution", async () => {
    await startGame("I", [["L", "R"]]);
    expect(root.querySelector(".box-contents")?.textContent).toBe("goat");
    expect(root.textContent).not.toContain("car was behind");
    click(root, '[data-decision="stay"]');
    await flushAsync();
    expect(root.textContent).toContain("the car was behind L");
  });

  it("offers a retry that re-runs the failed step", async () => {
    service.script = [["R", "L"]];
    mountApp(root, service, flow, { variant: "I", q: "1/2" });
    await flushAsync();

    service.failNext = 1;
    click(root, '[data-action="new-game"]');
    await flushAsync();
    expect(root.querySelector(".banner")).not.toBeNull();

    click(root, '[data-action="retry"]');
    await flushAsync();
    expect(root.querySelector(".banner")).toBeNull();
    expect(root.querySelectorAll('[data-action="pick"]')).toHaveLength(3);
  });

  it("renders the theory note for the current bias from service data", async () => {
    mountApp(root, service, flow, { variant: "I", q: "1/2" });
    await flushAsync();
    expect(root.querySelector("#theory-note")?.textContent).toContain(
      "switch after R wins 2/3 in theory",
    );
    expect(root.querySelector("#chart svg")).not.toBeNull();
  });

  it("q slider endpoint highlights the 1/2 posterior from the service", async () => {
    mountApp(root, service, flow, { variant: "I", q: "1/2" });
    await flushAsync();
    const slider = root.querySelector<HTMLInputElement>("#q-slider")!;
    slider.value = "4"; // snap position for q = 1
    slider.dispatchEvent(new Event("input", { bubbles: true }));
    await flushAsync();
    expect(root.querySelector("#theory-note")?.textContent).toContain(
      "at q=1: switch after R wins 1/2 in theory",
    );
  });
});
