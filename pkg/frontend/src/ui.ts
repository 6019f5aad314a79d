// DOM layer: renders the game stage from FlowState and wires user intents
// to the flow controller. Rendering is a pure function of state, so the
// reveal-order invariants are enforced structurally:
//
//   * Game I: the opened door is shown open, then the decision buttons.
//   * Game II: the decision buttons appear while every door is closed;
//     a door opens only on the resolved view.
//
// The car marker is drawn only from a resolved session view, which is the
// only view that ever contains it.

import type { SessionApi } from "./api.js";
import { fetchChartModel, renderChartSvg } from "./chart.js";
import { GameFlow, type FlowState } from "./flow.js";
import type { Box, Variant } from "./types.js";

export const SNAP_QS = ["0", "1/4", "1/2", "3/4", "1"] as const;

// Dense enough for a smooth curve; every value is an exact fraction string
// the service parses exactly.
export const THEORY_GRID: string[] = Array.from({ length: 17 }, (_, k) => `${k}/16`);

const BOX_ORDER: Box[] = ["L", "T", "R"];

function escapeHtml(text: string): string {
  return text.replace(/[&<>"]/g, (ch) => {
    switch (ch) {
      case "&":
        return "&amp;";
      case "<":
        return "&lt;";
      case ">":
        return "&gt;";
      default:
        return "&quot;";
    }
  });
}

function boxesHtml(state: FlowState): string {
  const session = state.session;
  if (!session || session.phase === "awaiting_pick") {
    // Pre-pick the three boxes are interchangeable; clicking one states
    // the pick and the table "rotates" it to T.
    const clickable = session?.phase === "awaiting_pick";
    return BOX_ORDER.map(
      (_slot, index) =>
        `<button class="box" data-action="${clickable ? "pick" : ""}" data-slot="${index}" ${
          clickable ? "" : "disabled"
        }>closed box</button>`,
    ).join("");
  }

  const resolved = session.phase === "resolved";
  return BOX_ORDER.map((label) => {
    const opened = session.host_opened === label;
    const doorState = opened ? "open" : "closed";
    const carHere = resolved && session.car === label;
    const contents = opened || carHere ? (carHere ? "car" : "goat") : "";
    const title = label === "T" ? "your box (T)" : `door ${label}`;
    return (
      `<div class="box ${label === "T" ? "picked" : ""}" data-box="${label}" data-door-state="${doorState}">` +
      `<span class="box-title">${title}</span>` +
      (contents ? `<span class="box-contents">${contents}</span>` : "") +
      `</div>`
    );
  }).join("");
}

function promptHtml(state: FlowState): string {
  const session = state.session;
  if (!session) return `<p class="prompt">start a new game</p>`;
  switch (session.phase) {
    case "awaiting_pick":
      return `<p class="prompt">pick a box</p>`;
    case "awaiting_decision":
      return `<p class="prompt">the host opened door ${session.host_opened}; stay or switch?</p>`;
    case "awaiting_commit":
      return `<p class="prompt">commit before any door opens: stay or switch?</p>`;
    case "resolved":
      return `<p class="prompt outcome-${session.outcome}">you ${session.outcome}: the car was behind ${session.car}</p>`;
  }
}

function decisionHtml(state: FlowState): string {
  const phase = state.session?.phase;
  const deciding = phase === "awaiting_decision" || phase === "awaiting_commit";
  if (!deciding) return "";
  return (
    `<div class="decision-controls">` +
    `<button data-action="decide" data-decision="stay">stay</button>` +
    `<button data-action="decide" data-decision="switch">switch</button>` +
    `</div>`
  );
}

function bannerHtml(state: FlowState): string {
  if (!state.banner) return "";
  return (
    `<div class="banner" role="alert">${escapeHtml(state.banner)} ` +
    `<button data-action="retry">retry</button></div>`
  );
}

function historyHtml(state: FlowState): string {
  const items = state.history
    .map(
      (entry) =>
        `<li>game ${entry.variant} at q=${entry.q}: host opened ${entry.opened}, ` +
        `${entry.decision} &rarr; ${entry.outcome}</li>`,
    )
    .join("");
  const wins = state.history.filter((entry) => entry.outcome === "win").length;
  const summary = state.history.length
    ? `<p class="history-summary">${wins}/${state.history.length} wins this browser session</p>`
    : "";
  return `${summary}<ol id="history-list">${items}</ol>`;
}

export function renderStage(state: FlowState): string {
  return (
    bannerHtml(state) +
    `<div class="boxes">${boxesHtml(state)}</div>` +
    promptHtml(state) +
    decisionHtml(state) +
    `<button data-action="new-game" ${state.busy ? "disabled" : ""}>new game</button>`
  );
}

export interface AppOptions {
  variant?: Variant;
  q?: string;
}

export function mountApp(
  root: HTMLElement,
  api: SessionApi,
  flow: GameFlow,
  options: AppOptions = {},
): { refreshChart: () => Promise<void> } {
  let currentVariant: Variant = options.variant ?? "I";
  let currentQ: string = options.q ?? "1/2";
  let lastIntent: (() => Promise<void>) | null = null;

  root.innerHTML = `
    <section class="controls">
      <label>variant
        <select id="variant-select">
          <option value="I">I: reveal, then decide</option>
          <option value="II">II: decide, then reveal</option>
        </select>
      </label>
      <label>host bias q
        <input id="q-slider" type="range" min="0" max="${SNAP_QS.length - 1}" step="1" value="2">
        <input id="q-free" type="text" size="6" value="${currentQ}" aria-label="bias as a fraction">
        <span id="q-label">${currentQ}</span>
      </label>
    </section>
    <section class="stage" id="stage"></section>
    <section class="history" id="history"><h2>your games</h2><div id="history-body"></div></section>
    <section class="chart-section">
      <h2>theory vs your play <button data-action="refresh-stats">refresh</button></h2>
      <div id="theory-note"></div>
      <div id="chart"></div>
    </section>
  `;

  const stage = root.querySelector<HTMLElement>("#stage")!;
  const historyBody = root.querySelector<HTMLElement>("#history-body")!;
  const chart = root.querySelector<HTMLElement>("#chart")!;
  const theoryNote = root.querySelector<HTMLElement>("#theory-note")!;
  const variantSelect = root.querySelector<HTMLSelectElement>("#variant-select")!;
  const slider = root.querySelector<HTMLInputElement>("#q-slider")!;
  const freeEntry = root.querySelector<HTMLInputElement>("#q-free")!;
  const qLabel = root.querySelector<HTMLElement>("#q-label")!;

  const refreshChart = async (): Promise<void> => {
    const grid = THEORY_GRID.includes(currentQ)
      ? THEORY_GRID
      : [...THEORY_GRID, currentQ];
    try {
      const model = await fetchChartModel(api, "I", grid);
      chart.innerHTML = renderChartSvg(model);
      const here = model.theory.find((point) => {
        const bucketLabel = point.q;
        return Math.abs(bucketLabel - approxOf(currentQ)) < 1e-12;
      });
      theoryNote.textContent = here
        ? `at q=${currentQ}: switch after R wins ${here.conditionalLabel} in theory; ` +
          `unconditional switch rate ${here.unconditionalLabel}`
        : "";
    } catch {
      // Chart is best-effort; stale content simply stays.
    }
  };

  const render = (state: FlowState): void => {
    stage.innerHTML = renderStage(state);
    historyBody.innerHTML = historyHtml(state);
  };

  flow.onChange((state) => {
    render(state);
    if (state.session?.phase === "resolved") void refreshChart();
  });

  variantSelect.addEventListener("change", () => {
    currentVariant = variantSelect.value as Variant;
  });
  slider.addEventListener("input", () => {
    currentQ = SNAP_QS[Number(slider.value)];
    freeEntry.value = currentQ;
    qLabel.textContent = currentQ;
    void refreshChart();
  });
  freeEntry.addEventListener("change", () => {
    currentQ = freeEntry.value.trim();
    qLabel.textContent = currentQ;
    void refreshChart();
  });

  root.addEventListener("click", (event) => {
    const target = (event.target as HTMLElement).closest<HTMLElement>("[data-action]");
    if (!target) return;
    const action = target.dataset.action;
    if (action === "new-game") {
      lastIntent = () => flow.newGame(currentVariant, currentQ);
      void lastIntent();
    } else if (action === "pick") {
      lastIntent = () => flow.pick();
      void lastIntent();
    } else if (action === "decide") {
      const decision = target.dataset.decision === "switch" ? "switch" : "stay";
      lastIntent = () => flow.decide(decision);
      void lastIntent();
    } else if (action === "retry") {
      if (lastIntent) void lastIntent();
    } else if (action === "refresh-stats") {
      void refreshChart();
    }
  });

  render(flow.state());
  void flow.restore();
  void refreshChart();
  return { refreshChart };
}

function approxOf(q: string): number {
  if (q.includes("/")) {
    const [num, den] = q.split("/").map(Number);
    return num / den;
  }
  return Number(q);
}
