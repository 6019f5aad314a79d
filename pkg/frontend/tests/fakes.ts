// A scripted in-memory stand-in for the session service, implementing the
// same phase machine and response shapes (including never carrying the car
// before resolution).

import { ApiError, type SessionApi } from "../src/api.js";
import type {
  Box,
  DecisionName,
  Door,
  RationalJson,
  SessionView,
  StatsBucket,
  StatsResponse,
  Variant,
} from "../src/types.js";

export function rational(num: number, den: number): RationalJson {
  return { num, den, approx: num / den };
}

function parseQ(q: string): RationalJson {
  if (q.includes("/")) {
    const [num, den] = q.split("/").map(Number);
    return rational(num, den);
  }
  const value = Number(q);
  if (Number.isNaN(value)) throw new ApiError(400, `q must be a rational, got ${q}`);
  return rational(Math.round(value * 100), 100);
}

interface InternalSession {
  view: SessionView;
  car: Box;
  openWhenFree: Door;
}

export class FakeService implements SessionApi {
  private sessions = new Map<string, InternalSession>();
  private counter = 0;
  public statsResponse: StatsResponse = { buckets: [] };
  public failNext = 0; // number of upcoming calls that should network-fail

  // Scripted randomness: queue of [car, doorWhenFree] pairs.
  public script: Array<[Box, Door]> = [];

  private takeScript(): [Box, Door] {
    return this.script.shift() ?? ["L", "R"];
  }

  private checkFailure(): void {
    if (this.failNext > 0) {
      this.failNext -= 1;
      throw new TypeError("fetch failed");
    }
  }

  async createSession(variant: Variant, q: string): Promise<SessionView> {
    this.checkFailure();
    const [car, openWhenFree] = this.takeScript();
    const id = `fake-${this.counter++}`;
    const view: SessionView = {
      id,
      variant,
      q: parseQ(q),
      phase: "awaiting_pick",
      created_at: new Date().toISOString(),
    };
    this.sessions.set(id, { view, car, openWhenFree });
    return { ...view };
  }

  private lookup(id: string): InternalSession {
    const session = this.sessions.get(id);
    if (!session) throw new ApiError(404, `unknown session ${id}`);
    return session;
  }

  async getSession(id: string): Promise<SessionView> {
    this.checkFailure();
    return { ...this.lookup(id).view };
  }

  private hostDoor(session: InternalSession): Door {
    if (session.car === "L") return "R";
    if (session.car === "R") return "L";
    return session.openWhenFree;
  }

  async pick(id: string): Promise<SessionView> {
    this.checkFailure();
    const session = this.lookup(id);
    if (session.view.phase !== "awaiting_pick") {
      throw new ApiError(409, `pick not allowed in phase ${session.view.phase}`);
    }
    if (session.view.variant === "I") {
      session.view.phase = "awaiting_decision";
      session.view.host_opened = this.hostDoor(session);
    } else {
      session.view.phase = "awaiting_commit";
    }
    return { ...session.view };
  }

  async decide(id: string, decision: DecisionName): Promise<SessionView> {
    this.checkFailure();
    const session = this.lookup(id);
    const expected = session.view.variant === "I" ? "awaiting_decision" : "awaiting_commit";
    if (session.view.phase !== expected) {
      throw new ApiError(409, `decision not allowed in phase ${session.view.phase}`);
    }
    const won = decision === "stay" ? session.car === "T" : session.car !== "T";
    session.view = {
      ...session.view,
      phase: "resolved",
      host_opened: this.hostDoor(session),
      decision,
      outcome: won ? "win" : "lose",
      car: session.car,
      resolved_at: new Date().toISOString(),
    };
    return { ...session.view };
  }

  async stats(_variant?: Variant, q?: string): Promise<StatsResponse> {
    this.checkFailure();
    if (!q) return this.statsResponse;
    const wanted = parseQ(q).approx;
    return {
      buckets: this.statsResponse.buckets.filter((b) => b.q.approx === wanted),
    };
  }
}

export function theoryBucket(
  qNum: number,
  qDen: number,
  conditionalR: RationalJson,
  overrides: Partial<StatsBucket> = {},
): StatsBucket {
  return {
    variant: "I",
    q: rational(qNum, qDen),
    decision: "switch",
    games: 0,
    wins: 0,
    empirical_rate: null,
    ci95: null,
    theory_rate: rational(2, 3),
    by_opened: {
      L: {
        games: 0,
        wins: 0,
        empirical_rate: null,
        ci95: null,
        theory_rate: rational(1, 1),
      },
      R: {
        games: 0,
        wins: 0,
        empirical_rate: null,
        ci95: null,
        theory_rate: conditionalR,
      },
    },
    ...overrides,
  };
}
