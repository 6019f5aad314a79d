// Session flow controller: drives the three-phase API, owns the local
// history, and survives reloads by re-fetching the stored session id.
// The server is the source of truth for all game state; this controller
// never invents or caches anything the API has not said.

import { ApiError, type SessionApi } from "./api.js";
import type {
  DecisionName,
  HistoryEntry,
  SessionView,
  Variant,
} from "./types.js";
import { rationalLabel } from "./types.js";

export interface FlowState {
  session: SessionView | null;
  busy: boolean;
  // Connection problems surface here as a retryable banner; they never
  // touch the history.
  banner: string | null;
  history: HistoryEntry[];
}

type Listener = (state: FlowState) => void;

interface StorageLike {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
  removeItem(key: string): void;
}

const SESSION_KEY = "montyhall.session_id";

export class GameFlow {
  private session: SessionView | null = null;
  private busy = false;
  private banner: string | null = null;
  private readonly history: HistoryEntry[] = [];
  private readonly listeners: Listener[] = [];

  constructor(
    private readonly api: SessionApi,
    private readonly storage: StorageLike | null = null,
  ) {}

  state(): FlowState {
    return {
      session: this.session,
      busy: this.busy,
      banner: this.banner,
      history: [...this.history],
    };
  }

  onChange(listener: Listener): void {
    this.listeners.push(listener);
  }

  private emit(): void {
    const snapshot = this.state();
    for (const listener of this.listeners) listener(snapshot);
  }

  private async step(action: () => Promise<SessionView>): Promise<void> {
    this.busy = true;
    this.banner = null;
    this.emit();
    try {
      this.session = await action();
      this.storage?.setItem(SESSION_KEY, this.session.id);
      if (this.session.phase === "resolved") {
        this.recordResolved(this.session);
        this.storage?.removeItem(SESSION_KEY);
      }
    } catch (error) {
      this.banner =
        error instanceof ApiError
          ? error.message
          : "connection failed; retry when the service is reachable";
    } finally {
      this.busy = false;
      this.emit();
    }
  }

  private recordResolved(session: SessionView): void {
    if (!session.host_opened || !session.decision || !session.outcome) return;
    this.history.push({
      variant: session.variant,
      q: rationalLabel(session.q),
      opened: session.host_opened,
      decision: session.decision,
      outcome: session.outcome,
    });
  }

  async newGame(variant: Variant, q: string): Promise<void> {
    await this.step(() => this.api.createSession(variant, q));
  }

  async pick(): Promise<void> {
    const session = this.session;
    if (!session) return;
    await this.step(() => this.api.pick(session.id));
  }

  async decide(decision: DecisionName): Promise<void> {
    const session = this.session;
    if (!session) return;
    await this.step(() => this.api.decide(session.id, decision));
  }

  // Reload path: if a session id survived in storage, adopt whatever phase
  // the server says it is in. An unknown id is silently discarded.
  async restore(): Promise<void> {
    const id = this.storage?.getItem(SESSION_KEY);
    if (!id) return;
    this.busy = true;
    this.emit();
    try {
      const session = await this.api.getSession(id);
      this.session = session.phase === "resolved" ? null : session;
      if (this.session === null) this.storage?.removeItem(SESSION_KEY);
    } catch (error) {
      if (error instanceof ApiError && error.status === 404) {
        this.storage?.removeItem(SESSION_KEY);
      } else {
        this.banner =
          error instanceof ApiError
            ? error.message
            : "connection failed; retry when the service is reachable";
      }
    } finally {
      this.busy = false;
      this.emit();
    }
  }
}
