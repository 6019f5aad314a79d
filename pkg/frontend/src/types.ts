// Shapes mirrored from the session service's JSON API.

export interface RationalJson {
  num: number;
  den: number;
  approx: number;
}

export type Variant = "I" | "II";
export type Door = "L" | "R";
export type Box = "T" | "L" | "R";
export type DecisionName = "switch" | "stay";
export type OutcomeName = "win" | "lose";

export type Phase =
  | "awaiting_pick"
  | "awaiting_commit"
  | "awaiting_decision"
  | "resolved";

// Public session view. The car field exists only once phase is "resolved";
// the service never sends it earlier and we never store it earlier.
export interface SessionView {
  id: string;
  variant: Variant;
  q: RationalJson;
  phase: Phase;
  created_at: string;
  host_opened?: Door;
  car?: Box;
  decision?: DecisionName;
  outcome?: OutcomeName;
  resolved_at?: string;
}

export interface RateStats {
  games: number;
  wins: number;
  empirical_rate: number | null;
  ci95: [number, number] | null;
  theory_rate: RationalJson;
}

export interface StatsBucket extends RateStats {
  variant: Variant;
  q: RationalJson;
  decision: DecisionName;
  by_opened?: Record<Door, RateStats>;
}

export interface StatsResponse {
  buckets: StatsBucket[];
}

export interface HistoryEntry {
  variant: Variant;
  q: string; // canonical "num/den"
  opened: Door;
  decision: DecisionName;
  outcome: OutcomeName;
}

export function rationalLabel(r: RationalJson): string {
  return r.den === 1 ? `${r.num}` : `${r.num}/${r.den}`;
}
