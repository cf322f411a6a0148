// Pure projection of server payloads into what the board shows.  The client
// keeps no authoritative game state and computes no order relations; lanes,
// legality and maximality all come from the server, and the only assembly
// done here is re-using down-sets the server itself declared in the event
// log (for the click-to-present closure helper).

import {
  GameEvent,
  IntervalEndpoint,
  SessionState,
  isPresent,
} from "./api.js";

export interface PointView {
  id: number;
  left: number; // float position for drawing
  leftLabel: string; // exact num/den for hover
  lane: number | null;
  tint: number; // bucket by declared down-set size, cosmetic only
  maximal: boolean;
  pending: boolean;
}

export type LegalMoves =
  | { kind: "assign"; chains: number[]; canNew: boolean; point: number }
  | { kind: "present"; maximal: number[] }
  | { kind: "none" };

export interface ViewState {
  sessionId: string;
  config: SessionState["config"];
  humanRole: string;
  outcome: string | null;
  nextActor: string;
  chainsUsed: number;
  bound: number;
  width: number;
  laneCount: number;
  points: PointView[];
  legalMoves: LegalMoves;
  pendingPoint: number | null;
}

function laneOf(events: GameEvent[], point: number): number | null {
  for (const event of events) {
    if (!isPresent(event) && event.assign.id === point) {
      return event.assign.chain;
    }
  }
  return null;
}

export function declaredDownSet(state: SessionState, point: number): number[] {
  for (const event of state.events) {
    if (isPresent(event) && event.present.id === point) {
      return event.present.down;
    }
  }
  return [];
}

/** Down-set for "dominate these maximal points": the selection plus every
 * point the server already declared below it. */
export function closureFromEvents(state: SessionState, selected: number[]): number[] {
  const out = new Set<number>(selected);
  for (const point of selected) {
    for (const below of declaredDownSet(state, point)) {
      out.add(below);
    }
  }
  return [...out].sort((a, b) => a - b);
}

export function legalMovesOf(state: SessionState): LegalMoves {
  if (state.outcome !== null) {
    return { kind: "none" };
  }
  if (state.next_actor === "algorithm" && state.human_role === "algorithm") {
    return {
      kind: "assign",
      chains: state.valid_chains,
      canNew: true,
      point: state.pending_point ?? -1,
    };
  }
  if (state.next_actor === "spoiler" && state.human_role === "spoiler") {
    return { kind: "present", maximal: state.maximal_points };
  }
  return { kind: "none" };
}

export function projectView(
  sessionId: string,
  state: SessionState,
  intervals: IntervalEndpoint[],
): ViewState {
  const maximal = new Set(state.maximal_points);
  const points: PointView[] = intervals.map((endpoint) => ({
    id: endpoint.id,
    left: endpoint.num / endpoint.den,
    leftLabel: `${endpoint.num}/${endpoint.den}`,
    lane: laneOf(state.events, endpoint.id),
    tint: declaredDownSet(state, endpoint.id).length,
    maximal: maximal.has(endpoint.id),
    pending: state.pending_point === endpoint.id,
  }));
  return {
    sessionId,
    config: state.config,
    humanRole: state.human_role,
    outcome: state.outcome,
    nextActor: state.next_actor,
    chainsUsed: state.chains_used,
    bound: state.bound,
    width: state.width,
    laneCount: state.chains_used,
    points,
    legalMoves: legalMovesOf(state),
    pendingPoint: state.pending_point,
  };
}
