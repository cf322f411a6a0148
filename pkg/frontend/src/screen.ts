// Declarative description of one rendered frame.  The DOM layer walks this
// structure; tests assert on it directly.

import { LegalMoves, ViewState } from "./model.js";

export interface Bar {
  id: number;
  x: number;
  width: 1; // unit intervals throughout
  lane: number | null;
  label: string;
  tint: number;
  maximal: boolean;
  pending: boolean;
  clickable: boolean; // spoiler seat: selectable maximal point
  selected: boolean;
}

export interface LaneButton {
  chain: number | "new";
  enabled: boolean;
}

export interface Screen {
  bars: Bar[];
  laneCount: number;
  laneButtons: LaneButton[];
  gauge: { used: number; bound: number; label: string };
  turn: "assign" | "present" | "waiting" | "done";
  banner: string | null;
  error: string | null;
  canSubmitPresent: boolean;
  autoStep: boolean;
}

function turnOf(moves: LegalMoves, outcome: string | null): Screen["turn"] {
  if (outcome !== null) {
    return "done";
  }
  if (moves.kind === "assign") {
    return "assign";
  }
  if (moves.kind === "present") {
    return "present";
  }
  return "waiting";
}

export function renderScreen(
  view: ViewState,
  options: { error?: string | null; selection?: number[]; autoStep?: boolean } = {},
): Screen {
  const error = options.error ?? null;
  const selection = new Set(options.selection ?? []);
  const moves = view.legalMoves;
  const selectable = new Set(moves.kind === "present" ? moves.maximal : []);
  const bars: Bar[] = view.points.map((point) => ({
    id: point.id,
    x: point.left,
    width: 1,
    lane: point.lane,
    label: point.leftLabel,
    tint: point.tint,
    maximal: point.maximal,
    pending: point.pending,
    clickable: selectable.has(point.id),
    selected: selection.has(point.id),
  }));
  const laneButtons: LaneButton[] = [];
  if (moves.kind === "assign") {
    const valid = new Set(moves.chains);
    for (let chain = 0; chain < view.laneCount; chain += 1) {
      laneButtons.push({ chain, enabled: valid.has(chain) });
    }
    laneButtons.push({ chain: "new", enabled: moves.canNew });
  }
  const banner =
    view.outcome === null
      ? null
      : view.outcome === "completed"
        ? `game over: ${view.chainsUsed} chains, bound ${view.bound}`
        : `game over: ${view.outcome}`;
  return {
    bars,
    laneCount: view.laneCount,
    laneButtons,
    gauge: {
      used: view.chainsUsed,
      bound: view.bound,
      label: `${view.chainsUsed} / ${view.bound}`,
    },
    turn: turnOf(moves, view.outcome),
    banner,
    error,
    canSubmitPresent: moves.kind === "present",
    autoStep: options.autoStep ?? true,
  };
}
