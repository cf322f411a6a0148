// Real-DOM presenter: walks a Screen into the board container.

import { App } from "./app.js";
import { Screen } from "./screen.js";

const LANE_HEIGHT = 34;
const SCALE = 64; // pixels per unit interval
const TINTS = [
  "#4e79a7",
  "#f28e2b",
  "#59a14f",
  "#e15759",
  "#b07aa1",
  "#76b7b2",
  "#edc948",
];

export class DomPresenter {
  constructor(
    private readonly root: HTMLElement,
    private readonly app: App,
  ) {}

  show(screen: Screen): void {
    this.root.replaceChildren(
      this.status(screen),
      this.board(screen),
      this.controls(screen),
    );
  }

  private status(screen: Screen): HTMLElement {
    const div = el("div", "status");
    const gauge = el("span", "gauge");
    gauge.textContent = `chains ${screen.gauge.label}`;
    if (screen.gauge.used >= screen.gauge.bound) {
      gauge.classList.add("at-bound");
    }
    div.append(gauge);
    const turn = el("span", "turn");
    turn.textContent =
      screen.turn === "assign"
        ? "your move: pick a lane for the highlighted point"
        : screen.turn === "present"
          ? "your move: select maximal points, then present"
          : screen.turn === "done"
            ? "finished"
            : "opponent thinking (press step if auto-step is off)";
    div.append(turn);
    if (screen.banner !== null) {
      const banner = el("div", "banner");
      banner.textContent = screen.banner;
      div.append(banner);
    }
    if (screen.error !== null) {
      const error = el("div", "error");
      error.textContent = `rejected: ${screen.error}`;
      div.append(error);
    }
    return div;
  }

  private board(screen: Screen): HTMLElement {
    const board = el("div", "board");
    const maxX = Math.max(1, ...screen.bars.map((b) => b.x + 1));
    board.style.width = `${(maxX + 0.5) * SCALE}px`;
    const laneCount = Math.max(screen.laneCount, 1);
    board.style.height = `${(laneCount + 1.5) * LANE_HEIGHT}px`;
    for (let lane = 0; lane < screen.laneCount; lane += 1) {
      const strip = el("div", "lane");
      strip.style.top = `${lane * LANE_HEIGHT}px`;
      strip.dataset.lane = String(lane);
      board.append(strip);
    }
    for (const bar of screen.bars) {
      const div = el("div", "bar");
      div.style.left = `${bar.x * SCALE}px`;
      div.style.width = `${SCALE}px`;
      const lane = bar.lane ?? laneCount; // unassigned points float below
      div.style.top = `${lane * LANE_HEIGHT + 4}px`;
      div.style.background = TINTS[bar.tint % TINTS.length] ?? "#4e79a7";
      div.title = `point ${bar.id}, left endpoint ${bar.label}`;
      div.textContent = String(bar.id);
      if (bar.pending) {
        div.classList.add("pending");
      }
      if (bar.maximal) {
        div.classList.add("maximal");
      }
      if (bar.selected) {
        div.classList.add("selected");
      }
      if (bar.clickable) {
        div.classList.add("clickable");
        div.addEventListener("click", () => {
          this.app.toggleSelect(bar.id);
          void this.app.refresh();
        });
      }
      board.append(div);
    }
    return board;
  }

  private controls(screen: Screen): HTMLElement {
    const div = el("div", "controls");
    for (const button of screen.laneButtons) {
      const b = document.createElement("button");
      b.textContent = button.chain === "new" ? "new chain" : `chain ${button.chain}`;
      b.disabled = !button.enabled;
      b.addEventListener("click", () => void this.app.clickLane(button.chain));
      div.append(b);
    }
    if (screen.canSubmitPresent) {
      const present = document.createElement("button");
      present.textContent = "present selection";
      present.addEventListener("click", () => void this.app.submitPresent());
      div.append(present);
      const stop = document.createElement("button");
      stop.textContent = "stop game";
      stop.addEventListener("click", () => void this.app.stop());
      div.append(stop);
    }
    if (screen.turn === "waiting") {
      const step = document.createElement("button");
      step.textContent = "step";
      step.addEventListener("click", async () => {
        this.app.autoStep = true;
        await this.app.advanceAutomated();
      });
      div.append(step);
    }
    return div;
  }
}

function el(tag: string, cls: string): HTMLElement {
  const node = document.createElement(tag);
  node.className = cls;
  return node;
}
