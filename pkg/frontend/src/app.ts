// Session controller: fetch -> project -> render, with all moves posted to
// the server and every rejection shown without touching the board.

import { ApiError, Client, CreateSessionBody, SessionState } from "./api.js";
import { ViewState, closureFromEvents, projectView } from "./model.js";
import { Screen, renderScreen } from "./screen.js";

export interface Presenter {
  show(screen: Screen): void;
}

export class App {
  private sessionId: string | null = null;
  private lastState: SessionState | null = null;
  private selection: number[] = [];
  autoStep = true;

  constructor(
    private readonly client: Client,
    private readonly presenter: Presenter,
  ) {}

  get state(): SessionState | null {
    return this.lastState;
  }

  get session(): string | null {
    return this.sessionId;
  }

  get view(): ViewState | null {
    return this._view;
  }

  private _view: ViewState | null = null;

  async start(body: CreateSessionBody): Promise<void> {
    const created = await this.client.createSession(body);
    this.sessionId = created.id;
    this.selection = [];
    await this.refresh();
    await this.advanceAutomated();
  }

  async refresh(error: string | null = null): Promise<void> {
    if (this.sessionId === null) {
      return;
    }
    const state = await this.client.getState(this.sessionId);
    const intervals = await this.client.intervals(this.sessionId);
    this.lastState = state;
    this._view = projectView(this.sessionId, state, intervals);
    this.presenter.show(
      renderScreen(this._view, {
        error,
        selection: this.selection,
        autoStep: this.autoStep,
      }),
    );
  }

  /** Step every automated half-move that is due (spoiler replies, or the
   * whole game when no seat is human). */
  async advanceAutomated(): Promise<void> {
    if (this.sessionId === null || !this.autoStep) {
      return;
    }
    for (;;) {
      const state = this.lastState;
      if (state === null || state.outcome !== null) {
        break;
      }
      if (state.next_actor === state.human_role || state.next_actor === "done") {
        break;
      }
      await this.client.step(this.sessionId);
      await this.refresh();
    }
  }

  /** Human algorithm move; on rejection the server state is re-shown with
   * the error code inline. */
  async clickLane(chain: number | "new"): Promise<string | null> {
    if (this.sessionId === null) {
      return null;
    }
    try {
      await this.client.assign(this.sessionId, chain);
    } catch (error) {
      if (error instanceof ApiError) {
        await this.refresh(error.code);
        return error.code;
      }
      throw error;
    }
    await this.refresh();
    await this.advanceAutomated();
    return null;
  }

  toggleSelect(point: number): void {
    if (this.selection.includes(point)) {
      this.selection = this.selection.filter((p) => p !== point);
    } else {
      this.selection = [...this.selection, point];
    }
  }

  /** Human spoiler move built from the selected maximal points, closed with
   * the down-sets the server declared for them. */
  async submitPresent(): Promise<string | null> {
    if (this.sessionId === null || this.lastState === null) {
      return null;
    }
    const down = closureFromEvents(this.lastState, this.selection);
    return this.presentRaw(down, []);
  }

  /** Spoiler move with an explicit declaration (no closure help). */
  async presentRaw(down: number[], up: number[]): Promise<string | null> {
    if (this.sessionId === null) {
      return null;
    }
    try {
      await this.client.present(this.sessionId, down, up);
    } catch (error) {
      if (error instanceof ApiError) {
        await this.refresh(error.code);
        return error.code;
      }
      throw error;
    }
    this.selection = [];
    await this.refresh();
    await this.advanceAutomated();
    return null;
  }

  async stop(): Promise<void> {
    if (this.sessionId === null) {
      return;
    }
    await this.client.stop(this.sessionId);
    await this.refresh();
  }
}
