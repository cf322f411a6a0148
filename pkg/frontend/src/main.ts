// Entry point: a small setup form, then the live board.

import { Client } from "./api.js";
import { App, Presenter } from "./app.js";
import { DomPresenter } from "./dom.js";
import { Screen } from "./screen.js";

function field(form: HTMLFormElement, name: string): string {
  const input = form.elements.namedItem(name) as HTMLInputElement | HTMLSelectElement;
  return input.value;
}

function boot(): void {
  const form = document.getElementById("setup") as HTMLFormElement;
  const boardRoot = document.getElementById("board-root") as HTMLElement;
  const autoStepBox = document.getElementById("auto-step") as HTMLInputElement;

  const client = new Client("");
  const lazy: { presenter: Presenter | null } = { presenter: null };
  const app = new App(client, {
    show(screen: Screen) {
      lazy.presenter?.show(screen);
    },
  });
  lazy.presenter = new DomPresenter(boardRoot, app);

  autoStepBox.addEventListener("change", () => {
    app.autoStep = autoStepBox.checked;
    void app.advanceAutomated();
  });

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const humanRole = field(form, "human_role");
    void app
      .start({
        mode: "up_growing",
        w: Number(field(form, "w")),
        human_role: humanRole,
        spoiler: "golden",
        algorithm: "alg",
        seed: Number(field(form, "seed") || "0"),
      })
      .catch((error: unknown) => {
        boardRoot.textContent = `could not start: ${String(error)}`;
      });
  });
}

boot();
