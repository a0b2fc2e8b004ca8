/** Browser wiring: mounts the timeline, wizard panel, and preview pane.
 *
 * All state lives on the server; this module only decides what to fetch
 * and when to re-render. Every click that changes the spec goes through
 * WizardSession, and every render starts from the resource the service
 * returned, so a forced refresh always reproduces the same canvas.
 */

import { ApiClient, ApiError } from "./api.js";
import { previewPane } from "./preview.js";
import { pickerHtml, retryCard } from "./sparkline.js";
import { hitTest, layoutTimeline, renderTimeline, type TimelineLayout } from "./timeline.js";
import { placementForClick, WizardSession } from "./wizard.js";
import { sentenceText, timingSentence } from "./sentences.js";
import type { OperatorKind, Relation } from "./types.js";

const ZOOM_KEY = "mtlspec.zoom";
const OPERATORS: OperatorKind[] = [
  "now",
  "always",
  "at_least_once",
  "eventually_always",
  "repeatedly_often_and_finally",
];
const RELATIONS: Relation[] = ["<", ">", "<=", ">="];

export class App {
  private readonly client: ApiClient;
  private session: WizardSession | null = null;
  private layout: TimelineLayout | null = null;
  private zoom: number;
  private selected: string[] = [];

  constructor(
    private readonly root: HTMLElement,
    baseUrl: string,
  ) {
    this.client = new ApiClient(baseUrl);
    this.zoom = 8;
  }

  private zoomKey(): string {
    return `${ZOOM_KEY}.${this.session?.specId ?? "default"}`;
  }

  async start(): Promise<void> {
    const resource = await this.client.createSpec("untitled");
    this.session = new WizardSession(this.client, resource, Date.now() % 100000);
    const saved = Number(localStorage.getItem(this.zoomKey()));
    if (Number.isFinite(saved) && saved >= 2) this.zoom = saved;
    this.root.innerHTML = `
      <header class="toolbar">
        <label>zoom <input type="range" id="zoom" min="2" max="40" step="1" value="${this.zoom}"></label>
        <button id="refresh" type="button">Refresh</button>
        <button id="group" type="button">Group selected</button>
      </header>
      <main>
        <section id="timeline" class="timeline"></section>
        <aside id="wizard" class="wizard"></aside>
      </main>
      <footer id="preview" class="preview"></footer>
    `;
    this.bindToolbar();
    this.bindTimelineClicks();
    this.renderAll();
  }

  private need(): WizardSession {
    if (this.session === null) throw new Error("app not started");
    return this.session;
  }

  private el<T extends HTMLElement>(id: string): T {
    const node = this.root.querySelector(`#${id}`);
    if (node === null) throw new Error(`missing #${id}`);
    return node as T;
  }

  private bindToolbar(): void {
    this.el<HTMLInputElement>("zoom").addEventListener("input", (ev) => {
      this.zoom = Number((ev.target as HTMLInputElement).value);
      localStorage.setItem(this.zoomKey(), String(this.zoom));
      this.renderAll();
    });
    this.el<HTMLButtonElement>("refresh").addEventListener("click", () => {
      void this.need()
        .refresh()
        .then(() => this.renderAll());
    });
    this.el<HTMLButtonElement>("group").addEventListener("click", () => {
      if (this.selected.length < 2) return;
      const session = this.need();
      const first = session.resource.spec.nodes.find((n) => n.id === this.selected[0]);
      if (first === undefined) return;
      void session.groupTemplates(this.selected, first.group).then(() => {
        this.selected = [];
        this.renderAll();
      });
    });
  }

  private bindTimelineClicks(): void {
    const host = this.el<HTMLElement>("timeline");
    host.addEventListener("click", (ev) => {
      if (this.layout === null) return;
      const svg = host.querySelector("svg");
      if (svg === null) return;
      const box = svg.getBoundingClientRect();
      const target = hitTest(this.layout, ev.clientX - box.left, ev.clientY - box.top);
      if (target.kind === "row") {
        const i = this.selected.indexOf(target.template);
        if (i >= 0) this.selected.splice(i, 1);
        else this.selected.push(target.template);
        return;
      }
      const placement = placementForClick(this.need().resource.spec, target);
      void this.runWizard(placement);
    });
  }

  private renderAll(): void {
    const session = this.need();
    this.layout = layoutTimeline(session.resource.spec, this.zoom, {
      diagnostics: session.resource.mtl.diagnostics,
    });
    this.el("timeline").innerHTML = renderTimeline(this.layout);
    this.el("preview").innerHTML = previewPane(session.resource.mtl);
  }

  private async runWizard(placement: {
    parent?: string;
    after?: string;
    group: number;
  }): Promise<void> {
    const session = this.need();
    const panel = this.el("wizard");
    try {
      await session.begin(placement);
      this.renderAll();

      const kind = await this.askOperator(panel);
      session.chooseOperator(kind);

      await this.askTiming(panel, kind);
      this.renderAll();

      await this.askDirection(panel);
      this.renderAll();

      await this.askExemplar(panel);
      session.finish();
      panel.innerHTML = "";
      this.renderAll();
    } catch (err) {
      panel.innerHTML = retryCard(err instanceof ApiError ? err.message : String(err));
    }
  }

  private askOperator(panel: HTMLElement): Promise<OperatorKind> {
    return new Promise((resolve) => {
      panel.innerHTML =
        '<h3>How should the condition hold?</h3><div class="operator-choices"></div>';
      const host = panel.querySelector(".operator-choices") as HTMLElement;
      for (const kind of OPERATORS) {
        const button = document.createElement("button");
        button.type = "button";
        button.textContent = sentenceText(timingSentence(kind));
        button.addEventListener("click", () => resolve(kind));
        host.appendChild(button);
      }
    });
  }

  private askTiming(panel: HTMLElement, kind: OperatorKind): Promise<void> {
    return new Promise((resolve) => {
      const sentence = timingSentence(kind);
      const inputs = sentence.slots
        .map((_, i) => `<input class="bound" data-slot="${i}" size="4">`)
        .join(" ");
      panel.innerHTML = `
        <h3>${sentence.parts.map((p) => p).join('<span class="blank">_</span>')}</h3>
        <div class="bounds">${inputs}</div>
        <p class="slot-errors" role="alert"></p>
        <button id="timing-ok" type="button">Continue</button>
      `;
      const button = panel.querySelector("#timing-ok") as HTMLButtonElement;
      button.addEventListener("click", () => {
        const values = Array.from(panel.querySelectorAll<HTMLInputElement>("input.bound")).map(
          (input) => input.value,
        );
        void this.need()
          .fillTiming(values)
          .then((result) => {
            if (result.ok) resolve();
            else {
              const messages = result.errors.map((e) => e.message).join("; ");
              (panel.querySelector(".slot-errors") as HTMLElement).textContent = messages;
            }
          });
      });
    });
  }

  private askDirection(panel: HTMLElement): Promise<void> {
    return new Promise((resolve) => {
      const options = RELATIONS.map((r) => `<option>${r}</option>`).join("");
      panel.innerHTML = `
        <h3>Which signal, and which direction?</h3>
        <input id="signal" placeholder="signal">
        <select id="relation">${options}</select>
        <input id="threshold" size="6" placeholder="threshold">
        <p class="slot-errors" role="alert"></p>
        <button id="direction-ok" type="button">Continue</button>
      `;
      const button = panel.querySelector("#direction-ok") as HTMLButtonElement;
      button.addEventListener("click", () => {
        const signal = (panel.querySelector("#signal") as HTMLInputElement).value;
        const relation = (panel.querySelector("#relation") as HTMLSelectElement)
          .value as Relation;
        const threshold = Number(
          (panel.querySelector("#threshold") as HTMLInputElement).value,
        );
        void this.need()
          .chooseDirection({ signal, relation, threshold })
          .then((result) => {
            if (result.ok) resolve();
            else {
              (panel.querySelector(".slot-errors") as HTMLElement).textContent =
                result.message;
            }
          });
      });
    });
  }

  private async askExemplar(panel: HTMLElement): Promise<void> {
    const session = this.need();
    const templateId = session.templateId;
    const node = session.resource.spec.nodes.find((n) => n.id === templateId);
    for (;;) {
      try {
        const response = await session.fetchExemplars(3);
        panel.innerHTML =
          "<h3>Pick the signal shape you mean</h3>" +
          pickerHtml(response, node?.op ?? { kind: "now" });
        await new Promise<void>((resolve) => {
          panel.querySelectorAll<SVGElement>("svg.exemplar-card").forEach((card) => {
            card.addEventListener("click", () => {
              session.pickExemplar(Number(card.dataset.index));
              resolve();
            });
          });
        });
        return;
      } catch (err) {
        panel.innerHTML = retryCard(err instanceof ApiError ? err.message : String(err));
        await new Promise<void>((resolve) => {
          const retry = panel.querySelector("button.retry");
          retry?.addEventListener("click", () => resolve());
        });
      }
    }
  }
}

export function mount(root: HTMLElement, baseUrl: string): Promise<void> {
  return new App(root, baseUrl).start();
}
