// DOM rendering of the control panel.  The panel is a pure view of the
// last snapshot: every displayed number comes from the server echo, so the
// dials and tables never show a value the simulation has not confirmed.

import type { Mode, Snapshot } from "./protocol.js";
import {
  detectorRows,
  formatDegrees,
  formatRatio,
  type UiState,
} from "./state.js";

export interface PanelHandlers {
  onPhase(index: number, degrees: number): void;
  onMode(mode: Mode): void;
  onRate(eventsPerSecond: number): void;
  onResetCounters(): void;
  onResetAll(): void;
  onReconnect(): void;
}

const SCHEMATIC = `
  <svg viewBox="0 0 640 150" class="schematic" aria-label="interferometer layout">
    <text x="8" y="82" class="lbl">source</text>
    <line x1="50" y1="78" x2="100" y2="78" class="beam"/>
    <rect x="100" y="58" width="44" height="40" class="bs"/><text x="106" y="82" class="lbl">BS1</text>
    <line x1="144" y1="68" x2="260" y2="68" class="beam"/>
    <line x1="144" y1="88" x2="260" y2="88" class="beam"/>
    <circle cx="200" cy="68" r="9" class="dial"/><text x="192" y="56" class="lbl">&#966;0</text>
    <circle cx="200" cy="88" r="9" class="dial"/><text x="192" y="114" class="lbl">&#966;1</text>
    <text x="230" y="56" class="lbl">N0</text><text x="230" y="114" class="lbl">N1</text>
    <rect x="260" y="58" width="44" height="40" class="bs"/><text x="266" y="82" class="lbl">BS2</text>
    <line x1="304" y1="68" x2="420" y2="68" class="beam"/>
    <line x1="304" y1="88" x2="420" y2="88" class="beam"/>
    <circle cx="360" cy="68" r="9" class="dial"/><text x="352" y="56" class="lbl">&#966;2</text>
    <circle cx="360" cy="88" r="9" class="dial"/><text x="352" y="114" class="lbl">&#966;3</text>
    <text x="390" y="56" class="lbl">N2</text><text x="390" y="114" class="lbl">N3</text>
    <rect x="420" y="58" width="44" height="40" class="bs"/><text x="426" y="82" class="lbl">BS3</text>
    <line x1="464" y1="68" x2="560" y2="68" class="beam"/>
    <line x1="464" y1="88" x2="560" y2="88" class="beam"/>
    <text x="570" y="72" class="lbl">N4</text><text x="570" y="92" class="lbl">N5</text>
  </svg>`;

export function buildPanel(root: HTMLElement, handlers: PanelHandlers): void {
  root.innerHTML = `
    <div class="banner" data-role="banner"></div>
    ${SCHEMATIC}
    <div class="controls">
      <fieldset class="phases" data-role="phases">
        <legend>phase lines (degrees)</legend>
        ${[0, 1, 2, 3]
          .map(
            (i) => `
          <label>&#966;${i}
            <input type="range" min="0" max="359" step="1" value="0"
                   data-role="dial" data-index="${i}">
            <span data-role="phase-value" data-index="${i}">0&#176;</span>
          </label>`
          )
          .join("")}
      </fieldset>
      <fieldset class="mode">
        <legend>mode</legend>
        <button data-role="mode-deterministic">deterministic</button>
        <button data-role="mode-probabilistic">probabilistic</button>
      </fieldset>
      <fieldset class="run">
        <legend>run</legend>
        <label>events/s
          <input type="range" min="1" max="5000" step="1" value="500" data-role="rate">
          <span data-role="rate-value">500</span>
        </label>
        <button data-role="reset-counters">reset counters</button>
        <button data-role="reset-all">reset all</button>
      </fieldset>
    </div>
    <table class="detectors">
      <thead>
        <tr><th>detector</th><th>count</th><th>ratio N&#8342;/N</th><th>quantum |b&#8342;|&#178;</th></tr>
      </thead>
      <tbody data-role="rows"></tbody>
    </table>
    <div class="totals" data-role="totals"></div>
  `;

  root.querySelectorAll<HTMLInputElement>('[data-role="dial"]').forEach((dial) => {
    dial.addEventListener("change", () => {
      handlers.onPhase(Number(dial.dataset.index), Number(dial.value));
    });
  });
  const rate = root.querySelector<HTMLInputElement>('[data-role="rate"]')!;
  rate.addEventListener("change", () => handlers.onRate(Number(rate.value)));
  root
    .querySelector('[data-role="mode-deterministic"]')!
    .addEventListener("click", () => handlers.onMode("deterministic"));
  root
    .querySelector('[data-role="mode-probabilistic"]')!
    .addEventListener("click", () => handlers.onMode("probabilistic"));
  root
    .querySelector('[data-role="reset-counters"]')!
    .addEventListener("click", () => handlers.onResetCounters());
  root
    .querySelector('[data-role="reset-all"]')!
    .addEventListener("click", () => handlers.onResetAll());

  const banner = root.querySelector<HTMLElement>('[data-role="banner"]')!;
  banner.addEventListener("click", (event) => {
    if ((event.target as HTMLElement).dataset.role === "reconnect") {
      handlers.onReconnect();
    }
  });
}

export function renderState(root: HTMLElement, state: UiState): void {
  const banner = root.querySelector<HTMLElement>('[data-role="banner"]')!;
  if (state.connection === "open") {
    banner.className = "banner ok";
    banner.textContent = state.lastError
      ? `connected - ${state.lastError}`
      : "connected";
    root.classList.remove("disconnected");
  } else {
    banner.className = "banner down";
    banner.innerHTML =
      state.connection === "connecting"
        ? "connecting&#8230;"
        : 'disconnected <button data-role="reconnect">reconnect</button>';
    root.classList.toggle("disconnected", state.connection === "closed");
  }

  const snapshot = state.latest;
  if (!snapshot) return;
  renderSnapshot(root, snapshot);
}

function renderSnapshot(root: HTMLElement, snapshot: Snapshot): void {
  snapshot.phases.forEach((deg, i) => {
    const label = root.querySelector<HTMLElement>(
      `[data-role="phase-value"][data-index="${i}"]`
    );
    if (label) label.textContent = formatDegrees(deg);
    const dial = root.querySelector<HTMLInputElement>(
      `[data-role="dial"][data-index="${i}"]`
    );
    // Echo the server value unless the user is mid-drag on this dial.
    if (dial && document.activeElement !== dial) {
      dial.value = String(Math.round(deg) % 360);
    }
  });

  for (const mode of ["deterministic", "probabilistic"] as const) {
    root
      .querySelector(`[data-role="mode-${mode}"]`)!
      .classList.toggle("active", snapshot.mode === mode);
  }

  const body = root.querySelector<HTMLElement>('[data-role="rows"]')!;
  body.innerHTML = detectorRows(snapshot)
    .map(
      (row) => `
      <tr>
        <td>${row.label}</td>
        <td>${row.count}</td>
        <td>${formatRatio(row.ratio)}</td>
        <td>${formatRatio(row.qm)}</td>
      </tr>`
    )
    .join("");

  const totals = root.querySelector<HTMLElement>('[data-role="totals"]')!;
  totals.textContent =
    `N = ${snapshot.n} particles, ${snapshot.mode} mode` +
    (snapshot.inFlight ? ", running" : ", paused");
}
