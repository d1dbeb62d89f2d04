// Browser entry point: connect to the simulation server over WebSocket and
// keep the panel in sync with its snapshot stream.

import { SimClient } from "./client.js";
import { buildPanel, renderState } from "./panel.js";
import {
  initialState,
  withConnection,
  withError,
  withSnapshot,
  type UiState,
} from "./state.js";
import { WebSocketTransport } from "./transports.js";

const SNAPSHOT_CADENCE_MS = 150;

function wsUrl(): string {
  const params = new URLSearchParams(window.location.search);
  const target = params.get("ws") ?? `${window.location.hostname || "127.0.0.1"}:8766`;
  return `ws://${target}`;
}

const root = document.getElementById("panel")!;
let state: UiState = initialState;
let client: SimClient | null = null;

function update(next: UiState): void {
  state = next;
  renderState(root, state);
}

function guard(promise: Promise<unknown>): void {
  promise.catch((err: Error) => update(withError(state, err.message)));
}

buildPanel(root, {
  onPhase: (index, degrees) => {
    if (client) guard(client.setPhase(index, degrees));
  },
  onMode: (mode) => {
    if (client) guard(client.setMode(mode));
  },
  onRate: (rate) => {
    if (client) guard(client.setRate(rate));
  },
  onResetCounters: () => {
    if (client) guard(client.resetCounters());
  },
  onResetAll: () => {
    if (client) guard(client.resetAll());
  },
  onReconnect: () => connect(),
});

function connect(): void {
  update(withConnection(state, "connecting"));
  const socket = new WebSocket(wsUrl());
  socket.onopen = () => {
    const transport = new WebSocketTransport(socket);
    client = new SimClient(transport);
    client.onSnapshot((snapshot) => update(withSnapshot(state, snapshot)));
    guard(client.subscribe(SNAPSHOT_CADENCE_MS));
    update(withConnection(state, "open"));
  };
  socket.onerror = () => update(withConnection(state, "closed"));
  socket.onclose = () => {
    client = null;
    update(withConnection(state, "closed"));
  };
}

connect();
