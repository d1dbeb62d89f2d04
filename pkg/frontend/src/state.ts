// Pure view state: the panel is a verbatim view of the last server
// snapshot.  Nothing here computes physics or extrapolates counts; numbers
// are carried through untouched and only stringified at the edge.

import type { Snapshot } from "./protocol.js";

export type ConnectionStatus = "connecting" | "open" | "closed";

export interface UiState {
  connection: ConnectionStatus;
  latest: Snapshot | null;
  lastError: string | null;
}

export const initialState: UiState = {
  connection: "connecting",
  latest: null,
  lastError: null,
};

export function withSnapshot(state: UiState, snapshot: Snapshot): UiState {
  return { ...state, latest: snapshot, lastError: null };
}

export function withConnection(state: UiState, connection: ConnectionStatus): UiState {
  return { ...state, connection };
}

export function withError(state: UiState, message: string): UiState {
  return { ...state, lastError: message };
}

export interface DetectorRow {
  label: string;
  count: number;
  ratio: number;
  qm: number;
}

const DETECTOR_LABELS = ["N0", "N1", "N2", "N3", "N4", "N5"];

// Values are passed through exactly as the server reported them.
export function detectorRows(snapshot: Snapshot): DetectorRow[] {
  return DETECTOR_LABELS.map((label, j) => ({
    label,
    count: snapshot.counts[j]!,
    ratio: snapshot.ratios[j]!,
    qm: snapshot.qm[j]!,
  }));
}

export const formatRatio = (x: number): string => x.toFixed(4);
export const formatDegrees = (x: number): string => `${x.toFixed(0)}°`;
