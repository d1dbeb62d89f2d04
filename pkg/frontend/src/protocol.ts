// Wire protocol of the live simulation server: one JSON object per message
// over a duplex connection (newline-delimited on TCP, one text frame per
// message on WebSocket).  Snapshots are pushed bare; every command gets one
// reply in order, optionally carrying a snapshot.

export type Mode = "deterministic" | "probabilistic";

export interface Snapshot {
  n: number;
  counts: number[];
  ratios: number[];
  qm: number[];
  phases: number[];
  mode: Mode;
  inFlight: 0 | 1;
}

export type ControlMessage =
  | { cmd: "set_phase"; index: number; degrees: number }
  | { cmd: "set_mode"; mode: Mode }
  | { cmd: "set_rate"; events_per_second: number }
  | { cmd: "reset_counters" }
  | { cmd: "reset_all" }
  | { cmd: "subscribe"; cadence_ms: number }
  | { cmd: "unsubscribe" }
  | { cmd: "snapshot" }
  | { cmd: "advance"; events: number };

export type Reply = { ok: true; snapshot?: Snapshot } | { error: string };

export type ServerMessage =
  | { kind: "snapshot"; snapshot: Snapshot }
  | { kind: "reply"; reply: Reply }
  | { kind: "unknown"; raw: unknown };

const isNumberArray = (x: unknown, length: number): x is number[] =>
  Array.isArray(x) && x.length === length && x.every((v) => typeof v === "number");

export function isSnapshot(x: unknown): x is Snapshot {
  if (typeof x !== "object" || x === null) return false;
  const s = x as Record<string, unknown>;
  return (
    typeof s.n === "number" &&
    isNumberArray(s.counts, 6) &&
    isNumberArray(s.ratios, 6) &&
    isNumberArray(s.qm, 6) &&
    isNumberArray(s.phases, 4) &&
    (s.mode === "deterministic" || s.mode === "probabilistic") &&
    (s.inFlight === 0 || s.inFlight === 1)
  );
}

export function classify(raw: unknown): ServerMessage {
  if (typeof raw === "object" && raw !== null) {
    const obj = raw as Record<string, unknown>;
    if ("ok" in obj || "error" in obj) {
      return { kind: "reply", reply: raw as Reply };
    }
    if (isSnapshot(raw)) {
      return { kind: "snapshot", snapshot: raw };
    }
  }
  return { kind: "unknown", raw };
}

export const encodeLine = (msg: ControlMessage): string => JSON.stringify(msg);

// Incremental splitter for newline-delimited streams.
export class LineBuffer {
  private buffer = "";

  push(chunk: string): string[] {
    this.buffer += chunk;
    const lines: string[] = [];
    for (;;) {
      const idx = this.buffer.indexOf("\n");
      if (idx === -1) break;
      const line = this.buffer.slice(0, idx).trim();
      this.buffer = this.buffer.slice(idx + 1);
      if (line) lines.push(line);
    }
    return lines;
  }
}
