// Connection-agnostic client: commands go out, replies come back in order,
// subscribed snapshots arrive as a stream.  Transports only move text.

import {
  classify,
  encodeLine,
  type ControlMessage,
  type Mode,
  type Reply,
  type Snapshot,
} from "./protocol.js";

export interface Transport {
  send(text: string): void;
  onMessage(cb: (text: string) => void): void;
  onClose(cb: () => void): void;
  close(): void;
}

export class SimClient {
  private pending: Array<{
    resolve: (r: Reply) => void;
    reject: (e: Error) => void;
  }> = [];
  private snapshotHandlers: Array<(s: Snapshot) => void> = [];
  private closed = false;

  constructor(private transport: Transport) {
    transport.onMessage((text) => this.handle(text));
    transport.onClose(() => {
      this.closed = true;
      const waiting = this.pending.splice(0);
      for (const p of waiting) p.reject(new Error("connection closed"));
    });
  }

  private handle(text: string): void {
    let raw: unknown;
    try {
      raw = JSON.parse(text);
    } catch {
      return; // tolerate garbage on the wire
    }
    const msg = classify(raw);
    if (msg.kind === "reply") {
      const waiter = this.pending.shift();
      waiter?.resolve(msg.reply);
    } else if (msg.kind === "snapshot") {
      for (const cb of this.snapshotHandlers) cb(msg.snapshot);
    }
  }

  onSnapshot(cb: (s: Snapshot) => void): void {
    this.snapshotHandlers.push(cb);
  }

  send(msg: ControlMessage): Promise<Reply> {
    if (this.closed) return Promise.reject(new Error("connection closed"));
    return new Promise((resolve, reject) => {
      this.pending.push({ resolve, reject });
      this.transport.send(encodeLine(msg));
    });
  }

  private async expectOk(msg: ControlMessage): Promise<Reply> {
    const reply = await this.send(msg);
    if ("error" in reply) throw new Error(reply.error);
    return reply;
  }

  private async expectSnapshot(msg: ControlMessage): Promise<Snapshot> {
    const reply = await this.expectOk(msg);
    if (!("snapshot" in reply) || reply.snapshot === undefined) {
      throw new Error("reply carried no snapshot");
    }
    return reply.snapshot;
  }

  setPhase(index: number, degrees: number): Promise<Reply> {
    return this.expectOk({ cmd: "set_phase", index, degrees });
  }

  setMode(mode: Mode): Promise<Reply> {
    return this.expectOk({ cmd: "set_mode", mode });
  }

  setRate(eventsPerSecond: number): Promise<Reply> {
    return this.expectOk({ cmd: "set_rate", events_per_second: eventsPerSecond });
  }

  resetCounters(): Promise<Reply> {
    return this.expectOk({ cmd: "reset_counters" });
  }

  resetAll(): Promise<Reply> {
    return this.expectOk({ cmd: "reset_all" });
  }

  subscribe(cadenceMs: number): Promise<Reply> {
    return this.expectOk({ cmd: "subscribe", cadence_ms: cadenceMs });
  }

  unsubscribe(): Promise<Reply> {
    return this.expectOk({ cmd: "unsubscribe" });
  }

  snapshot(): Promise<Snapshot> {
    return this.expectSnapshot({ cmd: "snapshot" });
  }

  advance(events: number): Promise<Snapshot> {
    return this.expectSnapshot({ cmd: "advance", events });
  }

  close(): void {
    this.transport.close();
  }
}
