// Transports for the two server endpoints.  The browser uses WebSocket
// (one JSON object per text frame); Node tooling and tests use plain TCP
// with newline-delimited JSON.

import { LineBuffer } from "./protocol.js";
import type { Transport } from "./client.js";

export class WebSocketTransport implements Transport {
  private handlers: Array<(text: string) => void> = [];
  private closers: Array<() => void> = [];

  constructor(private socket: WebSocket) {
    socket.onmessage = (event) => {
      const text = typeof event.data === "string" ? event.data : "";
      for (const line of text.split("\n")) {
        const trimmed = line.trim();
        if (trimmed) for (const cb of this.handlers) cb(trimmed);
      }
    };
    socket.onclose = () => {
      for (const cb of this.closers) cb();
    };
  }

  send(text: string): void {
    this.socket.send(text);
  }

  onMessage(cb: (text: string) => void): void {
    this.handlers.push(cb);
  }

  onClose(cb: () => void): void {
    this.closers.push(cb);
  }

  close(): void {
    this.socket.close();
  }
}

// TCP transport; only imported from Node contexts.
export async function connectTcp(host: string, port: number): Promise<Transport> {
  const net = await import("node:net");
  const socket = net.createConnection({ host, port });
  const buffer = new LineBuffer();
  const handlers: Array<(text: string) => void> = [];
  const closers: Array<() => void> = [];
  socket.setEncoding("utf8");
  socket.on("data", (chunk: string) => {
    for (const line of buffer.push(chunk)) {
      for (const cb of handlers) cb(line);
    }
  });
  socket.on("close", () => {
    for (const cb of closers) cb();
  });
  await new Promise<void>((resolve, reject) => {
    socket.once("connect", resolve);
    socket.once("error", reject);
  });
  return {
    send: (text) => socket.write(text + "\n"),
    onMessage: (cb) => handlers.push(cb),
    onClose: (cb) => closers.push(cb),
    close: () => socket.end(),
  };
}
