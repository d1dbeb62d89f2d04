import { describe, expect, it } from "vitest";

import { classify, encodeLine, isSnapshot, LineBuffer } from "../src/protocol.js";

const SNAPSHOT = {
  n: 10,
  counts: [5, 5, 1, 9, 4, 6],
  ratios: [0.5, 0.5, 0.1, 0.9, 0.4, 0.6],
  qm: [0.5, 0.5, 0.0, 1.0, 0.5, 0.5],
  phases: [152, 302, 0, 342],
  mode: "deterministic",
  inFlight: 0,
};

describe("snapshot validation", () => {
  it("accepts a well-formed snapshot", () => {
    expect(isSnapshot(SNAPSHOT)).toBe(true);
  });

  it("rejects wrong shapes", () => {
    expect(isSnapshot({ ...SNAPSHOT, counts: [1, 2, 3] })).toBe(false);
    expect(isSnapshot({ ...SNAPSHOT, mode: "magic" })).toBe(false);
    expect(isSnapshot(null)).toBe(false);
    expect(isSnapshot("n")).toBe(false);
  });
});

describe("message classification", () => {
  it("separates replies from snapshot pushes", () => {
    expect(classify({ ok: true }).kind).toBe("reply");
    expect(classify({ error: "nope" }).kind).toBe("reply");
    expect(classify(SNAPSHOT).kind).toBe("snapshot");
    expect(classify(42).kind).toBe("unknown");
  });

  it("treats a reply carrying a snapshot as a reply", () => {
    expect(classify({ ok: true, snapshot: SNAPSHOT }).kind).toBe("reply");
  });
});

describe("line framing", () => {
  it("splits on newlines across chunk boundaries", () => {
    const buffer = new LineBuffer();
    expect(buffer.push('{"a":')).toEqual([]);
    expect(buffer.push('1}\n{"b":2}\n{"c"')).toEqual(['{"a":1}', '{"b":2}']);
    expect(buffer.push(":3}\n")).toEqual(['{"c":3}']);
  });

  it("drops blank lines", () => {
    const buffer = new LineBuffer();
    expect(buffer.push("\n\n{}\n\n")).toEqual(["{}"]);
  });
});

describe("command encoding", () => {
  it("produces single-line json", () => {
    const line = encodeLine({ cmd: "set_phase", index: 2, degrees: 180 });
    expect(JSON.parse(line)).toEqual({ cmd: "set_phase", index: 2, degrees: 180 });
    expect(line.includes("\n")).toBe(false);
  });
});
