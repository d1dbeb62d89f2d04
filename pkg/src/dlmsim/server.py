"""Live interferometer service.

Wraps the event loop of the two-interferometer network for interactive
steering.  Each connection gets its own simulation; the protocol is one
JSON object per message over a single duplex connection:

* commands (client to server): {"cmd": "set_phase", "index": 0..3,
  "degrees": x}, {"cmd": "set_mode", "mode": "deterministic" |
  "probabilistic"}, {"cmd": "set_rate", "events_per_second": r},
  {"cmd": "reset_counters"}, {"cmd": "reset_all"}, {"cmd": "subscribe",
  "cadence_ms": t}, {"cmd": "unsubscribe"}, {"cmd": "snapshot"} (one-shot
  query) and {"cmd": "advance", "events": k} (synchronous stepping for
  scripted clients);
* replies (one per command, in order): {"ok": true}, optionally carrying
  "snapshot", or {"error": reason} with the simulation untouched;
* stream (when subscribed): bare snapshot objects at the requested cadence
  with keys exactly n, counts, ratios, qm, phases, mode, inFlight.

Commands take effect between events only.  The same protocol is available
over plain TCP (newline-delimited) and, for browsers, over WebSocket text
frames (one JSON object per frame).
"""
from __future__ import annotations

import asyncio
import base64
import hashlib
import json
import math
import struct
import sys
import time

from .interferometer import TwoMziNetwork

_WS_GUID = "258EAFA5-E914-47DA-95CA-C5AB0DC85B11"
_TICK_SECONDS = 0.02


class LiveSimulation:
    """Simulation engine with control-message handling, no I/O.

    Deterministic: starting from the same seed and applying the same
    commands at the same event indices reproduces the counters bit for bit.
    """

    def __init__(
        self,
        seed: int | tuple[int, ...] = 0,
        phases_deg: tuple[float, float, float, float] = (0.0, 0.0, 0.0, 0.0),
        mode: str = "deterministic",
        rate: float = 500.0,
    ):
        self.phases_deg = [float(p) % 360.0 for p in phases_deg]
        self.network = TwoMziNetwork(
            phases=tuple(math.radians(p) for p in self.phases_deg),
            mode=mode,
            seed=seed,
        )
        self.rate = float(rate)
        self._seed = seed

    def advance(self, n_events: int) -> None:
        self.network.run(n_events)

    def snapshot(self) -> dict:
        counters = self.network.counters
        return {
            "n": counters.emitted,
            "counts": list(counters.counts),
            "ratios": counters.ratios(),
            "qm": list(self.network.quantum_probabilities()),
            "phases": list(self.phases_deg),
            "mode": self.network.mode,
            "inFlight": 1 if self.rate > 0 else 0,
        }

    def apply_command(self, msg) -> dict:
        """Validate and apply one control message; errors leave state untouched."""
        if not isinstance(msg, dict) or "cmd" not in msg:
            return {"error": "message must be an object with a 'cmd' field"}
        cmd = msg["cmd"]
        try:
            if cmd == "set_phase":
                index = int(msg["index"])
                degrees = float(msg["degrees"])
                if not 0 <= index <= 3:
                    return {"error": f"phase index {index} outside 0..3"}
                self.phases_deg[index] = degrees % 360.0
                self.network.set_phase(index, math.radians(degrees))
                return {"ok": True}
            if cmd == "set_mode":
                mode = msg["mode"]
                if mode not in ("deterministic", "probabilistic"):
                    return {"error": f"unknown mode {mode!r}"}
                self.network.set_mode(mode)
                return {"ok": True}
            if cmd == "set_rate":
                rate = float(msg["events_per_second"])
                if not rate > 0:
                    return {"error": "rate must be > 0"}
                self.rate = rate
                return {"ok": True}
            if cmd == "reset_counters":
                self.network.reset_counters()
                return {"ok": True}
            if cmd == "reset_all":
                self.network.reset_all()
                return {"ok": True}
            if cmd == "snapshot":
                return {"ok": True, "snapshot": self.snapshot()}
            if cmd == "advance":
                events = int(msg["events"])
                if events < 0:
                    return {"error": "events must be >= 0"}
                if events:
                    self.advance(events)
                return {"ok": True, "snapshot": self.snapshot()}
            if cmd in ("subscribe", "unsubscribe"):
                # Session-level commands; validated here for uniform errors.
                if cmd == "subscribe" and not int(msg.get("cadence_ms", 0)) > 0:
                    return {"error": "cadence_ms must be > 0"}
                return {"ok": True}
            return {"error": f"unknown command {cmd!r}"}
        except (KeyError, TypeError, ValueError) as exc:
            return {"error": f"malformed {cmd!r} command: {exc}"}


class _Session:
    """Drives one simulation for one duplex channel."""

    def __init__(self, channel, sim: LiveSimulation):
        self.channel = channel
        self.sim = sim
        self.cadence_s: float | None = None
        self._last_push = 0.0
        self._backlog = 0.0

    async def run(self) -> None:
        inbox: asyncio.Queue = asyncio.Queue()
        eof = asyncio.Event()

        async def read_loop():
            try:
                while True:
                    text = await self.channel.recv()
                    if text is None:
                        break
                    await inbox.put(text)
            finally:
                eof.set()

        reader_task = asyncio.create_task(read_loop())
        try:
            while not (eof.is_set() and inbox.empty()):
                while not inbox.empty():
                    await self._handle_line(inbox.get_nowait())
                self._pace()
                await self._maybe_push()
                await asyncio.sleep(_TICK_SECONDS)
        except (ConnectionError, asyncio.IncompleteReadError):
            pass
        finally:
            reader_task.cancel()

    def _pace(self) -> None:
        if self.sim.rate > 0:
            self._backlog += self.sim.rate * _TICK_SECONDS
            n = int(self._backlog)
            if n:
                self.sim.advance(min(n, 100_000))
                self._backlog -= n

    async def _maybe_push(self) -> None:
        if self.cadence_s is None:
            return
        now = time.monotonic()
        if now - self._last_push >= self.cadence_s:
            self._last_push = now
            await self.channel.send(json.dumps(self.sim.snapshot()))

    async def _handle_line(self, text: str) -> None:
        try:
            msg = json.loads(text)
        except json.JSONDecodeError as exc:
            await self.channel.send(json.dumps({"error": f"bad json: {exc}"}))
            return
        reply = self.sim.apply_command(msg)
        if "error" not in reply and isinstance(msg, dict):
            if msg.get("cmd") == "subscribe":
                self.cadence_s = int(msg["cadence_ms"]) / 1000.0
                self._last_push = 0.0
            elif msg.get("cmd") == "unsubscribe":
                self.cadence_s = None
        await self.channel.send(json.dumps(reply))


class _LineChannel:
    def __init__(self, reader: asyncio.StreamReader, writer: asyncio.StreamWriter):
        self.reader = reader
        self.writer = writer

    async def recv(self) -> str | None:
        line = await self.reader.readline()
        if not line:
            return None
        return line.decode("utf-8", errors="replace")

    async def send(self, text: str) -> None:
        self.writer.write(text.encode() + b"\n")
        await self.writer.drain()

    async def close(self) -> None:
        self.writer.close()


class _WebSocketChannel:
    """Server side of a WebSocket connection carrying one JSON text per frame."""

    def __init__(self, reader: asyncio.StreamReader, writer: asyncio.StreamWriter):
        self.reader = reader
        self.writer = writer

    async def handshake(self) -> bool:
        try:
            request = await self.reader.readuntil(b"\r\n\r\n")
        except (asyncio.IncompleteReadError, asyncio.LimitOverrunError):
            return False
        key = None
        for line in request.split(b"\r\n"):
            if line.lower().startswith(b"sec-websocket-key:"):
                key = line.split(b":", 1)[1].strip().decode()
        if key is None:
            self.writer.write(b"HTTP/1.1 400 Bad Request\r\n\r\n")
            await self.writer.drain()
            return False
        accept = base64.b64encode(
            hashlib.sha1((key + _WS_GUID).encode()).digest()
        ).decode()
        self.writer.write(
            (
                "HTTP/1.1 101 Switching Protocols\r\n"
                "Upgrade: websocket\r\n"
                "Connection: Upgrade\r\n"
                f"Sec-WebSocket-Accept: {accept}\r\n\r\n"
            ).encode()
        )
        await self.writer.drain()
        return True

    async def _read_frame(self) -> tuple[int, bytes] | None:
        try:
            head = await self.reader.readexactly(2)
        except (asyncio.IncompleteReadError, ConnectionError):
            return None
        opcode = head[0] & 0x0F
        masked = head[1] & 0x80
        length = head[1] & 0x7F
        if length == 126:
            length = struct.unpack(">H", await self.reader.readexactly(2))[0]
        elif length == 127:
            length = struct.unpack(">Q", await self.reader.readexactly(8))[0]
        mask = await self.reader.readexactly(4) if masked else b"\x00" * 4
        payload = await self.reader.readexactly(length) if length else b""
        if masked:
            payload = bytes(b ^ mask[i % 4] for i, b in enumerate(payload))
        return opcode, payload

    async def recv(self) -> str | None:
        while True:
            frame = await self._read_frame()
            if frame is None:
                return None
            opcode, payload = frame
            if opcode == 0x1:
                return payload.decode("utf-8", errors="replace")
            if opcode == 0x8:
                await self._send_frame(0x8, b"")
                return None
            if opcode == 0x9:
                await self._send_frame(0xA, payload)
            # Pong (0xA) and continuation frames are ignored.

    async def _send_frame(self, opcode: int, payload: bytes) -> None:
        header = bytes([0x80 | opcode])
        n = len(payload)
        if n < 126:
            header += bytes([n])
        elif n < 1 << 16:
            header += bytes([126]) + struct.pack(">H", n)
        else:
            header += bytes([127]) + struct.pack(">Q", n)
        self.writer.write(header + payload)
        await self.writer.drain()

    async def send(self, text: str) -> None:
        await self._send_frame(0x1, text.encode())

    async def close(self) -> None:
        self.writer.close()


async def serve_async(
    port: int,
    seed: int = 0,
    rate: float = 500.0,
    ws_port: int | None = None,
    host: str = "127.0.0.1",
    announce=None,
) -> None:
    """Run the TCP server (and optionally the WebSocket server) forever."""
    conn_counter = {"n": 0}

    def make_sim() -> LiveSimulation:
        conn_counter["n"] += 1
        return LiveSimulation(seed=(seed, conn_counter["n"]), rate=rate)

    async def handle_tcp(reader, writer):
        channel = _LineChannel(reader, writer)
        try:
            await _Session(channel, make_sim()).run()
        finally:
            await channel.close()

    async def handle_ws(reader, writer):
        channel = _WebSocketChannel(reader, writer)
        try:
            if await channel.handshake():
                await _Session(channel, make_sim()).run()
        finally:
            await channel.close()

    server = await asyncio.start_server(handle_tcp, host, port)
    actual_port = server.sockets[0].getsockname()[1]
    lines = [f"listening on {host}:{actual_port}"]
    ws_server = None
    if ws_port is not None:
        ws_server = await asyncio.start_server(handle_ws, host, ws_port)
        ws_actual = ws_server.sockets[0].getsockname()[1]
        lines.append(f"websocket on {host}:{ws_actual}")
    message = "\n".join(lines)
    if announce is not None:
        announce(message)
    else:
        print(message, flush=True)
    async with server:
        if ws_server is not None:
            async with ws_server:
                await asyncio.gather(server.serve_forever(), ws_server.serve_forever())
        else:
            await server.serve_forever()


def serve(
    port: int, seed: int = 0, rate: float = 500.0, ws_port: int | None = None
) -> None:
    """Blocking entry point used by the command line."""
    try:
        asyncio.run(serve_async(port, seed=seed, rate=rate, ws_port=ws_port))
    except KeyboardInterrupt:
        print("stopped", file=sys.stderr)
