"""Live trial sessions over WebSocket with telemetry persistence.

One sequential event loop per session: network input latches the most
recent stick value (last write wins, no queue), the simulation ticks at a
fixed 50 Hz, the log records every tick, and the wire stream is decimated
to the telemetry rate. During trials the cockpit never receives the
attitude-error field unless the task config displays it.

Protocol (text frames, one JSON object each):
  client -> server: {"kind":"start", "view", "cohort"},
                    {"kind":"stick", "t", "x", "y", "z"},
                    {"kind":"abort"}
  server -> client: {"kind":"telemetry", ...}, {"kind":"result", ...},
                    {"kind":"error", "code", "detail"}
Unknown fields are ignored; unknown kinds are rejected.
"""

from __future__ import annotations

import asyncio
import itertools
import json
import time
from pathlib import Path

from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.responses import PlainTextResponse, Response
from fastapi.staticfiles import StaticFiles

from .control import ControlConfig, StickInput
from .simcore import DT_INTERACTIVE, OrbitEnv
from .sessionlog import LogWriter, make_header
from .task import (
    Cohort,
    Phase,
    TaskConfig,
    build_frame,
    init_trial,
    result_from_state,
    step_trial,
)
from .telemetry import frame_to_dict
from .viewport import View, camera_for, observe

TELEMETRY_HZ = 30.0


class LiveSession:
    """State and tick loop for one running trial."""

    def __init__(
        self,
        session_id: str,
        websocket: WebSocket,
        send_lock: asyncio.Lock,
        cfg: TaskConfig,
        ctrl: ControlConfig,
        env: OrbitEnv,
        cohort: Cohort,
        data_dir: Path,
        dt: float,
        realtime: bool,
    ):
        self.id = session_id
        self.ws = websocket
        self.send_lock = send_lock
        self.cfg = cfg
        self.ctrl = ctrl
        self.env = env
        self.cohort = cohort
        self.dt = dt
        self.realtime = realtime
        self.camera = camera_for(cfg.view)
        self.stick = StickInput()
        self.aborted = False
        self.client_gone = False
        self.task: asyncio.Task | None = None

        self.log_path = data_dir / f"{session_id}.jsonl"
        self.result_path = data_dir / f"{session_id}.result.json"
        self._log_fh = self.log_path.open("w", encoding="utf-8")
        self.writer = LogWriter(
            self._log_fh, make_header(session_id, cfg, ctrl, env, dt, cohort)
        )
        self.state = init_trial(cfg, env)

    @property
    def running(self) -> bool:
        return self.task is not None and not self.task.done()

    def latch(self, stick: StickInput) -> None:
        self.stick = stick.clamped()

    async def start(self) -> None:
        obs = observe(self.state.eci, self.state.att, self.camera, self.env)
        frame = build_frame(self.state, StickInput(), obs)
        self.writer.frame(frame)
        await self._send_frame(frame)
        self.task = asyncio.create_task(self._run())

    def _should_send(self, tick: int) -> bool:
        per = TELEMETRY_HZ * self.dt  # wire frames per sim tick
        return int(tick * per) > int((tick - 1) * per)

    async def _send(self, payload: dict) -> None:
        if self.client_gone:
            return
        try:
            async with self.send_lock:
                await self.ws.send_json(payload)
        except Exception:
            self.client_gone = True

    async def _send_frame(self, frame) -> None:
        body = frame_to_dict(frame, include_err=self.cfg.hud_attitude_visible)
        await self._send({"kind": "telemetry", "session": self.id, **body})

    async def _run(self) -> None:
        next_tick = time.monotonic()
        try:
            while self.state.phase == Phase.RUNNING and not self.aborted:
                if self.realtime:
                    next_tick += self.dt
                    delay = next_tick - time.monotonic()
                    if delay > 0:
                        await asyncio.sleep(delay)
                else:
                    await asyncio.sleep(0)
                stick = self.stick
                self.state = step_trial(self.state, stick, self.cfg, self.ctrl, self.env, self.dt)
                obs = observe(self.state.eci, self.state.att, self.camera, self.env)
                frame = build_frame(self.state, stick, obs)
                self.writer.frame(frame)
                if self._should_send(self.state.tick):
                    await self._send_frame(frame)
        finally:
            await self._finalize()

    async def _finalize(self) -> None:
        aborted = self.aborted and self.state.phase == Phase.RUNNING
        result = result_from_state(self.state, self.cfg, self.cohort, log_ref=self.id)
        self.writer.result(result, aborted=aborted)
        self._log_fh.close()
        self.result_path.write_text(
            json.dumps(result.to_dict(), sort_keys=True) + "\n", encoding="utf-8"
        )
        await self._send({"kind": "result", "session": self.id, **result.to_dict()})

    async def abort(self) -> None:
        self.aborted = True
        if self.task is not None:
            await self.task


def create_app(
    data_dir: str | Path,
    *,
    dt: float = DT_INTERACTIVE,
    realtime: bool = True,
    task_overrides: dict | None = None,
    ctrl: ControlConfig | None = None,
    env: OrbitEnv | None = None,
    frontend_dir: str | Path | None = None,
) -> FastAPI:
    """Build the session-service app.

    task_overrides/dt/realtime exist for harnesses and tests; the wire
    protocol itself is fixed.
    """
    data_dir = Path(data_dir)
    data_dir.mkdir(parents=True, exist_ok=True)
    ctrl = ctrl or ControlConfig()
    env = env or OrbitEnv()
    overrides = dict(task_overrides or {})
    app = FastAPI(title="deorbitsim session service")
    counter = itertools.count(1)

    def new_session_id() -> str:
        return f"sess-{time.time_ns():016x}-{next(counter):04d}"

    @app.get("/logs/{session_id}")
    def get_log(session_id: str) -> Response:
        path = data_dir / f"{session_id}.jsonl"
        if not path.is_file() or "/" in session_id or ".." in session_id:
            return PlainTextResponse("no such session", status_code=404)
        return PlainTextResponse(path.read_text(encoding="utf-8"))

    @app.websocket("/ws")
    async def ws_endpoint(ws: WebSocket) -> None:
        await ws.accept()
        send_lock = asyncio.Lock()
        session: LiveSession | None = None

        async def send_error(code: str, detail: str) -> None:
            async with send_lock:
                await ws.send_json({"kind": "error", "code": code, "detail": detail})

        try:
            while True:
                try:
                    msg = await ws.receive_json()
                except (ValueError, KeyError):
                    await send_error("bad-json", "message is not a JSON object")
                    continue
                if not isinstance(msg, dict):
                    await send_error("bad-json", "message is not a JSON object")
                    continue
                kind = msg.get("kind")
                if kind == "start":
                    if session is not None and session.running:
                        await send_error("session-active", "a trial is already running")
                        continue
                    try:
                        view = View.parse(str(msg.get("view", "")))
                        cohort = Cohort.parse(str(msg.get("cohort", "PILOT")))
                        cfg = TaskConfig(view=view, **overrides)
                    except (ValueError, TypeError) as exc:
                        await send_error("bad-config", str(exc))
                        continue
                    session = LiveSession(
                        new_session_id(), ws, send_lock, cfg, ctrl, env, cohort,
                        data_dir, dt, realtime,
                    )
                    await session.start()
                elif kind == "stick":
                    if session is None or not session.running:
                        await send_error("terminal", "no running session for stick input")
                        continue
                    try:
                        stick = StickInput(
                            x=float(msg.get("x", 0.0)),
                            y=float(msg.get("y", 0.0)),
                            z=float(msg.get("z", 0.0)),
                            t=float(msg.get("t", 0.0)),
                        )
                    except (TypeError, ValueError):
                        await send_error("bad-stick", "stick axes must be numbers")
                        continue
                    session.latch(stick)
                elif kind == "abort":
                    if session is None or not session.running:
                        await send_error("terminal", "no running session to abort")
                        continue
                    await session.abort()
                else:
                    await send_error("unknown-kind", f"unknown message kind {kind!r}")
        except WebSocketDisconnect:
            pass
        finally:
            if session is not None and session.running:
                session.client_gone = True
                await session.abort()

    if frontend_dir is not None and Path(frontend_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(frontend_dir), html=True), name="cockpit")

    return app
