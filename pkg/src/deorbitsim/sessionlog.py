"""Line-delimited trial logs and deterministic replay.

A log is one JSON object per line: a header (task/control/environment
config plus a content hash), one frame per simulation tick, and a final
result record. Because the simulation is deterministic, re-running the
recorded per-tick stick inputs must reproduce every frame bit-for-bit;
replay() verifies exactly that.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, TextIO

from .control import ControlConfig, StickInput
from .errors import LogIntegrityError
from .simcore import EulerError, OrbitEnv
from .task import (
    Cohort,
    Phase,
    TaskConfig,
    TrialResult,
    build_frame,
    init_trial,
    result_from_state,
    step_trial,
)
from .telemetry import TelemetryFrame, frame_to_dict
from .viewport import View, camera_for, observe

LOG_FORMAT = "deorbitsim-log/1"


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def task_config_to_dict(cfg: TaskConfig) -> dict:
    off = cfg.initial_offset
    return {
        "view": cfg.view.value,
        "initial_offset": {"yaw": off.yaw, "pitch": off.pitch, "roll": off.roll},
        "tolerance_yaw": cfg.tolerance_yaw,
        "tolerance_pitch": cfg.tolerance_pitch,
        "tolerance_roll": cfg.tolerance_roll,
        "hold_time": cfg.hold_time,
        "timeout": cfg.timeout,
        "hud_attitude_visible": cfg.hud_attitude_visible,
    }


def task_config_from_dict(d: dict) -> TaskConfig:
    off = d["initial_offset"]
    return TaskConfig(
        view=View(d["view"]),
        initial_offset=EulerError(yaw=off["yaw"], pitch=off["pitch"], roll=off["roll"]),
        tolerance_yaw=d["tolerance_yaw"],
        tolerance_pitch=d["tolerance_pitch"],
        tolerance_roll=d["tolerance_roll"],
        hold_time=d["hold_time"],
        timeout=d["timeout"],
        hud_attitude_visible=d["hud_attitude_visible"],
    )


def ctrl_config_to_dict(ctrl: ControlConfig) -> dict:
    return {
        "max_rate": ctrl.max_rate,
        "deadband": ctrl.deadband,
        "tau": ctrl.tau,
        "alpha_max": ctrl.alpha_max,
        "fuel_gain": ctrl.fuel_gain,
    }


def env_to_dict(env: OrbitEnv) -> dict:
    return {
        "mu": env.mu,
        "earth_radius": env.earth_radius,
        "earth_spin_rate": env.earth_spin_rate,
        "altitude_nominal": env.altitude_nominal,
    }


def _hash_payload(payload: dict) -> str:
    return hashlib.sha256(canonical_json(payload).encode()).hexdigest()


def make_header(
    session_id: str,
    cfg: TaskConfig,
    ctrl: ControlConfig,
    env: OrbitEnv,
    dt: float,
    cohort: Cohort,
    seed: int | None = None,
) -> dict:
    payload = {
        "config": task_config_to_dict(cfg),
        "ctrl": ctrl_config_to_dict(ctrl),
        "env": env_to_dict(env),
        "dt": dt,
        "cohort": cohort.value,
    }
    header = {
        "kind": "header",
        "format": LOG_FORMAT,
        "session": session_id,
        "seed": seed,
        "offset_rng": "splitmix64",
        "config_sha256": _hash_payload(payload),
    }
    header.update(payload)
    return header


@dataclass
class ParsedLog:
    header: dict
    frames: list[dict]
    result: dict | None

    @property
    def session_id(self) -> str:
        return self.header["session"]


class LogWriter:
    """Appends header, frame, and result lines to an open text stream."""

    def __init__(self, stream: TextIO, header: dict):
        self._stream = stream
        self._stream.write(canonical_json(header) + "\n")

    def frame(self, frame: TelemetryFrame) -> None:
        record = {"kind": "frame"}
        record.update(frame_to_dict(frame, include_err=True))
        self._stream.write(canonical_json(record) + "\n")

    def result(self, result: TrialResult, aborted: bool = False) -> None:
        record = {"kind": "result", "aborted": aborted}
        record.update(result.to_dict())
        self._stream.write(canonical_json(record) + "\n")


def read_log(path: str | Path) -> ParsedLog:
    path = Path(path)
    header = None
    frames: list[dict] = []
    result = None
    with path.open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise LogIntegrityError(
                    f"{path}: line {lineno}: invalid JSON ({exc})", frame_index=len(frames)
                ) from None
            kind = record.get("kind")
            if lineno == 1:
                if kind != "header":
                    raise LogIntegrityError(f"{path}: first line is not a header")
                header = record
            elif kind == "frame":
                if result is not None:
                    raise LogIntegrityError(f"{path}: frame after result line", frame_index=len(frames))
                frames.append(record)
            elif kind == "result":
                result = record
            else:
                raise LogIntegrityError(f"{path}: line {lineno}: unknown record kind {kind!r}")
    if header is None:
        raise LogIntegrityError(f"{path}: empty log")
    verify_header(header, path)
    return ParsedLog(header=header, frames=frames, result=result)


def verify_header(header: dict, path: str | Path = "<log>") -> None:
    if header.get("format") != LOG_FORMAT:
        raise LogIntegrityError(f"{path}: unsupported log format {header.get('format')!r}")
    payload = {
        "config": header.get("config"),
        "ctrl": header.get("ctrl"),
        "env": header.get("env"),
        "dt": header.get("dt"),
        "cohort": header.get("cohort"),
    }
    if _hash_payload(payload) != header.get("config_sha256"):
        raise LogIntegrityError(f"{path}: config hash mismatch")


def replay(path: str | Path) -> TrialResult:
    """Re-simulate a log from its recorded inputs and verify bit-exactness.

    Raises LogIntegrityError naming the first mismatching frame index if the
    log cannot be reproduced.
    """
    log = read_log(path)
    header = log.header
    cfg = task_config_from_dict(header["config"])
    ctrl = ControlConfig(**header["ctrl"])
    env = OrbitEnv(**header["env"])
    dt = header["dt"]
    cohort = Cohort(header["cohort"])
    cam = camera_for(cfg.view)

    if not log.frames:
        raise LogIntegrityError(f"{path}: log has no frames", frame_index=0)

    state = init_trial(cfg, env)
    obs = observe(state.eci, state.att, cam, env)
    expected = {"kind": "frame"}
    expected.update(frame_to_dict(build_frame(state, StickInput(), obs), include_err=True))
    if expected != log.frames[0]:
        raise LogIntegrityError(f"{path}: frame 0 does not match re-simulation", frame_index=0)

    for idx, rec in enumerate(log.frames[1:], start=1):
        sx, sy, sz = rec.get("stick", (None, None, None))
        if sx is None:
            raise LogIntegrityError(f"{path}: frame {idx} missing stick", frame_index=idx)
        stick = StickInput(x=sx, y=sy, z=sz, t=rec.get("t", 0.0))
        try:
            state = step_trial(state, stick, cfg, ctrl, env, dt)
        except Exception as exc:
            raise LogIntegrityError(
                f"{path}: frame {idx}: cannot re-step ({exc})", frame_index=idx
            ) from None
        obs = observe(state.eci, state.att, cam, env)
        expected = {"kind": "frame"}
        expected.update(frame_to_dict(build_frame(state, stick, obs), include_err=True))
        if expected != rec:
            raise LogIntegrityError(
                f"{path}: frame {idx} does not match re-simulation", frame_index=idx
            )

    aborted = bool(log.result.get("aborted")) if log.result else False
    if state.phase == Phase.RUNNING and not aborted:
        raise LogIntegrityError(
            f"{path}: log ends mid-trial without an abort marker",
            frame_index=len(log.frames) - 1,
        )

    result = result_from_state(state, cfg, cohort, log_ref=log.session_id)
    if aborted:
        result = TrialResult(
            view=result.view,
            cohort=result.cohort,
            completion_time=cfg.timeout,
            fuel=state.fuel.consumed,
            success=False,
            input_log_ref=log.session_id,
        )
    if log.result is not None:
        recorded = {k: v for k, v in log.result.items() if k not in ("kind", "aborted")}
        if recorded != result.to_dict():
            raise LogIntegrityError(
                f"{path}: recorded result does not match re-simulation",
                frame_index=len(log.frames) - 1,
            )
    return result


def write_result_file(path: str | Path, result: TrialResult) -> None:
    Path(path).write_text(canonical_json(result.to_dict()) + "\n", encoding="utf-8")


def read_result_file(path: str | Path) -> TrialResult:
    return TrialResult.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def iter_frames(log: ParsedLog) -> Iterable[dict]:
    return iter(log.frames)
