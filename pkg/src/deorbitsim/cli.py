"""Operator command line: headless runs, serving, replay, analysis, comparison.

All records written to stdout use sorted keys and fixed 6-place decimals so
that identical flags and seeds produce byte-identical output. Exit codes:
0 success, 1 data/IO error, 2 usage error.
"""

from __future__ import annotations

import math
import statistics
from pathlib import Path

import click

from .analysis import (
    band_powers,
    detect_fixations,
    engagement_index,
    fixation_metrics,
    saccade_stats,
    sus_score,
    task_load_index,
    tlx_score,
)
from .analysis.io import load_eeg_csv, load_gaze_csv, load_sus_csv, load_tlx_csv
from .control import ControlConfig
from .errors import DataError, LogIntegrityError
from .policies import BottomViewPolicy, FrontViewPolicy
from .seeding import offset_for_seed
from .sessionlog import LogWriter, make_header, replay, write_result_file
from .simcore import DT_HEADLESS, OrbitEnv
from .task import Cohort, TaskConfig, TrialResult, run_headless
from .viewport import View

DEFAULT_FRONTAL = ("F3", "F4", "Fz")
DEFAULT_PARIETAL = ("P3", "P4", "Pz")


def dump_record(obj) -> str:
    """Canonical one-line JSON with floats rendered to 6 decimal places."""
    if isinstance(obj, dict):
        items = ",".join(f"{dump_record(str(k))}:{dump_record(v)}" for k, v in sorted(obj.items()))
        return "{" + items + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(dump_record(v) for v in obj) + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if math.isnan(obj) or math.isinf(obj):
            raise ValueError("cannot serialize non-finite float")
        return f"{obj:.6f}"
    if isinstance(obj, str):
        import json as _json

        return _json.dumps(obj)
    raise TypeError(f"cannot serialize {type(obj)!r}")


@click.group()
def main() -> None:
    """Deterministic de-orbit attitude-task simulator and analysis tools."""


def _parse_view(name: str) -> View:
    try:
        return View.parse(name)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None


def _parse_cohort(name: str) -> Cohort:
    try:
        return Cohort.parse(name)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None


@main.command("run")
@click.option("--view", required=True, help="BOTTOM or FRONT")
@click.option("--policy", "policy_name", default="auto",
              type=click.Choice(["auto", "bottom", "front"]), help="scripted pilot to fly")
@click.option("--n", default=1, show_default=True, help="number of trials")
@click.option("--seed", default=0, show_default=True,
              help="offset seed for the first trial (0 = the study's exact offset)")
@click.option("--cohort", default="pilot", show_default=True)
@click.option("--out-dir", default="runs", show_default=True, type=click.Path(path_type=Path))
@click.option("--dt", default=DT_HEADLESS, show_default=True, help="simulation step, s")
def cmd_run(view: str, policy_name: str, n: int, seed: int, cohort: str, out_dir: Path, dt: float) -> None:
    """Run headless trials with seeded initial offsets and write logs."""
    view_id = _parse_view(view)
    cohort_id = _parse_cohort(cohort)
    if n < 1:
        raise click.UsageError("--n must be at least 1")
    if policy_name != "auto" and policy_name != view_id.value.lower():
        raise click.UsageError(
            f"policy {policy_name!r} flies the {policy_name.upper()} view, not {view_id.value}"
        )
    env = OrbitEnv()
    ctrl = ControlConfig()
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        probe = out_dir / ".write-probe"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        raise click.ClickException(f"cannot write to {out_dir}: {exc}") from None

    for i in range(n):
        trial_seed = seed + i
        offset = offset_for_seed(trial_seed)
        cfg = TaskConfig(view=view_id, initial_offset=offset)
        if policy_name == "bottom" or (policy_name == "auto" and view_id == View.BOTTOM):
            policy = BottomViewPolicy()
        else:
            policy = FrontViewPolicy()
        session_id = f"run-{view_id.value.lower()}-{cohort_id.value.lower()}-s{trial_seed}"
        log_path = out_dir / f"{session_id}.jsonl"
        try:
            with log_path.open("w", encoding="utf-8") as fh:
                writer = LogWriter(
                    fh, make_header(session_id, cfg, ctrl, env, dt, cohort_id, seed=trial_seed)
                )
                result = run_headless(
                    cfg, policy, env=env, ctrl=ctrl, dt=dt, cohort=cohort_id,
                    on_frame=writer.frame, log_ref=session_id,
                )
                writer.result(result)
            write_result_file(out_dir / f"{session_id}.result.json", result)
        except OSError as exc:
            raise click.ClickException(f"cannot write trial files: {exc}") from None
        click.echo(dump_record({
            "kind": "trial",
            "session": session_id,
            "view": view_id.value,
            "cohort": cohort_id.value,
            "seed": trial_seed,
            "success": result.success,
            "completion_time": result.completion_time,
            "fuel": result.fuel,
        }))


@main.command("serve")
@click.option("--port", default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--data-dir", default="sessions", show_default=True, type=click.Path(path_type=Path))
@click.option("--frontend-dir", default=None, type=click.Path(path_type=Path),
              help="directory of built cockpit assets to serve at /")
def cmd_serve(port: int, host: str, data_dir: Path, frontend_dir: Path | None) -> None:
    """Serve live cockpit sessions over WebSocket."""
    import uvicorn

    from .server import create_app

    app = create_app(data_dir, frontend_dir=frontend_dir)
    uvicorn.run(app, host=host, port=port, log_level="info")


@main.command("replay")
@click.argument("log", type=click.Path(exists=True, dir_okay=False, path_type=Path))
def cmd_replay(log: Path) -> None:
    """Re-simulate a trial log and verify it bit-exactly."""
    try:
        result = replay(log)
    except LogIntegrityError as exc:
        where = f" (frame {exc.frame_index})" if exc.frame_index is not None else ""
        raise click.ClickException(f"integrity error{where}: {exc}") from None
    click.echo(dump_record({"kind": "replay", "verified": True, **result.to_dict()}))


@main.command("analyze")
@click.argument("kind", type=click.Choice(["gaze", "eeg", "tlx", "sus"]))
@click.option("--in", "in_file", required=True,
              type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--frontal", default=",".join(DEFAULT_FRONTAL), show_default=True,
              help="frontal channels for the task load index (eeg)")
@click.option("--parietal", default=",".join(DEFAULT_PARIETAL), show_default=True,
              help="parietal channels for the task load index (eeg)")
def cmd_analyze(kind: str, in_file: Path, frontal: str, parietal: str) -> None:
    """Run one analysis pipeline over a columnar input file."""
    try:
        if kind == "gaze":
            record = _analyze_gaze(in_file)
        elif kind == "eeg":
            record = _analyze_eeg(in_file, frontal.split(","), parietal.split(","))
        elif kind == "tlx":
            scores = [tlx_score(row) for row in load_tlx_csv(in_file)]
            record = {"kind": "tlx", "scores": scores, "mean": statistics.fmean(scores)}
        else:
            scores = [sus_score(row) for row in load_sus_csv(in_file)]
            record = {"kind": "sus", "scores": scores, "mean": statistics.fmean(scores)}
    except DataError as exc:
        raise click.ClickException(str(exc)) from None
    click.echo(dump_record(record))


def _analyze_gaze(path: Path) -> dict:
    samples = load_gaze_csv(path)
    valid = [s for s in samples if s.valid]
    if len(valid) < 2:
        raise DataError(f"{path}: need at least two valid gaze samples")
    duration = valid[-1].t - valid[0].t
    if duration <= 0:
        raise DataError(f"{path}: non-positive task duration")
    events = detect_fixations(samples)
    rate, mean_dur = fixation_metrics(events, duration)
    sac = saccade_stats(samples, events)
    return {
        "kind": "gaze",
        "n_samples": len(samples),
        "n_valid": len(valid),
        "task_duration": duration,
        "n_fixations": len(events),
        "fixation_rate": rate,
        "mean_fixation_duration": mean_dur,
        "saccade_mean": sac[0] if sac else None,
        "saccade_peak": sac[1] if sac else None,
    }


def _analyze_eeg(path: Path, frontal: list[str], parietal: list[str]) -> dict:
    records = load_eeg_csv(path)
    channels = {}
    for rec in records:
        powers = band_powers(rec)
        powers["engagement"] = engagement_index(
            powers["theta"], powers["alpha"], powers["beta"]
        )
        channels[rec.label] = powers
    f_theta = [channels[c]["theta"] for c in frontal if c in channels]
    p_alpha = [channels[c]["alpha"] for c in parietal if c in channels]
    tli = None
    if f_theta and p_alpha:
        tli = task_load_index(statistics.fmean(f_theta), statistics.fmean(p_alpha))
    return {
        "kind": "eeg",
        "rate": records[0].rate,
        "channels": channels,
        "task_load_index": tli,
    }


@main.command("compare")
@click.option("--in", "results_dir", required=True,
              type=click.Path(exists=True, file_okay=False, path_type=Path))
def cmd_compare(results_dir: Path) -> None:
    """Tabulate successful trials per (view x cohort) cell with view deltas."""
    results = []
    for path in sorted(results_dir.glob("*.result.json")):
        try:
            from .sessionlog import read_result_file

            results.append(read_result_file(path))
        except (ValueError, KeyError) as exc:
            raise click.ClickException(f"{path}: bad result file ({exc})") from None
    successes = [r for r in results if r.success]
    cells: dict[tuple[str, str], list[TrialResult]] = {}
    for r in successes:
        cells.setdefault((r.view.value, r.cohort.value), []).append(r)

    missing = [
        (v, c)
        for v in (View.BOTTOM.value, View.FRONT.value)
        for c in (Cohort.CIVILIAN.value, Cohort.PILOT.value)
        if (v, c) not in cells
    ]
    if missing:
        raise click.ClickException(
            "no successful trials for cells: " + ", ".join(f"{v}/{c}" for v, c in missing)
        )

    cell_records = []
    for (v, c), rs in sorted(cells.items()):
        times = [r.completion_time for r in rs]
        fuels = [r.fuel for r in rs]
        cell_records.append({
            "view": v,
            "cohort": c,
            "n": len(rs),
            "mean_time": statistics.fmean(times),
            "median_time": statistics.median(times),
            "mean_fuel": statistics.fmean(fuels),
        })

    deltas = []
    for c in (Cohort.CIVILIAN.value, Cohort.PILOT.value):
        b = next(r for r in cell_records if r["view"] == "BOTTOM" and r["cohort"] == c)
        f = next(r for r in cell_records if r["view"] == "FRONT" and r["cohort"] == c)
        deltas.append({
            "cohort": c,
            "median_time_front_minus_bottom": f["median_time"] - b["median_time"],
            "mean_fuel_front_minus_bottom": f["mean_fuel"] - b["mean_fuel"],
        })

    header = f"{'view':<8}{'cohort':<10}{'n':>4}{'mean_time':>12}{'median_time':>13}{'mean_fuel':>12}"
    click.echo(header)
    for r in cell_records:
        click.echo(
            f"{r['view']:<8}{r['cohort']:<10}{r['n']:>4}"
            f"{r['mean_time']:>12.6f}{r['median_time']:>13.6f}{r['mean_fuel']:>12.6f}"
        )
    for d in deltas:
        click.echo(
            f"delta front-bottom {d['cohort']}: "
            f"median_time={d['median_time_front_minus_bottom']:+.6f} "
            f"mean_fuel={d['mean_fuel_front_minus_bottom']:+.6f}"
        )
    click.echo(dump_record({"kind": "compare", "cells": cell_records, "deltas": deltas}))


if __name__ == "__main__":
    main()
