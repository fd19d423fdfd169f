"""Columnar text ingestion for the analysis pipeline.

Gaze: CSV with header t,dx,dy,dz,pupil,valid (valid as 0/1).
EEG:  CSV with header t,<ch1>,<ch2>,... ; rate inferred from timestamps.
TLX:  CSV with header mental,physical,temporal,performance,effort,frustration.
SUS:  CSV with header q1..q10.
Parse failures raise DataError naming the offending line.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from ..errors import DataError
from .eeg import EegChannelRecord
from .gaze import GazeSample
from .scores import TLX_SUBSCALES

GAZE_COLUMNS = ("t", "dx", "dy", "dz", "pupil", "valid")
SUS_COLUMNS = tuple(f"q{i}" for i in range(1, 11))


def _read_rows(path: str | Path, required: tuple[str, ...]) -> list[tuple[int, dict]]:
    path = Path(path)
    with path.open("r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise DataError(f"{path}: empty file")
        missing = [c for c in required if c not in reader.fieldnames]
        if missing:
            raise DataError(f"{path}: header missing columns {missing}")
        rows = []
        for row in reader:
            rows.append((reader.line_num, row))
    return rows


def _field(path, lineno: int, row: dict, col: str) -> float:
    raw = row.get(col)
    if raw is None or raw == "":
        raise DataError(f"{path}: line {lineno}: missing value for {col!r}")
    try:
        return float(raw)
    except ValueError:
        raise DataError(f"{path}: line {lineno}: bad number for {col!r}: {raw!r}") from None


def load_gaze_csv(path: str | Path) -> list[GazeSample]:
    samples = []
    for lineno, row in _read_rows(path, GAZE_COLUMNS):
        t = _field(path, lineno, row, "t")
        d = np.array([_field(path, lineno, row, c) for c in ("dx", "dy", "dz")])
        pupil = _field(path, lineno, row, "pupil")
        valid = _field(path, lineno, row, "valid") != 0.0
        try:
            samples.append(GazeSample(t=t, direction=d, pupil_diameter=pupil, valid=valid))
        except DataError as exc:
            raise DataError(f"{path}: line {lineno}: {exc}") from None
    return samples


def load_eeg_csv(path: str | Path) -> list[EegChannelRecord]:
    path = Path(path)
    with path.open("r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError(f"{path}: empty file") from None
        header = [h.strip() for h in header]
        if not header or header[0] != "t" or len(header) < 2:
            raise DataError(f"{path}: header must be t,<channel>,... got {header}")
        channels = header[1:]
        times: list[float] = []
        data: list[list[float]] = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise DataError(f"{path}: line {lineno}: expected {len(header)} fields, got {len(row)}")
            try:
                vals = [float(x) for x in row]
            except ValueError:
                raise DataError(f"{path}: line {lineno}: bad number") from None
            times.append(vals[0])
            data.append(vals[1:])
    if len(times) < 2:
        raise DataError(f"{path}: need at least two EEG samples")
    t = np.array(times)
    if np.any(np.diff(t) <= 0):
        raise DataError(f"{path}: timestamps must strictly increase")
    rate = (len(t) - 1) / (t[-1] - t[0])
    arr = np.array(data)
    return [
        EegChannelRecord(label=ch, samples=arr[:, i], rate=rate)
        for i, ch in enumerate(channels)
    ]


def load_tlx_csv(path: str | Path) -> list[tuple[float, ...]]:
    sheets = []
    for lineno, row in _read_rows(path, TLX_SUBSCALES):
        sheets.append(tuple(_field(path, lineno, row, c) for c in TLX_SUBSCALES))
    if not sheets:
        raise DataError(f"{path}: no TLX rows")
    return sheets


def load_sus_csv(path: str | Path) -> list[tuple[float, ...]]:
    sheets = []
    for lineno, row in _read_rows(path, SUS_COLUMNS):
        sheets.append(tuple(_field(path, lineno, row, c) for c in SUS_COLUMNS))
    if not sheets:
        raise DataError(f"{path}: no SUS rows")
    return sheets
