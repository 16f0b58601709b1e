"""
Data export helpers for simulation and verification outputs.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import IO, Mapping, Optional, Sequence, Union

import pandas as pd

from .common import IoFailure

FLOAT_FORMAT = "%.10g"

Destination = Union[Path, str, IO[str]]


def _ensure_parent(path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)


def export_json(records: Union[Mapping, Sequence[Mapping]], path: Path) -> None:
    """
    Persist a report mapping, or a sequence of mapping-like records, to JSON.
    """
    payload = dict(records) if isinstance(records, Mapping) else list(records)
    path = Path(path)
    try:
        _ensure_parent(path)
        with path.open("w", encoding="utf-8") as handle:
            json.dump(payload, handle, indent=2)
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc


def export_csv(
    records: Sequence[Mapping],
    destination: Destination,
    columns: Optional[Sequence[str]] = None,
) -> None:
    """
    Persist mapping-like records to CSV using pandas. Reals are written with
    10 significant digits; with ``columns`` given an empty input still
    produces the header row.
    """
    frame = pd.DataFrame(list(records), columns=list(columns) if columns else None)
    try:
        if isinstance(destination, (str, Path)):
            path = Path(destination)
            _ensure_parent(path)
            frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        else:
            frame.to_csv(destination, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    except OSError as exc:
        raise IoFailure(f"cannot write CSV: {exc}") from exc
