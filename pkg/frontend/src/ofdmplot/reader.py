"""CSV contract reader: rows in, typed records out, loud schema errors.

This package reads the documented result tables and never recomputes
any physics.  Two schemas exist:

BER rows:  format,n,m,components,snr_db,bits,errors,ber,rate_bps_hz,
           papr_p999_db,seed[,censored]
PAPR rows: format,n,m,components,frames,papr_db,exceed_prob,seed

Extra columns are tolerated; missing required columns raise
:class:`SchemaError` naming the gap.
"""

from __future__ import annotations

import csv
from pathlib import Path

__all__ = ["SchemaError", "BER_REQUIRED", "PAPR_REQUIRED", "read_rows", "group_key"]

BER_REQUIRED = ("format", "m", "components", "snr_db", "ber")
PAPR_REQUIRED = ("format", "m", "components", "papr_db", "exceed_prob")

_NUMERIC = {
    "n": int,
    "components": int,
    "snr_db": float,
    "bits": int,
    "errors": int,
    "ber": float,
    "rate_bps_hz": float,
    "papr_p999_db": float,
    "seed": int,
    "censored": lambda v: bool(int(v)),
    "frames": int,
    "papr_db": float,
    "exceed_prob": float,
}


class SchemaError(ValueError):
    """The CSV header does not carry the documented columns."""


def read_rows(paths, required) -> list[dict]:
    """Read and concatenate CSVs, checking each header against ``required``."""
    rows: list[dict] = []
    for path in paths:
        path = Path(path)
        if not path.exists():
            raise SchemaError(f"input file not found: {path}")
        with open(path, newline="") as fh:
            reader = csv.DictReader(fh)
            header = reader.fieldnames or []
            missing = [c for c in required if c not in header]
            if missing:
                raise SchemaError(
                    f"{path}: missing column(s) {', '.join(missing)}; "
                    f"found: {', '.join(header) if header else '(empty file)'}"
                )
            for raw in reader:
                row = dict(raw)
                for key, conv in _NUMERIC.items():
                    if key in row and row[key] not in (None, ""):
                        try:
                            row[key] = conv(row[key])
                        except ValueError as exc:
                            raise SchemaError(f"{path}: bad value for {key!r}: {row[key]!r}") from exc
                row.setdefault("censored", False)
                rows.append(row)
    return rows


def group_key(row: dict, keys) -> str:
    """Legend label derived from the grouping columns."""
    return " ".join(str(row.get(k, "?")) for k in keys)
