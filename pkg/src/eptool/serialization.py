"""CSV and JSON output with byte-stable formatting."""

from __future__ import annotations

import io
import json
from importlib import resources

from .analysis import TimeSeries
from .hamiltonians import model_to_dict

__all__ = ["SCHEMAS", "dumps_json", "load_schema", "series_to_csv"]

SCHEMAS = ("model", "ep_report", "contractivity_report", "pair_scan", "manifest")


def _fmt(x: float) -> str:
    # repr is the shortest string that round-trips a double
    return repr(float(x))


def series_to_csv(series: TimeSeries) -> str:
    """A ``#`` comment line naming the measure and model, then ``t,value`` rows (LF endings)."""
    summary = json.dumps(model_to_dict(series.model), sort_keys=True, separators=(",", ":"))
    extras = "".join(f" {k}={_fmt(v)}" for k, v in sorted(series.params.items())
                     if isinstance(v, (int, float)))
    buf = io.StringIO(newline="")
    buf.write(f"# measure={series.measure} model={summary}{extras}\n")
    buf.write("t,value\n")
    for t, v in zip(series.times, series.values):
        buf.write(f"{_fmt(t)},{_fmt(v)}\n")
    return buf.getvalue()


def dumps_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n"


def load_schema(name: str) -> dict:
    if name not in SCHEMAS:
        raise KeyError(name)
    text = resources.files("eptool.schemas").joinpath(f"{name}.json").read_text(encoding="utf-8")
    return json.loads(text)
