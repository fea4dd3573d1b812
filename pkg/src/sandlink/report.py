"""Scenario files, parameter sweeps and deterministic CSV/JSON reports.

A scenario is a JSON document with the top-level keys ``link``, ``medium``,
``differential``, ``sweep`` and ``output``. Unit conventions in scenario files
and CSV headers:

    visibility        m       particle_radius   um
    humidity          %       distance          km
    frequency         GHz

Rows are ordered by parameter combination (outer) and then by grid value
(inner), so each combination forms one contiguous curve.
"""

import itertools
import json
import math
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional

import jsonschema
import numpy as np

from .depolarization import DifferentialPropagation, xpd_over_path
from .dusty_channel import DustMedium, StormProfile, specific_attenuation
from .errors import (
    ComputeError,
    SandlinkError,
    ScenarioParseError,
    ScenarioValidationError,
)
from .link_budget import LinkSpec, evaluate, preset_link, preset_links
from .permittivity import REGION_EPS, ComplexPermittivity

# axis name -> (CSV column, factor converting the file unit to the model unit)
AXES = {
    "visibility": ("visibility_m", 1e-3),
    "particle_radius": ("particle_radius_um", 1e-6),
    "humidity": ("humidity_pct", 1.0),
    "distance": ("distance_km", 1.0),
    "frequency": ("frequency_ghz", 1.0),
}

OUTPUTS = {
    "path_loss": "path_loss_db",
    "specific_attenuation": "specific_attenuation_db_per_km",
    "margin": "margin_db",
    "xpd": "xpd_db",
}

_LINK_FIELDS = {
    "name": "name",
    "freq_ghz": "freq",
    "distance_km": "distance",
    "tx_power_dbm": "tx_power",
    "tx_gain_dbi": "tx_gain",
    "rx_gain_dbi": "rx_gain",
    "rx_threshold_dbm": "rx_threshold",
    "antenna_height_m": "antenna_height",
}

_number = {"type": "number"}
_numbers = {"type": "array", "items": _number, "minItems": 1}

_differential_entry = {
    "type": "object",
    "additionalProperties": False,
    "required": ["atten_h", "atten_v", "phase_h", "phase_v"],
    "properties": {
        "label": {"type": "string"},
        "atten_h": _number,
        "atten_v": _number,
        "phase_h": _number,
        "phase_v": _number,
        "ref_visibility_m": {"type": "number", "exclusiveMinimum": 0},
    },
}

SCENARIO_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["link", "medium", "sweep"],
    "properties": {
        "link": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "preset": {"enum": [link.name for link in preset_links()]},
                "name": {"type": "string"},
                **{key: _number for key in _LINK_FIELDS if key != "name"},
            },
        },
        "medium": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "particle_radius_um": _number,
                "visibility_m": _number,
                "ref_height_m": _number,
                "humidity_pct": _number,
                "eps1": _number,
                "eps2": _number,
                "calibration_scale": _number,
            },
        },
        "differential": {
            "oneOf": [
                {"type": "null"},
                _differential_entry,
                {"type": "array", "items": _differential_entry, "minItems": 1},
            ]
        },
        "sweep": {
            "type": "object",
            "additionalProperties": False,
            "required": ["axis", "grid", "outputs"],
            "properties": {
                "axis": {"enum": list(AXES)},
                "grid": {
                    "oneOf": [
                        _numbers,
                        {
                            "type": "object",
                            "additionalProperties": False,
                            "required": ["start", "stop", "num"],
                            "properties": {
                                "start": _number,
                                "stop": _number,
                                "num": {"type": "integer", "minimum": 1},
                                "spacing": {"enum": ["linear", "log"]},
                            },
                        },
                    ]
                },
                "combine": {
                    "type": "object",
                    "additionalProperties": False,
                    "properties": {axis: _numbers for axis in AXES},
                },
                "outputs": {
                    "type": "array",
                    "items": {"enum": list(OUTPUTS)},
                    "minItems": 1,
                    "uniqueItems": True,
                },
            },
        },
        "output": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "csv": {"type": "string", "minLength": 1},
                "json": {"type": "string", "minLength": 1},
            },
        },
    },
}


@dataclass(frozen=True)
class DifferentialSetting:
    """Differential propagation constants, optionally tied to a visibility.

    With ``ref_visibility`` (km) set, the constants are taken as valid at that
    visibility and scaled by ``ref_visibility / V``, i.e. in proportion to the
    dust concentration, as the specific attenuation is.
    """

    diff: DifferentialPropagation
    label: str = ""
    ref_visibility: Optional[float] = None

    def at_visibility(self, visibility) -> DifferentialPropagation:
        if self.ref_visibility is None:
            return self.diff
        return self.diff.scaled(self.ref_visibility / visibility)


@dataclass(frozen=True)
class SweepSpec:
    axis: str
    grid: tuple
    link: LinkSpec
    medium: dict  # DustMedium keyword arguments; completed per grid point
    outputs: tuple
    differential: tuple = ()
    combine: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.axis not in AXES:
            raise ScenarioValidationError(f"unknown sweep axis {self.axis!r}")
        if not self.grid:
            raise ScenarioValidationError("sweep grid is empty")
        steps = np.diff(np.asarray(self.grid, dtype=float))
        if not (np.all(steps > 0) or np.all(steps < 0)):
            raise ScenarioValidationError("sweep grid must be strictly monotone")
        for name in self.outputs:
            if name not in OUTPUTS:
                raise ScenarioValidationError(f"unknown output {name!r}")
        if "xpd" in self.outputs and not self.differential:
            raise ScenarioValidationError("output 'xpd' requires a 'differential' block")
        if self.axis in self.combine:
            raise ScenarioValidationError(f"axis {self.axis!r} cannot also be combined")
        for key, values in self.combine.items():
            if key not in AXES:
                raise ScenarioValidationError(f"unknown combine parameter {key!r}")
            if not values:
                raise ScenarioValidationError(f"combine list for {key!r} is empty")

    @property
    def labelled_differential(self) -> bool:
        return len(self.differential) > 1 or any(d.label for d in self.differential)

    @property
    def columns(self) -> list:
        cols = [AXES[self.axis][0]]
        cols += [AXES[key][0] for key in self.combine]
        if self.labelled_differential:
            cols.append("differential")
        cols += [OUTPUTS[name] for name in self.outputs]
        return cols

    def combinations(self):
        keys = list(self.combine)
        diffs = self.differential or (None,)
        for values in itertools.product(*(self.combine[k] for k in keys)):
            for diff in diffs:
                yield dict(zip(keys, values)), diff


def _apply_parameters(spec: SweepSpec, params: dict):
    """Link and medium with the swept parameters (file units) substituted."""
    link = spec.link
    medium_kw = dict(spec.medium)
    for key, value in params.items():
        model_value = value * AXES[key][1]
        if key == "distance":
            link = link.with_(distance=model_value)
        elif key == "frequency":
            link = link.with_(freq=model_value)
        else:
            medium_kw[key] = model_value
    medium_kw.setdefault("ref_height", link.antenna_height)
    return link, DustMedium(**medium_kw)


def _evaluate_point(spec: SweepSpec, params: dict, diff: Optional[DifferentialSetting]):
    link, medium = _apply_parameters(spec, params)
    values = {}
    if "path_loss" in spec.outputs or "margin" in spec.outputs:
        budget = evaluate(link, StormProfile.uniform(medium, link.distance))
        values["path_loss"] = budget.path_loss.total
        values["margin"] = budget.margin
    if "specific_attenuation" in spec.outputs:
        values["specific_attenuation"] = specific_attenuation(medium, link.freq, link.antenna_height)
    if "xpd" in spec.outputs:
        values["xpd"] = xpd_over_path(diff.at_visibility(medium.visibility), link.distance)
    return [values[name] for name in spec.outputs]


def sweep(spec: SweepSpec, workers: int = 1) -> list:
    """Evaluate every (combination, grid value) point; rows come back in a fixed order.

    Each row is a list matching ``spec.columns``. ``workers > 1`` evaluates
    points in a thread pool; the row order does not change.
    """
    points = []
    for combo, diff in spec.combinations():
        for x in spec.grid:
            points.append(({spec.axis: x, **combo}, combo, diff, x))

    def run(point):
        params, combo, diff, x = point
        try:
            outputs = _evaluate_point(spec, params, diff)
        except SandlinkError as exc:
            where = ", ".join(f"{AXES[k][0]}={v!r}" for k, v in params.items())
            if diff is not None and diff.label:
                where += f", differential={diff.label}"
            raise ComputeError(f"at {where}: {exc}") from exc
        row = [x, *combo.values()]
        if spec.labelled_differential:
            row.append(diff.label)
        return row + outputs

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(run, points))
    return [run(p) for p in points]


def format_value(value) -> str:
    """Fixed scientific notation, 9 significant digits; ``inf`` for infinities."""
    if isinstance(value, str):
        return value
    value = float(value)
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if math.isnan(value):
        return "nan"
    return f"{value:.8e}"


def to_csv(columns, rows) -> str:
    lines = [",".join(columns)]
    lines += [",".join(format_value(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def to_json(columns, rows) -> str:
    """Structured report; infinities become null plus an ``<column>_is_inf`` flag."""
    records = []
    for row in rows:
        record = {}
        for col, value in zip(columns, row):
            if isinstance(value, float) and math.isinf(value):
                record[col] = None
                record[f"{col}_is_inf"] = True
            else:
                record[col] = value
        records.append(record)
    return json.dumps({"columns": list(columns), "rows": records}, indent=1) + "\n"


# ---------------------------------------------------------------- scenarios


def _no_duplicate_keys(pairs):
    obj = {}
    for key, value in pairs:
        if key in obj:
            raise ScenarioParseError(f"duplicate key {key!r}")
        obj[key] = value
    return obj


def _line_of_key(text: str, key: str) -> Optional[int]:
    match = re.search(r'"%s"\s*:' % re.escape(key), text)
    if match is None:
        return None
    return text.count("\n", 0, match.start()) + 1


def _located(text, key, message):
    line = _line_of_key(text, key) if key else None
    where = f"key {key!r}" if key else "document"
    if line is not None:
        where += f" (line {line})"
    return f"{where}: {message}"


def parse_scenario_text(text: str) -> dict:
    try:
        return json.loads(text, object_pairs_hook=_no_duplicate_keys)
    except json.JSONDecodeError as exc:
        raise ScenarioParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    except ScenarioParseError as exc:
        key = str(exc).split("'")[1]
        raise ScenarioParseError(_located(text, key, str(exc))) from None


def _schema_error_key(error) -> Optional[str]:
    if error.validator == "additionalProperties":
        allowed = set(error.schema.get("properties", {}))
        extra = sorted(k for k in error.instance if k not in allowed)
        if extra:
            return extra[0]
    if error.validator == "required":
        return None
    keys = [p for p in error.absolute_path if isinstance(p, str)]
    return keys[-1] if keys else None


def _build_link(doc: dict) -> LinkSpec:
    doc = dict(doc)
    preset = doc.pop("preset", None)
    kwargs = {_LINK_FIELDS[key]: value for key, value in doc.items()}
    if preset is not None:
        return preset_link(preset).with_(**kwargs)
    missing = sorted(k for k, f in _LINK_FIELDS.items() if f not in kwargs and k not in ("name", "antenna_height_m"))
    if missing:
        raise ScenarioValidationError(f"link needs 'preset' or all of {missing}")
    kwargs.setdefault("name", "custom")
    return LinkSpec(**kwargs)


def _build_medium(doc: dict) -> dict:
    kw = {}
    if "particle_radius_um" in doc:
        kw["particle_radius"] = doc["particle_radius_um"] * 1e-6
    if "visibility_m" in doc:
        kw["visibility"] = doc["visibility_m"] * 1e-3
    if "ref_height_m" in doc:
        kw["ref_height"] = doc["ref_height_m"]
    if "humidity_pct" in doc:
        kw["humidity"] = doc["humidity_pct"]
    if "calibration_scale" in doc:
        kw["calibration_scale"] = doc["calibration_scale"]
    kw["base_eps"] = ComplexPermittivity(
        doc.get("eps1", REGION_EPS.eps1), doc.get("eps2", REGION_EPS.eps2)
    )
    return kw


def _build_grid(grid) -> tuple:
    if isinstance(grid, list):
        return tuple(float(v) for v in grid)
    spacing = grid.get("spacing", "linear")
    if spacing == "log":
        if grid["start"] <= 0 or grid["stop"] <= 0:
            raise ScenarioValidationError("log-spaced grid needs positive start and stop")
        values = np.geomspace(grid["start"], grid["stop"], grid["num"])
    else:
        values = np.linspace(grid["start"], grid["stop"], grid["num"])
    return tuple(float(v) for v in values)


def _build_differential(doc) -> tuple:
    if doc is None:
        return ()
    entries = doc if isinstance(doc, list) else [doc]
    settings = []
    for entry in entries:
        ref = entry.get("ref_visibility_m")
        settings.append(
            DifferentialSetting(
                DifferentialPropagation(entry["atten_h"], entry["atten_v"], entry["phase_h"], entry["phase_v"]),
                entry.get("label", ""),
                None if ref is None else ref * 1e-3,
            )
        )
    labels = [s.label for s in settings]
    if len(settings) > 1 and (len(set(labels)) != len(labels) or "" in labels):
        raise ScenarioValidationError("multiple differential entries need distinct labels")
    return tuple(settings)


def build_sweep(doc: dict, text: str = "") -> SweepSpec:
    """Validate a parsed scenario and turn it into a :class:`SweepSpec`."""
    validator = jsonschema.Draft202012Validator(SCENARIO_SCHEMA)
    error = jsonschema.exceptions.best_match(validator.iter_errors(doc))
    if error is not None:
        raise ScenarioValidationError(_located(text, _schema_error_key(error), error.message))

    sweep_doc = doc["sweep"]
    try:
        link = _build_link(doc["link"])
        medium = _build_medium(doc["medium"])
        spec = SweepSpec(
            axis=sweep_doc["axis"],
            grid=_build_grid(sweep_doc["grid"]),
            link=link,
            medium=medium,
            outputs=tuple(sweep_doc["outputs"]),
            differential=_build_differential(doc.get("differential")),
            combine={k: tuple(float(v) for v in vals) for k, vals in sweep_doc.get("combine", {}).items()},
        )
        swept = {spec.axis, *spec.combine}
        for key, axis in (("particle_radius", "particle_radius"), ("visibility", "visibility")):
            if key not in medium and axis not in swept:
                raise ScenarioValidationError(f"medium needs '{AXES[axis][0]}' unless it is swept")
        # probe the first point so physics range errors surface as validation errors
        first = {spec.axis: spec.grid[0], **{k: v[0] for k, v in spec.combine.items()}}
        _apply_parameters(spec, first)
    except ScenarioValidationError:
        raise
    except (SandlinkError, KeyError) as exc:
        raise ScenarioValidationError(str(exc)) from exc
    return spec


def bundled_scenarios() -> list:
    root = resources.files("sandlink") / "scenarios"
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".json"))


def resolve_scenario(path) -> Path:
    """``path`` itself if it exists, otherwise a bundled scenario of that name."""
    path = Path(path)
    if path.exists():
        return path
    bundled = resources.files("sandlink") / "scenarios" / path.name
    if bundled.is_file():
        return Path(str(bundled))
    raise ScenarioParseError(f"scenario file not found: {path}")


@dataclass
class Report:
    columns: list
    rows: list
    csv: str
    json: Optional[str] = None
    written: tuple = ()


def load_scenario(path) -> tuple:
    """Read, parse and validate a scenario file; returns ``(spec, document)``."""
    path = resolve_scenario(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioParseError(f"cannot read {path}: {exc}") from exc
    doc = parse_scenario_text(text)
    if not isinstance(doc, dict):
        raise ScenarioValidationError("scenario must be a JSON object")
    return build_sweep(doc, text), doc


def run_scenario(path, out_dir=None, workers: int = 1) -> Report:
    """Run a scenario file and write its CSV (and optional JSON) into ``out_dir``."""
    spec, doc = load_scenario(path)
    rows = sweep(spec, workers=workers)
    columns = spec.columns
    report = Report(columns, rows, to_csv(columns, rows))
    output = doc.get("output", {})
    if "json" in output:
        report.json = to_json(columns, rows)
    if out_dir is not None:
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        written = []
        csv_path = out_dir / output.get("csv", Path(path).stem + ".csv")
        csv_path.write_text(report.csv, encoding="utf-8", newline="\n")
        written.append(csv_path)
        if report.json is not None:
            json_path = out_dir / output["json"]
            json_path.write_text(report.json, encoding="utf-8", newline="\n")
            written.append(json_path)
        report.written = tuple(written)
    return report
