"""Declarative walk configs, the walk runner, and trace output.

A config is JSON.  Rationals are written as strings ``"a/b"`` (integers may
be bare).  Coordinates are lists starting at index 1, or objects keyed by
index.  Example::

    {
      "name": "shift",
      "degree_cap": 6,
      "initial": {"kind": "group-like", "c": ["1"]},
      "steps": [{"kind": "outer", "components": [{"prob": "1", "phi": ["1"]}]}],
      "observables": ["1", "s[1]"],
      "audit": {"trials": 10, "seed": 3}
    }

Initial kinds: ``group-like`` and ``extended`` (either ``c``/``d`` or a list of
weighted ``branches``) and ``pure-inner`` (``r`` maps partitions to rationals).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from decimal import Context, Decimal
from fractions import Fraction
from pathlib import Path

import jsonschema

from .arw import (
    DEFAULT_BRANCH_CAP,
    InnerStep,
    MixtureState,
    OuterStep,
    PlethStep,
    PureInnerState,
    WeightedPlethStep,
    apply_step,
    measure,
    positivity_audit,
    pure_inner_step,
)
from .expr import ExpressionError, parse_symfunc
from .partitions import parse_partition

RATIONAL = {"oneOf": [{"type": "integer"},
                      {"type": "string", "pattern": r"^\s*-?\d+\s*(/\s*\d+\s*)?$"}]}
COORDS = {"oneOf": [{"type": "array", "items": RATIONAL},
                    {"type": "object", "patternProperties": {r"^\d+$": RATIONAL},
                     "additionalProperties": False}]}
PARTITION_MAP = {"type": "object", "additionalProperties": RATIONAL}

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "symarw walk config",
    "type": "object",
    "required": ["degree_cap", "initial"],
    "additionalProperties": False,
    "properties": {
        "name": {"type": "string", "pattern": r"^[A-Za-z0-9_.-]+$"},
        "degree_cap": {"type": "integer", "minimum": 0, "maximum": 24},
        "branch_cap": {"type": "integer", "minimum": 1},
        "initial": {
            "type": "object",
            "required": ["kind"],
            "additionalProperties": False,
            "properties": {
                "kind": {"enum": ["group-like", "extended", "pure-inner"]},
                "c": COORDS,
                "d": COORDS,
                "r": PARTITION_MAP,
                "branches": {
                    "type": "array", "minItems": 1,
                    "items": {"type": "object", "required": ["weight", "c"],
                              "additionalProperties": False,
                              "properties": {"weight": RATIONAL, "c": COORDS, "d": COORDS}},
                },
            },
        },
        "steps": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["kind"],
                "additionalProperties": False,
                "properties": {
                    "kind": {"enum": ["outer", "inner", "pleth-right"]},
                    "components": {
                        "type": "array", "minItems": 1,
                        "items": {"type": "object", "required": ["prob"],
                                  "additionalProperties": False,
                                  "properties": {"prob": RATIONAL, "phi": COORDS, "psi": COORDS}},
                    },
                    "psi": PARTITION_MAP,
                    "m": {"type": "integer", "minimum": 1},
                    "parts": {
                        "type": "array", "minItems": 1,
                        "items": {"type": "object", "required": ["w", "m"],
                                  "additionalProperties": False,
                                  "properties": {"w": RATIONAL,
                                                 "m": {"type": "integer", "minimum": 1}}},
                    },
                },
            },
        },
        "observables": {"type": "array", "items": {"type": "string"}},
        "audit": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"trials": {"type": "integer", "minimum": 0},
                           "seed": {"type": "integer", "minimum": 0},
                           "max_degree": {"type": "integer", "minimum": 0}},
        },
        "output": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"dir": {"type": "string"}, "name": {"type": "string"}},
        },
    },
}

CSV_COLUMNS = ["step", "kind", "params", "branches", "observable", "value_rational",
               "value_decimal", "truncated", "audit_violations"]

_DECIMAL = Context(prec=20)


class ConfigError(ValueError):
    """Invalid walk config; the message names the offending line or field."""


@dataclass
class WalkConfig:
    name: str
    degree_cap: int
    initial: object  # MixtureState or PureInnerState
    steps: list
    step_params: list
    observables: list  # (text, SymFunc)
    trials: int = 0
    seed: int = 0
    max_degree: int | None = None
    branch_cap: int = DEFAULT_BRANCH_CAP
    out_dir: str | None = None


@dataclass
class TraceRecord:
    step: int
    kind: str
    params: dict
    branches: int
    values: list  # (observable text, Fraction)
    truncated: bool
    audit: dict = field(default_factory=dict)


def rat(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def dec(x: Fraction) -> str:
    return str(_DECIMAL.divide(Decimal(x.numerator), Decimal(x.denominator)))


def _frac(value) -> Fraction:
    return Fraction(str(value).replace(" ", ""))


def _coords(value):
    if isinstance(value, dict):
        return {int(k): _frac(v) for k, v in value.items()}
    return [_frac(v) for v in value]


def _partition_map(value: dict, where: str) -> dict:
    out = {}
    for key, v in value.items():
        try:
            out[parse_partition(key)] = _frac(v)
        except ValueError as exc:
            raise ConfigError(f"{where}: bad partition key {key!r}: {exc}")
    return out


def _field(path) -> str:
    out = ""
    for part in path:
        out += f"[{part}]" if isinstance(part, int) else (f".{part}" if out else str(part))
    return out or "<root>"


def parse_config(data: dict, default_name: str = "trace") -> WalkConfig:
    """Validate a decoded config and build its states and steps."""
    errors = sorted(jsonschema.Draft202012Validator(SCHEMA).iter_errors(data),
                    key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        raise ConfigError(f"field {_field(e.absolute_path)}: {e.message}")
    cap = data["degree_cap"]
    init = data["initial"]
    kind = init["kind"]
    try:
        if kind == "pure-inner":
            if "r" not in init:
                raise ConfigError("field initial.r: required for pure-inner states")
            initial = PureInnerState.of(_partition_map(init["r"], "initial.r"), cap)
        else:
            if "branches" in init:
                raw = [(_frac(b["weight"]), _coords(b["c"]),
                        _coords(b["d"]) if "d" in b else None) for b in init["branches"]]
            else:
                if "c" not in init:
                    raise ConfigError("field initial.c: required")
                raw = [(Fraction(1), _coords(init["c"]),
                        _coords(init["d"]) if "d" in init else None)]
            if kind == "extended" and any(d is None for *_, d in raw):
                raise ConfigError("field initial.d: required for extended states")
            if kind == "group-like" and any(d is not None for *_, d in raw):
                raise ConfigError("field initial.d: only extended states carry d")
            initial = MixtureState.mixture(raw, cap)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"field initial: {exc}")

    steps, params = [], []
    raw_steps = data.get("steps", [])
    for k, st in enumerate(raw_steps):
        where = f"steps[{k}]"
        try:
            step, param = _parse_step(st, kind, cap, where)
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError(f"field {where}: {exc}")
        if isinstance(step, WeightedPlethStep) and k != len(raw_steps) - 1:
            raise ConfigError(f"field {where}: a weighted plethystic step must be the last step")
        steps.append(step)
        params.append(param)

    observables = []
    for k, text in enumerate(data.get("observables", [])):
        try:
            f = parse_symfunc(text, cap)
        except ExpressionError as exc:
            raise ConfigError(f"field observables[{k}]: {exc}")
        except ValueError as exc:
            raise ConfigError(f"field observables[{k}]: {exc}")
        observables.append((text, f))

    audit = data.get("audit", {})
    if 2 * audit.get("max_degree", 0) > cap:
        raise ConfigError("field audit.max_degree: squares would exceed degree_cap")
    output = data.get("output", {})
    return WalkConfig(
        name=output.get("name", data.get("name", default_name)),
        degree_cap=cap,
        initial=initial,
        steps=steps,
        step_params=params,
        observables=observables,
        trials=audit.get("trials", 0),
        seed=audit.get("seed", 0),
        max_degree=audit.get("max_degree"),
        branch_cap=data.get("branch_cap", DEFAULT_BRANCH_CAP),
        out_dir=output.get("dir"),
    )


def _trim(values: list) -> list:
    while values and values[-1] == "0/1":
        values = values[:-1]
    return values


def _parse_step(st: dict, state_kind: str, cap: int, where: str):
    kind = st["kind"]
    if state_kind == "pure-inner":
        if kind != "inner" or "psi" not in st:
            raise ConfigError(f"field {where}: pure-inner walks take inner steps with a 'psi' map")
        psi = _partition_map(st["psi"], f"{where}.psi")
        return ("pure-inner", psi), {"psi": {str(k): rat(v) for k, v in psi.items()}}
    if kind in ("outer", "inner"):
        key = "phi" if kind == "outer" else "psi"
        if "components" not in st:
            raise ConfigError(f"field {where}.components: required for {kind} steps")
        if state_kind == "extended" and kind == "inner":
            raise ConfigError(f"field {where}: inner steps are not defined on extended states")
        items = []
        for j, comp in enumerate(st["components"]):
            if key not in comp:
                raise ConfigError(f"field {where}.components[{j}].{key}: required")
            items.append((_frac(comp["prob"]), _coords(comp[key])))
        try:
            step = (OuterStep if kind == "outer" else InnerStep).of(items, cap)
        except ValueError as exc:
            raise ConfigError(f"field {where}.components: {exc}")
        param = {"components": [{"prob": rat(p), key: _trim(c.to_strings())}
                                for p, c in step.components]}
        return step, param
    if state_kind == "extended":
        raise ConfigError(f"field {where}: plethystic steps are not defined on extended states")
    if "m" in st and "parts" not in st:
        return PlethStep(st["m"]), {"m": st["m"]}
    if "parts" in st and "m" not in st:
        step = WeightedPlethStep(tuple((_frac(p["w"]), p["m"]) for p in st["parts"]))
        return step, {"parts": [[rat(w), m] for w, m in step.parts]}
    raise ConfigError(f"field {where}: pleth-right steps need exactly one of 'm' or 'parts'")


def load_config(path: str | Path) -> WalkConfig:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}")
    except OSError as exc:
        raise ConfigError(f"{path}: {exc}")
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be an object")
    try:
        return parse_config(data, default_name=path.stem)
    except ConfigError as exc:
        raise ConfigError(f"{path}: {exc}") from None


# ---------------------------------------------------------------------------
# running

def _audit(state, config: WalkConfig, step: int) -> dict:
    out: dict = {}
    if isinstance(state, PureInnerState):
        out["normalization"] = rat(state.normalization())
    if config.trials:
        report = positivity_audit(state, config.trials, config.seed,
                                  config.max_degree, stream=(step,))
        out.update(trials=config.trials, seed=config.seed, violations=len(report.violations),
                   min_value=None if report.min_value is None else rat(report.min_value))
    else:
        out["violations"] = 0
    return out


def _record(step: int, kind: str, params: dict, state, config: WalkConfig) -> TraceRecord:
    if isinstance(state, MixtureState):
        branches, truncated = len(state.branches), state.truncated
    elif isinstance(state, PureInnerState):
        branches, truncated = len(state.r), False
    else:
        branches, truncated = 1, state.truncated
    values = [(text, measure(state, f)) for text, f in config.observables]
    return TraceRecord(step, kind, params, branches, values, truncated, _audit(state, config, step))


def run(config: WalkConfig) -> list[TraceRecord]:
    """Execute the walk; one record for the initial state and one per step."""
    state = config.initial
    records = [_record(0, "initial", {}, state, config)]
    for k, (step, params) in enumerate(zip(config.steps, config.step_params), start=1):
        if isinstance(step, tuple):  # pure-inner
            state, _ = pure_inner_step(state, step[1])
            kind = "inner"
        else:
            state = apply_step(state, step, config.branch_cap)
            kind = step.kind
        records.append(_record(k, kind, params, state, config))
    return records


def _params_text(params: dict) -> str:
    return json.dumps(params, separators=(",", ":"))


def trace_csv(records: list[TraceRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in records:
        base = [r.step, r.kind, _params_text(r.params), r.branches]
        tail = [str(r.truncated).lower(), r.audit.get("violations", 0)]
        if not r.values:
            writer.writerow(base + ["", "", ""] + tail)
        for text, value in r.values:
            writer.writerow(base + [text, rat(value), dec(value)] + tail)
    return buf.getvalue()


def trace_json(records: list[TraceRecord], config: WalkConfig) -> str:
    doc = {
        "name": config.name,
        "degree_cap": config.degree_cap,
        "seed": config.seed,
        "records": [
            {
                "step": r.step,
                "kind": r.kind,
                "params": r.params,
                "branches": r.branches,
                "truncated": r.truncated,
                "values": [{"observable": t, "value_rational": rat(v), "value_decimal": dec(v)}
                           for t, v in r.values],
                "audit": r.audit,
            }
            for r in records
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def write_trace(records: list[TraceRecord], config: WalkConfig, out_dir: str | Path) -> tuple[Path, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / f"{config.name}.csv"
    json_path = out / f"{config.name}.json"
    csv_path.write_text(trace_csv(records))
    json_path.write_text(trace_json(records, config))
    return csv_path, json_path


def run_walk(config_path: str | Path, out_dir: str | Path | None = None) -> tuple[Path, Path]:
    config = load_config(config_path)
    records = run(config)
    target = out_dir or config.out_dir or "."
    return write_trace(records, config, target)
