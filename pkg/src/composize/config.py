"""Request schema and operation handlers shared by the CLI and the HTTP service.

Both front ends funnel a flat key/value payload (CLI flags, YAML config
document, or JSON request body; later sources override earlier ones) through
validate-and-dispatch here, so the two surfaces cannot drift apart
numerically. Unknown keys are rejected.
"""
from __future__ import annotations

from typing import Any, Callable

import yaml

from ._version import __version__
from .bounds import (
    CorrelationCategory,
    RateIntervals,
    bounds,
    robust_bounds,
)
from .composite import (
    ArmRates,
    CorrelationPair,
    MarginalSpec,
    OddsRatio,
    RiskDifference,
    RiskRatio,
    composite_effect,
    composite_rate,
    treatment_rates,
)
from .design import (
    DesignSpec,
    n_composite,
    power,
    recommend,
    rho_curve,
    sample_size_interval,
)
from .simulate import GridConfig, run_grid

__all__ = ["SchemaError", "handle", "load_config", "merge", "OPERATIONS"]


class SchemaError(Exception):
    """Request payload failed validation before any computation."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


_EFFECT_KEYS = {
    "rd": ("d1", "d2", RiskDifference),
    "rr": ("r1", "r2", RiskRatio),
    "or": ("o1", "o2", OddsRatio),
}

_RATE_KEYS = ("p1", "p2")
_INTERVAL_KEYS = ("p1_interval", "p2_interval")
_DESIGN_KEYS = ("alpha", "power", "measure", "variance")

#: Keys accepted per operation.
OPERATIONS: dict[str, frozenset] = {
    "derive": frozenset(_RATE_KEYS) | {"d1", "d2", "r1", "r2", "o1", "o2", "rho", "rho0", "rho1"},
    "bounds": frozenset(_RATE_KEYS) | {"d1", "d2", "r1", "r2", "o1", "o2"},
    "size": frozenset(_RATE_KEYS) | {"d1", "d2", "r1", "r2", "o1", "o2", "rho", *_DESIGN_KEYS},
    "power": frozenset(_RATE_KEYS) | {"d1", "d2", "r1", "r2", "o1", "o2", "rho", "n", *_DESIGN_KEYS},
    "recommend": frozenset(_RATE_KEYS) | frozenset(_INTERVAL_KEYS)
    | {"d1", "d2", "r1", "r2", "o1", "o2", "category", *_DESIGN_KEYS},
    "curve": frozenset(_RATE_KEYS) | frozenset(_INTERVAL_KEYS)
    | {"d1", "d2", "r1", "r2", "o1", "o2", "rho", "n_points", *_DESIGN_KEYS},
    "simulate": frozenset(
        {
            "p1_values", "p2_values", "r1_values", "r2_values", "rho_true_values",
            "reps", "seed", "alpha", "power", "rules", "variances", "workers",
        }
    ),
}


def load_config(path: str) -> dict:
    """Load a YAML config document into a flat payload dict."""
    with open(path) as fh:
        doc = yaml.safe_load(fh)
    if doc is None:
        return {}
    if not isinstance(doc, dict):
        raise SchemaError("schema.invalid", f"config document must be a mapping, got {type(doc).__name__}")
    return doc


def merge(base: dict, override: dict) -> dict:
    """Overlay override onto base, ignoring None values in the override."""
    merged = dict(base)
    for key, value in override.items():
        if value is not None:
            merged[key] = value
    return merged


def _check_keys(op: str, payload: dict) -> None:
    allowed = OPERATIONS[op]
    unknown = sorted(set(payload) - allowed)
    if unknown:
        raise SchemaError(
            "schema.unknown_field",
            f"unknown field(s) for {op}: {', '.join(unknown)}",
        )


def _require(payload: dict, key: str) -> Any:
    if key not in payload or payload[key] is None:
        raise SchemaError("schema.missing_field", f"missing required field: {key}")
    return payload[key]


def _as_float(key: str, value: Any) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError("schema.invalid", f"field {key} must be a number, got {value!r}")
    return float(value)


def _as_int(key: str, value: Any) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError("schema.invalid", f"field {key} must be an integer, got {value!r}")
    return value


def _float_field(payload: dict, key: str) -> float:
    return _as_float(key, _require(payload, key))


def _effect_from(payload: dict):
    present = [m for m, (k1, k2, _) in _EFFECT_KEYS.items() if k1 in payload or k2 in payload]
    if not present:
        raise SchemaError(
            "schema.missing_field",
            "missing effect: provide d1/d2, r1/r2, or o1/o2",
        )
    if len(present) > 1:
        raise SchemaError(
            "schema.invalid",
            f"conflicting effect measures given: {', '.join(sorted(present))}",
        )
    measure = present[0]
    k1, k2, cls = _EFFECT_KEYS[measure]
    return cls(_float_field(payload, k1), _float_field(payload, k2))


def _rates_from(payload: dict) -> ArmRates:
    return ArmRates(_float_field(payload, "p1"), _float_field(payload, "p2"))


def _interval(payload: dict, key: str) -> tuple[float, float]:
    value = _require(payload, key)
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise SchemaError("schema.invalid", f"field {key} must be a [low, high] pair")
    return (_as_float(key, value[0]), _as_float(key, value[1]))


def _rates_or_intervals(payload: dict):
    has_intervals = any(k in payload for k in _INTERVAL_KEYS)
    has_points = any(k in payload for k in _RATE_KEYS)
    if has_intervals and has_points:
        raise SchemaError(
            "schema.invalid", "give either p1/p2 or p1_interval/p2_interval, not both"
        )
    if has_intervals:
        return RateIntervals(_interval(payload, "p1_interval"), _interval(payload, "p2_interval"))
    return _rates_from(payload)


def _design_from(payload: dict, default_measure: str) -> DesignSpec:
    measure = payload.get("measure", default_measure)
    if measure not in _EFFECT_KEYS:
        raise SchemaError("schema.invalid", f"measure must be rd, rr or or, got {measure!r}")
    variance = payload.get("variance", "pooled")
    if variance not in ("pooled", "unpooled"):
        raise SchemaError("schema.invalid", f"variance must be pooled or unpooled, got {variance!r}")
    alpha = _as_float("alpha", payload.get("alpha", 0.025))
    target = _as_float("power", payload.get("power", 0.80))
    return DesignSpec(alpha=alpha, power_target=target, measure=measure, variance=variance)


def _category_from(payload: dict) -> CorrelationCategory | None:
    raw = payload.get("category")
    if raw is None:
        return None
    name = str(raw).strip().lower().replace("-", "_").replace(" ", "_")
    for cat in CorrelationCategory:
        if cat.value == name:
            return cat
    raise SchemaError("schema.invalid", f"unknown category {raw!r}")


def _echo(payload: dict) -> dict:
    return {k: payload[k] for k in sorted(payload)}


def _base_report(payload: dict) -> dict:
    return {"inputs": _echo(payload), "version": __version__}


def _handle_derive(payload: dict) -> dict:
    effect = _effect_from(payload)
    spec = MarginalSpec(_rates_from(payload), effect)
    if "rho" in payload and ("rho0" in payload or "rho1" in payload):
        raise SchemaError("schema.invalid", "give either rho or rho0/rho1, not both")
    if "rho0" in payload or "rho1" in payload:
        corr = CorrelationPair(_float_field(payload, "rho0"), _float_field(payload, "rho1"))
    else:
        corr = CorrelationPair.common(_float_field(payload, "rho"))
    treat = treatment_rates(spec)
    report = _base_report(payload)
    report["treatment_rates"] = {"p1": treat.p1, "p2": treat.p2}
    report["composite"] = {
        "measure": effect.measure,
        "p0_star": composite_rate(spec.control, corr.rho0),
        "p1_star": composite_rate(treat, corr.rho1),
        "effect_star": composite_effect(spec, corr),
    }
    return report


def _handle_bounds(payload: dict) -> dict:
    spec = MarginalSpec(_rates_from(payload), _effect_from(payload))
    b = bounds(spec)
    report = _base_report(payload)
    report["bounds"] = {"lower": b.lower, "upper": b.upper}
    return report


def _size_result_fragment(result) -> dict:
    return {
        "n_total": result.n_total,
        "n_total_raw": result.n_total_raw,
        "n_per_group": result.n_per_group,
        "design_rho": result.design_rho_used,
        "achieved_power_at_design": result.achieved_power_at_design,
    }


def _handle_size(payload: dict) -> dict:
    effect = _effect_from(payload)
    spec = MarginalSpec(_rates_from(payload), effect)
    d = _design_from(payload, effect.measure)
    result = n_composite(spec, _float_field(payload, "rho"), d)
    report = _base_report(payload)
    report["sample_size"] = _size_result_fragment(result)
    return report


def _handle_power(payload: dict) -> dict:
    effect = _effect_from(payload)
    spec = MarginalSpec(_rates_from(payload), effect)
    d = _design_from(payload, effect.measure)
    n = _as_int("n", _require(payload, "n"))
    report = _base_report(payload)
    report["power"] = power(spec, _float_field(payload, "rho"), n, d)
    return report


def _handle_recommend(payload: dict) -> dict:
    effect = _effect_from(payload)
    target = _rates_or_intervals(payload)
    d = _design_from(payload, effect.measure)
    category = _category_from(payload)
    categories = [category] if category is not None else list(CorrelationCategory)

    report = _base_report(payload)
    if isinstance(target, RateIntervals):
        rb = robust_bounds(target, effect)
        report["bounds"] = {"lower": rb.lower, "upper": rb.upper}
        recs = [recommend(target, cat, d, effect=effect) for cat in categories]
    else:
        spec = MarginalSpec(target, effect)
        b = bounds(spec)
        report["bounds"] = {"lower": b.lower, "upper": b.upper}
        recs = [recommend(spec, cat, d) for cat in categories]
    report["recommendations"] = [
        {
            "category": rec.category.value,
            "rho_interval": list(rec.rho_interval),
            "power_range": list(rec.power_range),
            **_size_result_fragment(rec.sample_size),
        }
        for rec in recs
    ]
    return report


def _handle_curve(payload: dict) -> dict:
    effect = _effect_from(payload)
    target = _rates_or_intervals(payload)
    d = _design_from(payload, effect.measure)
    n_points = _as_int("n_points", payload.get("n_points", 33))
    if isinstance(target, RateIntervals):
        rows = rho_curve(target, d, n_points, effect=effect)
    else:
        rows = rho_curve(MarginalSpec(target, effect), d, n_points)
    report = _base_report(payload)
    report["curve"] = [
        {"rho": rho, "n_low": n_low, "n_point": n_point, "n_high": n_high}
        for rho, n_low, n_point, n_high in rows
    ]
    return report


def _float_list(payload: dict, key: str) -> tuple[float, ...]:
    value = _require(payload, key)
    if not isinstance(value, (list, tuple)) or not value:
        raise SchemaError("schema.invalid", f"field {key} must be a non-empty list of numbers")
    return tuple(_as_float(key, v) for v in value)


def _str_list(payload: dict, key: str, default: tuple[str, ...]) -> tuple[str, ...]:
    value = payload.get(key)
    if value is None:
        return default
    if not isinstance(value, (list, tuple)) or not value:
        raise SchemaError("schema.invalid", f"field {key} must be a non-empty list")
    return tuple(str(v) for v in value)


def grid_config_from(payload: dict) -> GridConfig:
    _check_keys("simulate", payload)
    return GridConfig(
        p1_values=_float_list(payload, "p1_values"),
        p2_values=_float_list(payload, "p2_values"),
        r1_values=_float_list(payload, "r1_values"),
        r2_values=_float_list(payload, "r2_values"),
        rho_true_values=_float_list(payload, "rho_true_values"),
        reps=_as_int("reps", _require(payload, "reps")),
        seed=_as_int("seed", _require(payload, "seed")),
        alpha=_as_float("alpha", payload.get("alpha", 0.025)),
        power_target=_as_float("power", payload.get("power", 0.80)),
        rules=_str_list(payload, "rules", ("weak", "moderate", "strong", "exact")),
        variances=_str_list(payload, "variances", ("pooled", "unpooled")),
        workers=_as_int("workers", payload.get("workers", 1)),
    )


def _handle_simulate(payload: dict) -> dict:
    config = grid_config_from(payload)
    rows = run_grid(config)
    report = _base_report(payload)
    report["seed"] = config.seed
    report["rows"] = rows
    return report


_HANDLERS: dict[str, Callable[[dict], dict]] = {
    "derive": _handle_derive,
    "bounds": _handle_bounds,
    "size": _handle_size,
    "power": _handle_power,
    "recommend": _handle_recommend,
    "curve": _handle_curve,
    "simulate": _handle_simulate,
}


def handle(op: str, payload: dict) -> dict:
    """Validate the payload for op and run it, returning the report dict."""
    if op not in _HANDLERS:
        raise SchemaError("schema.invalid", f"unknown operation {op!r}")
    _check_keys(op, payload)
    return _HANDLERS[op](payload)
