"""Parsers for the textual input formats used by the CLI.

Weights:   ``power:<alpha>``, ``log``, ``explicit:<json-path>``,
           ``explicit-linear:<json-path>``
Sequence:  JSON ``{"values": [...], "tail": ..., "limit": s}``, ``zero``,
           ``constant:<c>`` or ``@<json-path>``
Series:    JSON ``{"a0": .., "a": [...], "b": [...], "tail": ...}``, ``zero``
           or ``@<json-path>``; ``"a"``/``"b"`` may name a generator
Metric:    ``C:grid=<N>`` or ``Lp:p=<p>,grid=<N>``
Schedule:  ``1,10,100`` or ``geom:<start>:<factor>:<count>``
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import RejectedSpec
from .fourier import CMetric, DecayBound, LpMetric, TrigSeries, ZeroTail as SeriesZeroTail
from .sequences import ConstantTail, InversePower, NumSequence, ZeroTail
from .weights import FORBIDDEN, LAST_VALUE_PLUS_LINEAR, Explicit, Logarithmic, Power, build_lambda

DEFAULT_SCHEDULE = tuple(2 ** i for i in range(11))


class SpecError(RejectedSpec):
    """A parse failure that names the offending input field."""

    def __init__(self, field, msg):
        self.field = field
        super().__init__(f"{field}: {msg}")


def _load_json(text, field):
    if text.startswith("@"):
        try:
            text = Path(text[1:]).read_text()
        except OSError as exc:
            raise SpecError(field, f"cannot read {text[1:]!r}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(field, f"invalid JSON: {exc}") from None


def parse_lambda(text: str):
    kind, _, arg = text.strip().partition(":")
    try:
        if kind == "power":
            return build_lambda(Power(float(arg)), text)
        if kind == "log" and not arg:
            return build_lambda(Logarithmic(), text)
        if kind in ("explicit", "explicit-linear"):
            values = _load_json("@" + arg, "--lambda")
            if not isinstance(values, list):
                raise SpecError("--lambda", "explicit weights must be a JSON array")
            ext = FORBIDDEN if kind == "explicit" else LAST_VALUE_PLUS_LINEAR
            return build_lambda(Explicit(tuple(values), ext), text)
    except SpecError:
        raise
    except (RejectedSpec, ValueError, TypeError) as exc:
        raise SpecError("--lambda", str(exc)) from None
    raise SpecError("--lambda", f"unrecognised weight spec {text!r}")


def parse_complex(v, field="value") -> complex:
    if isinstance(v, bool):
        raise SpecError(field, f"not a number: {v!r}")
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, list) and len(v) == 2 and all(isinstance(x, (int, float)) for x in v):
        return complex(v[0], v[1])
    raise SpecError(field, f"expected a number or [re, im], got {v!r}")


def complex_to_json(z):
    z = complex(z)
    return z.real if z.imag == 0 else [z.real, z.imag]


def parse_sequence(text: str) -> NumSequence:
    text = text.strip()
    if text == "zero":
        return NumSequence((0.0,))
    if text.startswith("constant:"):
        try:
            c = complex(text.split(":", 1)[1])
        except ValueError:
            raise SpecError("--seq", f"bad constant in {text!r}") from None
        return NumSequence.constant(c)
    d = _load_json(text, "--seq")
    if not isinstance(d, dict) or "values" not in d:
        raise SpecError("--seq", "expected an object with a 'values' list")
    if not isinstance(d["values"], list) or not d["values"]:
        raise SpecError("--seq.values", "must be a non-empty list")
    values = tuple(parse_complex(v, "--seq.values") for v in d["values"])
    tail_spec = d.get("tail", "zero")
    if tail_spec == "zero":
        tail = ZeroTail()
    elif isinstance(tail_spec, dict) and "constant" in tail_spec:
        tail = ConstantTail(parse_complex(tail_spec["constant"], "--seq.tail.constant"))
    elif isinstance(tail_spec, dict) and "inverse_power" in tail_spec:
        ip = tail_spec["inverse_power"]
        try:
            tail = InversePower(parse_complex(ip.get("c", 1.0), "--seq.tail.c"), float(ip.get("q", 1.0)))
        except (AttributeError, TypeError, ValueError):
            raise SpecError("--seq.tail", f"bad inverse_power {ip!r}") from None
    else:
        raise SpecError("--seq.tail", f"unrecognised tail {tail_spec!r}")
    limit = d.get("limit")
    limit = None if limit is None else parse_complex(limit, "--seq.limit")
    try:
        return NumSequence(values, tail, limit)
    except RejectedSpec as exc:
        raise SpecError("--seq", str(exc)) from None


def sequence_to_json(S: NumSequence) -> dict:
    t = S.tail
    if isinstance(t, ZeroTail):
        tail = "zero"
    elif isinstance(t, ConstantTail):
        tail = {"constant": complex_to_json(t.c)}
    elif isinstance(t, InversePower):
        tail = {"inverse_power": {"c": complex_to_json(t.c), "q": t.q}}
    else:
        tail = {"pattern": [complex_to_json(v) for v in t.pattern]}
    d = {"values": [complex_to_json(v) for v in S.prefix], "tail": tail}
    if S.declared_limit is not None:
        d["limit"] = complex_to_json(S.declared_limit)
    return d


GENERATORS = {"inv_square": (1.0, 2.0)}


def _coeff_list(v, length, field):
    """Return (values, envelope) where envelope is (c, q) for generators."""
    if v is None:
        return (), None
    if isinstance(v, str):
        if v not in GENERATORS:
            raise SpecError(field, f"unknown generator {v!r}")
        c, q = GENERATORS[v]
    elif isinstance(v, dict) and "inv_power" in v:
        try:
            c, q = float(v["inv_power"].get("c", 1.0)), float(v["inv_power"]["q"])
        except (AttributeError, KeyError, TypeError, ValueError):
            raise SpecError(field, f"bad inv_power spec {v!r}") from None
    elif isinstance(v, list):
        return tuple(parse_complex(x, field) for x in v), None
    else:
        raise SpecError(field, f"expected a list or generator name, got {v!r}")
    k = np.arange(1, length + 1, dtype=np.float64)
    return tuple(c / k ** q), (abs(c), q)


def parse_coeffs(text: str, length: int = 64):
    """Parse a series; generators are materialised to ``length`` terms.

    Returns ``(series, is_generated)``.
    """
    text = text.strip()
    if text == "zero":
        return TrigSeries(), False
    d = _load_json(text, "--coeffs")
    if not isinstance(d, dict):
        raise SpecError("--coeffs", "expected a JSON object")
    a, env_a = _coeff_list(d.get("a"), length, "--coeffs.a")
    b, env_b = _coeff_list(d.get("b"), length, "--coeffs.b")
    envs = [e for e in (env_a, env_b) if e is not None]
    tail_spec = d.get("tail")
    try:
        if isinstance(tail_spec, dict) and "decay" in tail_spec:
            dec = tail_spec["decay"]
            tail = DecayBound(float(dec.get("c", 1.0)), float(dec["q"]))
        elif tail_spec in (None, "zero") and not envs:
            tail = SeriesZeroTail()
        elif tail_spec in (None, "zero", "auto"):
            tail = DecayBound(sum(c for c, _ in envs), min(q for _, q in envs))
        else:
            raise SpecError("--coeffs.tail", f"unrecognised tail {tail_spec!r}")
        a0 = parse_complex(d.get("a0", 0.0), "--coeffs.a0")
        # both lists must have the same length before the envelope applies
        if envs:
            a = a + (0.0,) * (length - len(a)) if len(a) < length else a
            b = b + (0.0,) * (length - len(b)) if len(b) < length else b
        return TrigSeries(a0, a, b, tail), bool(envs)
    except SpecError:
        raise
    except (RejectedSpec, KeyError, TypeError, ValueError) as exc:
        raise SpecError("--coeffs", str(exc)) from None


def series_to_json(F: TrigSeries) -> dict:
    d = {"a0": complex_to_json(F.a0),
         "a": [complex_to_json(v) for v in F.a],
         "b": [complex_to_json(v) for v in F.b]}
    if isinstance(F.tail, DecayBound):
        d["tail"] = {"decay": {"c": F.tail.c, "q": F.tail.q}}
    else:
        d["tail"] = "zero"
    return d


def parse_metric(text: str):
    kind, _, rest = text.strip().partition(":")
    opts = {}
    for item in filter(None, rest.split(",")):
        key, eq, val = item.partition("=")
        if not eq:
            raise SpecError("--metric", f"expected key=value, got {item!r}")
        opts[key.strip()] = val.strip()
    try:
        if kind == "C" and set(opts) <= {"grid"}:
            return CMetric(int(opts.get("grid", 512)))
        if kind == "Lp" and "p" in opts and set(opts) <= {"p", "grid"}:
            return LpMetric(float(opts["p"]), int(opts.get("grid", 512)))
    except (RejectedSpec, ValueError) as exc:
        raise SpecError("--metric", str(exc)) from None
    raise SpecError("--metric", f"unrecognised metric {text!r}")


def parse_schedule(text) -> tuple:
    if text is None:
        return DEFAULT_SCHEDULE
    text = text.strip()
    try:
        if text.startswith("geom:"):
            start, factor, count = text[5:].split(":")
            start, factor, count = float(start), float(factor), int(count)
            sched = tuple(int(round(start * factor ** i)) for i in range(count))
        else:
            sched = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise SpecError("--schedule", f"cannot parse {text!r}") from None
    if any(n < 0 for n in sched):
        raise SpecError("--schedule", "indices must be non-negative")
    if any(b <= a for a, b in zip(sched, sched[1:])):
        raise SpecError("--schedule", f"must be strictly increasing, got {sched}")
    return sched
