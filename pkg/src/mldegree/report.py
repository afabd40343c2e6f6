"""Report emission: JSON (compact, deterministic) and plain text."""

from __future__ import annotations

import json
from fractions import Fraction

from .groebner import Ideal
from .mld import Classification, GaussImage, MLDReport
from .polynomial import Polynomial
from .rational import RationalFn
from .varieties import MultidegreeVector

# keys emitted first, in this order; anything else follows in insertion order
_FRONT = ("command", "inputs", "value", "vector", "ideal")
_BACK = ("seeds", "prime", "trials", "f_general", "status")


def jsonable(x):
    """Convert toolkit values into JSON-ready data (polynomials as strings)."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    if isinstance(x, Polynomial):
        return str(x)
    if isinstance(x, RationalFn):
        if x.is_polynomial():
            return str(x.num.scale(x.ring.field.inv(x.den.constant_value())))
        return str(x)
    if isinstance(x, Ideal):
        return [str(g) for g in x.gens]
    if isinstance(x, MultidegreeVector):
        return list(x.entries)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    raise TypeError(f"cannot serialize {type(x).__name__}")


def payload(result, command: str | None = None, inputs: dict | None = None) -> dict:
    """The report dictionary for a result object."""
    out: dict = {}
    if command is not None:
        out["command"] = command
    if inputs is not None:
        out["inputs"] = inputs
    if isinstance(result, MLDReport):
        out["value"] = result.value
        out["method"] = result.method
        if result.details:
            out["details"] = result.details
        out["seeds"] = result.seeds
        out["prime"] = result.prime
        out["trials"] = result.trials
        out["f_general"] = result.f_general
        out["status"] = result.status
    elif isinstance(result, MultidegreeVector):
        out["vector"] = result.entries
        out["kind"] = result.kind
        out["seeds"] = result.seeds
        out["prime"] = result.prime
        out["trials"] = result.trials
        out["status"] = "ok"
    elif isinstance(result, Classification):
        out["value"] = result.verdict
        out["reason"] = result.reason
        for key in ("alpha", "scale", "dual", "multiplicity", "phi"):
            v = getattr(result, key)
            if v is not None:
                out[key] = v
        out["status"] = "ok"
    elif isinstance(result, GaussImage):
        out["ideal"] = result.image
        out["point_formula"] = result.point_formula
        out["image_degree"] = result.image_degree
        out["map_degree"] = result.map_degree
        out["status"] = "ok"
    elif isinstance(result, Ideal):
        out["ideal"] = result
        out["status"] = "ok"
    elif isinstance(result, dict):
        out.update(result)
        out.setdefault("status", "ok")
    else:
        out["value"] = result
        out["status"] = "ok"
    ordered = {k: out[k] for k in _FRONT if k in out}
    ordered.update({k: v for k, v in out.items() if k not in _FRONT and k not in _BACK})
    ordered.update({k: out[k] for k in _BACK if k in out})
    return jsonable(ordered)


def emit_report(result, fmt: str = "json", command: str | None = None, inputs: dict | None = None) -> str:
    """Serialize a result as compact JSON or as ``key: value`` text lines."""
    data = payload(result, command, inputs)
    if fmt == "json":
        return json.dumps(data, separators=(",", ":"), ensure_ascii=False)
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = []
    for k, v in data.items():
        if isinstance(v, list) and v and all(isinstance(e, str) for e in v) and k in ("ideal", "point_formula"):
            lines.append(f"{k}:")
            lines.extend(f"  {e}" for e in v)
        elif isinstance(v, (dict, list)):
            lines.append(f"{k}: {json.dumps(v, separators=(', ', ': '))}")
        elif isinstance(v, bool):
            lines.append(f"{k}: {'true' if v else 'false'}")
        else:
            lines.append(f"{k}: {v}")
    return "\n".join(lines)
