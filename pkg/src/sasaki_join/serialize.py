"""JSON encoding of results: rationals as "num/den", floats only inside approx records."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ValidationError
from .exact import IsolatingInterval, Polynomial
from .join import JoinSpec, WeightVector
from .quotient import OrbitPeriods, ReebQuotient, ReebRay
from .topology import AbelianGroup, RingPresentation

RATIONAL_RE = re.compile(r"^-?\d+/\d+$")


@dataclass(frozen=True)
class Approx:
    """A floating value with a certified absolute error bound."""

    value: float
    error_bound: float


def rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    if not RATIONAL_RE.match(text):
        raise ValidationError(f"not a rational literal: {text!r}")
    return Fraction(text)


def encode(obj, exact_only: bool = False):
    """Convert result objects into plain JSON values."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return rational(obj)
    if isinstance(obj, float):
        raise TypeError("bare floats must be wrapped in Approx")
    if isinstance(obj, Approx):
        return {"approx": True, "value": obj.value, "error_bound": obj.error_bound}
    if isinstance(obj, (WeightVector, ReebRay)):
        return list(obj.as_tuple())
    if isinstance(obj, Polynomial):
        return {"coefficients": [rational(c) for c in obj.coeffs], "text": str(obj)}
    if isinstance(obj, IsolatingInterval):
        return {"lo": rational(obj.lo), "hi": rational(obj.hi), "width": rational(obj.width)}
    if isinstance(obj, AbelianGroup):
        return {
            "rank": obj.rank,
            "torsion": list(obj.torsion),
            "invariant_factors": list(obj.invariant_factors()),
            "text": str(obj),
        }
    if isinstance(obj, JoinSpec):
        return {
            "base": obj.base.name,
            "fano_index": obj.base.fano_index,
            "d_N": obj.base.d_N,
            "w": list(obj.w.as_tuple()),
            "l1": obj.l1,
            "l2": obj.l2,
            "smooth": obj.smooth,
        }
    if isinstance(obj, ReebQuotient):
        return {
            "s": obj.s,
            "m": obj.m,
            "m1": obj.m1,
            "m2": obj.m2,
            "n": obj.degree_n,
            "orientation_reversed": obj.orientation_reversed,
            "branch": [{"divisor": d, "coefficient": rational(c)} for d, c in obj.branch],
            "fiber": obj.fiber_descriptor,
            "orb_pi1_order": obj.orb_pi1_order,
            "lens_fiber": obj.lens_descriptor,
            "regularity": obj.regularity,
        }
    if isinstance(obj, OrbitPeriods):
        return {"generic": rational(obj.generic), "at_D1": rational(obj.at_D1), "at_D2": rational(obj.at_D2)}
    if isinstance(obj, RingPresentation):
        return {
            "name": obj.name,
            "dim": obj.dim,
            "generators": [{"name": n, "degree": d} for n, d in obj.generators],
            "relations": obj.relation_strings(),
            "groups_by_degree": {str(q): encode(g) for q, g in sorted(obj.groups_by_degree.items())},
        }
    if isinstance(obj, dict):
        if obj.get("approx") is True:
            # already-encoded approx record, e.g. from CommandResult.loads
            return None if exact_only else dict(obj)
        out = {}
        for k, v in obj.items():
            if exact_only and (isinstance(v, Approx) or (isinstance(v, dict) and v.get("approx") is True)):
                continue
            out[str(k)] = encode(v, exact_only)
        return out
    if isinstance(obj, (list, tuple)):
        return [encode(v, exact_only) for v in obj if not (exact_only and isinstance(v, Approx))]
    raise TypeError(f"cannot encode {type(obj).__name__}")


@dataclass
class CommandResult:
    command: str
    inputs: dict
    outputs: dict
    provenance: list = field(default_factory=list)

    def to_dict(self, exact_only: bool = False) -> dict:
        return {
            "command": self.command,
            "inputs": encode(self.inputs, exact_only),
            "outputs": encode(self.outputs, exact_only),
            "provenance": list(self.provenance),
        }

    def dumps(self, exact_only: bool = False) -> str:
        return dumps(self.to_dict(exact_only))

    @classmethod
    def loads(cls, text: str) -> "CommandResult":
        data = json.loads(text)
        return cls(data["command"], data["inputs"], data["outputs"], data["provenance"])


def dumps(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False)


def _flatten(prefix: str, value, rows: list):
    if isinstance(value, dict) and not value.get("approx"):
        for k in sorted(value):
            _flatten(f"{prefix}.{k}" if prefix else k, value[k], rows)
    elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, rows)
    else:
        if isinstance(value, dict):
            value = f"~{value['value']} (+-{value['error_bound']})"
        elif isinstance(value, list):
            value = ", ".join(str(v) for v in value)
        rows.append((prefix, str(value)))


def table(data: dict) -> str:
    rows: list = []
    _flatten("", data["outputs"], rows)
    width = max((len(k) for k, _ in rows), default=0)
    lines = [f"# {data['command']}"]
    lines += [f"{k.ljust(width)}  {v}" for k, v in rows]
    return "\n".join(lines)


def load_schema() -> dict:
    from importlib.resources import files

    return json.loads(files("sasaki_join").joinpath("schema.json").read_text(encoding="utf-8"))
