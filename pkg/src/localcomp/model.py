"""JSON model files and result records.

A model file looks like::

    {
      "variables": {"X": ["x1", "x2"], "Y": ["y1", "y2"]},
      "algebra": "potential",
      "factors": [
        {"domain": ["X"], "values": [2, 3]},
        {"domain": ["X", "Y"], "values": [1, 0, 2, 4]}
      ]
    }

Potential values are row-major along the listed domain order (last variable
fastest). Belief factors replace ``values`` with
``"focal": [{"set": [["x1", "y1"], ...], "mass": 0.6}, ...]`` where each
configuration lists labels in the factor's domain order.
"""

import json
from dataclasses import dataclass
from pathlib import Path

from .belief import MassFunction
from .errors import DomainError
from .frames import canonical
from .potential import Potential

ALGEBRAS = ("potential", "belief")


class ModelError(Exception):
    """Invalid model input; the message names the offending field."""


@dataclass
class Model:
    variables: dict
    algebra: str
    factors: list


def _require(cond, where, msg):
    if not cond:
        raise ModelError(f"{where}: {msg}")


def _finite_number(x):
    return isinstance(x, (int, float)) and not isinstance(x, bool) and x == x \
        and x not in (float("inf"), float("-inf"))


def parse_model(obj) -> Model:
    _require(isinstance(obj, dict), "$", "model must be a JSON object")
    extra = set(obj) - {"variables", "algebra", "factors"}
    _require(not extra, "$", f"unknown fields {sorted(extra)}")
    variables = obj.get("variables")
    _require(isinstance(variables, dict) and variables, "$.variables",
             "must be a non-empty object of name -> label list")
    frames = {}
    for name, labels in variables.items():
        where = f"$.variables.{name}"
        _require(name != "", where, "variable names must be non-empty")
        _require(isinstance(labels, list) and labels, where, "must be a non-empty list")
        _require(all(isinstance(s, str) for s in labels), where, "labels must be strings")
        _require(len(set(labels)) == len(labels), where, "duplicate labels")
        frames[name] = tuple(labels)
    algebra = obj.get("algebra")
    _require(algebra in ALGEBRAS, "$.algebra", f"must be one of {list(ALGEBRAS)}")
    factors = obj.get("factors")
    _require(isinstance(factors, list) and factors, "$.factors", "must be a non-empty list")
    parsed = [_parse_factor(f, frames, algebra, f"$.factors[{i}]")
              for i, f in enumerate(factors)]
    return Model(frames, algebra, parsed)


def _parse_factor(rec, frames, algebra, where):
    _require(isinstance(rec, dict), where, "factor must be an object")
    dom = rec.get("domain")
    _require(isinstance(dom, list) and dom, f"{where}.domain", "must be a non-empty list")
    for v in dom:
        _require(v in frames, f"{where}.domain", f"undeclared variable {v!r}")
    _require(len(set(dom)) == len(dom), f"{where}.domain", "repeated variable")
    if algebra == "potential":
        _require(set(rec) == {"domain", "values"}, where, "expects fields domain, values")
        vals = rec["values"]
        _require(isinstance(vals, list), f"{where}.values", "must be a list")
        size = 1
        for v in dom:
            size *= len(frames[v])
        _require(len(vals) == size, f"{where}.values",
                 f"expected {size} entries, got {len(vals)}")
        _require(all(_finite_number(x) and x >= 0 for x in vals), f"{where}.values",
                 "entries must be finite non-negative numbers")
        _require(any(x > 0 for x in vals), f"{where}.values", "entries must not all be zero")
        return Potential.from_values(dom, frames, vals)
    _require(set(rec) == {"domain", "focal"}, where, "expects fields domain, focal")
    focal = rec["focal"]
    _require(isinstance(focal, list) and focal, f"{where}.focal", "must be a non-empty list")
    pairs = []
    for k, item in enumerate(focal):
        fw = f"{where}.focal[{k}]"
        _require(isinstance(item, dict) and set(item) == {"set", "mass"}, fw,
                 "expects fields set, mass")
        configs = item["set"]
        _require(isinstance(configs, list) and configs, f"{fw}.set",
                 "focal sets must be non-empty lists of configurations")
        rows = []
        for c in configs:
            _require(isinstance(c, list) and len(c) == len(dom), f"{fw}.set",
                     f"configuration {c!r} does not match domain {dom}")
            for v, label in zip(dom, c):
                _require(label in frames[v], f"{fw}.set", f"{label!r} is not a value of {v}")
            rows.append(dict(zip(dom, c)))
        mass = item["mass"]
        _require(_finite_number(mass) and mass > 0, f"{fw}.mass", "must be a positive number")
        pairs.append((rows, mass))
    try:
        return MassFunction.from_focal(dom, frames, pairs)
    except DomainError as exc:
        raise ModelError(f"{where}.focal: {exc}") from None


def load_model(path) -> Model:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ModelError(f"{path}: cannot read ({exc.strerror})") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return parse_model(obj)


def factor_record(v) -> dict:
    """Serializable record for a potential or mass function, canonically ordered."""
    if isinstance(v, Potential):
        return {"domain": list(v.domain), "values": v.values.tolist()}
    if isinstance(v, MassFunction):
        return {
            "domain": list(v.domain),
            "focal": [{"set": [list(c) for c in fs.configurations(v.frames)],
                       "mass": v.mass(fs)}
                      for fs in v.focal_sets()],
        }
    raise TypeError(f"cannot serialize {type(v).__name__}")


def variables_record(frames, names=None) -> dict:
    names = canonical(names if names is not None else frames)
    return {v: list(frames[v]) for v in names}


def _flat(v):
    return not isinstance(v, (dict, list)) or (
        isinstance(v, list) and all(not isinstance(x, (dict, list)) or
                                    (isinstance(x, list) and all(map(_flat, x))) for x in v))


def _emit(obj, indent):
    pad = "  " * indent
    if isinstance(obj, dict) and obj:
        items = [f'{pad}  {json.dumps(k, ensure_ascii=False)}: {_emit(v, indent + 1)}'
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, list) and obj and not _flat(obj):
        items = [f"{pad}  {_emit(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(obj, ensure_ascii=False, separators=(", ", ": "))


def dumps(obj) -> str:
    """Canonical JSON text: objects one key per line, scalar arrays inline."""
    return _emit(obj, 0) + "\n"
