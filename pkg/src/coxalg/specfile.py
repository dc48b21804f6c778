"""JSON ring-specification files (``"schema": 1``).

Layout::

    {
      "schema": 1,
      "group": {"free_rank": 2, "moduli": []},
      "variables": [{"name": "x", "degree": "(1,0)"}, ...],
      "order": {"mode": "functional", "functionals": [[1, 0], [0, 1]]},
      "polynomials": {"f": "x^2*u^3 + y^2*v^3"},
      "ideals": {
        "I": {"ring": "S", "generators": ["x^2*u - y^2*v"], "span_degrees": ["(0,2)"]},
        "A": {"apolar": "f", "generators": []},
        "C": {"colon": {"ideal": "I", "by": "x"}}
      }
    }

``order`` defaults to the semigroup order. Polynomials are elements of ``S``;
ideal generators are parsed in ``S`` or in the operator ring ``Q`` (upper-case
names) according to ``ring``, which defaults to ``Q`` for apolar ideals.
A generator may also name an entry of ``polynomials``.
"""

import json
import re
from dataclasses import dataclass, field

from .algebra import IdealPresentation
from .errors import SpecParseError
from .grading import GroupSpec, OrderSpec, parse_degree
from .polyring import GradedRing, parse_polynomial

__all__ = ["RingSpecFile", "load_spec", "parse_spec", "dump_spec", "ideal_to_json"]


@dataclass
class RingSpecFile:
    ring: GradedRing
    polynomials: dict
    ideals: dict
    raw: dict = field(repr=False, default_factory=dict)

    @property
    def group(self):
        return self.ring.group

    @property
    def dual(self):
        return self.ring.dual()

    def polynomial(self, name):
        if name not in self.polynomials:
            raise SpecParseError(f"unknown polynomial {name!r}", "polynomials")
        return self.polynomials[name]

    def ideal(self, name):
        if name not in self.ideals:
            raise SpecParseError(f"unknown ideal {name!r}", "ideals")
        return self.ideals[name]

    def degree(self, text, location="degree"):
        return parse_degree(self.group, text, location)


def load_spec(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SpecParseError(f"cannot read {path}: {exc.strerror}", str(path)) from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecParseError(f"invalid JSON: {exc.msg}",
                             f"{path}:{exc.lineno}:{exc.colno}") from None
    return parse_spec(data)


def _need(obj, key, where, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise SpecParseError(f"missing field {key!r}", where)
    value = obj[key]
    if kind is not None and not isinstance(value, kind):
        raise SpecParseError(f"field {key!r} has the wrong type", f"{where}.{key}")
    return value


def _poly(ring, text, location):
    if not isinstance(text, str):
        raise SpecParseError("polynomials must be strings", location)
    try:
        return parse_polynomial(ring, text)
    except SpecParseError as exc:
        raise SpecParseError(str(exc), location) from None


def parse_spec(data):
    if not isinstance(data, dict):
        raise SpecParseError("a ring specification must be a JSON object", "$")
    if data.get("schema") != 1:
        raise SpecParseError(f"unsupported schema {data.get('schema')!r} (expected 1)",
                             "schema")
    g = _need(data, "group", "$", dict)
    free_rank = _need(g, "free_rank", "group", int)
    moduli = g.get("moduli", [])
    if not isinstance(moduli, list) or not all(isinstance(m, int) for m in moduli):
        raise SpecParseError("moduli must be a list of integers", "group.moduli")
    try:
        group = GroupSpec(free_rank, tuple(moduli))
    except ValueError as exc:
        raise SpecParseError(str(exc), "group") from None

    variables = _need(data, "variables", "$", list)
    names, degrees = [], []
    for i, v in enumerate(variables):
        where = f"variables[{i}]"
        names.append(_need(v, "name", where, str))
        degrees.append(parse_degree(group, str(_need(v, "degree", where)), f"{where}.degree"))

    order = OrderSpec()
    if "order" in data:
        o = data["order"]
        try:
            order = OrderSpec(_need(o, "mode", "order", str),
                              tuple(tuple(f) for f in o.get("functionals", [])))
        except (ValueError, TypeError) as exc:
            raise SpecParseError(str(exc), "order") from None
    try:
        ring = GradedRing(tuple(names), tuple(degrees), group, order)
    except ValueError as exc:
        raise SpecParseError(str(exc), "variables") from None

    polys = {}
    for name, text in data.get("polynomials", {}).items():
        polys[name] = _poly(ring, text, f"polynomials.{name}")

    spec = RingSpecFile(ring, polys, {}, data)
    pending = dict(data.get("ideals", {}))
    # colon ideals refer to other ideals, so resolve in dependency order
    while pending:
        progressed = False
        for name in list(pending):
            body = pending[name]
            dep = body.get("colon", {}).get("ideal") if isinstance(body, dict) else None
            if dep is not None and dep not in spec.ideals:
                if dep not in pending:
                    raise SpecParseError(f"unknown ideal {dep!r}", f"ideals.{name}.colon.ideal")
                continue
            spec.ideals[name] = _ideal(spec, name, body)
            del pending[name]
            progressed = True
        if not progressed:
            raise SpecParseError("cyclic colon-ideal references", "ideals")
    return spec


def _ideal(spec, name, body):
    where = f"ideals.{name}"
    if not isinstance(body, dict):
        raise SpecParseError("an ideal must be an object", where)
    apolar = body.get("apolar")
    role = body.get("ring", "Q" if apolar is not None else "S")
    if role not in ("S", "Q"):
        raise SpecParseError("ring must be 'S' or 'Q'", f"{where}.ring")
    ring = spec.ring if role == "S" else spec.ring.dual()
    gens = []
    for i, text in enumerate(body.get("generators", [])):
        loc = f"{where}.generators[{i}]"
        if role == "S" and text in spec.polynomials:
            p = spec.polynomials[text]
        else:
            p = _poly(ring, text, loc)
        if not p.homogeneous:
            raise SpecParseError(f"generator {text!r} is not homogeneous", loc)
        gens.append(p)
    spans = [parse_degree(spec.group, str(h), f"{where}.span_degrees[{i}]")
             for i, h in enumerate(body.get("span_degrees", []))]
    f = None
    if apolar is not None:
        if role != "Q":
            raise SpecParseError("an apolar ideal lives in the operator ring Q", f"{where}.ring")
        f = spec.polynomials.get(apolar) or _poly(spec.ring, apolar, f"{where}.apolar")
        if not f.homogeneous or f.is_zero():
            raise SpecParseError("the apolar form must be nonzero and homogeneous",
                                 f"{where}.apolar")
    colon = None
    if "colon" in body:
        c = body["colon"]
        base = spec.ideals[_need(c, "ideal", f"{where}.colon", str)]
        if base.ring != ring:
            raise SpecParseError("colon base ideal lives in another ring", f"{where}.colon")
        F = _poly(ring, _need(c, "by", f"{where}.colon", str), f"{where}.colon.by")
        colon = (base, F)
    return IdealPresentation(ring, gens, spans, f, colon)


def ideal_to_json(spec, ideal):
    """JSON body for an ideal of ``spec`` (colon parts are not serialized)."""
    body = {"ring": ideal.ring.role}
    if ideal.apolar is not None:
        name = next((k for k, p in spec.polynomials.items() if p == ideal.apolar), None)
        body["apolar"] = name or str(ideal.apolar)
    body["generators"] = [str(p) for p in ideal.generators]
    if ideal.span_degrees:
        body["span_degrees"] = [str(h) for h in ideal.span_degrees]
    if ideal.colon is not None:
        raise SpecParseError("colon ideals cannot be written back", "ideals")
    return body


def dump_spec(spec, extra_ideals):
    """JSON text of the ring specification with ``extra_ideals`` (name -> presentation) added."""
    data = dict(spec.raw)
    ideals = dict(data.get("ideals", {}))
    for name, ideal in extra_ideals.items():
        ideals[name] = ideal_to_json(spec, ideal)
    data["ideals"] = ideals
    text = json.dumps(data, indent=2, ensure_ascii=False)
    return _SCALAR_LIST.sub(_collapse, text) + "\n"


# arrays holding only scalars are kept on one line
_SCALAR_LIST = re.compile(r"\[(\s*(?:\"(?:[^\"\\]|\\.)*\"|-?\d+)\s*(?:,\s*(?:\"(?:[^\"\\]|\\.)*\"|-?\d+)\s*)*)\]")


def _collapse(match):
    items = [x.strip() for x in re.findall(r'"(?:[^"\\]|\\.)*"|-?\d+', match.group(1))]
    return "[" + ", ".join(items) + "]"
