"""Reading and writing presentation files.

A presentation file is TOML.  Expressions are quoted strings in the
syntax of :mod:`hopfore.expr`::

    [field]
    kind = "Qt"

    [[generator]]
    name = "K1"
    invertible = true

    [[relation]]
    lhs = "E1*K1"
    rhs = "1/q^2*K1*E1"

    [hopf]
    delta.K1 = "K1 (x) K1"
    counit.K1 = "1"
    antipode.K1 = "K1^-1"

    [ore]
    z = "z"
    tau.K1 = "1/q*K1"
    delta_der.K1 = "0"

    [ghoe]
    r1 = "1"
    r2 = "K1*K2"
    x = "((q^2 - 1)/q)*K2*E1"
    y = "E2"

A witness file holds a ``[witness]`` table with ``lambda``, ``r``, ``b``,
``phi.<gen>`` and ``phi_inv.<gen>``.  :func:`dumps` writes the canonical
form and ``loads(dumps(m))`` reproduces ``m``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

try:
    import tomllib as tomli
except ImportError:  # Python 3.10
    import tomli

from .expr import parse_element, parse_scalar, parse_tensor, parse_word
from .ghoe import GhoeData
from .hopfstruct import HopfStructure, InvariantViolation
from .isowit import IsoWitness
from .ncpoly import Element, Generator, Presentation
from .orext import OreData
from .scalars import Field


class PresentationSyntaxError(SyntaxError):
    def __init__(self, msg, line=None, col=None):
        self.line, self.col = line, col
        where = "" if line is None else f" (line {line}" + ("" if col is None else f", column {col}") + ")"
        super().__init__(msg + where)


_SECTIONS = {"field", "generator", "relation", "hopf", "ore", "ghoe", "witness"}
_KEYS = {
    "field": {"kind", "q"},
    "generator": {"name", "invertible", "order", "level"},
    "relation": {"lhs", "rhs"},
    "hopf": {"delta", "counit", "antipode"},
    "ore": {"z", "tau", "delta_der"},
    "ghoe": {"r1", "r2", "x", "y", "chi"},
    "witness": {"lambda", "r", "b", "phi", "phi_inv"},
}


@dataclass
class Model:
    """Everything a presentation file can describe."""

    field: Field
    pres: Presentation
    hopf: HopfStructure | None = None
    ore: OreData | None = None
    ghoe: GhoeData | None = None
    chi: dict | None = None
    raw: dict = field(default_factory=dict)


@dataclass
class WitnessSpec:
    """Witness data kept as strings until both presentations are known."""

    lam: str
    r: str
    b: str
    phi: dict
    phi_inv: dict


class _Lines:
    """Best-effort line lookup for keys, to locate expression errors."""

    def __init__(self, text):
        self.lines = text.splitlines()

    def find(self, section, key, occurrence=0):
        cur, seen = None, -1
        for i, raw in enumerate(self.lines, 1):
            s = raw.strip()
            m = re.match(r"^\[\[?\s*([\w.]+)\s*\]\]?$", s)
            if m:
                cur = m.group(1)
                if cur == section and s.startswith("[["):
                    seen += 1
                continue
            if cur != section or (seen >= 0 and seen != occurrence):
                continue
            if re.match(rf"^{re.escape(key)}\s*=", s):
                return i
        return None


def _check_keys(name, table, allowed, lines):
    for k in table:
        if k not in allowed:
            raise PresentationSyntaxError(f"unknown key {k!r} in [{name}]", lines.find(name, k))


def _expr(kind, text, pres, lines, section, key, occurrence=0):
    line = lines.find(section, key, occurrence)
    if not isinstance(text, str):
        text = str(text)
    if kind == "tensor":
        return parse_tensor(text, pres, line=line)
    if kind == "scalar":
        return parse_scalar(text, pres.field, line=line)
    return parse_element(text, pres, line=line)


def _field_of(raw, override=None, q=None) -> Field:
    spec = raw.get("field", {})
    kind = override or spec.get("kind", "Q")
    try:
        f = Field.parse(kind)
    except ValueError as e:
        raise PresentationSyntaxError(str(e)) from None
    qv = q if q is not None else spec.get("q")
    if qv is not None:
        if f.kind in ("Q", "Qt"):
            f = Field.rationals(q_value=Fraction(str(qv)), var=f.var)
        else:
            raise PresentationSyntaxError("a q value needs the field Q or Qt")
    return f


def _dotted(table, key, names, section, lines):
    sub = table.get(key, {})
    if not isinstance(sub, dict):
        raise PresentationSyntaxError(f"{section}.{key} must be a table", lines.find(section, key))
    for k in sub:
        if k not in names:
            raise PresentationSyntaxError(f"{section}.{key}.{k}: unknown generator", lines.find(section, f"{key}.{k}"))
    return sub


def loads(text: str, field_override: str | None = None, q=None) -> Model:
    try:
        raw = tomli.loads(text)
    except tomli.TOMLDecodeError as e:
        m = re.search(r"line (\d+), column (\d+)", str(e))
        raise PresentationSyntaxError(str(e).split(" (at")[0], *(map(int, m.groups()) if m else (None, None))) from None
    lines = _Lines(text)
    for k in raw:
        if k not in _SECTIONS:
            raise PresentationSyntaxError(f"unknown section [{k}]")
    for sec in ("field", "hopf", "ore", "ghoe", "witness"):
        if sec in raw:
            _check_keys(sec, raw[sec], _KEYS[sec], lines)
    for sec in ("generator", "relation"):
        for t in raw.get(sec, []):
            _check_keys(sec, t, _KEYS[sec], lines)
    f = _field_of(raw, field_override, q)

    gens = []
    for t in raw.get("generator", []):
        if "name" not in t:
            raise PresentationSyntaxError("generator without a name")
        gens.append(Generator(t["name"], bool(t.get("invertible", False)), int(t.get("order", 0)), int(t.get("level", 0))))
    if not gens:
        raise InvariantViolation("at least one generator required")
    bare = Presentation(f, gens, {}, name="free")
    rules = {}
    for i, t in enumerate(raw.get("relation", [])):
        if "lhs" not in t or "rhs" not in t:
            raise PresentationSyntaxError("relation needs lhs and rhs", lines.find("relation", "lhs", i))
        lhs = parse_word(t["lhs"], bare, line=lines.find("relation", "lhs", i))
        rhs = _expr("element", t["rhs"], bare, lines, "relation", "rhs", i)
        key = tuple(bare.letters[k].name for k in lhs)
        if key in rules:
            raise InvariantViolation(f"duplicate relation for {t['lhs']}")
        rules[key] = {tuple(bare.letters[k].name for k in w): c for w, c in rhs.terms.items()}
    pres = Presentation(f, gens, rules, name="file")
    model = Model(f, pres, raw=raw)
    names = [g.name for g in gens]

    if "hopf" in raw and raw["hopf"]:
        h = raw["hopf"]
        d = _dotted(h, "delta", names, "hopf", lines)
        e = _dotted(h, "counit", names, "hopf", lines)
        s = _dotted(h, "antipode", names, "hopf", lines)
        delta = {k: _expr("tensor", v, pres, lines, "hopf", f"delta.{k}") for k, v in d.items()}
        counit = {k: _expr("scalar", v, pres, lines, "hopf", f"counit.{k}") for k, v in e.items()}
        antipode = {k: _expr("element", v, pres, lines, "hopf", f"antipode.{k}") for k, v in s.items()}
        model.hopf = HopfStructure(pres, delta, counit, antipode)

    if "ore" in raw:
        o = raw["ore"]
        t = _dotted(o, "tau", names, "ore", lines)
        d = _dotted(o, "delta_der", names, "ore", lines)
        tau = {k: _expr("element", t.get(k, k), pres, lines, "ore", f"tau.{k}") for k in names}
        der = {k: _expr("element", d.get(k, "0"), pres, lines, "ore", f"delta_der.{k}") for k in names}
        model.ore = OreData(tau, der, o.get("z", "z"))

    if "ghoe" in raw:
        g = raw["ghoe"]
        if model.hopf is None:
            raise InvariantViolation("hopf structure required")
        if model.ore is None:
            raise InvariantViolation("ore data required")
        parts = {k: _expr("element", g.get(k, dflt), pres, lines, "ghoe", k)
                 for k, dflt in (("r1", "1"), ("r2", "1"), ("x", "0"), ("y", "0"))}
        chi = None
        if "chi" in g:
            c = _dotted(g, "chi", names, "ghoe", lines)
            chi = {k: _expr("scalar", v, pres, lines, "ghoe", f"chi.{k}") for k, v in c.items()}
        model.chi = chi
        model.ghoe = GhoeData(model.hopf, model.ore, parts["r1"], parts["r2"], parts["x"], parts["y"], chi=chi)
    return model


def load(path, field_override=None, q=None) -> Model:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read(), field_override, q)


def witness_spec(raw: dict) -> WitnessSpec:
    w = raw.get("witness")
    if not w:
        raise InvariantViolation("witness section required")
    for k in ("lambda", "r", "b"):
        if k not in w:
            raise PresentationSyntaxError(f"witness.{k} missing")
    return WitnessSpec(str(w["lambda"]), str(w["r"]), str(w["b"]), dict(w.get("phi", {})), dict(w.get("phi_inv", {})))


def load_witness(path) -> WitnessSpec:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        raw = tomli.loads(text)
    except tomli.TOMLDecodeError as e:
        raise PresentationSyntaxError(str(e)) from None
    for k in raw:
        if k != "witness":
            raise PresentationSyntaxError(f"unknown section [{k}] in a witness file")
    _check_keys("witness", raw.get("witness", {}), _KEYS["witness"], _Lines(text))
    return witness_spec(raw)


def build_witness(spec: WitnessSpec, src: Presentation, dst: Presentation):
    phi = {k: parse_element(v, dst) for k, v in spec.phi.items()}
    inv = {k: parse_element(v, src) for k, v in spec.phi_inv.items()}
    return IsoWitness(parse_scalar(spec.lam, dst.field), parse_element(spec.r, dst),
                      parse_element(spec.b, dst), phi, inv)


# ---------------------------------------------------------------------------
# Canonical output


def _q(s) -> str:
    return json.dumps(str(s), ensure_ascii=False)


def dumps(hopf: HopfStructure | None = None, pres: Presentation | None = None, ore: OreData | None = None,
          ghoe: GhoeData | None = None, chi=None) -> str:
    """Canonical text for a presentation and whatever structure is given."""
    if ghoe is not None:
        hopf, ore = ghoe.hopf, ghoe.ore
        chi = chi if chi is not None else ghoe.chi
    if hopf is not None:
        pres = hopf.pres
    f = pres.field
    out = ["[field]"]
    if f.kind == "Q" and f.q_value is not None:
        out += ['kind = "Q"', f"q = {_q(f.q_value)}"]
    else:
        out.append(f"kind = {_q(f)}")
    for g in pres.generators:
        out += ["", "[[generator]]", f"name = {_q(g.name)}"]
        if g.invertible:
            out.append("invertible = true")
        if g.order:
            out.append(f"order = {g.order}")
        if g.level:
            out.append(f"level = {g.level}")
    for lhs, rhs in pres.user_rules.items():
        out += ["", "[[relation]]", f"lhs = {_q(pres.word_str(lhs))}", f"rhs = {_q(Element(pres, rhs))}"]
    names = [g.name for g in pres.generators]
    if hopf is not None:
        out += ["", "[hopf]"]
        out += [f"delta.{n} = {_q(hopf.delta[n])}" for n in names]
        out += [f"counit.{n} = {_q(f.format(hopf.counit[n]))}" for n in names]
        out += [f"antipode.{n} = {_q(hopf.antipode[n])}" for n in names]
    if ore is not None:
        out += ["", "[ore]", f"z = {_q(ore.z)}"]
        out += [f"tau.{n} = {_q(ore.tau[n])}" for n in names]
        out += [f"delta_der.{n} = {_q(ore.delta[n])}" for n in names]
    if ghoe is not None:
        out += ["", "[ghoe]"]
        out += [f"{k} = {_q(getattr(ghoe, k))}" for k in ("r1", "r2", "x", "y")]
        if chi:
            out += [f"chi.{n} = {_q(f.format(f(chi[n])))}" for n in names if n in chi]
    return "\n".join(out) + "\n"


def dump_model(m: Model) -> str:
    if m.ghoe is not None:
        return dumps(ghoe=m.ghoe, chi=m.chi)
    return dumps(hopf=m.hopf, pres=m.pres, ore=m.ore)


def dump_witness(w) -> str:
    out = ["[witness]", f"lambda = {_q(w.lam)}", f"r = {_q(w.r)}", f"b = {_q(w.b)}"]
    out += [f"phi.{k} = {_q(v)}" for k, v in w.phi.items()]
    out += [f"phi_inv.{k} = {_q(v)}" for k, v in w.phi_inv.items()]
    return "\n".join(out) + "\n"
