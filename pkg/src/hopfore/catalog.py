"""Ready-made Hopf algebras and generalized Hopf-Ore data.

Every named entry carries the verdict the verifier is expected to reach.
Names are looked up by :func:`build_named`, which accepts either keyword
arguments or a call-like string such as ``"Ha(5)"`` or
``"P2.17a(n=3, matrix=1 0 0; 0 2 0; 0 0 3)"``.  Appending ``!mut`` to a
name yields a deliberately broken copy whose failure point is recorded in
:data:`MUTANT_EXPECTED`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .expr import parse_element, parse_scalar
from .ghoe import GhoeData, attach_and_verify
from .hopfstruct import HopfStructure, check_hopf_axioms
from .ncpoly import Diagnostic, Element, Generator, Presentation, Tensor
from .orext import OreData
from .scalars import QQ, Field


class UnknownName(KeyError):
    pass


class BadParameters(ValueError):
    pass


class CocycleViolation(ValueError):
    pass


# ---------------------------------------------------------------------------
# Base Hopf algebras


def primitive_hopf(pres: Presentation) -> HopfStructure:
    """Every generator primitive: Δg = g⊗1 + 1⊗g, ε(g) = 0, S(g) = -g."""
    one = pres.one()
    delta, counit, antipode = {}, {}, {}
    for g in pres.generators:
        e = pres.gen(g.name)
        delta[g.name] = Tensor.pure(e, one) + Tensor.pure(one, e)
        counit[g.name] = 0
        antipode[g.name] = -e
    return HopfStructure(pres, delta, counit, antipode)


def build_env(dim: int = 1, bracket: str = "abelian", field: Field = QQ) -> HopfStructure:
    """U(g) for g = ka or g = ka ⊕ kb, abelian or with [a, b] = a."""
    if dim == 1:
        return primitive_hopf(Presentation(field, [Generator("a")], name="U(ka)"))
    if dim != 2:
        raise BadParameters("enveloping algebras are built for dimension 1 or 2")
    if bracket == "abelian":
        rules = {("b", "a"): {("a", "b"): 1}}
    elif bracket in ("nonabelian", "[a,b]=a"):
        rules = {("b", "a"): {("a", "b"): 1, ("a",): -1}}
    else:
        raise BadParameters(f"unknown bracket {bracket!r}")
    pres = Presentation(field, [Generator("a"), Generator("b")], rules, name=f"U(g2,{bracket})")
    return primitive_hopf(pres)


def build_abelian_env(n: int, field: Field = QQ) -> HopfStructure:
    """U(g) = k[a1, ..., an] for an abelian Lie algebra."""
    names = [f"a{i}" for i in range(1, n + 1)]
    rules = {(names[j], names[i]): {(names[i], names[j]): 1} for i in range(n) for j in range(i + 1, n)}
    pres = Presentation(field, [Generator(s) for s in names], rules, name=f"U(k^{n})")
    return primitive_hopf(pres)


def build_group_algebra(rank: int, torsion=(), field: Field = QQ) -> HopfStructure:
    """kG for G = Z^rank × Z/n1 × ... with group-like commuting generators."""
    orders = [0] * rank + [int(n) for n in torsion]
    if any(n == 1 or n < 0 for n in orders):
        raise BadParameters("torsion orders must be at least 2")
    names = ["g"] if len(orders) == 1 else [f"g{i}" for i in range(1, len(orders) + 1)]
    gens = [Generator(s, invertible=True, order=n) for s, n in zip(names, orders)]
    rules = {(names[j], names[i]): {(names[i], names[j]): 1} for i in range(len(names)) for j in range(i + 1, len(names))}
    pres = Presentation(field, gens, rules, name="kG")
    delta, counit, antipode = {}, {}, {}
    for s in names:
        g = pres.gen(s)
        delta[s] = Tensor.pure(g, g)
        counit[s] = 1
        antipode[s] = g.inverse()
    return HopfStructure(pres, delta, counit, antipode)


def cocycle_value(chi, alpha, word) -> object:
    """α on a product of generators via α(gh) = α(g) + χ(g)α(h)."""
    if not word:
        return 0
    g, rest = word[0], word[1:]
    return alpha[g] + chi[g] * cocycle_value(chi, alpha, rest)


def check_cocycle(H: HopfStructure, chi, alpha):
    pres = H.pres
    f = pres.field
    names = [g.name for g in pres.generators]
    for g in pres.generators:
        c = f(chi[g.name])
        if not c:
            raise CocycleViolation(f"χ({g.name}) must be nonzero")
        if g.order:
            if c ** g.order != f.one:
                raise CocycleViolation(f"χ({g.name})^{g.order} != 1")
            total = sum((c ** k for k in range(g.order)), f.zero)
            if f(alpha[g.name]) * total:
                raise CocycleViolation(f"α({g.name}^{g.order}) != α(1) = 0")
    for i, s in enumerate(names):
        for t in names[i + 1:]:
            lhs = (f(chi[t]) - 1) * f(alpha[s])
            rhs = (f(chi[s]) - 1) * f(alpha[t])
            if lhs != rhs:
                raise CocycleViolation(f"α({s}{t}) != α({t}{s})")


def build_group_ghoe(H: HopfStructure, chi, r, alpha, name: str = "") -> GhoeData:
    """Usual extension of kG with τ(g) = χ(g)g and δ(g) = α(g)(1 - r)g."""
    pres = H.pres
    f = pres.field
    if isinstance(r, str):
        r = parse_element(r, pres)
    if not H.is_grouplike(r):
        raise BadParameters(f"r = {r} is not group-like")
    check_cocycle(H, chi, alpha)
    tau, delta = {}, {}
    for g in pres.generators:
        e = pres.gen(g.name)
        tau[g.name] = e.scale(f(chi[g.name]))
        delta[g.name] = ((pres.one() - r) * e).scale(f(alpha[g.name]))
    chi_vals = {g.name: f(chi[g.name]) for g in pres.generators}
    return GhoeData(H, OreData(tau, delta), pres.one(), r, pres.zero(), pres.zero(), chi=chi_vals, name=name)


def ghoe_from_strings(H: HopfStructure, tau=None, delta=None, r1="1", r2="1", x="0", y="0",
                      z="z", chi=None, name="") -> GhoeData:
    """GhoeData from expression strings; τ defaults to the identity, δ to 0."""
    pres = H.pres
    tau, delta = dict(tau or {}), dict(delta or {})
    gens = [g.name for g in pres.generators]
    for k in list(tau) + list(delta):
        if k not in gens:
            raise BadParameters(f"unknown generator {k!r}")

    def el(v):
        return v if isinstance(v, Element) else parse_element(str(v), pres)

    t = {g: el(tau.get(g, g)) for g in gens}
    d = {g: el(delta.get(g, "0")) for g in gens}
    return GhoeData(H, OreData(t, d, z), el(r1), el(r2), el(x), el(y), chi=chi, name=name)


def usual_primitive_tau(H: HopfStructure, chi) -> dict:
    """τ(a) = a + χ(a) for primitive generators and r1 = 1."""
    return {g.name: f"{g.name} + ({H.pres.field(chi.get(g.name, 0))})" for g in H.pres.generators}


# ---------------------------------------------------------------------------
# The upper half of the quantum group of sl(3)


def _q_field(q) -> Field:
    if q is None or q == "q":
        return Field.ratfunc()
    return Field.rationals(q_value=Fraction(q))


def _torus_rules(q, extra_e=()):
    """E_j K_i -> q^(-a_ji) K_i E_j with the Cartan matrix of sl(3)."""
    cartan = {("1", "1"): 2, ("2", "2"): 2, ("1", "2"): -1, ("2", "1"): -1}
    rules = {("K2", "K1"): {("K1", "K2"): 1}}
    for (j, i), a in cartan.items():
        rules[(f"E{j}", f"K{i}")] = {(f"K{i}", f"E{j}"): q ** (-a)}
    for name, weight in extra_e:
        for i in ("1", "2"):
            rules[(name, f"K{i}")] = {(f"K{i}", name): q ** (-weight[i])}
    return rules


def _half_quantum_hopf(pres, extra=None) -> HopfStructure:
    delta, counit, antipode = {}, {}, {}
    one = pres.one()
    for i in ("1", "2"):
        K, E = pres.gen("K" + i), pres.gen("E" + i)
        delta["K" + i] = Tensor.pure(K, K)
        counit["K" + i] = 1
        antipode["K" + i] = K.inverse()
        delta["E" + i] = Tensor.pure(K, E) + Tensor.pure(E, one)
        counit["E" + i] = 0
        antipode["E" + i] = -(K.inverse() * E)
    for k, (d, e, s) in (extra or {}).items():
        delta[k], counit[k], antipode[k] = d, e, s
    return HopfStructure(pres, delta, counit, antipode)


def half_quantum_base(q=None) -> HopfStructure:
    """K1^±1, K2^±1, E1, E2 with torus relations only, no Serre relations."""
    f = _q_field(q)
    qs = f.symbol()
    gens = [Generator("K1", True), Generator("K2", True), Generator("E1"), Generator("E2")]
    pres = Presentation(f, gens, _torus_rules(qs), name="A(sl3 half, free)")
    return _half_quantum_hopf(pres)


def sl3_serre(q=None) -> HopfStructure:
    """The positive part of U_q(sl3) with E12 = E1E2 - q^-1 E2E1."""
    f = _q_field(q)
    qs = f.symbol()
    gens = [Generator("K1", True), Generator("K2", True), Generator("E1"), Generator("E12"), Generator("E2")]
    rules = _torus_rules(qs, extra_e=[("E12", {"1": 1, "2": 1})])
    rules[("E2", "E1")] = {("E1", "E2"): qs, ("E12",): -qs}
    rules[("E12", "E1")] = {("E1", "E12"): 1 / qs}
    rules[("E2", "E12")] = {("E12", "E2"): 1 / qs}
    pres = Presentation(f, gens, rules, name="U_q^+(sl3)")
    K1, K2 = pres.gen("K1"), pres.gen("K2")
    E1, E2, E12 = pres.gen("E1"), pres.gen("E2"), pres.gen("E12")
    one = pres.one()
    d12 = Tensor.pure(E12, one) + Tensor.pure(K2 * E1, E2).scale(qs - 1 / qs) + Tensor.pure(K1 * K2, E12)
    s1, s2 = -(K1.inverse() * E1), -(K2.inverse() * E2)
    s12 = s2 * s1 - (s1 * s2).scale(1 / qs)
    return _half_quantum_hopf(pres, {"E12": (d12, 0, s12)})


def sl3_literal_data(q=None) -> GhoeData:
    """The quantum-group Ore data exactly as printed, over A without Serre."""
    H = half_quantum_base(q)
    pres = H.pres
    qs = pres.field.symbol()
    tau = {
        "K1": pres.gen("K1").scale(1 / qs),
        "K2": pres.gen("K2").scale(1 / qs),
        "E1": pres.gen("E1").scale(1 / qs),
        "E2": pres.gen("E2").scale(qs),
    }
    delta = {g: pres.zero() for g in tau}
    x = (pres.gen("K2") * pres.gen("E1")).scale(qs - 1 / qs)
    return GhoeData(H, OreData(tau, delta), pres.one(), pres.gen("K1") * pres.gen("K2"), x, pres.gen("E2"),
                    name="SL3-literal")


def _w(pres) -> Element:
    qs = pres.field.symbol()
    E1, E2 = pres.gen("E1"), pres.gen("E2")
    return E1 * E2 - (E2 * E1).scale(1 / qs)


def serre_elements(pres):
    """The two quantum Serre elements in E1, E2."""
    qs = pres.field.symbol()
    E1, E2 = pres.gen("E1"), pres.gen("E2")
    c = qs + 1 / qs
    s1 = E1 * E1 * E2 - (E1 * E2 * E1).scale(c) + E2 * E1 * E1
    s2 = E1 * E2 * E2 - (E2 * E1 * E2).scale(c) + E2 * E2 * E1
    return s1, s2


def serre_emergence_check(q=None) -> Diagnostic:
    """How z ↦ E1E2 - q^-1 E2E1 turns the Ore relations into the Serre relations.

    (i) Δ(w) = w⊗1 + x⊗y + K1K2⊗w in the free algebra.  (ii) w E_i - τ-twisted
    E_i w equals a Serre element up to a scalar.  (ii') those Serre
    elements are nonzero without Serre relations.  (iii) both vanish in
    the quotient presentation.
    """
    diag = Diagnostic()
    H = half_quantum_base(q)
    A = H.pres
    qs = A.field.symbol()
    K1, K2, E1, E2 = (A.gen(s) for s in ("K1", "K2", "E1", "E2"))
    w = _w(A)
    x = (K2 * E1).scale(qs - 1 / qs)
    expected = Tensor.pure(w, A.one()) + Tensor.pure(x, E2) + Tensor.pure(K1 * K2, w)
    diag.add("(i)", "w", H.extend_delta(w) - expected)
    s1, s2 = serre_elements(A)
    diag.add("(ii)", "E1", w * E1 - (E1 * w).scale(1 / qs) + s1.scale(1 / qs))
    diag.add("(ii)", "E2", w * E2 - (E2 * w).scale(qs) - s2)
    diag.add("(ii')", "E1", passed=not s1.is_zero(), note=str(s1))
    diag.add("(ii')", "E2", passed=not s2.is_zero(), note=str(s2))
    B = sl3_serre(q).pres
    t1, t2 = serre_elements(B)
    diag.add("(iii)", "E1", t1)
    diag.add("(iii)", "E2", t2)
    return diag


def sl3_serre_identities(H: HopfStructure) -> Diagnostic:
    """The displayed Hopf-ideal identities with z read as E12."""
    B = H.pres
    qs = B.field.symbol()
    K1, K2 = B.gen("K1"), B.gen("K2")
    u = B.gen("E12") - _w(B)
    diag = Diagnostic()
    diag.add("ideal-delta", "E12", H.extend_delta(u) - Tensor.pure(u, B.one()) - Tensor.pure(K1 * K2, u))
    diag.add("ideal-counit", "E12", B.scalar(H.extend_counit(u)))
    diag.add("ideal-antipode", "E12", H.extend_antipode(u) + (K1 * K2).inverse() * u)
    x = (K2 * B.gen("E1")).scale(qs - 1 / qs)
    dz = Tensor.pure(B.gen("E12"), B.one()) + Tensor.pure(x, B.gen("E2")) + Tensor.pure(K1 * K2, B.gen("E12"))
    diag.add("delta-z", "E12", H.extend_delta(B.gen("E12")) - dz)
    return diag


# ---------------------------------------------------------------------------
# Named entries


PASS = ("Pass",)


@dataclass
class CatalogEntry:
    name: str
    hopf: HopfStructure
    ghoe: GhoeData | None
    expected: tuple = PASS
    tags: tuple = ()
    kind: str = "ghoe"
    extras: dict = field(default_factory=dict)

    def verify(self) -> Diagnostic:
        if self.kind == "ghoe":
            return attach_and_verify(self.ghoe)[1]
        diag = check_hopf_axioms(self.hopf)
        hook = self.extras.get("identities")
        if hook is not None:
            diag.extend(hook(self.hopf))
        return diag

    def matches(self, diag: Diagnostic) -> bool:
        return verdict_of(diag) == tuple(self.expected)


def verdict_of(diag: Diagnostic) -> tuple:
    bad = diag.first_failure()
    if bad is None:
        return PASS
    return ("FailAt", bad.check, bad.generator)


def _matrix(text, n, field):
    rows = [r.split() for r in str(text).split(";")]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise BadParameters(f"matrix must be {n}x{n}")
    return [[parse_scalar(c, field) for c in r] for r in rows]


def _proportional(u: Element, v: Element) -> bool:
    if u.is_zero() or v.is_zero():
        return True
    if set(u.terms) != set(v.terms):
        return False
    w0 = next(iter(v.terms))
    return u == v.scale(u.terms[w0] / v.terms[w0])


def _int(v, what="parameter"):
    try:
        return int(v)
    except (TypeError, ValueError):
        raise BadParameters(f"{what} must be an integer, got {v!r}") from None


def _prime(v, allowed=None):
    p = _int(v, "p")
    try:
        f = Field.prime(p)
    except ValueError as e:
        raise BadParameters(str(e)) from None
    if allowed is not None and p not in allowed:
        raise BadParameters(f"p = {p} not supported here")
    return f


def _one_dim(name, field, chi=0, delta="0", x="0", y="0", tags=()):
    H = build_env(1, field=field)
    data = ghoe_from_strings(H, tau=usual_primitive_tau(H, {"a": chi}), delta={"a": delta}, x=x, y=y,
                             chi={"a": chi}, name=name)
    return CatalogEntry(name, H, data, tags=tags)


def _h0():
    return _one_dim("H0", QQ, tags=("Prop2.6",))


def _ha(eta="1"):
    eta = parse_scalar(eta, QQ)
    if not eta:
        raise BadParameters("η must be nonzero")
    return _one_dim("Ha", QQ, delta=f"({eta})*a", tags=("Prop2.6",))


def _h1():
    return _one_dim("H1", QQ, chi=1, tags=("Prop2.6",))


def _hp0(p="3"):
    return _one_dim("Hp0", _prime(p), tags=("Prop2.7",))


def _hp_delta(p="3", *eta):
    f = _prime(p)
    eta = [parse_scalar(e, f) for e in (eta or ("1", "1"))]
    if not any(eta):
        raise BadParameters("δ(a) must be nonzero")
    terms = " + ".join(f"({c})*a^{f.p ** i}" for i, c in enumerate(eta) if c)
    return _one_dim("Hp_delta", f, delta=terms, tags=("Prop2.7",))


def _hp1(p="3"):
    return _one_dim("Hp1", _prime(p), chi=1, tags=("Prop2.7",))


def _hp_xy(p="3", x="a", y=None, delta=None):
    f = _prime(p)
    y = y if y is not None else f"a^{f.p}"
    delta = delta if delta is not None else f"a^{f.p}"
    e = _one_dim("Hp_xy", f, x=x, y=y, delta=delta, tags=("Prop2.7",))
    H, g = e.hopf, e.ghoe
    one = H.pres.one()
    for label, v in (("x", g.x), ("y", g.y), ("δ(a)", g.ore.delta["a"])):
        if not H.is_skew_primitive(v, one, one):
            raise BadParameters(f"{label} = {v} is not primitive")
    if _proportional(g.x, g.y):
        raise BadParameters("x and y must be nonzero and span two lines")
    return e


def _two_dim(name, field, bracket, chi, delta, x="0", y="0", tags=()):
    H = build_env(2, bracket, field)
    data = ghoe_from_strings(H, tau=usual_primitive_tau(H, chi), delta=delta, x=x, y=y, chi=dict(chi), name=name)
    return CatalogEntry(name, H, data, tags=tags)


def _p28a(bracket="nonabelian", chi_a="0", chi_b="1", delta_a="a", delta_b="5*a + b"):
    chi = {"a": parse_scalar(chi_a, QQ), "b": parse_scalar(chi_b, QQ)}
    if bracket != "abelian" and chi["a"]:
        raise BadParameters("χ(a) must vanish when [a, b] = a")
    return _two_dim("P2.8a", QQ, bracket, chi, {"a": delta_a, "b": delta_b}, tags=("Prop2.8a",))


def _p28b(matrix="1 2; 3 4"):
    m = _matrix(matrix, 2, QQ)
    delta = {"a": f"({m[0][0]})*a + ({m[1][0]})*b", "b": f"({m[0][1]})*a + ({m[1][1]})*b"}
    return _two_dim("P2.8b", QQ, "abelian", {"a": 0, "b": 0}, delta, x="a", y="b", tags=("Prop2.8b",))


def _p28c(eta="0", zeta="0"):
    eta, zeta = parse_scalar(eta, QQ), parse_scalar(zeta, QQ)
    delta = {"a": f"({eta})*a - 1/2*a^2", "b": f"({zeta})*a + ({eta})*b"}
    return _two_dim("P2.8c", QQ, "nonabelian", {"a": 0, "b": 1}, delta, x="a", y="b", tags=("Prop2.8c",))


def _fam(name, field, chi_b, x, y, da, db, tags):
    return _two_dim(name, field, "nonabelian", {"a": 0, "b": chi_b}, {"a": da, "b": db}, x=x, y=y, tags=tags)


def _p212(sub):
    defaults = {
        "c": (0, "a^3", "b^3 - b", "0", "a^3 + b^3 - b", ("Prop2.12c", "a:I(0,0,0)", "b:I(0,0,0)")),
        "d(i)": (1, "a", "b^3", "-1/2*a^2", "0", ("Prop2.12d(i)", "a:I(0,-1,0)", "b:I(1,0,-1)")),
        "d(ii)": (1, "b^3", "a", "-1/2*a^2", "0", ("Prop2.12d(ii)", "a:I(-1,0,0)", "b:I(0,1,-1)")),
        "d(iii)": (1, "a + b^3 - b", "b^3 - b", "0", "-1/2*(b^3 - b)^2",
                   ("Prop2.12d(iii)", "a:I(0,0,0)", "b:I(1,0,-1)")),
    }
    chi_b, x0, y0, da0, db0, tags = defaults[sub]

    def build(p="3", x=x0, y=y0, delta_a=da0, delta_b=db0):
        f = _prime(p)
        if f.p == 2:
            raise BadParameters("this family needs an odd characteristic")
        return _fam(f"P2.12{sub}", f, chi_b, x, y, delta_a, delta_b, tags)

    return build


def _p214(sub):
    defaults = {
        "c(i)": (0, "a", "a", "0", "0", ("Prop2.14c(i)", "a:J(0,0,0)", "b:J(1,1,0)")),
        "c(ii)": (0, "b", "b", "a*b", "0", ("Prop2.14c(ii)", "a:J(1,1,0)", "b:J(0,0,0)")),
        "d(i)": (1, "a", "a^2", "0", "0", ("Prop2.14d(i)", "a:J(0,0,0)", "b:J(1,0,1)")),
        "d(ii)": (1, "a^2", "a", "0", "0", ("Prop2.14d(ii)", "a:J(0,0,0)", "b:J(0,1,1)")),
    }
    chi_b, x0, y0, da0, db0, tags = defaults[sub]

    def build(x=x0, y=y0, delta_a=da0, delta_b=db0):
        return _fam(f"P2.14{sub}", Field.prime(2), chi_b, x, y, delta_a, delta_b, tags)

    return build


def _matrix_delta(H, m):
    names = [g.name for g in H.pres.generators]
    n = len(names)
    return {names[j]: " + ".join(f"({m[i][j]})*{names[i]}" for i in range(n)) for j in range(n)}


def _p217a(n="3", matrix=None):
    n = _int(n, "n")
    H = build_abelian_env(n)
    m = _matrix(matrix or _default_matrix(n), n, QQ)
    data = ghoe_from_strings(H, delta=_matrix_delta(H, m), chi={g.name: 0 for g in H.pres.generators}, name="P2.17a")
    return CatalogEntry("P2.17a", H, data, tags=("Prop2.17a",))


def _p217b(n="3"):
    n = _int(n, "n")
    H = build_abelian_env(n)
    chi = {g.name: 0 for g in H.pres.generators}
    chi["a1"] = 1
    data = ghoe_from_strings(H, tau=usual_primitive_tau(H, chi), chi=chi, name="P2.17b")
    return CatalogEntry("P2.17b", H, data, tags=("Prop2.17b",))


def _p217c(n="3", matrix=None):
    n = _int(n, "n")
    if n < 2:
        raise BadParameters("need n >= 2")
    H = build_abelian_env(n)
    m = _matrix(matrix or _default_matrix(n), n, QQ)
    data = ghoe_from_strings(H, delta=_matrix_delta(H, m), x="a1", y="a2",
                             chi={g.name: 0 for g in H.pres.generators}, name="P2.17c")
    return CatalogEntry("P2.17c", H, data, tags=("Prop2.17c",))


def _default_matrix(n):
    return "; ".join(" ".join(str(i + 1 if i == j else (1 if j == i + 1 else 0)) for j in range(n)) for i in range(n))


def _sl3_literal(q=None):
    data = sl3_literal_data(q)
    label = "SL3-literal" if q is None else f"SL3-literal({q})"
    return CatalogEntry(label, data.hopf, data, expected=("FailAt", "B2", "E1"), tags=("quantum-sl3",))


def _sl3_serre(q=None):
    H = sl3_serre(q)
    label = "SL3-serre" if q is None else f"SL3-serre({q})"
    return CatalogEntry(label, H, None, kind="hopf", tags=("quantum-sl3",),
                        extras={"identities": sl3_serre_identities})


def _kg_z():
    H = build_group_algebra(1)
    data = build_group_ghoe(H, {"g": 2}, "g", {"g": 1}, name="KG-Z")
    return CatalogEntry("KG-Z", H, data, tags=("Prop2.1",))


def _kg_z2z4():
    H = build_group_algebra(0, [2, 4])
    data = build_group_ghoe(H, {"g1": -1, "g2": -1}, "g2", {"g1": 1, "g2": 1}, name="KG-Z2xZ4")
    return CatalogEntry("KG-Z2xZ4", H, data, tags=("Prop2.1",))


FAMILIES: dict[str, Callable[..., CatalogEntry]] = {
    "H0": _h0,
    "Ha": _ha,
    "H1": _h1,
    "Hp0": _hp0,
    "Hp_delta": _hp_delta,
    "Hp1": _hp1,
    "Hp_xy": _hp_xy,
    "P2.8a": _p28a,
    "P2.8b": _p28b,
    "P2.8c": _p28c,
    "P2.12c": _p212("c"),
    "P2.12d(i)": _p212("d(i)"),
    "P2.12d(ii)": _p212("d(ii)"),
    "P2.12d(iii)": _p212("d(iii)"),
    "P2.14c(i)": _p214("c(i)"),
    "P2.14c(ii)": _p214("c(ii)"),
    "P2.14d(i)": _p214("d(i)"),
    "P2.14d(ii)": _p214("d(ii)"),
    "P2.17a": _p217a,
    "P2.17b": _p217b,
    "P2.17c": _p217c,
    "SL3-literal": _sl3_literal,
    "SL3-serre": _sl3_serre,
    "KG-Z": _kg_z,
    "KG-Z2xZ4": _kg_z2z4,
}

DEFAULT_NAMES = (
    "H0", "Ha", "H1",
    "Hp0(2)", "Hp0(3)", "Hp_delta(2)", "Hp_delta(3)", "Hp1(2)", "Hp1(3)", "Hp_xy(2)", "Hp_xy(3)",
    "P2.8a", "P2.8b", "P2.8c",
    "P2.12c", "P2.12d(i)", "P2.12d(ii)", "P2.12d(iii)",
    "P2.14c(i)", "P2.14c(ii)", "P2.14d(i)", "P2.14d(ii)",
    "P2.17a", "P2.17b", "P2.17c",
    "SL3-literal", "SL3-literal(2)", "SL3-serre", "SL3-serre(2)",
    "KG-Z", "KG-Z2xZ4",
)

# First failing check of each negative control, frozen from engine runs.
MUTANT_EXPECTED = {
    "H0": ('FailAt', 'B3', 'a'),
    "Ha": ('FailAt', 'B3', 'a'),
    "H1": ('FailAt', 'B3', 'a'),
    "Hp0(2)": ('FailAt', 'B3', 'a'),
    "Hp0(3)": ('FailAt', 'B3', 'a'),
    "Hp_delta(2)": ('FailAt', 'B3', 'a'),
    "Hp_delta(3)": ('FailAt', 'B3', 'a'),
    "Hp1(2)": ('FailAt', 'B3', 'a'),
    "Hp1(3)": ('FailAt', 'B3', 'a'),
    "Hp_xy(2)": ('FailAt', 'B3', 'a'),
    "Hp_xy(3)": ('FailAt', 'B3', 'a'),
    "P2.8a": ('FailAt', 'ore:delta-relation', 'b*a'),
    "P2.8b": ('FailAt', 'B3', 'a'),
    "P2.8c": ('FailAt', 'ore:delta-relation', 'b*a'),
    "P2.12c": ('FailAt', 'ore:delta-relation', 'b*a'),
    "P2.12d(i)": ('FailAt', 'ore:delta-relation', 'b*a'),
    "P2.12d(ii)": ('FailAt', 'ore:delta-relation', 'b*a'),
    "P2.12d(iii)": ('FailAt', 'ore:delta-relation', 'b*a'),
    "P2.14c(i)": ('FailAt', 'ore:delta-relation', 'b*a'),
    "P2.14c(ii)": ('FailAt', 'ore:delta-relation', 'b*a'),
    "P2.14d(i)": ('FailAt', 'B3', 'a'),
    "P2.14d(ii)": ('FailAt', 'B3', 'a'),
    "P2.17a": ('FailAt', 'B3', 'a1'),
    "P2.17b": ('FailAt', 'B3', 'a1'),
    "P2.17c": ('FailAt', 'B3', 'a1'),
    "SL3-serre": ('FailAt', 'antipode-left', 'E1'),
    "SL3-serre(2)": ('FailAt', 'antipode-left', 'E1'),
    "KG-Z": ('FailAt', 'B3', 'g'),
    "KG-Z2xZ4": ('FailAt', 'ore:delta-relation', 'g2*g1'),
}


def _split_args(text):
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "," and depth == 0:
            out.append(cur.strip())
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    if cur.strip():
        out.append(cur.strip())
    return out


def parse_name(text: str):
    """Split ``"Family(args)"`` into the family, positional and keyword args."""
    text = text.strip()
    for fam in sorted(FAMILIES, key=len, reverse=True):
        if not text.startswith(fam):
            continue
        rest = text[len(fam):].strip()
        if not rest:
            return fam, [], {}
        if rest.startswith("(") and rest.endswith(")"):
            pos, kw = [], {}
            for part in _split_args(rest[1:-1]):
                m = re.fullmatch(r"([A-Za-z_]\w*)\s*=\s*(.*)", part, re.S)
                if m:
                    kw[m.group(1)] = m.group(2).strip()
                elif kw:
                    raise BadParameters("positional argument after keyword argument")
                else:
                    pos.append(part)
            return fam, pos, kw
    raise UnknownName(text)


def build_named(name: str, **params) -> CatalogEntry:
    mutate = name.endswith("!mut")
    base = name[:-4] if mutate else name
    fam, pos, kw = parse_name(base)
    kw.update({k: str(v) for k, v in params.items()})
    try:
        entry = FAMILIES[fam](*pos, **kw)
    except TypeError as e:
        raise BadParameters(f"{fam}: {e}") from None
    if base != fam or params:
        entry.name = base if not params else f"{fam}({', '.join(f'{k}={v}' for k, v in kw.items())})"
    else:
        entry.name = base
    if mutate:
        entry = mutate_entry(entry)
        entry.expected = MUTANT_EXPECTED.get(base, ("Fail",))
    return entry


def mutate_entry(entry: CatalogEntry) -> CatalogEntry:
    """Break an entry in one place: δ(first generator) += 1, or negate one antipode."""
    name = entry.name + "!mut"
    if entry.kind == "ghoe":
        data = entry.ghoe
        g0 = data.A.generators[0].name
        delta = dict(data.ore.delta)
        delta[g0] = delta[g0] + data.A.one()
        ore = OreData(dict(data.ore.tau), delta, data.ore.z)
        return CatalogEntry(name, entry.hopf, data.replace(ore=ore, name=name), tags=entry.tags + ("mutant",))
    H = entry.hopf
    pres = H.pres
    target = next(g.name for g in pres.generators if not g.invertible)
    antipode = dict(H.antipode)
    antipode[target] = -antipode[target]
    H2 = HopfStructure(pres, H.delta, H.counit, antipode)
    return CatalogEntry(name, H2, None, kind="hopf", tags=entry.tags + ("mutant",), extras=dict(entry.extras))


MUTABLE_FIELDS = ("delta", "tau", "x", "y", "r1", "r2")


def random_mutation(data: GhoeData, rng) -> tuple:
    """Perturb one field of ``data``; returns ``(new_data, description)``.

    Polynomial fields get a random monomial of degree <= 2 added; ``r1``
    and ``r2`` are multiplied by an invertible generator when there is
    one.  The supplied χ is dropped because it is derived from τ and r1.
    """
    d = data.replace(chi=None)
    A = d.A
    gens = A.generators
    g = rng.choice(gens)
    what = rng.choice(MUTABLE_FIELDS)
    word = tuple(rng.choice(gens).name for _ in range(rng.randint(0, 2)))
    mono = A.element({word: rng.choice((1, 2, -1))})
    if what in ("delta", "tau"):
        table = dict(getattr(d.ore, what))
        table[g.name] = table[g.name] + mono
        ore = OreData(table, dict(d.ore.delta), d.ore.z) if what == "tau" else OreData(dict(d.ore.tau), table, d.ore.z)
        return d.replace(ore=ore), f"{what}({g.name}) += {mono}"
    if what in ("r1", "r2") and g.invertible:
        return d.replace(**{what: getattr(d, what) * A.gen(g.name)}), f"{what} *= {g.name}"
    return d.replace(**{what: getattr(d, what) + mono}), f"{what} += {mono}"


def list_names(include_mutants: bool = True):
    names = list(DEFAULT_NAMES)
    if include_mutants:
        names += [n + "!mut" for n in DEFAULT_NAMES if n in MUTANT_EXPECTED]
    return names


def verify_all(names=None):
    """Run every entry; yields ``(name, entry, diagnostic, matched)``."""
    for n in names or list_names():
        e = build_named(n)
        d = e.verify()
        yield n, e, d, e.matches(d)
