"""Generalized Hopf-Ore extensions.

Given a Hopf algebra ``A``, Ore data ``(τ, δ)`` and elements
``r1, r2, x, y`` of ``A``, the Ore extension ``H = A[z; τ, δ]`` is given

    Δz = z ⊗ r1 + x ⊗ y + r2 ⊗ z,    ε(z) = 0

and :func:`attach_and_verify` decides whether this is a Hopf algebra by
splitting ``Δ(z)Δ(a) - Δ(τa)Δ(z) - Δ(δa)`` into its ``z ⊗ 1``, ``1 ⊗ z``
and ``z``-free parts.  :func:`check_theorem_conditions` decides the same
question through a character ``χ`` of ``A``, so the two act as a
cross-check on each other.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Mapping

from .hopfstruct import HopfStructure, check_character, check_hopf_axioms
from .ncpoly import Diagnostic, Element, NonInvertibleImage, NonTerminating, Presentation, Tensor
from .orext import NonInvertibleT, OreData, OreMaps, build_ore_extension, check_ore_data


class NotClassified(ValueError):
    pass


class NonScalarResult(ValueError):
    def __init__(self, values):
        self.values = values
        names = ", ".join(n for n, _ in values)
        super().__init__(f"χ is not scalar on {names}")


@dataclass
class GhoeData:
    """Data of a candidate generalized Hopf-Ore extension over ``hopf``."""

    hopf: HopfStructure
    ore: OreData
    r1: Element
    r2: Element
    x: Element
    y: Element
    chi: Mapping[str, object] | None = None
    name: str = ""

    @property
    def A(self) -> Presentation:
        return self.hopf.pres

    def replace(self, **kw) -> "GhoeData":
        return dataclasses.replace(self, **kw)


@dataclass(frozen=True)
class Classification:
    case: str  # "A", "B", "C" or "Invalid"
    alpha: object = None
    beta: object = None
    r3: Element | None = None
    reason: str = ""

    def __str__(self):
        if self.case == "B":
            return f"CaseB({self.alpha}, {self.beta})"
        if self.case == "C":
            return f"CaseC(r3 = {self.r3})"
        if self.case == "A":
            return "CaseA"
        return f"Invalid({self.reason})"


def _ratio(u: Element, v: Element):
    """The scalar c with u = c*v, or None."""
    if v.is_zero() or set(u.terms) != set(v.terms):
        return None
    w0 = next(iter(v.terms))
    c = u.terms[w0] / v.terms[w0]
    return c if u == v.scale(c) else None


def classify_quadruple(H: HopfStructure, r1, r2, x, y) -> Classification:
    for name, r in (("r1", r1), ("r2", r2)):
        if not H.is_grouplike(r):
            return Classification("Invalid", reason=f"{name} = {r} is not group-like")
    if x.is_zero() or y.is_zero():
        return Classification("A")
    a, b = _ratio(x, r2), _ratio(y, r1)
    if a is not None and b is not None:
        return Classification("B", alpha=a, beta=b)
    dx = H.extend_delta(x) - Tensor.pure(r2, x)
    m0, c0 = min(x.terms.items(), key=lambda kv: H.pres.order_key(kv[0]))
    r3 = Element(H.pres, {k[1]: c / c0 for k, c in dx.terms.items() if k[0] == m0})
    if r3.is_zero() or dx != Tensor.pure(x, r3):
        return Classification("Invalid", reason=f"Δx - r2⊗x is not x⊗g for any g")
    if not H.is_grouplike(r3):
        return Classification("Invalid", reason=f"r3 = {r3} is not group-like")
    if H.extend_delta(y) != Tensor.pure(y, r1) + Tensor.pure(r3, y):
        return Classification("Invalid", reason=f"y is not (r1, r3)-primitive with r3 = {r3}")
    return Classification("C", r3=r3)


def classify(data: GhoeData) -> Classification:
    return classify_quadruple(data.hopf, data.r1, data.r2, data.x, data.y)


def normalize_case(data: GhoeData, cl: Classification | None = None) -> GhoeData:
    """Rewrite the data so that ``x ⊗ y = 0`` (case B) or ``r3 = 1`` (case C)."""
    cl = cl or classify(data)
    A = data.A
    if cl.case == "Invalid":
        raise NotClassified(cl.reason)
    if cl.case == "A":
        return data
    if cl.case == "B":
        ab = cl.alpha * cl.beta
        delta = {}
        for g in _gen_names(A):
            a = A.gen(g)
            t = data.ore.tau[g]
            delta[g] = data.ore.delta[g] + (data.r2 * a - t * data.r2).scale(ab)
        ore = OreData(dict(data.ore.tau), delta, data.ore.z)
        return data.replace(ore=ore, x=A.zero(), y=A.zero())
    r3 = cl.r3
    if r3 == A.one():
        return data
    inv = r3.inverse()
    tau = {g: inv * data.ore.tau[g] * r3 for g in _gen_names(A)}
    delta = {g: inv * data.ore.delta[g] for g in _gen_names(A)}
    return data.replace(
        ore=OreData(tau, delta, data.ore.z),
        r1=inv * data.r1,
        r2=inv * data.r2,
        x=inv * data.x,
        y=inv * data.y,
    )


def _gen_names(A: Presentation):
    return [l.name for l in A.letters if not l.inverse]


def _lift(Hp: Presentation, u):
    """Base elements and tensors keep their words inside the extension."""
    if isinstance(u, Element):
        return Element(Hp, dict(u.terms))
    return Tensor(Hp, u.arity, dict(u.terms))


def antipode_of_z(data: GhoeData, cl: Classification, Hp: Presentation) -> Element:
    z = Hp.gen(data.ore.z)
    r1i = _lift(Hp, data.r1.inverse())
    r2i = _lift(Hp, data.r2.inverse())
    if cl.case == "A":
        return -(r2i * z * r1i)
    if cl.case == "C":
        x, y = _lift(Hp, data.x), _lift(Hp, data.y)
        r3i = _lift(Hp, cl.r3.inverse())
        return r2i * x * r3i * y * r1i - r2i * z * r1i
    sx = _lift(Hp, data.hopf.extend_antipode(data.x))
    eps = Hp.scalar(counit_of_z(data, cl))
    return (eps - sx * _lift(Hp, data.y) - r2i * z) * r1i


def counit_of_z(data: GhoeData, cl: Classification):
    """``ε(z)``: zero except in case B, where ``ε(z) = -αβ``."""
    f = data.A.field
    if cl.case == "B":
        return -(f(cl.alpha) * f(cl.beta))
    return f.zero


def _ore_checks(A: Presentation, ore: OreData) -> Diagnostic:
    try:
        return check_ore_data(A, ore)
    except NonInvertibleT as e:
        diag = Diagnostic()
        diag.add("tau-invertible", "-", passed=False, note=str(e))
        return diag


def attach_and_verify(data: GhoeData):
    """Build ``H`` with its candidate Hopf structure and check it.

    Returns ``(structure, diagnostic)``; the structure is ``None`` when
    the Ore extension itself cannot be formed.
    """
    diag = Diagnostic()
    A = data.A
    cl = classify(data)
    diag.add("classify", "-", passed=cl.case != "Invalid", note=str(cl))
    ore_diag = _ore_checks(A, data.ore)
    diag.extend(ore_diag, "ore:")
    if not ore_diag.passed:
        return None, diag
    try:
        Hp = build_ore_extension(A, data.ore, check=False)
    except NonTerminating as e:
        # τ raises the degree, so z*a -> τ(a)*z is not a reduction
        diag.add("ore:termination", data.ore.z, passed=False, note=str(e))
        return None, diag
    conf = Hp.check_local_confluence()
    diag.extend(conf)
    if not conf.passed:
        return None, diag
    zname = data.ore.z
    z = Hp.gen(zname)
    r1, r2 = _lift(Hp, data.r1), _lift(Hp, data.r2)
    x, y = _lift(Hp, data.x), _lift(Hp, data.y)
    try:
        sz = antipode_of_z(data, cl, Hp)
    except NonInvertibleImage as e:
        diag.add("antipode-formula", zname, passed=False, note=str(e))
        return None, diag
    names = _gen_names(A)
    delta = {g: _lift(Hp, data.hopf.delta[g]) for g in names}
    counit = {g: data.hopf.counit[g] for g in names}
    antipode = {g: _lift(Hp, data.hopf.antipode[g]) for g in names}
    delta[zname] = Tensor.pure(z, r1) + Tensor.pure(x, y) + Tensor.pure(r2, z)
    eps_z = counit_of_z(data, cl)
    counit[zname] = eps_z
    antipode[zname] = sz
    HS = HopfStructure(Hp, delta, counit, antipode)
    HS.ghoe = data
    HS.classification = cl

    maps = Hp.ore_maps
    dz = HS.extend_delta(z)
    zi = Hp.index[zname]
    for i, l in enumerate(A.letters):
        a = Element(Hp, {(i,): A.field.one})
        ta = _lift(Hp, maps.tau[i])
        da = _lift(Hp, maps.delta[i])
        R = dz * HS.extend_delta(a) - HS.extend_delta(ta) * dz - HS.extend_delta(da)
        parts = {"B1": {}, "B2": {}, "B3": {}}
        for key, c in R.terms.items():
            left, right = key[0].count(zi), key[1].count(zi)
            part = "B1" if left and not right else "B2" if right and not left else "B3"
            parts[part][key] = c
        for check in ("B1", "B2", "B3"):
            diag.add(check, l.name, Tensor(Hp, 2, parts[check]))
        eps = data.hopf.extend_counit
        shift = eps_z * (data.hopf.counit_of_word((i,)) - eps(maps.tau[i])) if eps_z else 0
        diag.add("B4", l.name, eps(maps.delta[i]) - shift)
    diag.extend(check_hopf_axioms(HS), "B5:")
    return HS, diag


# ---------------------------------------------------------------------------
# Characters and the theorem conditions


def _chi_letters(A: Presentation, chi: Mapping[str, object]):
    vals = []
    for l in A.letters:
        if l.inverse:
            v = chi[A.generators[l.gen].name]
            vals.append(1 / A.field(v))
        else:
            vals.append(A.field(chi[l.name]))
    return vals


def chi_of(A: Presentation, chi_vals, u: Element):
    acc = A.field.zero
    for w, c in u.terms.items():
        k = c
        for l in w:
            k = k * chi_vals[l]
            if not k:
                break
        acc = acc + k
    return acc


def _chi_word(chi_vals, w, f):
    k = f.one
    for l in w:
        k = k * chi_vals[l]
    return k


def derive_character(data: GhoeData) -> dict:
    """``χ(a) = τ(a1) r1 S(a2) r1^-1`` on generators; must be scalar."""
    A, H = data.A, data.hopf
    maps = OreMaps(A, data.ore)
    r1, r1i = data.r1, data.r1.inverse()
    out, bad = {}, []
    for name in _gen_names(A):
        val = A.zero()
        for (w1, w2), c in H.delta_of_word(A.word([name])).terms.items():
            val = val + (maps.tau_word(w1) * r1 * H.antipode_of_word(w2) * r1i).scale(c)
        s = val.scalar_value()
        if s is None:
            bad.append((name, val))
        else:
            out[name] = s
    if bad:
        raise NonScalarResult(bad)
    return out


def _chi_ad(H, chi_vals, a_word, r, ri, left: bool) -> Element:
    """Σ χ(a1) r a2 r^-1 (left) or Σ r a1 r^-1 χ(a2) (right)."""
    A, f = H.pres, H.pres.field
    out = A.zero()
    for (w1, w2), c in H.delta_of_word(a_word).terms.items():
        if left:
            k = _chi_word(chi_vals, w1, f)
            if k:
                out = out + (r * H.word(w2) * ri).scale(c * k)
        else:
            k = _chi_word(chi_vals, w2, f)
            if k:
                out = out + (r * H.word(w1) * ri).scale(c * k)
    return out


def _t3_sides(H, maps, a_word, x, y, r1, r2):
    """Both sides of the middle balance equation and the (x⊗y) part."""
    xy = Tensor.pure(x, y)
    da = H.delta_of_word(a_word)
    ta = maps.tau_word(a_word)
    da_tau = H.extend_delta(ta)
    left_xy = da_tau * xy
    right_xy = xy * da
    dd = H.extend_delta(maps.delta_word(a_word))
    mid = Tensor.zero(H.pres, 2)
    for (w1, w2), c in da.terms.items():
        mid = mid + Tensor.pure(maps.delta_word(w1), r1 * H.word(w2)).scale(c)
        mid = mid + Tensor.pure(r2 * H.word(w1), maps.delta_word(w2)).scale(c)
    return left_xy, right_xy, dd, mid


def check_theorem_conditions(data: GhoeData, chi: Mapping[str, object] | None = None) -> Diagnostic:
    """Decide the extension through ``χ`` and conditions (t1), (t2), (t3)."""
    diag = Diagnostic()
    A, H = data.A, data.hopf
    base = check_hopf_axioms(H)
    bad = base.first_failure()
    diag.add("premise:hopf(A)", "-", passed=base.passed,
             note="" if bad is None else f"{bad.check} at {bad.generator}")
    ore_diag = _ore_checks(A, data.ore)
    diag.extend(ore_diag, "ore:")
    if not ore_diag.passed:
        return diag
    cl = classify(data)
    diag.add("classify", "-", passed=cl.case != "Invalid", note=str(cl))
    if cl.case == "Invalid":
        return diag
    nd = normalize_case(data, cl)
    r1, r2, x, y = nd.r1, nd.r2, nd.x, nd.y
    one = A.one()
    if not x.is_zero() and not y.is_zero():
        diag.add("normal-form", "x", passed=H.is_skew_primitive(x, one, r2))
        diag.add("normal-form", "y", passed=H.is_skew_primitive(y, r1, one))
    try:
        derived = derive_character(nd)
    except NonScalarResult as e:
        for name, val in e.values:
            diag.add("chi-scalar", name, val, passed=False)
        return diag
    for name in _gen_names(A):
        diag.add("chi-scalar", name, passed=True, note=str(derived[name]))
    diag.extend(check_character(A, derived), "chi-")
    if chi is None and data.chi is not None:
        chi = data.chi
    if chi is not None:
        for name in _gen_names(A):
            diag.add("chi-supplied", name, A.field(chi[name]) - derived[name])
    if not diag.passed:
        return diag
    chi_vals = _chi_letters(A, derived)
    maps = OreMaps(A, nd.ore)
    r1i, r2i = r1.inverse(), r2.inverse()
    reduces = True
    t3_rows = []
    for i, l in enumerate(A.letters):
        w = (i,)
        lhs = _chi_ad(H, chi_vals, w, r1, r1i, left=True)
        diag.add("t1", l.name, maps.tau_word(w) - lhs)
        diag.add("t2", l.name, lhs - _chi_ad(H, chi_vals, w, r2, r2i, left=False))
        left_xy, right_xy, dd, mid = _t3_sides(H, maps, w, x, y, r1, r2)
        diag.add("t3", l.name, left_xy + dd - right_xy - mid)
        reduces = reduces and left_xy == right_xy
        t3_rows.append((l.name, dd - mid))
    if reduces:
        for name, res in t3_rows:
            diag.add("t3'", name, res)
    return diag


def check_corollaries(data: GhoeData, chi: Mapping[str, object] | None = None) -> Diagnostic:
    """Consequences that every generalized Hopf-Ore extension satisfies."""
    diag = Diagnostic()
    nd = normalize_case(data)
    A, H = nd.A, nd.hopf
    f = A.field
    chi = chi or derive_character(nd)
    chi_vals = _chi_letters(A, chi)
    maps = OreMaps(A, nd.ore)
    r1, r2 = nd.r1, nd.r2
    r1i, r2i = r1.inverse(), r2.inverse()

    def chi_s(w):  # χ∘S on a word
        return chi_of(A, chi_vals, H.antipode_of_word(w))

    def tau_inv(a: Element) -> Element:
        out = A.zero()
        for w, c in a.terms.items():
            for (w1, w2), k in H.delta_of_word(w).terms.items():
                s = chi_s(w1)
                if s:
                    out = out + (r1i * H.word(w2) * r1).scale(c * k * s)
        return out

    def tau_inv_right(a: Element) -> Element:
        out = A.zero()
        for w, c in a.terms.items():
            for (w1, w2), k in H.delta_of_word(w).terms.items():
                s = chi_s(w2)
                if s:
                    out = out + (r2i * H.word(w1) * r2).scale(c * k * s)
        return out

    for i, l in enumerate(A.letters):
        w = (i,)
        d = H.delta_of_word(w)
        eps = H.counit_of_word(w)
        conv_l = sum((c * _chi_word(chi_vals, w1, f) * chi_s(w2) for (w1, w2), c in d.terms.items()), f.zero)
        conv_r = sum((c * chi_s(w1) * _chi_word(chi_vals, w2, f) for (w1, w2), c in d.terms.items()), f.zero)
        diag.add("chi-inverse", l.name, conv_l - eps)
        diag.add("chi-inverse-right", l.name, conv_r - eps)
        a = H.word(w)
        ti = tau_inv(a)
        diag.add("tau-inverse", l.name, maps.apply_tau(ti) - a)
        diag.add("tau-inverse-left", l.name, tau_inv(maps.tau_word(w)) - a)
        diag.add("tau-inverse-forms", l.name, ti - tau_inv_right(a))
    diag.add("r1r2-commute", "-", r1 * r2 - r2 * r1)
    letters = range(len(A.letters))
    if H.is_cocommutative_on_generators():
        u, v = r1i * r2, r2i * r1
        for i in letters:
            g = H.word((i,))
            diag.add("central-r1^-1*r2", A.letters[i].name, u * g - g * u)
            diag.add("central-r2^-1*r1", A.letters[i].name, v * g - g * v)
    commutative = all(H.word((i,)) * H.word((j,)) == H.word((j,)) * H.word((i,)) for i in letters for j in letters)
    if commutative:
        for i in letters:
            d = H.delta_of_word((i,))
            lhs, rhs = A.zero(), A.zero()
            for (w1, w2), c in d.terms.items():
                lhs = lhs + H.word(w2).scale(c * _chi_word(chi_vals, w1, f))
                rhs = rhs + H.word(w1).scale(c * _chi_word(chi_vals, w2, f))
            diag.add("chi-central", A.letters[i].name, lhs - rhs)
    return diag
