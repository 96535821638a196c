"""Isomorphisms between generalized Hopf-Ore extensions.

An isomorphism ``Ψ: H -> H'`` restricting to a Hopf isomorphism
``Φ: A -> A'`` is pinned down by a scalar ``λ``, a group-like ``r`` and an
element ``b`` of ``A'`` through ``Ψ(z) = λ r (z' + b)``.  Both extensions
are compared in normalized form (``x`` is ``(1, r2)``-primitive and ``y``
is ``(r1, 1)``-primitive), so data is passed through
:func:`~hopfore.ghoe.normalize_case` first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .ghoe import GhoeData, NonScalarResult, derive_character, normalize_case
from .hopfstruct import HopfStructure
from .ncpoly import Diagnostic, Element, Tensor, apply_hom
from .orext import OreData, OreMaps
from .scalars import solve_linear


class BadWitness(ValueError):
    pass


class PreconditionViolated(ValueError):
    pass


class UnsupportedBase(ValueError):
    pass


@dataclass
class IsoWitness:
    """``λ``, ``r``, ``b`` in ``A'`` and ``Φ`` with its inverse, on generators."""

    lam: object
    r: Element
    b: Element
    phi: Mapping[str, Element]
    phi_inv: Mapping[str, Element]
    notes: dict = field(default_factory=dict)


@dataclass
class NoWitness:
    reason: str

    def __bool__(self):
        return False


def identity_witness(A: HopfStructure, target: HopfStructure | None = None) -> IsoWitness:
    target = target or A
    phi = {g.name: target.pres.gen(g.name) for g in A.pres.generators}
    inv = {g.name: A.pres.gen(g.name) for g in target.pres.generators}
    return IsoWitness(A.pres.field.one, target.pres.one(), target.pres.zero(), phi, inv)


def _phi(images, u: Element, target) -> Element:
    return apply_hom(images, u, target=target)


def _phi_tensor(images, t: Tensor, target) -> Tensor:
    out = Tensor.zero(target, t.arity)
    src = t.pres
    for key, c in t.terms.items():
        parts = [_phi(images, Element(src, {w: src.field.one}), target) for w in key]
        out = out + Tensor.pure(*parts).scale(c)
    return out


def verify_witness(H: GhoeData, Hp: GhoeData, w: IsoWitness) -> Diagnostic:
    """Check that ``w`` defines a Hopf isomorphism of the two extensions."""
    A, Ap = H.A, Hp.A
    f = Ap.field
    lam = f(w.lam)
    if not lam:
        raise BadWitness("λ must be nonzero")
    if not Hp.hopf.is_grouplike(w.r):
        raise BadWitness(f"r = {w.r} is not group-like")
    for g in A.generators:
        if g.name not in w.phi:
            raise BadWitness(f"Φ is not given on {g.name}")
    for g in Ap.generators:
        if g.name not in w.phi_inv:
            raise BadWitness(f"Φ^-1 is not given on {g.name}")
    diag = Diagnostic()
    phi = {k: Ap.embed(v) if v.pres is not Ap else v for k, v in w.phi.items()}
    phi_inv = {k: A.embed(v) if v.pres is not A else v for k, v in w.phi_inv.items()}

    for g in A.generators:
        a = A.gen(g.name)
        back = _phi(phi_inv, _phi(phi, a, Ap), A)
        diag.add("phi-inverse", g.name, back - a)
    for g in Ap.generators:
        a = Ap.gen(g.name)
        diag.add("phi-inverse", g.name + "'", _phi(phi, _phi(phi_inv, a, A), Ap) - a)
    if not diag.passed:
        raise BadWitness("the supplied inverse does not invert Φ")
    for lhs, rhs in sorted(A.rules.items(), key=lambda kv: A.order_key(kv[0])):
        left = Ap.one()
        for l in lhs:
            left = left * _phi(phi, Element(A, {(l,): A.field.one}), Ap)
        diag.add("phi-relation", A.word_str(lhs), left - _phi(phi, Element(A, rhs), Ap))
    for g in A.generators:
        a = A.gen(g.name)
        pa = _phi(phi, a, Ap)
        diag.add("phi-delta", g.name, Hp.hopf.extend_delta(pa) - _phi_tensor(phi, H.hopf.delta[g.name], Ap))
        diag.add("phi-counit", g.name, Ap.scalar(Hp.hopf.extend_counit(pa) - f(H.hopf.counit[g.name])))
        diag.add("phi-antipode", g.name, Hp.hopf.extend_antipode(pa) - _phi(phi, H.hopf.antipode[g.name], Ap))

    n, np_ = normalize_case(H), normalize_case(Hp)
    r, ri = w.r, w.r.inverse()
    diag.add("(a)", "r1", _phi(phi, n.r1, Ap) - r * np_.r1)
    diag.add("(a)", "r2", _phi(phi, n.r2, Ap) - r * np_.r2)
    hb = Hp.hopf
    b = w.b
    rhs = (Tensor.pure(b, np_.r1) + Tensor.pure(np_.r2, b)
           + Tensor.pure(ri * _phi(phi, n.x, Ap), ri * _phi(phi, n.y, Ap)).scale(1 / lam)
           - Tensor.pure(np_.x, np_.y))
    diag.add("(b)", "b", hb.extend_delta(b) - rhs)
    diag.add("(b)", "counit", Ap.scalar(hb.extend_counit(b)))

    try:
        chi, chip = derive_character(n), derive_character(np_)
    except NonScalarResult as e:
        diag.add("(c)", "-", passed=False, note=str(e))
    else:
        for g in A.generators:
            val = _chi_value(Ap, chip, _phi(phi, A.gen(g.name), Ap))
            diag.add("(c)", g.name, Ap.scalar(val - A.field(chi[g.name])))

    maps, mapsp = OreMaps(A, n.ore), OreMaps(Ap, np_.ore)
    for g in Ap.generators:
        ap = Ap.gen(g.name)
        pulled = _phi(phi_inv, ap, A)
        moved = (ri * _phi(phi, maps.apply_delta(pulled), Ap)).scale(1 / lam)
        inner = mapsp.apply_tau(ap) * b - b * ap
        diag.add("(d)", g.name, mapsp.apply_delta(ap) - moved - inner)
    return diag


def _chi_value(A, chi, u: Element):
    """χ extended multiplicatively to an element."""
    f = A.field
    vals = []
    for l in A.letters:
        v = f(chi[A.generators[l.gen].name])
        vals.append(1 / v if l.inverse else v)
    acc = f.zero
    for w, c in u.terms.items():
        k = c
        for i in w:
            k = k * vals[i]
        acc = acc + k
    return acc


def reverse_witness(H: GhoeData, Hp: GhoeData, w: IsoWitness) -> IsoWitness:
    """The witness of ``Ψ^-1``: ``λ^-1``, ``Φ^-1(r)^-1``, ``-λΦ^-1(rb)``, ``Φ^-1``."""
    A, Ap = H.A, Hp.A
    f = Ap.field
    lam = f(w.lam)
    rr = _phi(w.phi_inv, w.r, A)
    b = _phi(w.phi_inv, w.r * w.b, A).scale(-lam)
    return IsoWitness(1 / lam, rr.inverse(), b, dict(w.phi_inv), dict(w.phi))


# ---------------------------------------------------------------------------
# Standard constructions


def _with(data: GhoeData, **kw) -> GhoeData:
    return data.replace(chi=None, **kw)


def _delta_plus(data: GhoeData, extra) -> OreData:
    A = data.A
    delta = {g.name: data.ore.delta[g.name] + extra(A.gen(g.name)) for g in A.generators}
    return OreData(dict(data.ore.tau), delta, data.ore.z)


def cor112_transform(data: GhoeData, which: str, *params, phi=None, phi_inv=None, target=None):
    """Apply one of the standard isomorphisms; returns ``(new_data, witness)``.

    ``which`` is ``"a"`` (α, β), ``"b"`` (α), ``"c"`` (β), ``"d"`` (α) or
    ``"e"`` (Φ given by ``phi``/``phi_inv`` into the Hopf algebra ``target``).
    """
    data = normalize_case(data)
    A = data.A
    f = A.field
    H = data.hopf
    maps = OreMaps(A, data.ore)
    one = A.one()
    if which == "a":
        al, be = (f(p) for p in params)
        if not al or not be:
            raise PreconditionViolated("α and β must be nonzero")
        ore = OreData(dict(data.ore.tau), {k: v.scale(al * be) for k, v in data.ore.delta.items()}, data.ore.z)
        out = _with(data, ore=ore, x=data.x.scale(al), y=data.y.scale(be))
        w = identity_witness(H)
        w.lam = 1 / (al * be)
        return out, w
    if which in ("b", "c"):
        k = f(params[0])
        r = data.r2 if which == "b" else data.r1
        side = data.x if which == "b" else data.y
        if side != (one - r).scale(k):
            raise PreconditionViolated(f"{'x' if which == 'b' else 'y'} is not {k}*(1 - {r})")
        other = data.y if which == "b" else data.x
        ore = _delta_plus(data, lambda a: (maps.apply_tau(a) * other - other * a).scale(k))
        out = _with(data, ore=ore, x=A.zero(), y=A.zero())
        w = identity_witness(H)
        w.b = other.scale(k)
        return out, w
    if which == "d":
        if f.characteristic() == 2:
            raise PreconditionViolated("needs characteristic other than 2")
        al = f(params[0])
        if data.r1 != one or data.r2 != one:
            raise PreconditionViolated("needs r1 = r2 = 1")
        if data.y != data.x.scale(al):
            raise PreconditionViolated(f"y is not {al}*x")
        x2 = data.x * data.x
        half = al / f(2)
        ore = _delta_plus(data, lambda a: (maps.apply_tau(a) * x2 - x2 * a).scale(half))
        out = _with(data, ore=ore, x=A.zero(), y=A.zero())
        w = identity_witness(H)
        w.b = x2.scale(half)
        return out, w
    if which == "e":
        if phi is None or phi_inv is None:
            raise PreconditionViolated("item (e) needs Φ and its inverse")
        target = target or H
        Ap = target.pres
        phi = {k: v if isinstance(v, Element) else Ap.scalar(v) for k, v in phi.items()}
        tau, delta = {}, {}
        for g in Ap.generators:
            pulled = _phi(phi_inv, Ap.gen(g.name), A)
            tau[g.name] = _phi(phi, maps.apply_tau(pulled), Ap)
            delta[g.name] = _phi(phi, maps.apply_delta(pulled), Ap)
        out = GhoeData(target, OreData(tau, delta, data.ore.z),
                       _phi(phi, data.r1, Ap), _phi(phi, data.r2, Ap),
                       _phi(phi, data.x, Ap), _phi(phi, data.y, Ap), name=data.name)
        w = IsoWitness(f.one, Ap.one(), Ap.zero(), dict(phi), dict(phi_inv))
        return out, w
    raise PreconditionViolated(f"unknown item {which!r}")


# ---------------------------------------------------------------------------
# Solving in the 1-dimensional case


def _single_primitive(data: GhoeData):
    A = data.A
    if len(A.generators) != 1 or A.rules or A.generators[0].invertible:
        raise UnsupportedBase("solver needs U(ka) on one primitive generator")
    a = A.gen(A.generators[0].name)
    if not data.hopf.is_skew_primitive(a, A.one(), A.one()):
        raise UnsupportedBase("the generator must be primitive")
    return A.generators[0].name


def _int_root(n: int, m: int):
    if n < 0:
        return None
    lo, hi = 0, 1
    while hi ** m <= n:
        hi *= 2
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid ** m <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo if lo ** m == n else None


def _rational_roots(c, m):
    """Rational α with α^m = c."""
    c = Fraction(c)
    if c == 0:
        return []
    num, den = _int_root(abs(c.numerator), m), _int_root(c.denominator, m)
    if num is None or den is None:
        return []
    r = Fraction(num, den)
    if m % 2:
        return [r if c > 0 else -r]
    return [r, -r] if c > 0 else []


def _alpha_candidates(f, chi, chip, d, dp):
    """Scalars α worth trying for Φ(a) = αa, in deterministic order."""
    if f.kind == "Fp":
        return [f(k) for k in range(1, f.p)]
    if chip or chi:
        if not chip or not chi:
            return []
        return [chi / chip]
    support = sorted(set(d) & set(dp))
    if len(support) < 2:
        return [f.one]
    (j, k) = support[0], support[1]
    c = (dp[k] * d[j]) / (d[k] * dp[j])
    return [f(r) for r in _rational_roots(c, k - j)]


def solve_witness_1dim(H: GhoeData, Hp: GhoeData, degree_bound: int | None = None):
    """Find ``(λ, 1, b, a ↦ αa)`` relating two extensions of ``U(ka)``.

    For each candidate ``α`` the conditions are linear in ``λ^-1`` and the
    coefficients of ``b``, so they are solved exactly; ``α`` ranges over
    ``F_p^×`` in characteristic ``p`` and is forced (or canonically ``1``)
    over ``Q``.
    """
    name = _single_primitive(H)
    namep = _single_primitive(Hp)
    n, np_ = normalize_case(H), normalize_case(Hp)
    A, Ap = n.A, np_.A
    f = Ap.field
    if A.field != f:
        raise UnsupportedBase("both extensions must share a field")
    chi = f(derive_character(n)[name])
    chip = f(derive_character(np_)[namep])
    if degree_bound is None:
        degree_bound = f.p ** 2 if f.kind == "Fp" else 2
    a, ap = A.gen(name), Ap.gen(namep)
    da, dpa = n.ore.delta[name], np_.ore.delta[namep]
    d = {len(w): c for w, c in da.terms.items()}
    dp = {len(w): c for w, c in dpa.terms.items()}
    cands = _alpha_candidates(f, chi, chip, d, dp)
    if not cands:
        return NoWitness("χ'Φ = χ has no solution with Φ(a) = αa, α != 0")
    mapsp = OreMaps(Ap, np_.ore)
    hb = Hp.hopf
    tau_a = mapsp.apply_tau(ap)
    powers = [ap ** k for k in range(degree_bound + 1)]
    one = Ap.one()
    reasons = []
    for al in cands:
        if al * chip != chi:
            reasons.append(f"α = {al}: χ' Φ != χ")
            continue
        phi_to = {name: ap.scale(al)}
        # unknowns: μ = λ^-1, then b_0 .. b_N
        px = _phi(phi_to, n.x, Ap)
        py = _phi(phi_to, n.y, Ap)
        b_cols = [hb.extend_delta(m) - Tensor.pure(m, np_.r1) - Tensor.pure(np_.r2, m) for m in powers]
        mu_col_b = Tensor.pure(px, py)
        target_b = Tensor.pure(np_.x, np_.y)
        mu_col_d = _phi(phi_to, da, Ap).scale(1 / al)
        d_cols = [tau_a * m - m * ap for m in powers]
        target_d = dpa
        rows_b, rows_d = {}, {}
        for col in b_cols + [mu_col_b, target_b]:
            for key in col.terms:
                rows_b.setdefault(key, len(rows_b))
        for col in d_cols + [mu_col_d, target_d]:
            for key in col.terms:
                rows_d.setdefault(key, len(rows_d))
        matrix, rhs = [], []
        for key in rows_b:
            matrix.append([mu_col_b.terms.get(key, f.zero)] + [c.terms.get(key, f.zero) for c in b_cols])
            rhs.append(target_b.terms.get(key, f.zero))
        for key in rows_d:
            matrix.append([mu_col_d.terms.get(key, f.zero)] + [c.terms.get(key, f.zero) for c in d_cols])
            rhs.append(target_d.terms.get(key, f.zero))
        matrix.append([f.zero] + [hb.extend_counit(m) for m in powers])
        rhs.append(f.zero)
        sol = solve_linear(matrix, rhs, f)
        if sol is None:
            reasons.append(f"α = {al}: linear conditions inconsistent")
            continue
        vec = list(sol.particular)
        if not vec[0]:
            lift = next((k for k in sol.kernel if k[0]), None)
            if lift is None:
                reasons.append(f"α = {al}: forces λ^-1 = 0")
                continue
            vec = [u + v for u, v in zip(vec, lift)]
        mu = vec[0]
        b = Ap.zero()
        for c, m in zip(vec[1:], powers):
            b = b + m.scale(c)
        inv = {namep: A.gen(name).scale(1 / al)}
        return IsoWitness(1 / mu, one, b, phi_to, inv, notes={"alpha": al})
    return NoWitness("; ".join(reasons))
