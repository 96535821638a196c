"""Hopf structures on presentations.

A :class:`HopfStructure` stores the coproduct, counit and antipode on
generators and extends them to arbitrary elements, multiplicatively for
the coproduct and counit and antimultiplicatively for the antipode.
"""

from __future__ import annotations

import os
from typing import Mapping

from .ncpoly import Diagnostic, Element, Presentation, Tensor
from .scalars import AffineSolutionSet, solve_linear


DEFAULT_DEGREE_BOUND = 12


def default_degree_bound() -> int:
    return int(os.environ.get("HOPFORE_DEGREE_BOUND", DEFAULT_DEGREE_BOUND))


class InvariantViolation(ValueError):
    pass


class NotGrouplike(ValueError):
    pass


class DegreeBoundExceeded(ValueError):
    pass


class HopfStructure:
    """Coproduct, counit and antipode given on generators.

    Values on inverse letters are derived: every invertible generator must
    be group-like, so ``Δ(g^-1) = g^-1 ⊗ g^-1``, ``ε(g^-1) = 1`` and
    ``S(g^-1) = S(g)^-1``.
    """

    def __init__(
        self,
        pres: Presentation,
        delta: Mapping[str, Tensor],
        counit: Mapping[str, object],
        antipode: Mapping[str, Element],
    ):
        self.pres = pres
        f = pres.field
        self.delta = dict(delta)
        self.counit = {k: f(v) for k, v in counit.items()}
        self.antipode = dict(antipode)
        n = len(pres.letters)
        self._d = [None] * n
        self._e = [None] * n
        self._s = [None] * n
        for i, l in enumerate(pres.letters):
            if l.inverse:
                continue
            for table, what in ((self.delta, "delta"), (self.counit, "counit"), (self.antipode, "antipode")):
                if l.name not in table:
                    raise InvariantViolation(f"{what} missing for generator {l.name}")
            self._d[i] = self.delta[l.name]
            self._e[i] = self.counit[l.name]
            self._s[i] = self.antipode[l.name]
        for i, l in enumerate(pres.letters):
            g = pres.generators[l.gen]
            if not g.invertible or l.inverse:
                continue
            gi = pres.gen(l.name)
            if self._d[i] != Tensor.pure(gi, gi) or self._e[i] != f.one:
                raise InvariantViolation(f"invertible generator {l.name} must be group-like")
            j = pres.inverse_letter[i]
            if j is not None:
                ginv = Element(pres, {(j,): f.one})
                self._d[j] = Tensor.pure(ginv, ginv)
                self._e[j] = f.one
                self._s[j] = self._s[i].inverse()
        self._dcache: dict = {(): Tensor.pure(pres.one(), pres.one())}
        self._scache: dict = {(): pres.one()}

    # -- extensions ------------------------------------------------------
    def _delta_word(self, w):
        hit = self._dcache.get(w)
        if hit is None:
            hit = self._delta_word(w[:-1]) * self._d[w[-1]]
            self._dcache[w] = hit
        return hit

    def _antipode_word(self, w):
        hit = self._scache.get(w)
        if hit is None:
            hit = self._s[w[-1]] * self._antipode_word(w[:-1])
            self._scache[w] = hit
        return hit

    def _counit_word(self, w):
        c = self.pres.field.one
        for l in w:
            c = c * self._e[l]
            if not c:
                break
        return c

    def extend_delta(self, u: Element) -> Tensor:
        out = Tensor.zero(self.pres, 2)
        for w, c in u.terms.items():
            out = out + self._delta_word(w).scale(c)
        return out

    def extend_counit(self, u: Element):
        f = self.pres.field
        acc = f.zero
        for w, c in u.terms.items():
            acc = acc + c * self._counit_word(w)
        return acc

    def extend_antipode(self, u: Element) -> Element:
        out = self.pres.zero()
        for w, c in u.terms.items():
            out = out + self._antipode_word(w).scale(c)
        return out

    # tensor-slot helpers, as linear maps on words
    def delta_of_word(self, w) -> Tensor:
        return self._delta_word(w)

    def counit_of_word(self, w):
        return self._counit_word(w)

    def antipode_of_word(self, w) -> Element:
        return self._antipode_word(w)

    def word(self, w) -> Element:
        return Element(self.pres, {w: self.pres.field.one})

    # -- predicates ------------------------------------------------------
    def is_grouplike(self, u: Element) -> bool:
        return not u.is_zero() and self.extend_delta(u) == Tensor.pure(u, u) and self.extend_counit(u) == 1

    def is_skew_primitive(self, u: Element, g: Element, h: Element) -> bool:
        """Whether ``Δu = u ⊗ g + h ⊗ u``."""
        for v in (g, h):
            if not self.is_grouplike(v):
                raise NotGrouplike(f"{v} is not group-like")
        return self.extend_delta(u) == Tensor.pure(u, g) + Tensor.pure(h, u)

    def is_character(self, chi: Mapping[str, object]) -> bool:
        return check_character(self.pres, chi).passed

    def adjoint(self, a: Element, b: Element) -> Element:
        """``Ad_a(b) = a_1 b S(a_2)``."""
        out = self.pres.zero()
        for (w1, w2), c in self.extend_delta(a).terms.items():
            out = out + (self.word(w1) * b * self._antipode_word(w2)).scale(c)
        return out

    def is_cocommutative_on_generators(self) -> bool:
        return all(self._d[i] == self._d[i].swap() for i in range(len(self.pres.letters)))

    def coproduct_twice(self, u: Element, side: str) -> Tensor:
        t = self.extend_delta(u)
        slot = 0 if side == "left" else 1
        return t.lift(self._delta_word, slot)


def check_character(pres: Presentation, chi: Mapping[str, object]) -> Diagnostic:
    """Check that generator values extend to an algebra map to the field."""
    diag = Diagnostic()
    images = {}
    for l in pres.letters:
        if l.inverse:
            continue
        images[l.name] = pres.scalar(chi[l.name])
    for lhs, rhs in pres.rules.items():
        try:
            lv = _raw_hom(images, pres, lhs)
            rv = pres.zero()
            for w, c in rhs.items():
                rv = rv + _raw_hom(images, pres, w).scale(c)
            diag.add("character", pres.word_str(lhs), lv - rv)
        except (ValueError, ZeroDivisionError) as e:  # zero on an invertible generator
            diag.add("character", pres.word_str(lhs), None, passed=False, note=str(e))
    return diag


def _raw_hom(images, pres, w, antihom=False, target=None):
    """Image of a raw (possibly non-normal) word under a letterwise map."""
    target = target or pres
    acc = target.one()
    seq = reversed(w) if antihom else w
    for l in seq:
        letter = pres.letters[l]
        if letter.name in images:
            v = images[letter.name]
        else:
            base = pres.generators[letter.gen].name
            v = images[base]
            if isinstance(v, Element):
                v = v.inverse()
            else:
                v = 1 / v
        if not isinstance(v, Element):
            v = target.scalar(v)
        acc = acc * v
    return acc


def raw_image(hom, pres, w, antihom=False):
    """Image of a raw word under a letter map given as a function."""
    acc = None
    for l in (reversed(w) if antihom else w):
        v = hom(l)
        acc = v if acc is None else acc * v
    return acc


def check_hopf_axioms(H: HopfStructure) -> Diagnostic:
    """Relations, coassociativity, counit and antipode checks.

    Each generator gets its coassociativity, counit and antipode entries in
    alphabet order; relation checks follow, then antipode checks on all
    products of two letters.
    """
    pres = H.pres
    f = pres.field
    diag = Diagnostic()
    for i, l in enumerate(pres.letters):
        w = (i,)
        g = H.word(w)
        d = H.delta_of_word(w)
        left = d.lift(H.delta_of_word, 0)
        right = d.lift(H.delta_of_word, 1)
        diag.add("coassociativity", l.name, left - right)
        diag.add("counit-left", l.name, _counit_side(H, d, 0) - g)
        diag.add("counit-right", l.name, _counit_side(H, d, 1) - g)
        eps = H.counit_of_word(w)
        diag.add("antipode-left", l.name, _convolve(H, d, left_s=True) - pres.scalar(eps))
        diag.add("antipode-right", l.name, _convolve(H, d, left_s=False) - pres.scalar(eps))

    for lhs, rhs in sorted(pres.rules.items(), key=lambda kv: pres.order_key(kv[0])):
        name = pres.word_str(lhs)
        rhs_el = Element(pres, rhs)
        # lhs is not normal, so multiply generator images explicitly
        dl = None
        for l in lhs:
            dl = H.delta_of_word((l,)) if dl is None else dl * H.delta_of_word((l,))
        dr = Tensor.zero(pres, 2)
        for w, c in rhs.items():
            dr = dr + H.delta_of_word(w).scale(c)
        diag.add("delta-relation", name, dl - dr)
        el = f.one
        for l in lhs:
            el = el * H.counit_of_word((l,))
        diag.add("counit-relation", name, el - H.extend_counit(rhs_el))
        sl = raw_image(lambda l: H.antipode_of_word((l,)), pres, lhs, antihom=True)
        sr = pres.zero()
        for w, c in rhs.items():
            sr = sr + H.antipode_of_word(w).scale(c)
        diag.add("antipode-relation", name, sl - sr)

    n = len(pres.letters)
    for i in range(n):
        for j in range(n):
            u = H.word((i,)) * H.word((j,))
            d = H.extend_delta(u)
            eps = H.extend_counit(u)
            label = f"{pres.letters[i].name}*{pres.letters[j].name}"
            diag.add("antipode-left", label, _convolve(H, d, left_s=True) - pres.scalar(eps))
            diag.add("antipode-right", label, _convolve(H, d, left_s=False) - pres.scalar(eps))
    return diag


def _counit_side(H, d: Tensor, slot: int) -> Element:
    out = H.pres.zero()
    for (w1, w2), c in d.terms.items():
        if slot == 0:
            k = H.counit_of_word(w1)
            if k:
                out = out + H.word(w2).scale(c * k)
        else:
            k = H.counit_of_word(w2)
            if k:
                out = out + H.word(w1).scale(c * k)
    return out


def _convolve(H, d: Tensor, left_s: bool) -> Element:
    out = H.pres.zero()
    for (w1, w2), c in d.terms.items():
        if left_s:
            out = out + (H.antipode_of_word(w1) * H.word(w2)).scale(c)
        else:
            out = out + (H.word(w1) * H.antipode_of_word(w2)).scale(c)
    return out


def solve_skew_primitive_equation(
    H: HopfStructure,
    rhs: Tensor,
    g: Element,
    h: Element,
    degree_bound: int | None = None,
    letters=None,
):
    """All ``c`` of degree <= bound with ``Δc = c ⊗ g + h ⊗ c + rhs``.

    Returns ``None`` when no such ``c`` exists, otherwise an
    :class:`AffineSolutionSet` whose vectors are :class:`Element` values.
    The system is solved purely linearly over the normal-word basis.
    """
    if degree_bound is None:
        degree_bound = default_degree_bound()
    pres = H.pres
    for v in (g, h):
        if not H.is_grouplike(v):
            raise NotGrouplike(f"{v} is not group-like")
    for key in rhs.terms:
        if any(len(w) > degree_bound for w in key):
            raise DegreeBoundExceeded(f"rhs has a factor beyond degree {degree_bound}")
    basis = pres.monomials(degree_bound, letters)
    cols = []
    for w in basis:
        m = H.word(w)
        cols.append(H.delta_of_word(w) - Tensor.pure(m, g) - Tensor.pure(h, m))
    rows = {}
    for k, col in enumerate(cols):
        for key in col.terms:
            rows.setdefault(key, len(rows))
    for key in rhs.terms:
        rows.setdefault(key, len(rows))
    zero = pres.field.zero
    matrix = [[zero] * len(basis) for _ in rows]
    vec = [zero] * len(rows)
    for k, col in enumerate(cols):
        for key, c in col.terms.items():
            matrix[rows[key]][k] = c
    for key, c in rhs.terms.items():
        vec[rows[key]] = c
    if not rows:
        matrix, vec = [[zero] * len(basis)], [zero]
    sol = solve_linear(matrix, vec, pres.field)
    if sol is None:
        return None

    def to_el(v):
        return Element(pres, {w: c for w, c in zip(basis, v) if c})

    return AffineSolutionSet(to_el(sol.particular), [to_el(v) for v in sol.kernel])
