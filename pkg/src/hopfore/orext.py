"""Ore extensions ``A[z; τ, δ]``."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .ncpoly import (
    Diagnostic,
    Element,
    Generator,
    NonInvertibleImage,
    Presentation,
    UnmappedGenerator,
)


class NonInvertibleT(ValueError):
    """τ sends an invertible generator to a non-invertible element."""


class ConfluenceFailure(ValueError):
    def __init__(self, diagnostic: Diagnostic):
        self.diagnostic = diagnostic
        bad = diagnostic.first_failure()
        super().__init__(f"rewriting system not confluent at {bad.generator}: {bad.residual}")


@dataclass
class OreData:
    """Images of generators under τ and δ (elements of the base algebra)."""

    tau: Mapping[str, Element]
    delta: Mapping[str, Element]
    z: str = "z"
    extras: dict = field(default_factory=dict)


class OreMaps:
    """τ and its skew-Leibniz derivation δ extended to all of ``A``."""

    def __init__(self, A: Presentation, data: OreData):
        self.A = A
        n = len(A.letters)
        self.tau = [None] * n
        self.delta = [None] * n
        for i, l in enumerate(A.letters):
            if l.inverse:
                continue
            if l.name not in data.tau:
                raise UnmappedGenerator(f"tau.{l.name}")
            if l.name not in data.delta:
                raise UnmappedGenerator(f"delta_der.{l.name}")
            self.tau[i] = A.embed(data.tau[l.name])
            self.delta[i] = A.embed(data.delta[l.name])
        for i, l in enumerate(A.letters):
            if not l.inverse:
                continue
            g = i - 1
            try:
                tinv = self.tau[g].inverse()
            except NonInvertibleImage:
                raise NonInvertibleT(
                    f"tau({A.letters[g].name}) = {self.tau[g]} is not invertible"
                ) from None
            self.tau[i] = tinv
            ginv = Element(A, {(i,): A.field.one})
            self.delta[i] = -(tinv * self.delta[g] * ginv)
        for gi, g in enumerate(A.generators):
            if g.order:
                t = self.tau[A.index[g.name]]
                if not t.is_invertible():
                    raise NonInvertibleT(f"tau({g.name}) = {t} is not invertible")
        self._tcache = {(): A.one()}
        self._dcache = {(): A.zero()}

    def tau_word(self, w) -> Element:
        hit = self._tcache.get(w)
        if hit is None:
            hit = self.tau_word(w[:-1]) * self.tau[w[-1]]
            self._tcache[w] = hit
        return hit

    def delta_word(self, w) -> Element:
        """δ(uv) = τ(u)δ(v) + δ(u)v with ``v`` the last letter."""
        hit = self._dcache.get(w)
        if hit is None:
            u = w[:-1]
            last = Element(self.A, {w[-1:]: self.A.field.one})
            hit = self.tau_word(u) * self.delta[w[-1]] + self.delta_word(u) * last
            self._dcache[w] = hit
        return hit

    def apply_tau(self, u: Element) -> Element:
        out = self.A.zero()
        for w, c in u.terms.items():
            out = out + self.tau_word(w).scale(c)
        return out

    def apply_delta(self, u: Element) -> Element:
        out = self.A.zero()
        for w, c in u.terms.items():
            out = out + self.delta_word(w).scale(c)
        return out


def check_ore_data(A: Presentation, data: OreData) -> Diagnostic:
    """τ must respect every rule of ``A`` and δ must be a τ-derivation."""
    maps = OreMaps(A, data)
    diag = Diagnostic()
    for lhs, rhs in sorted(A.rules.items(), key=lambda kv: A.order_key(kv[0])):
        name = A.word_str(lhs)
        r = Element(A, rhs)
        diag.add("tau-relation", name, maps.tau_word(lhs) - maps.apply_tau(r))
    for lhs, rhs in sorted(A.rules.items(), key=lambda kv: A.order_key(kv[0])):
        name = A.word_str(lhs)
        r = Element(A, rhs)
        diag.add("delta-relation", name, maps.delta_word(lhs) - maps.apply_delta(r))
    return diag


def build_ore_extension(
    A: Presentation, data: OreData, z_name: str | None = None, check: bool = True
) -> Presentation:
    """``A[z; τ, δ]`` with ``z`` last and rules ``z*l -> τ(l)*z + δ(l)``.

    Base letters keep their indices, so base words are valid words of the
    extension.  Raises :class:`ConfluenceFailure` if the extended rules
    are not locally confluent.
    """
    z_name = z_name or data.z
    maps = OreMaps(A, data)
    level = A.max_level + 1
    gens = list(A.generators) + [Generator(z_name, level=level)]
    rules = dict(A.user_rules)
    zi = len(A.letters)
    for i in range(len(A.letters)):
        rhs = {}
        for w, c in maps.tau[i].terms.items():
            rhs[w + (zi,)] = c
        for w, c in maps.delta[i].terms.items():
            rhs[w] = rhs.get(w, 0) + c
        rules[(zi, i)] = {w: c for w, c in rhs.items() if c}
    H = Presentation(A.field, gens, rules, degree_cap=A.degree_cap, name=f"{A.name}[{z_name}]")
    H.base = A
    H.z_name = z_name
    H.ore_maps = maps
    if check:
        diag = H.check_local_confluence()
        if not diag.passed:
            raise ConfluenceFailure(diag)
    return H
