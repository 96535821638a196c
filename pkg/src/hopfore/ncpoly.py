"""Noncommutative polynomials modulo an oriented rewriting system.

A :class:`Presentation` fixes an alphabet and a terminating set of rewrite
rules.  Words are tuples of letter indices; every invertible generator
``g`` contributes a second letter ``g^-1`` placed right after it.  An
:class:`Element` is a dict from normal words to nonzero coefficients and
a :class:`Tensor` is the same thing over tuples of words.

Words are ordered first by how many letters they contain from each
extension level (highest level first), then by length, then
lexicographically.  Generators of a base algebra sit at level 0 and each
Ore extension adds one level, so ``z*a -> a*z + a^9`` still decreases.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .scalars import GF, Field, RatFunc

_SCALARS = (int, Fraction, GF, RatFunc)


class UnknownGenerator(KeyError):
    pass


class NonTerminating(ValueError):
    """A rule whose right side is not smaller than its left side."""


class DegreeCapExceeded(RuntimeError):
    pass


class PresentationMismatch(ValueError):
    pass


class UnmappedGenerator(KeyError):
    pass


class NonInvertibleImage(ValueError):
    pass


@dataclass(frozen=True)
class Generator:
    name: str
    invertible: bool = False
    order: int = 0  # g^order = 1 when positive
    level: int = 0


@dataclass(frozen=True)
class Letter:
    name: str
    gen: int
    inverse: bool


@dataclass
class CheckEntry:
    """One line of a diagnostic: a named check, where it ran, its residual."""

    check: str
    generator: str
    residual: object = None
    passed: bool = True
    note: str = ""


class Diagnostic:
    """An ordered list of :class:`CheckEntry`; passes iff every entry does."""

    def __init__(self, entries: Iterable[CheckEntry] = ()):
        self.entries = list(entries)

    def add(self, check, generator, residual=None, passed=None, note=""):
        if passed is None:
            passed = _is_zero(residual)
        self.entries.append(CheckEntry(check, str(generator), residual, bool(passed), note))
        return passed

    def extend(self, other: "Diagnostic", prefix: str = ""):
        for e in other.entries:
            self.entries.append(
                CheckEntry(prefix + e.check, e.generator, e.residual, e.passed, e.note)
            )

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def failures(self):
        return [e for e in self.entries if not e.passed]

    def first_failure(self):
        return next((e for e in self.entries if not e.passed), None)

    def __bool__(self):
        return self.passed

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __repr__(self):
        verdict = "Pass" if self.passed else "Fail"
        return f"<Diagnostic {verdict}: {len(self.entries)} checks, {len(self.failures())} failed>"


def _is_zero(r) -> bool:
    if r is None:
        return True
    if isinstance(r, (Element, Tensor)):
        return r.is_zero()
    return not r


class Presentation:
    """Generators plus rewrite rules defining an algebra over ``field``.

    ``rules`` maps a left side (tuple of letter names) to a right side
    (mapping from tuples of letter names to coefficients).  Skew
    commutation rules ``u*v -> c*v*u`` are mirrored automatically for the
    inverse letters of ``u`` and ``v``; inverse cancellation and torsion
    rules are implicit.
    """

    def __init__(
        self,
        field: Field,
        generators: Iterable[Generator],
        rules: Mapping = (),
        *,
        degree_cap: int = 24,
        name: str = "",
        check_order: bool = True,
    ):
        self.field = field
        self.generators = tuple(generators)
        self.degree_cap = degree_cap
        self.name = name
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise ValueError("generator names must be unique")
        letters = []
        self.inverse_letter: list = []
        for gi, g in enumerate(self.generators):
            letters.append(Letter(g.name, gi, False))
            if g.invertible and not g.order:
                letters.append(Letter(g.name + "^-1", gi, True))
        self.letters = tuple(letters)
        self.index = {l.name: i for i, l in enumerate(letters)}
        self.gen_index = {g.name: i for i, g in enumerate(self.generators)}
        inv = [None] * len(letters)
        for i, l in enumerate(letters):
            if l.inverse:
                inv[i] = i - 1
                inv[i - 1] = i
        self.inverse_letter = inv
        self.level = tuple(self.generators[l.gen].level for l in letters)
        self.max_level = max(self.level, default=0)

        self.user_rules = {}
        for lhs, rhs in dict(rules).items():
            lw = self.word(lhs)
            if len(lw) < 2:
                raise ValueError(f"rule left side {lhs!r} must have length >= 2")
            if lw in self.user_rules:
                raise ValueError(f"duplicate rule for {lhs!r}")
            self.user_rules[lw] = self._terms(rhs)
        self.rules = dict(self.user_rules)
        one = field.one
        for i, j in enumerate(inv):
            if j is not None:
                self.rules.setdefault((i, j), {(): one})
        for gi, g in enumerate(self.generators):
            if g.order:
                self.rules.setdefault((self.index[g.name],) * g.order, {(): one})
        for lhs, rhs in list(self.user_rules.items()):
            self._mirror(lhs, rhs)
        self.lhs_lengths = sorted({len(l) for l in self.rules})
        if check_order:
            for lhs, rhs in self.rules.items():
                for w in rhs:
                    if self.order_key(w) >= self.order_key(lhs):
                        raise NonTerminating(
                            f"rule {self.word_str(lhs)} -> {self.word_str(w)} does not decrease"
                        )
        self._nf_cache: dict = {}

    # -- construction helpers --------------------------------------------
    def _mirror(self, lhs, rhs):
        if len(lhs) != 2 or len(rhs) != 1:
            return
        (w, c), = rhs.items()
        u, v = lhs
        if w != (v, u):
            return
        iu, iv = self.inverse_letter[u], self.inverse_letter[v]
        cinv = 1 / c
        cands = []
        if iu is not None:
            cands.append(((iu, v), cinv, (v, iu)))
        if iv is not None:
            cands.append(((u, iv), cinv, (iv, u)))
        if iu is not None and iv is not None:
            cands.append(((iu, iv), c, (iv, iu)))
        for l, k, r in cands:
            if l not in self.rules:
                self.rules[l] = {r: k}

    def word(self, names) -> tuple:
        """Letter indices for a sequence of letter names."""
        if isinstance(names, str):
            names = [n for n in names.replace("*", " ").split()]
        out = []
        for n in names:
            if isinstance(n, int):
                out.append(n)
                continue
            if n not in self.index:
                raise UnknownGenerator(n)
            out.append(self.index[n])
        return tuple(out)

    def _terms(self, rhs) -> dict:
        out = {}
        for w, c in dict(rhs).items():
            c = self.field(c)
            if c:
                w = self.word(w)
                out[w] = out.get(w, self.field.zero) + c
        return {w: c for w, c in out.items() if c}

    def order_key(self, w):
        if self.max_level == 0:
            return (len(w), w)
        counts = [0] * (self.max_level + 1)
        for i in w:
            counts[self.level[i]] += 1
        return (tuple(counts[:0:-1]), len(w), w)

    # -- normal forms ----------------------------------------------------
    def _nf(self, word):
        hit = self._nf_cache.get(word)
        if hit is not None:
            return hit
        if len(word) <= 1:
            res = {word: self.field.one}
        else:
            res = {}
            for m, c in self._nf(word[:-1]).items():
                for m2, c2 in self._nf_tail(m + word[-1:]).items():
                    res[m2] = res.get(m2, 0) + c * c2
            res = {m: c for m, c in res.items() if c}
        self._nf_cache[word] = res
        return res

    def _nf_tail(self, w):
        """Normal form of ``w`` whose proper prefix is already normal."""
        hit = self._nf_cache.get(w)
        if hit is not None:
            return hit
        if len(w) > self.degree_cap:
            raise DegreeCapExceeded(f"word of length {len(w)} exceeds cap {self.degree_cap}")
        res = None
        for L in self.lhs_lengths:
            if L > len(w):
                break
            rhs = self.rules.get(w[-L:])
            if rhs is not None:
                prefix = w[:-L]
                res = {}
                for r, c in rhs.items():
                    for m, c2 in self._nf_concat(prefix, r).items():
                        res[m] = res.get(m, 0) + c * c2
                res = {m: c for m, c in res.items() if c}
                break
        if res is None:
            res = {w: self.field.one}
        self._nf_cache[w] = res
        return res

    def _nf_concat(self, prefix, r):
        cur = {prefix: self.field.one}
        for letter in r:
            nxt = {}
            for m, c in cur.items():
                for m2, c2 in self._nf_tail(m + (letter,)).items():
                    nxt[m2] = nxt.get(m2, 0) + c * c2
            cur = {m: c for m, c in nxt.items() if c}
        return cur

    def normal_form(self, word) -> dict:
        """Normal form of a raw word as a dict of normal words."""
        return dict(self._nf(self.word(word)))

    def normalize_with(self, word, strategy: str = "leftmost") -> dict:
        """Uncached reduction always rewriting the left- or rightmost redex."""
        word = self.word(word)
        pending = {word: self.field.one}
        done = {}
        while pending:
            # rewriting only lowers the order, so taking the largest word
            # first means every word is reduced once with its full coefficient
            w = max(pending, key=self.order_key)
            c = pending.pop(w)
            hit = self._find_redex(w, strategy)
            if hit is None:
                done[w] = done.get(w, 0) + c
                continue
            pos, lhs = hit
            for r, k in self.rules[lhs].items():
                nw = w[:pos] + r + w[pos + len(lhs):]
                if len(nw) > self.degree_cap:
                    raise DegreeCapExceeded(f"word of length {len(nw)} exceeds cap")
                pending[nw] = pending.get(nw, 0) + c * k
                if not pending[nw]:
                    del pending[nw]
        return {w: c for w, c in done.items() if c}

    def _find_redex(self, w, strategy):
        positions = range(len(w)) if strategy == "leftmost" else range(len(w) - 1, -1, -1)
        for pos in positions:
            for L in self.lhs_lengths:
                if pos + L > len(w):
                    break
                if w[pos:pos + L] in self.rules:
                    return pos, w[pos:pos + L]
        return None

    def is_normal(self, w) -> bool:
        return self._find_redex(tuple(w), "leftmost") is None

    # -- elements --------------------------------------------------------
    def element(self, terms=None) -> "Element":
        """Element from a dict of raw words (names or indices) to scalars."""
        out = {}
        for w, c in (terms or {}).items():
            c = self.field(c)
            if not c:
                continue
            for m, k in self._nf(self.word(w)).items():
                out[m] = out.get(m, 0) + c * k
        return Element(self, {m: c for m, c in out.items() if c})

    def zero(self):
        return Element(self, {})

    def one(self):
        return self.scalar(1)

    def scalar(self, c):
        c = self.field(c)
        return Element(self, {(): c} if c else {})

    def gen(self, name: str) -> "Element":
        if name not in self.index:
            raise UnknownGenerator(name)
        return Element(self, {(self.index[name],): self.field.one})

    def __getitem__(self, name):
        return self.gen(name)

    def embed(self, u: "Element") -> "Element":
        """Carry an element of a sub-presentation into this one by letter name."""
        if u.pres is self:
            return u
        terms = {}
        for w, c in u.terms.items():
            try:
                terms[tuple(self.index[u.pres.letters[i].name] for i in w)] = c
            except KeyError as e:
                raise PresentationMismatch(f"letter {e} not in {self.name or 'target'}") from None
        return self.element(terms)

    def word_str(self, w) -> str:
        if not w:
            return "1"
        parts = []
        for letter, grp in itertools.groupby(w):
            n = len(list(grp))
            l = self.letters[letter]
            g = self.generators[l.gen].name
            if l.inverse:
                parts.append(f"{g}^-{n}")
            else:
                parts.append(g if n == 1 else f"{g}^{n}")
        return "*".join(parts)

    def monomials(self, max_len: int, letters=None):
        """All normal words of length <= max_len over the given letters."""
        pool = range(len(self.letters)) if letters is None else [self.word([l])[0] for l in letters]
        level = [()]
        out = [()]
        for _ in range(max_len):
            nxt = []
            for w in level:
                for l in pool:
                    nw = w + (l,)
                    if self.is_normal(nw):
                        nxt.append(nw)
            out.extend(nxt)
            level = nxt
        return out

    # -- confluence ------------------------------------------------------
    def critical_words(self):
        """Overlap and inclusion ambiguities between rule left sides."""
        lhss = sorted(self.rules, key=self.order_key)
        seen = set()
        for l1 in lhss:
            for l2 in lhss:
                for k in range(1, min(len(l1), len(l2))):
                    if l1[-k:] == l2[:k]:
                        w = l1 + l2[k:]
                        key = (w, 0, len(l1) - k)
                        if key not in seen:
                            seen.add(key)
                            yield w, (0, l1), (len(l1) - k, l2)
                if l1 != l2 and len(l2) < len(l1):
                    for pos in range(len(l1) - len(l2) + 1):
                        if l1[pos:pos + len(l2)] == l2:
                            yield l1, (0, l1), (pos, l2)

    def check_local_confluence(self) -> Diagnostic:
        diag = Diagnostic()
        for w, (p1, l1), (p2, l2) in self.critical_words():
            a = self._rewrite_at(w, p1, l1)
            b = self._rewrite_at(w, p2, l2)
            diff = a - b
            diag.add("confluence", self.word_str(w), diff, note=f"{a} | {b}")
        return diag

    def _rewrite_at(self, w, pos, lhs):
        terms = {}
        for r, c in self.rules[lhs].items():
            nw = w[:pos] + r + w[pos + len(lhs):]
            for m, k in self._nf(nw).items():
                terms[m] = terms.get(m, 0) + c * k
        return Element(self, {m: c for m, c in terms.items() if c})

    def rules_str(self):
        return [
            f"{self.word_str(l)} -> {Element(self, r)}"
            for l, r in sorted(self.rules.items(), key=lambda kv: self.order_key(kv[0]))
        ]

    def __repr__(self):
        gens = ", ".join(l.name for l in self.letters)
        return f"Presentation({self.name or '?'}: {gens} over {self.field})"


def _fmt_coeff_term(coeff, mono, field):
    """Sign and body for one term of a sum."""
    s = field.format(coeff)
    neg = False
    if s.startswith("-") and not ("+" in s[1:] or " - " in s[1:]):
        neg, s = True, s[1:]
    compound = (" + " in s) or (" - " in s) or ("/" in s and "(" in s)
    if mono == "1":
        body = f"({s})" if compound and neg else s
        return neg, body
    if s == "1":
        return neg, mono
    if compound:
        s = f"({s})"
    return neg, f"{s}*{mono}"


def _join_terms(parts):
    if not parts:
        return "0"
    neg, body = parts[0]
    out = ("-" if neg else "") + body
    for neg, body in parts[1:]:
        out += (" - " if neg else " + ") + body
    return out


class Element:
    """A normalized linear combination of words."""

    __slots__ = ("pres", "terms")
    __hash__ = None

    def __init__(self, pres: Presentation, terms: dict):
        self.pres = pres
        self.terms = terms

    def _coerce(self, o):
        if isinstance(o, Element):
            if o.pres is not self.pres:
                raise PresentationMismatch("elements of different presentations")
            return o
        if isinstance(o, _SCALARS):
            return self.pres.scalar(o)
        return NotImplemented

    def __add__(self, o):
        o = self._coerce(o)
        if o is NotImplemented:
            return o
        t = dict(self.terms)
        for m, c in o.terms.items():
            v = t.get(m)
            v = c if v is None else v + c
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return Element(self.pres, t)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.pres, {m: -c for m, c in self.terms.items()})

    def __sub__(self, o):
        o = self._coerce(o)
        return o if o is NotImplemented else self + (-o)

    def __rsub__(self, o):
        o = self._coerce(o)
        return o if o is NotImplemented else o + (-self)

    def scale(self, c):
        c = self.pres.field(c)
        if not c:
            return Element(self.pres, {})
        return Element(self.pres, {m: v * c for m, v in self.terms.items() if v * c})

    def __mul__(self, o):
        if isinstance(o, Element):
            if o.pres is not self.pres:
                raise PresentationMismatch("elements of different presentations")
            nf = self.pres._nf
            out = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in o.terms.items():
                    c = c1 * c2
                    for m, k in nf(m1 + m2).items():
                        out[m] = out.get(m, 0) + c * k
            return Element(self.pres, {m: c for m, c in out.items() if c})
        if isinstance(o, _SCALARS):
            return self.scale(o)
        return NotImplemented

    def __rmul__(self, o):
        if isinstance(o, _SCALARS):
            return self.scale(o)
        return NotImplemented

    def __truediv__(self, o):
        if isinstance(o, (Element, Tensor)):
            return NotImplemented
        return self.scale(1 / self.pres.field(o))

    def __pow__(self, n: int):
        base = self if n >= 0 else self.inverse()
        acc = self.pres.one()
        for _ in range(abs(n)):
            acc = acc * base
        return acc

    def inverse(self) -> "Element":
        """Inverse of a scalar times a word in invertible letters."""
        if len(self.terms) != 1:
            raise NonInvertibleImage(f"{self} is not a monomial")
        (w, c), = self.terms.items()
        pres = self.pres
        out = []
        for letter in reversed(w):
            j = pres.inverse_letter[letter]
            if j is not None:
                out.append(j)
                continue
            g = pres.generators[pres.letters[letter].gen]
            if g.order:
                out.extend([letter] * (g.order - 1))
                continue
            raise NonInvertibleImage(f"{pres.letters[letter].name} is not invertible")
        return pres.element({tuple(out): 1 / c})

    def is_invertible(self) -> bool:
        try:
            self.inverse()
            return True
        except NonInvertibleImage:
            return False

    def __eq__(self, o):
        if isinstance(o, Element):
            return self.pres is o.pres and self.terms == o.terms
        if isinstance(o, _SCALARS):
            return self.terms == self.pres.scalar(o).terms
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def scalar_value(self):
        """The coefficient if this is a multiple of 1, else None."""
        if not self.terms:
            return self.pres.field.zero
        if len(self.terms) == 1 and () in self.terms:
            return self.terms[()]
        return None

    def coeff(self, word) -> object:
        return self.terms.get(self.pres.word(word), self.pres.field.zero)

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: self.pres.order_key(kv[0]))

    def __str__(self):
        f = self.pres.field
        return _join_terms(
            [_fmt_coeff_term(c, self.pres.word_str(w), f) for w, c in self.sorted_terms()]
        )

    def __repr__(self):
        return f"Element({self})"


class Tensor:
    """An element of the ``arity``-fold tensor power of a presentation."""

    __slots__ = ("pres", "arity", "terms")
    __hash__ = None

    def __init__(self, pres: Presentation, arity: int, terms: dict):
        self.pres = pres
        self.arity = arity
        self.terms = terms

    @classmethod
    def pure(cls, *factors: Element) -> "Tensor":
        """The pure tensor ``factors[0] (x) factors[1] (x) ...``."""
        pres = factors[0].pres
        out = {}
        for combo in itertools.product(*[f.terms.items() for f in factors]):
            c = pres.field.one
            for _, k in combo:
                c = c * k
            key = tuple(w for w, _ in combo)
            out[key] = c
        for f in factors:
            if f.pres is not pres:
                raise PresentationMismatch("tensor factors from different presentations")
        return cls(pres, len(factors), out)

    @classmethod
    def zero(cls, pres, arity):
        return cls(pres, arity, {})

    def _check(self, o):
        if not isinstance(o, Tensor):
            raise TypeError(f"cannot combine tensor with {type(o).__name__}")
        if o.pres is not self.pres or o.arity != self.arity:
            raise PresentationMismatch("tensor shape or presentation differ")

    def __add__(self, o):
        if isinstance(o, int) and o == 0:
            return self
        self._check(o)
        t = dict(self.terms)
        for k, c in o.terms.items():
            v = t.get(k)
            v = c if v is None else v + c
            if v:
                t[k] = v
            else:
                t.pop(k, None)
        return Tensor(self.pres, self.arity, t)

    __radd__ = __add__

    def __neg__(self):
        return Tensor(self.pres, self.arity, {k: -c for k, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-o)

    def scale(self, c):
        c = self.pres.field(c)
        if not c:
            return Tensor(self.pres, self.arity, {})
        return Tensor(self.pres, self.arity, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, o):
        if isinstance(o, Tensor):
            self._check(o)
            nf = self.pres._nf
            out = {}
            for k1, c1 in self.terms.items():
                for k2, c2 in o.terms.items():
                    slots = [nf(a + b) for a, b in zip(k1, k2)]
                    c0 = c1 * c2
                    for combo in itertools.product(*[s.items() for s in slots]):
                        c = c0
                        for _, k in combo:
                            c = c * k
                        key = tuple(w for w, _ in combo)
                        out[key] = out.get(key, 0) + c
            return Tensor(self.pres, self.arity, {k: c for k, c in out.items() if c})
        if isinstance(o, Element):
            return NotImplemented
        return self.scale(o)

    def __rmul__(self, o):
        if isinstance(o, (Element, Tensor)):
            return NotImplemented
        return self.scale(o)

    def __eq__(self, o):
        if isinstance(o, Tensor):
            return self.pres is o.pres and self.arity == o.arity and self.terms == o.terms
        if isinstance(o, int) and o == 0:
            return not self.terms
        return NotImplemented

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def lift(self, f: Callable, slot: int) -> "Tensor":
        """Apply a linear map ``f`` (word -> Element or Tensor) in one slot."""
        out = {}
        for key, c in self.terms.items():
            img = f(key[slot])
            if isinstance(img, Element):
                items = [((w,), k) for w, k in img.terms.items()]
            elif isinstance(img, Tensor):
                items = list(img.terms.items())
            else:  # scalar: slot disappears
                items = [((), img)] if img else []
            for sub, k in items:
                nk = key[:slot] + sub + key[slot + 1:]
                out[nk] = out.get(nk, 0) + c * k
        arities = {len(k) for k in out}
        arity = arities.pop() if arities else self._lift_arity(f, slot)
        return Tensor(self.pres, arity, {k: c for k, c in out.items() if c})

    def _lift_arity(self, f, slot):
        probe = f(()) if self.terms else None
        if isinstance(probe, Tensor):
            return self.arity - 1 + probe.arity
        if isinstance(probe, Element):
            return self.arity
        return self.arity - 1

    def multiply_slots(self) -> Element:
        """The multiplication map applied across all slots."""
        out = self.pres.zero()
        for key, c in self.terms.items():
            w = tuple(itertools.chain.from_iterable(key))
            out = out + self.pres.element({w: c})
        return out

    def swap(self, i=0, j=1) -> "Tensor":
        out = {}
        for key, c in self.terms.items():
            k = list(key)
            k[i], k[j] = k[j], k[i]
            out[tuple(k)] = c
        return Tensor(self.pres, self.arity, out)

    def slot_element(self, key_filter) -> "Tensor":
        return Tensor(self.pres, self.arity, {k: c for k, c in self.terms.items() if key_filter(k)})

    def sorted_terms(self):
        ok = self.pres.order_key
        return sorted(self.terms.items(), key=lambda kv: tuple(ok(w) for w in kv[0]))

    def __str__(self):
        f = self.pres.field
        parts = []
        for key, c in self.sorted_terms():
            words = [self.pres.word_str(w) for w in key]
            neg, head = _fmt_coeff_term(c, words[0], f)
            parts.append((neg, " (x) ".join([head] + words[1:])))
        return _join_terms(parts)

    def __repr__(self):
        return f"Tensor({self})"


def apply_hom(
    images: Mapping[str, Element],
    u: Element,
    antihom: bool = False,
    target: Presentation | None = None,
) -> Element:
    """Extend ``images`` (generator name -> Element) multiplicatively.

    Inverse letters map to inverses of the images of their generators.
    With ``antihom`` the extension reverses products.
    """
    src = u.pres
    if target is None:
        target = next(iter(images.values())).pres if images else src
    letter_img: dict = {}

    def img(letter):
        hit = letter_img.get(letter)
        if hit is not None:
            return hit
        l = src.letters[letter]
        if l.name in images:
            v = images[l.name]
        elif l.inverse:
            base = src.generators[l.gen].name
            if base not in images:
                raise UnmappedGenerator(base)
            v = images[base].inverse()
        else:
            raise UnmappedGenerator(l.name)
        if not isinstance(v, Element):
            v = target.scalar(v)
        letter_img[letter] = v
        return v

    cache: dict = {(): target.one()}

    def word_img(w):
        hit = cache.get(w)
        if hit is not None:
            return hit
        if antihom:
            v = img(w[-1]) * word_img(w[:-1])
        else:
            v = word_img(w[:-1]) * img(w[-1])
        cache[w] = v
        return v

    out = target.zero()
    for w, c in u.terms.items():
        out = out + word_img(w).scale(c)
    return out


def specialize(u, target: Presentation, value) -> Element | Tensor:
    """Coefficientwise evaluation q -> value into a presentation over Q."""
    src = u.pres
    same = [target.index[l.name] for l in src.letters]

    def conv(w):
        return tuple(same[i] for i in w)

    if isinstance(u, Element):
        return target.element(
            {conv(w): src.field.specialize(c, value) for w, c in u.terms.items()}
        )
    out = {}
    for key, c in u.terms.items():
        out[tuple(conv(w) for w in key)] = target.field(src.field.specialize(c, value))
    return Tensor(target, u.arity, {k: c for k, c in out.items() if c})
