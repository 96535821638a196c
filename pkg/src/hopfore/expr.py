"""Parser for scalar, element and tensor expressions.

Grammar (``(x)`` separates tensor factors and binds looser than ``*``)::

    sum     := term (("+" | "-") term)*
    term    := tensor
    tensor  := product ("(x)" product)*
    product := unary (("*" | "/") unary)*
    unary   := "-" unary | power
    power   := atom ("^" ["-"] INT)?
    atom    := INT | NAME | "(" sum ")"

Names resolve to generators (``K1``), inverse letters are written with a
power (``K1^-1``) and the field's indeterminate resolves to a scalar.
Division is only allowed by scalars.
"""

from __future__ import annotations

import re

from .ncpoly import Element, Presentation, Tensor, UnknownGenerator, _SCALARS
from .scalars import Field


class ExprSyntaxError(SyntaxError):
    """A malformed expression; ``col`` is 1-based."""

    def __init__(self, msg, text="", col=0, line=None):
        self.col = col
        self.line = line
        where = f"line {line}, " if line else ""
        super().__init__(f"{msg} ({where}column {col}) in {text!r}")


_TOKEN = re.compile(
    r"\s*(?:(?P<tens>\(x\))|(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))"
)


def _tokenize(text):
    pos = 0
    toks = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExprSyntaxError("unexpected character", text, pos + 1)
        kind = m.lastgroup
        toks.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    toks.append(("end", "", len(text) + 1))
    return toks


class _Parser:
    def __init__(self, text, pres: Presentation | None, field: Field, line=None):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.pres = pres
        self.field = field
        self.line = line

    def err(self, msg, tok=None):
        tok = tok or self.toks[self.i]
        return ExprSyntaxError(msg, self.text, tok[2], self.line)

    def peek(self):
        return self.toks[self.i]

    def take(self, value=None):
        tok = self.toks[self.i]
        if value is not None and tok[1] != value:
            raise self.err(f"expected {value!r}")
        self.i += 1
        return tok

    def parse(self):
        if self.peek()[0] == "end":
            raise self.err("empty expression")
        v = self.sum()
        if self.peek()[0] != "end":
            raise self.err("unexpected token")
        return v

    def sum(self):
        v = self.tensor()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            tok = self.take()
            w = self.tensor()
            v = self.combine(v, w, tok)
        return v

    def combine(self, v, w, tok):
        try:
            if isinstance(v, Tensor) or isinstance(w, Tensor):
                v, w = self.as_tensor(v, tok), self.as_tensor(w, tok)
                if v.arity != w.arity:
                    raise self.err("tensor arity mismatch", tok)
            elif isinstance(v, Element) or isinstance(w, Element):
                v, w = self.as_element(v, tok), self.as_element(w, tok)
            return v + w if tok[1] == "+" else v - w
        except ExprSyntaxError:
            raise
        except (TypeError, ValueError) as e:
            raise self.err(str(e), tok) from None

    def as_element(self, v, tok):
        if isinstance(v, Element):
            return v
        if self.pres is None:
            raise self.err("generators not allowed here", tok)
        return self.pres.scalar(v)

    def as_tensor(self, v, tok):
        if isinstance(v, Tensor):
            return v
        if not v:
            return Tensor.zero(self.pres, 2)
        raise self.err("cannot add a tensor and a non-tensor", tok)

    def tensor(self):
        tok = self.peek()
        factors = [self.product()]
        while self.peek()[0] == "tens":
            self.take()
            if self.peek()[0] == "end" or self.peek()[1] in (")", "+"):
                raise self.err("missing tensor factor")
            factors.append(self.product())
        if len(factors) == 1:
            return factors[0]
        if self.pres is None:
            raise self.err("tensors need a presentation", tok)
        parts = []
        for f in factors:
            if isinstance(f, Tensor):
                raise self.err("nested tensor factor", tok)
            parts.append(self.as_element(f, tok))
        return Tensor.pure(*parts)

    def product(self):
        v = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            tok = self.take()
            w = self.unary()
            if tok[1] == "/":
                if not isinstance(w, _SCALARS):
                    raise self.err("division by a non-scalar", tok)
                if not w:
                    raise self.err("division by zero", tok)
                w = self.field(w)
                v = v * (1 / w) if not isinstance(v, _SCALARS) else self.field(v) / w
            else:
                v = self.mul(v, w, tok)
        return v

    def mul(self, v, w, tok):
        if isinstance(v, _SCALARS) and isinstance(w, _SCALARS):
            return self.field(v) * self.field(w)
        try:
            return v * w
        except TypeError as e:
            raise self.err(f"cannot multiply: {e}", tok) from None

    def unary(self):
        if self.peek()[0] == "op" and self.peek()[1] == "-":
            self.take()
            v = self.unary()
            return -v if not isinstance(v, int) else -self.field(v)
        if self.peek()[0] == "op" and self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        v = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            neg = False
            if self.peek()[1] == "-":
                self.take()
                neg = True
            tok = self.peek()
            if tok[0] != "int":
                raise self.err("expected integer exponent")
            self.take()
            n = int(tok[1]) * (-1 if neg else 1)
            if isinstance(v, Tensor):
                raise self.err("cannot raise a tensor to a power", tok)
            try:
                if isinstance(v, _SCALARS):
                    v = self.field(v)
                    if not v and n < 0:
                        raise self.err("division by zero", tok)
                    return v ** n
                return v ** n
            except ExprSyntaxError:
                raise
            except (ValueError, ZeroDivisionError) as e:
                raise self.err(str(e), tok) from None
        return v

    def atom(self):
        tok = self.peek()
        if tok[0] == "int":
            self.take()
            return self.field(int(tok[1]))
        if tok[0] == "name":
            self.take()
            name = tok[1]
            if self.pres is not None and name in self.pres.index:
                return self.pres.gen(name)
            if name == self.field.var and (self.field.kind == "Qt" or self.field.q_value is not None):
                return self.field.symbol()
            if self.pres is None:
                raise self.err(f"unknown symbol {name!r}", tok)
            raise UnknownGenerator(name)
        if tok[1] == "(":
            self.take()
            v = self.sum()
            if self.peek()[1] != ")":
                raise self.err("expected ')'")
            self.take()
            return v
        if tok[0] == "end":
            raise self.err("unexpected end of expression")
        raise self.err(f"unexpected token {tok[1]!r}")


def parse_scalar(text: str, field: Field, line=None):
    v = _Parser(str(text), None, field, line).parse()
    return field(v)


def parse_element(text: str, pres: Presentation, line=None) -> Element:
    v = _Parser(str(text), pres, pres.field, line).parse()
    if isinstance(v, Tensor):
        raise ExprSyntaxError("expected an element, got a tensor", text, 1, line)
    if isinstance(v, Element):
        return v
    return pres.scalar(v)


def parse_tensor(text: str, pres: Presentation, arity: int = 2, line=None) -> Tensor:
    v = _Parser(str(text), pres, pres.field, line).parse()
    if isinstance(v, Tensor):
        if v.arity != arity:
            raise ExprSyntaxError(f"expected a {arity}-fold tensor", text, 1, line)
        return v
    if v == 0 or (isinstance(v, Element) and v.is_zero()):
        return Tensor.zero(pres, arity)
    raise ExprSyntaxError("expected a tensor", text, 1, line)


def parse_word(text: str, pres: Presentation, line=None) -> tuple:
    """A bare product of letters such as ``E1*K1^-1*E2^2``."""
    out = []
    for part in str(text).split("*"):
        part = part.strip()
        m = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_]*)(?:\^(-?\d+))?", part)
        if not m:
            raise ExprSyntaxError("expected a word of generators", text, 1, line)
        name, exp = m.group(1), int(m.group(2) or 1)
        if name not in pres.index:
            raise UnknownGenerator(name)
        if exp < 0:
            inv = name + "^-1"
            if inv not in pres.index:
                raise ExprSyntaxError(f"{name} is not invertible", text, 1, line)
            out.extend([inv] * (-exp))
        else:
            out.extend([name] * exp)
    return pres.word(out)


def rule_terms(text: str, pres: Presentation) -> dict:
    """Parse a rule right side into raw word terms without normalizing.

    Works on a presentation with no rules of its own, so products are just
    concatenations.
    """
    e = parse_element(text, pres)
    return {w: c for w, c in e.terms.items()}

