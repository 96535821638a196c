"""Exact coefficient fields: the rationals, prime fields and Q(q).

Elements of Q are plain :class:`fractions.Fraction` values.  Elements of
F_p are :class:`GF` residues and elements of Q(q) are :class:`RatFunc`
fractions of polynomials with a monic denominator.  A :class:`Field`
bundles the arithmetic needed by the rest of the package (coercion,
zero tests, printing, specialization) so callers never branch on kind.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence


class FieldMismatch(TypeError):
    """Operands live in different coefficient fields."""


class DivisionByZero(ZeroDivisionError):
    """Division by the zero element of a field."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


# ---------------------------------------------------------------------------
# Prime field residues


class GF:
    """A residue class modulo a prime ``p``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _other(self, o):
        if isinstance(o, GF):
            if o.p != self.p:
                raise FieldMismatch(f"F_{self.p} vs F_{o.p}")
            return o.v
        if isinstance(o, int):
            return o % self.p
        if isinstance(o, Fraction):
            if o.denominator % self.p == 0:
                raise DivisionByZero(f"{o} has no image in F_{self.p}")
            return o.numerator * pow(o.denominator, -1, self.p) % self.p
        return NotImplemented

    def __add__(self, o):
        w = self._other(o)
        return NotImplemented if w is NotImplemented else GF(self.v + w, self.p)

    __radd__ = __add__

    def __sub__(self, o):
        w = self._other(o)
        return NotImplemented if w is NotImplemented else GF(self.v - w, self.p)

    def __rsub__(self, o):
        w = self._other(o)
        return NotImplemented if w is NotImplemented else GF(w - self.v, self.p)

    def __mul__(self, o):
        w = self._other(o)
        return NotImplemented if w is NotImplemented else GF(self.v * w, self.p)

    __rmul__ = __mul__

    def __truediv__(self, o):
        w = self._other(o)
        if w is NotImplemented:
            return w
        if w == 0:
            raise DivisionByZero(f"division by zero in F_{self.p}")
        return GF(self.v * pow(w, -1, self.p), self.p)

    def __rtruediv__(self, o):
        w = self._other(o)
        if w is NotImplemented:
            return w
        return GF(w, self.p) / self

    def __neg__(self):
        return GF(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if n < 0:
            if self.v == 0:
                raise DivisionByZero(f"division by zero in F_{self.p}")
            return GF(pow(self.v, n, self.p), self.p)
        return GF(pow(self.v, n, self.p), self.p)

    def __eq__(self, o):
        if isinstance(o, GF):
            return self.p == o.p and self.v == o.v
        if isinstance(o, (int, Fraction)):
            try:
                return self.v == self._other(o)
            except DivisionByZero:
                return False
        return NotImplemented

    def __hash__(self):
        return hash(("GF", self.p, self.v))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"GF({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


# ---------------------------------------------------------------------------
# Dense univariate polynomials over Q as tuples, lowest degree first


def _trim(c: list) -> tuple:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def _pneg(a):
    return tuple(-c for c in a)


def _psub(a, b):
    return _padd(a, _pneg(b))


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _pscale(a, c):
    return _trim([x * c for x in a]) if c else ()


def _pdivmod(a, b):
    if not b:
        raise DivisionByZero("polynomial division by zero")
    r = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = r[k + len(b) - 1] / lead
        q[k] = c
        if c:
            for j, y in enumerate(b):
                r[k + j] -= c * y
    return _trim(q), _trim(r[: len(b) - 1])


def _monic(a):
    return _pscale(a, 1 / a[-1]) if a else ()


def _low(a):
    """Index of the lowest nonzero coefficient."""
    for i, c in enumerate(a):
        if c:
            return i
    return 0


def _pgcd(a, b):
    # monomial fast path: gcd(q^k, f) = q^min(k, ord f)
    for m, other in ((a, b), (b, a)):
        if m and sum(1 for c in m if c) == 1:
            k = min(len(m) - 1, _low(other)) if other else len(m) - 1
            return (Fraction(0),) * k + (Fraction(1),)
    while b:
        a, b = b, _pdivmod(a, b)[1]
    return _monic(a)


def _peval(a, x):
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _pstr(a, var):
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        parts.append((sign, body))
    if not parts:
        return "0"
    head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    return head + "".join(f" {s} {b}" for s, b in parts[1:])


_ONE = (Fraction(1),)


class RatFunc:
    """An element of Q(var): reduced ``num/den`` with ``den`` monic."""

    __slots__ = ("num", "den", "var")

    def __init__(self, num=(), den=_ONE, var="q", *, _canonical=False):
        self.var = var
        if _canonical:
            self.num, self.den = num, den
            return
        num = _trim([Fraction(c) for c in num])
        den = _trim([Fraction(c) for c in den])
        if not den:
            raise DivisionByZero("zero denominator")
        if not num:
            self.num, self.den = (), _ONE
            return
        g = _pgcd(num, den)
        if len(g) > 1:
            num = _pdivmod(num, g)[0]
            den = _pdivmod(den, g)[0]
        lead = den[-1]
        if lead != 1:
            num, den = _pscale(num, 1 / lead), _pscale(den, 1 / lead)
        self.num, self.den = num, den

    @classmethod
    def const(cls, c, var="q"):
        c = Fraction(c)
        return cls((c,) if c else (), _ONE, var, _canonical=True)

    @classmethod
    def gen(cls, var="q"):
        return cls((Fraction(0), Fraction(1)), _ONE, var, _canonical=True)

    def _other(self, o):
        if isinstance(o, RatFunc):
            if o.var != self.var:
                raise FieldMismatch(f"Q({self.var}) vs Q({o.var})")
            return o
        if isinstance(o, (int, Fraction)):
            return RatFunc.const(o, self.var)
        if isinstance(o, GF):
            raise FieldMismatch("Q(q) vs prime field")
        return NotImplemented

    def __add__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RatFunc(_padd(self.num, o.num), self.den, self.var)
        return RatFunc(
            _padd(_pmul(self.num, o.den), _pmul(o.num, self.den)),
            _pmul(self.den, o.den),
            self.var,
        )

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(_pneg(self.num), self.den, self.var, _canonical=True)

    def __pos__(self):
        return self

    def __sub__(self, o):
        o = self._other(o)
        return o if o is NotImplemented else self + (-o)

    def __rsub__(self, o):
        o = self._other(o)
        return o if o is NotImplemented else o + (-self)

    def __mul__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return o
        if not self.num or not o.num:
            return RatFunc.const(0, self.var)
        return RatFunc(_pmul(self.num, o.num), _pmul(self.den, o.den), self.var)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise DivisionByZero("division by zero in Q(%s)" % self.var)
        return RatFunc(self.den, self.num, self.var)

    def __truediv__(self, o):
        o = self._other(o)
        return o if o is NotImplemented else self * o.inverse()

    def __rtruediv__(self, o):
        o = self._other(o)
        return o if o is NotImplemented else o * self.inverse()

    def __pow__(self, n: int):
        base = self if n >= 0 else self.inverse()
        acc = RatFunc.const(1, self.var)
        for _ in range(abs(n)):
            acc = acc * base
        return acc

    def is_const(self):
        return self.den == _ONE and len(self.num) <= 1

    def __eq__(self, o):
        if isinstance(o, RatFunc):
            return self.var == o.var and self.num == o.num and self.den == o.den
        if isinstance(o, (int, Fraction)):
            return self.is_const() and (self.num[0] if self.num else 0) == o
        return NotImplemented

    def __hash__(self):
        if self.is_const():
            return hash(self.num[0] if self.num else Fraction(0))
        return hash((self.var, self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def evaluate(self, x) -> Fraction:
        d = _peval(self.den, Fraction(x))
        if d == 0:
            raise DivisionByZero(f"denominator vanishes at {self.var} = {x}")
        return _peval(self.num, Fraction(x)) / d

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        n = _pstr(self.num, self.var)
        if self.den == _ONE:
            return n
        d = _pstr(self.den, self.var)
        if sum(1 for c in self.num if c) > 1:
            n = f"({n})"
        if sum(1 for c in self.den if c) > 1:
            d = f"({d})"
        return f"{n}/{d}"


# ---------------------------------------------------------------------------
# Field descriptors


@dataclass(frozen=True)
class Field:
    """A coefficient field.

    ``kind`` is ``"Q"``, ``"Fp"`` or ``"Qt"``.  For ``"Q"`` the optional
    ``q_value`` records a specialization of the quantum parameter, so the
    symbol ``var`` parses as that rational.
    """

    kind: str
    p: int = 0
    var: str = "q"
    q_value: Fraction | None = dc_field(default=None)

    def __post_init__(self):
        if self.kind not in ("Q", "Fp", "Qt"):
            raise ValueError(f"unknown field kind {self.kind!r}")
        if self.kind == "Fp" and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.q_value is not None:
            object.__setattr__(self, "q_value", Fraction(self.q_value))
            if self.q_value == 0:
                raise ValueError("specialization value must be nonzero")

    # constructors
    @classmethod
    def rationals(cls, q_value=None, var="q"):
        return cls("Q", var=var, q_value=q_value)

    @classmethod
    def prime(cls, p):
        return cls("Fp", p=p)

    @classmethod
    def ratfunc(cls, var="q"):
        return cls("Qt", var=var)

    @classmethod
    def parse(cls, text: str) -> "Field":
        """Parse ``Q``, ``Fp:<p>``, ``Qt`` or ``Qt:<var>``."""
        t = text.strip()
        if t == "Q":
            return cls.rationals()
        if t.startswith("Fp:"):
            return cls.prime(int(t[3:]))
        if t == "Qt":
            return cls.ratfunc()
        if t.startswith("Qt:"):
            return cls.ratfunc(t[3:])
        raise ValueError(f"unknown field {text!r}")

    def __str__(self):
        if self.kind == "Fp":
            return f"Fp:{self.p}"
        if self.kind == "Qt":
            return "Qt" if self.var == "q" else f"Qt:{self.var}"
        return "Q"

    def characteristic(self) -> int:
        return self.p if self.kind == "Fp" else 0

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, x):
        """Coerce an int, Fraction or element of this field."""
        if self.kind == "Q":
            if isinstance(x, (GF, RatFunc)):
                if isinstance(x, RatFunc) and x.is_const():
                    return x.num[0] if x.num else Fraction(0)
                raise FieldMismatch(f"{x!r} is not rational")
            return Fraction(x)
        if self.kind == "Fp":
            if isinstance(x, GF):
                if x.p != self.p:
                    raise FieldMismatch(f"F_{x.p} vs F_{self.p}")
                return x
            if isinstance(x, RatFunc):
                raise FieldMismatch("Q(q) element in a prime field")
            if isinstance(x, Fraction):
                return GF(0, self.p) + x
            return GF(int(x), self.p)
        if isinstance(x, RatFunc):
            if x.var != self.var:
                raise FieldMismatch(f"Q({x.var}) vs Q({self.var})")
            return x
        if isinstance(x, GF):
            raise FieldMismatch("prime field element in Q(q)")
        return RatFunc.const(x, self.var)

    def contains(self, x) -> bool:
        if self.kind == "Q":
            return isinstance(x, (int, Fraction))
        if self.kind == "Fp":
            return isinstance(x, GF) and x.p == self.p
        return isinstance(x, RatFunc) and x.var == self.var

    def symbol(self):
        """The quantum parameter as a field element."""
        if self.kind == "Qt":
            return RatFunc.gen(self.var)
        if self.q_value is not None:
            return self.q_value
        raise ValueError(f"field {self} has no symbol {self.var!r}")

    def elements(self):
        """All elements of a prime field, in residue order."""
        if self.kind != "Fp":
            raise ValueError("only prime fields are finite")
        return [GF(i, self.p) for i in range(self.p)]

    def format(self, c) -> str:
        return str(c)

    def specialize(self, c, value) -> Fraction:
        """Image of ``c`` under q -> value (identity on Q)."""
        if isinstance(c, RatFunc):
            return c.evaluate(value)
        return Fraction(c)


QQ = Field.rationals()


def arith(a, b, op: str, field: Field | None = None):
    """Exact ``a op b`` for op in add, sub, mul, div."""
    if field is not None:
        a, b = field(a), field(b)
    else:
        ka = type(a) if not isinstance(a, int) else Fraction
        kb = type(b) if not isinstance(b, int) else Fraction
        if ka is not kb and not (ka is Fraction or kb is Fraction):
            raise FieldMismatch(f"{a!r} and {b!r}")
        if isinstance(a, GF) and isinstance(b, GF) and a.p != b.p:
            raise FieldMismatch(f"F_{a.p} vs F_{b.p}")
        if isinstance(a, RatFunc) and isinstance(b, RatFunc) and a.var != b.var:
            raise FieldMismatch(f"Q({a.var}) vs Q({b.var})")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if not b:
            raise DivisionByZero("division by zero")
        return Fraction(a) / b if isinstance(a, int) and isinstance(b, int) else a / b
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# Linear algebra


@dataclass
class AffineSolutionSet:
    """``particular + span(kernel)``."""

    particular: list
    kernel: list

    @property
    def dimension(self) -> int:
        return len(self.kernel)


def rref(matrix: Sequence[Sequence], field: Field):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    rows = [[field(c) for c in row] for row in matrix]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for col in range(ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = 1 / rows[r][col] if field.kind != "Q" else Fraction(1) / rows[r][col]
        rows[r] = [c * inv for c in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def solve_linear(matrix: Sequence[Sequence], rhs: Sequence, field: Field):
    """Solve ``matrix @ v = rhs`` exactly.

    Returns ``None`` when the system is inconsistent, otherwise an
    :class:`AffineSolutionSet`.  ``matrix`` may have zero rows, in which
    case the column count is taken from ``ncols`` of an empty system and
    every vector solves it; pass at least one row to fix the width.
    """
    if len(matrix) != len(rhs):
        raise ValueError("matrix and rhs disagree on the number of rows")
    ncols = len(matrix[0]) if matrix else 0
    if any(len(row) != ncols for row in matrix):
        raise ValueError("ragged matrix")
    for row in matrix:
        for c in row:
            if not isinstance(c, int):
                field(c)
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    rows, pivots = rref(aug, field)
    if ncols in pivots:
        return None
    zero = field.zero
    particular = [zero] * ncols
    for i, col in enumerate(pivots):
        particular[col] = rows[i][ncols]
    free = [c for c in range(ncols) if c not in pivots]
    kernel = []
    for f in free:
        v = [zero] * ncols
        v[f] = field.one
        for i, col in enumerate(pivots):
            v[col] = -rows[i][f]
        kernel.append(v)
    return AffineSolutionSet(particular, kernel)


def matrix_rank(matrix, field: Field) -> int:
    if not matrix:
        return 0
    return len(rref(matrix, field)[1])
