from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from sympy import GF as SymGF
from sympy import Matrix
from sympy.polys.matrices import DomainMatrix

from hopfore.scalars import GF, QQ, DivisionByZero, Field, FieldMismatch, RatFunc, matrix_rank, solve_linear

primes = st.sampled_from([2, 3, 5, 7, 13])
small = st.integers(-20, 20)
fracs = st.fractions(min_value=-10, max_value=10, max_denominator=6)


@given(primes, small, small)
def test_gf_matches_integer_arithmetic(p, a, b):
    x, y = GF(a, p), GF(b, p)
    assert (x + y).v == (a + b) % p
    assert (x - y).v == (a - b) % p
    assert (x * y).v == (a * b) % p
    if b % p:
        assert (x / y) * y == x


@given(primes, small)
def test_gf_fermat(p, a):
    assume(a % p)
    assert GF(a, p) ** (p - 1) == GF(1, p)


def test_gf_rejects_mixed_characteristic():
    with pytest.raises(FieldMismatch):
        GF(1, 2) + GF(1, 3)
    with pytest.raises(DivisionByZero):
        GF(1, 3) / GF(3, 3)


polys = st.lists(fracs, min_size=0, max_size=4)


def _ratfunc(num, den):
    if not any(den):
        den = [1]
    return RatFunc(num, den)


def _horner(coeffs, x):
    out = Fraction(0)
    for c in reversed(coeffs):
        out = out * x + c
    return out


@given(polys, polys, polys, polys, st.sampled_from([Fraction(2), Fraction(-3), Fraction(5, 7)]))
def test_ratfunc_evaluation_is_a_homomorphism(n1, d1, n2, d2, x):
    f, g = _ratfunc(n1, d1), _ratfunc(n2, d2)
    # oracle: evaluate numerators and denominators directly
    def ev(n, d):
        d = d if any(d) else [1]
        dv = _horner(d, x)
        assume(dv != 0)
        return _horner(n, x) / dv

    fv, gv = ev(n1, d1), ev(n2, d2)
    assert (f + g).evaluate(x) == fv + gv
    assert (f * g).evaluate(x) == fv * gv
    assert (f - g).evaluate(x) == fv - gv
    if g:
        assume(gv != 0)
        assert (f / g).evaluate(x) == fv / gv


@given(polys, polys)
def test_ratfunc_canonical(num, den):
    f = _ratfunc(num, den)
    assert f == RatFunc(f.num, f.den)
    if f:
        assert f * f.inverse() == RatFunc.const(1)
        assert f.den[-1] == 1


def test_field_parse_round_trip():
    for text in ("Q", "Fp:2", "Fp:7", "Qt"):
        assert str(Field.parse(text)) == text
    with pytest.raises(ValueError):
        Field.parse("Fp:4")
    with pytest.raises(ValueError):
        Field.parse("R")


matrices = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=1, max_size=4)
)


@given(matrices)
def test_rank_over_q_matches_sympy(m):
    assert matrix_rank(m, QQ) == Matrix(m).rank()


@given(matrices, st.sampled_from([2, 3, 5]))
def test_rank_over_fp_matches_sympy(m, p):
    K = SymGF(p)
    dm = DomainMatrix([[K(v) for v in row] for row in m], (len(m), len(m[0])), K)
    assert matrix_rank(m, Field.prime(p)) == dm.rank()


@given(matrices, st.data())
def test_solve_linear_solutions_are_exact(m, data):
    rhs = data.draw(st.lists(st.integers(-3, 3), min_size=len(m), max_size=len(m)))
    sol = solve_linear(m, rhs, QQ)
    consistent = Matrix(m).rank() == Matrix([row + [b] for row, b in zip(m, rhs)]).rank()
    assert (sol is not None) == consistent
    if sol is None:
        return
    for row, b in zip(m, rhs):
        assert sum(Fraction(a) * v for a, v in zip(row, sol.particular)) == b
        for k in sol.kernel:
            assert sum(Fraction(a) * v for a, v in zip(row, k)) == 0
    assert sol.dimension == len(m[0]) - Matrix(m).rank()
