"""Solve Δc = c⊗1 + 1⊗c + rhs in U(ka ⊕ kb) over small prime fields.

In char 3, -a⊗a is hit by a^2 (plus any p-power primitive); in char 2,
a⊗a is hit by nothing, because a^2 is already primitive.
"""

from hopfore import catalog
from hopfore.expr import parse_tensor
from hopfore.hopfstruct import solve_skew_primitive_equation
from hopfore.scalars import Field


def solve(p, rhs, bound):
    H = catalog.build_env(2, "nonabelian", Field.prime(p))
    one = H.pres.one()
    sol = solve_skew_primitive_equation(H, parse_tensor(rhs, H.pres), one, one, bound)
    if sol is None:
        print(f"F{p}, rhs {rhs}: no solution of degree <= {bound}")
    else:
        kernel = ", ".join(map(str, sol.kernel))
        print(f"F{p}, rhs {rhs}: c = {sol.particular} + span{{{kernel}}}")


def main():
    solve(3, "-a (x) a", 9)
    solve(3, "a (x) b + b (x) a", 9)
    solve(2, "a (x) a", 8)
    solve(2, "b (x) a^2", 8)


if __name__ == "__main__":
    main()
