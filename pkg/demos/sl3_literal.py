"""Why the literal quantum-sl3 data do not give a Hopf algebra.

Runs both routes on the literal data, over Q(q) and at q = 2, and shows
the single surviving term of the failing B2 check next to the hand value.
"""

from fractions import Fraction

from hopfore import catalog
from hopfore.ghoe import attach_and_verify, check_theorem_conditions
from hopfore.scalars import RatFunc


def main():
    for q in (None, 2):
        data = catalog.sl3_literal_data(q)
        _, diag = attach_and_verify(data)
        bad = diag.first_failure()
        label = "Q(q)" if q is None else f"q = {q}"
        print(f"[{label}] first failure: {bad.check} at {bad.generator}")
        print(f"  residual: {bad.residual}")
        q_ = RatFunc.gen() if q is None else Fraction(q)
        print(f"  hand value of the coefficient, 1 - q^-2: {1 - 1 / (q_ * q_)}")
        thm = check_theorem_conditions(data).first_failure()
        print(f"  theorem route: {thm.check} at {thm.generator}, residual {thm.residual}")
        print(f"  {len(diag.failures())} of {len(diag)} balance checks fail")


if __name__ == "__main__":
    main()
