"""Find and check isomorphisms between one-dimensional extensions.

Ha(eta) is isomorphic to Ha by rescaling z; H0, Ha and H1 are pairwise
non-isomorphic, and the solver says so.
"""

from hopfore import catalog, presfile
from hopfore.isowit import solve_witness_1dim, verify_witness


def main():
    ha = catalog.build_named("Ha").ghoe
    for eta in ("5", "-2/3"):
        h = catalog.build_named("Ha", eta=eta).ghoe
        w = solve_witness_1dim(h, ha)
        print(f"Ha({eta}) -> Ha: lambda = {w.lam}, verified = {verify_witness(h, ha, w).passed}")
    print(presfile.dump_witness(solve_witness_1dim(catalog.build_named("Ha", eta="5").ghoe, ha)))

    names = ("H0", "Ha", "H1")
    data = {n: catalog.build_named(n).ghoe for n in names}
    for a in names:
        for b in names:
            if a != b:
                got = solve_witness_1dim(data[a], data[b])
                print(f"{a} -> {b}: {'witness' if got else 'no witness'}"
                      + ("" if got else f" ({got.reason})"))


if __name__ == "__main__":
    main()
