"""Green's compatibility identities, in both forms the package verifies.

The degenerate form constrains the q = 1 structure constants directly and
holds even in the presence of relations.  The classical form lives at a
prime p and needs a relation-free (hereditary) presentation; its two sides
are exact rationals built from Hall numbers, automorphism counts, and
Hom/Ext dimensions.
"""

from importlib import resources

from hallcrest import (
    IndecTable,
    IsoClass,
    green_classical_suite,
    green_degenerate_suite,
    parse_quiver,
    verify_green_classical,
    verify_green_degenerate,
)


def load(name):
    return parse_quiver(
        resources.files("hallcrest.quivers").joinpath(f"{name}.qv").read_text()
    )


# -- degenerate form on the loop with square-zero relation

loop = IndecTable(load("loop2"), dim_bound=(3,))
S, M = IsoClass.of("S1"), IsoClass.of("M2")

check = verify_green_degenerate(loop, S, M, M, S)
print(f"degenerate Green, (a,b) = (S1, M2) against (a',b') = (M2, S1):"
      f" {'ok' if check.passed else check.details}")

report = green_degenerate_suite(loop, (3,))
print(f"degenerate suite on loop2 up to dim 3: "
      f"{sum(c.passed for c in report.checks)}/{len(report.checks)} quadruples ok")
print()

# -- classical form on A2 at a prime

a2 = IndecTable(load("a2"), dim_bound=(2, 2))
S1, S2 = IsoClass.of("S1"), IsoClass.of("S2")

for p in (2, 3):
    check = verify_green_classical(a2, S1, S2, S2, S1, p)
    print(f"classical Green at p={p}, quadruple (S1, S2, S2, S1): "
          f"{'ok' if check.passed else check.details}")

report = green_classical_suite(a2, (2, 2), 2)
print(f"classical suite on A2 up to dim (2,2) at p=2: "
      f"{sum(c.passed for c in report.checks)}/{len(report.checks)} quadruples ok")
