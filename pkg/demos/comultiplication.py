"""Comultiplication on the A2 Hall algebra.

delta(u_M) enumerates the ways M splits as a direct sum of two classes.
Two independent routes compute it: the splitting enumeration, and a
point-count oracle over extension varieties.  The demo also checks the
algebra-homomorphism property on one product by hand.
"""

from importlib import resources

from hallcrest import HallElement, IndecTable, IsoClass, comult, parse_quiver, product

text = resources.files("hallcrest.quivers").joinpath("a2.qv").read_text()
table = IndecTable(parse_quiver(text), dim_bound=(2, 2))

u = lambda s: HallElement.basis(IsoClass.parse(s))

for s in ["M11", "S1+S2", "2*S1"]:
    by_split = comult(u(s), table)
    by_count = comult(u(s), table, mode="oracle")
    print(f"delta(u[{s}]) = {by_split!r}")
    print(f"  oracle agrees: {by_split == by_count}")
print()

# homomorphism: delta(u_a * u_b) should equal delta(u_a) * delta(u_b),
# multiplied factorwise in the tensor square
lhs = comult(product(u("S2"), u("S1"), table), table)
print(f"delta(u[S2] * u[S1]) = {lhs!r}")

rhs: dict = {}
for (a1, b1), c1 in comult(u("S2"), table).coeffs.items():
    for (a2, b2), c2 in comult(u("S1"), table).coeffs.items():
        left = product(HallElement.basis(a1), HallElement.basis(a2), table)
        right = product(HallElement.basis(b1), HallElement.basis(b2), table)
        for x, cx in left.coeffs.items():
            for y, cy in right.coeffs.items():
                rhs[(x, y)] = rhs.get((x, y), 0) + c1 * c2 * cx * cy
rhs = {k: v for k, v in rhs.items() if v}
print(f"factorwise product matches: {rhs == lhs.coeffs}")
