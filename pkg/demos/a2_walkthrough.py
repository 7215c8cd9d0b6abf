"""Walk through the Hall algebra of the A2 quiver (1 --a--> 2).

Builds the catalog of indecomposables, multiplies basis elements, and shows
where each structure constant comes from: point counts over several primes,
one interpolating polynomial in q, and its value at q = 1.
"""

from importlib import resources

from hallcrest import (
    HallElement,
    IndecTable,
    IsoClass,
    bracket,
    chi_filtration,
    parse_quiver,
    product,
)

text = resources.files("hallcrest.quivers").joinpath("a2.qv").read_text()
print("quiver file:")
print(text)

table = IndecTable(parse_quiver(text), dim_bound=(2, 2))
print("indecomposables up to dimension (2, 2):")
for label, dim in table.indecomposable_dims():
    print(f"  {label}  dim {dim}")
print()

u = lambda s: HallElement.basis(IsoClass.parse(s))

# The product u_A * u_B sums over classes X with a submodule of class A
# and quotient of class B, weighted by the Euler characteristic of that
# variety of submodules.
for a, b in [("S2", "S1"), ("S1", "S2"), ("M11", "S1")]:
    print(f"u[{a}] * u[{b}] = {product(u(a), u(b), table)!r}")
print()

print(f"[u[S2], u[S1]] = {bracket(u('S2'), u('S1'), table)!r}")
print()

# Provenance of the coefficient of u[M11] in u[S2] * u[S1]: the flag variety
# has exactly one point over every field, so the polynomial is constant.
res = chi_filtration((IsoClass.of("S2"), IsoClass.of("S1")),
                     IsoClass.of("M11"), table)
print("chi for the M11 coefficient:")
print(f"  samples      {list(res.samples)}")
print(f"  polynomial   {res.polynomial}")
print(f"  at q = 1     {res.value}")
