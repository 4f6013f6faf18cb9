"""Arithmetic in GF(8) and the trace-dual basis that turns Tr(xy) into a dot product."""

import itertools

from conjcodes.finite_field import FieldParams, dual_basis, expand, trace

F = FieldParams(2, 3)
print(f"GF({F.q}) with modulus coefficients {F.modulus} (constant term first)")

alpha = F.generator
for e in range(8):
    print(f"  alpha^{e} = {(alpha ** e).coeffs}")

basis = F.polynomial_basis()
dual = dual_basis(basis)
print("polynomial basis :", [int(b) for b in basis.elements])
print("trace-dual basis :", [int(b) for b in dual.elements])

# Tr(b_i * d_j) is the identity matrix
for b in basis.elements:
    print("  ", [trace(b * d) for d in dual.elements])

mismatches = 0
for x, y in itertools.product(F.elements(), repeat=2):
    dot = sum(a * c for a, c in zip(expand(x, basis), expand(y, dual))) % 2
    mismatches += trace(x * y) != dot
print(f"pairs where Tr(xy) differs from the expanded dot product: {mismatches} of {F.q ** 2}")
