"""Build the Steane code states, check their stabilizers and the coset-mixture identity."""

import numpy as np

from conjcodes import catalog
from conjcodes import quantum_sim as qs

pair = catalog.steane()
cb = qs.css_basis(pair)
print(f"{len(cb.xs)} X syndromes x {len(cb.zs)} Z syndromes x {len(cb.vs)} messages "
      f"= {cb.n_blocks * cb.code_dim} states in a {cb.dim}-dimensional space")

u = cb.unitary
print("max deviation of U^dagger U from the identity:", np.abs(u.conj().T @ u - np.eye(cb.dim)).max())

x, z, v = cb.xs[3], cb.zs[5], cb.vs[1]
psi = cb.state(x, z, v)
support = np.flatnonzero(np.abs(psi) > 1e-12)
print("support of |phi_xzv> for x =", x, "z =", z, "v =", v)
for i in support:
    print(f"  |{np.binary_repr(i, 7)}>  {psi[i]:.3f}")

z_exp, x_exp = qs.stabilizer_check(pair, psi, x, z)
print("Z-type eigenphase exponents:", z_exp, " X-type:", x_exp)

rho = qs.sp_mixture(pair, x, v)
print("averaging over z gives a diagonal state:", np.allclose(rho, np.diag(np.diag(rho))),
      "with", np.count_nonzero(np.diag(rho).real > 1e-12), "equal weights")
