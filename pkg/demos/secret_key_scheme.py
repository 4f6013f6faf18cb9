"""Send secret bits with the Steane pair and see how much an eavesdropper could learn."""

import numpy as np

from conjcodes import catalog
from conjcodes import crypto_scheme as cs

pair = catalog.steane()
scheme = cs.SchemeInstance.build(pair, seed=7)
rng = scheme.rng()

for v in scheme.messages:
    x, sent = cs.encrypt(scheme, v, rng)
    print(f"message {''.join(map(str, v))} -> sent {''.join(map(str, sent))}"
          f" -> decrypted {''.join(map(str, cs.decrypt(scheme, x, sent)))}")

flip = np.zeros(7, dtype=np.int64)
flip[2] = 1
v = scheme.messages[1]
x, sent = cs.encrypt(scheme, v, rng)
print("one bit flipped in transit, still decrypts:", np.array_equal(cs.decrypt(scheme, x, (sent + flip) % 2), v))

print("\n  p     sim. error   exact Pr(xi out)   1-EF       leak bound (bits)")
for p in (0.01, 0.05, 0.1):
    rep = cs.simulate(scheme, cs.ChannelSpec.depolarizing(p), 50_000, seed=1)
    print(f"  {p:<5} {rep.error_rate:.5f}      {rep.p_xi_out:.5f}            "
          f"{rep.fidelity_gap:.5f}    {rep.leakage_bound_bits:.4f}")

b = cs.leakage_bound(0.99, 7, 1 / 7, 2)
print(f"\nbound at F = 0.99: {b.bits:.4f} bits (with -2t log t in place of h: {b.bits_loose:.4f})")
