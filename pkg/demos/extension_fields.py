"""A self-conjugate pair over GF(4) and its binary image."""

import warnings

import numpy as np

from conjcodes.conjugate_pair import expand_pair, make_pair
from conjcodes.finite_field import FieldParams
from conjcodes.linear_codes import LinearCode

F = FieldParams(2, 2)
rng = np.random.default_rng(3)

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    diag = LinearCode([[1, 1]], F)
    small = make_pair(diag, diag)
print(small, "summary:", small.summary())
print("expanded:", expand_pair(small), "C1 rows:", expand_pair(small).c1.gen.tolist())

# hexacode-like random pair: C2 contains C1^perp by construction
c1 = LinearCode(rng.integers(0, 4, size=(3, 4)), F)
c2 = LinearCode(np.concatenate([c1.dual().gen, rng.integers(0, 4, size=(1, 4))]), F)
pair = make_pair(c1, c2)
binary = expand_pair(pair)
print(pair, "->", binary)
print("dimensions over GF(4):", (pair.k1, pair.k2), " over GF(2):", (binary.k1, binary.k2))
