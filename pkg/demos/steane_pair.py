"""The [7,4] Hamming code as both halves of a conjugate pair."""

import numpy as np

from conjcodes import catalog
from conjcodes.conjugate_pair import message_representatives, quotient_correctable
from conjcodes.linear_codes import all_vectors, weight

pair = catalog.steane()
print(pair)
print(pair.summary())

print("C1 generator (RREF):")
print(pair.c1.gen)
print("C2^perp generator:")
print(pair.c2_dual.gen)

table = pair.c1.syndrome_table()
print("coset leaders of C1, in syndrome order:")
for s, leader in enumerate(table.leaders):
    print(f"  syndrome {s}: {''.join(map(str, leader))}")

reps = message_representatives(pair)
print("message representatives of C1 / C2^perp:", ["".join(map(str, r)) for r in reps])

space = all_vectors(7, 2)
light = space[weight(space) <= 1]
heavy = space[weight(space) <= 2]
qc = pair.message_space
print("quotient code corrects all weight <= 1 patterns:", quotient_correctable(qc, light))
print("quotient code corrects all weight <= 2 patterns:", quotient_correctable(qc, heavy))

# a nonzero dual codeword is harmless: it does not change the message coset
w = pair.c2_dual.gen[0]
print("dual word", "".join(map(str, w)), "lies in the zero message coset:",
      bool(np.all(qc.canonical(w) == 0)))
