"""
Super-potentials and their critical loci
========================================

The cubic potential A[B, C] on the three-loop quiver: its trace is gauge
invariant and its critical points are commuting triples.
"""

from itertools import product

import numpy as np

from qbps.potential import MatrixTuple, cyclic_derivative, eval_trW, gauge_transform, three_loop_quiver, w3_potential

Q = three_loop_quiver()
W = w3_potential()
for e, name in enumerate("ABC"):
    print(f"d/d{name} W =", cyclic_derivative(W, e))

u = MatrixTuple(Q, (2,), ([[0, 1], [0, 0]], [[0, 0], [1, 0]], [[1, 0], [0, 0]]))
print("tr W(u) =", eval_trW(W, u))
g = [[[1, 2], [0, 1]]]
print("after gauge transform:", eval_trW(W, gauge_transform(u, g)))

# count critical points among 2x2 matrices with entries in {0, 1}
pool = [np.array(x, dtype=object).reshape(2, 2) for x in product((0, 1), repeat=4)]
crit = 0
for a, b, c in product(pool, repeat=3):
    t = MatrixTuple(Q, (2,), (a, b, c))
    crit += all(not cyclic_derivative(W, e).evaluate(t).any() for e in range(3))
print(f"{crit} of {len(pool) ** 3} tuples are critical")
