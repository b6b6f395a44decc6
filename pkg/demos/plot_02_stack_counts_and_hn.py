"""
Stack counts and the Harder-Narasimhan recursion
================================================

Counting representations of a quiver over F_q, dividing by the gauge group,
and splitting the count into slope-semistable layers.
"""

from qbps import StabilityXi, hn_strata, semistable_count, stack_count
from qbps.quiver import gl_order, qbar_quiver
from qbps.oracle import brute_force_ss_count
from qbps.stability import stratum_contribution

# the two-vertex quiver with one arrow each way
Q = qbar_quiver()
xi = StabilityXi.of((-1, 1), (0, 1))
m = (1, 1)

print("stack count  :", stack_count(Q, m))
for s in hn_strata(xi, m):
    print("stratum", s, "->", stratum_contribution(Q, xi, s))

ss = semistable_count(Q, xi, m)
print("semistable   :", ss)

# the recursion agrees with brute force over small fields
for field in (2, 3, 4):
    predicted = (ss * gl_order(1) * gl_order(1)).evaluate(field)
    print(f"F_{field}: predicted {predicted}, counted {brute_force_ss_count(Q, xi, m, field)}")
