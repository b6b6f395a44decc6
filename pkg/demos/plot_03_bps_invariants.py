"""
BPS invariants of symmetric quivers
===================================

The normalized stack series factors as Exp(P_vir * Omega); inverting it
gives one Laurent polynomial per dimension vector.
"""

from qbps import bps_trivial, bps_xi, euler_specialize, invariance_check
from qbps.quiver import jordan_quiver, loop_quiver, qbar_quiver
from qbps.stability import StabilityXi

# the Jordan quiver has a single BPS state
print("Jordan:", {m: str(p) for m, p in bps_trivial(jordan_quiver(), 5).entries.items()})

# g-loop quivers: Omega_1 = (-v)^g, and higher terms are polynomials of one sign
t = bps_trivial(loop_quiver(2), 4)
for m, p in t.entries.items():
    print("2-loop", m, p)
print("Euler characteristics:", euler_specialize(t))

# computing with a stability condition slice by slice gives the same table
Q = qbar_quiver()
xis = [StabilityXi.of((-1, 1), (0, 1)), StabilityXi.of((0, 1), (-1, 1)), StabilityXi.of((0, 1), (0, 1))]
print("Omega^xi(1,1) =", bps_xi(Q, xis[0], 3)[(1, 1)])
print("invariant under xi:", invariance_check(Q, xis, 3).ok)
