"""
Curve classes, walls and Gopakumar-Vafa invariants
==================================================

Arithmetic on N_1(X) + Z: twisted slopes, wall decompositions, the generic
perturbation bound, flops, and GV extraction from a symmetric Laurent
polynomial.
"""

from fractions import Fraction

from qbps.arith import LaurentPoly
from qbps.gamma import (
    EffectiveCone,
    GammaClass,
    KahlerParam,
    elliptic_phi,
    flop_transform,
    generic_delta,
    gv_extract,
    wall_membership,
)

cone = EffectiveCone(((1, 0), (0, 1)))
v = GammaClass((1, 1), 0)

sigma = KahlerParam((Fraction(0), Fraction(0)), (Fraction(1), Fraction(1)))
print("walls at B=0, w=(1,1):", [(str(a), str(b)) for a, b in wall_membership(sigma, v, cone, 3)])
sigma = KahlerParam((Fraction(0), Fraction(1, 2)), (Fraction(1), Fraction(2)))
print("walls at B=(0,1/2), w=(1,2):", wall_membership(sigma, v, cone, 3))

print("delta0 =", generic_delta((1, 1), (1, 0), (1, 2), cone))

M = [[-1, 0], [1, 1]]
w = flop_transform(M, GammaClass((1, 0), 5))
print("flop:", w, "->", flop_transform(M, w))

for e in (0, 1, 2):
    print(f"e={e}: Phi = {elliptic_phi(e)}, (n0, n1) = {tuple(gv_extract(elliptic_phi(e)))}")
print("GV of y^-2 + 4y^-1 + 7 + 4y + y^2:", gv_extract(LaurentPoly.parse("y^-2+4*y^-1+7+4*y+y^2")))
