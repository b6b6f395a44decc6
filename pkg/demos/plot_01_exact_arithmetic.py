"""
Exact rational functions and plethystic series
==============================================

Everything in qbps is exact: Laurent polynomials and rational functions
over Q, truncated multivariate series, and the plethystic Exp/Log pair.
"""

from qbps import LaurentPoly, RationalFunction, TruncatedSeries, plethystic_exp, plethystic_log

q = LaurentPoly.monomial(1, var="q")

# rational functions cancel common factors on construction
r = RationalFunction(q * q - 1) / (q - 1)
print("(q^2 - 1)/(q - 1) =", r)

# the canonical denominator has constant term 1
print("1/(q - 1)       =", RationalFunction(1) / (q - 1))

# Euler's identity: Exp(x / (1 - v^-2)) = sum_m x^m / prod_j (1 - v^-2j)
v = LaurentPoly.monomial(1)
f = TruncatedSeries(1, 4, {(1,): RationalFunction(1) / (1 - v ** -2)})
E = plethystic_exp(f)
for m in range(5):
    print(f"x^{m}:", E[(m,)])

# Log undoes Exp exactly
print("Log(Exp(f)) == f:", plethystic_log(E) == f)
