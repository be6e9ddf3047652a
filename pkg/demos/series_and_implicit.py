"""
Weighted series and the implicit solver
=======================================

Exact truncated power series with weighted cutoffs, then an implicit
equation solved order by order.
"""

from fractions import Fraction

from homcr.series import CR_CHART, TruncatedSeries, VariableTable, elementary_expand, implicit_solve

# z, w2, w3 carry weights 1, 2, 3; cutoff 6 keeps every term of weight <= 6
z = TruncatedSeries.variable(CR_CHART, "z", 6)
w2 = TruncatedSeries.variable(CR_CHART, "w2", 6)
print("(z + w2)^3 =", (z + w2) * (z + w2) * (z + w2))

# substitution composes: w2 -> w2 + z^2 drops nothing below the cutoff
print("after w2 -> w2 + z^2:", (z * w2).substitute({"w2": w2 + z * z}))

# elementary functions come as exact Taylor polynomials
print("exp(t) to order 5:", elementary_expand("exp", 0, 5))

# y - s + s^2/2 = 0, solved for s = s(y)
ys = VariableTable(("y", "s"))
eq = TruncatedSeries(ys, {(1, 0): Fraction(1), (0, 1): Fraction(-1), (0, 2): Fraction(1, 2)}, 6)
s = implicit_solve(eq, "s")
print("s(y) =", s)
