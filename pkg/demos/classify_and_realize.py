"""
From structure constants to vector fields and back
==================================================

Realize a type template as holomorphic fields in C^3, recompute their
brackets, and classify the result.
"""

from fractions import Fraction

from homcr import TypeTag, classify_type, realize_algebra
from homcr.realize import format_realization, self_check

for tag in [TypeTag("I", Fraction(1, 2)), TypeTag("II"), TypeTag("III", Fraction(2)), TypeTag("VII")]:
    r = realize_algebra(tag)
    ok, alg, rank = self_check(r)
    print(f"{tag}: closed={ok}, rank at base point {rank}, classified as {classify_type(alg).tag}")

# type VI takes a 3x3 matrix acting on the abelian ideal
C = [[Fraction(1), Fraction(0), Fraction(0)],
     [Fraction(0), Fraction(2), Fraction(0)],
     [Fraction(0), Fraction(0), Fraction(3)]]
r = realize_algebra("VI", C)
print(format_realization(r, C))
