"""
A tour of the catalog
=====================

Every surface is checked for homogeneity (four tangent fields of real rank
four) and total non-degeneracy.
"""

from homcr import families, total_nondegeneracy, verify_homogeneity
from homcr.surfaces import basis_algebra
from homcr.lie import classify_type

for fam in families():
    spec = fam.instance()
    if not spec.fields:
        # 1.3 is a family described in words, with no equations to check
        print(f"{spec.label():28s} listed only")
        continue
    rep = verify_homogeneity(spec, 8)
    line = f"{spec.label():28s} homogeneous={rep.passed!s:5s} {total_nondegeneracy(spec)}"
    if "degenerate" not in fam.tags:
        line += f"  type {classify_type(basis_algebra(spec)).tag}"
    print(line)

# a failing check shows where the residual lives
spec = families()[3].instance()
from dataclasses import replace
bad = replace(spec, fields=spec.fields[:3] + (("z^2", "0", "0"),))
for check in verify_homogeneity(bad, 8).checks:
    if not check.passed:
        print("failed:", check.name, check.detail)
