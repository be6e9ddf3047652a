"""Exact machinery for 4-dimensional locally homogeneous CR-manifolds in C^3:
truncated series, holomorphic vector fields, 4-dimensional Lie algebra
types, the surface catalog with its verifiers, and the sphericity test."""

from .catalog import SurfaceSpec, all_samples, default_catalog, families, family
from .lie import LieAlgebra4, TypeTag, classify_type, template, validate
from .realize import realize_algebra
from .series import GaussianRational, TruncatedSeries, VariableTable
from .sphericity import is_spherical
from .surfaces import compile, total_nondegeneracy, verify_automorphism, verify_homogeneity

__all__ = [
    "GaussianRational", "LieAlgebra4", "SurfaceSpec", "TruncatedSeries", "TypeTag", "VariableTable",
    "all_samples", "classify_type", "compile", "default_catalog", "families", "family",
    "is_spherical", "realize_algebra", "template", "total_nondegeneracy", "validate",
    "verify_automorphism", "verify_homogeneity",
]
