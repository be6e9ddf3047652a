from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from homcr.catalog import family
from homcr.fields import (
    CR_UNIT,
    FieldError,
    HoloVectorField,
    evaluate_at,
    lie_bracket,
    nondegeneracy_rank,
    rank_over_C,
    rank_over_R,
    structure_constants_of,
    tangency_check,
)
from homcr.lie import TypeTag, template
from homcr.series import GaussianRational, TruncatedSeries
from homcr.surfaces import compile

i = GaussianRational(0, 1)


def field(*texts, **params):
    return HoloVectorField.from_exprs(texts, params)


def test_translations_commute():
    assert lie_bracket(field("0", "1", "0"), field("0", "0", "1")) == field("0", "0", "0")


def test_heisenberg_bracket():
    X1 = field("0", "1", "0")
    X2 = field("0", "0", "1")
    X3 = field("1", "w3", "0")
    assert lie_bracket(X2, X3) == X1


def test_type_ii_bracket():
    # basis before the simplifying change: X2 = d/dw3
    X2 = field("0", "0", "1")
    X3 = field("1", "w3", "0")
    X4 = field("z", "2*w2 + z^2/2", "z + w3")
    assert lie_bracket(X3, X4) == X2 + X3


def test_evaluation():
    assert evaluate_at(field("1", "w3", "0"), (0, 0, i)) == (1, i, 0)
    assert evaluate_at(field("0", "1", "0"), (3, i, 2)) == (0, 1, 0)
    X4 = field("i - gamma", "w2", "w3", gamma=Fraction(0))
    assert evaluate_at(X4, (0, 0, i)) == (i, 0, i)


def test_ranks():
    vals = [(1, 0, 0), (i, 0, 0)]
    assert rank_over_R(vals) == 2 and rank_over_C(vals) == 1
    assert rank_over_C([(0, 1, 0), (0, 0, 1), (1, i, 0)]) == 3


def test_type_ia_values_have_real_rank_four():
    spec = family("3.1").instance({"gamma": 0})
    comp = compile(spec, 6)
    assert rank_over_R([evaluate_at(X) for X in comp.fields]) == 4


# ---------------------------------------------------------------- tangency
def test_cubic_tangency():
    comp = compile(family("2.1").instance(), 10)
    assert tangency_check(field("1", "0", "0"), comp).tangent
    assert tangency_check(field("z", "2*w2", "3*w3"), comp).tangent


def test_non_tangent_field_reports_residual():
    comp = compile(family("3.7").instance({"delta": 0}), 10)
    X = HoloVectorField.from_exprs(("1", "1", "0"), {}, comp.spec.base_complex)
    res = tangency_check(X, comp)
    assert not res.tangent
    # the v3 residual starts with -e^x, i.e. -1 - x - ...
    r = res.residuals[1]
    assert r[(0, 0, 0, 0)] == -1 and r[(1, 0, 0, 0)] == -1


def test_cubic_with_quadratic_field_fails():
    comp = compile(family("2.1").instance(), 10)
    assert not tangency_check(field("z^2", "0", "0"), comp).tangent


# ---------------------------------------------------------------- structure constants
def test_type_ia_constants():
    spec = family("3.1").instance({"gamma": 0})
    fields = [HoloVectorField.from_exprs(f, spec.params) for f in spec.fields]
    assert structure_constants_of(fields) == template(TypeTag("I", Fraction(0)))


def test_translations_plus_euler_is_abelian_ideal():
    alg = structure_constants_of([field("1", "0", "0"), field("0", "1", "0"), field("0", "0", "1"),
                                  field("z", "w2", "w3")])
    assert all(not any(alg.c[a][b]) for a in range(3) for b in range(3))


def test_not_closed():
    with pytest.raises(FieldError, match="not closed"):
        structure_constants_of([field("1", "0", "0"), field("0", "1", "0"), field("0", "0", "1"),
                                field("z^2", "0", "0")])


# ---------------------------------------------------------------- non-degeneracy
def test_nondegeneracy_rank():
    cubic = compile(family("2.1").instance(), 6)
    plane = compile(family("1.1").instance(), 6)
    assert nondegeneracy_rank(cubic.F, cubic.G) == 4
    assert nondegeneracy_rank(plane.F, plane.G) < 4


# ---------------------------------------------------------------- properties
EXPS = [(a, b, c) for a in range(3) for b in range(2) for c in range(2) if a + b + c <= 2]
coef = st.builds(GaussianRational, st.integers(-2, 2), st.integers(-2, 2))
poly = st.dictionaries(st.sampled_from(EXPS), coef, max_size=3).map(lambda d: TruncatedSeries(CR_UNIT, d))
vfield = st.tuples(poly, poly, poly).map(lambda t: HoloVectorField(*t))


@settings(max_examples=100, deadline=None)
@given(vfield, vfield, vfield)
def test_bracket_antisymmetry_and_jacobi(X, Y, Z):
    assert lie_bracket(X, Y) == lie_bracket(Y, X).scale(-1)
    jac = (lie_bracket(X, lie_bracket(Y, Z)) + lie_bracket(Y, lie_bracket(Z, X))
           + lie_bracket(Z, lie_bracket(X, Y)))
    assert all(c.is_zero() for c in jac.coeffs)
