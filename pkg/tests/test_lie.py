import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from homcr import linalg
from homcr.lie import (
    LieAlgebra4,
    LieAlgebraError,
    TypeTag,
    abelian_3_subalgebras_unique,
    classify_type,
    dumps_algebra,
    fingerprint,
    has_abelian_3_ideal,
    loads_algebra,
    template,
    type_vi,
    validate,
)

TAGS = ["I(1)", "I(0)", "I(-1)", "I(1/2)", "I(-1/3)", "II", "III(0)", "III(2)", "III(1/3)", "IV", "V", "VII", "VIII"]


def random_basis(rng):
    while True:
        p = [[Fraction(rng.randint(-2, 2)) for _ in range(4)] for _ in range(4)]
        if linalg.determinant(p):
            return p


# ---------------------------------------------------------------- validation
def test_abelian_is_valid():
    assert validate(LieAlgebra4()).ok


def test_type_viii_is_valid():
    alg = LieAlgebra4.from_brackets({(1, 2): {3: 1}, (1, 3): {2: -1}, (2, 3): {1: 1}})
    assert validate(alg).ok


def test_jacobi_violation():
    # [e1,e2]=e3, [e2,e3]=e1, [e1,e3]=e1: the Jacobi sum over (1,2,3) is e3
    alg = LieAlgebra4.from_brackets({(1, 2): {3: 1}, (2, 3): {1: 1}, (1, 3): {1: 1}})
    rep = validate(alg)
    assert not rep.ok and "(1,2,3)" in rep.violation
    with pytest.raises(LieAlgebraError):
        classify_type(alg)


def test_listed_constants_satisfy_jacobi():
    # [e1,e2]=e1, [e1,e3]=e2, [e2,e3]=e3 is in fact a Lie algebra
    alg = LieAlgebra4.from_brackets({(1, 2): {1: 1}, (1, 3): {2: 1}, (2, 3): {3: 1}})
    assert validate(alg).ok


# ---------------------------------------------------------------- fingerprints
def test_type_ib_fingerprint():
    fp = fingerprint(template(TypeTag("I", Fraction(-1))))
    assert (fp.dim_derived, fp.dim_second_derived, fp.solvable) == (3, 1, True)


def test_type_viii_killing():
    fp = fingerprint(template(TypeTag("VIII")))
    assert not fp.solvable
    assert fp.killing_signature == (0, 3, 1)


def test_abelian_fingerprint():
    fp = fingerprint(LieAlgebra4())
    assert fp.dim_derived == 0 and fp.has_abelian_3_ideal


def test_types_i_to_v_have_no_abelian_3_ideal():
    for t in ["I(1)", "I(0)", "I(-1)", "II", "III(0)", "III(1)", "IV", "V"]:
        assert not has_abelian_3_ideal(template(TypeTag.parse(t))), t


@pytest.mark.parametrize("text", TAGS)
def test_fingerprint_invariant_under_basis_change(text):
    rng = random.Random(text)
    alg = template(TypeTag.parse(text))
    fp = fingerprint(alg)
    for _ in range(20):
        other = alg.change_basis(random_basis(rng))
        assert validate(other).ok
        assert fingerprint(other) == fp
        assert classify_type(other).tag == alg_tag(text)


def alg_tag(text):
    return TypeTag.parse(text)


def test_distinct_types_have_distinct_fingerprints():
    fps = {}
    for t in TAGS:
        fps.setdefault(repr(fingerprint(template(TypeTag.parse(t)))), []).append(t)
    assert all(len(v) == 1 for v in fps.values()), fps


# ---------------------------------------------------------------- classification
@pytest.mark.parametrize("text", TAGS)
def test_templates_classify_to_themselves(text):
    assert classify_type(template(TypeTag.parse(text))).tag == TypeTag.parse(text)


def test_type_vi_from_matrix():
    alg = type_vi([[1, 0, 0], [0, 2, 0], [0, 0, 3]])
    assert classify_type(alg).tag == TypeTag("VI")
    assert abelian_3_subalgebras_unique(alg)


def test_tag_parsing():
    assert TypeTag.parse("I(1/2)") == TypeTag("I", Fraction(1, 2))
    assert str(TypeTag.parse("III(2)")) == "III(2)"
    with pytest.raises(LieAlgebraError):
        TypeTag.parse("IX")
    with pytest.raises(LieAlgebraError):
        TypeTag.parse("IV(1)")


# ---------------------------------------------------------------- text format
@pytest.mark.parametrize("text", TAGS)
def test_algebra_text_round_trip(text):
    alg = template(TypeTag.parse(text))
    s = dumps_algebra(alg, text)
    assert loads_algebra(s) == alg
    assert dumps_algebra(loads_algebra(s), text) == s


def test_algebra_text_rejects_duplicates():
    with pytest.raises(LieAlgebraError):
        loads_algebra("bracket.1.2: 0 0 1 0\nbracket.2.1: 0 0 -1 0\n")


# ---------------------------------------------------------------- properties
small = st.fractions(min_value=-2, max_value=2, max_denominator=3)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(TAGS), st.lists(small, min_size=16, max_size=16))
def test_change_basis_keeps_lie_algebra(text, entries):
    p = [entries[4 * i:4 * i + 4] for i in range(4)]
    if not linalg.determinant(p):
        p = [[Fraction(int(i == j)) + v for j, v in enumerate(row)] for i, row in enumerate(p)]
        if not linalg.determinant(p):
            return
    alg = template(TypeTag.parse(text)).change_basis(p)
    assert validate(alg).ok
    x, y = p[0], p[1]
    assert alg.bracket(x, y) == [-v for v in alg.bracket(y, x)]
