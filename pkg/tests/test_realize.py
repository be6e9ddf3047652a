import random
from fractions import Fraction

import pytest

from homcr.fields import HoloVectorField, evaluate_at, rank_over_R, structure_constants_of
from homcr.lie import LieAlgebraError, TypeTag, classify_type, type_vi
from homcr.realize import format_realization, parse_realization, realize_algebra, realize_template, self_check


def test_type_i_q1_uses_the_type_i_fields():
    r = realize_algebra("I(1)")
    assert r.texts[:3] == [("0", "1", "0"), ("0", "0", "1"), ("1", "w3", "0")]
    ok, alg, rank = self_check(r)
    assert ok and rank == 4


def test_type_vi_linear_field():
    C = [[1, 0, 0], [0, 2, 0], [0, 0, 3]]
    r = realize_algebra("VI", C)
    assert r.texts[:3] == [("1", "0", "0"), ("0", "1", "0"), ("0", "0", "1")]
    assert structure_constants_of(r.fields) == type_vi(C)


def test_abelian_vi():
    r = realize_algebra("VI", [[0] * 3] * 3)
    assert r.point == (0, 0, 0)
    assert rank_over_R([evaluate_at(X) for X in r.fields]) == 4
    alg = structure_constants_of(r.fields)
    assert not alg.nonzero_brackets()


def test_out_of_range_q():
    with pytest.raises(LieAlgebraError):
        realize_algebra("I(2)")
    with pytest.raises(LieAlgebraError):
        realize_algebra("III(-1)")


def _samples():
    rng = random.Random(7)
    out = []
    for _ in range(10):
        q = Fraction(rng.randint(-6, 6), rng.randint(1, 6))
        out.append(f"I({max(min(q, 1), -1)})")
        out.append(f"III({abs(q)})")
    out += ["I(1)", "I(0)", "II", "IV", "V", "VII", "VIII"]
    return out


@pytest.mark.parametrize("text", _samples())
def test_classify_after_realize(text):
    r = realize_algebra(text)
    ok, alg, rank = self_check(r)
    assert ok and rank == 4
    assert classify_type(alg).tag == TypeTag.parse(text)


def test_vi_samples():
    rng = random.Random(3)
    for _ in range(10):
        C = [[Fraction(rng.randint(-2, 2)) for _ in range(3)] for _ in range(3)]
        r = realize_algebra("VI", C)
        ok, alg, rank = self_check(r, C)
        assert ok and rank == 4
        assert classify_type(alg).tag.name == "VI"


@pytest.mark.parametrize("text", ["I(1/2)", "III(2)", "V", "VIII"])
def test_record_round_trip(text):
    r = realize_algebra(text)
    s = format_realization(r)
    tag, C, point, texts = parse_realization(s)
    assert tag == r.tag and point == r.point and C is None
    assert [HoloVectorField.from_exprs(t).coeffs for t in texts] == [X.coeffs for X in r.fields]
    assert format_realization(realize_algebra(tag)) == s
