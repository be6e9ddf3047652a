from fractions import Fraction

from hypothesis import given, settings, strategies as st

from homcr import linalg
from homcr.series import GaussianRational

F = Fraction


def test_rank_and_nullspace():
    m = [[F(1), F(2), F(3)], [F(2), F(4), F(6)], [F(1), F(0), F(1)]]
    assert linalg.rank(m) == 2
    (v,) = linalg.nullspace(m, 3)
    assert linalg.matmul(m, [[x] for x in v]) == [[0], [0], [0]]


def test_inconsistent_system():
    assert linalg.solve([[F(1), F(1)], [F(2), F(2)]], [F(1), F(3)]) is None


def test_gaussian_entries():
    i = GaussianRational(0, 1)
    m = [[GaussianRational(1), i], [i, GaussianRational(-1)]]
    assert linalg.rank(m) == 1


def test_signature():
    assert linalg.signature([[F(0), F(1)], [F(1), F(0)]]) == (1, 1, 0)
    assert linalg.signature([[F(2), F(0), F(0)], [F(0), F(0), F(0)], [F(0), F(0), F(-1)]]) == (1, 1, 1)


def test_charpoly_lowest_degree_first():
    # x^2 - 5x + 6 for diag(2, 3)
    assert linalg.charpoly([[F(2), F(0)], [F(0), F(3)]]) == [6, -5, 1]


small = st.fractions(min_value=-3, max_value=3, max_denominator=3)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=3, max_size=5),
       st.lists(small, min_size=4, max_size=4))
def test_solve_recovers_consistent_rhs(rows, x):
    rhs = [sum((a * b for a, b in zip(r, x)), F(0)) for r in rows]
    sol = linalg.solve(rows, rhs)
    assert sol is not None
    p, kernel = sol
    for r, b in zip(rows, rhs):
        assert sum((a * c for a, c in zip(r, p)), F(0)) == b
    for k in kernel:
        assert all(sum((a * c for a, c in zip(r, k)), F(0)) == 0 for r in rows)
    assert len(kernel) == 4 - linalg.rank(rows)
