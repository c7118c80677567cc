import random

import pytest
from hypothesis import given, settings, strategies as st

from cosegal.field_linalg import GF2, GF3, GF5, QQ, Field, Matrix, quotient
from cosegal.sampling import random_matrix

from oracles import gauss_rank

FIELDS = [GF2, GF3, GF5, QQ]


def test_field_characteristic_must_be_prime_or_zero():
    with pytest.raises(ValueError):
        Field(4)
    with pytest.raises(ValueError):
        Field(1)
    assert Field(7).characteristic == 7


def test_rank_identity_and_zero():
    assert Matrix.identity(GF2, 2).rank() == 2
    assert Matrix.zeros(GF3, 3, 4).rank() == 0


def test_rank_row_reduce_by_hand():
    # [[1,1],[1,1]] over F_2 has rank 1
    assert Matrix.from_rows(GF2, [[1, 1], [1, 1]]).rank() == 1


def test_solve_identity_case():
    b = Matrix.from_rows(GF5, [[1], [2], [3]])
    assert Matrix.identity(GF5, 3).solve(b) == b


def test_solve_inconsistent_returns_none():
    assert Matrix.zeros(GF2, 2, 2).solve(Matrix.from_rows(GF2, [[1], [0]])) is None


def test_solve_canonical_free_variables_zero():
    # enumerate all four vectors over F_2: solutions of [1,1]x = 1 are
    # (1,0) and (0,1); the canonical one sets the free variable to zero
    sols = []
    m = Matrix.from_rows(GF2, [[1, 1]])
    for a in range(2):
        for b in range(2):
            x = Matrix.from_rows(GF2, [[a], [b]])
            if m @ x == Matrix.from_rows(GF2, [[1]]):
                sols.append((a, b))
    assert set(sols) == {(1, 0), (0, 1)}
    assert m.solve(Matrix.from_rows(GF2, [[1]])).tolist() == [[1], [0]]


def test_kron_scalar_and_identity():
    c = Matrix.from_rows(GF3, [[2]])
    m = Matrix.from_rows(GF3, [[1, 2], [0, 1]])
    assert c.kron(m) == m.scale(2)
    assert Matrix.identity(QQ, 2).kron(Matrix.identity(QQ, 3)) == Matrix.identity(QQ, 6)


def test_kron_expand_definition():
    a = Matrix.from_rows(GF2, [[1, 0]])
    b = Matrix.from_rows(GF2, [[0, 1]])
    assert a.kron(b).tolist() == [[0, 1, 0, 0]]


def test_quotient_no_relations():
    d, p = quotient(GF2, 3, [])
    assert d == 3 and p == Matrix.identity(GF2, 3)


def test_quotient_full():
    d, p = quotient(GF3, 2, [[1, 0], [0, 1]])
    assert d == 0 and p.shape == (0, 2)


def test_quotient_kernel_check():
    d, p = quotient(GF2, 2, [[1, 1]])
    assert d == 1
    assert p.tolist() == [[1, 1]]
    assert (p @ Matrix.from_rows(GF2, [[1], [1]])).is_zero()


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_solve_roundtrip_random(field):
    rng = random.Random(101)
    for _ in range(25):
        m = random_matrix(rng, field, rng.randrange(1, 5), rng.randrange(1, 5))
        x = random_matrix(rng, field, m.cols, 2)
        b = m @ x
        sol = m.solve(b)
        assert sol is not None
        assert m @ sol == b


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_rank_kron_multiplicative(field):
    rng = random.Random(7)
    for _ in range(100):
        a = random_matrix(rng, field, rng.randrange(1, 4), rng.randrange(1, 4))
        b = random_matrix(rng, field, rng.randrange(1, 4), rng.randrange(1, 4))
        assert a.kron(b).rank() == a.rank() * b.rank()


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_quotient_projection_properties(field):
    rng = random.Random(13)
    for _ in range(30):
        dim = rng.randrange(1, 6)
        rels = [
            [rng.randrange(5) for _ in range(dim)] for _ in range(rng.randrange(0, 4))
        ]
        qdim, proj = quotient(field, dim, rels)
        assert proj.rank() == qdim
        for r in rels:
            col = Matrix.from_rows(field, [[x] for x in r])
            assert (proj @ col).is_zero()


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_rank_against_plain_list_oracle(field):
    rng = random.Random(23)
    for _ in range(40):
        rows = rng.randrange(0, 5)
        cols = rng.randrange(1, 5)
        data = [[rng.randrange(-4, 5) for _ in range(cols)] for _ in range(rows)]
        m = Matrix.from_rows(field, data, cols=cols)
        assert m.rank() == gauss_rank(data, field.characteristic)


@given(
    st.integers(min_value=1, max_value=4),
    st.integers(min_value=1, max_value=4),
    st.randoms(use_true_random=False),
)
@settings(max_examples=30, deadline=None)
def test_kernel_is_annihilated(rows, cols, pyrng):
    rng = random.Random(pyrng.randrange(10**6))
    for field in (GF2, GF3):
        m = random_matrix(rng, field, rows, cols)
        k = m.kernel()
        assert (m @ k).is_zero()
        assert k.rank() == k.cols == cols - m.rank()


@given(st.randoms(use_true_random=False))
@settings(max_examples=20, deadline=None)
def test_rref_idempotent_and_rank_stable(pyrng):
    rng = random.Random(pyrng.randrange(10**6))
    m = random_matrix(rng, GF5, rng.randrange(1, 5), rng.randrange(1, 5))
    red, pivots = m.rref()
    red2, pivots2 = red.rref()
    assert red == red2 and pivots == pivots2
    assert m.rank() == red.rank() == len(pivots)
