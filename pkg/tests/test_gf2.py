import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from forestlab.gf2 import (
    FFMatrix,
    FieldSpec,
    MatrixFormatError,
    embed_f2_matrix,
    find_irreducible,
    format_matrix,
    parse_matrix,
    random_matrix,
    rref_f2,
)

F8 = FieldSpec.default(8)


def test_known_smallest_irreducibles():
    # classical minimal-weight moduli for small degrees
    assert find_irreducible(1) == 0b10
    assert find_irreducible(2) == 0b111
    assert find_irreducible(3) == 0b1011
    assert find_irreducible(4) == 0b10011
    assert find_irreducible(8) == 0x11B


def test_modulus_degree_validated():
    with pytest.raises(ValueError):
        FieldSpec(4, 0b111)


elems = st.integers(0, 255)


@given(elems, elems, elems)
@settings(max_examples=300)
def test_field_axioms_f256(x, y, z):
    assert F8.mul(x, y) == F8.mul(y, x)
    assert F8.mul(x, F8.mul(y, z)) == F8.mul(F8.mul(x, y), z)
    assert F8.mul(x, y ^ z) == F8.mul(x, y) ^ F8.mul(x, z)
    assert F8.mul(x, 1) == x


def test_inverses_exhaustively_small_fields():
    for b in (1, 2, 3, 4):
        spec = FieldSpec.default(b)
        for x in range(1, spec.order):
            assert spec.mul(x, spec.inv(x)) == 1
    with pytest.raises(ZeroDivisionError):
        F8.inv(0)


def test_rref_f2_hand_example():
    # K_3 incidence as bitset rows (bit j = column j)
    rows = [0b011, 0b101, 0b110]
    pivots, red = rref_f2(rows, 3)
    assert pivots == [0, 1]
    assert red[0] == 0b101 and red[1] == 0b110 and red[2] == 0


def test_ffmatrix_rref_properties():
    rng = random.Random(5)
    for _ in range(20):
        m = random_matrix(F8, rng.randint(1, 5), rng.randint(1, 7), seed=rng.getrandbits(16))
        pivots, red = m.rref()
        assert len(pivots) == m.rank() == red.rank()
        # pivot columns are unit vectors
        for i, c in enumerate(pivots):
            col = red.column(c)
            assert col[i] == 1 and all(e == 0 for j, e in enumerate(col) if j != i)
        # rref is idempotent
        assert red.rref()[1].data == red.data


def test_det_multiplicative():
    rng = random.Random(9)
    for _ in range(20):
        a = random_matrix(F8, 4, 4, seed=rng.getrandbits(16))
        b = random_matrix(F8, 4, 4, seed=rng.getrandbits(16))
        assert a.matmul(b).det() == F8.mul(a.det(), b.det())


def test_columns_independent():
    m = FFMatrix.from_rows(FieldSpec.default(1), [[1, 1, 0], [1, 0, 1], [0, 1, 1]], 3)
    assert m.columns_independent((0, 1))
    assert not m.columns_independent((0, 1, 2))  # triangle columns sum to zero
    assert m.columns_independent(())


def test_embedding_preserves_independence_verdicts():
    from itertools import combinations

    rows_bits = [0b011, 0b101, 0b110]
    f2 = embed_f2_matrix(FieldSpec.default(1), rows_bits, 3, 3)
    f4 = embed_f2_matrix(FieldSpec.default(2), rows_bits, 3, 3)
    for r in range(4):
        for cols in combinations(range(3), r):
            assert f2.columns_independent(cols) == f4.columns_independent(cols)


def test_matrix_text_round_trip_and_errors():
    m = random_matrix(F8, 3, 5, seed=77)
    assert parse_matrix(format_matrix(m)).data == m.data
    with pytest.raises(MatrixFormatError):
        parse_matrix("not a matrix")
    with pytest.raises(MatrixFormatError):
        parse_matrix("matrix 2 2 gf2^2 mod 0x7\n1 2\n")  # missing row
    with pytest.raises(MatrixFormatError):
        parse_matrix("matrix 1 1 gf2^2 mod 0x7\n5\n")  # entry outside field


def test_random_matrix_is_seed_deterministic():
    a = random_matrix(F8, 3, 3, seed=4)
    b = random_matrix(F8, 3, 3, seed=4)
    c = random_matrix(F8, 3, 3, seed=5)
    assert a.data == b.data
    assert a.data != c.data
