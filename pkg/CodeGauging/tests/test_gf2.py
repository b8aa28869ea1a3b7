"""Unit tests for gf2.py"""

from __future__ import annotations

import itertools

import numpy as np
import pytest

from utils.errors import DimensionMismatchError
from utils.gf2 import (GF2Matrix, GF2Vector, IncrementalBasis, image_membership, is_independent,
                       kernel_basis, left_kernel_basis, min_weight_in_coset, pack_bits, rank,
                       reduce_modulo, rref, search_coset, solve, span_elements_up_to, unpack_bits)


def _random_matrix(rows: int, cols: int, seed: int) -> GF2Matrix:
    rng = np.random.default_rng(seed)
    return GF2Matrix.from_dense(rng.integers(0, 2, size=(rows, cols)))


def _brute_rank(dense: np.ndarray) -> int:
    """Rank as log2 of the number of distinct row combinations."""
    rows = [tuple(r) for r in dense]
    seen = set()
    for coeffs in itertools.product([0, 1], repeat=len(rows)):
        total = np.zeros(dense.shape[1], dtype=np.int64)
        for c, r in zip(coeffs, rows):
            if c:
                total ^= np.array(r, dtype=np.int64)
        seen.add(tuple(total))
    return len(seen).bit_length() - 1


def test_packing() -> None:
    """Bits survive packing across word boundaries, and padding stays zero."""
    bits = np.zeros(130, dtype=np.uint8)
    bits[[0, 63, 64, 129]] = 1
    words = pack_bits(bits, 130)
    assert words.shape == (3,)
    assert np.array_equal(unpack_bits(words, 130), bits)

    v = GF2Vector.from_bits(bits)
    assert v.support() == [0, 63, 64, 129]
    assert v.weight() == 4
    assert v[129] == 1 and v[1] == 0

    # words beyond the logical length are masked on construction
    w = GF2Vector(3, np.array([0xFF], dtype=np.uint64))
    assert w.support() == [0, 1, 2]


def test_vector_algebra() -> None:
    """Addition, dot product, overlap and repeated support entries."""
    a = GF2Vector.from_support(6, [0, 1, 2])
    b = GF2Vector.from_support(6, [2, 3])
    assert (a + b).support() == [0, 1, 3]
    assert a.dot(b) == 1
    assert a.overlap(b) == 1
    assert GF2Vector.from_support(4, [1, 1, 2]).support() == [2]
    assert GF2Vector.from_int(5, 0b10011).support() == [0, 1, 4]
    assert GF2Vector.from_int(5, 0b10011).to_int() == 0b10011
    assert a.concat(b).length == 12
    with pytest.raises(DimensionMismatchError, match="differ"):
        a + GF2Vector.zeros(5)
    with pytest.raises(DimensionMismatchError, match="out of range"):
        GF2Vector.from_support(3, [3])


def test_matrix_construction() -> None:
    """Dense, sparse, row and column constructors agree."""
    dense = np.array([[1, 0, 1], [0, 1, 1]])
    m = GF2Matrix.from_dense(dense)
    assert m.shape == (2, 3)
    assert m == GF2Matrix.from_sparse(2, 3, [(0, 0), (0, 2), (1, 1), (1, 2)])
    assert m == GF2Matrix.from_rows([GF2Vector.from_bits([1, 0, 1]), GF2Vector.from_bits([0, 1, 1])])
    assert m == GF2Matrix.from_columns(m.column_vectors())
    assert m.T.T == m
    assert m.column_support(2) == [0, 1]
    assert list(m.row_weights()) == [2, 2]
    assert list(m.column_weights()) == [1, 1, 2]
    assert GF2Matrix.from_sparse(2, 2, [(0, 0), (0, 0)]).is_zero()
    with pytest.raises(DimensionMismatchError, match="outside shape"):
        GF2Matrix.from_sparse(2, 2, [(2, 0)])


def test_products() -> None:
    """matvec and matmul agree with integer arithmetic mod 2."""
    a = _random_matrix(7, 70, seed=1)
    b = _random_matrix(70, 5, seed=2)
    expected = (a.to_dense().astype(int) @ b.to_dense().astype(int)) % 2
    assert np.array_equal((a @ b).to_dense(), expected)
    v = GF2Vector.from_bits(np.arange(70) % 3 == 0)
    expected_v = (a.to_dense().astype(int) @ v.bits().astype(int)) % 2
    assert np.array_equal((a @ v).bits(), expected_v)
    with pytest.raises(DimensionMismatchError, match="columns"):
        a.matvec(GF2Vector.zeros(3))


@pytest.mark.parametrize("seed", range(6))
def test_rank_and_kernel(seed: int) -> None:
    """rank + nullity = cols, the kernel is annihilated, and rank matches brute force."""
    m = _random_matrix(6, 9, seed)
    basis = kernel_basis(m)
    assert rank(m) + len(basis) == 9
    assert rank(m) == _brute_rank(m.to_dense())
    assert all((m @ v).is_zero() for v in basis)
    assert is_independent(basis)
    for v in left_kernel_basis(m):
        assert (m.T @ v).is_zero()


def test_rref_pivots() -> None:
    """Pivot columns come in increasing order with unit columns in the reduced form."""
    m = GF2Matrix.from_dense([[0, 1, 1, 0], [0, 1, 0, 1], [0, 0, 1, 1]])
    reduced, pivots = rref(m)
    assert pivots == [1, 2]
    dense = reduced.to_dense()
    assert list(dense[:, 1]) == [1, 0, 0]
    assert list(dense[:, 2]) == [0, 1, 0]
    assert not dense[2].any()


def test_empty_shapes() -> None:
    """Zero rows or columns are handled without special cases by callers."""
    assert rank(GF2Matrix.zeros(0, 4)) == 0
    assert len(kernel_basis(GF2Matrix.zeros(0, 4))) == 4
    assert kernel_basis(GF2Matrix.zeros(3, 0)) == []
    assert GF2Matrix.zeros(0, 3).to_dense().shape == (0, 3)


def test_solve() -> None:
    """solve returns a solution for consistent systems and None otherwise."""
    m = GF2Matrix.from_dense([[1, 1, 0], [0, 1, 1]])
    b = GF2Vector.from_bits([1, 0])
    x = solve(m, b)
    assert x is not None and m @ x == b
    assert image_membership(m, b)

    # rows sum to the third row, so [0, 0, 1] is inconsistent
    m = GF2Matrix.from_dense([[1, 0], [0, 1], [1, 1]])
    assert solve(m, GF2Vector.from_bits([0, 0, 1])) is None
    with pytest.raises(DimensionMismatchError, match="right-hand side"):
        solve(m, GF2Vector.zeros(2))


def test_reduce_modulo_is_canonical() -> None:
    """Vectors in the same coset reduce to the same representative."""
    basis = [GF2Vector.from_support(5, [0, 1]), GF2Vector.from_support(5, [1, 2])]
    v = GF2Vector.from_support(5, [0, 4])
    assert reduce_modulo(v, basis) == reduce_modulo(v + basis[0] + basis[1], basis)
    assert reduce_modulo(basis[0], basis).is_zero()


def test_incremental_basis() -> None:
    basis = IncrementalBasis(4)
    assert basis.add(GF2Vector.from_support(4, [0, 1]))
    assert basis.add(GF2Vector.from_support(4, [1, 2]))
    assert not basis.add(GF2Vector.from_support(4, [0, 2]))
    assert basis.contains(GF2Vector.from_support(4, [0, 2]))
    assert not basis.contains(GF2Vector.unit(4, 3))
    assert len(basis) == 2


def _brute_coset_min(offset: GF2Vector, span: GF2Matrix, exclude_zero: bool) -> int:
    best = None
    for coeffs in itertools.product([0, 1], repeat=span.cols):
        v = offset + span @ GF2Vector.from_bits(coeffs)
        if exclude_zero and v.is_zero():
            continue
        best = v.weight() if best is None else min(best, v.weight())
    return best


@pytest.mark.parametrize("seed", range(4))
def test_coset_minimum(seed: int) -> None:
    """Span and ambient strategies agree with brute force, with and without threads."""
    span = _random_matrix(10, 5, seed)
    offset = GF2Vector.from_bits(np.random.default_rng(seed + 10).integers(0, 2, size=10))
    expected = _brute_coset_min(offset, span, exclude_zero=False)
    for strategy in ("span", "ambient"):
        result = search_coset(offset, span, strategy=strategy)
        assert result.value == expected
        assert result.vector.weight() == expected
    threaded = search_coset(offset, span, threads=3, block_bits=2)
    assert threaded.value == expected
    assert threaded.vector == search_coset(offset, span).vector


def test_coset_search_reasons() -> None:
    """Budget overruns and empty searches are reported, never guessed."""
    span = GF2Matrix.identity(12)
    result = search_coset(GF2Vector.zeros(12), span, cap=16)
    assert result.reason == "budget" and not result.found
    assert min_weight_in_coset(GF2Vector.zeros(12), span, cap=16) is None

    # the only element of the zero span is the zero vector
    empty = search_coset(GF2Vector.zeros(4), GF2Matrix.zeros(4, 0), exclude_zero=True)
    assert empty.reason == "vacuous"

    nonzero = search_coset(GF2Vector.zeros(5), GF2Matrix.from_dense([[1], [1], [0], [0], [0]]),
                           exclude_zero=True)
    assert nonzero.value == 2
    with pytest.raises(ValueError, match="unknown enumeration strategy"):
        search_coset(GF2Vector.zeros(2), GF2Matrix.identity(2), strategy="random")


def test_span_elements_up_to() -> None:
    """Low-weight span elements of the 4-bit repetition space."""
    basis = [GF2Vector.from_support(4, [0, 1]), GF2Vector.from_support(4, [1, 2]),
             GF2Vector.from_support(4, [2, 3])]
    found = span_elements_up_to(basis, 4, 2)
    # six pairs are even-weight, no other element has weight <= 2
    assert len(found) == 6
    assert all(v.weight() == 2 for v in found)
