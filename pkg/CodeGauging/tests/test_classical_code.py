"""Unit tests for classical_code.py"""

from __future__ import annotations

import itertools

import networkx as nx
import numpy as np
import pytest

from utils.classical_code import (ClassicalCode, canonical_info_bits, canonical_logicals,
                                  classical_hamiltonian, distance, distance_search, ldpc_profile,
                                  tanner_graph, tanner_graph_json, transpose_code,
                                  transverse_field_hamiltonian)
from utils.code_families import ising
from utils.errors import CodeGaugingError, DimensionMismatchError
from utils.gf2 import GF2Matrix
from utils.pauli import PauliOperator, ground_space_log2_dim


def _repetition(n: int) -> ClassicalCode:
    """Ring of n bits with checks on neighbouring pairs."""
    return ClassicalCode(GF2Matrix.from_sparse(n, n, [(a, a) for a in range(n)] +
                                               [((a + 1) % n, a) for a in range(n)]))


def _hamming() -> ClassicalCode:
    """[7,4,3] Hamming code; check a contains bit i iff bit a of (i + 1) is set."""
    return ClassicalCode(GF2Matrix.from_sparse(7, 3, [(i, a) for i in range(7) for a in range(3)
                                                      if ((i + 1) >> a) & 1]))


def _brute_distance(c: ClassicalCode) -> int:
    best = c.n + 1
    dense = c.delta.to_dense().astype(int)
    for bits in itertools.product([0, 1], repeat=c.n):
        x = np.array(bits)
        if x.any() and not ((x @ dense) % 2).any():
            best = min(best, int(x.sum()))
    return best


def test_basic_parameters() -> None:
    """Repetition and Hamming codes."""
    c = _repetition(5)
    assert (c.n, c.m, c.k, c.kT) == (5, 5, 1, 1)
    assert distance(c) == 5
    assert str(c.parameters()) == "[5,1,5]"

    h = _hamming()
    params = h.parameters()
    assert (params.n, params.k, params.kT, params.d) == (7, 4, 0, 3)
    assert params.to_dict()["label"] == "[7,4,3]"
    assert distance(h) == _brute_distance(h)


@pytest.mark.parametrize("seed", range(4))
def test_distance_matches_brute_force(seed: int) -> None:
    """Exact distance on small random codes."""
    rng = np.random.default_rng(seed)
    dense = rng.integers(0, 2, size=(9, 4))
    dense[0] |= 1  # no empty checks
    c = ClassicalCode(GF2Matrix.from_dense(dense))
    if c.k == 0:
        assert distance_search(c).reason == "k=0"
    else:
        assert distance(c) == _brute_distance(c)
        for strategy in ("span", "ambient"):
            assert distance(c, strategy=strategy) == _brute_distance(c)


def test_logicals_and_redundancies() -> None:
    """Logicals commute with every check; redundancies multiply to the identity."""
    c = ising(2, 3).code
    assert len(c.logicals_basis) == 1
    assert c.logicals_basis[0].weight() == 9
    assert len(c.redundancy_basis) == c.kT == 18 - 9 + 1
    for r in c.redundancy_basis:
        assert (c.delta @ r).is_zero()
    for v in c.logicals_basis:
        assert (c.delta_T @ v).is_zero()


def test_canonical_info_bits() -> None:
    """Each information bit meets exactly one canonical logical."""
    c = _hamming()
    bits = canonical_info_bits(c)
    logicals = canonical_logicals(c)
    assert len(bits) == len(logicals) == c.k
    for lam, v in enumerate(logicals):
        assert [v[i] for i in bits] == [int(lam == mu) for mu in range(c.k)]


def test_budget_reason() -> None:
    """A cap below 2^k gives no distance, but an upper bound."""
    c = _hamming()
    params = c.parameters(cap=4)
    assert params.d is None
    assert params.d_reason == "budget"
    assert params.d_upper >= 3
    assert str(params) == "[7,4,?]"


def test_transpose_and_profile() -> None:
    c = ising(1, 4).code
    t = transpose_code(c)
    assert (t.n, t.m) == (c.m, c.n)
    profile = ldpc_profile(c)
    assert profile.as_pair() == (2, 2)
    assert profile.duplicate_checks == []

    # two copies of the same check are flagged
    twice = ClassicalCode(GF2Matrix.from_dense([[1, 1], [1, 1], [0, 0]]).hstack(
        GF2Matrix.from_dense([[0], [1], [1]])))
    assert ldpc_profile(twice).duplicate_checks == [(0, 1)]


def test_construction_errors() -> None:
    with pytest.raises(CodeGaugingError, match="acts on no bits"):
        ClassicalCode(GF2Matrix.from_dense([[1, 0], [1, 0]]))
    with pytest.raises(DimensionMismatchError, match="at least one bit"):
        ClassicalCode(GF2Matrix.zeros(0, 0))
    with pytest.raises(DimensionMismatchError, match="one label per bit"):
        ClassicalCode(GF2Matrix.identity(2), bit_labels=["a"])


def test_hamiltonians() -> None:
    """The Ising chain has a 2-fold degenerate classical ground space."""
    c = ising(1, 6).code
    h = classical_hamiltonian(c)
    assert len(h) == 6
    assert ground_space_log2_dim(h) == 1
    tf = transverse_field_hamiltonian(c, J=1, g=2)
    assert len(tf) == 12
    assert tf.coefficient_of(PauliOperator.x_on(tf.register, [0])) == -2
    assert tf.coefficient_of(PauliOperator.z_on(tf.register, [0, 1])) == -1


def test_tanner_graph() -> None:
    c = _hamming()
    graph = tanner_graph(c)
    assert graph.number_of_nodes() == 10
    assert graph.number_of_edges() == int(c.delta.row_weights().sum())
    assert nx.is_bipartite(graph)
    data = tanner_graph_json(c)
    assert len(data["nodes"]) == 10
    assert graph.degree("b6") == 3
