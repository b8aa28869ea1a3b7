"""Unit tests for the SPT analyzer"""

from __future__ import annotations

import pytest

from analyzers.spt import (SPTAnalyzer, boundary_labels, build_cluster, build_extended_dualities,
                           dressed_flip, dw_disentangle, dw_map, hamiltonian_spt_extended,
                           hamiltonian_ssb, kt_map, open_boundaries_1complex,
                           open_boundaries_2complex, order_parameter_supports,
                           reduced_redundancies, spt_symmetries, trivial_hamiltonian)
from utils.chain_complex import attach_local_redundancies
from utils.code_families import ising, plaquette_ising
from utils.errors import ChainComplexError, CodeGaugingError, DimensionMismatchError
from utils.gf2 import GF2Vector
from utils.pauli import PauliOperator, apply_map, commutation_matrix, ground_space_log2_dim


def _site(x: int, y: int, L: int) -> int:
    return x * L + y


def _edge(mu: int, x: int, y: int, L: int) -> int:
    return mu * L * L + _site(x, y, L)


def test_cluster_system() -> None:
    """One independent commuting term per qubit, and a unique ground state."""
    c = ising(2, 3).code
    cs = build_cluster(c)
    assert cs.register.size == c.n + c.m
    assert len(cs.hamiltonian) == c.n + c.m
    assert ground_space_log2_dim(cs.hamiltonian) == 0
    assert len(cs.x_symmetries) == c.k
    assert len(cs.z_symmetries) == c.kT
    assert not commutation_matrix(cs.symmetries, cs.hamiltonian.operators).any()
    assert cs.gauss_law(0) == cs.vertex_terms[0]
    assert cs.tau_index(2) == c.n + 2
    x, z = spt_symmetries(c)
    assert (len(x), len(z)) == (1, c.kT)
    assert len(cs.hadamard_frame()) == len(cs.hamiltonian)
    assert len(cs.tanner_graph_json()["nodes"]) == c.n + c.m


def test_domain_wall_dressing_disentangles() -> None:
    c = ising(1, 5).code
    cs = build_cluster(c)
    trivial = dw_disentangle(cs)
    assert trivial == trivial_hamiltonian(cs.register, range(c.n), range(c.n, c.n + c.m))
    dw = dw_map(c)
    # sigma^z and tau^x are untouched by the dressing
    assert apply_map(dw, PauliOperator.z_on(cs.register, [0])) == PauliOperator.z_on(cs.register, [0])
    assert apply_map(dw, PauliOperator.x_on(cs.register, [c.n])) == PauliOperator.x_on(cs.register, [c.n])


def test_dressed_flip() -> None:
    """Dressing a flip of N attaches tau^x on the domain walls of N."""
    c = ising(1, 6).code
    cs = build_cluster(c)
    flip = dressed_flip(cs, [1, 2])
    walls = [c.n + a for a in c.delta_T.matvec(GF2Vector.from_support(c.n, [1, 2])).support()]
    assert flip == PauliOperator.x_on(cs.register, [1, 2] + walls)
    assert len(walls) == 2


@pytest.mark.parametrize("family, D, L", [
    (ising, 1, 4), (ising, 1, 6), (ising, 2, 3), (plaquette_ising, 2, 3),
])
def test_kennedy_tasaki(family, D: int, L: int) -> None:
    """KT sends the extended SPT Hamiltonian to the decoupled SSB Hamiltonian."""
    c = family(D, L).code
    kt = kt_map(c)
    ed = build_extended_dualities(c)
    assert kt == ed.kt
    assert ed.half == c.n + c.kT == c.m + c.k
    assert hamiltonian_spt_extended(c, ed).transform(kt) == hamiltonian_ssb(c, ed)


def test_kennedy_tasaki_generator_images() -> None:
    """sigma^x and tau^z are fixed; eta^z picks up the magnetic symmetry string."""
    c = ising(1, 4).code
    ed = build_extended_dualities(c)
    register = ed.register
    for i in range(c.n):
        op = PauliOperator.x_on(register, [i])
        assert apply_map(ed.kt, op) == op
    for a in range(c.m):
        op = PauliOperator.z_on(register, [ed.tau_index(a)])
        assert apply_map(ed.kt, op) == op
    for r in range(c.kT):
        eta = PauliOperator.z_on(register, [ed.eta_index(r)])
        assert apply_map(ed.kt, eta) == eta * ed.z_symmetry(r)
    for lam in range(c.k):
        assert apply_map(ed.kt, ed.x_symmetry(lam)) == ed.x_symmetry(lam)


def test_kw_full_is_an_involution_on_hamiltonians() -> None:
    c = ising(1, 4).code
    ed = build_extended_dualities(c)
    spt = hamiltonian_spt_extended(c, ed)
    assert spt.transform(ed.kw_full) == spt


def test_reduced_redundancies() -> None:
    """Each pivot check appears in exactly one reduced relation."""
    c = ising(2, 3).code
    relations, pivots = reduced_redundancies(c)
    assert len(pivots) == c.kT
    for r, relation in enumerate(relations):
        assert [relation[p] for p in pivots] == [int(r == s) for s in range(len(pivots))]
    assert boundary_labels(ising(1, 6).code) == [0]


def test_open_chain() -> None:
    """Cutting the ring at one edge leaves two free boundary spins."""
    c = ising(1, 6).code
    cs = build_cluster(c)
    obc = open_boundaries_1complex(cs)
    assert obc.dropped_edges == [0]
    assert obc.boundary_sites == [0, 1]
    assert obc.register.size == c.n + c.m - 1
    assert obc.log2_degeneracy == 2
    assert len(obc.edge_operators) == 2
    assert len(obc.symmetry_pieces["z"]) == 1
    assert obc.symmetry_pieces["z"][0] == PauliOperator.z_on(obc.register, [0, 1])
    report = obc.to_dict()
    assert report["edge_pairs"] == 2
    assert report["edge_operators"][0][0] == "Z:sigma[0]"


def test_open_plaquette_ising_edge_modes() -> None:
    """Lines of plaquettes span the torus, so each boundary site carries one edge pair."""
    c = plaquette_ising(2, 3).code
    obc = open_boundaries_1complex(build_cluster(c), locality_bound=8)
    assert len(obc.dropped_edges) == c.kT
    assert obc.log2_degeneracy == len(obc.boundary_sites) > 0
    assert len(obc.edge_operators) == len(obc.boundary_sites)


def test_open_chain_rejects_local_redundancies() -> None:
    cs = build_cluster(ising(2, 4).code)
    with pytest.raises(CodeGaugingError, match="local redundancies"):
        open_boundaries_1complex(cs)


def test_rough_boundary() -> None:
    """Removing a straight loop from the 4x4 torus leaves two boundary rings."""
    L = 4
    inst = ising(2, L)
    c = inst.code
    cs = build_cluster(c)
    cc = attach_local_redundancies(c, inst.plaquettes)
    loop = GF2Vector.from_support(c.m, [_edge(0, x, 0, L) for x in range(L)])
    obc = open_boundaries_2complex(cs, cc, cycles=[loop])
    assert obc.removed_edges == [0, 4, 8, 12]
    assert obc.removed_sites == [_site(x, 0, L) for x in range(L)]
    assert len(obc.dropped_edges) == 2 * L
    boundary = obc.boundary_code
    assert boundary.n == 2 * L
    assert all(w == 2 for w in boundary.delta.column_weights())
    assert boundary.k == 2
    assert len(obc.symmetry_pieces["x"]) == 1
    assert obc.symmetry_pieces["x"][0].weight() == 2 * L


def test_rough_boundary_defaults_and_errors() -> None:
    inst = ising(2, 3)
    cs = build_cluster(inst.code)
    cc = attach_local_redundancies(inst.code, inst.plaquettes)
    assert open_boundaries_2complex(cs, cc).removed_edges
    unchanged = open_boundaries_2complex(cs, cc, cycles=[])
    assert unchanged.hamiltonian == cs.hamiltonian
    with pytest.raises(ValueError, match="rough"):
        open_boundaries_2complex(cs, cc, boundary_type="smooth")
    other = build_cluster(ising(2, 4).code)
    with pytest.raises(DimensionMismatchError, match="delta_1"):
        open_boundaries_2complex(other, cc)


@pytest.mark.parametrize("w", [3, 4])
def test_order_parameter_supports(w: int) -> None:
    """Order and disorder parameters of a w x w block on the 6x6 torus."""
    L = 6
    c = ising(2, L).code
    cs = build_cluster(c)
    N = [_site(x, y, L) for x in range(w) for y in range(w)]
    M = [_edge(0, x, y, L) for x in range(w - 1) for y in range(w)]
    M += [_edge(1, x, y, L) for x in range(w) for y in range(w - 1)]
    report = order_parameter_supports(cs, M, N)
    assert report.order_sizes == (2 * w * (w - 1), 4 * (w - 2))
    assert report.disorder_sizes == (w * w, 4 * w)
    assert report.dressed_disorder == dressed_flip(cs, N)
    taus = PauliOperator.z_on(cs.register, [c.n + a for a in M])
    assert report.dressed_order == report.order * taus
    assert report.to_dict()["order_sizes"] == [2 * w * (w - 1), 4 * (w - 2)]


def test_spt_analyzer() -> None:
    analyzer = SPTAnalyzer()
    assert analyzer.locality_bound == 8
    report = analyzer.analyze(ising(1, 6).code, obc="1complex")
    assert report["ground_space_log2_dim"] == 0
    assert report["kt_maps_spt_to_ssb"]
    assert report["open_boundary"]["log2_degeneracy"] == 2

    inst = ising(2, 3)
    cc = attach_local_redundancies(inst.code, inst.plaquettes)
    rough = analyzer.analyze(inst.code, cc, obc="rough")
    assert rough["open_boundary"]["removed_edges"]
    with pytest.raises(ChainComplexError):
        analyzer.analyze(inst.code, None, obc="rough")
    with pytest.raises(ValueError, match="unknown boundary"):
        analyzer.analyze(inst.code, obc="twisted")
