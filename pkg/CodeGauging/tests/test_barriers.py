"""Unit tests for the barrier analyzer"""

from __future__ import annotations

from fractions import Fraction

import pytest

from analyzers.barriers import (EXHAUSTIVE, GREEDY, BarrierAnalyzer, anneal_barrier_oracle,
                                descent_certificate, energy_barrier, locally_minimal_distance,
                                profile_frame, soundness)
from utils.chain_complex import attach_local_redundancies, from_classical_code
from utils.code_families import ising, newman_moore, toric_complex
from utils.errors import ChainComplexError, CodeGaugingError, DimensionMismatchError
from utils.gf2 import GF2Vector, solve


def _energy(c, spins) -> int:
    return c.delta_T.matvec(GF2Vector.from_support(c.n, spins)).weight()


def test_ring_barrier_is_flat() -> None:
    """On a ring any contiguous run of flips costs exactly two domain walls."""
    c = ising(1, 8).code
    bp = energy_barrier(c)
    assert bp.sigma == list(range(8))
    assert bp.E_min == [0, 2, 2, 2, 2]
    assert bp.method == EXHAUSTIVE
    assert bp.is_exact(4)
    for F in range(1, 5):
        assert len(bp.witnesses[F]) == F
        assert _energy(c, bp.witnesses[F]) == bp.E_min[F]

    report = soundness(bp, kappa="1/2")
    assert report.kappa_lower_empirical == Fraction(1, 2)
    assert report.d_half == 4
    assert report.satisfied
    assert not soundness(bp, kappa=1).satisfied
    assert report.to_dict()["kappa"] == "1/2"


def test_square_lattice_barrier() -> None:
    """2D Ising on the 4x4 torus: the cheapest F-clusters are compact blocks and strips."""
    c = ising(2, 4).code
    bp = energy_barrier(c, F_max=8)
    assert [bp.E_min[F] for F in (1, 2, 3, 4, 8)] == [4, 6, 8, 8, 8]
    assert bp.exact_up_to == 8
    assert soundness(bp).kappa_lower_empirical == Fraction(1)


def test_threaded_barrier_matches_serial() -> None:
    c = ising(2, 3).code
    assert energy_barrier(c, threads=3).E_min == energy_barrier(c).E_min


def test_greedy_continuation() -> None:
    """Past the subset cap the profile continues with greedy upper bounds."""
    c = ising(1, 8).code
    bp = energy_barrier(c, cap=10)
    assert bp.exact_up_to == 1
    assert bp.method == GREEDY
    assert bp.E_min == [0, 2, 2, 2, 2]
    assert not bp.is_exact(2)
    assert bp.witnesses[3] == [0, 1, 2]
    frame = profile_frame(bp)
    assert list(frame.columns) == ["F", "E_min", "exact"]
    assert frame["exact"].tolist() == [True, True, False, False, False]


def test_barrier_errors() -> None:
    with pytest.raises(CodeGaugingError, match="no logical"):
        energy_barrier(newman_moore(4).code)
    c = ising(1, 6).code
    with pytest.raises(ValueError, match="F_max"):
        energy_barrier(c, F_max=4)
    with pytest.raises(ValueError, match="exactly computed"):
        soundness(energy_barrier(c, F_max=0))


def test_anneal_oracle_is_an_upper_bound() -> None:
    """The annealed energy is always achieved, so it never undercuts E_min."""
    c = ising(2, 4).code
    bp = energy_barrier(c, F_max=4)
    value, subset = anneal_barrier_oracle(c, bp.sigma, 4, restarts=4, sweeps=100, seed=3)
    assert len(subset) == 4
    assert set(subset) <= set(bp.sigma)
    assert value == _energy(c, subset)
    assert value >= bp.E_min[4]
    assert anneal_barrier_oracle(c, bp.sigma, 0) == (0, [])
    with pytest.raises(ValueError, match="F must lie"):
        anneal_barrier_oracle(c, bp.sigma, len(bp.sigma) + 1)


@pytest.mark.parametrize("L", [3, 4])
def test_locally_minimal_distance(L: int) -> None:
    """Straight dual loops are the lightest locally minimal cocycles on the torus."""
    result = locally_minimal_distance(toric_complex(2, L).complex)
    assert result.value == L
    assert result.vector.weight() == L


def test_locally_minimal_distance_limits() -> None:
    cc = toric_complex(2, 3).complex
    assert locally_minimal_distance(cc, cap=4).reason == "budget"
    with pytest.raises(ChainComplexError, match="2-complex"):
        locally_minimal_distance(from_classical_code(ising(1, 4).code))


def test_descent_stalls_on_a_square() -> None:
    """Flipping a 2x2 block on the torus leaves no single flip that lowers the energy."""
    L = 4
    inst = ising(2, L)
    spins = GF2Vector.from_support(inst.code.n, [0, 1, L, L + 1])
    trace = descent_certificate(inst.code, spins)
    assert trace.start_energy == 8
    assert trace.steps == []
    assert trace.verdict == "locally-minimal"

    cc = attach_local_redundancies(inst.code, inst.plaquettes)
    assert descent_certificate(cc, spins).to_dict() == trace.to_dict()


def test_descent_reaches_ground() -> None:
    """A domino shrinks to one spin and then vanishes; ties go to the lowest index."""
    c = ising(2, 4).code
    trace = descent_certificate(c, GF2Vector.from_support(c.n, [0, 1]))
    assert trace.start_energy == 6
    assert trace.steps == [(0, 4), (1, 0)]
    assert trace.verdict == "ground"
    assert trace.final_spins.weight() == 0
    with pytest.raises(DimensionMismatchError, match="length"):
        descent_certificate(c, GF2Vector.unit(3, 0))


def test_descent_stalls_on_fractal_excitations() -> None:
    """Three isolated triangle violations on the Newman-Moore code cannot be lowered by one flip."""
    c = newman_moore(8).code
    syndrome = GF2Vector.from_support(c.m, [0, 4, 32])
    spins = solve(c.delta_T, syndrome)
    assert spins is not None
    trace = descent_certificate(c, spins)
    assert trace.start_energy == 3
    assert trace.final_energy == 3
    assert trace.verdict == "locally-minimal"


def test_barrier_analyzer() -> None:
    analyzer = BarrierAnalyzer({"barriers": {}, "search": {}, "system": {"threads": 1}})
    report = analyzer.analyze(ising(1, 8).code, toric_complex(2, 3).complex)
    assert report["profile"]["E_min"] == [0, 2, 2, 2, 2]
    assert report["soundness"]["kappa_lower_empirical"] == "1/2"
    assert report["anneal_upper_bound"]["F"] == 4
    assert report["anneal_upper_bound"]["E"] >= 2
    assert (report["d_LM"], report["d_X"]) == (3, 3)
    assert report["d_LM_reason"] is None
