"""Unit tests for pauli.py"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from utils.errors import (CodeGaugingError, DimensionMismatchError, NonCommutingError,
                          SymplecticViolationError)
from utils.pauli import (PauliHamiltonian, PauliOperator, QubitRegister, SymplecticMap, apply_map,
                         commutation_matrix, commute, compose, first_anticommuting_pair,
                         ground_space_log2_dim, hadamard_map, hamiltonian_equal,
                         stabilizer_group_rank)


def _cnot(register: QubitRegister, control: int, target: int) -> SymplecticMap:
    """CNOT: X_c -> X_c X_t and Z_t -> Z_c Z_t."""
    size = register.size
    x_images = [PauliOperator.x_on(register, [j, target] if j == control else [j]) for j in range(size)]
    z_images = [PauliOperator.z_on(register, [j, control] if j == target else [j]) for j in range(size)]
    return SymplecticMap.from_images(register, register, x_images, z_images)


def test_register() -> None:
    sigma = QubitRegister.named("sigma", 3)
    tau = QubitRegister.named("tau", 2)
    joint = sigma + tau
    assert joint.labels[3] == "tau[0]"
    assert joint.block("tau") == [3, 4]
    assert joint.index_of("sigma[2]") == 2
    assert "tau[1]" in joint
    with pytest.raises(CodeGaugingError, match="unique"):
        QubitRegister(["a", "a"])
    with pytest.raises(DimensionMismatchError, match="not in the register"):
        joint.index_of("eta[0]")


def test_commutation() -> None:
    """Overlapping X and Z anticommute on odd overlap only."""
    register = QubitRegister.named("q", 4)
    x = PauliOperator.x_on(register, [0, 1])
    z_odd = PauliOperator.z_on(register, [1, 2])
    z_even = PauliOperator.z_on(register, [0, 1])
    assert commute(x, z_odd) == 1
    assert commute(x, z_even) == 0
    assert x.commutes_with(z_even)
    matrix = commutation_matrix([x, z_odd], [z_odd, z_even])
    assert matrix.tolist() == [[1, 0], [0, 0]]
    assert first_anticommuting_pair([x], [z_even, z_odd]) == (0, 1)


def test_operator_algebra() -> None:
    register = QubitRegister.named("q", 3)
    y = PauliOperator.from_parts(register, [1], [1])
    assert y.to_text() == "Y1"
    assert (y * y).is_identity()
    assert PauliOperator.identity(register).to_text() == "I"
    op = PauliOperator.from_parts(register, [0], [2])
    assert op.to_text(labels=True) == "X:q[0] Z:q[2]"
    assert op.weight() == 2
    assert op.hadamard([0]) == PauliOperator.z_on(register, [0, 2])
    assert op.hadamard() == PauliOperator.from_parts(register, [2], [0])


def test_restrict_and_embed() -> None:
    """Restriction and embedding move an operator between registers by label."""
    big = QubitRegister.named("a", 2) + QubitRegister.named("b", 2)
    op = PauliOperator.from_parts(big, [2], [3])
    small = op.restrict(big.block("b"))
    assert small.register.labels == ("b[0]", "b[1]")
    assert small.to_text() == "X0 Z1"
    assert small.embed(big) == op
    with pytest.raises(DimensionMismatchError, match="same size"):
        small.relabel(big)


def test_stabilizer_rank() -> None:
    register = QubitRegister.named("q", 3)
    ops = [PauliOperator.z_on(register, [0, 1]), PauliOperator.z_on(register, [1, 2]),
           PauliOperator.z_on(register, [0, 2])]
    assert stabilizer_group_rank(ops) == 2
    with pytest.raises(NonCommutingError):
        stabilizer_group_rank(ops + [PauliOperator.x_on(register, [0])])


def test_hamiltonian_merging_and_equality() -> None:
    """Repeated terms merge, zero terms vanish, and order does not matter."""
    register = QubitRegister.named("q", 2)
    zz = PauliOperator.z_on(register, [0, 1])
    x0 = PauliOperator.x_on(register, [0])
    h1 = PauliHamiltonian(register, [(-1, zz), (Fraction(1, 2), x0), (Fraction(-1, 2), x0)])
    h2 = PauliHamiltonian(register, [(-1, zz)])
    assert len(h1) == 1
    assert h1 == h2
    assert hamiltonian_equal(h1.add_term(-1, x0), PauliHamiltonian(register, [(-1, x0), (-1, zz)]))
    assert h1.coefficient_of(zz) == -1
    assert h1.coefficient_of(x0) == 0
    table = (h1 + PauliHamiltonian(register, [(2, x0)])).to_table()
    assert list(table.columns) == ["coefficient", "operator", "weight"]
    assert len(table) == 2


def test_ground_space_dimension() -> None:
    """The 3-qubit repetition Hamiltonian has a 2-dimensional ground space."""
    register = QubitRegister.named("q", 3)
    h = PauliHamiltonian(register, [(-1, PauliOperator.z_on(register, [i, (i + 1) % 3])) for i in range(3)])
    assert ground_space_log2_dim(h) == 1


def test_symplectic_maps() -> None:
    """CNOT and Hadamard preserve commutation; compose and inverse behave."""
    register = QubitRegister.named("q", 2)
    cnot = _cnot(register, 0, 1)
    assert apply_map(cnot, PauliOperator.x_on(register, [0])) == PauliOperator.x_on(register, [0, 1])
    assert apply_map(cnot, PauliOperator.z_on(register, [1])) == PauliOperator.z_on(register, [0, 1])
    assert compose(cnot, cnot).is_identity()
    assert cnot.inverse() == cnot

    h = hadamard_map(register, [1])
    both = compose(cnot, h)
    # CNOT first, then Hadamard on the target
    assert apply_map(both, PauliOperator.x_on(register, [0])) == PauliOperator.from_parts(register, [0], [1])
    assert compose(both, both.inverse()).is_identity()
    table = cnot.image_table()
    assert len(table) == 4
    assert table.loc[0, "image"] == "X:q[0] X:q[1]"


def test_symplectic_violation() -> None:
    """Images that break commutation relations are rejected."""
    register = QubitRegister.named("q", 2)
    x_images = [PauliOperator.x_on(register, [0]), PauliOperator.x_on(register, [0])]
    z_images = [PauliOperator.z_on(register, [0]), PauliOperator.z_on(register, [1])]
    with pytest.raises(SymplecticViolationError):
        SymplecticMap.from_images(register, register, x_images, z_images)


def test_hamiltonian_transform() -> None:
    """Conjugating the transverse-field pair by Hadamard swaps X and Z terms."""
    register = QubitRegister.named("q", 2)
    h = PauliHamiltonian(register, [(-1, PauliOperator.z_on(register, [0, 1])),
                                    (-1, PauliOperator.x_on(register, [0]))])
    swapped = h.transform(hadamard_map(register))
    assert swapped == h.hadamard()
    assert swapped.coefficient_of(PauliOperator.x_on(register, [0, 1])) == -1
    assert np.array_equal(hadamard_map(register).matrix.to_dense(),
                          np.block([[np.zeros((2, 2)), np.eye(2)], [np.eye(2), np.zeros((2, 2))]]))
