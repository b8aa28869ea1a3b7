"""
Phase-free Pauli algebra for the CodeGauging System.

Operators are pairs of GF(2) vectors (x-part, z-part) over a labelled qubit
register. Signs and phases of products are not tracked: every Hamiltonian handled
here is a sum of real Pauli strings whose signs live on the coefficients, and
every duality is fixed by its generator images.
"""
import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from utils.errors import (CodeGaugingError, DimensionMismatchError, NonCommutingError,
                          SymplecticViolationError)
from utils.gf2 import GF2Matrix, GF2Vector, rank

logger = logging.getLogger(__name__)

Coefficient = Union[int, Fraction, str]


class QubitRegister:
    """Ordered, uniquely labelled set of qubits."""

    __slots__ = ("_labels", "_index")

    def __init__(self, labels: Sequence[str]):
        labels = tuple(labels)
        index = {label: i for i, label in enumerate(labels)}
        if len(index) != len(labels):
            raise CodeGaugingError("qubit labels must be unique")
        self._labels = labels
        self._index = index

    @classmethod
    def named(cls, prefix: str, count: int) -> "QubitRegister":
        """Register with labels prefix[0] ... prefix[count-1]."""
        return cls([f"{prefix}[{i}]" for i in range(count)])

    @property
    def labels(self) -> Tuple[str, ...]:
        return self._labels

    @property
    def size(self) -> int:
        return len(self._labels)

    def __len__(self) -> int:
        return len(self._labels)

    def index_of(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise DimensionMismatchError(f"qubit {label!r} is not in the register") from None

    def __contains__(self, label: str) -> bool:
        return label in self._index

    def block(self, prefix: str) -> List[int]:
        """Indices of all qubits labelled prefix[...], in register order."""
        head = prefix + "["
        return [i for i, label in enumerate(self._labels) if label.startswith(head)]

    def concat(self, other: "QubitRegister") -> "QubitRegister":
        return QubitRegister(self._labels + other.labels)

    __add__ = concat

    def subregister(self, indices: Sequence[int]) -> "QubitRegister":
        return QubitRegister([self._labels[i] for i in indices])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QubitRegister):
            return NotImplemented
        return self._labels == other.labels

    def __hash__(self) -> int:
        return hash(self._labels)

    def __repr__(self) -> str:
        return f"QubitRegister(size={self.size})"


class PauliOperator:
    """A Pauli string X^x Z^z on a register, up to sign."""

    __slots__ = ("_register", "_x", "_z")

    def __init__(self, register: QubitRegister, x: GF2Vector, z: GF2Vector):
        if x.length != register.size or z.length != register.size:
            raise DimensionMismatchError(
                f"parts of length {x.length}/{z.length} on a register of size {register.size}")
        self._register = register
        self._x = x
        self._z = z

    @classmethod
    def identity(cls, register: QubitRegister) -> "PauliOperator":
        zero = GF2Vector.zeros(register.size)
        return cls(register, zero, zero)

    @classmethod
    def x_on(cls, register: QubitRegister, support: Iterable[int]) -> "PauliOperator":
        return cls(register, GF2Vector.from_support(register.size, support), GF2Vector.zeros(register.size))

    @classmethod
    def z_on(cls, register: QubitRegister, support: Iterable[int]) -> "PauliOperator":
        return cls(register, GF2Vector.zeros(register.size), GF2Vector.from_support(register.size, support))

    @classmethod
    def from_parts(cls, register: QubitRegister, x_support: Iterable[int] = (),
                   z_support: Iterable[int] = ()) -> "PauliOperator":
        return cls(register, GF2Vector.from_support(register.size, x_support),
                   GF2Vector.from_support(register.size, z_support))

    @classmethod
    def from_symplectic(cls, register: QubitRegister, v: GF2Vector) -> "PauliOperator":
        n = register.size
        bits = v.bits()
        return cls(register, GF2Vector.from_bits(bits[:n]), GF2Vector.from_bits(bits[n:]))

    @property
    def register(self) -> QubitRegister:
        return self._register

    @property
    def x(self) -> GF2Vector:
        return self._x

    @property
    def z(self) -> GF2Vector:
        return self._z

    def symplectic(self) -> GF2Vector:
        return self._x.concat(self._z)

    def support(self) -> List[int]:
        return sorted(set(self._x.support()) | set(self._z.support()))

    def weight(self) -> int:
        return len(self.support())

    def is_identity(self) -> bool:
        return self._x.is_zero() and self._z.is_zero()

    def _check(self, other: "PauliOperator") -> None:
        if self._register != other.register:
            raise DimensionMismatchError("operators act on different registers")

    def __mul__(self, other: "PauliOperator") -> "PauliOperator":
        self._check(other)
        return PauliOperator(self._register, self._x + other.x, self._z + other.z)

    multiply = __mul__

    def commutes_with(self, other: "PauliOperator") -> bool:
        return commute(self, other) == 0

    def hadamard(self, indices: Optional[Iterable[int]] = None) -> "PauliOperator":
        """Swap X and Z on `indices` (all qubits by default)."""
        if indices is None:
            return PauliOperator(self._register, self._z, self._x)
        mask = GF2Vector.from_support(self._register.size, set(indices))
        swap = (self._x + self._z) & mask
        return PauliOperator(self._register, self._x + swap, self._z + swap)

    def restrict(self, indices: Sequence[int]) -> "PauliOperator":
        """Restriction to the qubits `indices`, on the corresponding subregister."""
        xb, zb = self._x.bits(), self._z.bits()
        idx = list(indices)
        return PauliOperator(self._register.subregister(idx),
                             GF2Vector.from_bits(xb[idx]), GF2Vector.from_bits(zb[idx]))

    def embed(self, target: QubitRegister) -> "PauliOperator":
        """The same operator on a larger register, matched by qubit label."""
        where = [target.index_of(label) for label in self._register.labels]
        xs = [where[i] for i in self._x.support()]
        zs = [where[i] for i in self._z.support()]
        return PauliOperator(target, GF2Vector.from_support(target.size, xs),
                             GF2Vector.from_support(target.size, zs))

    def relabel(self, register: QubitRegister) -> "PauliOperator":
        """The same bit pattern on another register of equal size."""
        if register.size != self._register.size:
            raise DimensionMismatchError("relabelling needs a register of the same size")
        return PauliOperator(register, self._x, self._z)

    def sort_key(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        return (tuple(self._x.support()), tuple(self._z.support()))

    def to_text(self, labels: bool = False) -> str:
        """Sparse text form such as "X3 Z7 Y9"; "I" for the identity."""
        xs, zs = set(self._x.support()), set(self._z.support())
        parts = []
        for i in sorted(xs | zs):
            letter = "Y" if (i in xs and i in zs) else ("X" if i in xs else "Z")
            parts.append(f"{letter}:{self._register.labels[i]}" if labels else f"{letter}{i}")
        return " ".join(parts) if parts else "I"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PauliOperator):
            return NotImplemented
        return self._register == other.register and self._x == other.x and self._z == other.z

    def __hash__(self) -> int:
        return hash((self._x, self._z))

    def __repr__(self) -> str:
        return f"PauliOperator({self.to_text()})"


def commute(p: PauliOperator, q: PauliOperator) -> int:
    """0 if p and q commute, 1 if they anticommute."""
    if p.register != q.register:
        raise DimensionMismatchError("operators act on different registers")
    return (p.x.dot(q.z) + p.z.dot(q.x)) & 1


def _stack(ops: Sequence[PauliOperator], part: str) -> np.ndarray:
    return np.stack([getattr(op, part).bits() for op in ops]).astype(np.int64)


def commutation_matrix(ops_a: Sequence[PauliOperator], ops_b: Sequence[PauliOperator]) -> np.ndarray:
    """Matrix of commute(a, b) for all pairs, computed in one product."""
    if not ops_a or not ops_b:
        return np.zeros((len(ops_a), len(ops_b)), dtype=np.uint8)
    register = ops_a[0].register
    for op in list(ops_a) + list(ops_b):
        if op.register != register:
            raise DimensionMismatchError("operators act on different registers")
    xa, za = _stack(ops_a, "x"), _stack(ops_a, "z")
    xb, zb = _stack(ops_b, "x"), _stack(ops_b, "z")
    return ((xa @ zb.T + za @ xb.T) & 1).astype(np.uint8)


def first_anticommuting_pair(ops_a: Sequence[PauliOperator],
                             ops_b: Sequence[PauliOperator]) -> Optional[Tuple[int, int]]:
    hits = np.argwhere(commutation_matrix(ops_a, ops_b))
    if hits.size == 0:
        return None
    return int(hits[0][0]), int(hits[0][1])


def symplectic_matrix(ops: Sequence[PauliOperator]) -> GF2Matrix:
    """Rows (x | z) of the given operators."""
    if not ops:
        return GF2Matrix.zeros(0, 0)
    return GF2Matrix.from_rows([op.symplectic() for op in ops])


def stabilizer_group_rank(ops: Sequence[PauliOperator]) -> int:
    """Number of independent generators among commuting Pauli operators."""
    ops = list(ops)
    if not ops:
        return 0
    pair = first_anticommuting_pair(ops, ops)
    if pair is not None:
        raise NonCommutingError(*pair)
    return rank(symplectic_matrix(ops))


def _as_fraction(value: Coefficient) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


class PauliHamiltonian:
    """A real linear combination of Pauli strings with rational coefficients.

    Terms with the same operator are merged and zero coefficients dropped; the
    term list is kept in canonical order so equality is a tuple comparison.
    """

    def __init__(self, register: QubitRegister,
                 terms: Iterable[Tuple[Coefficient, PauliOperator]] = ()):
        merged: Dict[PauliOperator, Fraction] = {}
        for coefficient, op in terms:
            if op.register != register:
                raise DimensionMismatchError("term acts on a different register")
            merged[op] = merged.get(op, Fraction(0)) + _as_fraction(coefficient)
        self._register = register
        self._terms = tuple(sorted(((c, op) for op, c in merged.items() if c != 0),
                                   key=lambda t: (t[1].sort_key(), t[0])))

    @property
    def register(self) -> QubitRegister:
        return self._register

    @property
    def terms(self) -> Tuple[Tuple[Fraction, PauliOperator], ...]:
        return self._terms

    @property
    def operators(self) -> List[PauliOperator]:
        return [op for _, op in self._terms]

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other: "PauliHamiltonian") -> "PauliHamiltonian":
        if self._register != other.register:
            raise DimensionMismatchError("Hamiltonians act on different registers")
        return PauliHamiltonian(self._register, self._terms + other.terms)

    def add_term(self, coefficient: Coefficient, op: PauliOperator) -> "PauliHamiltonian":
        return PauliHamiltonian(self._register, self._terms + ((coefficient, op),))

    def coefficient_of(self, op: PauliOperator) -> Fraction:
        for c, term in self._terms:
            if term == op:
                return c
        return Fraction(0)

    def transform(self, m: "SymplecticMap") -> "PauliHamiltonian":
        """Conjugate every term by a Clifford map."""
        return PauliHamiltonian(m.target, [(c, apply_map(m, op)) for c, op in self._terms])

    def hadamard(self, indices: Optional[Iterable[int]] = None) -> "PauliHamiltonian":
        idx = None if indices is None else list(indices)
        return PauliHamiltonian(self._register, [(c, op.hadamard(idx)) for c, op in self._terms])

    def restrict_to(self, indices: Sequence[int]) -> "PauliHamiltonian":
        """Terms supported inside `indices`, rewritten on that subregister."""
        keep = set(indices)
        idx = list(indices)
        sub = self._register.subregister(idx)
        return PauliHamiltonian(sub, [(c, op.restrict(idx)) for c, op in self._terms
                                      if set(op.support()) <= keep])

    def embed(self, target: QubitRegister) -> "PauliHamiltonian":
        return PauliHamiltonian(target, [(c, op.embed(target)) for c, op in self._terms])

    def relabel(self, register: QubitRegister) -> "PauliHamiltonian":
        return PauliHamiltonian(register, [(c, op.relabel(register)) for c, op in self._terms])

    def to_table(self, labels: bool = False) -> pd.DataFrame:
        return pd.DataFrame({
            "coefficient": [str(c) for c, _ in self._terms],
            "operator": [op.to_text(labels) for _, op in self._terms],
            "weight": [op.weight() for _, op in self._terms],
        })

    def to_dict(self) -> List[Dict[str, str]]:
        return [{"coefficient": str(c), "operator": op.to_text()} for c, op in self._terms]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PauliHamiltonian):
            return NotImplemented
        return hamiltonian_equal(self, other)

    def __repr__(self) -> str:
        return f"PauliHamiltonian({len(self._terms)} terms on {self._register.size} qubits)"


def hamiltonian_equal(h1: PauliHamiltonian, h2: PauliHamiltonian) -> bool:
    """True iff both merged, canonically sorted term lists coincide."""
    return h1.register == h2.register and h1.terms == h2.terms


def ground_space_log2_dim(h: PauliHamiltonian) -> int:
    """log2 of the ground-space dimension of a commuting Pauli Hamiltonian."""
    ops = h.operators
    if any(c > 0 for c, _ in h.terms):
        logger.debug("Hamiltonian has positive coefficients; counting stabilizer rank anyway")
    return h.register.size - stabilizer_group_rank(ops)


def _omega(size: int) -> np.ndarray:
    eye = np.eye(size, dtype=np.int64)
    zero = np.zeros((size, size), dtype=np.int64)
    return np.block([[zero, eye], [eye, zero]])


class SymplecticMap:
    """A Clifford map given by the images of the single-qubit generators.

    Row j of `matrix` is the symplectic vector of the image of X_j, row N + j the
    image of Z_j. An operator with symplectic row vector v maps to v S. The form
    S Omega S^T = Omega is checked at construction.
    """

    def __init__(self, source: QubitRegister, target: QubitRegister, matrix: GF2Matrix):
        size = source.size
        if target.size != size:
            raise DimensionMismatchError(
                f"source has {size} qubits but target has {target.size}")
        if matrix.shape != (2 * size, 2 * size):
            raise DimensionMismatchError(f"expected a {2 * size}x{2 * size} matrix, got {matrix.shape}")
        dense = matrix.to_dense().astype(np.int64)
        omega = _omega(size)
        if not np.array_equal((dense @ omega @ dense.T) & 1, omega):
            raise SymplecticViolationError("generator images do not preserve the symplectic form")
        self._source = source
        self._target = target
        self._matrix = matrix
        self._dense = dense

    @classmethod
    def from_images(cls, source: QubitRegister, target: QubitRegister,
                    x_images: Sequence[PauliOperator], z_images: Sequence[PauliOperator]) -> "SymplecticMap":
        if len(x_images) != source.size or len(z_images) != source.size:
            raise DimensionMismatchError("need one X image and one Z image per source qubit")
        for op in list(x_images) + list(z_images):
            if op.register != target:
                raise DimensionMismatchError("generator image is not on the target register")
        rows = [op.symplectic() for op in list(x_images) + list(z_images)]
        matrix = GF2Matrix.from_rows(rows, 2 * source.size) if rows else GF2Matrix.zeros(0, 0)
        return cls(source, target, matrix)

    @classmethod
    def identity(cls, register: QubitRegister) -> "SymplecticMap":
        return cls(register, register, GF2Matrix.identity(2 * register.size))

    @property
    def source(self) -> QubitRegister:
        return self._source

    @property
    def target(self) -> QubitRegister:
        return self._target

    @property
    def matrix(self) -> GF2Matrix:
        return self._matrix

    def x_image(self, j: int) -> PauliOperator:
        return PauliOperator.from_symplectic(self._target, self._matrix.row(j))

    def z_image(self, j: int) -> PauliOperator:
        return PauliOperator.from_symplectic(self._target, self._matrix.row(self._source.size + j))

    def inverse(self) -> "SymplecticMap":
        omega = _omega(self._source.size)
        inv = (omega @ self._dense.T @ omega) & 1
        return SymplecticMap(self._target, self._source, GF2Matrix.from_dense(inv))

    def is_identity(self) -> bool:
        return self._source == self._target and \
            np.array_equal(self._dense, np.eye(2 * self._source.size, dtype=np.int64))

    def image_table(self, labels: bool = True) -> pd.DataFrame:
        """One row per generator: name and image in sparse text form."""
        names, images = [], []
        for j, label in enumerate(self._source.labels):
            names.append(f"X:{label}")
            images.append(self.x_image(j).to_text(labels))
        for j, label in enumerate(self._source.labels):
            names.append(f"Z:{label}")
            images.append(self.z_image(j).to_text(labels))
        return pd.DataFrame({"generator": names, "image": images})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymplecticMap):
            return NotImplemented
        return (self._source == other.source and self._target == other.target
                and self._matrix == other.matrix)

    def __repr__(self) -> str:
        return f"SymplecticMap({self._source.size} qubits)"


def apply_map(m: SymplecticMap, p: PauliOperator) -> PauliOperator:
    """Image of p under m, by linear extension over the generator images."""
    if p.register != m.source:
        raise DimensionMismatchError("operator is not on the map's source register")
    v = p.symplectic().bits().astype(np.int64)
    image = (v @ m._dense) & 1
    return PauliOperator.from_symplectic(m.target, GF2Vector.from_bits(image))


def compose(m1: SymplecticMap, m2: SymplecticMap) -> SymplecticMap:
    """The map that applies m1 first and then m2."""
    if m1.target != m2.source:
        raise DimensionMismatchError("first map's target is not the second map's source")
    product = (m1.matrix.to_dense().astype(np.int64) @ m2.matrix.to_dense().astype(np.int64)) & 1
    return SymplecticMap(m1.source, m2.target, GF2Matrix.from_dense(product))


def hadamard_map(register: QubitRegister, indices: Optional[Iterable[int]] = None) -> SymplecticMap:
    """Hadamard on `indices` (all qubits by default): X and Z swap there."""
    idx = range(register.size) if indices is None else list(indices)
    x_images = [PauliOperator.x_on(register, [j]).hadamard(idx) for j in range(register.size)]
    z_images = [PauliOperator.z_on(register, [j]).hadamard(idx) for j in range(register.size)]
    return SymplecticMap.from_images(register, register, x_images, z_images)
