"""
Classical LDPC codes for the CodeGauging System.

A code is stored as its map delta: an n x m GF(2) matrix with bits on rows and
checks on columns, entry (i, a) = 1 iff bit i belongs to check a. Logicals are
Ker(delta^T) over bits, redundancies are Ker(delta) over checks.
"""
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, List, NamedTuple, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from utils.errors import CodeGaugingError, DimensionMismatchError
from utils.gf2 import (DEFAULT_BLOCK_BITS, DEFAULT_CAP, GF2Matrix, GF2Vector, SearchResult,
                       kernel_basis, rank, rref, search_coset)
from utils.pauli import PauliHamiltonian, PauliOperator, QubitRegister

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CodeParameters:
    """Code parameters [n, k, d] plus the redundancy dimension kT."""
    n: int
    k: int
    kT: int
    d: Optional[int] = None
    d_upper: Optional[int] = None
    d_reason: Optional[str] = None

    def __str__(self) -> str:
        d = self.d if self.d is not None else "?"
        return f"[{self.n},{self.k},{d}]"

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "k": self.k, "kT": self.kT, "d": self.d,
                "d_upper": self.d_upper, "d_reason": self.d_reason, "label": str(self)}


class LDPCProfile(NamedTuple):
    """Maximum check weight, maximum bit degree and any repeated checks."""
    max_check_weight: int
    max_bit_degree: int
    duplicate_checks: List[Tuple[int, int]]

    def as_pair(self) -> Tuple[int, int]:
        return (self.max_check_weight, self.max_bit_degree)


class ClassicalCode:
    """A classical linear code given by its map delta (bits x checks)."""

    def __init__(self, delta: GF2Matrix, bit_labels: Optional[Sequence[str]] = None,
                 check_labels: Optional[Sequence[str]] = None, name: Optional[str] = None):
        if delta.rows < 1:
            raise DimensionMismatchError("a code needs at least one bit")
        empty = np.flatnonzero(delta.column_weights() == 0)
        if empty.size:
            raise CodeGaugingError(f"check {int(empty[0])} acts on no bits")
        if bit_labels is not None and len(bit_labels) != delta.rows:
            raise DimensionMismatchError("one label per bit required")
        if check_labels is not None and len(check_labels) != delta.cols:
            raise DimensionMismatchError("one label per check required")
        self._delta = delta
        self.bit_labels = list(bit_labels) if bit_labels is not None else None
        self.check_labels = list(check_labels) if check_labels is not None else None
        self.name = name or "code"

    @property
    def delta(self) -> GF2Matrix:
        return self._delta

    @property
    def n(self) -> int:
        return self._delta.rows

    @property
    def m(self) -> int:
        return self._delta.cols

    @cached_property
    def delta_T(self) -> GF2Matrix:
        return self._delta.transpose()

    @cached_property
    def rank(self) -> int:
        return rank(self._delta)

    @property
    def k(self) -> int:
        return self.n - self.rank

    @property
    def kT(self) -> int:
        return self.m - self.rank

    @cached_property
    def logicals_basis(self) -> List[GF2Vector]:
        """Basis of Ker(delta^T): spin-flip sets that commute with every check."""
        return kernel_basis(self.delta_T)

    @cached_property
    def redundancy_basis(self) -> List[GF2Vector]:
        """Basis of Ker(delta): check sets whose product is the identity."""
        return kernel_basis(self._delta)

    @cached_property
    def _info_basis(self) -> Tuple[List[int], List[GF2Vector]]:
        if not self.logicals_basis:
            return [], []
        reduced, pivots = rref(GF2Matrix.from_rows(self.logicals_basis))
        return pivots, [reduced.row(r) for r in range(len(pivots))]

    def check_support(self, a: int) -> List[int]:
        """delta(a): the bits in check a."""
        return self._delta.column_support(a)

    def bit_checks(self, i: int) -> List[int]:
        """delta^T(i): the checks containing bit i."""
        return self._delta.row_support(i)

    def parameters(self, cap: int = DEFAULT_CAP, threads: int = 1, block_bits: int = DEFAULT_BLOCK_BITS,
                   show_progress: bool = False) -> CodeParameters:
        result = distance_search(self, cap, threads, block_bits=block_bits, show_progress=show_progress)
        d_upper = None
        if not result.found and self.logicals_basis:
            d_upper = min(v.weight() for v in self.logicals_basis)
        return CodeParameters(self.n, self.k, self.kT, result.value, d_upper, result.reason)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ClassicalCode):
            return NotImplemented
        return self._delta == other.delta

    def __hash__(self) -> int:
        return hash(self._delta)

    def __repr__(self) -> str:
        return f"ClassicalCode({self.name}, n={self.n}, m={self.m})"


def logicals_basis(c: ClassicalCode) -> List[GF2Vector]:
    return c.logicals_basis


def redundancy_basis(c: ClassicalCode) -> List[GF2Vector]:
    return c.redundancy_basis


def canonical_info_bits(c: ClassicalCode) -> List[int]:
    """Bits i_lambda that each meet exactly one canonical logical.

    The logical basis is brought to reduced row echelon form; its pivot columns are
    the information bits and pairing <i_lambda | Sigma_lambda'> is the identity.
    """
    return list(c._info_basis[0])


def canonical_logicals(c: ClassicalCode) -> List[GF2Vector]:
    """The reduced logical basis matching canonical_info_bits."""
    return list(c._info_basis[1])


def distance_search(c: ClassicalCode, cap: int = DEFAULT_CAP, threads: int = 1,
                    strategy: str = "auto", block_bits: int = DEFAULT_BLOCK_BITS,
                    show_progress: bool = False) -> SearchResult:
    """Exact distance with an explicit reason when it cannot be given."""
    if c.k == 0:
        return SearchResult(None, None, "k=0")
    span = GF2Matrix.from_columns(c.logicals_basis, c.n)
    return search_coset(GF2Vector.zeros(c.n), span, cap, threads, exclude_zero=True, strategy=strategy,
                        block_bits=block_bits, show_progress=show_progress)


def distance(c: ClassicalCode, cap: int = DEFAULT_CAP, threads: int = 1,
             strategy: str = "auto") -> Optional[int]:
    """Minimum weight of a nonzero codeword, or None (k = 0 or budget exceeded)."""
    return distance_search(c, cap, threads, strategy).value


def min_weight_logical(c: ClassicalCode, cap: int = DEFAULT_CAP, threads: int = 1) -> SearchResult:
    """Lightest nonzero logical; ties go to the lexicographically smallest support."""
    return distance_search(c, cap, threads)


def transpose_code(c: ClassicalCode) -> ClassicalCode:
    """Swap the roles of bits and checks."""
    return ClassicalCode(c.delta_T, bit_labels=c.check_labels, check_labels=c.bit_labels,
                         name=f"{c.name}^T")


def ldpc_profile(c: ClassicalCode) -> LDPCProfile:
    weights = c.delta.column_weights()
    degrees = c.delta.row_weights()
    seen: Dict[bytes, int] = {}
    duplicates = []
    for a, col in enumerate(c.delta_T.words):
        key = col.tobytes()
        if key in seen:
            duplicates.append((seen[key], a))
        else:
            seen[key] = a
    if duplicates:
        logger.info(f"{c.name}: {len(duplicates)} duplicate check(s)")
    return LDPCProfile(int(weights.max(initial=0)), int(degrees.max(initial=0)), duplicates)


def bit_register(c: ClassicalCode, prefix: str = "sigma") -> QubitRegister:
    return QubitRegister.named(prefix, c.n)


def check_operator(c: ClassicalCode, a: int, register: Optional[QubitRegister] = None) -> PauliOperator:
    """C_a as a Z-string on the bits."""
    register = register or bit_register(c)
    return PauliOperator.z_on(register, c.check_support(a))


def classical_hamiltonian(c: ClassicalCode, J=1) -> PauliHamiltonian:
    """H = -J sum_a C_a."""
    register = bit_register(c)
    return PauliHamiltonian(register, [(-J, check_operator(c, a, register)) for a in range(c.m)])


def transverse_field_hamiltonian(c: ClassicalCode, J=1, g=1) -> PauliHamiltonian:
    """H = -J sum_a C_a - g sum_i sigma_i^x."""
    register = bit_register(c)
    terms = [(-J, check_operator(c, a, register)) for a in range(c.m)]
    terms += [(-g, PauliOperator.x_on(register, [i])) for i in range(c.n)]
    return PauliHamiltonian(register, terms)


def tanner_graph(c: ClassicalCode) -> nx.Graph:
    """Bipartite Tanner graph: bit nodes "b<i>", check nodes "c<a>"."""
    graph = nx.Graph(name=c.name)
    for i in range(c.n):
        graph.add_node(f"b{i}", bipartite=0, kind="bit",
                       label=c.bit_labels[i] if c.bit_labels else str(i))
    for a in range(c.m):
        graph.add_node(f"c{a}", bipartite=1, kind="check",
                       label=c.check_labels[a] if c.check_labels else str(a))
    graph.add_edges_from((f"b{i}", f"c{a}") for i, a in c.delta.to_sparse())
    return graph


def tanner_graph_json(c: ClassicalCode) -> Dict[str, Any]:
    return nx.node_link_data(tanner_graph(c))
