"""
Z2 chain complexes for the CodeGauging System.

A complex of length D stores its boundary maps as [delta_D, ..., delta_1], where
delta_q sends level-q chains to level-(q-1) chains and has shape
|V_{q-1}| x |V_q|. A classical code is the one-map complex delta_1 = delta with
bits at level 0 and checks at level 1; a CSS code is a two-map complex with
X-checks, qubits and Z-checks at levels 0, 1 and 2.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, NamedTuple, Optional, Sequence

import networkx as nx
import numpy as np

from utils.classical_code import ClassicalCode
from utils.errors import ChainComplexError, DimensionMismatchError, NotARedundancyError
from utils.gf2 import (GF2Matrix, GF2Vector, IncrementalBasis, column_space_basis, kernel_basis,
                       rank, search_coset, span_elements_up_to)

logger = logging.getLogger(__name__)

REPRESENTATIVE_CAP = 1 << 20
KERNEL_SCAN_BITS = 20


@dataclass
class HomologySummary:
    """Dimensions and class representatives of one (co)homology group."""
    level: int
    dim_cycles: int
    dim_boundaries: int
    betti: int
    representatives: List[GF2Vector] = field(default_factory=list)
    minimal: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return {
            "level": self.level,
            "dim_cycles": self.dim_cycles,
            "dim_boundaries": self.dim_boundaries,
            "betti": self.betti,
            "representatives": [v.support() for v in self.representatives],
            "minimal": self.minimal,
        }


class ChainComplex:
    """An ordered list of GF(2) boundary maps [delta_D, ..., delta_1]."""

    def __init__(self, maps: Sequence[GF2Matrix], labels: Optional[Sequence[Sequence[str]]] = None,
                 strict: bool = True):
        maps = list(maps)
        if not maps:
            raise DimensionMismatchError("a chain complex needs at least one map")
        for upper, lower in zip(maps, maps[1:]):
            # upper = delta_{q+1}, lower = delta_q
            if lower.cols != upper.rows:
                raise DimensionMismatchError(
                    f"adjacent maps {lower.shape} and {upper.shape} do not compose")
        self._maps = maps
        self.labels = [list(level) for level in labels] if labels is not None else None
        if self.labels is not None and [len(l) for l in self.labels] != self.level_sizes:
            raise DimensionMismatchError("one label list per level, matching level sizes")
        if strict and not validate(self):
            raise ChainComplexError("boundary maps do not compose to zero")

    @property
    def maps(self) -> List[GF2Matrix]:
        return list(self._maps)

    @property
    def D(self) -> int:
        return len(self._maps)

    @property
    def level_sizes(self) -> List[int]:
        """[|V_0|, |V_1|, ..., |V_D|]."""
        sizes = [self._maps[-1].rows]
        sizes += [self.boundary(q).cols for q in range(1, self.D + 1)]
        return sizes

    def boundary(self, q: int) -> GF2Matrix:
        """delta_q; the zero map for q = 0 and q = D + 1."""
        if q == 0:
            return GF2Matrix.zeros(0, self._maps[-1].rows)
        if q == self.D + 1:
            return GF2Matrix.zeros(self._maps[0].cols, 0)
        if not 1 <= q <= self.D:
            raise DimensionMismatchError(f"level {q} outside 0..{self.D + 1}")
        return self._maps[self.D - q]

    def cycles_basis(self, q: int) -> List[GF2Vector]:
        return kernel_basis(self.boundary(q))

    def boundaries_basis(self, q: int) -> List[GF2Vector]:
        upper = self.boundary(q + 1)
        return column_space_basis(upper) if upper.cols else []

    def cocycles_basis(self, q: int) -> List[GF2Vector]:
        return kernel_basis(self.boundary(q + 1).transpose())

    def coboundaries_basis(self, q: int) -> List[GF2Vector]:
        lower = self.boundary(q)
        return column_space_basis(lower.transpose()) if lower.rows else []

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            "schema": 1,
            "kind": "complex",
            "level_sizes": self.level_sizes,
            "maps": [{"level": q, "rows": self.boundary(q).rows, "cols": self.boundary(q).cols,
                      "entries": [list(e) for e in self.boundary(q).to_sparse()]}
                     for q in range(self.D, 0, -1)],
            "labels": self.labels,
        }

    @classmethod
    def from_json_dict(cls, data: Dict[str, Any]) -> "ChainComplex":
        maps = sorted(data["maps"], key=lambda item: -item["level"])
        matrices = [GF2Matrix.from_sparse(m["rows"], m["cols"], [tuple(e) for e in m["entries"]])
                    for m in maps]
        return cls(matrices, data.get("labels"))

    def hasse_diagram(self) -> nx.DiGraph:
        """Cells as nodes "q:i", edges from each cell to its boundary cells."""
        graph = nx.DiGraph()
        for q, size in enumerate(self.level_sizes):
            graph.add_nodes_from((f"{q}:{i}" for i in range(size)), level=q)
        for q in range(1, self.D + 1):
            graph.add_edges_from((f"{q}:{j}", f"{q - 1}:{i}") for i, j in self.boundary(q).to_sparse())
        return graph

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChainComplex):
            return NotImplemented
        return self._maps == other.maps

    def __repr__(self) -> str:
        return f"ChainComplex(D={self.D}, levels={self.level_sizes})"


def from_classical_code(c: ClassicalCode) -> ChainComplex:
    return ChainComplex([c.delta])


def validate(cc: ChainComplex) -> bool:
    """True iff delta_q delta_{q+1} = 0 for every q."""
    for q in range(1, cc.D):
        if not cc.boundary(q).matmul(cc.boundary(q + 1)).is_zero():
            return False
    return True


def _summarize(level: int, closed: GF2Matrix, exact: GF2Matrix, cap: int) -> HomologySummary:
    """Ker(closed) modulo Im(exact), with representatives completing the image basis."""
    cycles = kernel_basis(closed)
    exact_basis = column_space_basis(exact) if exact.cols else []
    basis = IncrementalBasis(closed.cols)
    for v in exact_basis:
        basis.add(v)
    reps = [z for z in cycles if basis.add(z)]
    minimal = True
    chosen = []
    for z in reps:
        if not exact_basis:
            chosen.append(z)
            continue
        result = search_coset(z, exact, cap)
        if result.found:
            chosen.append(result.vector)
        else:
            minimal = False
            chosen.append(z)
    return HomologySummary(level, len(cycles), len(exact_basis), len(cycles) - len(exact_basis),
                           chosen, minimal)


def homology(cc: ChainComplex, q: int, cap: int = REPRESENTATIVE_CAP) -> HomologySummary:
    """H_q = Ker(delta_q) / Im(delta_{q+1}).

    Representatives are minimum-weight members of their coset when the boundary
    space is small enough to enumerate (flagged by `minimal`), otherwise the
    basis-completion vectors.
    """
    return _summarize(q, cc.boundary(q), cc.boundary(q + 1), cap)


def cohomology(cc: ChainComplex, q: int, cap: int = REPRESENTATIVE_CAP) -> HomologySummary:
    """H^q = Ker(delta_{q+1}^T) / Im(delta_q^T)."""
    return _summarize(q, cc.boundary(q + 1).transpose(), cc.boundary(q).transpose(), cap)


def dualize(cc: ChainComplex) -> ChainComplex:
    """The dual complex with levels reversed and maps transposed."""
    labels = list(reversed(cc.labels)) if cc.labels is not None else None
    dual = ChainComplex([m.transpose() for m in reversed(cc.maps)], labels)
    assert validate(dual)
    return dual


def pairing(cc: ChainComplex, cycle: GF2Vector, cocycle: GF2Vector, q: int) -> int:
    """Parity of the overlap between a q-cycle and a q-cocycle."""
    size = cc.level_sizes[q]
    if cycle.length != size or cocycle.length != size:
        raise DimensionMismatchError(f"level {q} has {size} cells")
    if not cc.boundary(q).matvec(cycle).is_zero():
        raise ChainComplexError(f"input is not a cycle at level {q}")
    if not cc.boundary(q + 1).transpose().matvec(cocycle).is_zero():
        raise ChainComplexError(f"input is not a cocycle at level {q}")
    return cycle.dot(cocycle)


def attach_local_redundancies(c: ClassicalCode, plaquettes: GF2Matrix,
                              locality_bound: Optional[int] = None) -> ChainComplex:
    """2-complex with delta_1 = c.delta and delta_2 = plaquettes (checks x plaquettes)."""
    if plaquettes.rows != c.m:
        raise DimensionMismatchError(
            f"plaquette matrix has {plaquettes.rows} rows but the code has {c.m} checks")
    if plaquettes.cols:
        residue = c.delta.matmul(plaquettes)
        bad = np.flatnonzero(residue.to_dense().any(axis=0))
        if bad.size:
            raise NotARedundancyError(int(bad[0]))
        if locality_bound is not None:
            heavy = np.flatnonzero(plaquettes.column_weights() > locality_bound)
            if heavy.size:
                logger.warning(f"{heavy.size} plaquette(s) exceed weight {locality_bound}")
    cc = ChainComplex([plaquettes, c.delta])
    logger.info(f"Attached {plaquettes.cols} plaquettes to {c.name}")
    return cc


class RedundancyClassification(NamedTuple):
    """Independent low-weight redundancies and the number of remaining classes."""
    local: List[GF2Vector]
    global_classes: int
    method: str


def _check_overlap_graph(c: ClassicalCode) -> List[List[int]]:
    """Adjacency of checks that share at least one bit."""
    dense = c.delta.to_dense().astype(np.int64)
    shared = (dense.T @ dense) > 0
    np.fill_diagonal(shared, False)
    return [sorted(int(j) for j in np.flatnonzero(row)) for row in shared]


def _connected_check_sets(adjacency: List[List[int]], max_size: int, cap: int):
    """Every connected check set of size <= max_size, each exactly once.

    Standard extension-by-exclusive-neighbourhood enumeration rooted at the
    smallest member; stops after `cap` sets.
    """
    budget = [cap]

    def extend(subset, neighbourhood, extension, root):
        if budget[0] <= 0:
            return
        budget[0] -= 1
        yield subset
        if len(subset) == max_size:
            return
        extension = sorted(extension)
        while extension:
            w = extension.pop(0)
            fresh = [u for u in adjacency[w] if u > root and u not in neighbourhood]
            yield from extend(subset + [w], neighbourhood | set(fresh),
                              set(extension) | set(fresh), root)

    for v in range(len(adjacency)):
        start = [u for u in adjacency[v] if u > v]
        yield from extend([v], {v} | set(adjacency[v]), set(start), v)
        if budget[0] <= 0:
            logger.warning(f"Connected check-set search stopped after {cap} sets")
            return


def _system_spanning(c: ClassicalCode, adjacency: List[List[int]]):
    """Predicate for relations whose extent is comparable to their components.

    A relation qualifies when it touches at least half the bits of its connected
    components, or when its weight squared reaches their number of checks. A
    relation using every check of a component, such as the all-ones relation of
    a ring, always qualifies.
    """
    graph = nx.Graph()
    graph.add_nodes_from(range(c.m))
    graph.add_edges_from((i, j) for i, row in enumerate(adjacency) for j in row if i < j)
    component_of = np.empty(c.m, dtype=np.int64)
    for label, members in enumerate(nx.connected_components(graph)):
        component_of[list(members)] = label
    dense = c.delta.to_dense().astype(bool)

    def spanning(v: GF2Vector) -> bool:
        support = v.support()
        touched = int(dense[:, support].any(axis=1).sum())
        region = np.isin(component_of, np.unique(component_of[support]))
        if len(support) ** 2 >= int(region.sum()):
            return True
        return 2 * touched >= int(dense[:, region].any(axis=1).sum())

    return spanning


def classify_redundancies(c: ClassicalCode, locality_bound: int = 8,
                          cap: int = 1 << 22) -> RedundancyClassification:
    """Greedy independent redundancies of support <= locality_bound.

    Relations whose extent is comparable to their connected components stay in
    the global classes whatever the bound, so the all-ones relation of a ring and
    the lines of plaquette Ising are never local.

    Candidates are visited by increasing weight, then lexicographic support. When
    2^kT is small the whole redundancy space is scanned; otherwise candidates come
    from connected check sets, which contain every minimal redundancy.
    """
    if locality_bound < 1:
        raise ValueError("locality_bound must be at least 1")
    if c.kT == 0:
        return RedundancyClassification([], 0, "none")
    adjacency = _check_overlap_graph(c)
    if c.kT <= KERNEL_SCAN_BITS:
        method = "kernel-scan"
        candidates = span_elements_up_to(c.redundancy_basis, c.m, locality_bound)
    else:
        method = "connected-sets"
        columns = c.delta_T.words
        candidates = []
        for subset in _connected_check_sets(adjacency, locality_bound, cap):
            acc = np.bitwise_xor.reduce(columns[subset], axis=0)
            if not acc.any():
                candidates.append(GF2Vector.from_support(c.m, subset))
    spanning = _system_spanning(c, adjacency)
    candidates = [v for v in candidates if not spanning(v)]
    candidates.sort(key=lambda v: (v.weight(), tuple(v.support())))
    basis = IncrementalBasis(c.m)
    local = [v for v in candidates if basis.add(v)]
    logger.info(f"{c.name}: {len(local)} local redundancies (bound {locality_bound}), "
                f"{c.kT - len(local)} global class(es) via {method}")
    return RedundancyClassification(local, c.kT - len(local), method)


def rank_identity_betti(cc: ChainComplex) -> int:
    """n_1 - rank(delta_1) - rank(delta_2) for a two-map complex."""
    return cc.level_sizes[1] - rank(cc.boundary(1)) - rank(cc.boundary(2))
