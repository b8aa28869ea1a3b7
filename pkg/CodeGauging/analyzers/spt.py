"""
SPT Analyzer
Function: Builds cluster-state SPT Hamiltonians from classical codes, the
domain-wall dressing and Kennedy-Tasaki dualities, open-boundary truncations
with their edge operators, and order/disorder parameter supports.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from analyzers.gauging import (ExtendedKW, build_extended_kw, gauge_register, matter_register)
from utils.chain_complex import ChainComplex, classify_redundancies, homology
from utils.classical_code import ClassicalCode, tanner_graph_json
from utils.config_loader import ConfigLoader
from utils.errors import ChainComplexError, CodeGaugingError, DimensionMismatchError, NonCommutingError
from utils.gf2 import GF2Matrix, GF2Vector, rref
from utils.pauli import (PauliHamiltonian, PauliOperator, QubitRegister, SymplecticMap, apply_map,
                         commute, compose, first_anticommuting_pair,
                         ground_space_log2_dim, stabilizer_group_rank)

logger = logging.getLogger(__name__)


def _product(ops: Iterable[PauliOperator], register: QubitRegister) -> PauliOperator:
    result = PauliOperator.identity(register)
    for op in ops:
        result = result * op
    return result


def _require_commuting(ops_a: Sequence[PauliOperator], ops_b: Sequence[PauliOperator]) -> None:
    pair = first_anticommuting_pair(list(ops_a), list(ops_b))
    if pair is not None:
        raise NonCommutingError(*pair)


@dataclass
class ClusterSystem:
    """H_SPT = -sum_a tau_a^z C_a - sum_i sigma_i^x A_i on the Tanner graph of a code."""
    code: ClassicalCode
    register: QubitRegister
    hamiltonian: PauliHamiltonian
    edge_terms: List[PauliOperator]
    vertex_terms: List[PauliOperator]
    x_symmetries: List[PauliOperator]
    z_symmetries: List[PauliOperator]

    @property
    def symmetries(self) -> List[PauliOperator]:
        return self.x_symmetries + self.z_symmetries

    def tau_index(self, a: int) -> int:
        return self.code.n + a

    def gauss_law(self, i: int) -> PauliOperator:
        """G_i = sigma_i^x A_i, the vertex term at bit i."""
        return self.vertex_terms[i]

    def hadamard_frame(self) -> PauliHamiltonian:
        """The same Hamiltonian with tau^x and tau^z exchanged: X_v times Z on the neighbours of v."""
        return self.hamiltonian.hadamard(range(self.code.n, self.code.n + self.code.m))

    def tanner_graph_json(self) -> Dict[str, Any]:
        return tanner_graph_json(self.code)


def build_cluster(c: ClassicalCode) -> ClusterSystem:
    """One commuting term per qubit; symmetries are the logicals of c and of its transpose."""
    n, m = c.n, c.m
    register = matter_register(n) + gauge_register(m)
    edge_terms = [PauliOperator.from_parts(register, (), c.check_support(a) + [n + a]) for a in range(m)]
    vertex_terms = [PauliOperator.x_on(register, [i] + [n + a for a in c.bit_checks(i)]) for i in range(n)]
    hamiltonian = PauliHamiltonian(register, [(-1, op) for op in edge_terms + vertex_terms])
    x_symmetries = [PauliOperator.x_on(register, v.support()) for v in c.logicals_basis]
    z_symmetries = [PauliOperator.z_on(register, [n + a for a in r.support()]) for r in c.redundancy_basis]

    terms = edge_terms + vertex_terms
    if stabilizer_group_rank(terms) != register.size:
        raise ArithmeticError("cluster terms are not independent")
    _require_commuting(x_symmetries + z_symmetries, terms)
    logger.info(f"Cluster system for {c.name}: {register.size} qubits, "
                f"{len(x_symmetries)} + {len(z_symmetries)} symmetry generators")
    return ClusterSystem(c, register, hamiltonian, edge_terms, vertex_terms, x_symmetries, z_symmetries)


def spt_symmetries(c: ClassicalCode) -> Tuple[List[PauliOperator], List[PauliOperator]]:
    """(X_lambda on logicals of c, Z_r on logicals of c^T) on the sigma + tau register."""
    cs = build_cluster(c)
    return cs.x_symmetries, cs.z_symmetries


def trivial_hamiltonian(register: QubitRegister, x_qubits: Sequence[int], z_qubits: Sequence[int]) -> PauliHamiltonian:
    terms = [(-1, PauliOperator.x_on(register, [i])) for i in x_qubits]
    terms += [(-1, PauliOperator.z_on(register, [j])) for j in z_qubits]
    return PauliHamiltonian(register, terms)


def _dressing_map(register: QubitRegister, adjacency: GF2Matrix, column_offset: int) -> SymplecticMap:
    """CNOT circuit from row qubits u to column qubits column_offset + v for each adjacency entry (u, v)."""
    rows, cols = adjacency.shape
    x_images, z_images = [], []
    for u in range(register.size):
        if u < rows:
            x_images.append(PauliOperator.x_on(register, [u] + [column_offset + v for v in adjacency.row_support(u)]))
        else:
            x_images.append(PauliOperator.x_on(register, [u]))
    for u in range(register.size):
        v = u - column_offset
        if 0 <= v < cols:
            z_images.append(PauliOperator.z_on(register, [u] + adjacency.column_support(v)))
        else:
            z_images.append(PauliOperator.z_on(register, [u]))
    return SymplecticMap.from_images(register, register, x_images, z_images)


def dw_map(c: ClassicalCode) -> SymplecticMap:
    """U_DW: sigma_i^x -> sigma_i^x A_i, tau_a^z -> tau_a^z C_a; sigma^z and tau^x fixed."""
    register = matter_register(c.n) + gauge_register(c.m)
    return _dressing_map(register, c.delta, c.n)


def dw_disentangle(cs: ClusterSystem) -> PauliHamiltonian:
    """Conjugate H_SPT by U_DW; the result is checked to be -sum tau^z - sum sigma^x."""
    n, m = cs.code.n, cs.code.m
    result = cs.hamiltonian.transform(dw_map(cs.code))
    expected = trivial_hamiltonian(cs.register, range(n), range(n, n + m))
    if result != expected:
        raise ArithmeticError("domain-wall dressing does not disentangle the cluster Hamiltonian")
    return result


def dressed_flip(cs: ClusterSystem, flips: Iterable[int]) -> PauliOperator:
    """P~_N: image of prod_{i in N} sigma_i^x under U_DW."""
    p = PauliOperator.x_on(cs.register, list(flips))
    return apply_map(dw_map(cs.code), p)


# Extended register (sigma, eta, tau, mu)

@dataclass
class ExtendedDualities:
    """KW, DW and KT maps on sigma + eta + tau + mu, with the Hamiltonians they relate."""
    code: ClassicalCode
    kw: ExtendedKW
    register: QubitRegister
    adjacency: GF2Matrix
    kw_full: SymplecticMap
    dw: SymplecticMap
    kt: SymplecticMap

    @property
    def half(self) -> int:
        return self.kw.source.size

    def eta_index(self, r: int) -> int:
        return self.code.n + r

    def tau_index(self, a: int) -> int:
        return self.half + a

    def modified_check(self, a: int) -> PauliOperator:
        """C^_a as Z over sigma + eta."""
        return PauliOperator.z_on(self.register, self.adjacency.column_support(a))

    def modified_field(self, u: int) -> PauliOperator:
        """A^_u as X over tau + mu for a row u of the (sigma, eta) block."""
        return PauliOperator.x_on(self.register, [self.half + v for v in self.adjacency.row_support(u)])

    def z_symmetry(self, r: int) -> PauliOperator:
        return PauliOperator.z_on(self.register, [self.tau_index(a) for a in self.kw.coupled.basis[r].support()])

    def x_symmetry(self, lam: int) -> PauliOperator:
        return PauliOperator.x_on(self.register, self.kw.logicals[lam].support())


def _extended_adjacency(ext: ExtendedKW) -> GF2Matrix:
    """[delta^ | P] with P linking mu_l to its information bit."""
    size = ext.source.size
    k = len(ext.info_bits)
    links = GF2Matrix.from_sparse(size, k, [(i, lam) for lam, i in enumerate(ext.info_bits)])
    return ext.coupled.modified_delta.hstack(links)


def extended_kw_full(c: ClassicalCode, ext: Optional[ExtendedKW] = None) -> SymplecticMap:
    """KW on the full register: (sigma, eta) go to (tau, mu) and back, an involution."""
    ext = ext or build_extended_kw(c)
    register = ext.source + ext.target
    size = ext.source.size
    x_images, z_images = [], []
    for j in range(size):
        x_images.append(ext.map.x_image(j).embed(register))
        z_images.append(ext.map.z_image(j).embed(register))
    for j in range(size):
        x_images.append(ext.inverse.x_image(j).embed(register))
        z_images.append(ext.inverse.z_image(j).embed(register))
    return SymplecticMap.from_images(register, register, x_images, z_images)


def extended_dw_map(c: ClassicalCode, ext: Optional[ExtendedKW] = None) -> SymplecticMap:
    """U^_DW built from the extended adjacency between (sigma, eta) and (tau, mu)."""
    ext = ext or build_extended_kw(c)
    register = ext.source + ext.target
    return _dressing_map(register, _extended_adjacency(ext), ext.source.size)


def build_extended_dualities(c: ClassicalCode) -> ExtendedDualities:
    ext = build_extended_kw(c)
    register = ext.source + ext.target
    kw_full = extended_kw_full(c, ext)
    dw = extended_dw_map(c, ext)
    kt = compose(compose(kw_full, dw), kw_full)
    return ExtendedDualities(c, ext, register, _extended_adjacency(ext), kw_full, dw, kt)


def hamiltonian_spt_extended(c: ClassicalCode, ed: Optional[ExtendedDualities] = None) -> PauliHamiltonian:
    """H^_SPT = -sum_a tau_a^z C^_a - sum_i sigma_i^x A^_i."""
    ed = ed or build_extended_dualities(c)
    terms = [(-1, PauliOperator.z_on(ed.register, [ed.tau_index(a)]) * ed.modified_check(a))
             for a in range(ed.code.m)]
    terms += [(-1, PauliOperator.x_on(ed.register, [i]) * ed.modified_field(i)) for i in range(ed.code.n)]
    return PauliHamiltonian(ed.register, terms)


def hamiltonian_ssb(c: ClassicalCode, ed: Optional[ExtendedDualities] = None) -> PauliHamiltonian:
    """H^_SSB = -sum_a C^_a - sum_i A^_i: the code and its transpose, decoupled."""
    ed = ed or build_extended_dualities(c)
    terms = [(-1, ed.modified_check(a)) for a in range(ed.code.m)]
    terms += [(-1, ed.modified_field(i)) for i in range(ed.code.n)]
    return PauliHamiltonian(ed.register, terms)


def kt_map(c: ClassicalCode) -> SymplecticMap:
    """U^_KT = U^_KW U^_DW U^_KW, checked to send H^_SPT to H^_SSB."""
    ed = build_extended_dualities(c)
    if hamiltonian_spt_extended(c, ed).transform(ed.kt) != hamiltonian_ssb(c, ed):
        raise ArithmeticError("Kennedy-Tasaki map does not send H_SPT to H_SSB")
    logger.info(f"Kennedy-Tasaki map verified for {c.name} on {ed.register.size} qubits")
    return ed.kt


# Open boundaries

@dataclass
class OpenBoundarySystem:
    """A truncated cluster Hamiltonian together with its boundary data."""
    parent: ClusterSystem
    register: QubitRegister
    hamiltonian: PauliHamiltonian
    kept: List[int]
    dropped_edges: List[int]
    boundary_sites: List[int]
    edge_operators: List[Tuple[PauliOperator, PauliOperator]] = field(default_factory=list)
    symmetry_pieces: Dict[str, List[PauliOperator]] = field(default_factory=dict)
    removed_sites: List[int] = field(default_factory=list)
    removed_edges: List[int] = field(default_factory=list)
    boundary_code: Optional[ClassicalCode] = None
    log2_degeneracy: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "qubits": self.register.size,
            "terms": len(self.hamiltonian),
            "dropped_edges": self.dropped_edges,
            "boundary_sites": self.boundary_sites,
            "removed_sites": self.removed_sites,
            "removed_edges": self.removed_edges,
            "edge_pairs": len(self.edge_operators),
            "log2_degeneracy": self.log2_degeneracy,
            "boundary_code_bits": self.boundary_code.n if self.boundary_code is not None else 0,
            "edge_operators": [[z.to_text(True), g.to_text(True)] for z, g in self.edge_operators],
        }


def reduced_redundancies(c: ClassicalCode) -> Tuple[List[GF2Vector], List[int]]:
    """Reduced redundancy basis and its pivot checks L, one check per redundancy.

    Each reduced basis vector contains exactly one pivot, and removing the
    pivots leaves no redundancy.
    """
    if not c.redundancy_basis:
        return [], []
    reduced, pivots = rref(GF2Matrix.from_rows(c.redundancy_basis, c.m))
    return [reduced.row(r) for r in range(len(pivots))], list(pivots)


def boundary_labels(c: ClassicalCode) -> List[int]:
    return reduced_redundancies(c)[1]


def open_boundaries_1complex(cs: ClusterSystem, locality_bound: int = 4) -> OpenBoundarySystem:
    """Drop every term touching tau_a for a in L and report the fractionalized symmetries."""
    c = cs.code
    local = classify_redundancies(c, locality_bound).local
    if local:
        raise CodeGaugingError(
            f"{c.name} has {len(local)} local redundancies; use the 2-complex boundary construction")
    relations, cut = reduced_redundancies(c)
    cut_set = set(cut)
    boundary = sorted({i for a in cut for i in c.check_support(a)})
    boundary_set = set(boundary)
    kept = [q for q in range(cs.register.size) if q < c.n or (q - c.n) not in cut_set]
    register = cs.register.subregister(kept)

    edge_terms = [cs.edge_terms[a] for a in range(c.m) if a not in cut_set]
    vertex_terms = [cs.vertex_terms[i] for i in range(c.n) if i not in boundary_set]
    terms = [op.restrict(kept) for op in edge_terms + vertex_terms]
    hamiltonian = PauliHamiltonian(register, [(-1, op) for op in terms])
    _require_commuting(terms, terms)

    pairs = []
    for i in boundary:
        z = PauliOperator.z_on(register, [i])
        g_truncated = cs.vertex_terms[i].restrict(kept)
        pairs.append((z, g_truncated))
    edge_ops = [op for pair in pairs for op in pair]
    _require_commuting(edge_ops, terms)
    for z, g in pairs:
        if commute(z, g) != 1:
            raise ArithmeticError("edge operators at a boundary site should anticommute")

    z_pieces, x_pieces = [], []
    for r, (relation, a_r) in enumerate(zip(relations, cut)):
        bulk = [a for a in relation.support() if a != a_r]
        truncated = PauliOperator.z_on(cs.register, [c.n + a for a in bulk]).restrict(kept)
        piece = PauliOperator.z_on(cs.register, c.check_support(a_r)).restrict(kept)
        stabilizers = _product((cs.edge_terms[a] for a in bulk), cs.register).restrict(kept)
        if truncated * piece != stabilizers:
            raise ArithmeticError(f"magnetic symmetry {r} does not fractionalize onto the boundary")
        z_pieces.append(piece)
    for lam, logical in enumerate(c.logicals_basis):
        support = logical.support()
        on_boundary = [i for i in support if i in boundary_set]
        piece = _product((cs.vertex_terms[i] for i in on_boundary), cs.register).restrict(kept)
        bulk = _product((cs.vertex_terms[j] for j in support if j not in boundary_set), cs.register).restrict(kept)
        symmetry = PauliOperator.x_on(cs.register, support).restrict(kept)
        if symmetry != bulk * piece:
            raise ArithmeticError(f"matter symmetry {lam} does not fractionalize onto the boundary")
        x_pieces.append(piece)

    log2_dim = ground_space_log2_dim(hamiltonian)
    if log2_dim != len(pairs):
        raise ArithmeticError(f"degeneracy 2^{log2_dim} does not match {len(pairs)} edge pairs")
    logger.info(f"Open boundary for {c.name}: |L|={len(cut)}, |boundary|={len(boundary)}")
    return OpenBoundarySystem(cs, register, hamiltonian, kept, cut, boundary, pairs,
                              {"z": z_pieces, "x": x_pieces}, log2_degeneracy=log2_dim)


def open_boundaries_2complex(cs: ClusterSystem, cc: ChainComplex, boundary_type: str = "rough",
                             cycles: Optional[Sequence[GF2Vector]] = None) -> OpenBoundarySystem:
    """Rough boundary: cut non-trivial cycles M, their sites N, and freeze the dangling edges L.

    The cycles default to one representative per homology class. The boundary
    code has checks B~_p = Z on delta_2(p) restricted to L.
    """
    if boundary_type != "rough":
        raise ValueError(f"only rough boundaries are supported, got {boundary_type!r}")
    if cc.D != 2:
        raise ChainComplexError(f"a 2-complex is required, got {cc.D} map(s)")
    c = cs.code
    if cc.boundary(1) != c.delta:
        raise DimensionMismatchError("the complex's delta_1 is not the cluster system's code")
    if cycles is None:
        cycles = homology(cc, 1).representatives
    delta2 = cc.boundary(2)
    removed_edges = sorted({a for z in cycles for a in z.support()})
    if not removed_edges:
        return OpenBoundarySystem(cs, cs.register, cs.hamiltonian, list(range(cs.register.size)),
                                  [], [], log2_degeneracy=ground_space_log2_dim(cs.hamiltonian))
    m_set = set(removed_edges)
    removed_sites = sorted({i for a in removed_edges for i in c.check_support(a)})
    n_set = set(removed_sites)
    dangling = sorted(a for a in range(c.m) if a not in m_set and n_set & set(c.check_support(a)))
    l_set = set(dangling)

    kept = [i for i in range(c.n) if i not in n_set] + [c.n + a for a in range(c.m) if a not in m_set]
    register = cs.register.subregister(kept)
    vertex_terms = [cs.vertex_terms[i].restrict(kept) for i in range(c.n) if i not in n_set]
    edge_terms = [cs.edge_terms[a].restrict(kept) for a in range(c.m) if a not in m_set and a not in l_set]
    plaquette_terms = []
    for p in range(delta2.cols):
        support = [c.n + a for a in delta2.column_support(p) if a not in m_set]
        if support:
            plaquette_terms.append(PauliOperator.z_on(cs.register, support).restrict(kept))
    terms = vertex_terms + edge_terms + plaquette_terms
    hamiltonian = PauliHamiltonian(register, [(-1, op) for op in terms])
    _require_commuting(terms, terms)

    matter, magnetic_bulk, magnetic_boundary = [], [], []
    for lam, logical in enumerate(c.logicals_basis):
        support = logical.support()
        symmetry = PauliOperator.x_on(cs.register, [i for i in support if i not in n_set]).restrict(kept)
        _require_commuting([symmetry], terms)
        walls = c.delta_T.matvec(GF2Vector.from_support(c.n, [i for i in support if i in n_set])).support()
        piece = PauliOperator.x_on(cs.register, [c.n + a for a in walls]).restrict(kept)
        bulk = _product((cs.vertex_terms[i] for i in support if i not in n_set), cs.register).restrict(kept)
        if symmetry * piece != bulk:
            raise ArithmeticError(f"matter symmetry {lam} does not reduce to the dangling edges")
        matter.append(piece)
    for r, relation in enumerate(c.redundancy_basis):
        truncated = [a for a in relation.support() if a not in m_set]
        symmetry = PauliOperator.z_on(cs.register, [c.n + a for a in truncated]).restrict(kept)
        _require_commuting([symmetry], terms)
        magnetic_bulk.append(PauliOperator.z_on(cs.register, [c.n + a for a in truncated if a not in l_set]).restrict(kept))
        magnetic_boundary.append(PauliOperator.z_on(cs.register, [c.n + a for a in truncated if a in l_set]).restrict(kept))

    boundary_checks = []
    index = {a: j for j, a in enumerate(dangling)}
    for p in range(delta2.cols):
        on_edge = [index[a] for a in delta2.column_support(p) if a in l_set]
        if on_edge and any(a in m_set for a in delta2.column_support(p)):
            boundary_checks.append(GF2Vector.from_support(len(dangling), on_edge))
    boundary_code = None
    if dangling and boundary_checks:
        boundary_code = ClassicalCode(GF2Matrix.from_columns(boundary_checks, len(dangling)),
                                      name=f"boundary({c.name})")
    log2_dim = ground_space_log2_dim(hamiltonian)
    logger.info(f"Rough boundary for {c.name}: |M|={len(removed_edges)}, |N|={len(removed_sites)}, "
                f"|L|={len(dangling)}, log2 degeneracy {log2_dim}")
    return OpenBoundarySystem(cs, register, hamiltonian, kept, dangling,
                              sorted({i for a in dangling for i in c.check_support(a)} - n_set),
                              symmetry_pieces={"x": matter, "z_bulk": magnetic_bulk, "z_boundary": magnetic_boundary},
                              removed_sites=removed_sites, removed_edges=removed_edges,
                              boundary_code=boundary_code, log2_degeneracy=log2_dim)


# Order and disorder parameters

@dataclass
class OrderParameterReport:
    """Supports of O_M, P_N and their dressed versions."""
    checks: List[int]
    order_support: List[int]
    flips: List[int]
    disorder_walls: List[int]
    order: PauliOperator
    dressed_order: PauliOperator
    disorder: PauliOperator
    dressed_disorder: PauliOperator
    charge_overlaps: List[int]

    @property
    def order_sizes(self) -> Tuple[int, int]:
        """(|M|, |delta(M)|)."""
        return len(self.checks), len(self.order_support)

    @property
    def disorder_sizes(self) -> Tuple[int, int]:
        """(|N|, |delta^T(N)|)."""
        return len(self.flips), len(self.disorder_walls)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "M": self.checks, "delta_M": self.order_support,
            "N": self.flips, "deltaT_N": self.disorder_walls,
            "order_sizes": list(self.order_sizes), "disorder_sizes": list(self.disorder_sizes),
            "charge_overlaps": self.charge_overlaps,
        }


def order_parameter_supports(cs: ClusterSystem, M: Iterable[int], N: Iterable[int]) -> OrderParameterReport:
    """O_M = prod_{a in M} C_a on delta(M) and P_N = prod_{i in N} sigma_i^x, with dressings."""
    c = cs.code
    checks = sorted(set(M))
    flips = sorted(set(N))
    n = c.n
    order_support = c.delta.matvec(GF2Vector.from_support(c.m, checks)).support()
    walls = c.delta_T.matvec(GF2Vector.from_support(n, flips)).support()
    order = PauliOperator.z_on(cs.register, order_support)
    dressed_order = _product((cs.edge_terms[a] for a in checks), cs.register)
    disorder = PauliOperator.x_on(cs.register, flips)
    dressed_disorder = _product((cs.vertex_terms[i] for i in flips), cs.register)
    if dressed_disorder != disorder * PauliOperator.x_on(cs.register, [n + a for a in walls]):
        raise ArithmeticError("dressed disorder operator is not the product of Gauss laws")
    wall_set = set(walls)
    overlaps = [len(wall_set & set(r.support())) for r in c.redundancy_basis]
    return OrderParameterReport(checks, order_support, flips, walls, order, dressed_order,
                                disorder, dressed_disorder, overlaps)


class SPTAnalyzer:
    """Config-driven front end for the cluster-state SPT constructions."""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        """Initialize the SPT analyzer.

        Args:
            config: Merged configuration with a "search" section
        """
        self.config = config or {"search": ConfigLoader().load_config("search")}
        self.locality_bound = int(self.config.get("search", {}).get("locality_bound", 8))

    def analyze(self, c: ClassicalCode, cc: Optional[ChainComplex] = None,
                obc: Optional[str] = None) -> Dict[str, Any]:
        """Closed-system checks, plus an open boundary when `obc` is "1complex" or "rough"."""
        cs = build_cluster(c)
        dw_disentangle(cs)
        report: Dict[str, Any] = {
            "qubits": cs.register.size,
            "terms": len(cs.hamiltonian),
            "ground_space_log2_dim": ground_space_log2_dim(cs.hamiltonian),
            "x_symmetries": len(cs.x_symmetries),
            "z_symmetries": len(cs.z_symmetries),
            "dw_disentangles": True,
        }
        kt_map(c)
        report["kt_maps_spt_to_ssb"] = True
        if obc == "rough":
            if cc is None:
                raise ChainComplexError("a rough boundary needs plaquettes or a 2-complex")
            report["open_boundary"] = open_boundaries_2complex(cs, cc).to_dict()
        elif obc == "1complex":
            report["open_boundary"] = open_boundaries_1complex(cs, self.locality_bound).to_dict()
        elif obc is not None:
            raise ValueError(f"unknown boundary construction: {obc}")
        return report
