"""
Gauging Analyzer
Function: Kramers-Wannier duality, background gauge fields, disorder operators,
minimal coupling with Gauss laws, gauge fixing, and the dictionary between a
two-map chain complex, its two classical codes and its CSS code.

Qubit registers use the labels sigma[i] (matter, one per bit), tau[a] (gauge,
one per check), eta[r] (background fields, one per removed redundancy) and
mu[l] (one per logical).
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, NamedTuple, Optional, Sequence

import numpy as np
import pandas as pd

from utils.chain_complex import (REPRESENTATIVE_CAP, ChainComplex, attach_local_redundancies,
                                 cohomology, homology, validate)
from utils.classical_code import (ClassicalCode, canonical_info_bits, canonical_logicals,
                                  transverse_field_hamiltonian)
from utils.config_loader import ConfigLoader
from utils.errors import (ChainComplexError, CodeGaugingError, DependentBasisError,
                          DimensionMismatchError, NonCommutingError, NotARedundancyError,
                          ResidualRedundancyError, SymmetryViolationError)
from utils.gf2 import (DEFAULT_CAP, GF2Matrix, GF2Vector, IncrementalBasis, SearchResult,
                       column_space_basis, enumerate_span_min, is_independent, kernel_basis, rank,
                       reduce_modulo, search_coset, solve)
from utils.pauli import (PauliHamiltonian, PauliOperator, QubitRegister, SymplecticMap,
                         first_anticommuting_pair, ground_space_log2_dim)

logger = logging.getLogger(__name__)


def matter_register(n: int) -> QubitRegister:
    return QubitRegister.named("sigma", n)


def gauge_register(m: int) -> QubitRegister:
    return QubitRegister.named("tau", m)


def ancilla_register(count: int) -> QubitRegister:
    return QubitRegister.named("eta", count)


def logical_register(k: int) -> QubitRegister:
    return QubitRegister.named("mu", k)


@dataclass(frozen=True)
class Couplings:
    """Exact coupling constants J, g, K, Gamma and the subsystem coupling lambda."""
    J: Fraction = Fraction(1)
    g: Fraction = Fraction(1)
    K: Fraction = Fraction(1)
    Gamma: Fraction = Fraction(1)
    lam: Fraction = Fraction(1)

    def __post_init__(self):
        for name in ("J", "g", "K", "Gamma", "lam"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @classmethod
    def parse(cls, text: str) -> "Couplings":
        """Parse "J,g,K,Gamma" or "J,g,K,Gamma,lambda"; each value may be a fraction like 1/2."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) not in (4, 5):
            raise ValueError(f"expected J,g,K,Gamma[,lambda], got {text!r}")
        return cls(*(Fraction(p) for p in parts))

    @classmethod
    def from_config(cls, config: Dict[str, Any]) -> "Couplings":
        return cls(Fraction(str(config.get("J", 1))), Fraction(str(config.get("g", 1))),
                   Fraction(str(config.get("K", 1))), Fraction(str(config.get("Gamma", 1))),
                   Fraction(str(config.get("lambda", 1))))

    def to_dict(self) -> Dict[str, str]:
        return {"J": str(self.J), "g": str(self.g), "K": str(self.K),
                "Gamma": str(self.Gamma), "lambda": str(self.lam)}


# Kramers-Wannier duality on the symmetric algebra

class KramersWannierMap:
    """KW duality C_a -> tau_a^z, sigma_i^x -> A_i on the symmetric operator algebra.

    An operator X^x Z^z on the bits is symmetric iff its Z-part has even overlap
    with every logical, i.e. z lies in Im(delta). The Z-part is decomposed as
    z = delta y; y is fixed only up to redundancies, and the image uses the
    minimum-weight choice (canonical form when the redundancy space is too large
    to enumerate).
    """

    def __init__(self, c: ClassicalCode, cap: int = REPRESENTATIVE_CAP):
        self.code = c
        self.source = matter_register(c.n)
        self.target = gauge_register(c.m)
        self._cap = cap
        self._columns: Dict[bytes, int] = {}
        for a, col in enumerate(c.delta_T.words):
            self._columns.setdefault(col.tobytes(), a)
        self._redundancy_span = (GF2Matrix.from_columns(c.redundancy_basis, c.m)
                                 if c.redundancy_basis else None)

    def check_symmetric(self, op: PauliOperator) -> None:
        """Reject an operator that anticommutes with some logical symmetry."""
        if op.register != self.source:
            raise DimensionMismatchError("operator is not on the matter register")
        for index, logical in enumerate(self.code.logicals_basis):
            if op.z.dot(logical):
                raise SymmetryViolationError(index)

    def contains(self, op: PauliOperator) -> bool:
        try:
            self.check_symmetric(op)
        except SymmetryViolationError:
            return False
        return True

    def _check_set(self, z: GF2Vector) -> GF2Vector:
        """Canonical y with delta y = z."""
        single = self._columns.get(z.words.tobytes())
        if single is not None and not z.is_zero():
            return GF2Vector.unit(self.code.m, single)
        y = solve(self.code.delta, z)
        if y is None:
            raise ArithmeticError("symmetric Z-part is not a product of checks")
        if self._redundancy_span is None:
            return y
        result = search_coset(y, self._redundancy_span, self._cap)
        if result.found:
            return result.vector
        return reduce_modulo(y, self.code.redundancy_basis)

    def __call__(self, op: PauliOperator) -> PauliOperator:
        self.check_symmetric(op)
        x_image = self.code.delta_T.matvec(op.x)
        return PauliOperator(self.target, x_image, self._check_set(op.z))

    apply = __call__

    def apply_hamiltonian(self, h: PauliHamiltonian) -> PauliHamiltonian:
        return PauliHamiltonian(self.target, [(c, self(op)) for c, op in h.terms])

    def dual_field(self, i: int) -> PauliOperator:
        """A_i: tau^x on every check containing bit i."""
        return PauliOperator.x_on(self.target, self.code.bit_checks(i))


def kw_map(c: ClassicalCode, cap: int = REPRESENTATIVE_CAP) -> KramersWannierMap:
    return KramersWannierMap(c, cap)


def kw_dual_hamiltonian(c: ClassicalCode, J=1, g=1) -> PauliHamiltonian:
    """-J sum_a tau_a^z - g sum_i A_i, the KW image of the transverse-field code Hamiltonian."""
    register = gauge_register(c.m)
    terms = [(-Fraction(J), PauliOperator.z_on(register, [a])) for a in range(c.m)]
    terms += [(-Fraction(g), PauliOperator.x_on(register, c.bit_checks(i))) for i in range(c.n)]
    return PauliHamiltonian(register, terms)


def kw_round_trip(c: ClassicalCode, J=1, g=1) -> PauliHamiltonian:
    """KW image of the transverse-field Hamiltonian, Hadamard-rotated onto bits of the transpose code."""
    dual = kw_map(c).apply_hamiltonian(transverse_field_hamiltonian(c, J, g))
    return dual.hadamard().relabel(matter_register(c.m))


# Background gauge fields and disorder operators

@dataclass
class BackgroundCoupledCode:
    """A code with ancilla spins eta_r coupled to the dual sets G_r.

    modified_delta stacks delta on top of the G_r rows, so bit n + r is eta_r and
    check a contains eta_r iff a is in G_r.
    """
    base: ClassicalCode
    basis: List[GF2Vector]
    seams: List[GF2Vector]
    modified_delta: GF2Matrix
    code: ClassicalCode

    @property
    def ancillas(self) -> List[str]:
        return [f"eta[{r}]" for r in range(len(self.basis))]

    @property
    def seam_sets(self) -> List[List[int]]:
        return [g.support() for g in self.seams]

    @property
    def register(self) -> QubitRegister:
        return matter_register(self.base.n) + ancilla_register(len(self.basis))

    def redundancy_column_sum(self, r: int) -> GF2Vector:
        """Sum of the modified check columns over R_r; equals the unit vector on eta_r."""
        return self.modified_delta.matvec(self.basis[r])


def couple_background(c: ClassicalCode, basis: Sequence[GF2Vector]) -> BackgroundCoupledCode:
    """Remove the given redundancies by coupling one ancilla per basis element.

    The dual sets solve <G_r | R_r'> = delta_rr'; deterministic elimination makes
    the choice reproducible.
    """
    basis = list(basis)
    for r, v in enumerate(basis):
        if v.length != c.m:
            raise DimensionMismatchError(f"basis element {r} has length {v.length}, expected {c.m}")
        if v.is_zero() or not c.delta.matvec(v).is_zero():
            raise NotARedundancyError(r)
    if not is_independent(basis):
        raise DependentBasisError("redundancy basis elements are linearly dependent")
    seams: List[GF2Vector] = []
    if basis:
        relations = GF2Matrix.from_rows(basis, c.m)
        for r in range(len(basis)):
            g = solve(relations, GF2Vector.unit(len(basis), r))
            if g is None:
                raise DependentBasisError(f"no dual set for basis element {r}")
            seams.append(g)
        modified = c.delta.vstack(GF2Matrix.from_rows(seams, c.m))
    else:
        modified = c.delta
    bit_labels = (c.bit_labels or [f"sigma[{i}]" for i in range(c.n)]) + \
        [f"eta[{r}]" for r in range(len(basis))]
    code = ClassicalCode(modified, bit_labels=bit_labels, check_labels=c.check_labels,
                         name=f"{c.name}+eta{len(basis)}")
    logger.info(f"Coupled {len(basis)} background field(s) to {c.name}; kT {c.kT} -> {code.kT}")
    return BackgroundCoupledCode(c, basis, seams, modified, code)


def disorder_operator(bc: BackgroundCoupledCode, a: int) -> PauliOperator:
    """D_a: a spin flip on bits and ancillas that anticommutes with the modified check a only."""
    code = bc.code
    if code.kT > 0:
        raise ResidualRedundancyError(
            f"{code.kT} redundancies remain; no operator violates a single check")
    if not 0 <= a < code.m:
        raise DimensionMismatchError(f"check {a} outside 0..{code.m - 1}")
    flips = solve(code.delta_T, GF2Vector.unit(code.m, a))
    if flips is None:
        raise ArithmeticError(f"check {a} cannot be violated alone")
    register = bc.register
    op = PauliOperator.x_on(register, flips.support())
    violated = code.delta_T.matvec(flips).support()
    if violated != [a]:
        raise ArithmeticError(f"disorder operator violates checks {violated}, expected [{a}]")
    logger.debug(f"Disorder operator for check {a} has weight {op.weight()}")
    return op


# Fully extended KW duality

@dataclass
class ExtendedKW:
    """Extended KW duality on sigma + eta -> tau + mu, with its inverse."""
    code: ClassicalCode
    coupled: BackgroundCoupledCode
    info_bits: List[int]
    logicals: List[GF2Vector]
    map: SymplecticMap
    inverse: SymplecticMap

    @property
    def source(self) -> QubitRegister:
        return self.map.source

    @property
    def target(self) -> QubitRegister:
        return self.map.target

    def logical_symmetry(self, index: int) -> PauliOperator:
        """X on the canonical logical Sigma_index, over sigma + eta."""
        return PauliOperator.x_on(self.source, self.logicals[index].support())

    def e_image(self, i: int) -> PauliOperator:
        """E_i, the image of sigma_i^z."""
        return self.map.z_image(i)


def build_extended_kw(c: ClassicalCode) -> ExtendedKW:
    """Construct the extended KW map from the images of the target generators.

    On sigma + eta: tau_a^z pulls back to the modified check C^_a, mu_l^z to
    sigma^z on the information bit i_l, mu_l^x to X on the canonical logical, and
    tau_a^x to the disorder flip that avoids every information bit. The forward
    map is the symplectic inverse of these assignments.
    """
    coupled = couple_background(c, c.redundancy_basis)
    code = coupled.code
    info_bits = canonical_info_bits(c)
    logicals = [GF2Vector.from_bits(np.concatenate([v.bits(), np.zeros(len(coupled.basis), np.uint8)]))
                for v in canonical_logicals(c)]
    source = coupled.register
    target = gauge_register(c.m) + logical_register(len(info_bits))
    size = source.size
    if target.size != size:
        raise ArithmeticError(f"register sizes differ: {size} vs {target.size}")

    constraints = code.delta_T
    if info_bits:
        constraints = constraints.vstack(GF2Matrix.from_rows([GF2Vector.unit(size, i) for i in info_bits], size))
    x_images, z_images = [], []
    for a in range(c.m):
        rhs = GF2Vector.unit(constraints.rows, a)
        flips = solve(constraints, rhs)
        if flips is None:
            raise ArithmeticError(f"no dual flip for check {a}")
        x_images.append(PauliOperator.x_on(source, flips.support()))
        z_images.append(PauliOperator.z_on(source, code.check_support(a)))
    for lam, i in enumerate(info_bits):
        x_images.append(PauliOperator.x_on(source, logicals[lam].support()))
        z_images.append(PauliOperator.z_on(source, [i]))
    inverse = SymplecticMap.from_images(target, source, x_images, z_images)
    forward = inverse.inverse()
    logger.info(f"Extended KW map for {c.name} on {size} qubits")
    return ExtendedKW(c, coupled, info_bits, logicals, forward, inverse)


def extended_kw(c: ClassicalCode) -> SymplecticMap:
    return build_extended_kw(c).map


# Minimal coupling, Gauss laws and gauge fixing

@dataclass
class GaugedSystem:
    """Matter sigma and gauge tau qubits with the gauged Hamiltonian and Gauss laws."""
    register: QubitRegister
    hamiltonian: PauliHamiltonian
    gauss_laws: List[PauliOperator]
    source_code: ClassicalCode
    complex: Optional[ChainComplex] = None
    plaquettes: Optional[GF2Matrix] = None
    couplings: Couplings = field(default_factory=Couplings)

    def gauss_law(self, i: int) -> PauliOperator:
        return self.gauss_laws[i]


def gauge(c: ClassicalCode, plaquettes: Optional[GF2Matrix] = None,
          couplings: Optional[Couplings] = None) -> GaugedSystem:
    """Minimally couple C_a -> tau_a^z C_a and add the plaquette and gauge-field terms.

    H = -J sum_a tau_a^z C_a - g sum_i sigma_i^x - K sum_p B_p - Gamma sum_a tau_a^x,
    with G_i = sigma_i^x prod_{a in delta^T(i)} tau_a^x.
    """
    couplings = couplings or Couplings()
    complex_ = attach_local_redundancies(c, plaquettes) if plaquettes is not None else None
    n, m = c.n, c.m
    register = matter_register(n) + gauge_register(m)
    terms = [(-couplings.J, PauliOperator.from_parts(register, (), c.check_support(a) + [n + a]))
             for a in range(m)]
    terms += [(-couplings.g, PauliOperator.x_on(register, [i])) for i in range(n)]
    if plaquettes is not None:
        terms += [(-couplings.K, PauliOperator.z_on(register, [n + a for a in plaquettes.column_support(p)]))
                  for p in range(plaquettes.cols)]
    terms += [(-couplings.Gamma, PauliOperator.x_on(register, [n + a])) for a in range(m)]
    hamiltonian = PauliHamiltonian(register, terms)
    gauss = [PauliOperator.x_on(register, [i] + [n + a for a in c.bit_checks(i)]) for i in range(n)]

    pair = first_anticommuting_pair(hamiltonian.operators, gauss)
    if pair is not None:
        raise NonCommutingError(*pair)
    logger.info(f"Gauged {c.name}: {len(hamiltonian)} terms, {n} Gauss laws")
    return GaugedSystem(register, hamiltonian, gauss, c, complex_, plaquettes, couplings)


def gauge_fix(gs: GaugedSystem) -> PauliHamiltonian:
    """Unitary gauge: multiply by Gauss laws to clear sigma^x, then drop sigma^z."""
    n, m = gs.source_code.n, gs.source_code.m
    tau = list(range(n, n + m))
    terms = []
    for coefficient, op in gs.hamiltonian.terms:
        for i in op.x.support():
            if i >= n:
                break
            op = op * gs.gauss_laws[i]
        fixed = op.restrict(tau)
        if fixed.is_identity():
            continue
        terms.append((coefficient, fixed))
    return PauliHamiltonian(gauge_register(m), terms)


# Chain complex -> three codes

@dataclass
class ThreeCodeDictionary:
    """A two-map complex read as C_cl (delta_1), C~_cl (delta_2^T) and a CSS code.

    X-check i acts on the qubits of row i of delta_1; Z-check p acts on the qubits
    of column p of delta_2.
    """
    complex: ChainComplex
    c_cl: ClassicalCode
    c_cl_tilde: Optional[ClassicalCode]
    x_checks: GF2Matrix
    z_checks: GF2Matrix

    @property
    def css(self):
        return self.x_checks, self.z_checks

    @property
    def n_qubits(self) -> int:
        return self.x_checks.cols

    @property
    def register(self) -> QubitRegister:
        return gauge_register(self.n_qubits)

    @property
    def k(self) -> int:
        return self.n_qubits - rank(self.x_checks) - rank(self.z_checks)

    def x_check(self, i: int) -> PauliOperator:
        return PauliOperator.x_on(self.register, self.x_checks.row_support(i))

    def z_check(self, p: int) -> PauliOperator:
        return PauliOperator.z_on(self.register, self.z_checks.row_support(p))

    def css_hamiltonian(self, Jx=1, Jz=1) -> PauliHamiltonian:
        """-Jx sum_i A_i - Jz sum_p B_p."""
        terms = [(-Fraction(Jx), self.x_check(i)) for i in range(self.x_checks.rows)]
        terms += [(-Fraction(Jz), self.z_check(p)) for p in range(self.z_checks.rows)]
        return PauliHamiltonian(self.register, terms)


def _code_or_none(delta: GF2Matrix, name: str) -> Optional[ClassicalCode]:
    if delta.rows == 0 or delta.cols == 0:
        return None
    try:
        return ClassicalCode(delta, name=name)
    except CodeGaugingError as e:
        logger.info(f"No classical code {name}: {e}")
        return None


def css_from_complex(cc: ChainComplex) -> ThreeCodeDictionary:
    if cc.D != 2:
        raise ChainComplexError(f"a CSS code needs exactly two maps, got {cc.D}")
    if not validate(cc):
        raise ChainComplexError("boundary maps do not compose to zero")
    delta1, delta2 = cc.boundary(1), cc.boundary(2)
    x_checks, z_checks = delta1, delta2.transpose()
    if x_checks.rows and z_checks.rows and not x_checks.matmul(delta2).is_zero():
        hits = np.argwhere(x_checks.matmul(delta2).to_dense())
        raise NonCommutingError(int(hits[0][0]), int(hits[0][1]))
    c_cl = ClassicalCode(delta1, name="C_cl")
    c_cl_tilde = _code_or_none(z_checks, "C~_cl")
    logger.info(f"CSS code on {x_checks.cols} qubits: {x_checks.rows} X-checks, {z_checks.rows} Z-checks")
    return ThreeCodeDictionary(cc, c_cl, c_cl_tilde, x_checks, z_checks)


class RateIdentity(NamedTuple):
    lhs: int
    rhs: int
    equal: bool


def rate_identity_check(d: ThreeCodeDictionary) -> RateIdentity:
    """k_q - k_cl - k~_cl against m - n - l, all from ranks."""
    n, m, ell = d.complex.level_sizes
    r1, r2 = rank(d.complex.boundary(1)), rank(d.complex.boundary(2))
    k_q = m - r1 - r2
    k_cl = n - r1
    k_cl_tilde = ell - r2
    lhs, rhs = k_q - k_cl - k_cl_tilde, m - n - ell
    return RateIdentity(lhs, rhs, lhs == rhs)


class QuantumDistances(NamedTuple):
    d_X: Optional[int]
    d_Z: Optional[int]
    reason_X: Optional[str] = None
    reason_Z: Optional[str] = None


def _nontrivial_min(closed: GF2Matrix, exact: GF2Matrix, cap: int, threads: int) -> SearchResult:
    """Minimum weight over Ker(closed) minus Im(exact), class by class."""
    exact_basis = column_space_basis(exact) if exact.cols else []
    spanned = IncrementalBasis(closed.cols)
    for v in exact_basis:
        spanned.add(v)
    reps = [z for z in kernel_basis(closed) if spanned.add(z)]
    if not reps:
        return SearchResult(None, None, "k=0")
    budget = ((1 << len(reps)) - 1) << len(exact_basis)
    if budget > cap:
        logger.warning(f"Distance search needs {budget} steps, over the cap {cap}; result absent")
        return SearchResult(None, None, "budget")
    best = None
    for mask in range(1, 1 << len(reps)):
        offset = GF2Vector.zeros(closed.cols)
        for j, z in enumerate(reps):
            if (mask >> j) & 1:
                offset = offset + z
        found = enumerate_span_min(exact_basis, offset, threads=threads)
        key = (found[0], tuple(found[1].support()))
        if best is None or key < best[0]:
            best = (key, found[1])
    return SearchResult(best[0][0], best[1])


def quantum_distances(d: ThreeCodeDictionary, cap: int = DEFAULT_CAP, threads: int = 1) -> QuantumDistances:
    """d_Z over Ker(delta_1) minus Im(delta_2), d_X over Ker(delta_2^T) minus Im(delta_1^T)."""
    delta1, delta2 = d.complex.boundary(1), d.complex.boundary(2)
    z_result = _nontrivial_min(delta1, delta2, cap, threads)
    x_result = _nontrivial_min(delta2.transpose(), delta1.transpose(), cap, threads)
    return QuantumDistances(x_result.value, z_result.value, x_result.reason, z_result.reason)


def thooft_loops(d: ThreeCodeDictionary, cap: int = REPRESENTATIVE_CAP) -> List[PauliOperator]:
    """Z-type logicals on representatives of the cycle classes Ker(delta_1) / Im(delta_2)."""
    summary = homology(d.complex, 1, cap)
    return [PauliOperator.z_on(d.register, z.support()) for z in summary.representatives]


def wilson_loops(d: ThreeCodeDictionary, cap: int = REPRESENTATIVE_CAP) -> List[PauliOperator]:
    """X-type logicals on representatives of the cocycle classes Ker(delta_2^T) / Im(delta_1^T)."""
    summary = cohomology(d.complex, 1, cap)
    return [PauliOperator.x_on(d.register, w.support()) for w in summary.representatives]


def dictionary_table(d: ThreeCodeDictionary) -> pd.DataFrame:
    """Geometric objects of the complex and what they are in each of the three codes."""
    delta1, delta2 = d.complex.boundary(1), d.complex.boundary(2)
    n, m, ell = d.complex.level_sizes
    rows = [
        ("sites", "X-checks", "bits", "local redundancies", n),
        ("edges", "qubits", "checks", "checks", m),
        ("plaquettes", "Z-checks", "local redundancies", "bits", ell),
        ("cycles", "'t Hooft (Z) loops", "redundancies", "domain walls", m - rank(delta1)),
        ("cocycles", "Wilson (X) loops", "domain walls", "redundancies", m - rank(delta2)),
        ("closed surfaces", "Z redundancies", "meta-redundancies", "logicals", ell - rank(delta2)),
        ("closed co-surfaces", "X redundancies", "logicals", "meta-redundancies", n - rank(delta1)),
        ("homology classes", "logical qubits", "global redundancies", "global redundancies", d.k),
    ]
    return pd.DataFrame(rows, columns=["object", "quantum", "classical", "dual_classical", "dimension"])


# Subsystem assembly: two coupled gauge theories

def gauge_check_commutation(delta1: GF2Matrix, delta2tildeT: GF2Matrix) -> np.ndarray:
    """Commutation matrix between X-checks (rows of delta1) and Z-checks (rows of delta2tildeT)."""
    if delta1.cols != delta2tildeT.cols:
        raise DimensionMismatchError(
            f"{delta1.cols} gauge labels on the left, {delta2tildeT.cols} on the right")
    return delta1.matmul(delta2tildeT.transpose()).to_dense()


def subsystem_code_hamiltonian(delta1: GF2Matrix, delta2tildeT: GF2Matrix, Jx=1, Jz=1) -> PauliHamiltonian:
    """-Jx sum_i X(delta1 row i) - Jz sum_p Z(delta2tildeT row p) on tau."""
    register = gauge_register(delta1.cols)
    terms = [(-Fraction(Jx), PauliOperator.x_on(register, delta1.row_support(i))) for i in range(delta1.rows)]
    terms += [(-Fraction(Jz), PauliOperator.z_on(register, delta2tildeT.row_support(p)))
              for p in range(delta2tildeT.rows)]
    return PauliHamiltonian(register, terms)


def strong_coupling_limit(left: PauliHamiltonian, right: PauliHamiltonian) -> PauliHamiltonian:
    """Substitute tau~^x := tau^z, tau~^z := tau^x in `right` and add it to `left`."""
    return left + right.hadamard().relabel(left.register)


def _gauge_fixed_fields(delta: GF2Matrix, couplings: Couplings, name: str) -> PauliHamiltonian:
    return gauge_fix(gauge(ClassicalCode(delta, name=name), None, couplings))


def build_subsystem_gauge_hamiltonian(delta1: GF2Matrix, delta2tildeT: GF2Matrix,
                                      couplings: Optional[Couplings] = None, lam=None,
                                      tilde_couplings: Optional[Couplings] = None) -> PauliHamiltonian:
    """Two gauge-fixed theories on tau and tau~ coupled by -lambda sum_a (tau^x tau~^z + tau^z tau~^x).

    The lambda -> infinity identification with local fields zeroed is checked to
    reproduce the subsystem code Hamiltonian before the coupled model is returned.
    """
    commutation = gauge_check_commutation(delta1, delta2tildeT)
    couplings = couplings or Couplings()
    tilde_couplings = tilde_couplings or couplings
    lam = Fraction(lam) if lam is not None else couplings.lam
    m = delta1.cols

    left = _gauge_fixed_fields(delta1, couplings, "C")
    right = _gauge_fixed_fields(delta2tildeT, tilde_couplings, "C~")
    tau = gauge_register(m)
    register = tau + QubitRegister.named("taut", m)
    right_on_taut = PauliHamiltonian(register, [
        (c, PauliOperator.from_parts(register, [m + j for j in op.x.support()], [m + j for j in op.z.support()]))
        for c, op in right.terms])
    coupling_terms = []
    for a in range(m):
        coupling_terms.append((-lam, PauliOperator.from_parts(register, [a], [m + a])))
        coupling_terms.append((-lam, PauliOperator.from_parts(register, [m + a], [a])))
    full = left.embed(register) + right_on_taut + PauliHamiltonian(register, coupling_terms)

    zeroed = Couplings(J=0, g=couplings.g, K=0, Gamma=0)
    zeroed_tilde = Couplings(J=0, g=tilde_couplings.g, K=0, Gamma=0)
    projected = strong_coupling_limit(_gauge_fixed_fields(delta1, zeroed, "C"),
                                      _gauge_fixed_fields(delta2tildeT, zeroed_tilde, "C~"))
    reference = subsystem_code_hamiltonian(delta1, delta2tildeT, couplings.g, tilde_couplings.g)
    if projected != reference:
        raise ArithmeticError("strong-coupling limit does not reproduce the subsystem Hamiltonian")
    if commutation.any():
        logger.info("X- and Z-gauge checks do not commute: subsystem code")
    else:
        logger.info("X- and Z-gauge checks commute: stabilizer code")
    return full


class GaugeAnalyzer:
    """Config-driven front end for gauging, duality and CSS dictionary reports."""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        """Initialize the gauge analyzer.

        Args:
            config: Merged configuration with "gauging" and "search" sections
        """
        self.config = config or self._load_config()
        self.couplings = Couplings.from_config(self.config.get("gauging", {}))
        search = self.config.get("search", {})
        self.cap = int(search.get("cap", DEFAULT_CAP))
        self.threads = int(self.config.get("system", {}).get("threads", 1))

    def _load_config(self) -> Dict[str, Any]:
        loader = ConfigLoader()
        return {"gauging": loader.load_config("gauging"), "search": loader.load_config("search"),
                "system": loader.load_config("system")}

    def dictionary_report(self, cc: ChainComplex) -> Dict[str, Any]:
        d = css_from_complex(cc)
        identity = rate_identity_check(d)
        distances = quantum_distances(d, self.cap, self.threads)
        known = [v for v in (distances.d_X, distances.d_Z) if v is not None]
        d_text = str(min(known)) if len(known) == 2 else "?"
        return {
            "label": f"[[{d.n_qubits},{d.k},{d_text}]]",
            "n_qubits": d.n_qubits,
            "k": d.k,
            "rate_identity": {"lhs": identity.lhs, "rhs": identity.rhs, "equal": identity.equal},
            "distances": distances._asdict(),
            "dictionary": dictionary_table(d).to_dict(orient="records"),
        }

    def gauge_report(self, c: ClassicalCode, plaquettes: Optional[GF2Matrix] = None,
                     couplings: Optional[Couplings] = None) -> Dict[str, Any]:
        couplings = couplings or self.couplings
        gs = gauge(c, plaquettes, couplings)
        fixed = gauge_fix(gs)
        report: Dict[str, Any] = {
            "couplings": couplings.to_dict(),
            "gauged_terms": len(gs.hamiltonian),
            "gauss_laws": len(gs.gauss_laws),
            "gauss_law_commutation": "verified",
            "gauge_fixed": fixed.to_dict(),
        }
        if first_anticommuting_pair(fixed.operators, fixed.operators) is None:
            report["ground_space_log2_dim"] = ground_space_log2_dim(fixed)
        if gs.complex is not None:
            report["css"] = self.dictionary_report(gs.complex)
        return report

    def dualize_report(self, c: ClassicalCode, extended: bool = False) -> Dict[str, Any]:
        if extended:
            ext = build_extended_kw(c)
            return {"map": "kw", "extended": True, "qubits": ext.source.size,
                    "images": ext.map.image_table().to_dict(orient="records")}
        dual = kw_map(c).apply_hamiltonian(
            transverse_field_hamiltonian(c, self.couplings.J, self.couplings.g))
        return {"map": "kw", "extended": False, "dual_hamiltonian": dual.to_dict()}
