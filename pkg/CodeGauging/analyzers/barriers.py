"""
Barrier Analyzer
Function: Energy-barrier profiles E_min(F) over subsets of a minimal logical,
empirical soundness, locally minimal cocycles and greedy descent traces.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, islice
from math import comb
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np
import pandas as pd

from analyzers.gauging import css_from_complex, quantum_distances
from utils.chain_complex import ChainComplex
from utils.classical_code import ClassicalCode, min_weight_logical
from utils.config_loader import ConfigLoader
from utils.errors import ChainComplexError, CodeGaugingError, DimensionMismatchError
from utils.gf2 import DEFAULT_CAP, GF2Vector, SearchResult, row_weights_of

logger = logging.getLogger(__name__)

EXHAUSTIVE = "exhaustive"
GREEDY = "greedy-upper-bound"
SUBSET_CHUNK = 1 << 14


@dataclass
class BarrierProfile:
    """E_min(F) for F = 0..F_max over subsets of the logical support `sigma`."""
    code: ClassicalCode
    sigma: List[int]
    F_values: List[int]
    E_min: List[int]
    exact_up_to: int
    method: str
    witnesses: List[List[int]] = field(default_factory=list)

    def is_exact(self, F: int) -> bool:
        return F <= self.exact_up_to

    def to_dict(self) -> Dict[str, Any]:
        return {
            "sigma": self.sigma,
            "F": self.F_values,
            "E_min": self.E_min,
            "exact_up_to": self.exact_up_to,
            "method": self.method,
        }


@dataclass
class SoundnessReport:
    kappa_lower_empirical: Fraction
    d_half: int
    satisfied: Optional[bool] = None
    kappa: Optional[Fraction] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kappa_lower_empirical": str(self.kappa_lower_empirical),
            "d_half": self.d_half,
            "kappa": None if self.kappa is None else str(self.kappa),
            "satisfied": self.satisfied,
        }


class _FlipEnergy:
    """|delta^T(S)| for spin sets S inside a fixed support, on packed rows."""

    def __init__(self, c: ClassicalCode, sigma: List[int]):
        self.sigma = sigma
        self.rows = c.delta.words[sigma] if sigma else np.zeros((0, c.delta.words.shape[1]), np.uint64)

    def of_indices(self, subsets: np.ndarray) -> np.ndarray:
        """Energies for a (count x F) array of positions into sigma."""
        if subsets.shape[1] == 0:
            return np.zeros(subsets.shape[0], dtype=np.int64)
        combined = np.bitwise_xor.reduce(self.rows[subsets], axis=1)
        return row_weights_of(combined).astype(np.int64)

    def of_mask(self, mask: np.ndarray) -> int:
        picked = self.rows[mask.astype(bool)]
        if picked.shape[0] == 0:
            return 0
        return int(row_weights_of(np.bitwise_xor.reduce(picked, axis=0)[None, :])[0])


def _best_with_prefix(energy: _FlipEnergy, first: int, F: int) -> Optional[Tuple[int, Tuple[int, ...]]]:
    """Lightest F-subset whose smallest position is `first`."""
    rest = range(first + 1, len(energy.sigma))
    best: Optional[Tuple[int, Tuple[int, ...]]] = None
    tails = combinations(rest, F - 1)
    while True:
        chunk = list(islice(tails, SUBSET_CHUNK))
        if not chunk:
            break
        subsets = np.array([(first,) + t for t in chunk], dtype=np.int64).reshape(len(chunk), F)
        energies = energy.of_indices(subsets)
        j = int(np.argmin(energies))
        candidate = (int(energies[j]), tuple(int(x) for x in subsets[j]))
        if best is None or candidate < best:
            best = candidate
    return best


def _exhaustive_min(energy: _FlipEnergy, F: int, threads: int) -> Tuple[int, List[int]]:
    """Exact min over all F-subsets, split by smallest element across workers."""
    if F == 0:
        return 0, []
    prefixes = range(len(energy.sigma) - F + 1)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda p: _best_with_prefix(energy, p, F), prefixes))
    else:
        results = [_best_with_prefix(energy, p, F) for p in prefixes]
    value, positions = min(r for r in results if r is not None)
    return value, [energy.sigma[p] for p in positions]


def _greedy_chain(energy: _FlipEnergy, F_max: int) -> List[Tuple[int, List[int]]]:
    """Nested subsets grown one flip at a time; ties go to the lowest position."""
    chosen = np.zeros(len(energy.sigma), dtype=bool)
    chain = [(0, [])]
    for _ in range(F_max):
        best = None
        for p in np.flatnonzero(~chosen):
            chosen[p] = True
            value = energy.of_mask(chosen)
            chosen[p] = False
            if best is None or value < best[0]:
                best = (value, int(p))
        chosen[best[1]] = True
        chain.append((best[0], [energy.sigma[p] for p in np.flatnonzero(chosen)]))
    return chain


def energy_barrier(c: ClassicalCode, F_max: Optional[int] = None, cap: int = 1 << 22,
                   logical_cap: int = DEFAULT_CAP, threads: int = 1) -> BarrierProfile:
    """E_min(F) = min |delta^T(S)| over S inside a minimal logical, |S| = F.

    Each F is enumerated exactly while C(|Sigma|, F) <= cap. Beyond that point
    the profile continues with a greedy nested-subset upper bound.
    """
    if c.k == 0:
        raise CodeGaugingError(f"{c.name} has no logical, so no energy barrier")
    search = min_weight_logical(c, logical_cap, threads)
    if not search.found:
        raise CodeGaugingError(f"no minimal logical within budget ({search.reason})")
    sigma = search.vector.support()
    half = len(sigma) // 2
    if F_max is None:
        F_max = half
    if not 0 <= F_max <= half:
        raise ValueError(f"F_max must lie in 0..{half} for a logical of weight {len(sigma)}")

    energy = _FlipEnergy(c, sigma)
    E_min, witnesses = [0], [[]]
    exact_up_to = 0
    greedy = None
    for F in range(1, F_max + 1):
        if greedy is None and comb(len(sigma), F) <= cap:
            value, witness = _exhaustive_min(energy, F, threads)
            exact_up_to = F
        else:
            if greedy is None:
                logger.warning(f"C({len(sigma)}, {F}) exceeds cap {cap}; continuing with greedy upper bounds")
                greedy = _greedy_chain(energy, F_max)
            value, witness = greedy[F]
        E_min.append(value)
        witnesses.append(witness)

    max_degree = int(c.delta.row_weights().max(initial=0))
    for F in range(1, len(E_min)):
        if E_min[F] > E_min[F - 1] + max_degree:
            raise ArithmeticError(f"E_min({F}) exceeds E_min({F - 1}) + {max_degree}")
    method = EXHAUSTIVE if exact_up_to == F_max else GREEDY
    logger.info(f"Energy barrier for {c.name}: |Sigma|={len(sigma)}, F_max={F_max}, method={method}")
    return BarrierProfile(c, sigma, list(range(F_max + 1)), E_min, exact_up_to, method, witnesses)


def soundness(bp: BarrierProfile, kappa: Optional[Union[Fraction, int, str]] = None) -> SoundnessReport:
    """min E_min(F)/F over the exactly computed range, and whether E_min(F) >= kappa F there."""
    exact = [F for F in bp.F_values if 1 <= F <= bp.exact_up_to]
    if not exact:
        raise ValueError("profile has no exactly computed F >= 1")
    ratio = min(Fraction(bp.E_min[F], F) for F in exact)
    satisfied = None
    if kappa is not None:
        kappa = Fraction(kappa)
        satisfied = all(bp.E_min[F] >= kappa * F for F in exact)
    return SoundnessReport(ratio, len(bp.sigma) // 2, satisfied, kappa)


def anneal_barrier_oracle(c: ClassicalCode, sigma: List[int], F: int, restarts: int = 16,
                          sweeps: int = 200, seed: int = 0) -> Tuple[int, List[int]]:
    """Best F-subset of sigma found by random-restart annealed swaps.

    Only ever returns an achieved energy, so it bounds E_min(F) from above.
    """
    if not 0 <= F <= len(sigma):
        raise ValueError(f"F must lie in 0..{len(sigma)}")
    energy = _FlipEnergy(c, list(sigma))
    if F == 0 or F == len(sigma):
        mask = np.zeros(len(sigma), dtype=bool)
        mask[:F] = True
        return energy.of_mask(mask), list(sigma[:F])
    rng = np.random.default_rng(seed)
    best: Optional[Tuple[int, Tuple[int, ...]]] = None
    for _ in range(restarts):
        mask = np.zeros(len(sigma), dtype=bool)
        mask[rng.choice(len(sigma), size=F, replace=False)] = True
        current = energy.of_mask(mask)
        for sweep in range(sweeps):
            temperature = 2.0 * (1.0 - sweep / sweeps) + 1e-3
            inside, outside = np.flatnonzero(mask), np.flatnonzero(~mask)
            p, q = int(rng.choice(inside)), int(rng.choice(outside))
            mask[p], mask[q] = False, True
            proposal = energy.of_mask(mask)
            if proposal <= current or rng.random() < np.exp((current - proposal) / temperature):
                current = proposal
            else:
                mask[p], mask[q] = True, False
            candidate = (current, tuple(int(x) for x in np.flatnonzero(mask)))
            if best is None or candidate < best:
                best = candidate
    value, positions = best
    return value, [sigma[p] for p in positions]


def profile_frame(bp: BarrierProfile) -> pd.DataFrame:
    return pd.DataFrame({
        "F": bp.F_values,
        "E_min": bp.E_min,
        "exact": [bp.is_exact(F) for F in bp.F_values],
    })


# Locally minimal cocycles

def locally_minimal_distance(cc: ChainComplex, cap: int = 1 << 24, chunk_bits: int = 12) -> SearchResult:
    """Smallest nonzero level-1 cocycle c with |c| <= |c + delta_1^T(i)| for every site i.

    Every element of Ker(delta_2^T) is enumerated, so the budget is 2^dim.
    """
    if cc.D != 2:
        raise ChainComplexError(f"a 2-complex is required, got {cc.D} map(s)")
    basis = cc.cocycles_basis(1)
    edges = cc.level_sizes[1]
    if not basis:
        return SearchResult(None, None, "vacuous")
    if (1 << len(basis)) > cap:
        logger.warning(f"2^{len(basis)} cocycles exceed cap {cap}; d_LM absent")
        return SearchResult(None, None, "budget")

    generators = np.stack([v.bits() for v in basis]).astype(np.int64)
    stars = cc.boundary(1).to_dense().astype(np.int64)
    degrees = stars.sum(axis=1)
    total = 1 << len(basis)
    step = 1 << min(chunk_bits, len(basis))
    shifts = np.arange(len(basis), dtype=np.int64)
    best: Optional[Tuple[int, Tuple[int, ...]]] = None
    for start in range(1, total, step):
        coefficients = ((np.arange(start, min(start + step, total))[:, None] >> shifts) & 1)
        cocycles = (coefficients @ generators) & 1
        weights = cocycles.sum(axis=1)
        overlaps = cocycles @ stars.T
        minimal = np.all(2 * overlaps <= degrees, axis=1)
        for j in np.flatnonzero(minimal):
            candidate = (int(weights[j]), tuple(int(x) for x in np.flatnonzero(cocycles[j])))
            if best is None or candidate < best:
                best = candidate
    if best is None:
        return SearchResult(None, None, "vacuous")
    logger.info(f"d_LM = {best[0]} over {total - 1} nonzero cocycles")
    return SearchResult(best[0], GF2Vector.from_support(edges, best[1]))


@dataclass
class DescentTrace:
    """Greedy single-spin descent: (spin, energy after) per step and the final verdict."""
    start_energy: int
    steps: List[Tuple[int, int]]
    verdict: str
    final_spins: GF2Vector

    @property
    def final_energy(self) -> int:
        return self.steps[-1][1] if self.steps else self.start_energy

    def to_dict(self) -> Dict[str, Any]:
        return {"start_energy": self.start_energy, "steps": [list(s) for s in self.steps],
                "verdict": self.verdict, "final_energy": self.final_energy}


def descent_certificate(source: Union[ChainComplex, ClassicalCode], spins: GF2Vector) -> DescentTrace:
    """Flip the spin with the largest energy drop (lowest index on ties) until none lowers it.

    The energy of a spin set S is |delta_1^T(S)|. The verdict is "ground" when
    it reaches zero and "locally-minimal" otherwise.
    """
    delta = source.boundary(1) if isinstance(source, ChainComplex) else source.delta
    if spins.length != delta.rows:
        raise DimensionMismatchError(f"spin set has length {spins.length}, expected {delta.rows}")
    dense = delta.to_dense().astype(np.int64)
    degrees = dense.sum(axis=1)
    state = spins.bits().astype(np.int64)
    syndrome = (state @ dense) & 1
    energy = int(syndrome.sum())
    start = energy
    steps: List[Tuple[int, int]] = []
    while energy > 0:
        # flipping i toggles its checks: drop = violated - satisfied among them
        violated = dense @ syndrome
        drops = 2 * violated - degrees
        i = int(np.argmax(drops))
        if drops[i] <= 0:
            break
        state[i] ^= 1
        syndrome = (syndrome + dense[i]) & 1
        energy -= int(drops[i])
        steps.append((i, energy))
    verdict = "ground" if energy == 0 else "locally-minimal"
    logger.debug(f"Descent from energy {start}: {len(steps)} flip(s), {verdict}")
    return DescentTrace(start, steps, verdict, GF2Vector.from_bits(state.astype(np.uint8)))


class BarrierAnalyzer:
    """Config-driven front end for energy barriers and locally minimal distances."""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        """Initialize the barrier analyzer.

        Args:
            config: Merged configuration with "barriers", "search" and "system" sections
        """
        self.config = config or self._load_config()
        barriers = self.config.get("barriers", {})
        search = self.config.get("search", {})
        self.F_max = barriers.get("F_max")
        self.restarts = int(barriers.get("anneal_restarts", 16))
        self.sweeps = int(barriers.get("anneal_sweeps", 200))
        self.cap = int(search.get("cap", DEFAULT_CAP))
        self.subset_cap = int(search.get("subset_cap", 1 << 22))
        self.lm_cap = int(search.get("lm_cap", 1 << 24))
        system = self.config.get("system", {})
        self.threads = int(system.get("threads", 1))
        self.seed = int(system.get("seed", 0))

    def _load_config(self) -> Dict[str, Any]:
        loader = ConfigLoader()
        return {name: loader.load_config(name) for name in ("barriers", "search", "system")}

    def profile(self, c: ClassicalCode, F_max: Optional[int] = None) -> BarrierProfile:
        F_max = F_max if F_max is not None else self.F_max
        return energy_barrier(c, F_max, self.subset_cap, self.cap, self.threads)

    def analyze(self, c: Optional[ClassicalCode] = None, cc: Optional[ChainComplex] = None,
                F_max: Optional[int] = None, bp: Optional[BarrierProfile] = None) -> Dict[str, Any]:
        report: Dict[str, Any] = {}
        if c is not None:
            bp = bp or self.profile(c, F_max)
            report["profile"] = bp.to_dict()
            if bp.exact_up_to >= 1:
                report["soundness"] = soundness(bp).to_dict()
            if len(bp.F_values) > 1:
                F = bp.F_values[-1]
                oracle, _ = anneal_barrier_oracle(c, bp.sigma, F, self.restarts, self.sweeps, self.seed)
                report["anneal_upper_bound"] = {"F": F, "E": oracle}
        if cc is not None:
            lm = locally_minimal_distance(cc, self.lm_cap)
            report["d_LM"] = lm.value
            report["d_LM_reason"] = lm.reason
            d_X = quantum_distances(css_from_complex(cc), self.cap, self.threads).d_X
            report["d_X"] = d_X
            if d_X is not None and lm.value is not None and d_X < lm.value:
                raise ArithmeticError(f"d_X = {d_X} is below d_LM = {lm.value}")
        return report
