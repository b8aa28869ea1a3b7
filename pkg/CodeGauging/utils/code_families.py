"""
Deterministic generators for the example codes of the CodeGauging System.

Every generator returns a FamilyInstance holding the code and/or chain complex,
an optional plaquette (local redundancy) basis, and the parameters the
construction is known to have, so tests can compare against exact rank
computations.

Lattice conventions: sites of the D-torus of side L are indexed in C order
(last coordinate fastest). Edge (mu, s) joins s and s + e_mu; plaquette
(mu < nu, s) has corners s, s + e_mu, s + e_nu, s + e_mu + e_nu.
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Callable, Dict, List, Optional, Tuple

import networkx as nx
import numpy as np

from utils.chain_complex import ChainComplex
from utils.classical_code import ClassicalCode, tanner_graph
from utils.gf2 import GF2Matrix

logger = logging.getLogger(__name__)

PERIODIC = "periodic"
OPEN = "open"


@dataclass(frozen=True)
class FamilySpec:
    """Name and size parameters of a family member."""
    name: str
    dimensions: Tuple[int, ...]
    boundary: str = PERIODIC
    seed: Optional[int] = None

    def __post_init__(self):
        if self.name not in FAMILIES:
            raise ValueError(f"unknown family: {self.name}")
        if self.boundary not in (PERIODIC, OPEN):
            raise ValueError(f"unknown boundary type: {self.boundary}")
        if self.name != "expander" and self.dimensions and self.dimensions[-1] < 2:
            raise ValueError("lattice size L must be at least 2")


@dataclass
class FamilyInstance:
    """A generated code or complex together with its expected parameters."""
    spec: FamilySpec
    code: Optional[ClassicalCode] = None
    complex: Optional[ChainComplex] = None
    plaquettes: Optional[GF2Matrix] = None
    expected: Dict[str, Any] = field(default_factory=dict)
    diagnostics: Dict[str, Any] = field(default_factory=dict)


class _CubicLattice:
    """Cells of the D-dimensional cubic lattice of side L."""

    def __init__(self, D: int, L: int, periodic: bool = True):
        self.D, self.L, self.periodic = D, L, periodic
        self.shape = (L,) * D
        self.n_sites = L ** D
        self.coords = np.array(list(np.ndindex(*self.shape)), dtype=np.int64).reshape(self.n_sites, D)

    def shift(self, s: int, *directions: int) -> Optional[int]:
        """Index of s + sum(e_d); None when it leaves an open box."""
        c = self.coords[s].copy()
        for d in directions:
            c[d] += 1
        if not self.periodic and np.any(c >= self.L):
            return None
        return int(np.ravel_multi_index(tuple(c % self.L), self.shape))

    def edges(self) -> List[Tuple[int, int]]:
        return [(mu, s) for mu in range(self.D) for s in range(self.n_sites)
                if self.shift(s, mu) is not None]

    def plaquettes(self) -> List[Tuple[int, int, int]]:
        return [(mu, nu, s) for mu, nu in combinations(range(self.D), 2) for s in range(self.n_sites)
                if self.shift(s, mu, nu) is not None]

    def cubes(self) -> List[Tuple[Tuple[int, int, int], int]]:
        return [(triple, s) for triple in combinations(range(self.D), 3) for s in range(self.n_sites)
                if self.shift(s, *triple) is not None]

    def plaquette_corners(self, mu: int, nu: int, s: int) -> List[int]:
        return [s, self.shift(s, mu), self.shift(s, nu), self.shift(s, mu, nu)]

    def site_label(self, s: int) -> str:
        return "(" + ",".join(str(int(x)) for x in self.coords[s]) + ")"


def _incidence(rows: int, cols: int, entries) -> GF2Matrix:
    return GF2Matrix.from_sparse(rows, cols, entries)


def _cell_maps(lattice: _CubicLattice, top: int):
    """Boundary maps delta_1..delta_top of the cubic lattice, with cell lists."""
    edges = lattice.edges()
    edge_index = {e: i for i, e in enumerate(edges)}
    delta1 = _incidence(lattice.n_sites, len(edges),
                        [(s, i) for i, (mu, s) in enumerate(edges)] +
                        [(lattice.shift(s, mu), i) for i, (mu, s) in enumerate(edges)])
    maps = [delta1]
    cells = {"edges": edges}
    if top >= 2:
        plaqs = lattice.plaquettes()
        plaq_index = {p: i for i, p in enumerate(plaqs)}
        entries = []
        for p, (mu, nu, s) in enumerate(plaqs):
            for e in ((mu, s), (nu, lattice.shift(s, mu)), (mu, lattice.shift(s, nu)), (nu, s)):
                entries.append((edge_index[e], p))
        maps.append(_incidence(len(edges), len(plaqs), entries))
        cells["plaquettes"] = plaqs
    if top >= 3:
        cubes = lattice.cubes()
        entries = []
        for c, ((a, b, d), s) in enumerate(cubes):
            for (mu, nu), rho in (((a, b), d), ((a, d), b), ((b, d), a)):
                entries.append((plaq_index[(mu, nu, s)], c))
                entries.append((plaq_index[(mu, nu, lattice.shift(s, rho))], c))
        maps.append(_incidence(len(cells["plaquettes"]), len(cubes), entries))
        cells["cubes"] = cubes
    return maps, cells


def btp_ratio(k: int, d: int, n: int, D: int, quantum: bool = False) -> float:
    """k d^(1/D) / n (classical) or k d^(2/(D-1)) / n (quantum).

    Geometrically local codes in D dimensions keep this ratio bounded; the toric
    family sits exactly at 1.
    """
    exponent = 2.0 / (D - 1) if quantum else 1.0 / D
    return k * d ** exponent / n


def ising(D: int, L: int, boundary: str = PERIODIC) -> FamilyInstance:
    """Nearest-neighbour Ising code; plaquette redundancies attached for D >= 2."""
    spec = FamilySpec("ising", (D, L), boundary)
    lattice = _CubicLattice(D, L, boundary == PERIODIC)
    maps, cells = _cell_maps(lattice, 2 if D >= 2 else 1)
    code = ClassicalCode(maps[0], bit_labels=[lattice.site_label(s) for s in range(lattice.n_sites)],
                         check_labels=[f"{lattice.site_label(s)}+e{mu}" for mu, s in cells["edges"]],
                         name=f"ising(D={D},L={L},{boundary})")
    plaquettes = maps[1] if D >= 2 else None
    n = L ** D
    expected = {"n": n, "k": 1, "d": n, "m": len(cells["edges"]), "kT": len(cells["edges"]) - n + 1}
    diagnostics = {"btp_ratio": btp_ratio(1, n, n, D)}
    logger.info(f"Built {code.name}")
    return FamilyInstance(spec, code=code, plaquettes=plaquettes, expected=expected,
                          diagnostics=diagnostics)


def plaquette_ising(D: int, L: int) -> FamilyInstance:
    """Four-spin plaquette checks on the periodic D-torus."""
    spec = FamilySpec("plaquette_ising", (D, L))
    lattice = _CubicLattice(D, L)
    plaqs = lattice.plaquettes()
    entries = [(corner, p) for p, (mu, nu, s) in enumerate(plaqs)
               for corner in lattice.plaquette_corners(mu, nu, s)]
    code = ClassicalCode(_incidence(lattice.n_sites, len(plaqs), entries),
                         name=f"plaquette_ising(D={D},L={L})")
    n = L ** D
    k = D * (L - 1) + 1
    expected = {"n": n, "k": k, "d": L ** (D - 1)}
    return FamilyInstance(spec, code=code, expected=expected,
                          diagnostics={"btp_ratio": btp_ratio(k, L ** (D - 1), n, D)})


def newman_moore(L: int) -> FamilyInstance:
    """Three-spin triangle checks: check (i, j) acts on (i, j), (i+1, j), (i, j+1) mod L."""
    spec = FamilySpec("newman_moore", (2, L))
    lattice = _CubicLattice(2, L)
    entries = []
    for s in range(lattice.n_sites):
        for corner in (s, lattice.shift(s, 0), lattice.shift(s, 1)):
            entries.append((corner, s))
    code = ClassicalCode(_incidence(lattice.n_sites, lattice.n_sites, entries),
                         name=f"newman_moore(L={L})")
    expected: Dict[str, Any] = {"n": L * L, "m": L * L}
    if L & (L - 1) == 0:
        expected["k"] = 0
    return FamilyInstance(spec, code=code, expected=expected)


def toric_complex(D: int, L: int, top: int = 2) -> FamilyInstance:
    """Sites-edges-plaquettes (and cubes when top = 3) complex of the D-torus."""
    spec = FamilySpec("toric", (D, L))
    lattice = _CubicLattice(D, L)
    maps, cells = _cell_maps(lattice, top)
    cc = ChainComplex(list(reversed(maps)))
    n = len(cells["edges"])
    expected = {"n": n, "k": D, "d": L}
    diagnostics = {"btp_ratio": btp_ratio(D, L, n, D, quantum=True)} if D >= 2 else {}
    logger.info(f"Built toric complex D={D} L={L} levels={cc.level_sizes}")
    return FamilyInstance(spec, complex=cc, expected=expected, diagnostics=diagnostics)


def xcube_complex(L: int) -> FamilyInstance:
    """X-cube model with qubits on plaquettes.

    X-checks sit on sites and act on the 12 plaquettes touching the site. Each
    cube carries three 4-body Z-checks; the check for direction rho acts on the
    four faces whose plane contains rho.
    """
    spec = FamilySpec("xcube", (3, L))
    lattice = _CubicLattice(3, L)
    plaqs = lattice.plaquettes()
    plaq_index = {p: i for i, p in enumerate(plaqs)}
    x_entries = [(corner, p) for p, (mu, nu, s) in enumerate(plaqs)
                 for corner in lattice.plaquette_corners(mu, nu, s)]
    delta1 = _incidence(lattice.n_sites, len(plaqs), x_entries)
    z_entries = []
    for s in range(lattice.n_sites):
        for rho in range(3):
            col = 3 * s + rho
            for mu, nu in combinations(range(3), 2):
                if rho not in (mu, nu):
                    continue
                other = ({0, 1, 2} - {mu, nu}).pop()
                z_entries.append((plaq_index[(mu, nu, s)], col))
                z_entries.append((plaq_index[(mu, nu, lattice.shift(s, other))], col))
    delta2 = _incidence(len(plaqs), 3 * lattice.n_sites, z_entries)
    cc = ChainComplex([delta2, delta1])
    expected = {"n": 3 * L ** 3, "k": 3 * (2 * L - 1), "d": L}
    return FamilyInstance(spec, complex=cc, expected=expected)


HAAH_X_QUBIT0 = ((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1))
HAAH_X_QUBIT1 = ((0, 0, 0), (1, 1, 0), (0, 1, 1), (1, 0, 1))


def haah_code(L: int) -> FamilyInstance:
    """Haah's cubic code on 2 L^3 qubits (qubit 2s + t is copy t at site s).

    With f = 1 + x + y + z and g = 1 + xy + yz + zx, the X-check at s applies X to
    copy 0 at s + f and to copy 1 at s + g. The Z-check at s applies Z to copy 0
    at s - g and to copy 1 at s - f. Both live on the corners of a cube, and each
    overlap count is twice a coefficient of f g.
    """
    spec = FamilySpec("haah", (3, L))
    lattice = _CubicLattice(3, L)

    def site(s: int, offset, sign: int) -> int:
        c = (lattice.coords[s] + sign * np.array(offset)) % L
        return int(np.ravel_multi_index(tuple(c), lattice.shape))

    x_entries, z_entries = [], []
    for s in range(lattice.n_sites):
        x_entries += [(s, 2 * site(s, m, 1)) for m in HAAH_X_QUBIT0]
        x_entries += [(s, 2 * site(s, m, 1) + 1) for m in HAAH_X_QUBIT1]
        z_entries += [(2 * site(s, m, -1), s) for m in HAAH_X_QUBIT1]
        z_entries += [(2 * site(s, m, -1) + 1, s) for m in HAAH_X_QUBIT0]
    n = 2 * lattice.n_sites
    cc = ChainComplex([_incidence(n, lattice.n_sites, z_entries),
                       _incidence(lattice.n_sites, n, x_entries)])
    return FamilyInstance(spec, complex=cc, expected={"n": n})


def random_expander_code(n: int, bit_degree: int, check_degree: int, seed: int = 0,
                         sample_size: int = 3, samples: int = 200) -> FamilyInstance:
    """Random (bit_degree, check_degree)-regular Tanner graph by permutation fusion.

    Sockets 0..n*bit_degree-1 are split among bits in consecutive runs; a seeded
    random permutation assigns each socket to a check socket. Parallel edges
    cancel mod 2 and checks left empty are removed.
    """
    if (n * bit_degree) % check_degree:
        raise ValueError("n * bit_degree must be divisible by check_degree")
    spec = FamilySpec("expander", (n, bit_degree, check_degree), seed=seed)
    m = n * bit_degree // check_degree
    rng = np.random.default_rng(seed)
    perm = rng.permutation(n * bit_degree)
    entries = [(s // bit_degree, int(perm[s]) // check_degree) for s in range(n * bit_degree)]
    delta = _incidence(n, m, entries)
    keep = np.flatnonzero(delta.column_weights() > 0)
    if keep.size < m:
        logger.info(f"Expander fusion emptied {m - keep.size} check(s)")
        delta = delta.select_columns(keep.tolist())
    code = ClassicalCode(delta, name=f"expander(n={n},{bit_degree},{check_degree},seed={seed})")
    cancelled = len(entries) - int(delta.column_weights().sum())
    diagnostics = {
        "cancelled_edges": cancelled,
        "dropped_checks": int(m - keep.size),
        "expansion_estimate": _expansion_estimate(code, bit_degree, sample_size, samples, rng),
    }
    return FamilyInstance(spec, code=code, expected={"n": n, "m": int(keep.size), "k_min": n - m},
                          diagnostics=diagnostics)


def _expansion_estimate(code: ClassicalCode, bit_degree: int, sample_size: int, samples: int,
                        rng: np.random.Generator) -> float:
    """Smallest sampled |N(S)| / (bit_degree |S|) over bit sets with |S| <= sample_size."""
    graph = tanner_graph(code)
    best = 1.0
    for _ in range(samples):
        size = int(rng.integers(1, sample_size + 1))
        chosen = rng.choice(code.n, size=min(size, code.n), replace=False)
        neighbours = nx.node_boundary(graph, [f"b{int(i)}" for i in chosen])
        best = min(best, len(neighbours) / (bit_degree * len(chosen)))
    return best


def classical_gauge_theory_code(L: int) -> FamilyInstance:
    """Bits on edges, checks on plaquettes of the 3-torus; cubes as plaquette basis."""
    spec = FamilySpec("gauge_theory_3d", (3, L))
    lattice = _CubicLattice(3, L)
    maps, cells = _cell_maps(lattice, 3)
    code = ClassicalCode(maps[1], name=f"classical_gauge_theory(L={L})")
    stars = maps[0].transpose()
    return FamilyInstance(spec, code=code, plaquettes=maps[2],
                          expected={"n": len(cells["edges"]), "m": len(cells["plaquettes"])},
                          diagnostics={"site_stars": stars})


FAMILIES: Dict[str, Callable[..., FamilyInstance]] = {
    "ising": ising,
    "plaquette_ising": plaquette_ising,
    "newman_moore": newman_moore,
    "toric": toric_complex,
    "xcube": xcube_complex,
    "haah": haah_code,
    "expander": random_expander_code,
    "gauge_theory_3d": classical_gauge_theory_code,
}


def build_family(name: str, **params: Any) -> FamilyInstance:
    """Look up a family by name and build it from keyword parameters."""
    try:
        generator = FAMILIES[name]
    except KeyError:
        raise ValueError(f"unknown family: {name}") from None
    return generator(**params)
