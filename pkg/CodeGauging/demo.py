"""
Demo script for the CodeGauging System.
This script walks the example families through gauging, dualities, SPT
construction and energy barriers.
"""
import logging
import sys

from analyzers.barriers import energy_barrier, locally_minimal_distance, soundness
from analyzers.gauging import (Couplings, GaugeAnalyzer, css_from_complex, kw_dual_hamiltonian,
                               quantum_distances, rate_identity_check)
from analyzers.spt import build_cluster, dw_disentangle, kt_map, open_boundaries_1complex
from utils.chain_complex import attach_local_redundancies, classify_redundancies
from utils.code_families import ising, newman_moore, toric_complex
from utils.config_loader import ConfigLoader

# Set up logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
                    handlers=[logging.StreamHandler(sys.stderr)])
logger = logging.getLogger(__name__)


def main():
    """Run the demo."""
    logger.info("Starting CodeGauging System Demo")

    config_loader = ConfigLoader()
    search_config = config_loader.get_search_config()
    logger.info(f"Loaded search configuration: {search_config}")

    # Demo: classical codes and their parameters
    chain = ising(1, 8).code
    plane = ising(2, 4)
    logger.info(f"1D Ising parameters: {chain.parameters()}")
    logger.info(f"2D Ising parameters: {plane.code.parameters()}")
    classification = classify_redundancies(plane.code, 4)
    logger.info(f"2D Ising: {len(classification.local)} local redundancies, "
                f"{classification.global_classes} global")

    # Demo: Kramers-Wannier duality on the Ising chain
    dual = kw_dual_hamiltonian(chain)
    logger.info(f"KW dual of the transverse-field chain has {len(dual)} terms")

    # Demo: gauging the 2D Ising model gives the toric code
    analyzer = GaugeAnalyzer()
    report = analyzer.gauge_report(plane.code, plane.plaquettes, Couplings(J=0, Gamma=0))
    logger.info(f"Gauged 2D Ising: {report['css']['label']}, "
                f"ground space 2^{report.get('ground_space_log2_dim')}")

    toric = toric_complex(2, 3).complex
    d = css_from_complex(toric)
    logger.info(f"Toric code L=3: k={d.k}, distances={quantum_distances(d)}, "
                f"rate identity {rate_identity_check(d)}")

    # Demo: cluster SPT and its dualities
    cluster = build_cluster(chain)
    dw_disentangle(cluster)
    kt_map(chain)
    boundary = open_boundaries_1complex(cluster)
    logger.info(f"Open cluster chain: boundary sites {boundary.boundary_sites}, "
                f"degeneracy 2^{boundary.log2_degeneracy}")

    # Demo: energy barriers
    profile = energy_barrier(chain)
    logger.info(f"1D Ising E_min: {profile.E_min}, kappa {soundness(profile).kappa_lower_empirical}")
    profile = energy_barrier(plane.code, 6)
    logger.info(f"2D Ising E_min: {profile.E_min}")
    lm = locally_minimal_distance(attach_local_redundancies(plane.code, plane.plaquettes))
    logger.info(f"2D Ising d_LM = {lm.value}")
    nm = newman_moore(4).code
    logger.info(f"Newman-Moore L=4 parameters: {nm.parameters()}")

    logger.info("Demo completed")


if __name__ == "__main__":
    main()
