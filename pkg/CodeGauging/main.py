"""
CodeGauging System
Command-line application that ties the code, complex, gauging, duality, SPT and
energy-barrier analyses together.
"""
import argparse
import inspect
import json
import logging
import os
import sys
from typing import Any, Dict, List, Optional, Tuple

import dotenv
import pandas as pd

from analyzers.barriers import BarrierAnalyzer, profile_frame
from analyzers.gauging import Couplings, GaugeAnalyzer
from analyzers.spt import SPTAnalyzer, build_cluster, dw_disentangle, dw_map, kt_map
from utils.chain_complex import classify_redundancies, homology
from utils.classical_code import ldpc_profile
from utils.code_families import FAMILIES, build_family
from utils.code_file import CodeFile, emit_alist, emit_code_json, emit_complex_json, load_code_file
from utils.config_loader import ConfigLoader
from utils.errors import BudgetExceededError, CodeFileError, CodeGaugingError
from utils.report_writer import emit_csv, emit_report, emit_text, validate_report

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3

OUTPUT_FORMATS = ("json", "csv", "text")


def setup_logging(level: str = "WARNING") -> None:
    """Route log records to stderr so stdout carries only the report."""
    logging.basicConfig(
        level=getattr(logging, str(level).upper(), logging.WARNING),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[logging.StreamHandler(sys.stderr)],
        force=True,
    )


def _has_budget_reason(value: Any) -> bool:
    """True when any "...reason" entry of a nested result is "budget"."""
    if isinstance(value, dict):
        for key, item in value.items():
            if str(key).endswith("reason") and item == "budget":
                return True
            if _has_budget_reason(item):
                return True
    elif isinstance(value, (list, tuple)):
        return any(_has_budget_reason(item) for item in value)
    return False


class CodeGaugingSystem:
    """Main system that runs the analyzers on code files and families."""

    def __init__(self, config_path: Optional[str] = None, overrides: Optional[Dict[str, Any]] = None):
        """Initialize the CodeGauging system.

        Args:
            config_path: Optional JSON file whose sections overlay the defaults
            overrides: Command-line values, applied last
        """
        self.config = self._load_config(config_path)
        self._apply_overrides(overrides or {})

        logger.info("Initializing CodeGauging analyzers")
        self.gauge_analyzer = GaugeAnalyzer(self.config)
        self.spt_analyzer = SPTAnalyzer(self.config)
        self.barrier_analyzer = BarrierAnalyzer(self.config)

    def _load_config(self, config_path: Optional[str]) -> Dict[str, Dict[str, Any]]:
        """Load every section, then overlay the sections of `config_path`."""
        config = ConfigLoader().all_sections()
        if not config_path:
            return config
        try:
            with open(config_path, 'r') as f:
                custom = json.load(f)
        except FileNotFoundError:
            logger.warning(f"Config file not found at {config_path}. Using default configuration.")
            return config
        except json.JSONDecodeError as e:
            raise CodeFileError(f"invalid JSON in config file {config_path}: {e.msg}") from e
        for section, values in custom.items():
            config.setdefault(section, {}).update(values)
        return config

    def _apply_overrides(self, overrides: Dict[str, Any]) -> None:
        system = self.config.setdefault("system", {})
        search = self.config.setdefault("search", {})
        if overrides.get("threads") is not None:
            system["threads"] = overrides["threads"]
        if overrides.get("seed") is not None:
            system["seed"] = overrides["seed"]
        if overrides.get("cap") is not None:
            for key in ("cap", "lm_cap", "subset_cap"):
                search[key] = overrides["cap"]
        if overrides.get("locality_bound") is not None:
            search["locality_bound"] = overrides["locality_bound"]

    @property
    def threads(self) -> int:
        return int(self.config.get("system", {}).get("threads", 1))

    @property
    def cap(self) -> int:
        return int(self.config.get("search", {}).get("cap", 1 << 28))

    # Commands

    def analyze(self, cf: CodeFile) -> Tuple[Dict[str, Any], Optional[pd.DataFrame]]:
        c = cf.classical_code()
        search = self.config.get("search", {})
        parameters = c.parameters(self.cap, self.threads, int(search.get("block_bits", 12)),
                                  bool(self.config.get("system", {}).get("show_progress", False)))
        bound = int(search.get("locality_bound", 8))
        classification = classify_redundancies(c, bound)
        profile = ldpc_profile(c)
        result: Dict[str, Any] = {
            "parameters": parameters.to_dict(),
            "logicals": [v.support() for v in c.logicals_basis],
            "redundancies": {
                "kT": c.kT,
                "local": [v.support() for v in classification.local],
                "global_classes": classification.global_classes,
                "method": classification.method,
                "locality_bound": bound,
            },
            "ldpc": {"max_check_weight": profile.max_check_weight,
                     "max_bit_degree": profile.max_bit_degree,
                     "duplicate_checks": [list(p) for p in profile.duplicate_checks]},
        }
        cc = cf.chain_complex()
        if cc is not None:
            result["homology"] = [homology(cc, q).to_dict() for q in range(cc.D + 1)]
        return result, None

    def gauge(self, cf: CodeFile, plaquettes: str = "auto",
              couplings: Optional[str] = None) -> Tuple[Dict[str, Any], Optional[pd.DataFrame]]:
        c = cf.classical_code()
        if plaquettes == "auto":
            cc = cf.chain_complex()
            matrix = cc.boundary(2) if cc is not None and cc.D == 2 else None
        elif plaquettes == "none":
            matrix = None
        else:
            matrix = load_code_file(plaquettes).plaquettes
            if matrix is None:
                raise CodeFileError(f"{plaquettes} carries no plaquettes")
        parsed = Couplings.parse(couplings) if couplings else None
        result = self.gauge_analyzer.gauge_report(c, matrix, parsed)
        frame = None
        if "css" in result:
            frame = pd.DataFrame(result["css"]["dictionary"])
        return result, frame

    def dualize(self, cf: CodeFile, map_name: str = "kw",
                extended: bool = False) -> Tuple[Dict[str, Any], Optional[pd.DataFrame]]:
        c = cf.classical_code()
        if map_name == "kw":
            result = self.gauge_analyzer.dualize_report(c, extended)
            frame = pd.DataFrame(result["images"]) if "images" in result else None
            result["verified"] = True
            return result, frame
        if map_name == "dw":
            dw_disentangle(build_cluster(c))
            table = dw_map(c).image_table()
        elif map_name == "kt":
            table = kt_map(c).image_table()
        else:
            raise ValueError(f"unknown map: {map_name}")
        result = {"map": map_name, "extended": map_name == "kt", "verified": True,
                  "images": table.to_dict(orient="records")}
        return result, table

    def spt(self, cf: CodeFile, obc: Optional[str] = None) -> Tuple[Dict[str, Any], Optional[pd.DataFrame]]:
        return self.spt_analyzer.analyze(cf.classical_code(), cf.chain_complex(), obc), None

    def barrier(self, cf: CodeFile, F_max: Optional[int] = None) -> Tuple[Dict[str, Any], Optional[pd.DataFrame]]:
        c = cf.classical_code()
        cc = cf.chain_complex()
        bp = self.barrier_analyzer.profile(c, F_max)
        result = self.barrier_analyzer.analyze(c, cc if cc is not None and cc.D == 2 else None, F_max, bp)
        return result, profile_frame(bp)

    def family(self, name: str, params: Dict[str, Any], fmt: str = "json") -> str:
        """Serialized code or complex of a family member."""
        if name not in FAMILIES:
            raise ValueError(f"unknown family: {name}")
        accepted = inspect.signature(FAMILIES[name]).parameters
        kwargs = {k: v for k, v in params.items() if v is not None and k in accepted}
        instance = build_family(name, **kwargs)
        indent = int(self.config.get("output", {}).get("indent", 2))
        if instance.code is not None:
            if fmt == "alist":
                if instance.plaquettes is not None:
                    logger.warning("alist cannot carry plaquettes; emitting the code only")
                return emit_alist(instance.code)
            return emit_code_json(instance.code, instance.plaquettes, indent)
        if fmt == "alist":
            raise ValueError(f"{name} is a chain complex; use --format json")
        return emit_complex_json(instance.complex, indent)


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--threads', type=int, default=argparse.SUPPRESS, help='Worker threads for enumerations')
    common.add_argument('--seed', type=int, default=argparse.SUPPRESS, help='Seed for randomized constructions')
    common.add_argument('--cap', type=int, default=argparse.SUPPRESS, help='Enumeration budget for exact searches')
    common.add_argument('--output', choices=OUTPUT_FORMATS, default=argparse.SUPPRESS, help='Report format')
    common.add_argument('--config', type=str, default=argparse.SUPPRESS, help='Path to configuration file')
    return common


class _UsageExitParser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = _UsageExitParser(description='CodeGauging System', parents=[common])
    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True

    analyze = commands.add_parser('analyze', parents=[common], help='Code parameters and redundancies')
    analyze.add_argument('codefile')
    analyze.add_argument('--locality-bound', dest='locality_bound', type=int,
                         help='Largest support of a local redundancy')

    gauge = commands.add_parser('gauge', parents=[common], help='Gauge a code and extract its CSS code')
    gauge.add_argument('codefile')
    gauge.add_argument('--plaquettes', default='auto', help='auto, none, or a JSON code file with plaquettes')
    gauge.add_argument('--couplings', help='J,g,K,Gamma[,lambda]')

    dualize = commands.add_parser('dualize', parents=[common], help='KW, DW or KT generator images')
    dualize.add_argument('codefile')
    dualize.add_argument('--map', dest='map_name', choices=('kw', 'dw', 'kt'), default='kw')
    dualize.add_argument('--extended', action='store_true', help='Extended KW on the ancilla register')

    spt = commands.add_parser('spt', parents=[common], help='Cluster SPT Hamiltonian and edge modes')
    spt.add_argument('codefile')
    spt.add_argument('--obc', choices=('1complex', 'rough'), help='Open-boundary construction')
    spt.add_argument('--locality-bound', dest='locality_bound', type=int,
                     help='Largest support of a local redundancy')

    barrier = commands.add_parser('barrier', parents=[common], help='Energy-barrier profile and soundness')
    barrier.add_argument('codefile')
    barrier.add_argument('--Fmax', dest='F_max', type=int, help='Largest number of flipped spins')

    family = commands.add_parser('family', parents=[common], help='Emit a code or complex from a family')
    family.add_argument('name', choices=sorted(FAMILIES))
    family.add_argument('--D', dest='D', type=int)
    family.add_argument('--L', dest='L', type=int)
    family.add_argument('--boundary', choices=('periodic', 'open'))
    family.add_argument('--n', dest='n', type=int)
    family.add_argument('--bit-degree', dest='bit_degree', type=int)
    family.add_argument('--check-degree', dest='check_degree', type=int)
    family.add_argument('--format', dest='fmt', choices=('alist', 'json'), default='json')
    family.add_argument('--out', help='Write to this file instead of stdout')
    return parser


def _render(report: Dict[str, Any], frame: Optional[pd.DataFrame], fmt: str, indent: int) -> str:
    if fmt == "csv":
        if frame is None:
            raise argparse.ArgumentTypeError(f"command {report['command']} has no tabular output")
        return emit_csv(frame)
    if fmt == "text":
        return emit_text(report)
    return emit_report(report, indent)


def run(args: argparse.Namespace, out=None) -> int:
    """Execute one parsed command and write its output; returns the exit code."""
    out = out or sys.stdout
    overrides = {key: getattr(args, key, None) for key in ("threads", "seed", "cap", "locality_bound")}
    system = CodeGaugingSystem(getattr(args, 'config', None), overrides)
    output = system.config.get("output", {})
    fmt = getattr(args, 'output', None) or output.get("format", "json")
    indent = int(output.get("indent", 2))

    if args.command == "family":
        params = {"D": args.D, "L": args.L, "boundary": args.boundary, "n": args.n,
                  "bit_degree": args.bit_degree, "check_degree": args.check_degree,
                  "seed": getattr(args, 'seed', None)}
        text = system.family(args.name, params, args.fmt)
        if args.out:
            with open(args.out, 'w') as f:
                f.write(text)
            logger.info(f"Family {args.name} written to {args.out}")
        else:
            out.write(text)
        return EXIT_OK

    cf = load_code_file(args.codefile)
    if args.command == "analyze":
        result, frame = system.analyze(cf)
    elif args.command == "gauge":
        result, frame = system.gauge(cf, args.plaquettes, args.couplings)
    elif args.command == "dualize":
        result, frame = system.dualize(cf, args.map_name, args.extended)
    elif args.command == "spt":
        result, frame = system.spt(cf, args.obc)
    else:
        result, frame = system.barrier(cf, args.F_max)

    report = {
        "schema_version": int(output.get("schema_version", 1)),
        "command": args.command,
        "input": os.path.basename(args.codefile),
        "parameters": {"cap": system.cap},
        "result": result,
    }
    problems = validate_report(report)
    if problems:
        raise CodeGaugingError(f"report failed validation: {problems}")
    out.write(_render(report, frame, fmt, indent))
    if _has_budget_reason(result):
        logger.warning("Some exact results were absent because an enumeration budget was exceeded")
        return EXIT_BUDGET
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for the CodeGauging system."""
    dotenv.load_dotenv()
    setup_logging(ConfigLoader().get_system_config().get("log_level", "WARNING"))
    args = build_parser().parse_args(argv)
    try:
        return run(args)
    except CodeFileError as e:
        logger.error(f"Could not read input: {e}")
        return EXIT_PARSE
    except BudgetExceededError as e:
        logger.error(f"Budget exceeded: {e}")
        return EXIT_BUDGET
    except (CodeGaugingError, ValueError, argparse.ArgumentTypeError) as e:
        logger.error(f"Command {args.command} failed: {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
