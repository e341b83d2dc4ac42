import argparse
import logging
import re
import sys
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from src.cli.label_parser import LabelParseError
from src.cli.reports import EXIT_CAP, EXIT_INTERNAL, EXIT_USAGE, StructuredReport
from src.configuration_managing.engine_settings import InvalidSeedError
from src.enumerator.subgroup_enumerator import AmbientCapExceededError
from src.function_field.aut_map import AutOrderCapExceededError
from src.function_field.expression_parser import ExpressionParseError
from src.function_field.cover_registry import RegistryError
from src.group_managing.iso_check import IsoBoundExceededError
from src.orchestrator.orchestrator import Orchestrator
from src.realizability.witness_builder import NotRealizableError
from src.torsion_lattice.lattice_class import LatticeClass
from src.torsion_lattice.torsion_subgroup import ClosureCapExceededError

USAGE_ERRORS = (LabelParseError, ExpressionParseError, RegistryError, InvalidSeedError)
CAP_ERRORS = (ClosureCapExceededError, AmbientCapExceededError, AutOrderCapExceededError, IsoBoundExceededError)

_TRIPLE = re.compile(r"^\(?\s*([^,:()\s]+)\s*[,:]\s*([^,:()\s]+)\s*[,:]\s*([^,:()\s]+)\s*\)?$")

VERIFY_COMMAND = "verify-paper"
VERIFY_ALIASES = ("verify-covers",)


class UsageError(Exception):
    """Exception raised for malformed command lines instead of exiting."""
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_generator(token: str, torsion: Optional[int] = None) -> Tuple[int, Fraction, Fraction]:
    """
    Read a generator ``j,u,v`` (or ``j:u:v``, optionally parenthesised).

    With ``torsion`` N, u and v are numerators over N.
    """
    match = _TRIPLE.match(token.strip())
    if not match:
        raise UsageError(f"Generator {token!r} is not of the form j,u,v")
    try:
        j = int(match.group(1))
        u, v = Fraction(match.group(2)), Fraction(match.group(3))
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"Generator {token!r}: {e}") from e
    if torsion:
        u, v = u / torsion, v / torsion
    return j, u, v


def _lattice(name: str) -> LatticeClass:
    try:
        return LatticeClass.from_name(name)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from e
    if value < 1:
        raise argparse.ArgumentTypeError(f"{value} must be positive")
    return value


def _seed(text: str) -> int:
    try:
        value = int(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer seed") from e
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError(f"Seed {value} is outside the unsigned 64-bit range")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "structured"), default="human",
                        help="human-readable text or a single JSON record")
    common.add_argument("--config-dir", default="./config", help="directory of the YAML configuration")
    common.add_argument("--log-file", default=None, help="log file (default from configuration)")
    common.add_argument("--cap", type=_positive, default=None, help="override the closure or enumeration cap")

    parser = _Parser(description="Automorphism groups of elliptic curves and Galois groups at Galois points")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    classify_parser = subparsers.add_parser("classify", parents=[common], help="name the group generated by (j, u, v)")
    classify_parser.add_argument("generators", nargs="*", help="generators j,u,v: z -> e^j z + u + v*zeta")
    classify_parser.add_argument("--lattice", type=_lattice, required=True, help="generic, square or hex")
    classify_parser.add_argument("--torsion", type=_positive, default=None,
                                 help="read u and v as numerators over N")

    realize_parser = subparsers.add_parser("realize", parents=[common], help="build a witness for a label")
    realize_parser.add_argument("label")

    galois_parser = subparsers.add_parser("galois-check", parents=[common],
                                          help="decide whether a label is a Galois group at a Galois point")
    galois_parser.add_argument("label")

    enumerate_parser = subparsers.add_parser("enumerate", parents=[common], help="subgroup census of E[N] x| mu_l")
    enumerate_parser.add_argument("--lattice", type=_lattice, required=True)
    enumerate_parser.add_argument("--torsion", type=_positive, required=True)
    enumerate_parser.add_argument("--snapshot", nargs="?", const="", default=None,
                                  help="write a census snapshot (default path from configuration)")

    census_parser = subparsers.add_parser("census-check", parents=[common],
                                          help="check enumerations against the classification")
    census_parser.add_argument("--lattice", type=_lattice, default=None)
    census_parser.add_argument("--torsion", type=_positive, default=None, help="largest level N to enumerate")
    census_parser.add_argument("--extended", action="store_true", help="also run the extended sweep")
    census_parser.add_argument("--compare", default=None, help="snapshot whose census must match")

    verify_parser = subparsers.add_parser(VERIFY_COMMAND, aliases=list(VERIFY_ALIASES), parents=[common],
                                          help="verify the Galois-cover registry and worked examples")
    verify_parser.add_argument("--example", type=_positive, default=None, help="8 or a registry id (13-19)")
    verify_parser.add_argument("--seed", type=_seed, default=None)

    degree_parser = subparsers.add_parser("degree", parents=[common], help="degree of a function on a curve")
    degree_parser.add_argument("expression", help="rational expression in x, y (w for the root of unity)")
    degree_parser.add_argument("--example", type=_positive, default=None, help="use a registry entry's curve")
    degree_parser.add_argument("--field", default="Q", help="Q, Q(e3) or Q(e4)")
    degree_parser.add_argument("--weierstrass", nargs=2, metavar=("P", "Q"), default=("0", "1"),
                               help="coefficients of y^2 = x^3 + P x + Q")
    degree_parser.add_argument("--seed", type=_seed, default=None)
    return parser


def _canonical(command: str) -> str:
    return VERIFY_COMMAND if command in VERIFY_ALIASES else command


def _census_sweep(args) -> Optional[List[Tuple[str, int]]]:
    if args.lattice is None and args.torsion is None:
        return None
    if args.lattice is None or args.torsion is None:
        raise UsageError("--lattice and --torsion must be given together")
    return [(args.lattice.value, args.torsion)]


def run(args, orchestrator) -> StructuredReport:
    """Dispatch parsed arguments to the orchestrator."""
    command = _canonical(args.command)
    if command == "classify":
        if not args.generators:
            raise UsageError("classify needs at least one generator")
        generators = [parse_generator(token, args.torsion) for token in args.generators]
        return orchestrator.classify_generators(args.lattice, generators, cap=args.cap)
    if command == "realize":
        try:
            return orchestrator.realize_label(args.label, cap=args.cap)
        except NotRealizableError as e:
            return StructuredReport.verdict("realize", False, {"label": args.label, "reason": str(e),
                                                               "condition": e.condition})
    if command == "galois-check":
        return orchestrator.galois_check(args.label)
    if command == "enumerate":
        return orchestrator.enumerate(args.lattice, args.torsion, snapshot=args.snapshot, cap=args.cap)
    if command == "census-check":
        return orchestrator.census_check(_census_sweep(args), extended=args.extended,
                                         compare=args.compare, cap=args.cap)
    if command == VERIFY_COMMAND:
        return orchestrator.verify_registry(args.example, seed=args.seed)
    if command == "degree":
        p, q = args.weierstrass
        return orchestrator.degree(args.expression, example_id=args.example, field_tag=args.field,
                                   p=p, q=q, seed=args.seed)
    raise UsageError(f"Unknown command {command!r}")


def _requested_format(argv: Sequence[str]) -> str:
    argv = list(argv)
    for i, token in enumerate(argv):
        if token == "--format" and i + 1 < len(argv):
            return argv[i + 1]
        if token.startswith("--format="):
            return token.split("=", 1)[1]
    return "human"


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one command and print its report.

    Returns:
        int: 0 pass, 1 fail, 2 usage or parse error, 3 cap exceeded, 4 internal error.
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    output_format = _requested_format(argv)
    command = next((token for token in argv if not token.startswith("-")), "")
    try:
        args = build_parser().parse_args(argv)
        command = _canonical(args.command)
        output_format = args.format
        orchestrator = Orchestrator(config_dir=args.config_dir, log_file=args.log_file)
        report = run(args, orchestrator)
    except (UsageError, *USAGE_ERRORS) as e:
        report = StructuredReport.error(command, str(e), EXIT_USAGE, type(e).__name__)
    except CAP_ERRORS as e:
        report = StructuredReport.error(command, str(e), EXIT_CAP, type(e).__name__)
    except Exception as e:
        logging.getLogger(__name__).exception(f"Command {command!r} failed")
        report = StructuredReport.error(command, str(e), EXIT_INTERNAL, type(e).__name__)
    print(report.render(output_format))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
