import argparse

from .config import MODES
from .errors import ParseError
from .informations import __version__

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


class NoExitParser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"{value} is not positive")
    return value


def _common_options() -> NoExitParser:
    parser = NoExitParser(add_help=False)
    parser.add_argument("--budget", type=positive_int, help="node limit per independent search")
    parser.add_argument("--mode", choices=MODES, help="perfect code notion used in graphs")
    parser.add_argument("--threads", type=positive_int, help="worker processes for subsearches")
    parser.add_argument("--json", action="store_true", help="print the JSON report")
    parser.add_argument("--timings", action="store_true", help="include elapsed times")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    parser.add_argument("--log-level", choices=LOG_LEVELS, type=str.upper)
    return parser


def _instance_options(parser: argparse.ArgumentParser):
    parser.add_argument(
        "--group",
        required=True,
        help="preset (S4, D8, AGL1_5), generator list '[(1 2 3),(1 2)]' or family 'dihedral:1'",
    )
    parser.add_argument("--subgroup-a", "--subgroup", dest="subgroup", help="the subgroup A")
    parser.add_argument("--subgroup-h", dest="inner", help="the subgroup H of A (default 1)")


def build_parser() -> NoExitParser:
    common = _common_options()
    parser = NoExitParser(
        prog="perfectcodes",
        description="Decide subgroup perfect codes of groups and of group pairs.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True, metavar="command")

    group = commands.add_parser(
        "check-group", parents=[common], help="is A a perfect code of G (every characterization)"
    )
    group.add_argument("--group", required=True, help="the group G or a family spec")
    group.add_argument("--subgroup", help="the subgroup A")

    pair = commands.add_parser(
        "check-pair", parents=[common], help="is A a perfect code of the pair (G, H)"
    )
    _instance_options(pair)
    pair.add_argument("--cross-check", action="store_true", help="run every decision path")

    graph = commands.add_parser(
        "witness-graph", parents=[common], help="search a coset graph in which A is a perfect code"
    )
    _instance_options(graph)
    graph.add_argument("--cross-check", action="store_true", help="compare both graph modes")
    graph.add_argument("--output", help="write the witness graph to this file")
    graph.add_argument("--format", choices=("dot", "json"), default="dot")

    construct = commands.add_parser(
        "construct", parents=[common], help="build a family and decide it"
    )
    construct.add_argument("family", help="family spec such as field_agammal:3,3")

    survey = commands.add_parser(
        "survey-maximal", parents=[common], help="decide every maximal subgroup of Sym(n)"
    )
    survey.add_argument("n", type=positive_int)

    verify = commands.add_parser(
        "verify-paper", parents=[common], help="run every claim check and print one row each"
    )
    verify.add_argument("--stretch", action="store_true", help="add Sym(7) to the survey")
    verify.add_argument("--samples", type=positive_int, default=200, help="oracle instances")
    return parser
