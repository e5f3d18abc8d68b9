import json
import logging
import sys
import time
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

from .argparsers import build_parser
from .codes import (
    PairDecision,
    PairInstance,
    Status,
    Verdict,
    decide_pair,
    double_coset_condition,
    is_perfect_code_of_group,
    per_class_transversals_exist,
    search_pair_transversal,
    square_coset_condition,
    verify_group_witness,
    verify_pair_witness,
)
from .config import configure, get_settings, reset
from .constructions import TripleSpec, is_family_spec, parse_family
from .errors import (
    ConsistencyViolation,
    DomainNotInvariant,
    ElementNotInGroup,
    EnumerationCapExceeded,
    FieldTooLarge,
    HypothesisNotMet,
    InvalidConnectionSet,
    InvalidInput,
    NotASubgroup,
    NotPrime,
    ParameterOutOfRange,
    ParseError,
    PerfectCodesError,
    PreconditionViolated,
    TooManyDoubleCosetClasses,
)
from .graphs import (
    compare_modes,
    coset_graph,
    find_witness_connection_set,
    is_left_action_invariant,
    is_perfect_code_in_graph,
)
from .groups import trivial_group
from .named_groups import parse_group
from .reports import EXIT_INVALID_INSTANCE, EXIT_PROPERTY_FAILURE, EXIT_USAGE, RunReport
from .verification import family_claims, survey_maximal, verify_claims

log = logging.getLogger("perfectcodes.cli")

INVALID_INSTANCE_ERRORS = (
    NotASubgroup,
    ElementNotInGroup,
    ParameterOutOfRange,
    HypothesisNotMet,
    PreconditionViolated,
    InvalidInput,
    InvalidConnectionSet,
    NotPrime,
    FieldTooLarge,
    DomainNotInvariant,
    EnumerationCapExceeded,
    TooManyDoubleCosetClasses,
)
STATUS_VALUES = {status.value for status in Status}
LOG_HANDLER = "perfectcodes-cli"


def _configure_logging(verbose: int, level: Optional[str]):
    if level is None:
        level = ("WARNING", "INFO", "DEBUG")[min(verbose, 2)]
    logger = logging.getLogger("perfectcodes")
    logger.setLevel(level)
    for handler in list(logger.handlers):
        if handler.get_name() == LOG_HANDLER:
            logger.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.set_name(LOG_HANDLER)
    handler.setFormatter(logging.Formatter("[%(levelname)s] %(name)s: %(message)s"))
    logger.addHandler(handler)


def _pair_instance(args) -> Tuple[PairInstance, Optional[TripleSpec]]:
    if is_family_spec(args.group):
        triple = parse_family(args.group)
        return triple.instance, triple
    if args.subgroup is None:
        raise ParseError("--subgroup-a is required unless --group names a family")
    G = parse_group(args.group)
    A = parse_group(args.subgroup, G.degree)
    H = parse_group(args.inner, G.degree) if args.inner else trivial_group(G.degree)
    return PairInstance(G, A, H), None


def _record_decision(report: RunReport, inst: PairInstance, decision: PairDecision, timings):
    record = decision.to_record(timings)
    report.verdicts["decision"] = record["verdict"]
    for name, verdict in record["paths"].items():
        report.verdicts[name] = verdict
    report.statistics["necessary_condition"] = decision.necessary.holds
    report.statistics["search_nodes"] = sum(v.search_nodes for v in decision.paths.values())
    report.cross_check["decision paths"] = record["agreement"]
    verdict = decision.verdict
    if verdict.is_perfect_code:
        report.cross_check["witness re-check"] = verify_pair_witness(inst, verdict.witness)


def cmd_check_group(args, report: RunReport):
    if is_family_spec(args.group):
        inst = parse_family(args.group).instance
        G, A = inst.G, inst.A
    else:
        if args.subgroup is None:
            raise ParseError("--subgroup is required unless --group names a family")
        G = parse_group(args.group)
        A = parse_group(args.subgroup, G.degree)
    verdict = is_perfect_code_of_group(G, A)
    report.instance = {"G": G.describe(), "A": A.describe(), "index_A_in_G": G.order // A.order}
    report.verdicts["group"] = verdict.to_record(args.timings)
    conditions = {
        "square-coset condition": square_coset_condition(G, A),
        "double-coset condition": double_coset_condition(G, A),
        "per-class transversals": per_class_transversals_exist(G, A),
    }
    report.statistics["conditions"] = {
        name: {"holds": check.holds, "element": check.element}
        for name, check in conditions.items()
    }
    report.statistics["search_nodes"] = verdict.search_nodes
    if verdict.is_definite:
        for name, check in conditions.items():
            report.cross_check[name] = check.holds == verdict.is_perfect_code
    if verdict.is_perfect_code:
        report.cross_check["witness re-check"] = verify_group_witness(G, A, verdict.witness)


def cmd_check_pair(args, report: RunReport):
    inst, triple = _pair_instance(args)
    report.instance = triple.to_record() if triple else inst.fingerprint()
    decision = decide_pair(inst, cross_check=args.cross_check)
    _record_decision(report, inst, decision, args.timings)


def cmd_witness_graph(args, report: RunReport):
    inst, triple = _pair_instance(args)
    mode = get_settings().mode
    report.instance = triple.to_record() if triple else inst.fingerprint()
    report.instance["mode"] = mode
    U = find_witness_connection_set(inst, mode)
    verdict = search_pair_transversal(inst)
    report.verdicts["pair-transversal-search"] = verdict.to_record(args.timings)
    if verdict.is_definite:
        found = U is not None
        report.cross_check["graph witness iff pair transversal"] = found == verdict.is_perfect_code
    if args.cross_check:
        modes = compare_modes(inst)
        report.cross_check["literal and independent modes"] = modes.pop("agree")
        report.statistics["modes"] = modes
    if U is None:
        report.statistics["connection_set"] = None
        return
    graph = coset_graph(inst.G, inst.H, U)
    code = [i for i, x in enumerate(graph.labels) if x in inst.A]
    report.statistics["connection_set"] = U.to_record()
    report.statistics["graph"] = {
        "vertices": graph.order,
        "edges": len(graph.edges()),
        "regular": graph.is_regular(),
        "code": code,
    }
    report.cross_check["perfect code re-check"] = is_perfect_code_in_graph(graph, code, mode)
    report.cross_check["left action invariant"] = is_left_action_invariant(graph, inst.G, inst.H)
    if args.output:
        text = graph.to_dot() if args.format == "dot" else json.dumps(graph.to_json(), indent=2)
        Path(args.output).write_text(text if text.endswith("\n") else text + "\n")
        log.info("Wrote the witness graph to %s", args.output)


def cmd_construct(args, report: RunReport):
    triple = parse_family(args.family)
    report.instance = triple.to_record()
    decision = decide_pair(triple.instance, cross_check=True)
    _record_decision(report, triple.instance, decision, args.timings)
    expected = next((claim for claim in triple.expected if claim in STATUS_VALUES), None)
    if expected is not None and decision.verdict.is_definite:
        report.cross_check["expected status"] = decision.verdict.status.value == expected
    report.rows = [row.to_record() for row in family_claims(triple)]


def _result(verdict: Verdict) -> str:
    if not verdict.is_definite:
        return "UNKNOWN"
    return "PASS" if verdict.is_perfect_code else "FAIL"


def cmd_survey_maximal(args, report: RunReport):
    report.instance = {"n": args.n}
    entries = []
    for entry, verdict in survey_maximal(args.n, progress=not args.json):
        entries.append(entry.to_record())
        report.verdicts[entry.name] = verdict.to_record(args.timings)
        report.rows.append(
            {
                "statement": f"{entry.name} is a perfect code of S{args.n}",
                "result": _result(verdict),
                "detail": f"order {entry.group.order}, {entry.kind}",
                "definite_required": True,
            }
        )
    report.instance["catalog"] = entries
    report.statistics["classes"] = len(entries)


def cmd_verify_paper(args, report: RunReport):
    rows = verify_claims(progress=not args.json, stretch=args.stretch, samples=args.samples)
    report.rows = [row.to_record() for row in rows]
    report.statistics = {
        result: sum(row.result == result for row in rows) for result in ("PASS", "FAIL", "UNKNOWN")
    }


COMMANDS: Dict[str, Callable] = {
    "check-group": cmd_check_group,
    "check-pair": cmd_check_pair,
    "witness-graph": cmd_witness_graph,
    "construct": cmd_construct,
    "survey-maximal": cmd_survey_maximal,
    "verify-paper": cmd_verify_paper,
}


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
    except ParseError as e:
        print(f"perfectcodes: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    _configure_logging(args.verbose, args.log_level)
    reset()
    try:
        configure(search_budget=args.budget, threads=args.threads, mode=args.mode)
    except InvalidInput as e:
        print(f"perfectcodes: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    report = RunReport(command=argv)
    start = time.perf_counter()
    try:
        COMMANDS[args.command](args, report)
    except ParseError as e:
        print(f"perfectcodes: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except INVALID_INSTANCE_ERRORS as e:
        print(f"perfectcodes: invalid instance: {e}", file=sys.stderr)
        return EXIT_INVALID_INSTANCE
    except ConsistencyViolation as e:
        log.error("Consistency check failed in %s: %s", args.command, e)
        return EXIT_PROPERTY_FAILURE
    except PerfectCodesError:
        log.exception("Unexpected failure in %s", args.command)
        return EXIT_PROPERTY_FAILURE
    if args.timings:
        report.timings = {"total_ms": round((time.perf_counter() - start) * 1000, 3)}
    sys.stdout.write(report.to_json() if args.json else report.to_text())
    return report.exit_code()


if __name__ == "__main__":
    raise SystemExit(main())
