"""
Command-line front end.

    python main.py validate tables/table1.txt
    python main.py tau int 6 --format json
    python main.py qideal -1 2 1+1*w
    python main.py census --order 5 --seed 7 --count 100

Elements that start with a minus sign and are not plain numbers must follow
`--`, e.g. `python main.py qideal -7 -- -2+1*w 3`.
"""
import argparse
import json
import logging
import sys

from algebra.config import with_overrides
from algebra.semigroup_core import (
    SemigroupError, CommutativityViolation, AssociativityViolation, SizeLimitExceeded, load_table, format_table, parse_subset,
)
from algebra.semigroup_ideals import idealizer, separator
from algebra.semigroup_congruence import principal_congruence, quotient
from algebra.semigroup_laws import condition_star_check, check_laws, census
from algebra.ufd_domains import DomainError, parse_domain, parse_element, format_element
from algebra.quad_ideals import IdealError, ideal_from_generators, ideal_mul, conjugate, principal_generator
from algebra.ufd_residues import ResidueError
from algebra.tau_congruence import (
    TauError, UnitModulus, tau_classes, divisor_count, theorem3_check, separator_class_check,
    dprime_coherence_check, section4_check,
)

logger = logging.getLogger(__name__)

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    common.add_argument("--max-abs", type=int, help="integer divisor oracle cap on |a|")
    common.add_argument("--max-deg", type=int, help="polynomial divisor oracle cap on deg a")
    common.add_argument("--max-norm", type=int, help="quadratic divisor oracle cap on N(a)")
    common.add_argument("--max-residues", type=int, help="cap on the order of a residue table D/(m)")
    common.add_argument("--max-transversal", type=int, help="cap on residue lists built without a table")

    parser = argparse.ArgumentParser(description="Separators, principal congruences and gcd congruences.")
    sub = parser.add_subparsers(dest="command", required=True)

    def table_command(name, help_text, with_subset=False):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("table", help="Cayley table file")
        if with_subset:
            p.add_argument("subset", help="comma-separated labels or indices (#k forces an index)")
        return p

    table_command("validate", "check a Cayley table")
    table_command("sep", "idealizer and separator of a subset", with_subset=True)
    table_command("pcong", "principal congruence P_H", with_subset=True)
    table_command("quotient", "factor semigroup S/P_H", with_subset=True)
    table_command("star", "Condition (*)")
    table_command("laws", "every structural check on one table")

    for name, help_text in (("tau", "tau_m classes and divisors"), ("dcount", "number of divisors"),
                            ("thm3", "tau_m = P_J(m) and related checks")):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("domain", help="int, F<p> or Q(<d>)")
        p.add_argument("element")

    p = sub.add_parser("qideal", parents=[common], help="HNF, generator and A*conj(A) of an ideal of O_d")
    p.add_argument("d", type=int)
    p.add_argument("gens", nargs="+")

    p = sub.add_parser("census", parents=[common], help="law suite over generated semigroups")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--count", type=int, help="random mode with this many tables (needs --seed)")
    p.add_argument("--meets", action="store_true", help="also close candidate congruences under meets")
    return parser


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload))
    else:
        print(text)

def _emit_verdicts(args, verdicts) -> int:
    ok = all(verdicts)
    if args.format == "json":
        print(json.dumps({"passed": ok, "checks": [v.to_dict() for v in verdicts]}))
    else:
        for v in verdicts:
            if v:
                print(f"PASS {v.name}")
            else:
                print(f"FAIL {v.name} [{v.clause}] {json.dumps(v.witness)}")
    return EXIT_PASS if ok else EXIT_FAIL


def _cmd_validate(args, limits) -> int:
    try:
        S = load_table(args.table)
    except (CommutativityViolation, AssociativityViolation) as exc:
        payload = {"valid": False, "error": type(exc).__name__, "witness": exc.witness()}
        _emit(args, payload, f"invalid: {exc} {json.dumps(exc.witness())}")
        return EXIT_FAIL
    identity = S.label(S.identity_idx) if S.identity_idx is not None else None
    zero = S.label(S.zero_idx) if S.zero_idx is not None else None
    _emit(args, {"valid": True, "order": S.order, "identity": identity, "zero": zero},
          f"valid, order {S.order}, identity {identity}, zero {zero}")
    return EXIT_PASS

def _cmd_sep(args, limits) -> int:
    S = load_table(args.table)
    A = parse_subset(S, args.subset)
    Id, Sep = idealizer(S, A), separator(S, A)
    _emit(args, {"idealizer": list(Id.members()), "separator": list(Sep.members())},
          f"Id A = {S.describe(Id)}\nSep A = {S.describe(Sep)}")
    return EXIT_PASS

def _cmd_pcong(args, limits) -> int:
    S = load_table(args.table)
    P = principal_congruence(S, parse_subset(S, args.subset))
    _emit(args, {"classes": P.to_json()},
          "\n".join(str([S.label(i) for i in c]) for c in P.classes()))
    return EXIT_PASS

def _cmd_quotient(args, limits) -> int:
    S = load_table(args.table)
    Q, class_map = quotient(S, principal_congruence(S, parse_subset(S, args.subset)))
    _emit(args, {"table": Q.table.tolist(), "labels": list(Q.labels), "class_map": class_map.tolist()},
          format_table(Q).rstrip())
    return EXIT_PASS

def _cmd_star(args, limits) -> int:
    return _emit_verdicts(args, [condition_star_check(load_table(args.table))])

def _cmd_laws(args, limits) -> int:
    return _emit_verdicts(args, check_laws(load_table(args.table)))

def _cmd_tau(args, limits) -> int:
    m = parse_element(args.element, parse_domain(args.domain))
    try:
        payload = tau_classes(m, limits).to_json()
    except UnitModulus:
        payload = {"modulus": format_element(m), "divisors": [format_element(m.domain.one())],
                   "classes": [[0]], "unit": True}
    _emit(args, payload, f"d = {len(payload['divisors'])}\ndivisors: {', '.join(payload['divisors'])}\n"
                         f"classes: {payload['classes']}")
    return EXIT_PASS

def _cmd_dcount(args, limits) -> int:
    a = parse_element(args.element, parse_domain(args.domain))
    count = divisor_count(a, limits)
    _emit(args, {"element": format_element(a), "divisor_count": count}, str(count))
    return EXIT_PASS

def _cmd_thm3(args, limits) -> int:
    m = parse_element(args.element, parse_domain(args.domain))
    verdicts = [theorem3_check(m, limits), dprime_coherence_check(m, limits)]
    try:
        verdicts.append(separator_class_check(m, limits))
    except UnitModulus:
        logger.info("unit modulus: separator check skipped")
    return _emit_verdicts(args, verdicts)

def _cmd_qideal(args, limits) -> int:
    gens = [parse_element(g, parse_domain(str(args.d))) for g in args.gens]
    A = ideal_from_generators(args.d, gens)
    m = principal_generator(A)
    n = principal_generator(ideal_mul(A, conjugate(A)))
    verdict = section4_check(args.d, gens, limits)
    payload = {**A.to_dict(), "generator": format_element(m), "n": format_element(n), "check": verdict.to_dict()}
    _emit(args, payload, f"hnf {A.to_dict()['hnf']}, norm {A.norm}\ngenerator {format_element(m)}\n"
                         f"A*conj(A) = ({format_element(n)})\n{'PASS' if verdict else 'FAIL'} {verdict.name}")
    return EXIT_PASS if verdict else EXIT_FAIL

def _cmd_census(args, limits) -> int:
    if args.count is not None and args.seed is None:
        print("census: random mode needs --seed", file=sys.stderr)
        return EXIT_USAGE
    mode = "exhaustive" if args.count is None else "random"
    summary = census(args.order, mode, seed=args.seed, count=args.count, limits=limits, with_meets=args.meets)
    _emit(args, summary, f"{summary['semigroups']} semigroups, {summary['checks']} checks, "
                         f"{len(summary['failures'])} failures"
                         + "".join(f"\nFAIL {json.dumps(f)}" for f in summary["failures"]))
    return EXIT_PASS if not summary["failures"] else EXIT_FAIL

COMMANDS = {
    "validate": _cmd_validate, "sep": _cmd_sep, "pcong": _cmd_pcong, "quotient": _cmd_quotient,
    "star": _cmd_star, "laws": _cmd_laws, "tau": _cmd_tau, "dcount": _cmd_dcount, "thm3": _cmd_thm3,
    "qideal": _cmd_qideal, "census": _cmd_census,
}


def run(argv=None) -> int:
    """Runs one subcommand; exit 0 when all checks pass, 1 on a failed check or a size limit, 2 on usage errors."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    logging.basicConfig(stream=sys.stderr, level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    limits = with_overrides(max_abs=args.max_abs, max_deg=args.max_deg, max_norm=args.max_norm,
                            max_residues=args.max_residues, max_transversal=args.max_transversal)
    try:
        return COMMANDS[args.command](args, limits)
    except SizeLimitExceeded as exc:
        # valid input over a cap; a --max-* flag raises it
        print(f"{args.command}: limit: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (SemigroupError, DomainError, IdealError, ResidueError, TauError, OSError) as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())

if __name__ == "__main__":
    main()
