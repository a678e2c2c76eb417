"""Command-line interface.

Exit status: 0 for a positive answer, 1 for a negative mathematical answer
(not representable, no separating filter), 2 for bad invocations or input.
JSON reports go to stdout; a one-line summary goes to stderr unless --quiet.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .bounds import Bound
from .cnf import encode_separation, write_dimacs
from .decider import is_representable
from .errors import OrdrepError
from .filters import check_filter, closure_meet_up, enumerate_filters_bruteforce, find_separating_filter
from .pk import generate_pk
from .poset import Poset, antichain_masks, bits
from .representation import build_representation, verify_representation

EXIT_OK, EXIT_NO, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _bound(text):
    try:
        return Bound.parse(text)
    except (TypeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _load(args) -> Poset:
    try:
        poset = Poset.load(args.file)
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{args.file} is not valid JSON: {exc}") from None
    return poset.dual() if getattr(args, "dual", False) else poset


def _element(poset, label):
    if label not in poset._index:
        raise UsageError(f"unknown element label: {label!r}")
    return poset._index[label]


def _emit(args, payload):
    text = json.dumps(payload, indent=2) + "\n"
    out = getattr(args, "output", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _say(args, msg):
    if not args.quiet:
        print(msg, file=sys.stderr)


def cmd_check(args):
    poset = _load(args)
    report = is_representable(poset, args.meets, args.joins, fail_fast=args.fail_fast, jobs=args.jobs)
    _emit(args, report.to_dict(include_witnesses=args.witnesses))
    verdict = "representable" if report.representable else "NOT representable"
    _say(args, f"{verdict} at ({args.meets},{args.joins}): {len(report.failing_pairs)} failing pair(s)")
    return EXIT_OK if report.representable else EXIT_NO


def cmd_oracle(args):
    poset = _load(args)
    filters = enumerate_filters_bruteforce(poset, args.meets, args.joins, max_size=args.max_size)
    failing = []
    witnesses = {}
    for x in range(poset.size):
        for y in range(poset.size):
            if poset.leq(x, y):
                continue
            hit = next((f for f in filters if x in f and y not in f), None)
            if hit is None:
                failing.append([poset.labels[x], poset.labels[y]])
            else:
                witnesses.setdefault(poset.labels[x], {})[poset.labels[y]] = hit.labels(poset)
    payload = {
        "representable": not failing,
        "bounds": [str(args.meets), str(args.joins)],
        "failing_pairs": failing,
        "filter_count": len(filters),
    }
    if args.witnesses:
        payload["witnesses"] = witnesses
    _emit(args, payload)
    _say(args, f"{len(filters)} filters; {len(failing)} failing pair(s)")
    return EXIT_NO if failing else EXIT_OK


def cmd_generate(args):
    if args.family != "pk":
        raise UsageError(f"unknown family {args.family!r}; only 'pk' is available")
    pk = generate_pk(args.k)
    _emit(args, pk.poset.to_dict("covers"))
    _say(args, f"P_{args.k}: {pk.poset.size} elements")
    return EXIT_OK


def cmd_info(args):
    poset = _load(args)
    labels = poset.labels
    minimal, maximal = poset.extremal_elements()
    meets, joins = [], []
    for a in antichain_masks(poset, max_size=2, min_size=2):
        pair = [labels[x] for x in bits(a)]
        z = poset.meet_mask(a)
        if z is not None:
            meets.append({"elements": pair, "meet": labels[z]})
        z = poset.join_mask(a)
        if z is not None:
            joins.append({"elements": pair, "join": labels[z]})
    payload = {
        "size": poset.size,
        "height": poset.height() if poset.size else 0,
        "minimal": poset.labels_of(minimal),
        "maximal": poset.labels_of(maximal),
        "covers": [[labels[x], labels[y]] for x, y in poset.covers()],
        "meets": meets,
        "joins": joins,
        "join_prime": [labels[x] for x in range(poset.size) if poset.is_join_prime(x)],
    }
    _emit(args, payload)
    return EXIT_OK


def cmd_filter_gen(args):
    poset = _load(args)
    seed = [_element(poset, lab) for lab in args.contains]
    closed = closure_meet_up(poset, seed, args.meets)
    payload = {"meets": str(args.meets), "closure": poset.labels_of(closed)}
    if args.joins is not None:
        v = check_filter(poset, closed, args.meets, args.joins)
        payload["joins"] = str(args.joins)
        payload["is_filter"] = v is None
        if v is not None:
            payload["violation"] = v.to_dict(poset)
    _emit(args, payload)
    return EXIT_OK


def cmd_separate(args):
    poset = _load(args)
    p, q = _element(poset, args.p), _element(poset, args.q)
    if poset.leq(p, q):
        raise UsageError(f"{args.p} <= {args.q}: the pair cannot be separated by any up-set")
    found = find_separating_filter(poset, p, q, args.meets, args.joins)
    payload = {
        "pair": [args.p, args.q],
        "bounds": [str(args.meets), str(args.joins)],
        "filter": None if found is None else found.labels(poset),
    }
    _emit(args, payload)
    _say(args, "no separating filter" if found is None else f"separating filter of size {len(found)}")
    return EXIT_NO if found is None else EXIT_OK


def cmd_represent(args):
    poset = _load(args)
    rep = build_representation(poset, args.meets, args.joins, jobs=args.jobs)
    if rep is None:
        _emit(args, {"representable": False, "bounds": [str(args.meets), str(args.joins)]})
        _say(args, "not representable")
        return EXIT_NO
    check = verify_representation(poset, rep, args.meets, args.joins)
    payload = rep.to_dict(poset)
    payload["verification"] = check.to_dict(poset)
    _emit(args, payload)
    _say(args, f"{len(rep.filters)} filters; verification {'passed' if check.ok else 'FAILED'}")
    return EXIT_OK if check.ok else EXIT_NO


def cmd_encode(args):
    poset = _load(args)
    p, q = _element(poset, args.p), _element(poset, args.q)
    if poset.leq(p, q):
        raise UsageError(f"{args.p} <= {args.q}: the pair cannot be separated by any up-set")
    formula = encode_separation(poset, p, q, args.meets, args.joins)
    write_dimacs(formula, args.output)
    _say(args, f"wrote {len(formula.clauses)} clauses over {formula.variable_count} variables to {args.output}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ordrep", description="(m,n)-representability of finite posets")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-q", "--quiet", action="store_true", help="no summary on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def poset_cmd(name, func, help_text, meets=True, joins=True, joins_required=True):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(func=func)
        sp.add_argument("file", help="poset JSON file")
        sp.add_argument("--dual", action="store_true", help="work with the order-reversed poset")
        sp.add_argument("-q", "--quiet", action="store_true", default=argparse.SUPPRESS)
        if meets:
            sp.add_argument("-m", "--meets", type=_bound, required=True, help="meet bound: integer >= 3 or 'omega'")
        if joins:
            sp.add_argument(
                "-n", "--joins", type=_bound, required=joins_required, default=None,
                help="join bound: integer >= 3 or 'omega'",
            )
        return sp

    sp = poset_cmd("check", cmd_check, "decide representability")
    sp.add_argument("--witnesses", action="store_true", help="include separating filters in the report")
    sp.add_argument("--fail-fast", action="store_true", help="stop at the first failing pair")
    sp.add_argument("--jobs", type=int, default=1, help="worker processes")
    sp.add_argument("-o", "--output")

    sp = poset_cmd("oracle", cmd_oracle, "decide by brute-force filter enumeration")
    sp.add_argument("--witnesses", action="store_true")
    sp.add_argument("--max-size", type=int, default=20)
    sp.add_argument("-o", "--output")

    sp = sub.add_parser("generate", help="generate a poset family member")
    sp.set_defaults(func=cmd_generate)
    sp.add_argument("family", help="family name (pk)")
    sp.add_argument("k", type=int)
    sp.add_argument("-q", "--quiet", action="store_true", default=argparse.SUPPRESS)
    sp.add_argument("-o", "--output")

    sp = poset_cmd("info", cmd_info, "height, extremal elements, meet/join tables", meets=False, joins=False)
    sp.add_argument("-o", "--output")

    sp = poset_cmd("filter-gen", cmd_filter_gen, "close a set upwards and under meets", joins_required=False)
    sp.add_argument("--contains", nargs="+", required=True, metavar="LABEL")
    sp.add_argument("-o", "--output")

    sp = poset_cmd("separate", cmd_separate, "search one separating filter")
    sp.add_argument("p")
    sp.add_argument("q")
    sp.add_argument("-o", "--output")

    sp = poset_cmd("represent", cmd_represent, "build and verify a field-of-sets representation")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("-o", "--output")

    sp = poset_cmd("encode", cmd_encode, "write the separation instance as DIMACS CNF")
    sp.add_argument("p")
    sp.add_argument("q")
    sp.add_argument("-o", "--output", required=True)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, OrdrepError, ValueError, OSError) as exc:
        print(f"ordrep: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
