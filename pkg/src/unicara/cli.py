"""Command-line front end.

Exit codes: 0 success, 1 infeasible / not a member / verification failed,
2 input error, 3 integrality violation (input not totally unimodular),
4 work cap exceeded.  All numbers in JSON output are decimal strings.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import CapExceeded, IntegralityViolation, UsageError
from .exactmath import parse_int

EXIT_OK, EXIT_INFEASIBLE, EXIT_INPUT, EXIT_INTEGRALITY, EXIT_CAP = 0, 1, 2, 3, 4


def _load(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def _emit(obj):
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _matrix(data, key):
    try:
        return [[parse_int(x) for x in row] for row in data[key]]
    except (KeyError, TypeError) as exc:
        raise UsageError(f"missing or malformed {key!r}: {exc}") from None


def _vector(data, key):
    try:
        return [parse_int(x) for x in data[key]]
    except (KeyError, TypeError) as exc:
        raise UsageError(f"missing or malformed {key!r}: {exc}") from None


def cmd_decompose(args):
    from .monoid import NotInMonoid, monoid_decompose, monoid_decompose_projection

    data = _load(args.instance)
    A, b, a = _matrix(data, "A"), _vector(data, "b"), _vector(data, "a")
    if "L" in data:
        res = monoid_decompose_projection(_matrix(data, "L"), A, b, a)
    else:
        res = monoid_decompose(A, b, a)
    _emit(res.to_json())
    return EXIT_INFEASIBLE if isinstance(res, NotInMonoid) else EXIT_OK


def _expand_limit_note(out, n, limit):
    if n > limit:
        out["expand"] = {"refused": f"n = {n} exceeds --expand {limit}"}
        print(f"warning: not expanding, n = {n} exceeds {limit}", file=sys.stderr)
        return False
    return True


def cmd_table(args):
    from .tables import HugeTableInstance, Infeasible, expand_certificate, solve_huge_table

    inst = HugeTableInstance.from_json(_load(args.instance))
    sol = solve_huge_table(inst, cap=args.cap)
    if isinstance(sol, Infeasible):
        _emit(sol.to_json())
        return EXIT_INFEASIBLE
    out = sol.to_json()
    if args.expand is not None and _expand_limit_note(out, inst.n, args.expand):
        layers = expand_certificate(sol, args.expand)
        out["table"] = [[[str(x) for x in r] for r in layer] for layer in layers]
    _emit(out)
    return EXIT_OK


def cmd_flow(args):
    from .apps import FlowInstance, solve_huge_flow
    from .tables import Infeasible

    inst = FlowInstance.from_json(_load(args.instance))
    sol = solve_huge_flow(inst, cap=args.cap)
    if isinstance(sol, Infeasible):
        _emit(sol.to_json())
        return EXIT_INFEASIBLE
    out = sol.to_json()
    n = sum(t.count for t in inst.types)
    if args.expand is not None and _expand_limit_note(out, n, args.expand):
        consumers = []
        for pats in sol.patterns:
            for mult, flow in pats:
                consumers.extend([[[str(x) for x in r] for r in flow]] * mult)
        out["consumers"] = consumers
    _emit(out)
    return EXIT_OK


def cmd_nfold(args):
    from .apps import NFoldInstance, solve_huge_nfold
    from .tables import Infeasible

    inst = NFoldInstance.from_json(_load(args.instance))
    sol = solve_huge_nfold(inst, cap=args.cap)
    if isinstance(sol, Infeasible):
        _emit(sol.to_json())
        return EXIT_INFEASIBLE
    out = sol.to_json()
    n = sum(t.count for t in inst.types)
    if args.expand is not None and _expand_limit_note(out, n, args.expand):
        bricks = []
        for cert in sol.certificates:
            for mult, x in cert.terms:
                bricks.extend([[str(v) for v in x]] * mult)
        out["bricks"] = bricks
    _emit(out)
    return EXIT_OK


def cmd_verify(args):
    from .verify import verify_certificate

    problems = verify_certificate(_load(args.instance), _load(args.certificate))
    _emit({"status": "ok" if not problems else "violation", "violations": problems})
    return EXIT_OK if not problems else EXIT_INFEASIBLE


def cmd_oracle(args):
    from . import oracle
    from .verify import instance_kind

    data = _load(args.instance)
    cap = args.cap or oracle.DEFAULT_CAP
    kind = instance_kind(data)
    if kind == "monoid":
        if "L" in data:
            raise UsageError("the brute-force oracle does not handle projected instances")
        A, b, a = _matrix(data, "A"), _vector(data, "b"), _vector(data, "a")
        lo, hi = oracle.sign_box(a)
        pts = oracle.enumerate_lattice_points(A, b, lo, hi, cap)
        member, witness = oracle.brute_monoid_member(pts, a, cap)
        if not member:
            _emit({"status": "not_in_monoid"})
            return EXIT_INFEASIBLE
        _emit({"status": "member", "terms": [
            {"lambda": str(c), "x": [str(v) for v in x]} for c, x in witness
        ]})
        return EXIT_OK
    if kind == "table":
        from .tables import HugeTableInstance

        inst = HugeTableInstance.from_json(data)
        sums = [(t.u, t.v) for t in inst.types for _ in range(t.count)]
        table = oracle.brute_table_search(inst.l, inst.m, sums, inst.w, cap)
        if table is None:
            _emit({"status": "infeasible"})
            return EXIT_INFEASIBLE
        _emit({"status": "feasible", "table": [[[str(x) for x in r] for r in layer] for layer in table]})
        return EXIT_OK
    if kind == "flow":
        from .apps import FlowInstance

        inst = FlowInstance.from_json(data)
        consumers = [(t.c, t.cap) for t in inst.types for _ in range(t.count)]
        flows = oracle.brute_flow_search(inst.l, inst.m, inst.supplies, consumers, cap)
        if flows is None:
            _emit({"status": "infeasible"})
            return EXIT_INFEASIBLE
        _emit({"status": "feasible", "consumers": [[[str(x) for x in r] for r in f] for f in flows]})
        return EXIT_OK
    raise UsageError(f"no brute-force oracle for {kind} instances")


def cmd_check_tu(args):
    from .polyhedron import is_tu

    data = _load(args.instance)
    A = _matrix(data, "A")
    rep = is_tu(A, work_cap=args.cap or 1_000_000)
    out = {"status": rep.status, "work": str(rep.work)}
    if rep.status == "certified_not_tu":
        out.update(
            rows=[str(i) for i in rep.rows],
            cols=[str(j) for j in rep.cols],
            det=str(rep.det),
        )
    _emit(out)
    return {"certified_tu": EXIT_OK, "certified_not_tu": EXIT_INFEASIBLE}.get(rep.status, EXIT_CAP)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="unicara",
        description="Exact integer Caratheodory decomposition for totally unimodular systems.",
    )
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_, expand=False, cap=False, cert=False):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("instance")
        if cert:
            sp.add_argument("certificate")
        if expand:
            sp.add_argument("--expand", type=int, metavar="N", help="materialize explicit layers when n <= N")
        if cap:
            sp.add_argument("--cap", type=int, metavar="WORK", help="work cap for exhaustive searches")
        sp.add_argument("--format", choices=["json"], default="json")
        sp.set_defaults(func=func)

    add("decompose", cmd_decompose, "monoid decomposition of a (optionally projected)")
    add("table", cmd_table, "huge three-way table", expand=True, cap=True)
    add("flow", cmd_flow, "huge multicommodity flow", expand=True, cap=True)
    add("nfold", cmd_nfold, "huge totally unimodular n-fold program", expand=True, cap=True)
    add("verify", cmd_verify, "check a certificate against its instance", cert=True)
    add("oracle", cmd_oracle, "brute-force answer for a small instance", cap=True)
    add("check-tu", cmd_check_tu, "total unimodularity check of {\"A\": ...}", cap=True)
    return p


def main(argv=None) -> int:
    import logging

    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr)
    if getattr(args, "cap", None) is None and args.command in ("table", "flow", "nfold"):
        from .search import DEFAULT_CAP

        args.cap = DEFAULT_CAP
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except IntegralityViolation as exc:
        print(f"error: input matrix not totally unimodular ({exc})", file=sys.stderr)
        return EXIT_INTEGRALITY
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
