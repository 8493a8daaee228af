"""Command-line front end.

Exit codes: 0 = yes/pass, 1 = no/fail, 2 = unknown, 3 = usage or parse error,
4 = internal error.  All output is deterministic for fixed inputs and seed.
"""

from __future__ import annotations

import argparse
import json
import sys

from .braiding import braid_find, telescope, verify
from .cardinals import ALEPH0, at_most, below, parse_card, render_card
from .diophantine import DioMonoid, aleph0_extend_finite, decompose, recombine, universal_extend
from .dsl import (
    parse_certificate,
    parse_family,
    parse_monoid,
    parse_presentation,
    parse_vec,
    render_certificate,
    render_dio,
    render_elem,
    render_family,
    render_monoid,
)
from .errors import KmonError, ParseError
from .gallery import HNPPredicate
from .laws import check_axioms
from .presentations import corollary_checks, realizable_two_gen
from .tribool import TriBool

EXIT_YES = 0
EXIT_NO = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 3
EXIT_INTERNAL = 4


class Report:
    def __init__(self, command: str, fmt: str):
        self.command = command
        self.fmt = fmt
        self.lines: list[str] = []
        self.data: dict = {"command": command}

    def say(self, text: str, **fields):
        self.lines.append(text)
        for k, v in fields.items():
            self.data[k] = v

    def emit(self, exit_code: int) -> int:
        self.data["exit"] = exit_code
        if self.fmt == "json":
            print(json.dumps(self.data, sort_keys=True, default=str))
        else:
            for ln in self.lines:
                print(ln)
        return exit_code


def _tri_exit(t: TriBool) -> int:
    return {"yes": EXIT_YES, "no": EXIT_NO, "unknown": EXIT_UNKNOWN}[t.kind]


def _verdict(rep: Report, t: TriBool, **fields) -> int:
    rep.say(f"verdict: {t}", verdict=t.kind, note=t.note, **fields)
    return rep.emit(_tri_exit(t))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=10_000, help="search steps")
    common.add_argument("--radius", type=int, default=32, help="enumeration cap")
    common.add_argument("--kappa", default="aleph3", help="summation bound, e.g. aleph2")

    ap = argparse.ArgumentParser(
        prog="kmon",
        description="decision procedures for monoids with infinite summation",
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    def add(name: str, help: str):
        return sub.add_parser(name, help=help, parents=[common])

    s = add("member", "constraint-system membership")
    s.add_argument("--monoid", required=True)
    s.add_argument("--vec", required=True)

    s = add("extend", "universal extension of a countable system")
    s.add_argument("--monoid", required=True)
    s.add_argument("--to", required=True)
    s.add_argument("--vec")

    s = add("decompose", "split a member into level parts")
    s.add_argument("--monoid", required=True)
    s.add_argument("--vec", required=True)

    s = add("braid-check", "verify a braiding certificate")
    s.add_argument("--monoid", required=True)
    s.add_argument("--x", required=True)
    s.add_argument("--y", required=True)
    s.add_argument("--cert", required=True, help="certificate text or @file")
    s.add_argument("--lam", default="aleph0")

    s = add("braid-find", "search for a braiding certificate")
    s.add_argument("--monoid", required=True)
    s.add_argument("--x", required=True)
    s.add_argument("--y", required=True)
    s.add_argument("--lam", default="aleph0")

    s = add("realizable2", "two-generator realizability")
    s.add_argument("--pres", required=True)
    s.add_argument("--corollary", action="store_true", help="case-by-case report")

    s = add("axioms", "randomized law check for a monoid")
    s.add_argument("--monoid", required=True)
    s.add_argument("--samples", type=int, default=500)

    s = add("gallery-eval", "evaluate a family sum in a monoid")
    s.add_argument("--monoid", required=True)
    s.add_argument("--fam", required=True)

    s = add("aleph0-extend", "membership in H + aleph0*H")
    s.add_argument("--monoid", required=True)
    s.add_argument("--vec", required=True)

    return ap


def _bound(args):
    return at_most(parse_card(args.kappa))


def _cmd_member(args, rep: Report) -> int:
    m = parse_monoid(args.monoid, _bound(args))
    v = parse_vec(args.vec)
    if isinstance(m, HNPPredicate):
        ok = m.member(v, parse_card(args.kappa))
    elif isinstance(m, DioMonoid):
        ok = m.member(v)
    else:
        rep.say("member requires a constraint-defined monoid or hnp(c=...)")
        return rep.emit(EXIT_USAGE)
    rep.say(
        f"{render_elem(v)} is {'a member' if ok else 'not a member'} of {args.monoid.strip()}",
        member=ok,
        vec=render_elem(v),
    )
    return rep.emit(EXIT_YES if ok else EXIT_NO)


def _cmd_extend(args, rep: Report) -> int:
    m = parse_monoid(args.monoid, at_most(ALEPH0))
    if not isinstance(m, DioMonoid):
        rep.say("extend requires a constraint-defined monoid")
        return rep.emit(EXIT_USAGE)
    big = universal_extend(m, parse_card(args.to))
    rep.say(
        f"universal extension at {args.to}: {render_dio(big.system)} over bound {big.bound}",
        system=render_dio(big.system),
        bound=str(big.bound),
    )
    if args.vec:
        v = parse_vec(args.vec)
        ok = big.member(v)
        rep.say(f"{render_elem(v)} member: {ok}", member=ok)
        return rep.emit(EXIT_YES if ok else EXIT_NO)
    return rep.emit(EXIT_YES)


def _cmd_decompose(args, rep: Report) -> int:
    m = parse_monoid(args.monoid, _bound(args))
    v = parse_vec(args.vec)
    if not isinstance(m, DioMonoid):
        rep.say("decompose requires a constraint-defined monoid")
        return rep.emit(EXIT_USAGE)
    if not m.member(v):
        rep.say(f"{render_elem(v)} is not a member", member=False)
        return rep.emit(EXIT_NO)
    beta, gammas = decompose(m, v)
    rep.say(f"beta = {render_elem(beta)}", beta=render_elem(beta))
    gout = {}
    for lam in sorted(gammas, key=lambda c: c.sort_key()):
        rep.say(f"gamma[{render_card(lam)}] = {render_elem(gammas[lam])}")
        gout[render_card(lam)] = render_elem(gammas[lam])
    ok = recombine(beta, gammas) == v
    rep.say(f"recombination exact: {ok}", gammas=gout, recombines=ok)
    return rep.emit(EXIT_YES if ok else EXIT_INTERNAL)


def _cmd_braid_check(args, rep: Report) -> int:
    m = parse_monoid(args.monoid, _bound(args))
    x = parse_family(args.x, m)
    y = parse_family(args.y, m)
    text = args.cert
    if text.startswith("@"):
        with open(text[1:], "r", encoding="utf-8") as fh:
            text = fh.read()
    cert = parse_certificate(text, m)
    r = verify(m, x, y, cert, parse_card(args.lam))
    if r.is_yes:
        a, b = telescope(m, cert, x, y)
        rep.say(f"telescope: {render_elem(a)} = {render_elem(b)}", telescope=render_elem(a))
    return _verdict(rep, r)


def _cmd_braid_find(args, rep: Report) -> int:
    m = parse_monoid(args.monoid, _bound(args))
    x = parse_family(args.x, m)
    y = parse_family(args.y, m)
    r = braid_find(m, x, y, parse_card(args.lam), args.budget)
    if r.is_yes:
        rep.say(render_certificate(r.witness), certificate=render_certificate(r.witness))
    elif r.is_no:
        rep.say(f"reason: {r.note}", reason=r.note)
    else:
        rep.say(f"budget {args.budget} consumed: {r.note}", budget=args.budget)
    return _verdict(rep, r)


def _cmd_realizable2(args, rep: Report) -> int:
    p = parse_presentation(args.pres)
    result = (
        corollary_checks(p, args.budget)
        if args.corollary
        else realizable_two_gen(p, args.budget)
    )
    for line in result.render().splitlines():
        rep.say(line)
    rep.data["conditions"] = [
        {"name": c.name, "status": c.status, "exact": c.exact, "witness": str(c.witness)}
        for c in result.conditions
    ]
    rep.data["notes"] = result.notes
    rep.data["verdict"] = result.verdict.kind
    return rep.emit(_tri_exit(result.verdict))


def _cmd_axioms(args, rep: Report) -> int:
    m = parse_monoid(args.monoid, _bound(args))
    report = check_axioms(m, samples=args.samples, seed=args.seed)
    for line in report.render().splitlines():
        rep.say(line)
    rep.data["monoid"] = m.name
    rep.data["all_passed"] = report.all_passed
    return rep.emit(EXIT_YES if report.all_passed else EXIT_NO)


def _cmd_gallery_eval(args, rep: Report) -> int:
    m = parse_monoid(args.monoid, _bound(args))
    fam = parse_family(args.fam, m)
    val = m.ksum(fam)
    rep.say(
        f"{render_monoid(m)}: {render_family(fam)} = {render_elem(val)}",
        value=render_elem(val),
    )
    return rep.emit(EXIT_YES)


def _cmd_aleph0_extend(args, rep: Report) -> int:
    m = parse_monoid(args.monoid, below(ALEPH0))
    v = parse_vec(args.vec)
    if not isinstance(m, DioMonoid):
        rep.say("aleph0-extend requires a constraint-defined monoid")
        return rep.emit(EXIT_USAGE)
    ext = aleph0_extend_finite(m, args.radius)
    r = ext.member(v)
    rep.say(f"{render_elem(v)} in H + aleph0*H: {r}", vec=render_elem(v))
    return _verdict(rep, r)


_DISPATCH = {
    "member": _cmd_member,
    "extend": _cmd_extend,
    "decompose": _cmd_decompose,
    "braid-check": _cmd_braid_check,
    "braid-find": _cmd_braid_find,
    "realizable2": _cmd_realizable2,
    "axioms": _cmd_axioms,
    "gallery-eval": _cmd_gallery_eval,
    "aleph0-extend": _cmd_aleph0_extend,
}


def run(argv: list[str]) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_YES
    rep = Report(args.cmd, args.format)
    try:
        return _DISPATCH[args.cmd](args, rep)
    except ParseError as e:
        rep.say(f"parse error at {e.line}:{e.col}: {e.message}", error=str(e))
        return rep.emit(EXIT_USAGE)
    except (KmonError, ValueError) as e:
        rep.say(f"error: {e}", error=str(e))
        return rep.emit(EXIT_USAGE)
    except Exception as e:  # pragma: no cover - internal failures
        rep.say(f"internal error: {type(e).__name__}: {e}", error=str(e))
        return rep.emit(EXIT_INTERNAL)


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
