"""Command-line front end.

Exit codes: 0 related/pass, 1 unrelated/fail, 2 usage or parse error,
3 resource cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .congruence import congruence_check
from .equivalence import obs_congr, strong_equiv, weak_equiv
from .errors import (
    CcsError,
    CcsSyntaxError,
    ExceedsCap,
    NotWeaklyEquivalent,
    UnboundConstant,
)
from .klop import (
    coarsest_congr_crosscheck,
    coarsest_congr_decide,
    free_action,
    klop,
)
from .laws import (
    LAW_IDS,
    LawInstance,
    check_law,
    deng_classify,
    generate_terms,
    hennessy_classify,
)
from .parser import parse_term, parse_workspace, print_term
from .semantics import DEFAULT_MAX_STEPS, explore
from .syntax import Environment, labels_of, term_to_dict
from .weak import saturate

_CHECKERS = {"strong": strong_equiv, "weak": weak_equiv, "obscongr": obs_congr}


def _default_max_states() -> int:
    return int(os.environ.get("CCSKIT_MAX_STATES", 10_000))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=["text", "json", "dot"],
        default="text",
        help="output format (dot only for lts)",
    )
    common.add_argument("--file", action="append", default=[], metavar="WS.ccs",
                        help="load agent definitions from a workspace file")
    common.add_argument("--max-states", type=int, default=None)
    common.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
    common.add_argument("--seed", type=int, default=0)

    top = argparse.ArgumentParser(prog="ccskit", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", parents=[common], help="parse and reprint a term")
    p.add_argument("term")

    p = sub.add_parser("lts", parents=[common], help="explore the state space")
    p.add_argument("term")
    p.add_argument("--saturated", action="store_true",
                   help="include the weak-transition relation (json)")

    p = sub.add_parser("check", parents=[common], help="decide an equivalence")
    p.add_argument("kind", choices=["strong", "weak", "obscongr"])
    p.add_argument("lhs")
    p.add_argument("rhs")

    p = sub.add_parser("laws", parents=[common], help="check algebraic laws")
    p.add_argument("--law", choices=list(LAW_IDS))
    p.add_argument("--bind", action="append", default=[], metavar="VAR=VALUE")
    p.add_argument("--corpus", type=int, default=0,
                   help="check every law on N random instantiations")
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--alphabet", default="a,b")

    p = sub.add_parser("congr", parents=[common],
                       help="bounded-depth congruence check")
    p.add_argument("--kind", choices=["strong", "weak", "obscongr"],
                   required=True)
    p.add_argument("--depth", type=int, default=1)
    p.add_argument("--fill", action="append", default=[], metavar="TERM")
    p.add_argument("lhs")
    p.add_argument("rhs")

    p = sub.add_parser("deng", parents=[common],
                       help="classify a weakly bisimilar pair")
    p.add_argument("lhs")
    p.add_argument("rhs")

    p = sub.add_parser("hennessy", parents=[common],
                       help="three-way congruence classification")
    p.add_argument("lhs")
    p.add_argument("rhs")

    p = sub.add_parser("klop", parents=[common], help="print a ladder process")
    p.add_argument("--action", required=True, metavar="LABEL")
    p.add_argument("--index", type=int, required=True)

    p = sub.add_parser("coarsest", parents=[common],
                       help="sum-characterization decision plus cross-check")
    p.add_argument("lhs")
    p.add_argument("rhs")
    p.add_argument("--samples", type=int, default=25)

    p = sub.add_parser("free-action", parents=[common],
                       help="find a label with no weak transition from the root")
    p.add_argument("term")

    return top


def _load_environment(args, terms) -> Environment:
    defs = {}
    alphabet: list[str] = []
    for path in args.file:
        with open(path, encoding="utf-8") as handle:
            ws = parse_workspace(handle.read())
        defs.update(ws.defs)
        alphabet.extend(ws.alphabet)
    bases = set(alphabet)
    extra = set()
    for term in terms:
        extra |= labels_of(term) - bases
    return Environment(defs, tuple(alphabet) + tuple(sorted(extra)))


def _caps(args) -> dict:
    max_states = args.max_states
    if max_states is None:
        max_states = _default_max_states()
    return {"max_states": max_states, "max_steps": args.max_steps}


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _cmd_parse(args) -> int:
    term = parse_term(args.term)
    _emit(args, {"term": print_term(term), "ast": term_to_dict(term)},
          print_term(term))
    return 0


def _cmd_lts(args) -> int:
    term = parse_term(args.term)
    env = _load_environment(args, [term])
    lts = explore(env, [term], **_caps(args))
    if args.format == "dot":
        sys.stdout.write(lts.to_dot())
        return 0
    payload = lts.to_json_dict()
    if args.saturated:
        payload.update(saturate(lts).to_json_dict())
    text = (
        f"states: {len(lts)}  edges: {len(lts.edges)}  "
        f"complete: {lts.complete}"
    )
    _emit(args, payload, text)
    return 0 if lts.complete else 3


def _cmd_check(args) -> int:
    lhs, rhs = parse_term(args.lhs), parse_term(args.rhs)
    env = _load_environment(args, [lhs, rhs])
    verdict = _CHECKERS[args.kind](env, lhs, rhs, **_caps(args))
    text = f"{args.kind}: {'related' if verdict.related else 'not related'}"
    _emit(args, verdict.to_json_dict(), text)
    return 0 if verdict.related else 1


def _parse_binding(text: str):
    var, _, value = text.partition("=")
    if not _:
        raise ValueError(f"binding {text!r} is not VAR=VALUE")
    if var == "u":
        from .parser import _Parser, _tokenize

        parser = _Parser(_tokenize(value))
        action = parser.action()
        if parser.peek().kind != "eof":
            parser.fail("trailing input after action")
        return var, action
    return var, parse_term(value)


def _cmd_laws(args) -> int:
    env = _load_environment(args, [])
    reports = []
    if args.law:
        bindings = dict(_parse_binding(b) for b in args.bind)
        terms = [v for v in bindings.values() if not hasattr(v, "is_tau")]
        env = env.extended(
            sorted(set().union(*(labels_of(t) for t in terms)) - set(env.alphabet))
            if terms
            else ()
        )
        reports.append(check_law(env, LawInstance(args.law, bindings), **_caps(args)))
    elif args.corpus:
        alphabet = tuple(x for x in args.alphabet.split(",") if x)
        stream = generate_terms(alphabet, args.depth, args.seed)
        actions = [a for a in _corpus_actions(alphabet)]
        rng_pos = 0
        for law_id in LAW_IDS:
            for _ in range(args.corpus):
                bindings = {
                    "E": next(stream),
                    "E2": next(stream),
                    "u": actions[rng_pos % len(actions)],
                }
                rng_pos += 1
                env2 = Environment({}, alphabet)
                reports.append(
                    check_law(env2, LawInstance(law_id, bindings), **_caps(args))
                )
    else:
        print("laws: need --law or --corpus", file=sys.stderr)
        return 2
    failed = [r for r in reports if not r.passed]
    payload = {"reports": [r.to_json_dict() for r in reports],
               "failed": len(failed)}
    text = "\n".join(
        f"{r.law_id}: {'pass' if r.passed else 'FAIL'}  {r.lhs}  vs  {r.rhs}"
        for r in reports
    )
    _emit(args, payload, text)
    return 1 if failed else 0


def _corpus_actions(alphabet):
    from .syntax import TAU, visible

    out = [TAU]
    for base in alphabet:
        out.append(visible(base))
        out.append(visible(base, co=True))
    return out


def _cmd_congr(args) -> int:
    lhs, rhs = parse_term(args.lhs), parse_term(args.rhs)
    fills = [parse_term(t) for t in (args.fill or ["0"])]
    env = _load_environment(args, [lhs, rhs, *fills])
    report = congruence_check(
        env, args.kind, [(lhs, rhs)], args.depth, fills, **_caps(args)
    )
    text = (
        f"{args.kind} congruence to depth {report.depth}: "
        f"{'pass' if report.all_contexts_pass else 'FAIL'} "
        f"({report.pairs_checked} checks)"
    )
    _emit(args, report.to_json_dict(), text)
    return 0 if report.all_contexts_pass else 1


def _cmd_deng(args) -> int:
    lhs, rhs = parse_term(args.lhs), parse_term(args.rhs)
    env = _load_environment(args, [lhs, rhs])
    try:
        outcome = deng_classify(env, lhs, rhs, **_caps(args))
    except NotWeaklyEquivalent as exc:
        _emit(args, {"error": str(exc)}, f"precondition failed: {exc}")
        return 1
    _emit(args, outcome.to_json_dict(),
          "holding cases: " + ", ".join(outcome.holding_cases))
    return 0 if outcome.holding_cases else 1


def _cmd_hennessy(args) -> int:
    lhs, rhs = parse_term(args.lhs), parse_term(args.rhs)
    env = _load_environment(args, [lhs, rhs])
    outcome = hennessy_classify(env, lhs, rhs, **_caps(args))
    flags = outcome.to_json_dict()
    text = "  ".join(f"{k}={v}" for k, v in flags.items())
    _emit(args, flags, text)
    return 0


def _cmd_klop(args) -> int:
    term = klop(args.action, args.index)
    _emit(args, {"term": print_term(term)}, print_term(term))
    return 0


def _cmd_coarsest(args) -> int:
    lhs, rhs = parse_term(args.lhs), parse_term(args.rhs)
    env = _load_environment(args, [lhs, rhs])
    caps = _caps(args)
    decide = coarsest_congr_decide(env, lhs, rhs, **caps)
    report = coarsest_congr_crosscheck(
        env, lhs, rhs, samples=args.samples, seed=args.seed, **caps
    )
    payload = {"decide": decide.to_json_dict(), "crosscheck": report.to_json_dict()}
    text = (
        f"decide: {decide.related}  obs_congr: {report.obs_congr}  "
        f"consistent: {report.consistent}"
    )
    _emit(args, payload, text)
    if not report.consistent:
        return 1
    return 0 if decide.related else 1


def _cmd_free_action(args) -> int:
    term = parse_term(args.term)
    env = _load_environment(args, [term])
    base = free_action(env, term, **_caps(args))
    _emit(args, {"free_action": base}, str(base))
    return 0 if base is not None else 1


_COMMANDS = {
    "parse": _cmd_parse,
    "lts": _cmd_lts,
    "check": _cmd_check,
    "laws": _cmd_laws,
    "congr": _cmd_congr,
    "deng": _cmd_deng,
    "hennessy": _cmd_hennessy,
    "klop": _cmd_klop,
    "coarsest": _cmd_coarsest,
    "free-action": _cmd_free_action,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (CcsSyntaxError, UnboundConstant, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ExceedsCap as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except CcsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
