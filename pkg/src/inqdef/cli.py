"""Command-line interface.

Commands: eval (support at a state), prop (proposition as maximal states),
verify (the built-in undefinability theorems), closure (all definable
propositions with witnesses), crosscheck (template enumeration against
the closure). Exit codes: 0 claim confirmed / success, 1 claim refuted,
2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import sys

from .closure import (
    CapExceeded,
    DepAtomsNotTrivial,
    GeneratorSet,
    LetterClash,
    NonUniformFreshAtoms,
    generators_for,
    ops_for,
    semantic_closure,
)
from .parsing import (
    FormatError,
    ParseError,
    model_to_dict,
    parse_formula,
    parse_model,
    render_template,
)
from .semantics import Model, ModelMismatch, format_proposition, proposition, supports
from .syntax import SIGNATURES, LanguageSignature
from .verify import (
    cross_check,
    verify_globalor_undefinability,
    verify_implication_undefinability,
)

_SIG_CHOICES = ("inq", "inqx", "inq+", "inq-", "d", "d+", "all")

_USER_ERRORS = (
    ParseError,
    FormatError,
    ModelMismatch,
    LetterClash,
    NonUniformFreshAtoms,
    DepAtomsNotTrivial,
    CapExceeded,
    ValueError,
    KeyError,
    OSError,
)


def _signature(name: str) -> LanguageSignature:
    return SIGNATURES[name.lower()]


def _load_model(path: str) -> Model:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_model(fh.read())


def _cmd_eval(args) -> int:
    m = _load_model(args.model)
    sig = _signature(args.sig)
    f = parse_formula(args.formula, sig)
    names = [w for w in args.state.split(",") if w] if args.state else []
    state = m.state_of(names)
    print("true" if supports(m, state, f) else "false")
    return 0


def _cmd_prop(args) -> int:
    m = _load_model(args.model)
    sig = _signature(args.sig)
    f = parse_formula(args.formula, sig)
    print(format_proposition(m, proposition(m, f)))
    return 0


def _cmd_verify(args) -> int:
    if args.theorem == "implication":
        sig = _signature(args.sig) if args.sig else None
        report = (
            verify_implication_undefinability(sig)
            if sig is not None
            else verify_implication_undefinability()
        )
    else:
        if args.sig:
            print("error: --sig applies to the implication theorem only", file=sys.stderr)
            return 2
        report = verify_globalor_undefinability(
            _signature("d" if args.theorem == "globalor-d" else "d+")
        )
    if args.json:
        print(json.dumps(report.as_dict(), indent=2))
    else:
        if report.defined:
            print(f"DEFINABLE, witness {report.witness_text()}")
        else:
            print("UNDEFINABLE")
        print(f"closure size: {report.closure_size}")
        print(
            f"target [{report.target_label}] = "
            f"{format_proposition(report.model, report.target_proposition)}"
        )
        for label, present in report.forbidden_hits:
            print(f"{label}: {'present' if present else 'absent'}")
    return 1 if report.defined else 0


def _closure_inputs(args):
    m = _load_model(args.model)
    sig = _signature(args.sig)
    if (args.left is None) != (args.right is None):
        raise ValueError("--left and --right must be given together")
    if args.left is None:
        return m, sig, None, None
    return m, sig, parse_formula(args.left, sig), parse_formula(args.right, sig)


def _cmd_closure(args) -> int:
    m, sig, left, right = _closure_inputs(args)
    if left is None:
        gens = GeneratorSet(m, ())
    else:
        gens = generators_for(m, sig, left, right)
    result = semantic_closure(m, gens, ops_for(sig))
    if args.json:
        print(
            json.dumps(
                {
                    "model": model_to_dict(m),
                    "signature": sig.name,
                    "generators": [e.label for e in result.generators],
                    "members": [
                        {
                            "proposition": format_proposition(m, p),
                            "witness": render_template(result.witness_template(p)),
                        }
                        for p in result.members
                    ],
                },
                indent=2,
                ensure_ascii=False,
            )
        )
    else:
        for p in result.members:
            witness = render_template(result.witness_template(p))
            print(f"{format_proposition(m, p)}\t{witness}")
    return 0


def _cmd_crosscheck(args) -> int:
    m = _load_model(args.model)
    sig = _signature(args.sig)
    left = parse_formula(args.left, sig)
    right = parse_formula(args.right, sig)
    report = cross_check(m, sig, left, right, args.max_size)
    if args.json:
        print(json.dumps(report.as_dict(), indent=2))
    else:
        print(f"templates checked: {report.templates_checked}")
        print(f"all in closure: {'yes' if report.all_in_closure else 'no'}")
        if report.first_counterexample is not None:
            print(f"first counterexample: {render_template(report.first_counterexample)}")
    return 0 if report.all_in_closure else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="inqdef",
        description="Inquisitive/dependence-logic semantics, definability closure, "
        "and undefinability verification over finite models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate support of a formula at a state")
    p.add_argument("model", help="model JSON file")
    p.add_argument("state", help="comma-separated world names; empty for the empty state")
    p.add_argument("formula")
    p.add_argument("--sig", default="all", choices=_SIG_CHOICES)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("prop", help="print a formula's proposition as maximal states")
    p.add_argument("model")
    p.add_argument("formula")
    p.add_argument("--sig", default="all", choices=_SIG_CHOICES)
    p.set_defaults(func=_cmd_prop)

    p = sub.add_parser("verify", help="verify an undefinability theorem")
    p.add_argument("theorem", choices=("implication", "globalor-d", "globalor-dplus"))
    p.add_argument("--sig", choices=_SIG_CHOICES, help="signature override (implication only)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("closure", help="list definable propositions with witnesses")
    p.add_argument("model")
    p.add_argument("--sig", required=True, choices=_SIG_CHOICES)
    p.add_argument("--left", help="formula substituted for #1")
    p.add_argument("--right", help="formula substituted for #2")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_closure)

    p = sub.add_parser("crosscheck", help="enumerate templates against the closure")
    p.add_argument("model")
    p.add_argument("--sig", required=True, choices=_SIG_CHOICES)
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--max-size", type=int, default=5)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_crosscheck)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _USER_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
