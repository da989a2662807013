"""Command-line driver.

cptlab check FILE --theory NAME [--group Lpo|Lp|cover] [--mode classical|quantum]
cptlab transform FILE --formula NAME [--element ...] [--action ...] [--dollar ...]
cptlab classify FILE [--element ...] [--action ...]
cptlab harness FILE --theory NAME --theorem pt|sr|cpt|holpt [--dollar ...]
cptlab axioms --signature p,q | --galilean --dim N
cptlab examples [NAME] [--list]
cptlab counterexample 2d|galilean [--dim N]

Exit codes: 0 pass, 1 fail, 2 not applicable, 3 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .actions import (classical_action, classify_transform,
                      holomorphic_structure_action, quantum_action)
from .algebra import AlgebraError, conjugation_C, named_involution
from .clifford import verify_axioms
from .corpus import builtin_examples
from .dsl import load
from .lorentz import (Galilean, GroupError, Signature, cover_identity,
                      element, identity_element, pt_representative,
                      total_reflection_lift)
from .scalars import QI
from .theories import (FiniteTransform, TheoryError, check_invariance,
                       orthochronous_invariance, theorem_harness)

PASS, FAIL, NOT_APPLICABLE, USAGE = 0, 1, 2, 3


def _load_model(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            source = fh.read()
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        raise SystemExit(USAGE)
    model, diags = load(source)
    for d in diags:
        print("%s: %s" % (path, d), file=sys.stderr)
    if model is None:
        raise SystemExit(USAGE)
    return model


def _pick_theory(model, name):
    if name is None:
        if len(model.theories) == 1:
            return next(iter(model.theories.values()))
        print("error: choose a theory with --theory (available: %s)"
              % ", ".join(sorted(model.theories)), file=sys.stderr)
        raise SystemExit(USAGE)
    if name not in model.theories:
        print("error: unknown theory %r" % name, file=sys.stderr)
        raise SystemExit(USAGE)
    return model.theories[name]


def _resolve_element(model, name: str):
    group = model.group
    if group == "cover":
        if name in ("total-reflection", "pt"):
            return total_reflection_lift()
        if name == "identity":
            return cover_identity()
        raise SystemExit(_usage("unknown cover element %r" % name))
    sig = model.space.spacetime
    if isinstance(sig, Galilean):
        raise SystemExit(_usage("use the counterexample command for Galilean input"))
    if name == "pt":
        return pt_representative(sig)
    if name == "total-reflection":
        m = tuple(tuple(QI(-1 if i == j else 0) for j in range(sig.dim))
                  for i in range(sig.dim))
        return element(m, sig)
    if name == "identity":
        return identity_element(sig)
    raise SystemExit(_usage("unknown element %r" % name))


def _usage(msg: str) -> int:
    print("error: %s" % msg, file=sys.stderr)
    return USAGE


def _emit(args, payload, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def cmd_check(args) -> int:
    model = _load_model(args.file)
    theory = _pick_theory(model, args.theory)
    try:
        inv = orthochronous_invariance(theory, samples=args.samples, seed=args.seed,
                                       tol=args.tol)
    except (TheoryError, GroupError) as exc:
        return _usage(str(exc))
    reports = [inv]
    if args.group in ("Lp", "cover"):
        g = _resolve_element(model, "pt")
        action = (quantum_action if args.mode == "quantum" else classical_action)
        tr = FiniteTransform("%s action at the exact PT element" % args.mode,
                             lambda x: action(model.space, g).apply(x))
        reports.append(check_invariance(theory, [tr], tol=args.tol))
    ok = all(r.passed for r in reports)
    payload = {"theory": theory.name, "group": args.group, "mode": args.mode,
               "reports": [r.to_json() for r in reports],
               "verdict": "pass" if ok else "fail"}
    lines = ["%s under %s (%s action): %s" % (theory.name, args.group, args.mode,
                                              "pass" if ok else "fail")]
    for r in reports:
        for v in r.verdicts:
            lines.append("  [%s] %s" % ("ok" if v.passed else "FAIL", v.name))
    _emit(args, payload, "\n".join(lines))
    return PASS if ok else FAIL


def cmd_transform(args) -> int:
    model = _load_model(args.file)
    g = _resolve_element(model, args.element)
    space = model.space
    try:
        if args.action == "classical":
            action = classical_action(space, g)
        elif args.action == "quantum":
            action = quantum_action(space, g)
        else:
            action = holomorphic_structure_action(space, g)
    except (GroupError, AlgebraError) as exc:
        return _usage(str(exc))
    dollar = named_involution(space, args.dollar) if args.dollar else None
    names = [args.formula] if args.formula else sorted(model.formulas)
    out = {}
    for name in names:
        if name not in model.formulas:
            return _usage("unknown formula %r" % name)
        img = action.apply(model.formulas[name])
        if dollar is not None:
            img = conjugation_C(dollar, img)
        out[name] = img.serialize()
    payload = {"element": args.element, "action": args.action,
               "dollar": args.dollar, "images": out}
    _emit(args, payload, "\n".join("%s -> %s" % kv for kv in sorted(out.items())))
    return PASS


def cmd_classify(args) -> int:
    model = _load_model(args.file)
    g = _resolve_element(model, args.element)
    space = model.space
    action = (quantum_action if args.action == "quantum" else classical_action)(
        space, g)

    def full(x):
        img = action.apply(x)
        if args.dollar:
            img = conjugation_C(named_involution(space, args.dollar), img)
        return img
    try:
        label = classify_transform(space, full)
    except AlgebraError as exc:
        return _usage(str(exc))
    reversing = g.time_reversing
    kind = None
    if reversing and label in ("preserving", "both"):
        kind = "PT transformation"
    elif reversing and label == "conjugating":
        kind = "CPT transformation"
    payload = {"element": args.element, "action": args.action,
               "dollar": args.dollar, "charge": label, "kind": kind}
    text = "charge behaviour: %s%s" % (label, (" (%s)" % kind) if kind else "")
    _emit(args, payload, text)
    return PASS


def cmd_harness(args) -> int:
    model = _load_model(args.file)
    theory = _pick_theory(model, args.theory)
    dollar = named_involution(model.space, args.dollar or "star") \
        if args.theorem == "cpt" else None
    try:
        rep = theorem_harness(theory, args.theorem, dollar,
                              samples=args.samples, premise_samples=args.samples,
                              seed=args.seed, tol=args.tol)
    except (TheoryError, GroupError, AlgebraError) as exc:
        return _usage(str(exc))
    lines = ["theorem: %s" % rep.theorem]
    for p in rep.premises:
        lines.append("  premise [%s] %s%s" % ("ok" if p.ok else "FAIL", p.name,
                                              (": " + p.detail) if p.detail else ""))
    if not rep.applicable:
        lines.append("verdict: not applicable")
        _emit(args, rep.to_json(), "\n".join(lines))
        return NOT_APPLICABLE
    for v in rep.conclusion.verdicts:
        lines.append("  conclusion [%s] %s" % ("ok" if v.passed else "FAIL", v.name))
    if rep.classification:
        lines.append("classification: %s" % rep.classification)
    lines.append("verdict: %s" % ("pass" if rep.passed else "fail"))
    _emit(args, rep.to_json(), "\n".join(lines))
    return PASS if rep.passed else FAIL


def cmd_axioms(args) -> int:
    if args.galilean:
        spacetime = Galilean(args.dim or 3)
    elif args.signature:
        try:
            p, q = (int(x) for x in args.signature.split(","))
            spacetime = Signature(p, q)
        except ValueError as exc:
            return _usage("bad signature: %s" % exc)
    else:
        return _usage("axioms needs --signature p,q or --galilean")
    try:
        rep = verify_axioms(spacetime, samples=args.samples, seed=args.seed)
    except GroupError as exc:
        return _usage(str(exc))
    _emit(args, rep.to_json(), rep.to_text())
    return PASS if rep.passed else FAIL


def cmd_examples(args) -> int:
    registry = builtin_examples()
    if args.list:
        for name, e in sorted(registry.items()):
            print("%-30s %s" % (name, e.title))
        return PASS
    names = [args.name] if args.name else sorted(registry)
    overall = True
    payloads = []
    for name in names:
        if name not in registry:
            return _usage("unknown example %r" % name)
        rep = registry[name].run(args.samples, args.seed)
        overall = overall and rep.passed
        payloads.append(rep.to_json())
        if not args.json:
            print("[%s] %s" % ("pass" if rep.passed else "FAIL", name))
            for line in rep.lines:
                print("    " + line)
    if args.json:
        print(json.dumps(payloads, indent=2))
    return PASS if overall else FAIL


def cmd_counterexample(args) -> int:
    from .theories import counterexample_2d, counterexample_galilean
    if args.scenario == "2d":
        rep = counterexample_2d(samples=args.samples, seed=args.seed)
    else:
        rep = counterexample_galilean(args.dim or 3, samples=args.samples,
                                      seed=args.seed)
    lines = ["scenario %s: %s" % (rep.name, "pass" if rep.passed else "fail"),
             "obstruction: %s" % rep.obstruction]
    for n, ok, detail in rep.checks:
        lines.append("  [%s] %s" % ("ok" if ok else "FAIL", n))
    _emit(args, rep.to_json(), "\n".join(lines))
    return PASS if rep.passed else FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cptlab",
                                 description="PT/CPT invariance checks for "
                                             "formal field theories")
    ap.add_argument("--json", action="store_true", help="emit JSON reports")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, with_file=True):
        if with_file:
            p.add_argument("file", help="theory file (.cpt)")
        p.add_argument("--samples", type=int, default=25)
        p.add_argument("--seed", type=int, default=1)
        p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("--json", action="store_true")

    p = sub.add_parser("check", help="invariance of a theory under a group")
    common(p)
    p.add_argument("--theory")
    p.add_argument("--group", choices=["Lpo", "Lp", "cover"], default="Lpo")
    p.add_argument("--mode", choices=["classical", "quantum"], default="classical")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("transform", help="print images of formulas")
    common(p)
    p.add_argument("--formula")
    p.add_argument("--element", default="pt",
                   choices=["pt", "total-reflection", "identity"])
    p.add_argument("--action", default="classical",
                   choices=["classical", "quantum", "holomorphic"])
    p.add_argument("--dollar", choices=["id", "star", "hash", "starhash"])
    p.set_defaults(fn=cmd_transform)

    p = sub.add_parser("classify", help="charge classification of an action")
    common(p)
    p.add_argument("--element", default="pt",
                   choices=["pt", "total-reflection", "identity"])
    p.add_argument("--action", default="quantum",
                   choices=["classical", "quantum"])
    p.add_argument("--dollar", choices=["id", "star", "hash", "starhash"])
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("harness", help="run a theorem harness")
    common(p)
    p.add_argument("--theory")
    p.add_argument("--theorem", required=True, choices=["pt", "sr", "cpt", "holpt"])
    p.add_argument("--dollar", choices=["id", "star", "hash", "starhash"])
    p.set_defaults(fn=cmd_harness)

    p = sub.add_parser("axioms", help="group-axiom evidence for a signature")
    common(p, with_file=False)
    p.add_argument("--signature", help="p,q")
    p.add_argument("--galilean", action="store_true")
    p.add_argument("--dim", type=int)
    p.set_defaults(fn=cmd_axioms)

    p = sub.add_parser("examples", help="run the built-in corpus")
    common(p, with_file=False)
    p.add_argument("name", nargs="?")
    p.add_argument("--list", action="store_true")
    p.set_defaults(fn=cmd_examples)

    p = sub.add_parser("counterexample", help="run a documented failure scenario")
    common(p, with_file=False)
    p.add_argument("scenario", choices=["2d", "galilean"])
    p.add_argument("--dim", type=int)
    p.set_defaults(fn=cmd_counterexample)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE


if __name__ == "__main__":
    sys.exit(main())
