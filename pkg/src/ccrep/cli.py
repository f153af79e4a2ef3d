"""Command-line front end: ``ccrep COMMAND --sig FILE ARGS...``.

Terms and formulae are given inline or as ``@path``.  Verdict commands exit 0
for yes and 1 for no; errors exit 2 (3 when a normal form grows past
``CCREP_MAX_SNF_DISJUNCTS``).  ``--json`` prints one JSON document instead of text.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from pathlib import Path

from .bivariant import (
    bar_signature,
    bi_simulates,
    is_representation,
    reconstruct_bivariant,
    transform_T,
    transform_T0,
    translate_formula,
)
from .characteristic import char_formula
from .errors import CCError, NotRepresentable, SnfExplosion
from .logic import enumerate_formulae, enumerate_terms, explain, satisfies
from .lts import Lts, build_lts, lts_from_json
from .normalform import snf_stats, to_strong_normal_form
from .representation import entailment_counterexample, is_prime, represent
from .simulation import simulates, simulation_witness
from .syntax import (
    formula_to_json,
    parse_formula,
    parse_signature,
    parse_term,
    print_formula,
    print_term,
    term_to_json,
)

COMMANDS = (
    "parse", "lts", "sim", "check", "charform", "snf", "represent", "prime", "consistent",
    "entails", "equiv", "bisim", "encode", "encode0", "translate", "decode", "isrep", "enumerate",
)


class UsageError(CCError):
    pass


def _read_arg(raw: str) -> str:
    if raw.startswith("@"):
        try:
            return Path(raw[1:]).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {raw[1:]}: {exc.strerror}") from None
    return raw


def _load_signature(path):
    if path is None:
        raise UsageError("--sig FILE is required")
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read signature file {path}: {exc.strerror}") from None
    return parse_signature(text)


def _term_or_lts(raw, sig):
    """An inline/file term, or an LTS when the ``@file`` holds a JSON document."""
    text = _read_arg(raw)
    if text.lstrip().startswith("{"):
        return lts_from_json(text, sig)
    return parse_term(text.strip(), sig)


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--sig", metavar="FILE", help="signature file (r:, l:, bi: lines)")
    common.add_argument("--json", action="store_true", help="structured output")

    top = argparse.ArgumentParser(prog="ccrep", description=__doc__.splitlines()[0])
    sub = top.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, help_, *args):
        p = sub.add_parser(name, parents=[common], help=help_)
        for a in args:
            p.add_argument(a)
        return p

    p = add("parse", "parse and print canonically", "text")
    p.add_argument("--formula", action="store_true", help="read a formula instead of a term")
    p = add("lts", "transition system of a term", "term")
    p.add_argument("--figure", metavar="PATH")
    p = add("sim", "decide P <=cc Q", "p", "q")
    p.add_argument("--witness", action="store_true")
    p = add("check", "decide P |= F", "term", "formula")
    p.add_argument("--explain", action="store_true")
    add("charform", "characteristic formula", "term")
    p = add("snf", "strong normal form", "formula")
    p.add_argument("--stats", action="store_true")
    add("represent", "representing antichain", "formula")
    add("prime", "primality and single-process representability", "formula")
    add("consistent", "satisfiability with a witness", "formula")
    add("entails", "decide F <= G", "f", "g")
    add("equiv", "decide F == G", "f", "g")
    p = add("bisim", "cc-simulation with bivariant actions", "p", "q")
    p.add_argument("--bi", action="store_true", help="accepted for clarity; bivariant clauses always apply")
    for name in ("encode", "encode0"):
        p = add(name, "split bivariant actions" if name == "encode" else "composite encoding with state u", "input")
        p.add_argument("--figure", metavar="PATH")
    add("translate", "translate a formula to the split signature", "formula")
    add("decode", "recover a term from a split-signature term", "term")
    add("isrep", "is the term an encoding", "term")
    p = add("enumerate", "list small terms or formulae")
    p.add_argument("kind", choices=["terms", "formulae"])
    p.add_argument("--depth", type=int, default=1)
    p.add_argument("--width", type=int, default=1)
    return top


class _Out:
    def __init__(self, as_json, stream):
        self.as_json = as_json
        self.stream = stream

    def emit(self, text, doc):
        if self.as_json:
            self.stream.write(json.dumps(doc, sort_keys=True) + "\n")
        elif text:
            self.stream.write(text.rstrip("\n") + "\n")


def _verdict(out, command, yes, text, **extra):
    out.emit(text, {"command": command, "verdict": yes, **extra})
    return 0 if yes else 1


def _lts_output(out, command, lts: Lts, figure, extra_states=()):
    if figure:
        from .plotting import draw_lts

        draw_lts(lts, figure, title=command, extra_states=extra_states)
    doc = lts.to_dict()
    if out.as_json:
        out.emit("", {"command": command, "lts": doc, **({"figure": figure} if figure else {})})
    else:
        out.emit(lts.to_json(), None)
    return 0


def _run(args, out) -> int:
    cmd = args.command
    if cmd == "enumerate" and min(args.depth, args.width) < 0:
        raise UsageError("--depth and --width must be non-negative")
    sig = _load_signature(args.sig)

    def f_(raw):
        return parse_formula(_read_arg(raw).strip(), sig)

    def t_(raw):
        return parse_term(_read_arg(raw).strip(), sig)

    if cmd == "parse":
        if args.formula:
            f = f_(args.text)
            out.emit(print_formula(f), {"command": cmd, "formula": print_formula(f), "tree": formula_to_json(f)})
        else:
            p = t_(args.text)
            out.emit(print_term(p), {"command": cmd, "term": print_term(p), "tree": term_to_json(p)})
        return 0

    if cmd == "lts":
        x = _term_or_lts(args.term, sig)
        return _lts_output(out, cmd, x if isinstance(x, Lts) else build_lts(x, sig), args.figure)

    if cmd == "sim":
        p, q = t_(args.p), t_(args.q)
        yes = simulates(p, q, sig)
        text = f"{print_term(p)} <=cc {print_term(q)}: {'yes' if yes else 'no'}"
        extra = {}
        if args.witness and yes:
            rel = simulation_witness(p, q, sig).to_dict()
            extra["witness"] = rel
            text += "\n" + json.dumps(rel, sort_keys=True)
        return _verdict(out, cmd, yes, text, **extra)

    if cmd == "check":
        p, f = t_(args.term), f_(args.formula)
        yes = satisfies(p, f, sig)
        text = f"{print_term(p)} |= {print_formula(f)}: {'yes' if yes else 'no'}"
        extra = {}
        if args.explain:
            lines = explain(p, f, sig)
            extra["explain"] = lines
            text += "\n" + "\n".join(lines)
        return _verdict(out, cmd, yes, text, **extra)

    if cmd == "charform":
        p = t_(args.term)
        f = char_formula(p, sig)
        out.emit(print_formula(f), {"command": cmd, "formula": print_formula(f), "tree": formula_to_json(f)})
        return 0

    if cmd == "snf":
        snf = to_strong_normal_form(f_(args.formula), sig)
        text = str(snf)
        doc = {"command": cmd, "formula": text, "disjuncts": [str(u) for u in snf.disjuncts]}
        if args.stats:
            stats = snf_stats(snf)
            doc["stats"] = stats
            text += "\n" + "\n".join(f"{k}: {v}" for k, v in sorted(stats.items()))
        out.emit(text, doc)
        return 0

    if cmd == "represent":
        rep = represent(f_(args.formula), sig)
        out.emit(str(rep), {"command": cmd, "antichain": [print_term(p) for p in rep]})
        return 0

    if cmd == "prime":
        f = f_(args.formula)
        rep = represent(f, sig)
        prime = is_prime(f, sig)
        single = prime and len(rep) > 0
        lines = [f"{'prime' if prime else 'not prime'}: antichain {rep}"]
        lines.append(f"representable by a single process: {'yes' if single else 'no'}")
        return _verdict(
            out, cmd, prime, "\n".join(lines),
            antichain=[print_term(p) for p in rep], single_process=single,
        )

    if cmd == "consistent":
        rep = represent(f_(args.formula), sig)
        yes = len(rep) > 0
        witness = print_term(rep.members[0]) if yes else None
        text = f"consistent: witness {witness}" if yes else "inconsistent"
        return _verdict(out, cmd, yes, text, witness=witness)

    if cmd in ("entails", "equiv"):
        f, g = f_(args.f), f_(args.g)
        cex = entailment_counterexample(f, g, sig)
        direction = "left"
        if cex is None and cmd == "equiv":
            cex, direction = entailment_counterexample(g, f, sig), "right"
        yes = cex is None
        if cmd == "entails":
            text = "entails" if yes else f"does not entail: counterexample {print_term(cex)}"
        else:
            text = "equivalent" if yes else (
                f"not equivalent: {print_term(cex)} satisfies only the {direction} formula"
            )
        extra = {} if yes else {"counterexample": print_term(cex), "satisfies": direction}
        return _verdict(out, cmd, yes, text, **extra)

    if cmd == "bisim":
        p, q = t_(args.p), t_(args.q)
        yes = bi_simulates(p, q, sig)
        return _verdict(out, cmd, yes, f"{print_term(p)} <=cc {print_term(q)}: {'yes' if yes else 'no'}")

    if cmd == "encode":
        x = _term_or_lts(args.input, sig)
        if isinstance(x, Lts):
            return _lts_output(out, cmd, transform_T(x, sig), args.figure)
        image = transform_T(x, sig)
        if args.figure:
            from .plotting import draw_lts

            draw_lts(build_lts(image, bar_signature(sig)), args.figure, title=cmd)
        out.emit(print_term(image), {"command": cmd, "term": print_term(image)})
        return 0

    if cmd == "encode0":
        x = _term_or_lts(args.input, sig)
        lts = x if isinstance(x, Lts) else build_lts(x, sig)
        image = transform_T0(lts, sig)
        return _lts_output(out, cmd, image, args.figure, extra_states=set(image.states) - set(lts.states))

    if cmd == "translate":
        g = translate_formula(f_(args.formula), sig)
        out.emit(print_formula(g), {"command": cmd, "formula": print_formula(g)})
        return 0

    bar = bar_signature(sig)
    if cmd == "decode":
        p = parse_term(_read_arg(args.term).strip(), bar)
        try:
            t = reconstruct_bivariant(p, sig)
        except NotRepresentable as exc:
            text = f"not representable: {print_term(exc.left)} is not equivalent to {print_term(exc.right)}"
            return _verdict(out, cmd, False, text, candidate_image=print_term(exc.right))
        return _verdict(out, cmd, True, print_term(t), term=print_term(t))

    if cmd == "isrep":
        p = parse_term(_read_arg(args.term).strip(), bar)
        yes = is_representation(p, sig)
        return _verdict(out, cmd, yes, f"representation: {'yes' if yes else 'no'}")

    # enumerate
    if args.kind == "terms":
        items = [print_term(p) for p in enumerate_terms(sig, args.depth, args.width)]
    else:
        items = [print_formula(f) for f in enumerate_formulae(sig, args.depth, args.width)]
    out.emit("\n".join(items), {"command": cmd, "kind": args.kind, "items": items})
    return 0


def run(argv, stdout, stderr) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    out = _Out(args.json, stdout)
    try:
        return _run(args, out)
    except SnfExplosion as exc:
        stderr.write(f"ccrep {args.command}: {type(exc).__name__}: {exc}\n")
        return 3
    except CCError as exc:
        stderr.write(f"ccrep {args.command}: {type(exc).__name__}: {exc}\n")
        return 2


def execute(argv) -> tuple:
    """Run one command; returns ``(exit_code, stdout_text, stderr_text)``."""
    out, err = io.StringIO(), io.StringIO()
    old_out, old_err = sys.stdout, sys.stderr
    # argparse prints usage/help to sys.stdout/sys.stderr directly
    sys.stdout, sys.stderr = out, err
    try:
        code = run(list(argv), out, err)
    finally:
        sys.stdout, sys.stderr = old_out, old_err
    return code, out.getvalue(), err.getvalue()


def main(argv=None) -> None:
    sys.exit(run(sys.argv[1:] if argv is None else argv, sys.stdout, sys.stderr))


if __name__ == "__main__":
    main()
