"""Model checking of cc-modal formulae and bounded enumerators of terms and formulae.

The enumerators are brute-force oracles: they can refute logical claims on
small instances but never prove them.
"""

from __future__ import annotations

from itertools import combinations

from .errors import CCError, SignatureMismatch
from .lts import Lts, build_lts
from .syntax import (
    BOT,
    NIL,
    OMEGA,
    TOP,
    And,
    Bot,
    Box,
    Diamond,
    Formula,
    Or,
    Prefix,
    Signature,
    Term,
    Top,
    check_formula,
    canonical_formula,
    check_term,
    choice,
    formula_size,
    print_formula,
    print_term,
    term_key,
)


def lts_satisfies(lts: Lts, f: Formula, state=None) -> bool:
    """Evaluate ``f`` at ``state`` (default: the initial state) of ``lts``."""
    succ = lts.successors
    memo = {}

    def sat(s, g):
        key = (s, id(g))
        if key in memo:
            return memo[key]
        if isinstance(g, Top):
            r = True
        elif isinstance(g, Bot):
            r = False
        elif isinstance(g, And):
            r = all(sat(s, c) for c in g.children)
        elif isinstance(g, Or):
            r = any(sat(s, c) for c in g.children)
        elif isinstance(g, Diamond):
            r = any(sat(t, g.body) for t in succ[s].get(g.action, ()))
        else:
            r = all(sat(t, g.body) for t in succ[s].get(g.action, ()))
        memo[key] = r
        return r

    return sat(lts.initial if state is None else state, f)


def satisfying_states(lts: Lts, f: Formula) -> frozenset:
    """All states of ``lts`` satisfying ``f``, computed bottom-up over the formula."""
    succ = lts.successors
    states = lts.states
    memo = {}

    def ext(g):
        key = id(g)
        if key in memo:
            return memo[key]
        if isinstance(g, Top):
            r = frozenset(states)
        elif isinstance(g, Bot):
            r = frozenset()
        elif isinstance(g, And):
            r = frozenset(states)
            for c in g.children:
                r &= ext(c)
        elif isinstance(g, Or):
            r = frozenset()
            for c in g.children:
                r |= ext(c)
        elif isinstance(g, Diamond):
            inner = ext(g.body)
            r = frozenset(s for s in states if any(t in inner for t in succ[s].get(g.action, ())))
        else:
            inner = ext(g.body)
            r = frozenset(s for s in states if all(t in inner for t in succ[s].get(g.action, ())))
        memo[key] = r
        return r

    return ext(f)


def _check(p: Term, f: Formula, sig: Signature) -> None:
    try:
        check_term(p, sig)
        check_formula(f, sig)
    except CCError as exc:
        raise SignatureMismatch(str(exc)) from None


def satisfies(p: Term, f: Formula, sig: Signature) -> bool:
    """``p |= f``.

    Diamonds range over the transitions of their action and boxes over all of
    them, so the same evaluator serves bivariant signatures.
    """
    _check(p, f, sig)
    return lts_satisfies(build_lts(p, sig), f)


def explain(p: Term, f: Formula, sig: Signature) -> list:
    """Evaluation tree of ``p |= f`` as indented lines."""
    _check(p, f, sig)
    lts = build_lts(p, sig)
    lines = []

    def walk(s, g, depth):
        verdict = lts_satisfies(lts, g, s)
        lines.append(f"{'  ' * depth}{s} |= {print_formula(g)} : {'true' if verdict else 'false'}")
        if isinstance(g, (And, Or)):
            for c in g.children:
                walk(s, c, depth + 1)
        elif isinstance(g, (Diamond, Box)):
            for t in lts.successors[s].get(g.action, ()):
                walk(t, g.body, depth + 1)
        return verdict

    walk(lts.initial, f, 0)
    return lines


# --------------------------------------------------------------------------
# bounded enumeration


def _bounded_sums(units: list, max_width: int) -> list:
    out = list(units)
    for k in range(2, max_width + 1):
        out.extend(choice(sorted(c, key=print_term)) for c in combinations(units, k))
    return out


def enumerate_terms(sig: Signature, max_prefix_depth: int, max_width: int, omega: bool = True) -> list:
    """Every term of prefix nesting <= ``max_prefix_depth`` whose sums have at most
    ``max_width`` distinct summands, leaves drawn from ``0`` and ``w``.

    Sums are canonical (summands sorted by printed text), so the list is
    duplicate-free; it is ordered by size, then text.  ``omega=False`` restricts
    the leaves to ``0``.
    """
    if max_prefix_depth < 0 or max_width < 0:
        raise ValueError("bounds must be non-negative")
    leaves = [NIL, OMEGA] if omega else [NIL]
    if max_width == 0:
        return []
    actions = sorted(sig.actions)
    level = _bounded_sums(leaves, max_width)
    for _ in range(max_prefix_depth):
        units = leaves + [Prefix(a, t) for a in actions for t in level]
        units.sort(key=term_key)
        level = _bounded_sums(units, max_width)
    return sorted(level, key=term_key)


def _formula_key(f: Formula) -> tuple:
    return (formula_size(f), print_formula(f))


def enumerate_formulae(sig: Signature, max_modal_depth: int, max_width: int) -> list:
    """Every formula of modal depth <= ``max_modal_depth`` built from ``tt``, ``ff``
    and modalities, combined at each level by one conjunction or disjunction of
    at most ``max_width`` distinct operands.

    Duplicate-free, ordered by size then printed text.
    """
    if max_modal_depth < 0 or max_width < 0:
        raise ValueError("bounds must be non-negative")
    if max_width == 0:
        return []
    diamonds = sorted(sig.diamond_actions)
    boxes = sorted(sig.box_actions)
    level = _combine([BOT, TOP], max_width)
    for _ in range(max_modal_depth):
        atoms = [BOT, TOP]
        atoms += [Diamond(a, g) for a in diamonds for g in level]
        atoms += [Box(b, g) for b in boxes for g in level]
        level = _combine(sorted(atoms, key=_formula_key), max_width)
    return sorted(level, key=_formula_key)


def _combine(atoms: list, max_width: int) -> list:
    out = list(atoms)
    for k in range(2, max_width + 1):
        for combo in combinations(atoms, k):
            out.append(canonical_formula(And(combo)))
            out.append(canonical_formula(Or(combo)))
    return out
