"""Seeded random generators and small brute-force oracles shared by the tests."""

import random

from ccrep.syntax import (
    BOT,
    NIL,
    OMEGA,
    TOP,
    Box,
    Diamond,
    Prefix,
    Signature,
    canonical_formula,
    canonical_term,
    choice,
    conj,
    disj,
)

SIG = Signature({"a"}, {"b"})
SIG2 = Signature({"a", "c"}, {"b", "d"})
BISIG = Signature({"a"}, {"b"}, {"c"})


def rng(seed=0):
    return random.Random(seed)


def random_term(r, sig, depth, width=2, omega=True, leaf_p=0.25):
    """A canonical term with prefix depth <= depth and at most ``width`` summands per level."""
    leaves = [NIL, OMEGA] if omega else [NIL]
    if depth == 0:
        return r.choice(leaves)
    actions = sorted(sig.actions)
    parts = []
    for _ in range(r.randint(1, width)):
        if r.random() < leaf_p:
            parts.append(r.choice(leaves))
        else:
            parts.append(Prefix(r.choice(actions), random_term(r, sig, depth - 1, width, omega, leaf_p)))
    return canonical_term(choice(parts))


def random_formula(r, sig, depth, width=2, stop_p=0.15, modal_only=False):
    """A canonical formula of modal depth <= depth; connectives have 2..width modal children."""
    if depth == 0 or r.random() < stop_p:
        return r.choice([TOP, BOT, TOP])
    kinds = []
    if sig.diamond_actions:
        kinds.append("dia")
    if sig.box_actions:
        kinds.append("box")
    if not modal_only:
        kinds += ["and", "or"]
    kind = r.choice(kinds)
    if kind in ("dia", "box"):
        pool = sig.diamond_actions if kind == "dia" else sig.box_actions
        body = random_formula(r, sig, depth - 1, width, stop_p)
        return canonical_formula((Diamond if kind == "dia" else Box)(r.choice(sorted(pool)), body))
    children = [random_formula(r, sig, depth, width, stop_p, modal_only=True) for _ in range(r.randint(2, max(2, width)))]
    return canonical_formula(conj(children) if kind == "and" else disj(children))


def distinct(gen, n, limit=100000):
    """The first ``n`` distinct values drawn from the zero-argument callable ``gen``."""
    seen = {}
    for _ in range(limit):
        x = gen()
        seen.setdefault(x, None)
        if len(seen) == n:
            return list(seen)
    raise RuntimeError(f"only {len(seen)} distinct values")


# hypothesis strategies (imported lazily so the helpers work without hypothesis)
def term_strategy(sig, omega=True, max_leaves=6):
    from hypothesis import strategies as st

    leaves = st.sampled_from([NIL, OMEGA] if omega else [NIL])
    actions = sorted(sig.actions)
    return st.recursive(
        leaves,
        lambda inner: st.one_of(
            st.builds(Prefix, st.sampled_from(actions), inner),
            st.lists(inner, min_size=2, max_size=3).map(choice),
        ),
        max_leaves=max_leaves,
    )


def formula_strategy(sig, max_leaves=6):
    from hypothesis import strategies as st

    leaves = st.sampled_from([TOP, BOT])
    parts = []
    if sig.diamond_actions:
        parts.append(lambda inner: st.builds(Diamond, st.sampled_from(sorted(sig.diamond_actions)), inner))
    if sig.box_actions:
        parts.append(lambda inner: st.builds(Box, st.sampled_from(sorted(sig.box_actions)), inner))
    return st.recursive(
        leaves,
        lambda inner: st.one_of(
            *[p(inner) for p in parts],
            st.lists(inner, min_size=2, max_size=3).map(conj),
            st.lists(inner, min_size=2, max_size=3).map(disj),
        ),
        max_leaves=max_leaves,
    )
