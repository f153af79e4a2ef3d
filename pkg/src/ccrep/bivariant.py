"""Bivariant actions and their encoding by pairs of covariant/contravariant actions.

Each bivariant action ``c`` is split into a covariant ``c^r`` and a
contravariant ``c^l``.  ``transform_T`` is the direct encoding (one copy of each
``c``-edge per half), ``transform_T0`` the composite encoding through modal
transition systems (with the absorbing state ``u``), and ``transform_Tplus``
the single-action ``u``-adjunction relating the two.
"""

from __future__ import annotations

from .errors import (
    CCError,
    NotRepresentable,
    OmegaInBivariantTerm,
    PreconditionViolated,
    SignatureMismatch,
)
from .logic import satisfies
from .lts import Lts, build_lts
from .simulation import cc_equivalent, lts_simulates, simulates
from .syntax import (
    And,
    Box,
    Choice,
    Diamond,
    Formula,
    Nil,
    Omega,
    Or,
    Prefix,
    Signature,
    Term,
    canonical_term,
    check_formula,
    check_term,
    choice,
    contains_omega,
    print_term,
    summands,
    term_key,
)


def covariant_half(c: str) -> str:
    return f"{c}^r"


def contravariant_half(c: str) -> str:
    return f"{c}^l"


def _require_unsplit(sig: Signature) -> None:
    clash = sorted(a for a in sig.actions if "^" in a)
    if clash:
        raise SignatureMismatch(f"action {clash[0]!r} collides with the generated ^r/^l names")


def bar_signature(sig: Signature) -> Signature:
    """Target of the direct encoding: ``c`` becomes ``c^r`` (covariant) and ``c^l``."""
    _require_unsplit(sig)
    return Signature(
        sig.covariant | {covariant_half(c) for c in sig.bivariant},
        sig.contravariant | {contravariant_half(c) for c in sig.bivariant},
    )


def hat_signature(sig: Signature) -> Signature:
    """Target of the composite encoding."""
    _require_unsplit(sig)
    return Signature(
        {covariant_half(d) for d in sig.covariant | sig.bivariant},
        {contravariant_half(d) for d in sig.actions},
    )


def tilde_signature(sig: Signature) -> Signature:
    """The uniform signature holding both halves of every action."""
    _require_unsplit(sig)
    return Signature(
        {covariant_half(a) for a in sig.actions},
        {contravariant_half(a) for a in sig.actions},
    )


# --------------------------------------------------------------------------
# semantics with bivariant actions


def _check_term(p: Term, sig: Signature) -> None:
    try:
        check_term(p, sig)
    except CCError as exc:
        raise SignatureMismatch(str(exc)) from None


def bi_simulates(p: Term, q: Term, sig: Signature) -> bool:
    """cc-simulation where bivariant actions obey both clauses."""
    _check_term(p, sig)
    _check_term(q, sig)
    return lts_simulates(build_lts(p, sig), build_lts(q, sig), sig.diamond_actions, sig.box_actions)


def bi_equivalent(p: Term, q: Term, sig: Signature) -> bool:
    return bi_simulates(p, q, sig) and bi_simulates(q, p, sig)


def bi_satisfies(p: Term, f: Formula, sig: Signature) -> bool:
    """Satisfaction with diamonds over covariant/bivariant and boxes over
    contravariant/bivariant actions."""
    return satisfies(p, f, sig)


# --------------------------------------------------------------------------
# encodings


def transform_T(x, sig: Signature):
    """Split every bivariant edge ``c`` into ``c^r`` and ``c^l``.

    Accepts an :class:`Lts` (edges relabelled, states unchanged) or a ``w``-free
    term, where ``c.p`` becomes ``c^r.T(p) + c^l.T(p)``.
    """
    bar = bar_signature(sig)
    if isinstance(x, Lts):
        edges = []
        for s, a, t in x.edges:
            if a in sig.bivariant:
                edges.append((s, covariant_half(a), t))
                edges.append((s, contravariant_half(a), t))
            else:
                edges.append((s, a, t))
        return Lts(x.states, x.initial, tuple(edges), bar, dict(x.labels))
    _check_term(x, sig)
    if contains_omega(x):
        raise OmegaInBivariantTerm()
    return canonical_term(_encode_term(x, sig))


def _encode_term(p: Term, sig: Signature) -> Term:
    if isinstance(p, Nil):
        return p
    if isinstance(p, Choice):
        return Choice(_encode_term(p.left, sig), _encode_term(p.right, sig))
    body = _encode_term(p.body, sig)
    if p.action in sig.bivariant:
        return Choice(Prefix(covariant_half(p.action), body), Prefix(contravariant_half(p.action), body))
    return Prefix(p.action, body)


def _fresh_state(states, base="u") -> str:
    name = base
    while name in states:
        name += "'"
    return name


def transform_T0(x: Lts, sig: Signature) -> Lts:
    """The composite encoding over the hat signature.

    Every ``d``-edge yields a ``d^l``-edge, and also a ``d^r``-edge when ``d`` is
    covariant or bivariant; every state gains ``a^l`` to a fresh state ``u`` for
    each covariant ``a``, and ``u`` loops on ``d^l`` for every action ``d``.
    """
    hat = hat_signature(sig)
    u = _fresh_state(x.states)
    edges = []
    for s, d, t in x.edges:
        if d not in sig.actions:
            raise SignatureMismatch(f"edge action {d!r} is not in the signature")
        edges.append((s, contravariant_half(d), t))
        if d in sig.covariant or d in sig.bivariant:
            edges.append((s, covariant_half(d), t))
    for a in sorted(sig.covariant):
        edges.extend((s, contravariant_half(a), u) for s in x.states)
    edges.extend((u, contravariant_half(d), u) for d in sorted(sig.actions))
    labels = dict(x.labels)
    labels[u] = u
    return Lts(x.states + (u,), x.initial, tuple(edges), hat, labels)


def transform_Tplus(x: Lts, c_l: str) -> Lts:
    """Add a state ``u`` behaving like ``w`` and a ``c_l``-edge from every state to it."""
    sig = x.signature
    if c_l not in sig.contravariant:
        raise PreconditionViolated(f"{c_l!r} is not a contravariant action of the system")
    if any(a == c_l for _, a, _ in x.edges):
        raise PreconditionViolated(f"the system already has a {c_l!r} transition")
    u = _fresh_state(x.states)
    edges = list(x.edges)
    edges.extend((s, c_l, u) for s in x.states)
    edges.extend((u, b, u) for b in sorted(sig.contravariant))
    labels = dict(x.labels)
    labels[u] = u
    return Lts(x.states + (u,), x.initial, tuple(edges), sig, labels)


def translate_formula(f: Formula, sig: Signature) -> Formula:
    """``<c>`` becomes ``<c^r>`` and ``[c]`` becomes ``[c^l]`` for bivariant ``c``."""
    try:
        check_formula(f, sig)
    except CCError as exc:
        raise SignatureMismatch(str(exc)) from None
    return _translate(f, sig)


def _translate(f, sig):
    if isinstance(f, Diamond):
        a = covariant_half(f.action) if f.action in sig.bivariant else f.action
        return Diamond(a, _translate(f.body, sig))
    if isinstance(f, Box):
        b = contravariant_half(f.action) if f.action in sig.bivariant else f.action
        return Box(b, _translate(f.body, sig))
    if isinstance(f, And):
        return And(tuple(_translate(c, sig) for c in f.children))
    if isinstance(f, Or):
        return Or(tuple(_translate(c, sig) for c in f.children))
    return f


def rename_to_uniform(x: Lts, sig: Signature, which: str) -> Lts:
    """Relabel an encoding into the uniform signature.

    ``which="T"``: covariant ``a`` becomes ``a^r`` and contravariant ``b`` becomes
    ``b^l``; split names are kept.  ``which="T0"``: labels are already uniform.
    """
    tilde = tilde_signature(sig)
    if which == "T0":
        return Lts(x.states, x.initial, x.edges, tilde, dict(x.labels))
    if which != "T":
        raise ValueError("which must be 'T' or 'T0'")
    edges = []
    for s, a, t in x.edges:
        if a in sig.covariant:
            a = covariant_half(a)
        elif a in sig.contravariant:
            a = contravariant_half(a)
        edges.append((s, a, t))
    return Lts(x.states, x.initial, tuple(edges), tilde, dict(x.labels))


# --------------------------------------------------------------------------
# recognising and reconstructing encodings


def is_representation(p: Term, sig: Signature) -> bool:
    """Every state's ``c^r`` and ``c^l`` successors coincide, for each bivariant ``c``."""
    bar = bar_signature(sig)
    _check_term(p, bar)
    lts = build_lts(p, bar)
    for moves in lts.successors.values():
        for c in sig.bivariant:
            right = set(moves.get(covariant_half(c), ()))
            left = set(moves.get(contravariant_half(c), ()))
            if right != left:
                return False
    return True


def _extremal(terms, below, maximal: bool) -> list:
    """Maximal (or minimal) members under ``below``; equivalent ones keep the first."""
    kept = []
    for t in terms:
        if maximal:
            if any(below(t, k) for k in kept):
                continue
            kept = [k for k in kept if not below(k, t)]
        else:
            if any(below(k, t) for k in kept):
                continue
            kept = [k for k in kept if not below(t, k)]
        kept.append(t)
    return kept


def _rebuild(p: Term, sig: Signature, bar: Signature) -> Term:
    groups = {}
    for s in summands(p):
        if isinstance(s, Prefix):
            groups.setdefault(s.action, set()).add(canonical_term(s.body))

    def below(x, y):
        return simulates(x, y, bar)

    pruned = {}
    for a, subs in groups.items():
        ordered = sorted(subs, key=term_key)
        pruned[a] = _extremal(ordered, below, maximal=a in bar.covariant)

    parts = []
    for a in sorted(sig.covariant | sig.contravariant):
        parts.extend(Prefix(a, _rebuild(s, sig, bar)) for s in pruned.get(a, ()))
    for c in sorted(sig.bivariant):
        halves = pruned.get(covariant_half(c), []) + pruned.get(contravariant_half(c), [])
        parts.extend(Prefix(c, _rebuild(s, sig, bar)) for s in halves)
    unique = {print_term(t): t for t in map(canonical_term, parts)}
    return canonical_term(choice(unique[k] for k in sorted(unique)))


def reconstruct_bivariant(p: Term, sig: Signature) -> Term:
    """A term over the original signature whose encoding is cc-equivalent to ``p``.

    Non-maximal covariant and non-minimal contravariant summands are pruned at
    every level, the surviving ``c^r``/``c^l`` summands are folded into ``c``,
    and the result is verified by comparing its encoding with ``p``.  Raises
    :class:`NotRepresentable` when that check fails.
    """
    bar = bar_signature(sig)
    _check_term(p, bar)
    p = canonical_term(p)
    if isinstance(p, (Nil, Omega)):
        return p
    if contains_omega(p):
        raise OmegaInBivariantTerm("reconstruction is defined on w-free terms (or exactly w)")
    candidate = _rebuild(p, sig, bar)
    image = transform_T(candidate, sig)
    if not cc_equivalent(p, image, bar):
        raise NotRepresentable(p, image)
    return candidate

