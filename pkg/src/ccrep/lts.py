"""Operational semantics of process terms as explicit finite transition graphs."""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from .errors import ParseError, SignatureMismatch
from .syntax import OMEGA, Nil, Omega, Prefix, Signature, Term, canonical_term, check_term, print_term


@lru_cache(maxsize=1 << 15)
def _transitions(p: Term, contravariant: frozenset) -> frozenset:
    if isinstance(p, Nil):
        return frozenset()
    if isinstance(p, Omega):
        return frozenset((b, OMEGA) for b in contravariant)
    if isinstance(p, Prefix):
        return frozenset({(p.action, p.body)})
    return _transitions(p.left, contravariant) | _transitions(p.right, contravariant)


def transitions(p: Term, sig: Signature) -> frozenset:
    """All pairs ``(a, p')`` with ``p --a--> p'``.

    ``w`` loops on every contravariant action of ``sig`` (and on nothing else,
    even when ``sig`` has bivariant actions).
    """
    return _transitions(p, sig.contravariant)


@dataclass(frozen=True)
class Lts:
    """A finite labelled transition system over a signature.

    ``states`` is sorted, ``edges`` is a sorted tuple of ``(source, action, target)``
    and ``labels`` maps each state to a display name.
    """

    states: tuple
    initial: str
    edges: tuple
    signature: Signature
    labels: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(sorted(set(self.states))))
        object.__setattr__(self, "edges", tuple(sorted(set(map(tuple, self.edges)))))
        known = set(self.states)
        if self.initial not in known:
            raise SignatureMismatch(f"initial state {self.initial!r} is not a state")
        actions = self.signature.actions
        for s, a, t in self.edges:
            if s not in known or t not in known:
                raise SignatureMismatch(f"edge {(s, a, t)} leaves the state set")
            if a not in actions:
                raise SignatureMismatch(f"edge action {a!r} is not in the signature")
        if not self.labels:
            object.__setattr__(self, "labels", {s: s for s in self.states})

    @cached_property
    def successors(self) -> dict:
        """``state -> action -> tuple of targets`` (image-finite by construction)."""
        succ = {s: defaultdict(list) for s in self.states}
        for s, a, t in self.edges:
            succ[s][a].append(t)
        return {s: {a: tuple(ts) for a, ts in m.items()} for s, m in succ.items()}

    def with_initial(self, state: str) -> "Lts":
        return Lts(self.states, state, self.edges, self.signature, dict(self.labels))

    def to_dict(self) -> dict:
        return {
            "states": list(self.states),
            "initial": self.initial,
            "edges": [list(e) for e in self.edges],
        }

    def to_json(self, indent=None) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)


def lts_from_dict(doc: dict, sig: Signature) -> Lts:
    try:
        states = [str(s) for s in doc["states"]]
        initial = str(doc.get("initial", states[0] if states else ""))
        edges = [(str(s), str(a), str(t)) for s, a, t in doc["edges"]]
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ParseError(f"malformed LTS document: {exc}") from None
    return Lts(tuple(states), initial, tuple(edges), sig)


def lts_from_json(text: str, sig: Signature) -> Lts:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise ParseError("an LTS document must be a JSON object")
    return lts_from_dict(doc, sig)


@lru_cache(maxsize=1 << 14)
def _build(p: Term, sig: Signature) -> Lts:
    return _closure((p,), sig)


def _closure(terms, sig: Signature) -> Lts:
    roots = [canonical_term(p) for p in terms]
    names = {r: print_term(r) for r in roots}
    edges = []
    todo = list(names)
    while todo:
        q = todo.pop()
        for a, q2 in _transitions(q, sig.contravariant):
            q2 = canonical_term(q2)
            if q2 not in names:
                names[q2] = print_term(q2)
                todo.append(q2)
            edges.append((names[q], a, names[q2]))
    return Lts(tuple(names.values()), names[roots[0]], tuple(edges), sig)


def build_lts(p: Term, sig: Signature) -> Lts:
    """Closure of ``{p}`` under transitions; states are canonical printed terms."""
    check_term(p, sig)
    return _build(p, sig)


def build_lts_many(terms, sig: Signature) -> Lts:
    """One system holding every term of ``terms`` (shared subterms share states).

    The initial state is the first term; every term's state is its printed
    canonical form.
    """
    terms = list(terms)
    if not terms:
        raise ValueError("no terms")
    for p in terms:
        check_term(p, sig)
    return _closure(terms, sig)


def disjoint_union(left: Lts, right: Lts, tags=("L", "R")) -> tuple:
    """Union of two systems over one signature with tagged state names.

    Returns the union and the two renaming dictionaries.
    """
    if left.signature != right.signature:
        raise SignatureMismatch("systems over different signatures")
    lmap = {s: f"{tags[0]}:{s}" for s in left.states}
    rmap = {s: f"{tags[1]}:{s}" for s in right.states}
    edges = [(lmap[s], a, lmap[t]) for s, a, t in left.edges]
    edges += [(rmap[s], a, rmap[t]) for s, a, t in right.edges]
    union = Lts(tuple(lmap.values()) + tuple(rmap.values()), lmap[left.initial], tuple(edges), left.signature)
    return union, lmap, rmap

