"""Covariant-contravariant simulation as a greatest fixed point.

The solver starts from every pair of states that the two systems can reach
together and deletes pairs violating either clause until nothing changes:

* covariant: each ``s --a--> s'`` (``a`` covariant) is matched by some
  ``t --a--> t'`` with ``(s', t')`` still present;
* contravariant: each ``t --b--> t'`` (``b`` contravariant) is matched by some
  ``s --b--> s'`` with ``(s', t')`` still present.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from .errors import SignatureMismatch, UnknownAction
from .lts import Lts, build_lts
from .syntax import Signature, Term, check_term

_EMPTY = ()


def _joint_pairs(left: Lts, right: Lts, actions, start) -> set:
    ls, rs = left.successors, right.successors
    seen = {start}
    todo = [start]
    while todo:
        s, t = todo.pop()
        lm, rm = ls[s], rs[t]
        for a in actions:
            targets = rm.get(a, _EMPTY)
            if not targets:
                continue
            for s2 in lm.get(a, _EMPTY):
                for t2 in targets:
                    if (s2, t2) not in seen:
                        seen.add((s2, t2))
                        todo.append((s2, t2))
    return seen


def greatest_simulation(left: Lts, right: Lts, covariant, contravariant, start=None) -> frozenset:
    """Largest cc-simulation between the states of ``left`` and ``right``.

    With ``start`` given, only pairs jointly reachable from it are considered;
    membership of ``start`` is unaffected by that restriction.
    """
    covariant = tuple(sorted(covariant))
    contravariant = tuple(sorted(contravariant))
    actions = tuple(sorted(set(covariant) | set(contravariant)))
    ls, rs = left.successors, right.successors
    if start is None:
        pairs = {(s, t) for s in left.states for t in right.states}
    else:
        pairs = _joint_pairs(left, right, actions, start)

    dependants = defaultdict(list)
    for s, t in pairs:
        lm, rm = ls[s], rs[t]
        for a in actions:
            targets = rm.get(a, _EMPTY)
            for s2 in lm.get(a, _EMPTY):
                for t2 in targets:
                    dependants[s2, t2].append((s, t))

    rel = set(pairs)

    def holds(s, t):
        lm, rm = ls[s], rs[t]
        for a in covariant:
            targets = rm.get(a, _EMPTY)
            for s2 in lm.get(a, _EMPTY):
                if not any((s2, t2) in rel for t2 in targets):
                    return False
        for a in contravariant:
            sources = lm.get(a, _EMPTY)
            for t2 in rm.get(a, _EMPTY):
                if not any((s2, t2) in rel for s2 in sources):
                    return False
        return True

    queue = list(pairs)
    while queue:
        pair = queue.pop()
        if pair in rel and not holds(*pair):
            rel.discard(pair)
            queue.extend(dependants.get(pair, _EMPTY))
    return frozenset(rel)


def is_simulation(pairs, left: Lts, right: Lts, covariant, contravariant) -> bool:
    """One-pass check that ``pairs`` is closed under both clauses."""
    pairs = set(pairs)
    ls, rs = left.successors, right.successors
    for s, t in pairs:
        if s not in ls or t not in rs:
            return False
        lm, rm = ls[s], rs[t]
        for a in covariant:
            for s2 in lm.get(a, _EMPTY):
                if not any((s2, t2) in pairs for t2 in rm.get(a, _EMPTY)):
                    return False
        for a in contravariant:
            for t2 in rm.get(a, _EMPTY):
                if not any((s2, t2) in pairs for s2 in lm.get(a, _EMPTY)):
                    return False
    return True


def lts_simulates(left: Lts, right: Lts, covariant=None, contravariant=None) -> bool:
    """``left.initial`` is cc-simulated by ``right.initial``.

    The clause action sets default to the plain (bivariant-free) reading of
    ``left``'s signature.
    """
    sig = left.signature
    covariant = sig.covariant if covariant is None else covariant
    contravariant = sig.contravariant if contravariant is None else contravariant
    start = (left.initial, right.initial)
    return start in greatest_simulation(left, right, covariant, contravariant, start)


@dataclass(frozen=True)
class SimulationRelation:
    """A cc-simulation between the systems of two terms; states are printed terms."""

    pairs: frozenset
    left: Lts
    right: Lts

    def is_closed(self) -> bool:
        sig = self.left.signature
        return is_simulation(self.pairs, self.left, self.right, sig.covariant, sig.contravariant)

    def to_dict(self) -> dict:
        return {"pairs": sorted([s, t] for s, t in self.pairs)}


def _require_plain(p: Term, q: Term, sig: Signature) -> None:
    if not sig.is_bivariant_free:
        raise SignatureMismatch("cc-simulation on terms needs a bivariant-free signature; use bi_simulates")
    for t in (p, q):
        try:
            check_term(t, sig)
        except UnknownAction as exc:
            raise SignatureMismatch(str(exc)) from None


def simulates(p: Term, q: Term, sig: Signature) -> bool:
    """``p`` is cc-simulated by ``q`` (``p`` is the smaller process)."""
    _require_plain(p, q, sig)
    return lts_simulates(build_lts(p, sig), build_lts(q, sig))


def cc_equivalent(p: Term, q: Term, sig: Signature) -> bool:
    return simulates(p, q, sig) and simulates(q, p, sig)


def simulation_witness(p: Term, q: Term, sig: Signature):
    """The greatest simulation restricted to pairs reachable from ``(p, q)``, or None."""
    _require_plain(p, q, sig)
    left, right = build_lts(p, sig), build_lts(q, sig)
    start = (left.initial, right.initial)
    rel = greatest_simulation(left, right, sig.covariant, sig.contravariant, start)
    if start not in rel:
        return None
    actions = sig.actions
    ls, rs = left.successors, right.successors
    kept = {start}
    todo = [start]
    while todo:
        s, t = todo.pop()
        for a in actions:
            for s2 in ls[s].get(a, _EMPTY):
                for t2 in rs[t].get(a, _EMPTY):
                    if (s2, t2) in rel and (s2, t2) not in kept:
                        kept.add((s2, t2))
                        todo.append((s2, t2))
    return SimulationRelation(frozenset(kept), left, right)
