"""Graphical representation of formulae by finite sets of processes.

Every formula is equivalent to a disjunction of unary strong normal forms; each
of those is the characteristic formula of the process ``theta(u)``.  The models
of a formula are therefore exactly the processes lying cc-above one of the
``theta`` images, and satisfaction, consistency, primality and entailment all
reduce to that finite set.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CCError, SignatureMismatch
from .logic import satisfies
from .normalform import SnfTop, to_strong_normal_form
from .simulation import simulates
from .syntax import OMEGA, Formula, Prefix, Signature, Term, canonical_term, check_formula, choice, print_term


def theta(u, sig: Signature) -> Term:
    """The process represented by a unary strong normal form.

    ``theta(tt) = w``; otherwise one ``a.theta(phi)`` per diamond and one
    ``b.theta(psi)`` per disjunct of each box body.  Boxes with empty bodies
    contribute nothing; the empty sum is ``0``.
    """
    if isinstance(u, SnfTop):
        return OMEGA
    parts = [Prefix(a, theta(v, sig)) for a, v in u.diamonds]
    for b, body in u.boxes:
        parts.extend(Prefix(b, theta(v, sig)) for v in body)
    return canonical_term(choice(sorted(parts, key=print_term)))


@dataclass(frozen=True)
class RepresentationSet:
    """A cc-antichain whose upward closure is the model class of a formula.

    ``members`` keeps the order of the normal-form disjuncts it came from;
    ``unreduced`` holds every ``theta`` image before minimisation.
    """

    members: tuple
    unreduced: tuple = ()

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __str__(self):
        return "{" + ", ".join(print_term(p) for p in self.members) + "}"


def _require_plain(fs, sig: Signature) -> None:
    if not sig.is_bivariant_free:
        raise SignatureMismatch("graphical representation needs a bivariant-free signature")
    for f in fs:
        try:
            check_formula(f, sig)
        except CCError as exc:
            raise SignatureMismatch(str(exc)) from None


def minimal_antichain(terms, sig: Signature) -> tuple:
    """Drop every term cc-above another kept term; among equivalent terms the
    earliest in ``terms`` survives."""
    kept = []
    for q in terms:
        if any(simulates(p, q, sig) for p in kept):
            continue
        kept = [r for r in kept if not simulates(q, r, sig)]
        kept.append(q)
    return tuple(kept)


def represent(f: Formula, sig: Signature, max_disjuncts: int | None = None) -> RepresentationSet:
    _require_plain([f], sig)
    snf = to_strong_normal_form(f, sig, max_disjuncts)
    images = []
    seen = set()
    for u in snf.disjuncts:
        p = theta(u, sig)
        if p not in seen:
            seen.add(p)
            images.append(p)
    return RepresentationSet(minimal_antichain(images, sig), tuple(images))


def is_consistent(f: Formula, sig: Signature, max_disjuncts: int | None = None) -> bool:
    return len(represent(f, sig, max_disjuncts)) > 0


def consistency_witness(f: Formula, sig: Signature, max_disjuncts: int | None = None):
    """A model of ``f`` (the first representative), or None when ``f`` has none."""
    rep = represent(f, sig, max_disjuncts)
    return rep.members[0] if rep.members else None


def is_prime(f: Formula, sig: Signature, max_disjuncts: int | None = None) -> bool:
    """Whether one ``theta`` image of the normal form lies below all the others.

    ``ff`` has no images and counts as (vacuously) prime.
    """
    images = represent(f, sig, max_disjuncts).unreduced
    return not images or any(all(simulates(p, q, sig) for q in images) for p in images)


def entailment_counterexample(f: Formula, g: Formula, sig: Signature, max_disjuncts: int | None = None):
    """A model of ``f`` that fails ``g``, or None when ``f`` entails ``g``.

    Checking the representatives of ``f`` suffices: every model of ``f`` lies
    cc-above one of them, and satisfaction is preserved upwards.
    """
    _require_plain([f, g], sig)
    for p in represent(f, sig, max_disjuncts):
        if not satisfies(p, g, sig):
            return p
    return None


def entails(f: Formula, g: Formula, sig: Signature, max_disjuncts: int | None = None) -> bool:
    return entailment_counterexample(f, g, sig, max_disjuncts) is None


def equivalent(f: Formula, g: Formula, sig: Signature, max_disjuncts: int | None = None) -> bool:
    return entails(f, g, sig, max_disjuncts) and entails(g, f, sig, max_disjuncts)
