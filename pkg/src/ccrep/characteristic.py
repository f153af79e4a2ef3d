"""Characteristic formulae of finite process terms."""

from __future__ import annotations

from functools import lru_cache

from .errors import CCError, SignatureMismatch
from .lts import transitions
from .syntax import TOP, Box, Diamond, Formula, Omega, Signature, Term, canonical_formula, canonical_term, check_term, conj, disj, print_formula


def char_formula(p: Term, sig: Signature) -> Formula:
    """The formula satisfied exactly by the processes that cc-simulate ``p``.

    ``chi(w) = tt``; otherwise one ``<a>chi(p')`` per covariant transition and,
    for every contravariant ``b``, ``[b]`` of the disjunction of ``chi(p')`` over
    the ``b``-derivatives (``ff`` when there are none).
    """
    if not sig.is_bivariant_free:
        raise SignatureMismatch("characteristic formulae need a bivariant-free signature")
    try:
        check_term(p, sig)
    except CCError as exc:
        raise SignatureMismatch(str(exc)) from None
    return canonical_formula(_chi(canonical_term(p), sig))


def _unique_sorted(formulae) -> list:
    seen = {}
    for f in formulae:
        seen.setdefault(print_formula(f), f)
    return [seen[k] for k in sorted(seen)]


@lru_cache(maxsize=1 << 14)
def _chi(p: Term, sig: Signature) -> Formula:
    if isinstance(p, Omega):
        return TOP
    moves = transitions(p, sig)
    diamonds = [Diamond(a, _chi(canonical_term(q), sig)) for a, q in moves if a in sig.covariant]
    boxes = []
    for b in sorted(sig.contravariant):
        options = _unique_sorted(_chi(canonical_term(q), sig) for a, q in moves if a == b)
        boxes.append(Box(b, disj(options)))
    return conj(_unique_sorted(diamonds) + boxes)
