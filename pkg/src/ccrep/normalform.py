"""Normal forms of cc-modal formulae.

A *unary strong normal form* is ``tt`` or a conjunction of diamonds over
covariant actions (bodies again unary) with exactly one box per contravariant
action whose body is a disjunction of unary forms.  A *strong normal form* is a
disjunction of unary ones; the empty disjunction is ``ff``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .errors import CCError, SignatureMismatch, SnfExplosion
from .syntax import (
    BOT,
    TOP,
    And,
    Bot,
    Box,
    Diamond,
    Formula,
    Or,
    Signature,
    Top,
    canonical_formula,
    check_formula,
    conj,
    disj,
    print_formula,
)

DEFAULT_MAX_DISJUNCTS = 100_000


@dataclass(frozen=True)
class SnfTop:
    def __str__(self):
        return "tt"


SNF_TOP = SnfTop()


@dataclass(frozen=True)
class UnarySnf:
    """``diamonds``: sorted ``(action, unary)`` pairs.  ``boxes``: ``(b, disjuncts)``
    for every contravariant ``b``, sorted by action; empty disjuncts encode ``[b]ff``
    and ``(SNF_TOP,)`` encodes ``[b]tt``.
    """

    diamonds: tuple
    boxes: tuple

    def __str__(self):
        return print_formula(unary_to_formula(self))


@dataclass(frozen=True)
class StrongNormalForm:
    disjuncts: tuple

    def to_formula(self) -> Formula:
        return canonical_formula(disj(unary_to_formula(u) for u in self.disjuncts))

    def __str__(self):
        return print_formula(self.to_formula())


@lru_cache(maxsize=1 << 16)
def unary_to_formula(u) -> Formula:
    if isinstance(u, SnfTop):
        return TOP
    parts = [Diamond(a, unary_to_formula(v)) for a, v in u.diamonds]
    parts += [Box(b, disj(unary_to_formula(v) for v in body)) for b, body in u.boxes]
    return canonical_formula(conj(parts))


@lru_cache(maxsize=1 << 16)
def unary_key(u) -> str:
    return print_formula(unary_to_formula(u))


def _disjuncts(items) -> tuple:
    """Deduplicated, canonically sorted disjunct set; ``tt`` absorbs everything."""
    items = set(items)
    if SNF_TOP in items:
        return (SNF_TOP,)
    return tuple(sorted(items, key=unary_key))


def _make(diamonds, boxes):
    diamonds = tuple(sorted(set(diamonds), key=lambda d: (d[0], unary_key(d[1]))))
    boxes = tuple(sorted(boxes))
    if not diamonds and all(body == (SNF_TOP,) for _, body in boxes):
        return SNF_TOP
    return UnarySnf(diamonds, boxes)


def unary_depth(u) -> int:
    if isinstance(u, SnfTop):
        return 0
    depths = [1 + unary_depth(v) for _, v in u.diamonds]
    depths += [1 + max((unary_depth(v) for v in body), default=0) for _, body in u.boxes]
    return max(depths, default=0)


class _Normalizer:
    def __init__(self, sig: Signature, limit: int):
        self.contra = tuple(sorted(sig.contravariant))
        self.limit = limit
        self.memo = {}

    def guard(self, items):
        if len(items) > self.limit:
            raise SnfExplosion(self.limit)
        return items

    def box_only(self, b, body):
        boxes = [(c, body if c == b else (SNF_TOP,)) for c in self.contra]
        return _make((), boxes)

    def meet(self, u, v):
        """Conjunction of two unary forms, again unary (never inconsistent)."""
        if isinstance(u, SnfTop):
            return v
        if isinstance(v, SnfTop):
            return u
        key = (u, v)
        if key in self.memo:
            return self.memo[key]
        vb = dict(v.boxes)
        boxes = []
        for b, body in u.boxes:
            other = vb[b]
            if body == (SNF_TOP,):
                merged = other
            elif other == (SNF_TOP,):
                merged = body
            else:
                merged = self.guard(_disjuncts(self.meet(x, y) for x in body for y in other))
            boxes.append((b, merged))
        result = _make(u.diamonds + v.diamonds, boxes)
        self.memo[key] = result
        return result

    def normalize(self, f) -> tuple:
        if isinstance(f, Top):
            return (SNF_TOP,)
        if isinstance(f, Bot):
            return ()
        if isinstance(f, Or):
            out = []
            for c in f.children:
                out.extend(self.normalize(c))
            return self.guard(_disjuncts(out))
        if isinstance(f, And):
            options = [self.normalize(c) for c in f.children]
            acc = (SNF_TOP,)
            for opt in options:
                acc = self.guard(_disjuncts(self.meet(x, y) for x, y in product(acc, opt)))
                if not acc:
                    break
            return acc
        if isinstance(f, Diamond):
            # <a>(x | y) = <a>x | <a>y, and <a>ff = ff
            all_top = [(b, (SNF_TOP,)) for b in self.contra]
            return _disjuncts(_make(((f.action, u),), all_top) for u in self.normalize(f.body))
        body = self.normalize(f.body)
        if body == (SNF_TOP,):
            return (SNF_TOP,)
        return (self.box_only(f.action, body),)


def _limit_from_env() -> int:
    raw = os.environ.get("CCREP_MAX_SNF_DISJUNCTS")
    return int(raw) if raw else DEFAULT_MAX_DISJUNCTS


def _require_plain(f: Formula, sig: Signature) -> None:
    if not sig.is_bivariant_free:
        raise SignatureMismatch("normal forms need a bivariant-free signature")
    try:
        check_formula(f, sig)
    except CCError as exc:
        raise SignatureMismatch(str(exc)) from None


def to_strong_normal_form(f: Formula, sig: Signature, max_disjuncts: int | None = None) -> StrongNormalForm:
    """Equivalent disjunction of unary strong normal forms of no larger modal depth.

    Boxes missing for some contravariant action are completed with ``[b]tt``.
    Raises :class:`SnfExplosion` once any disjunct set grows past
    ``max_disjuncts`` (default: ``CCREP_MAX_SNF_DISJUNCTS`` or 100000).
    """
    _require_plain(f, sig)
    limit = _limit_from_env() if max_disjuncts is None else max_disjuncts
    return StrongNormalForm(_Normalizer(sig, limit).normalize(f))


def snf_stats(snf: StrongNormalForm) -> dict:
    """Disjunct count, modal depth and number of ``[b]tt`` boxes in the form."""
    completed = 0
    seen = set()

    def walk(u):
        nonlocal completed
        if isinstance(u, SnfTop) or u in seen:
            return
        seen.add(u)
        for _, v in u.diamonds:
            walk(v)
        for _, body in u.boxes:
            if body == (SNF_TOP,):
                completed += 1
            for v in body:
                walk(v)

    for u in snf.disjuncts:
        walk(u)
    return {
        "disjuncts": len(snf.disjuncts),
        "depth": max((unary_depth(u) for u in snf.disjuncts), default=0),
        "completed_boxes": completed,
    }


# --------------------------------------------------------------------------
# recognising the shapes on plain formulae


def _conjuncts(f):
    if isinstance(f, Top):
        return []
    if isinstance(f, And):
        return list(f.children)
    return [f]


def _disjunct_list(f):
    if isinstance(f, Bot):
        return []
    if isinstance(f, Or):
        return list(f.children)
    return [f]


def is_unary_snf(f: Formula, sig: Signature) -> bool:
    if isinstance(f, Top) or (isinstance(f, And) and not f.children):
        return True
    boxed = []
    for c in _conjuncts(f):
        if isinstance(c, Diamond):
            if c.action not in sig.covariant or not is_unary_snf(c.body, sig):
                return False
        elif isinstance(c, Box):
            if c.action not in sig.contravariant:
                return False
            if not all(is_unary_snf(d, sig) for d in _disjunct_list(c.body)):
                return False
            boxed.append(c.action)
        else:
            return False
    return sorted(boxed) == sorted(sig.contravariant)


def is_strong_normal_form(f: Formula, sig: Signature) -> bool:
    return all(is_unary_snf(d, sig) for d in _disjunct_list(f))


def formula_to_unary(f: Formula, sig: Signature):
    """Read a formula already in unary strong normal form as a :class:`UnarySnf`."""
    if not is_unary_snf(f, sig):
        raise ValueError(f"not in unary strong normal form: {print_formula(f)}")
    return _read_unary(f, sig)


def _read_unary(f, sig):
    if isinstance(f, Top) or (isinstance(f, And) and not f.children):
        return SNF_TOP
    diamonds, boxes = [], []
    for c in _conjuncts(f):
        if isinstance(c, Diamond):
            diamonds.append((c.action, _read_unary(c.body, sig)))
        else:
            boxes.append((c.action, _disjuncts(_read_unary(d, sig) for d in _disjunct_list(c.body))))
    return _make(diamonds, boxes)


# --------------------------------------------------------------------------
# rewriting with the basic equalities


def simplify(f: Formula) -> Formula:
    """Rewrite to a fixed point with the unit/annihilator laws, ``[b]tt = tt``,
    ``[b]x & [b]y = [b](x & y)``, ``<a>(x | y) = <a>x | <a>y``, ``<a>ff = ff``
    and flattening/deduplication of conjunctions and disjunctions.
    """
    while True:
        g = canonical_formula(_simplify(f))
        if g == f:
            return g
        f = g


def _dedup(children):
    seen = {}
    for c in children:
        seen.setdefault(print_formula(c), c)
    return list(seen.values())


def _simplify(f):
    if isinstance(f, Diamond):
        body = _simplify(f.body)
        if isinstance(body, Bot):
            return BOT
        if isinstance(body, Or):
            return disj(Diamond(f.action, c) for c in body.children)
        return Diamond(f.action, body)
    if isinstance(f, Box):
        body = _simplify(f.body)
        if isinstance(body, Top):
            return TOP
        return Box(f.action, body)
    if isinstance(f, And):
        children = _flat(And, [_simplify(c) for c in f.children])
        if any(isinstance(c, Bot) for c in children):
            return BOT
        children = [c for c in children if not isinstance(c, Top)]
        boxes = {}
        rest = []
        for c in children:
            if isinstance(c, Box):
                boxes.setdefault(c.action, []).append(c.body)
            else:
                rest.append(c)
        for b, bodies in sorted(boxes.items()):
            rest.append(Box(b, conj(_dedup(bodies))))
        return conj(_dedup(rest))
    if isinstance(f, Or):
        children = _flat(Or, [_simplify(c) for c in f.children])
        if any(isinstance(c, Top) for c in children):
            return TOP
        return disj(_dedup(c for c in children if not isinstance(c, Bot)))
    return f


def _flat(kind, children):
    out = []
    for c in children:
        if isinstance(c, kind):
            out.extend(c.children)
        elif kind is And and isinstance(c, Or) and not c.children:
            out.append(BOT)
        elif kind is Or and isinstance(c, And) and not c.children:
            out.append(TOP)
        else:
            out.append(c)
    return out

