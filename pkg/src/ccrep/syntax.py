"""Signatures, process terms and cc-modal formulae.

All values are immutable trees.  Terms follow the grammar::

    T ::= '0' | 'w' | ident '.' T | T '+' T | '(' T ')'

and formulae::

    F ::= 'tt' | 'ff' | '<' ident '>' F | '[' ident ']' F | F '&' F | F '|' F | '(' F ')'

Printing is canonical: summands, conjuncts and disjuncts are emitted sorted by
their printed text, so ``parse(print(t)) == canonical(t)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Union

from .errors import DuplicateAction, ModalityMismatch, ParseError, UnknownAction

RESERVED = frozenset({"0", "w", "tt", "ff"})
_NAME = re.compile(r"[A-Za-z0-9_]+\Z")
# generated names of the split signatures: c^r, c^l
_DERIVED_NAME = re.compile(r"[A-Za-z0-9_]+\^[rl]\Z")


def _check_name(name: str, derived_ok: bool = True) -> None:
    if name in RESERVED:
        raise ValueError(f"{name!r} is a reserved word")
    if _NAME.match(name):
        return
    if derived_ok and _DERIVED_NAME.match(name):
        return
    raise ValueError(f"invalid action name {name!r}")


@dataclass(frozen=True)
class Signature:
    """Partition of a finite action set into covariant, contravariant and bivariant actions."""

    covariant: frozenset = frozenset()
    contravariant: frozenset = frozenset()
    bivariant: frozenset = frozenset()

    def __post_init__(self):
        for field in ("covariant", "contravariant", "bivariant"):
            object.__setattr__(self, field, frozenset(getattr(self, field)))
        for name in self.actions:
            _check_name(name)
        classes = (self.covariant, self.contravariant, self.bivariant)
        for i, first in enumerate(classes):
            for second in classes[i + 1:]:
                common = first & second
                if common:
                    raise DuplicateAction(min(common))

    @property
    def actions(self) -> frozenset:
        return self.covariant | self.contravariant | self.bivariant

    @property
    def diamond_actions(self) -> frozenset:
        """Actions allowed under ``<.>`` (and checked left-to-right by simulation)."""
        return self.covariant | self.bivariant

    @property
    def box_actions(self) -> frozenset:
        """Actions allowed under ``[.]`` (and checked right-to-left by simulation)."""
        return self.contravariant | self.bivariant

    @property
    def is_bivariant_free(self) -> bool:
        return not self.bivariant

    def __str__(self):
        lines = [
            "r: " + " ".join(sorted(self.covariant)),
            "l: " + " ".join(sorted(self.contravariant)),
        ]
        if self.bivariant:
            lines.append("bi: " + " ".join(sorted(self.bivariant)))
        return "\n".join(line.rstrip() for line in lines)


# --------------------------------------------------------------------------
# process terms


@dataclass(frozen=True)
class Nil:
    def __str__(self):
        return "0"


@dataclass(frozen=True)
class Omega:
    def __str__(self):
        return "w"


@dataclass(frozen=True)
class Prefix:
    action: str
    body: "Term"

    def __str__(self):
        return print_term(self)


@dataclass(frozen=True)
class Choice:
    left: "Term"
    right: "Term"

    def __str__(self):
        return print_term(self)


Term = Union[Nil, Omega, Prefix, Choice]

NIL = Nil()
OMEGA = Omega()


def summands(p: Term) -> list:
    """Flatten nested choices into the list of their summands."""
    out = []
    stack = [p]
    while stack:
        q = stack.pop()
        if isinstance(q, Choice):
            stack.append(q.right)
            stack.append(q.left)
        else:
            out.append(q)
    return out


def choice(terms: Iterable[Term]) -> Term:
    """Left-associated sum of ``terms``; the empty sum is ``0``."""
    result = None
    for t in terms:
        result = t if result is None else Choice(result, t)
    return NIL if result is None else result


def term_actions(p: Term) -> set:
    found = set()
    stack = [p]
    while stack:
        q = stack.pop()
        if isinstance(q, Prefix):
            found.add(q.action)
            stack.append(q.body)
        elif isinstance(q, Choice):
            stack.extend((q.left, q.right))
    return found


def contains_omega(p: Term) -> bool:
    if isinstance(p, Omega):
        return True
    if isinstance(p, Prefix):
        return contains_omega(p.body)
    if isinstance(p, Choice):
        return contains_omega(p.left) or contains_omega(p.right)
    return False


def term_size(p: Term) -> int:
    """Length in symbols: ``0``, ``w``, ``+`` and each ``a.`` count once."""
    if isinstance(p, (Nil, Omega)):
        return 1
    if isinstance(p, Prefix):
        return 1 + term_size(p.body)
    return 1 + term_size(p.left) + term_size(p.right)


def prefix_depth(p: Term) -> int:
    if isinstance(p, Prefix):
        return 1 + prefix_depth(p.body)
    if isinstance(p, Choice):
        return max(prefix_depth(p.left), prefix_depth(p.right))
    return 0


# --------------------------------------------------------------------------
# formulae


@dataclass(frozen=True)
class Bot:
    def __str__(self):
        return "ff"


@dataclass(frozen=True)
class Top:
    def __str__(self):
        return "tt"


@dataclass(frozen=True)
class And:
    """n-ary conjunction; ``And(())`` means tt.  Nested conjunctions are flattened."""

    children: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "children", _flatten(And, self.children))

    def __str__(self):
        return print_formula(self)


@dataclass(frozen=True)
class Or:
    """n-ary disjunction; ``Or(())`` means ff.  Nested disjunctions are flattened."""

    children: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "children", _flatten(Or, self.children))

    def __str__(self):
        return print_formula(self)


@dataclass(frozen=True)
class Diamond:
    action: str
    body: "Formula"

    def __str__(self):
        return print_formula(self)


@dataclass(frozen=True)
class Box:
    action: str
    body: "Formula"

    def __str__(self):
        return print_formula(self)


Formula = Union[Bot, Top, And, Or, Diamond, Box]

BOT = Bot()
TOP = Top()


def _flatten(kind, children) -> tuple:
    out = []
    for c in children:
        if isinstance(c, kind):
            out.extend(c.children)
        else:
            out.append(c)
    return tuple(out)


def conj(formulae: Iterable[Formula]) -> Formula:
    """Conjunction collapsing the empty and singleton cases."""
    parts = _flatten(And, formulae)
    if not parts:
        return TOP
    if len(parts) == 1:
        return parts[0]
    return And(parts)


def disj(formulae: Iterable[Formula]) -> Formula:
    """Disjunction collapsing the empty and singleton cases."""
    parts = _flatten(Or, formulae)
    if not parts:
        return BOT
    if len(parts) == 1:
        return parts[0]
    return Or(parts)


def modal_depth(f: Formula) -> int:
    if isinstance(f, (Diamond, Box)):
        return 1 + modal_depth(f.body)
    if isinstance(f, (And, Or)):
        return max((modal_depth(c) for c in f.children), default=0)
    return 0


def formula_actions(f: Formula) -> set:
    if isinstance(f, (Diamond, Box)):
        return {f.action} | formula_actions(f.body)
    if isinstance(f, (And, Or)):
        found = set()
        for c in f.children:
            found |= formula_actions(c)
        return found
    return set()


def formula_size(f: Formula) -> int:
    if isinstance(f, (Diamond, Box)):
        return 1 + formula_size(f.body)
    if isinstance(f, (And, Or)):
        return max(1, sum(formula_size(c) for c in f.children) + len(f.children) - 1)
    return 1


# --------------------------------------------------------------------------
# canonical printing


@lru_cache(maxsize=1 << 16)
def print_term(p: Term) -> str:
    if isinstance(p, Nil):
        return "0"
    if isinstance(p, Omega):
        return "w"
    if isinstance(p, Prefix):
        body = print_term(p.body)
        if isinstance(p.body, Choice):
            body = f"({body})"
        return f"{p.action}.{body}"
    return " + ".join(sorted(print_term(s) for s in summands(p)))


def canonical_term(p: Term) -> Term:
    """The tree that ``parse_term(print_term(p))`` yields."""
    if isinstance(p, Prefix):
        return Prefix(p.action, canonical_term(p.body))
    if isinstance(p, Choice):
        parts = sorted((canonical_term(s) for s in summands(p)), key=print_term)
        return choice(parts)
    return p


def term_key(p: Term) -> tuple:
    """Total order used for deterministic listings: size first, then text."""
    return (term_size(p), print_term(p))


@lru_cache(maxsize=1 << 16)
def print_formula(f: Formula) -> str:
    if isinstance(f, Bot):
        return "ff"
    if isinstance(f, Top):
        return "tt"
    if isinstance(f, Diamond):
        return f"<{f.action}>{_print_modal_body(f.body)}"
    if isinstance(f, Box):
        return f"[{f.action}]{_print_modal_body(f.body)}"
    if isinstance(f, And):
        if not f.children:
            return "tt"
        if len(f.children) == 1:
            return print_formula(f.children[0])
        parts = []
        for c in f.children:
            text = print_formula(c)
            if isinstance(c, Or) and len(c.children) > 1:
                text = f"({text})"
            parts.append(text)
        return " & ".join(sorted(parts))
    if not f.children:
        return "ff"
    return " | ".join(sorted(print_formula(c) for c in f.children))


def _print_modal_body(body: Formula) -> str:
    text = print_formula(body)
    if isinstance(body, (And, Or)) and len(body.children) > 1:
        return f"({text})"
    return text


def canonical_formula(f: Formula) -> Formula:
    """The tree that ``parse_formula(print_formula(f))`` yields."""
    if isinstance(f, Diamond):
        return Diamond(f.action, canonical_formula(f.body))
    if isinstance(f, Box):
        return Box(f.action, canonical_formula(f.body))
    if isinstance(f, (And, Or)):
        parts = [canonical_formula(c) for c in f.children]
        combine = conj if isinstance(f, And) else disj
        collapsed = combine(parts)
        if not isinstance(collapsed, type(f)):
            return collapsed
        return type(f)(tuple(sorted(collapsed.children, key=_child_text(type(f)))))
    return f


def _child_text(kind):
    def key(c):
        text = print_formula(c)
        if kind is And and isinstance(c, Or) and len(c.children) > 1:
            text = f"({text})"
        return text

    return key


# --------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(
    r"""(?P<ws>[ \t\r\n]+)
      | (?P<ident>[A-Za-z0-9_]+(?:\^[rl])?)
      | (?P<sym>[.+()&|<>\[\]])""",
    re.VERBOSE,
)


class _Tokens:
    def __init__(self, text: str):
        self.items = []
        pos, line, col = 0, 1, 1
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                raise ParseError(f"unexpected character {text[pos]!r}", line, col)
            value = m.group()
            if m.lastgroup != "ws":
                self.items.append((value, line, col))
            for ch in value:
                if ch == "\n":
                    line, col = line + 1, 1
                else:
                    col += 1
            pos = m.end()
        self.end = (line, col)
        self.i = 0

    def peek(self):
        return self.items[self.i][0] if self.i < len(self.items) else None

    def where(self):
        if self.i < len(self.items):
            return self.items[self.i][1:]
        return self.end

    def next(self):
        if self.i >= len(self.items):
            raise ParseError("unexpected end of input", *self.end)
        tok = self.items[self.i]
        self.i += 1
        return tok[0]

    def expect(self, value):
        where = self.where()
        tok = self.next() if self.peek() is not None else None
        if tok != value:
            found = "end of input" if tok is None else repr(tok)
            raise ParseError(f"expected {value!r}, found {found}", *where)

    def done(self):
        if self.i < len(self.items):
            raise ParseError(f"unexpected {self.peek()!r}", *self.where())


def _is_ident(tok) -> bool:
    return tok is not None and tok not in RESERVED and _TOKEN.match(tok).lastgroup == "ident"


def parse_signature(text: str) -> Signature:
    """Parse the ``r:`` / ``l:`` / ``bi:`` line format; ``#`` starts a comment."""
    classes = {"r": [], "l": [], "bi": []}
    seen = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise ParseError("expected 'r:', 'l:' or 'bi:'", lineno, 1)
        key = key.strip()
        if key not in classes:
            raise ParseError(f"unknown action class {key!r}", lineno, line.index(key) + 1)
        offset = len(key) + 2
        for m in re.finditer(r"\S+", rest):
            name, col = m.group(), offset + m.start()
            if not _NAME.match(name) or name in RESERVED:
                raise ParseError(f"invalid action name {name!r}", lineno, col)
            if name in seen and seen[name] != key:
                raise DuplicateAction(name)
            seen[name] = key
            classes[key].append(name)
    return Signature(frozenset(classes["r"]), frozenset(classes["l"]), frozenset(classes["bi"]))


def parse_term(text: str, sig: Signature) -> Term:
    toks = _Tokens(text)
    if toks.peek() is None:
        raise ParseError("empty term", *toks.end)
    t = _term_sum(toks, sig)
    toks.done()
    return t


def _term_sum(toks, sig):
    t = _term_unit(toks, sig)
    while toks.peek() == "+":
        toks.next()
        t = Choice(t, _term_unit(toks, sig))
    return t


def _term_unit(toks, sig):
    where = toks.where()
    tok = toks.next()
    if tok == "0":
        return NIL
    if tok == "w":
        return OMEGA
    if tok == "(":
        t = _term_sum(toks, sig)
        toks.expect(")")
        return t
    if _is_ident(tok):
        if tok not in sig.actions:
            raise UnknownAction(tok)
        toks.expect(".")
        return Prefix(tok, _term_unit(toks, sig))
    raise ParseError(f"unexpected {tok!r}", *where)


def parse_formula(text: str, sig: Signature) -> Formula:
    toks = _Tokens(text)
    if toks.peek() is None:
        raise ParseError("empty formula", *toks.end)
    f = _formula_or(toks, sig)
    toks.done()
    return f


def _formula_or(toks, sig):
    parts = [_formula_and(toks, sig)]
    while toks.peek() == "|":
        toks.next()
        parts.append(_formula_and(toks, sig))
    return parts[0] if len(parts) == 1 else Or(tuple(parts))


def _formula_and(toks, sig):
    parts = [_formula_unit(toks, sig)]
    while toks.peek() == "&":
        toks.next()
        parts.append(_formula_unit(toks, sig))
    return parts[0] if len(parts) == 1 else And(tuple(parts))


def _formula_unit(toks, sig):
    where = toks.where()
    tok = toks.next()
    if tok == "tt":
        return TOP
    if tok == "ff":
        return BOT
    if tok == "(":
        f = _formula_or(toks, sig)
        toks.expect(")")
        return f
    if tok in ("<", "["):
        name_at = toks.where()
        name = toks.next()
        if not _is_ident(name):
            raise ParseError(f"expected an action name, found {name!r}", *name_at)
        toks.expect(">" if tok == "<" else "]")
        if name not in sig.actions:
            raise UnknownAction(name)
        if tok == "<":
            if name not in sig.diamond_actions:
                raise ModalityMismatch(name, "<.>")
            return Diamond(name, _formula_unit(toks, sig))
        if name not in sig.box_actions:
            raise ModalityMismatch(name, "[.]")
        return Box(name, _formula_unit(toks, sig))
    raise ParseError(f"unexpected {tok!r}", *where)


# --------------------------------------------------------------------------
# well-formedness against a signature


def check_term(p: Term, sig: Signature) -> None:
    for a in term_actions(p):
        if a not in sig.actions:
            raise UnknownAction(a)


def check_formula(f: Formula, sig: Signature) -> None:
    if isinstance(f, Diamond):
        if f.action not in sig.actions:
            raise UnknownAction(f.action)
        if f.action not in sig.diamond_actions:
            raise ModalityMismatch(f.action, "<.>")
        check_formula(f.body, sig)
    elif isinstance(f, Box):
        if f.action not in sig.actions:
            raise UnknownAction(f.action)
        if f.action not in sig.box_actions:
            raise ModalityMismatch(f.action, "[.]")
        check_formula(f.body, sig)
    elif isinstance(f, (And, Or)):
        for c in f.children:
            check_formula(c, sig)


# --------------------------------------------------------------------------
# structured (JSON-ready) views


def term_to_json(p: Term):
    if isinstance(p, Nil):
        return {"kind": "nil"}
    if isinstance(p, Omega):
        return {"kind": "omega"}
    if isinstance(p, Prefix):
        return {"kind": "prefix", "action": p.action, "body": term_to_json(p.body)}
    return {"kind": "choice", "summands": [term_to_json(s) for s in summands(canonical_term(p))]}


def formula_to_json(f: Formula):
    if isinstance(f, Bot):
        return {"kind": "ff"}
    if isinstance(f, Top):
        return {"kind": "tt"}
    if isinstance(f, Diamond):
        return {"kind": "diamond", "action": f.action, "body": formula_to_json(f.body)}
    if isinstance(f, Box):
        return {"kind": "box", "action": f.action, "body": formula_to_json(f.body)}
    f = canonical_formula(f)
    if not isinstance(f, (And, Or)):
        return formula_to_json(f)
    kind = "and" if isinstance(f, And) else "or"
    return {"kind": kind, "children": [formula_to_json(c) for c in f.children]}
