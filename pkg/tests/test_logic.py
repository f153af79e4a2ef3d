import pytest
from hypothesis import given

from ccrep.errors import SignatureMismatch
from ccrep.logic import enumerate_formulae, enumerate_terms, explain, satisfies, satisfying_states
from ccrep.lts import build_lts_many, transitions
from ccrep.simulation import simulates
from ccrep.syntax import (
    BOT,
    OMEGA,
    TOP,
    And,
    Bot,
    Box,
    Diamond,
    Or,
    Signature,
    Top,
    parse_formula,
    parse_term,
    print_term,
)
from helpers import SIG, SIG2, formula_strategy, term_strategy


def naive_sat(p, f, sig):
    """Direct recursion on the term's transitions, no transition system built."""
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    if isinstance(f, And):
        return all(naive_sat(p, c, sig) for c in f.children)
    if isinstance(f, Or):
        return any(naive_sat(p, c, sig) for c in f.children)
    succ = [q for a, q in transitions(p, sig) if a == f.action]
    if isinstance(f, Diamond):
        return any(naive_sat(q, f.body, sig) for q in succ)
    return all(naive_sat(q, f.body, sig) for q in succ)


@pytest.mark.parametrize(
    "p, f, expected",
    [
        ("0", "[b]ff", True),
        ("w", "[b]ff", False),
        ("a.0", "<a>tt", True),
        ("w", "<a>tt", False),
        ("w", "[b][b][b]tt", True),
        ("b.0 + b.a.0", "[b]<a>tt", False),
        ("b.0 + b.a.0", "[b]<a>tt | [b][b]ff", True),
    ],
)
def test_examples(p, f, expected):
    assert satisfies(parse_term(p, SIG), parse_formula(f, SIG), SIG) is expected


def test_signature_errors():
    with pytest.raises(SignatureMismatch):
        satisfies(parse_term("c.0", SIG2), TOP, SIG)


def test_explain_lists_the_evaluation_tree():
    lines = explain(parse_term("b.0", SIG), parse_formula("[b]<a>tt", SIG), SIG)
    assert lines == ["b.0 |= [b]<a>tt : false", "  0 |= <a>tt : false"]


def test_enumeration_examples():
    assert enumerate_terms(SIG, 0, 1) == [parse_term("0", SIG), OMEGA]
    listing = [print_term(t) for t in enumerate_terms(Signature({"a"}), 1, 1)]
    assert listing == ["0", "w", "a.0", "a.w"]
    assert enumerate_formulae(SIG, 0, 1) == [BOT, TOP]
    level1 = enumerate_formulae(SIG, 1, 1)
    assert Diamond("a", TOP) in level1 and Box("b", BOT) in level1
    assert enumerate_terms(SIG, 3, 0) == []


@pytest.mark.parametrize("d, w, count", [(0, 1, 2), (1, 1, 6), (1, 2, 36), (3, 1, 30)])
def test_enumerations_are_duplicate_free(d, w, count):
    terms = enumerate_terms(SIG, d, w)
    assert len(terms) == len(set(terms)) == count
    formulae = enumerate_formulae(SIG, d, w)
    assert len(formulae) == len(set(formulae))


def test_enumeration_rejects_negative_bounds():
    with pytest.raises(ValueError):
        enumerate_terms(SIG, -1, 1)


@given(term_strategy(SIG2), formula_strategy(SIG2))
def test_agrees_with_direct_recursion(p, f):
    assert satisfies(p, f, SIG2) == naive_sat(p, f, SIG2)


@given(term_strategy(SIG, max_leaves=5), term_strategy(SIG, max_leaves=5), formula_strategy(SIG))
def test_satisfaction_is_upward_closed(p, q, f):
    if simulates(p, q, SIG) and satisfies(p, f, SIG):
        assert satisfies(q, f, SIG)


def test_logic_characterizes_the_preorder_on_small_terms():
    # p <=cc q iff every formula true at p is true at q; the formula side is
    # checked by exhaustive search over modal depth 2, width 2
    terms = enumerate_terms(SIG, 1, 2)
    lts = build_lts_many(terms, SIG)
    names = [print_term(t) for t in terms]
    extents = {satisfying_states(lts, f) & set(names) for f in enumerate_formulae(SIG, 2, 2)}
    for p, pn in zip(terms, names):
        for q, qn in zip(terms, names):
            distinguished = any(pn in ext and qn not in ext for ext in extents)
            assert simulates(p, q, SIG) == (not distinguished), (pn, qn)
