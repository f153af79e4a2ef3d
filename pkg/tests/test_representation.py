import pytest
from hypothesis import given
from hypothesis import strategies as st

from ccrep.characteristic import char_formula
from ccrep.errors import SignatureMismatch
from ccrep.logic import satisfies
from ccrep.normalform import SNF_TOP, UnarySnf, to_strong_normal_form, unary_to_formula
from ccrep.representation import (
    consistency_witness,
    entails,
    entailment_counterexample,
    equivalent,
    is_consistent,
    is_prime,
    minimal_antichain,
    represent,
    theta,
)
from ccrep.simulation import cc_equivalent, simulates
from ccrep.syntax import BOT, OMEGA, TOP, disj, parse_formula, parse_term, print_term
from helpers import BISIG, SIG, SIG2, formula_strategy, term_strategy


def F(text, sig=SIG):
    return parse_formula(text, sig)


def test_theta_examples():
    assert theta(SNF_TOP, SIG) == OMEGA
    (u,) = to_strong_normal_form(F("<a>tt & [b]ff"), SIG).disjuncts
    assert print_term(theta(u, SIG)) == "a.w"
    assert print_term(theta(UnarySnf((), (("b", (SNF_TOP,)),)), SIG)) == "b.w"


@pytest.mark.parametrize(
    "f, members",
    [
        ("ff", "{}"),
        ("tt", "{w}"),
        ("<a>tt | [b]ff", "{a.w + b.w, 0}"),
        ("<a>tt", "{a.w + b.w}"),
        ("<a>ff", "{}"),
    ],
)
def test_represent_examples(f, members):
    assert str(represent(F(f), SIG)) == members


def test_consistency_examples():
    assert not is_consistent(BOT, SIG)
    assert not is_consistent(F("<a>ff"), SIG)
    assert is_consistent(F("<a>tt & [b]ff"), SIG)
    assert print_term(consistency_witness(F("<a>tt & [b]ff"), SIG)) == "a.w"
    assert consistency_witness(BOT, SIG) is None


def test_prime_examples():
    assert is_prime(BOT, SIG)
    assert is_prime(F("<a>tt"), SIG)
    assert not is_prime(F("<a>tt | [b]ff"), SIG)
    # a disjunction whose disjuncts are comparable is prime
    assert is_prime(F("<a>tt | <a>tt & [b]ff"), SIG)


def test_entailment_examples():
    g = F("[b]<a>tt")
    assert entails(BOT, g, SIG)
    assert entails(g, TOP, SIG)
    assert entails(F("<a>[b]ff"), F("<a>tt"), SIG)
    assert equivalent(F("[b]tt"), TOP, SIG)
    assert not equivalent(F("<a>tt"), F("[b]ff"), SIG)
    assert print_term(entailment_counterexample(F("<a>tt"), F("[b]ff"), SIG)) == "a.w + b.w"


def test_bivariant_signature_is_rejected():
    with pytest.raises(SignatureMismatch):
        represent(TOP, BISIG)


def test_minimal_antichain_keeps_the_first_of_equivalent_terms():
    ts = [parse_term(t, SIG) for t in ("a.0 + a.0", "a.0", "a.a.0 + b.0", "w")]
    assert minimal_antichain(ts, SIG) == (OMEGA,)
    assert minimal_antichain(ts[:3], SIG) == (ts[0], ts[2])


def _antichain(rep, sig):
    ms = rep.members
    return all(not simulates(p, q, sig) for i, p in enumerate(ms) for j, q in enumerate(ms) if i != j)


@given(formula_strategy(SIG2), term_strategy(SIG2, max_leaves=5))
def test_representation_contract(f, q):
    rep = represent(f, SIG2)
    assert _antichain(rep, SIG2)
    assert all(satisfies(p, f, SIG2) for p in rep)
    assert satisfies(q, f, SIG2) == any(simulates(p, q, SIG2) for p in rep)


@given(formula_strategy(SIG2), term_strategy(SIG2, max_leaves=5))
def test_theta_is_characterized_by_its_form(f, q):
    for u in to_strong_normal_form(f, SIG2).disjuncts:
        p = theta(u, SIG2)
        g = unary_to_formula(u)
        assert satisfies(p, g, SIG2)
        assert satisfies(q, g, SIG2) == simulates(p, q, SIG2)
        assert equivalent(char_formula(p, SIG2), g, SIG2)


@given(term_strategy(SIG2))
def test_theta_inverts_characteristic_formulae(p):
    (u,) = to_strong_normal_form(char_formula(p, SIG2), SIG2).disjuncts
    assert cc_equivalent(theta(u, SIG2), p, SIG2)


@given(formula_strategy(SIG2))
def test_normal_form_is_equivalent(f):
    assert equivalent(f, to_strong_normal_form(f, SIG2).to_formula(), SIG2)


@given(formula_strategy(SIG2))
def test_prime_and_consistent_iff_single_process(f):
    single = len(represent(f, SIG2)) == 1
    assert (is_prime(f, SIG2) and is_consistent(f, SIG2)) == single


@given(st.lists(formula_strategy(SIG, max_leaves=4), min_size=3, max_size=3))
def test_prime_formulae_entail_a_disjunct(fs):
    f, g1, g2 = fs
    if is_prime(f, SIG) and entails(f, disj([g1, g2]), SIG):
        assert entails(f, g1, SIG) or entails(f, g2, SIG)
