from monomorse import corpus
from monomorse.golod import (GOLOD, NOT_GOLOD, UNDETERMINED, degree_bound_checks,
                             gcd_condition, gcd_condition_witness, golod_verdict,
                             is_strong_gcd_order, lex_order, strong_gcd_condition)
from monomorse.monomial import MonomialIdeal
from monomorse.oracles import koszul_homology


def test_gcd_conditions_on_5gon():
    a = corpus.ideal("5gon")
    assert gcd_condition(a)
    assert strong_gcd_condition(a).status == "none"


def test_gcd_witness():
    a = MonomialIdeal.from_monomials([(1, 1, 0, 0), (0, 0, 1, 1)], 4)
    assert gcd_condition_witness(a) == (0, 1)


def test_lex_order_witnesses_stable_ideals():
    for name in ("sqfree_stable4", "sqfree_stable5", "sqfree_stable_cubic", "triangle"):
        a = corpus.ideal(name)
        assert is_strong_gcd_order(a, lex_order(a))


def test_strong_gcd_cap():
    a = corpus.ideal("k4")
    assert strong_gcd_condition(a, cap=3).status == "undetermined"


def test_degree_bounds_for_5gon():
    a = corpus.ideal("5gon")
    d = degree_bound_checks(koszul_homology(a)[0].entries, a)
    assert d["applicable"] and not d["necessary"]


def test_verdicts():
    assert golod_verdict(corpus.ideal("star")).final == GOLOD
    assert golod_verdict(corpus.ideal("ci2")).final == NOT_GOLOD
    rep = golod_verdict(corpus.ideal("5gon"))
    assert rep.final == NOT_GOLOD
    assert "nontrivial Koszul product" in rep.provenance
    assert rep.proved_class == "generated in degree two"


def test_linear_generator_skips_series():
    a = MonomialIdeal.from_monomials([(1, 0, 0), (0, 1, 1)], 3)
    rep = golod_verdict(a)
    assert rep.series is None
    assert rep.final in (GOLOD, NOT_GOLOD, UNDETERMINED)


def test_report_serializes():
    d = golod_verdict(corpus.ideal("5gon")).to_dict()
    assert d["final"] == NOT_GOLOD
    assert d["product_trivial"]["witness"]["left"]["i"] >= 1
