import random

from monomorse import corpus


def test_corpus_loads():
    ideals = corpus.ideals()
    assert {"5gon", "triangle", "ci2", "x2"} <= set(ideals)
    assert corpus.posets()


def test_predicates():
    assert corpus.is_degree_two(corpus.ideal("5gon"))
    assert corpus.is_taylor_minimal(corpus.ideal("ci2"))
    assert not corpus.is_taylor_minimal(corpus.ideal("triangle"))


def test_random_ideals_respect_ranges():
    rng = random.Random(0)
    for _ in range(50):
        a = corpus.random_ideal(rng, n_range=(2, 4), l_range=(2, 6))
        assert 2 <= a.n <= 4 and a.l <= 6
