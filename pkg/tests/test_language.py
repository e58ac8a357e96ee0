import pytest

from monomorse import corpus
from monomorse.language import (LanguageBoundError, WordLanguageSpec, enumerate_language,
                                full_language, r_monomials, words_from)
from monomorse.monomial import MonomialIdeal
from monomorse.taylor import PreconditionError


def single():
    return MonomialIdeal.from_monomials([(1, 1)], 2)


def test_single_edge_words():
    # L_1 = {x1 x2}; the full language is (x1 x2)^k
    assert words_from(single(), 0, 6) == [(0, 1)]
    assert full_language(single(), 6) == [(), (0, 1), (0, 1, 0, 1), (0, 1, 0, 1, 0, 1)]


def test_triangle_l1():
    words = words_from(corpus.ideal("triangle"), 0, 3)
    assert sorted(words) == [(0, 1), (0, 1, 2), (0, 2), (0, 2, 1)]


@pytest.mark.parametrize("name", ["triangle", "path4", "5gon", "square", "k4"])
def test_words_count_monomials_of_R(name):
    a = corpus.ideal(name)
    assert enumerate_language(WordLanguageSpec(a, None, 5)) == r_monomials(a, 5)


def test_precondition():
    with pytest.raises(PreconditionError):
        words_from(corpus.ideal("generic3"), 0, 3)


def test_negative_length():
    with pytest.raises(LanguageBoundError):
        WordLanguageSpec(single(), None, -1)
