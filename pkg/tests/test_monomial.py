import pytest
from hypothesis import given, settings, strategies as st

from monomorse.monomial import (GeneratorOverflow, IdealError, MonomialIdeal, bits, divides,
                                mono_lcm, mono_str, polarize)

mono3 = st.tuples(*[st.integers(0, 3)] * 3).filter(any)


def test_minimalize_drops_multiples_and_duplicates():
    a = MonomialIdeal.from_monomials([(1, 1, 0), (2, 1, 0), (1, 1, 0), (0, 0, 1)], 3)
    assert set(a.gens) == {(1, 1, 0), (0, 0, 1)}
    assert a.l == 2


def test_constructor_rejects_bad_input():
    with pytest.raises(IdealError):
        MonomialIdeal(2, ((1, 0), (1, 1)))
    with pytest.raises(IdealError):
        MonomialIdeal(2, ((0, 0),))
    with pytest.raises(IdealError):
        MonomialIdeal(2, ((1, -1),))
    with pytest.raises(GeneratorOverflow):
        MonomialIdeal.from_monomials([(i, 9 - i) for i in range(10)], 2, max_generators=5)


def test_lcm_and_components():
    a = MonomialIdeal.from_monomials([(1, 1, 0, 0), (0, 1, 1, 0), (0, 0, 0, 2)], 4,
                                     keep_order=True)
    assert a.lcm(0b011) == (1, 1, 1, 0)
    assert a.cl(0b011) == 1
    assert a.cl(0b101) == 2
    assert a.cl(0b111) == 2
    assert mono_str(a.lcm(0b111)) == "x1*x2*x3*x4^2"


def test_polarize_is_squarefree_and_keeps_shape():
    a = MonomialIdeal.from_monomials([(2, 0), (1, 3)], 2, keep_order=True)
    b, varmap = polarize(a)
    assert b.is_squarefree()
    assert b.n == 2 + 3 and len(varmap) == 5
    assert [sum(g) for g in b.gens] == [sum(g) for g in a.gens]


def test_bits():
    assert bits(0b10110) == [1, 2, 4]


@settings(max_examples=60, deadline=None)
@given(st.lists(mono3, min_size=1, max_size=7), mono3)
def test_membership_survives_minimalization(raw, probe):
    a = MonomialIdeal.from_monomials(raw, 3)
    assert a.contains(probe) == any(divides(g, probe) for g in raw)
    for g in a.gens:
        assert not any(h != g and divides(h, g) for h in a.gens)


@settings(max_examples=60, deadline=None)
@given(mono3, mono3)
def test_lcm_is_least_common_multiple(x, y):
    m = mono_lcm(x, y)
    assert divides(x, m) and divides(y, m)
    assert all(e in (p, q) for e, p, q in zip(m, x, y))
