from fractions import Fraction

import pytest

from monomorse import corpus
from monomorse.monomial import MonomialIdeal
from monomorse.oracles import koszul_homology, tor_A_kk
from monomorse.series import (MGPoly, NonGradedMatching, SeriesError, SeriesExpansion,
                              conjectured_poincare, golod_series, hilb_R, hilbert_numerator,
                              hilbert_series, koszul_identity_check, standard_monomial_series)
from monomorse.taylor import PreconditionError


def test_poly_arithmetic():
    x = MGPoly.term((1, 0), 1)
    y = MGPoly.term((0, 1), 1)
    one = MGPoly.const(2)
    p = (one + x) * (one - x)
    assert p == one - x * x
    assert (x + y).coeff((1, 0), 1) == 1
    assert str(one - x) == "1 - x1*t"


def test_specialize():
    p = MGPoly.term((1, 0), 2, 3, 5)
    assert p.specialize(t=1).coeff((1, 0), 0, 3) == 5
    assert p.specialize(z=(2, "t")).coeff((1, 0), 5, 0) == 40
    assert p.specialize(x_to_one=True).coeff((0, 0), 2, 3) == 5


def test_inverse_of_geometric():
    s = SeriesExpansion.from_poly(MGPoly.const(1) - MGPoly.term((1,), 1), 5)
    inv = s.inverse()
    assert all(inv.coeff((i,), i) == 1 for i in range(6))
    assert (s * inv).terms == {((0,), 0, 0): Fraction(1)}


def test_inverse_needs_unit_constant():
    s = SeriesExpansion.from_poly(MGPoly.term((1,), 1), 4)
    with pytest.raises(SeriesError):
        s.inverse()


def test_mixed_bounds_rejected():
    a = SeriesExpansion.from_poly(MGPoly.const(1), 3)
    b = SeriesExpansion.from_poly(MGPoly.const(1), 4)
    with pytest.raises(SeriesError):
        a * b


def test_hilbert_of_x_squared():
    res = hilbert_series(corpus.ideal("x2"), D=6)
    assert res.expansion.terms == {((0,), 0, 0): 1, ((1,), 1, 0): 1}


@pytest.mark.parametrize("name", corpus.names("ideal"))
def test_hilbert_matches_count(name):
    a = corpus.ideal(name)
    assert hilbert_series(a, D=6).expansion == standard_monomial_series(a, 6)


def test_non_graded_matching_rejected():
    a = corpus.ideal("triangle")
    with pytest.raises(NonGradedMatching):
        hilbert_numerator(a, [(0b011, 0b001)])


def test_complete_intersection_poincare():
    # Tate: P = prod(1 + x_i t) / prod(1 - m_j t^2) for a regular sequence
    a = corpus.ideal("ci_squares")
    res = conjectured_poincare(a, D=6, H=5)
    assert {k: v for k, v in res.expansion.terms.items()} == \
        {(al, i, 0): v for (i, al), v in tor_A_kk(a, 5, 6).entries.items()}


def test_linear_generator_rejected():
    a = MonomialIdeal.from_monomials([(1, 0), (0, 2)], 2)
    with pytest.raises(PreconditionError):
        conjectured_poincare(a)
    with pytest.raises(PreconditionError):
        golod_series(koszul_homology(a)[0].entries, 2)


def test_hilb_R_of_single_generator():
    cf = hilb_R(corpus.ideal("single"))
    assert cf.numerator == MGPoly.const(2)
    assert cf.denominator.coeff((1, 1), 2, 2) == -1


def test_koszul_identity_needs_degree_two():
    assert koszul_identity_check(corpus.ideal("5gon"))
    with pytest.raises(PreconditionError):
        koszul_identity_check(corpus.ideal("generic3"))


def test_golod_series_of_golod_ideal_matches_tor():
    a = corpus.ideal("path3")
    betti = koszul_homology(a)[0].entries
    assert golod_series(betti, a.n, 6, 5).terms == \
        {(al, i, 0): v for (i, al), v in tor_A_kk(a, 5, 6).entries.items()}
