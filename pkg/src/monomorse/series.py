"""Exact multigraded polynomials and truncated power series.

Terms are keyed by ``(alpha, j, k)``: the monomial exponent vector ``alpha``
in ``x_1..x_n``, the power ``j`` of ``t`` and the power ``k`` of ``z``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .monomial import (MonomialIdeal, canonical_key, mono_mul, mono_str, one,
                       popcount, unit_vector)
from .linalg import QQ
from .taylor import PreconditionError, SubsetTable, _build_standard


class NonGradedMatching(ValueError):
    pass


class SeriesError(ValueError):
    pass


def _term_key(key):
    alpha, j, k = key
    return (j, k, canonical_key(alpha))


class MGPoly:
    """Exact polynomial in ``x``, ``t`` and ``z``."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict | None = None):
        self.n = n
        self.terms = {}
        for key, c in (terms or {}).items():
            if c:
                self.terms[key] = c

    @classmethod
    def const(cls, n: int, c=1) -> "MGPoly":
        return cls(n, {(one(n), 0, 0): c})

    @classmethod
    def term(cls, alpha, j: int = 0, k: int = 0, c=1) -> "MGPoly":
        return cls(len(alpha), {(tuple(alpha), j, k): c})

    def copy(self) -> "MGPoly":
        return MGPoly(self.n, self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = MGPoly.const(self.n, other)
        return isinstance(other, MGPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "MGPoly") -> "MGPoly":
        out = dict(self.terms)
        for key, c in other.terms.items():
            x = out.get(key, 0) + c
            if x:
                out[key] = x
            else:
                out.pop(key, None)
        return MGPoly(self.n, out)

    def __neg__(self) -> "MGPoly":
        return MGPoly(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "MGPoly") -> "MGPoly":
        return self + (-other)

    def __mul__(self, other) -> "MGPoly":
        if not isinstance(other, MGPoly):
            return MGPoly(self.n, {k: c * other for k, c in self.terms.items()})
        out = {}
        for (a1, j1, k1), c1 in self.terms.items():
            for (a2, j2, k2), c2 in other.terms.items():
                key = (mono_mul(a1, a2), j1 + j2, k1 + k2)
                out[key] = out.get(key, 0) + c1 * c2
        return MGPoly(self.n, out)

    __rmul__ = __mul__

    def coeff(self, alpha, j: int = 0, k: int = 0):
        return self.terms.get((tuple(alpha), j, k), 0)

    def specialize(self, *, t=None, z=None, x_to_one: bool = False) -> "MGPoly":
        """Simultaneous substitution for ``t`` and ``z``.

        Each of ``t``/``z`` is None (kept), a number, or a pair ``(c, "t")`` /
        ``(c, "z")`` meaning ``c`` times that variable.
        """
        def parts(spec, e):
            if spec is None:
                return 1, e
            if isinstance(spec, tuple):
                c, var = spec
                return c ** e, (var, e)
            return spec ** e, None

        out = {}
        for (alpha, j, k), c in self.terms.items():
            nj = nk = 0
            for spec, e, own in ((t, j, "t"), (z, k, "z")):
                f, target = parts(spec, e)
                c = c * f
                if isinstance(target, int):
                    target = (own, target)
                if target:
                    if target[0] == "t":
                        nj += target[1]
                    else:
                        nk += target[1]
            a = one(self.n) if x_to_one else alpha
            key = (a, nj, nk)
            out[key] = out.get(key, 0) + c
        return MGPoly(self.n, out)

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: _term_key(kv[0]))

    def max_t(self) -> int:
        return max((j for _, j, _ in self.terms), default=0)

    def __repr__(self):
        return f"MGPoly({self})"

    def __str__(self):
        return poly_str(self.terms)


def poly_str(terms: dict) -> str:
    if not terms:
        return "0"
    parts = []
    for (alpha, j, k), c in sorted(terms.items(), key=lambda kv: _term_key(kv[0])):
        fac = []
        if any(alpha):
            fac.append(mono_str(alpha))
        if j:
            fac.append("t" if j == 1 else f"t^{j}")
        if k:
            fac.append("z" if k == 1 else f"z^{k}")
        mag = abs(c)
        body = "*".join(fac)
        if not body:
            body = str(mag)
        elif mag != 1:
            body = f"{mag}*{body}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# ----------------------------------------------------------------------


@dataclass
class SeriesExpansion:
    """Power series truncated at x-degree ``D`` (and t-degree ``H`` if given).

    Terms beyond the bounds are discarded after every operation, so results
    are exact within the bounds.
    """

    n: int
    D: int
    H: int | None = None
    terms: dict = field(default_factory=dict)

    def _keep(self, alpha, j) -> bool:
        return sum(alpha) <= self.D and (self.H is None or j <= self.H)

    @classmethod
    def from_poly(cls, p: MGPoly, D: int, H: int | None = None) -> "SeriesExpansion":
        s = cls(p.n, D, H)
        s.terms = {k: Fraction(c) for k, c in p.terms.items() if s._keep(k[0], k[1])}
        return s

    def _like(self, terms) -> "SeriesExpansion":
        return SeriesExpansion(self.n, self.D, self.H, {k: c for k, c in terms.items() if c})

    def _check(self, other: "SeriesExpansion"):
        if (self.D, self.H) != (other.D, other.H):
            raise SeriesError("series with different truncation bounds")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return self._like(out)

    def __neg__(self):
        return self._like({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        out = {}
        D, H = self.D, self.H
        right = [(a, j, k, c, sum(a)) for (a, j, k), c in other.terms.items()]
        for (a1, j1, k1), c1 in self.terms.items():
            d1 = sum(a1)
            for a2, j2, k2, c2, d2 in right:
                if d1 + d2 > D or (H is not None and j1 + j2 > H):
                    continue
                key = (mono_mul(a1, a2), j1 + j2, k1 + k2)
                out[key] = out.get(key, 0) + c1 * c2
        return self._like(out)

    def __eq__(self, other):
        return (isinstance(other, SeriesExpansion) and (self.D, self.H) == (other.D, other.H)
                and self.terms == other.terms)

    def inverse(self) -> "SeriesExpansion":
        """``1/f`` for ``f`` with constant term 1."""
        n = self.n
        const = (one(n), 0, 0)
        if self.terms.get(const) != 1:
            raise SeriesError("series inversion needs constant term 1")
        g = self._like({k: -c for k, c in self.terms.items() if k != const})
        if any(not any(a) and self.H is None for a, _, _ in g.terms):
            raise SeriesError("pure t/z terms need a t-bound to invert")
        result = self._like({const: Fraction(1)})
        power = result
        for _ in range(self.D + (self.H or 0) + 2):
            power = power * g
            if not power.terms:
                break
            result = result + power
        else:
            if power.terms:
                raise SeriesError("series inversion did not converge within bounds")
        return result

    def coeff(self, alpha, j: int = 0, k: int = 0):
        return self.terms.get((tuple(alpha), j, k), 0)

    def negative_terms(self) -> list:
        return [(k, c) for k, c in self.items() if c < 0]

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: _term_key(kv[0]))

    def records(self) -> list:
        out = []
        for (alpha, j, k), c in self.items():
            rec = {"alpha": list(alpha), "t": j, "coeff": _num(c)}
            if k:
                rec["z"] = k
            out.append(rec)
        return out

    def __str__(self):
        bound = f"D={self.D}" + (f", H={self.H}" if self.H is not None else "")
        return f"{poly_str(self.terms)} + O({bound})"


def _num(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class ClosedForm(NamedTuple):
    numerator: MGPoly
    denominator: MGPoly

    def __str__(self):
        return f"({self.numerator}) / ({self.denominator})"

    def expand(self, D: int, H: int | None = None) -> SeriesExpansion:
        num = SeriesExpansion.from_poly(self.numerator, D, H)
        den = SeriesExpansion.from_poly(self.denominator, D, H)
        return num * den.inverse()


class SeriesResult(NamedTuple):
    closed: ClosedForm
    expansion: SeriesExpansion
    violations: list


# ----------------------------------------------------------------------
# subset sums


def _survivor_masks(ideal: MonomialIdeal, matching) -> list:
    """Nonempty masks untouched by ``matching`` (edges as mask pairs)."""
    matched = set()
    for e in _mask_edges(matching):
        matched.update(e)
    return [m for m in range(1, 1 << ideal.l) if m not in matched]


def _mask_edges(matching) -> list:
    if matching is None:
        return []
    if hasattr(matching, "sequences"):
        return [(u, l) for s in matching.sequences for u, l in s]
    if hasattr(matching, "edges") and not callable(matching.edges):
        return [(u.label, l.label) for u, l in matching.edges]
    return [tuple(e) for e in matching]


def first_sequence(ideal: MonomialIdeal, policy: str = "lexfirst") -> list:
    """Edges of ``M_1`` of the standard matching as mask pairs."""
    sm = _build_standard(ideal, policy, QQ, 100000, max_seq=1)
    return list(sm.sequences[0]) if sm.sequences else []


def subset_sum(ideal: MonomialIdeal, masks, *, table: SubsetTable | None = None,
               z: bool = False, t_mode: str = "cl") -> MGPoly:
    """``Σ (−1)^{cl(I)} m_I t^{cl(I)+|I|}`` over ``masks`` (empty set excluded).

    ``t_mode="degree"`` uses ``t^{|m_I|}``; ``z=True`` adds ``z^{cl(I)+|I|}``.
    """
    table = table or SubsetTable.build(ideal)
    terms = {}
    for m in masks:
        if not m:
            continue
        cl, size, lcm = table.cl[m], popcount(m), table.lcm[m]
        j = cl + size if t_mode == "cl" else sum(lcm)
        key = (lcm, j, cl + size if z else 0)
        terms[key] = terms.get(key, 0) + (-1) ** cl
    return MGPoly(ideal.n, terms)


def hilbert_numerator(ideal: MonomialIdeal, matching=None) -> MGPoly:
    """``1 + Σ (−1)^{|I|} m_I t^{|m_I|}`` over all subsets or over survivors."""
    table = SubsetTable.build(ideal)
    for u, l in _mask_edges(matching):
        if table.lcm[u] != table.lcm[l]:
            raise NonGradedMatching(
                f"edge {ideal.mask_str(u)} -> {ideal.mask_str(l)} joins different lcms")
    masks = _survivor_masks(ideal, matching)
    out = MGPoly.const(ideal.n)
    terms = dict(out.terms)
    for m in masks:
        lcm = table.lcm[m]
        key = (lcm, sum(lcm), 0)
        terms[key] = terms.get(key, 0) + (-1) ** popcount(m)
    return MGPoly(ideal.n, terms)


def _prod_linear(n: int, sign: int) -> MGPoly:
    out = MGPoly.const(n)
    for i in range(n):
        out = out * (MGPoly.const(n) + MGPoly.term(unit_vector(n, i), 1, 0, sign))
    return out


def koszul_numerator(n: int) -> MGPoly:
    """``Π (1 + x_i t)``."""
    return _prod_linear(n, 1)


def hilbert_series(ideal: MonomialIdeal, matching=None, D: int = 8) -> SeriesResult:
    if D < 1:
        raise SeriesError("truncation bound must be at least 1")
    cf = ClosedForm(hilbert_numerator(ideal, matching), _prod_linear(ideal.n, -1))
    exp = cf.expand(D)
    return SeriesResult(cf, exp, exp.negative_terms())


def _m1(ideal: MonomialIdeal, m1):
    return first_sequence(ideal) if m1 is None else m1


def hilb_R(ideal: MonomialIdeal, m1=None) -> ClosedForm:
    """Hilbert series of the ring R in ``(x, t, z)``."""
    masks = _survivor_masks(ideal, _m1(ideal, m1))
    den = MGPoly.const(ideal.n) + subset_sum(ideal, masks, z=True, t_mode="degree")
    return ClosedForm(MGPoly.const(ideal.n), den)


def poincare_denominator(ideal: MonomialIdeal, m1=None) -> MGPoly:
    masks = _survivor_masks(ideal, _m1(ideal, m1))
    return MGPoly.const(ideal.n) + subset_sum(ideal, masks)


def _require_no_linear(ideal: MonomialIdeal) -> None:
    for g in ideal.gens:
        if sum(g) < 2:
            raise PreconditionError(
                f"generator {mono_str(g)} is linear; the closed form assumes degrees >= 2")


def conjectured_poincare(ideal: MonomialIdeal, m1=None, D: int = 8,
                         H: int | None = None) -> SeriesResult:
    _require_no_linear(ideal)
    cf = ClosedForm(koszul_numerator(ideal.n), poincare_denominator(ideal, m1))
    exp = cf.expand(D, H)
    return SeriesResult(cf, exp, exp.negative_terms())


def koszul_identity_check(ideal: MonomialIdeal, m1=None) -> bool:
    """Whether ``|m_I| = cl(I) + |I|`` for every survivor of ``M_1``."""
    for g in ideal.gens:
        if sum(g) != 2:
            raise PreconditionError(f"generator {mono_str(g)} does not have degree 2")
    table = SubsetTable.build(ideal)
    return all(sum(table.lcm[m]) == table.cl[m] + popcount(m)
               for m in _survivor_masks(ideal, _m1(ideal, m1)))


def golod_series(betti: dict, n: int, D: int = 8, H: int | None = None) -> SeriesExpansion:
    """``Π(1+x_i t) / (1 − Σ_{i≥1} β_{i,α} x^α t^{i+1})``.

    ``betti`` maps ``(i, alpha)`` to ``dim Tor^S_i(A, k)_alpha``; entries with
    ``i = 0`` are ignored.
    """
    if any(i == 1 and sum(a) < 2 for (i, a), b in betti.items() if b):
        raise PreconditionError("the Golod bound assumes generators of degree >= 2")
    terms = {(one(n), 0, 0): 1}
    for (i, alpha), b in betti.items():
        if i >= 1 and b:
            key = (tuple(alpha), i + 1, 0)
            terms[key] = terms.get(key, 0) - b
    cf = ClosedForm(koszul_numerator(n), MGPoly(n, terms))
    return cf.expand(D, H)


# ----------------------------------------------------------------------
# brute-force monomial counting


def monomials_up_to(n: int, D: int):
    """All exponent vectors with total degree at most ``D``."""
    def rec(i, left):
        if i == n - 1:
            for e in range(left + 1):
                yield (e,)
            return
        for e in range(left + 1):
            for rest in rec(i + 1, left - e):
                yield (e,) + rest
    return rec(0, D)


def standard_monomial_series(ideal: MonomialIdeal, D: int) -> SeriesExpansion:
    """``Σ x^α t^{|α|}`` over monomials outside the ideal, by enumeration."""
    s = SeriesExpansion(ideal.n, D)
    s.terms = {(a, sum(a), 0): Fraction(1)
               for a in monomials_up_to(ideal.n, D) if not ideal.contains(a)}
    return s
