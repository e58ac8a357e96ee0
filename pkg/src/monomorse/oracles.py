"""Brute-force ground truth computed without any matching.

* Koszul homology ``H(x; A)`` of ``A = S/a`` per multidegree, with explicit
  cycle representatives, and the product on it.
* ``Tor^A(k, k)`` from a degreewise minimal free resolution of ``k`` over ``A``.

Elements of the Koszul complex in multidegree ``α`` are dicts keyed by the
variable mask ``J`` of the exterior basis element ``e_J``; the ring
coefficient is forced to be ``x^{α - e_J}``, which must be nonzero in ``A``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product

from .linalg import Echelon, Field, QQ, kernel_and_image, solve_in_span
from .monomial import MonomialIdeal, mono_str, one, popcount
from .series import monomials_up_to
from .taylor import SubsetTable


class BoundError(ValueError):
    pass


@dataclass
class BettiTable:
    entries: dict = field(default_factory=dict)
    partial: bool = False

    def __getitem__(self, key):
        return self.entries.get(key, 0)

    def total(self, i: int) -> int:
        return sum(v for (j, _), v in self.entries.items() if j == i)

    def records(self) -> list:
        return [{"i": i, "alpha": list(a), "dim": d}
                for (i, a), d in sorted(self.entries.items(),
                                        key=lambda kv: (kv[0][0], sum(kv[0][1]), kv[0][1]))]

    def __eq__(self, other):
        if isinstance(other, BettiTable):
            other = other.entries
        return self.entries == other


class _Koszul:
    """Slices of the Koszul complex of ``A`` with cached ranks."""

    def __init__(self, ideal: MonomialIdeal, field: Field):
        self.ideal = ideal
        self.field = field
        self.n = ideal.n
        self._std = {}

    def standard(self, gamma) -> bool:
        r = self._std.get(gamma)
        if r is None:
            r = not self.ideal.contains(gamma)
            self._std[gamma] = r
        return r

    def basis(self, i: int, alpha) -> list:
        """Masks ``J`` with ``|J| = i`` and ``x^{α − e_J}`` nonzero in ``A``."""
        if i < 0 or i > self.n:
            return []
        supp = [v for v in range(self.n) if alpha[v]]
        out = []
        for combo in combinations(supp, i):
            g = list(alpha)
            for v in combo:
                g[v] -= 1
            if self.standard(tuple(g)):
                out.append(sum(1 << v for v in combo))
        return out

    def boundary(self, J: int, alpha) -> dict:
        """``∂(x^{α−e_J} e_J)`` as a dict over masks of size ``|J| − 1``."""
        out = {}
        sign = 1
        for v in range(self.n):
            if not J >> v & 1:
                continue
            K = J & ~(1 << v)
            g = list(alpha)
            for w in range(self.n):
                if K >> w & 1:
                    g[w] -= 1
            if self.standard(tuple(g)):
                out[K] = self.field(sign)
            sign = -sign
        return out

    @lru_cache(maxsize=None)
    def slice(self, i: int, alpha):
        """``(cycles, boundaries)`` at ``(i, α)`` as lists of vectors."""
        cols_b = self.basis(i, alpha)
        cols = [self.boundary(J, alpha) for J in cols_b]
        ker, _ = kernel_and_image(cols, self.field)
        cycles = [{cols_b[j]: a for j, a in v.items()} for v in ker]
        bounds = [b for b in (self.boundary(J, alpha) for J in self.basis(i + 1, alpha)) if b]
        return cycles, bounds

    def classes(self, i: int, alpha) -> list:
        """Cycles completing the boundaries to a basis of the cycles."""
        cycles, bounds = self.slice(i, alpha)
        ech = Echelon(self.field)
        for b in bounds:
            ech.add(b)
        return [c for c in cycles if ech.add(c)]


@dataclass
class HomologyClassBasis:
    """Cycle representatives per ``(i, α)``; class id ``(i, α, k)``."""

    ideal: MonomialIdeal
    field: Field
    reps: dict = field(default_factory=dict)
    _kz: _Koszul | None = field(default=None, repr=False)

    def ids(self) -> list:
        return [(i, a, k) for (i, a), cs in sorted(self.reps.items(),
                                                   key=lambda kv: (kv[0][0], sum(kv[0][1]), kv[0][1]))
                for k in range(len(cs))]

    def rep(self, cid) -> dict:
        i, a, k = cid
        return self.reps[(i, a)][k]

    def express(self, i: int, alpha, vec: dict):
        """Coordinates of the class of the cycle ``vec`` in the stored basis."""
        _, bounds = self._kz.slice(i, alpha)
        basis = self.reps.get((i, alpha), [])
        sol = solve_in_span(bounds + basis, vec, self.field)
        if sol is None:
            raise ValueError(f"vector at ({i}, {mono_str(alpha)}) is not a cycle class")
        nb = len(bounds)
        return {k - nb: a for k, a in sol.items() if k >= nb and a}

    def is_boundary(self, i: int, alpha, vec: dict) -> bool:
        _, bounds = self._kz.slice(i, alpha)
        ech = Echelon(self.field)
        for b in bounds:
            ech.add(b)
        return ech.contains(vec)


def koszul_support(ideal: MonomialIdeal) -> list:
    """Distinct lcms of generator subsets (including 1)."""
    table = SubsetTable.build(ideal)
    return sorted(set(table.lcm), key=lambda a: (sum(a), a))


def _box(ideal: MonomialIdeal) -> list:
    top = ideal.lcm(ideal.full_mask)
    out = [()]
    for e in top:
        out = [a + (v,) for a in out for v in range(e + 1)]
    return out


def koszul_homology(ideal: MonomialIdeal, field: Field = QQ, D: int | None = None,
                    *, support: str = "lcm"):
    """Betti numbers ``dim Tor^S_i(A, k)_α`` via Koszul homology of ``A``.

    ``support="lcm"`` visits the lcm lattice only, ``"box"`` every
    ``α`` dividing the lcm of all generators.  ``D`` skips multidegrees of
    total degree above ``D``.
    """
    kz = _Koszul(ideal, field)
    alphas = koszul_support(ideal) if support == "lcm" else _box(ideal)
    table = BettiTable()
    basis = HomologyClassBasis(ideal, field, _kz=kz)
    for alpha in alphas:
        if D is not None and sum(alpha) > D:
            table.partial = True
            continue
        for i in range(ideal.n + 1):
            cs = kz.classes(i, alpha)
            if cs:
                table.entries[(i, alpha)] = len(cs)
                basis.reps[(i, alpha)] = cs
    return table, basis


def _wedge(x: dict, ax, y: dict, ay, kz: _Koszul):
    """Product of Koszul elements of multidegrees ``ax`` and ``ay``."""
    alpha = tuple(a + b for a, b in zip(ax, ay))
    out = {}
    p = kz.field.char
    for J, a in x.items():
        for K, b in y.items():
            if J & K:
                continue
            g = list(alpha)
            for v in range(kz.n):
                if (J | K) >> v & 1:
                    g[v] -= 1
            if not kz.standard(tuple(g)):
                continue
            # sign of merging e_J and e_K into increasing order
            inv = sum(popcount(J >> (v + 1)) for v in range(kz.n) if K >> v & 1)
            c = a * b * (-1 if inv % 2 else 1)
            x_ = out.get(J | K, 0) + c
            if p:
                x_ %= p
            out[J | K] = x_
    return alpha, {k: v for k, v in out.items() if v}


def koszul_product(basis: HomologyClassBasis, c1, c2, D: int | None = None) -> dict:
    """Class of ``[c1][c2]`` in the stored basis; empty dict means zero."""
    i1, a1, _ = c1
    i2, a2, _ = c2
    alpha, vec = _wedge(basis.rep(c1), a1, basis.rep(c2), a2, basis._kz)
    if D is not None and sum(alpha) > D:
        raise BoundError(f"product multidegree {mono_str(alpha)} exceeds bound {D}")
    if not vec:
        return {}
    i = i1 + i2
    coords = basis.express(i, alpha, vec)
    return {(i, alpha, k): a for k, a in coords.items()}


@dataclass
class ProductVerdict:
    trivial: bool
    witness: tuple | None = None
    checked: int = 0


def product_trivial(ideal: MonomialIdeal, field: Field = QQ, basis=None) -> ProductVerdict:
    """Whether every product of two positive-degree classes vanishes."""
    if basis is None:
        _, basis = koszul_homology(ideal, field)
    ids = [c for c in basis.ids() if c[0] >= 1]
    checked = 0
    for x in range(len(ids)):
        for y in range(x, len(ids)):
            prod = koszul_product(basis, ids[x], ids[y])
            checked += 1
            if prod:
                return ProductVerdict(False, (ids[x], ids[y], prod), checked)
    return ProductVerdict(True, None, checked)


def decomposable_dims(basis: HomologyClassBasis) -> dict:
    """``dim`` of the span of products of positive-degree classes per ``(i, α)``."""
    kz = basis._kz
    ids = [c for c in basis.ids() if c[0] >= 1]
    prods = {}
    for x in range(len(ids)):
        for y in range(x, len(ids)):
            c1, c2 = ids[x], ids[y]
            alpha, vec = _wedge(basis.rep(c1), c1[1], basis.rep(c2), c2[1], kz)
            if vec:
                prods.setdefault((c1[0] + c2[0], alpha), []).append(vec)
    out = {}
    for (i, alpha), vecs in prods.items():
        _, bounds = kz.slice(i, alpha)
        ech = Echelon(basis.field)
        for b in bounds:
            ech.add(b)
        r = sum(1 for v in vecs if ech.add(v))
        if r:
            out[(i, alpha)] = r
    return out


def normalize_through_variable(basis: HomologyClassBasis, cid, var: int) -> dict:
    """A cycle homologous to ``cid`` with ``var`` in every wedge index set.

    Requires ``x_var`` to divide the multidegree of the class.
    """
    i, alpha, _ = cid
    if not alpha[var]:
        raise ValueError(f"x{var + 1} does not divide {mono_str(alpha)}")
    kz = basis._kz
    c = basis.rep(cid)
    bit = 1 << var
    bases = [kz.boundary(J, alpha) for J in kz.basis(i + 1, alpha)]
    # choose y with (c - ∂y) supported on masks containing var
    proj = [{J: a for J, a in b.items() if not J & bit} for b in bases]
    target = {J: a for J, a in c.items() if not J & bit}
    sol = solve_in_span(proj, target, basis.field) if target else {}
    if sol is None:
        raise ValueError(f"class {cid} cannot be moved onto x{var + 1}")
    p = basis.field.char
    out = dict(c)
    for k, a in sol.items():
        for J, b in bases[k].items():
            x = out.get(J, 0) - a * b
            if p:
                x %= p
            out[J] = x
    out = {J: a for J, a in out.items() if a}
    assert all(J & bit for J in out)
    return out


# ----------------------------------------------------------------------
# Tor^A(k, k)


def tor_A_kk(ideal: MonomialIdeal, H: int = 6, D: int = 8, field: Field = QQ,
             *, max_generators: int = 200000) -> BettiTable:
    """Multigraded Betti numbers of ``k`` over ``A`` for ``i ≤ H``, ``|α| ≤ D``.

    Builds the minimal resolution degree by degree: at multidegree ``α`` the
    new generators of ``F_{i+1}`` complete the image of the generators of
    smaller degree to the kernel of ``d_i``.
    """
    if H < 0 or D < 0:
        raise BoundError("bounds must be nonnegative")
    n = ideal.n
    std_cache = {}

    def standard(g):
        r = std_cache.get(g)
        if r is None:
            r = not ideal.contains(g)
            std_cache[g] = r
        return r

    alphas = sorted(monomials_up_to(n, D), key=lambda a: (sum(a), a))
    zero = one(n)
    # level[i] = list of (beta, dvec) with dvec over generator indices of level i-1
    levels = [[(zero, {})]]
    by_deg = [{zero: [0]}]  # level -> beta -> generator indices
    table = BettiTable({(0, zero): 1})
    total = 1

    def sub(a, b):
        return tuple(x - y for x, y in zip(a, b))

    divisor_cache = {}

    def divisors(alpha):
        r = divisor_cache.get(alpha)
        if r is None:
            r = list(product(*(range(e + 1) for e in alpha)))
            divisor_cache[alpha] = r
        return r

    def generators_below(index, alpha):
        """Generators of degree ``beta | alpha`` with ``alpha - beta`` standard."""
        out = []
        for beta in divisors(alpha):
            gs = index.get(beta)
            if gs and standard(sub(alpha, beta)):
                out.extend(gs)
        return out

    for i in range(H):
        cur = levels[i]
        prev = levels[i - 1] if i else None
        new, new_by = [], {}
        for alpha in alphas:
            slice_g = sorted(generators_below(by_deg[i], alpha))
            if not slice_g:
                continue
            if i == 0:
                kernel = [] if alpha == zero else [{0: field(1)}]
            else:
                cols = []
                for g in slice_g:
                    _, dvec = cur[g]
                    cols.append({h: c for h, c in dvec.items()
                                 if standard(sub(alpha, prev[h][0]))})
                ker, _ = kernel_and_image(cols, field)
                kernel = [{slice_g[j]: a for j, a in v.items()} for v in ker]
            if not kernel:
                continue
            ech = Echelon(field)
            for g in sorted(generators_below(new_by, alpha)):
                ech.add({h: c for h, c in new[g][1].items()
                         if standard(sub(alpha, cur[h][0]))})
            for v in kernel:
                if ech.add(v):
                    new_by.setdefault(alpha, []).append(len(new))
                    new.append((alpha, v))
                    key = (i + 1, alpha)
                    table.entries[key] = table.entries.get(key, 0) + 1
                    total += 1
                    if total > max_generators:
                        table.partial = True
                        return table
        by_deg.append(new_by)
        levels.append(new)
    return table
