"""Naturally labelled posets, their order-complex ideals and the series W.

Elements are ``0..p-1`` internally and ``1..p`` in text; element ``i``
corresponds to the variable ``x_{i+1}``.  The labelling must extend the order:
``i ≺ j`` implies ``i < j``.
"""

from __future__ import annotations

import random
from bisect import bisect_right
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

from .monomial import MonomialIdeal, bits, popcount, unit_vector
from .series import MGPoly
from .taylor import nbc_sets_dfs


class PosetError(ValueError):
    pass


@dataclass(frozen=True)
class Poset:
    p: int
    less: frozenset  # transitively closed strict relation, pairs (i, j) with i ≺ j

    @classmethod
    def from_relations(cls, p: int, relations) -> "Poset":
        rel = set()
        for i, j in relations:
            if not (0 <= i < p and 0 <= j < p):
                raise PosetError(f"relation {i + 1} < {j + 1} outside 1..{p}")
            if i >= j:
                raise PosetError(
                    f"relation {i + 1} < {j + 1} violates the natural labelling")
            rel.add((i, j))
        # i < j on labels, so closing in label order is enough
        up = [set() for _ in range(p)]
        for i, j in rel:
            up[i].add(j)
        for i in reversed(range(p)):
            for j in list(up[i]):
                up[i] |= up[j]
        return cls(p, frozenset((i, j) for i in range(p) for j in up[i]))

    @classmethod
    def chain(cls, p: int) -> "Poset":
        return cls.from_relations(p, [(i, i + 1) for i in range(p - 1)])

    @classmethod
    def antichain(cls, p: int) -> "Poset":
        return cls.from_relations(p, [])

    def prec(self, i: int, j: int) -> bool:
        return (i, j) in self.less

    def incomparable_pairs(self) -> list:
        return [(i, j) for i, j in combinations(range(self.p), 2) if (i, j) not in self.less]

    def __str__(self):
        rel = ", ".join(f"{i + 1}<{j + 1}" for i, j in sorted(self.less))
        return f"P({self.p}: {rel})"


def all_posets(p: int):
    """Every naturally labelled poset on ``p`` elements (as closed relations)."""
    pairs = list(combinations(range(p), 2))
    for choice in product((0, 1), repeat=len(pairs)):
        rel = {pr for pr, c in zip(pairs, choice) if c}
        if all((i, k) in rel for i, j in rel for j2, k in rel if j == j2):
            yield Poset(p, frozenset(rel))


def random_poset(p: int, rng: random.Random, density: float | None = None) -> Poset:
    d = rng.random() if density is None else density
    rel = [(i, j) for i, j in combinations(range(p), 2) if rng.random() < d * 0.6]
    return Poset.from_relations(p, rel)


def order_complex_ideal(poset: Poset) -> MonomialIdeal:
    """``⟨x_i x_j : i < j, i ⊀ j⟩``; variable count ``p``."""
    n = poset.p
    gens = []
    for i, j in poset.incomparable_pairs():
        g = [0] * n
        g[i] = g[j] = 1
        gens.append(tuple(g))
    if not gens:
        return MonomialIdeal.zero(n)
    return MonomialIdeal.from_monomials(gens, n)


# ----------------------------------------------------------------------
# W by recursion


def w_polynomials(poset: Poset) -> list:
    n = poset.p
    one = MGPoly.const(n)

    def tx(r):
        return MGPoly.term(unit_vector(n, r), 1)

    w = [MGPoly(n) for _ in range(n)]
    tail = [MGPoly(n) for _ in range(n + 1)]  # tail[r] = Σ_{s≥r} w_s
    for i in reversed(range(n)):
        acc = MGPoly(n)
        for j in range(i + 1, n):
            if poset.prec(i, j):
                continue
            inner = w[j] + tx(j) - tx(j) * tail[j + 1]
            for r in range(i + 1, j):
                inner = inner * (one + tx(r))
            acc = acc + inner
        w[i] = tx(i) * acc
        tail[i] = tail[i + 1] + w[i]
    return w


def W_recursion(poset: Poset) -> MGPoly:
    out = MGPoly.const(poset.p)
    for wi in w_polynomials(poset):
        out = out - wi
    return out


# ----------------------------------------------------------------------
# path coefficients


def _check_increasing(seq):
    if any(a >= b for a, b in zip(seq, seq[1:])):
        raise PosetError(f"index sequence {[s + 1 for s in seq]} is not strictly increasing")


def path_count(poset: Poset, seq) -> int:
    """Paths from ``seq[0]`` to ``seq[-1]`` through ``seq`` along incomparable steps."""
    seq = tuple(seq)
    _check_increasing(seq)
    ways = [0] * len(seq)
    ways[0] = 1
    for b in range(1, len(seq)):
        ways[b] = sum(ways[a] for a in range(b) if not poset.prec(seq[a], seq[b]))
    return ways[-1]


def path_coefficients(poset: Poset, seq) -> tuple:
    """``(d, c)`` for a strictly increasing index sequence."""
    seq = tuple(seq)
    _check_increasing(seq)
    nu = len(seq)

    @lru_cache(maxsize=None)
    def c_from(a):
        # signed sum over splittings of seq[a:] into blocks of length ≥ 2
        if a == nu:
            return 1
        total = 0
        for b in range(a + 2, nu + 1):
            total -= path_count(poset, seq[a:b]) * c_from(b)
        return total

    d = path_count(poset, seq) if nu >= 1 else 0
    return d, c_from(0)


def W_path_coefficients(poset: Poset) -> MGPoly:
    n = poset.p
    terms = {((0,) * n, 0, 0): 1}
    for nu in range(2, n + 1):
        for seq in combinations(range(n), nu):
            _, c = path_coefficients(poset, seq)
            if c:
                alpha = tuple(1 if v in seq else 0 for v in range(n))
                terms[(alpha, nu, 0)] = c
    return MGPoly(n, terms)


# ----------------------------------------------------------------------
# sting-chains


def _edge_index(ideal: MonomialIdeal) -> dict:
    out = {}
    for k, g in enumerate(ideal.gens):
        i, j = (v for v, e in enumerate(g) if e)
        out[(i, j)] = k
    return out


def is_sting_chain(poset: Poset, ideal: MonomialIdeal, mask: int) -> bool:
    """Literal test of the sting-chain conditions for a set of edges."""
    if not mask:
        return False
    index = _edge_index(ideal)
    edges = [tuple(v for v, e in enumerate(ideal.gens[k]) if e) for k in bits(mask)]
    eset = set(edges)
    support = sorted({v for e in edges for v in e})
    lo, hi = support[0], support[-1]
    in_a = set(index)

    def ok_for_chain(chain):
        for r, s in edges:
            good = False
            for a, b in zip(chain, chain[1:]):
                if (r, s) == (a, b):
                    good = True
                elif r == a and s < b and (s, b) not in eset:
                    good = True
                elif r > a and s == b and (a, r) not in in_a:
                    good = True
                if good:
                    break
            if not good:
                return False
        return True

    # walk all increasing chains lo -> hi along edges of the set
    def walk(chain):
        last = chain[-1]
        if last == hi:
            yield chain
            return
        for r, s in edges:
            if r == last:
                yield from walk(chain + [s])

    return any(ok_for_chain(c) for c in walk([lo]))


def _sting_candidates(poset: Poset, ideal: MonomialIdeal):
    """Chain paths with at most one sting per intermediate element."""
    index = _edge_index(ideal)
    n = poset.p
    out = set()

    def paths_from(v):
        yield [v]
        for w in range(v + 1, n):
            if (v, w) in index:
                for rest in paths_from(w):
                    yield [v] + rest

    for start in range(n):
        for path in paths_from(start):
            if len(path) < 2:
                continue
            base = 0
            for a, b in zip(path, path[1:]):
                base |= 1 << index[(a, b)]
            options = []
            for a, b in zip(path, path[1:]):
                for s in range(a + 1, b):
                    opts = [0]
                    if (a, s) in index:
                        opts.append(1 << index[(a, s)])
                    if (s, b) in index:
                        opts.append(1 << index[(s, b)])
                    options.append(opts)
            for pick in product(*options):
                m = base
                for x in pick:
                    m |= x
                out.add(m)
    return out


def sting_chains(poset: Poset, ideal: MonomialIdeal | None = None) -> list:
    ideal = ideal or order_complex_ideal(poset)
    return sorted(m for m in _sting_candidates(poset, ideal)
                  if is_sting_chain(poset, ideal, m))


def _span(ideal: MonomialIdeal, mask: int) -> tuple:
    support = [v for v in range(ideal.n) if any(ideal.gens[k][v] for k in bits(mask))]
    return support[0], support[-1]


def sting_chain_sets(poset: Poset, ideal: MonomialIdeal | None = None) -> list:
    """The set B of chains of sting-chains, as generator masks.

    Consecutive sting-chains must satisfy ``max(I_j) < min(I_{j+1})``; the
    union mask is returned for each chain.
    """
    ideal = ideal or order_complex_ideal(poset)
    chains = sting_chains(poset, ideal)
    spans = {m: _span(ideal, m) for m in chains}
    by_min = sorted(chains, key=lambda m: spans[m])
    mins = [spans[m][0] for m in by_min]
    out = []

    def extend(mask, after):
        for m in by_min[bisect_right(mins, after):]:
            out.append(mask | m)
            extend(mask | m, spans[m][1])

    extend(0, -1)
    if len(set(out)) != len(out):
        raise AssertionError("chains of sting-chains are not determined by their union")
    return sorted(out)


def W_sum(ideal: MonomialIdeal, masks) -> MGPoly:
    """``1 + Σ (−1)^{cl} m_I t^{cl+|I|}`` over ``masks`` (empty mask ignored)."""
    n = ideal.n
    terms = {((0,) * n, 0, 0): 1}
    for m in masks:
        if not m:
            continue
        cl = ideal.cl(m)
        key = (ideal.lcm(m), cl + popcount(m), 0)
        terms[key] = terms.get(key, 0) + (-1) ** cl
    return MGPoly(n, terms)


METHODS = ("recursion", "sting-chains", "nbc", "path-coeffs")


def W_poly(poset: Poset, method: str = "recursion") -> MGPoly:
    if method == "recursion":
        return W_recursion(poset)
    if method == "path-coeffs":
        return W_path_coefficients(poset)
    ideal = order_complex_ideal(poset)
    if method == "sting-chains":
        return W_sum(ideal, sting_chain_sets(poset, ideal))
    if method == "nbc":
        if not ideal.l:
            return MGPoly.const(poset.p)
        return W_sum(ideal, nbc_sets_dfs(ideal))
    raise ValueError(f"unknown method {method!r}; choose from {METHODS}")


def sting_chain_counts(poset: Poset) -> dict:
    """Number of sting-chains per lcm support (as a tuple of elements)."""
    ideal = order_complex_ideal(poset)
    out = {}
    for m in sting_chains(poset, ideal):
        supp = tuple(v for v in range(poset.p) if any(ideal.gens[k][v] for k in bits(m)))
        out[supp] = out.get(supp, 0) + 1
    return out
