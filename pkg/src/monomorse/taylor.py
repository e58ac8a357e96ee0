"""The Taylor complex of a monomial ideal and acyclic matchings on it.

Cells of the Taylor complex are labelled by generator bitmasks.  With
``augmented=False`` (default) the subset ``I`` sits in homological degree
``|I| - 1`` and the complex resolves the ideal; ``augmented=True`` adds the
empty set and uses degree ``|I|`` so that it resolves ``S / a``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations

from .linalg import Field, QQ
from .monomial import (MonomialIdeal, bits, canonical_key, coprime, divides,
                       mono_lcm, mono_str, popcount)
from .morse import (BasedComplex, Cell, Matching,
                    morse_complex, validate_matching)

log = logging.getLogger(__name__)

POLICIES = ("lexfirst", "maskfirst")


class NonTermination(RuntimeError):
    pass


class PreconditionError(ValueError):
    pass


@dataclass
class SubsetTable:
    """lcm and cl of every generator subset, indexed by mask."""

    ideal: MonomialIdeal
    lcm: list
    cl: list

    @classmethod
    def build(cls, ideal: MonomialIdeal) -> "SubsetTable":
        l = ideal.l
        lcm = [ideal.lcm(0)] * (1 << l)
        cl = [0] * (1 << l)
        for mask in range(1, 1 << l):
            low = (mask & -mask).bit_length() - 1
            lcm[mask] = mono_lcm(lcm[mask & (mask - 1)], ideal.gens[low])
            cl[mask] = ideal.cl(mask)
        return cls(ideal, lcm, cl)


def taylor_cell(table: SubsetTable, mask: int, augmented: bool = False) -> Cell:
    size = popcount(mask)
    return Cell(size if augmented else size - 1, mask, table.lcm[mask])


def build_taylor(ideal: MonomialIdeal, field: Field = QQ, *, augmented: bool = False,
                 table: SubsetTable | None = None) -> BasedComplex:
    """The Taylor complex with differential ``∂I = Σ ±(m_I/m_{I∖m}) (I∖m)``."""
    table = table or SubsetTable.build(ideal)
    cx = BasedComplex(field, label_str=ideal.mask_str)
    masks = sorted(range(0 if augmented else 1, 1 << ideal.l),
                   key=lambda m: (popcount(m), m))
    cells = {m: taylor_cell(table, m, augmented) for m in masks}
    for m in masks:
        cx.add_cell(cells[m])
    for m in masks:
        bd = {}
        members = bits(m)
        top = len(members) - 1
        for pos, i in enumerate(members):
            sub = m & ~(1 << i)
            if sub or augmented:
                bd[cells[sub]] = -1 if (top - pos) % 2 else 1
        cx.set_boundary(cells[m], bd)
    return cx


# ----------------------------------------------------------------------
# standard matchings


@dataclass
class StandardMatching:
    """A sequence of matchings ``M_1, M_2, ...`` on the Taylor complex.

    ``sequences[i-1]`` lists the edges ``(upper_mask, lower_mask)`` of ``M_i``;
    ``cores[i-1]`` lists the seed pairs (the set ``B_i``).
    """

    ideal: MonomialIdeal
    policy: str
    table: SubsetTable
    sequences: list = field(default_factory=list)
    cores: list = field(default_factory=list)
    final: BasedComplex | None = None
    minimal: bool = False
    log: list = field(default_factory=list)
    stages: list = field(default_factory=list)
    batches: list = field(default_factory=list)  # (seq, edges) in the order applied

    def matched(self, upto: int | None = None) -> set:
        """Masks matched in sequences ``1 .. upto - 1`` (all when None)."""
        seqs = self.sequences if upto is None else self.sequences[:max(upto - 1, 0)]
        return {m for s in seqs for e in s for m in e}

    def survivors(self, upto: int | None = None) -> list:
        """Nonempty masks not matched in ``M_{<upto}``."""
        gone = self.matched(upto)
        return [m for m in range(1, 1 << self.ideal.l) if m not in gone]

    def edges(self):
        for i, s in enumerate(self.sequences, start=1):
            for u, l in s:
                yield i, u, l

    def dump(self) -> str:
        lines = []
        for i, u, l in self.edges():
            lines.append(f"seq={i} {u:#0{self.ideal.l + 2}b} -> {l:#0{self.ideal.l + 2}b} "
                         f"[{mono_str(self.table.lcm[u])}]")
        return "\n".join(lines)


def _policy_key(policy: str, table: SubsetTable):
    if policy == "lexfirst":
        return lambda pair: (canonical_key(table.lcm[pair[1]]), pair[1], pair[0])
    if policy == "maskfirst":
        return lambda pair: (popcount(pair[1]), -pair[1], pair[0])
    raise ValueError(f"unknown policy {policy!r}; choose from {POLICIES}")


def _matchable_pairs(cx: BasedComplex) -> list:
    return [(c.label, t.label) for c, t in cx.equal_degree_entries()]


def _has_proper_submask(mask: int, pool: set) -> bool:
    if (1 << popcount(mask)) < len(pool):
        sub = (mask - 1) & mask
        while sub:
            if sub in pool:
                return True
            sub = (sub - 1) & mask
        return False
    return any(p != mask and p & mask == p for p in pool)


def _build_standard(ideal: MonomialIdeal, policy: str, field: Field,
                    max_iter: int, max_seq: int | None = None) -> StandardMatching:
    table = SubsetTable.build(ideal)
    key = _policy_key(policy, table)
    sm = StandardMatching(ideal, policy, table)
    cx = build_taylor(ideal, field, table=table)
    cell_of = {c.label: c for c in cx.diff}
    l = ideal.l
    full = ideal.full_mask
    iters = 0
    seq = 1
    while seq <= max(l, 1):
        edges_i, cores_i = [], []
        while True:
            iters += 1
            if iters > max_iter:
                raise NonTermination(
                    f"standard matching exceeded {max_iter} iterations\n" + cx.dump())
            pairs = _matchable_pairs(cx)
            if not pairs:
                break
            participants = {m for pr in pairs for m in pr}
            cands = [(u, lo) for u, lo in pairs
                     if table.cl[u] == 1 and table.cl[lo] == seq]
            strict = [(u, lo) for u, lo in cands if not _has_proper_submask(lo, participants)]
            if not strict and cands:
                sm.log.append(f"seq={seq}: subset condition relaxed")
                strict = cands
            if not strict:
                break
            u0, l0 = min(strict, key=key)
            batch = Matching()
            used = set()
            rest = full & ~u0
            coef = cx.diff
            # the seed itself is K = 0
            sub = rest
            ks = []
            while True:
                ks.append(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & rest
            for k in sorted(ks):
                if k and not coprime(table.lcm[k], table.lcm[u0]):
                    continue
                up, lo = u0 | k, l0 | k
                cu, cl_ = cell_of.get(up), cell_of.get(lo)
                if cu is None or cl_ is None or up in used or lo in used:
                    continue
                if coef[cu].get(cl_, 0) == 0 or cu.mdeg != cl_.mdeg:
                    continue
                batch.add(cu, cl_, seq)
                used.update((up, lo))
            rep = validate_matching(cx, batch)
            if not rep.ok:
                sm.log.append(f"seq={seq}: translate batch of {l0:#b} rejected "
                              f"({'; '.join(rep.problems)}); matching seed only")
                batch = Matching()
                batch.add(cell_of[u0], cell_of[l0], seq)
            cores_i.append((u0, l0))
            applied = [(u.label, lo.label) for u, lo in batch.edges]
            edges_i.extend(applied)
            sm.batches.append((seq, applied))
            cx = morse_complex(cx, batch, check=False)
            cell_of = {c.label: c for c in cx.diff}
        sm.sequences.append(edges_i)
        sm.cores.append(cores_i)
        sm.stages.append(cx)
        if cx.is_minimal() or seq == max_seq:
            break
        seq += 1
    # drop trailing empty sequences but keep at least M_1
    while len(sm.sequences) > 1 and not sm.sequences[-1]:
        sm.sequences.pop()
        sm.cores.pop()
    sm.final = cx
    sm.minimal = cx.is_minimal()
    return sm


def standard_matching(ideal: MonomialIdeal, policy: str = "lexfirst", field: Field = QQ,
                      *, max_iter: int = 100000, restart: bool = True) -> StandardMatching:
    """Greedy construction of a standard matching on the Taylor complex.

    If the chosen policy ends in a non-minimal complex, the alternate policy is
    tried; if that fails too the non-minimal result is returned with
    ``minimal=False`` and the leftover entries recorded in ``log``.
    """
    sm = _build_standard(ideal, policy, field, max_iter)
    if sm.minimal or not restart:
        return sm
    other = [p for p in POLICIES if p != policy][0]
    alt = _build_standard(ideal, other, field, max_iter)
    if alt.minimal:
        alt.log.insert(0, f"policy {policy} ended non-minimal; restarted with {other}")
        return alt
    left = sm.final.equal_degree_entries()
    sm.log.append("non-minimal: " + ", ".join(
        f"{ideal.mask_str(c.label)}->{ideal.mask_str(t.label)}" for c, t in left))
    return sm


def series_sum_terms(ideal: MonomialIdeal, masks, table: SubsetTable | None = None):
    """``(lcm, cl, size)`` triples for the given masks."""
    table = table or SubsetTable.build(ideal)
    return [(table.lcm[m], table.cl[m], popcount(m)) for m in masks]


# ----------------------------------------------------------------------
# degree-two ideals: nbc matchings


def _require_quadratic(ideal: MonomialIdeal) -> None:
    for g in ideal.gens:
        if sum(g) != 2 or max(g) > 1:
            raise PreconditionError(
                f"generator {mono_str(g)} is not a squarefree monomial of degree 2")


def edge_rank(ideal: MonomialIdeal, order=None) -> list:
    """Rank of every generator in the monomial order (larger = bigger).

    ``order=None`` means lex with ``x1 > x2 > ... > xn``; otherwise ``order``
    is a key function on exponent tuples.
    """
    key = order or (lambda g: g)
    ranked = sorted(range(ideal.l), key=lambda i: key(ideal.gens[i]))
    rank = [0] * ideal.l
    for r, i in enumerate(ranked):
        rank[i] = r
    return rank


def _edges(ideal: MonomialIdeal) -> list:
    return [tuple(i for i, e in enumerate(g) if e) for g in ideal.gens]


def circuits(ideal: MonomialIdeal) -> list:
    """Edge masks of all cycles in the graph of a quadratic squarefree ideal."""
    _require_quadratic(ideal)
    edges = _edges(ideal)
    out = []
    for mask in range(1, 1 << ideal.l):
        if popcount(mask) < 3:
            continue
        deg = {}
        for i in bits(mask):
            for v in edges[i]:
                deg[v] = deg.get(v, 0) + 1
        if any(d != 2 for d in deg.values()):
            continue
        if ideal.cl(mask) == 1:
            out.append(mask)
    return out


def broken_circuits(ideal: MonomialIdeal, order=None) -> list:
    rank = edge_rank(ideal, order)
    out = set()
    for c in circuits(ideal):
        top = max(bits(c), key=lambda i: rank[i])
        out.add(c & ~(1 << top))
    return sorted(out)


def is_nbc(mask: int, bcs: list) -> bool:
    return not any(b & mask == b for b in bcs)


def nbc_sets(ideal: MonomialIdeal, order=None) -> list:
    """All nbc-sets (including the empty set), by brute force over subsets."""
    bcs = broken_circuits(ideal, order)
    return [m for m in range(1 << ideal.l) if is_nbc(m, bcs)]


def nbc_sets_dfs(ideal: MonomialIdeal, order=None) -> list:
    """nbc-sets via depth-first growth of forests.

    A forest ``F`` contains a broken circuit iff some edge outside ``F`` joins
    two vertices of one tree and exceeds every edge on the tree path between
    them.  nbc-sets form a simplicial complex, so failing branches are pruned.
    """
    _require_quadratic(ideal)
    rank = edge_rank(ideal, order)
    edges = _edges(ideal)
    l = ideal.l
    out = []

    def adjacency(mask):
        adj = {}
        for i in bits(mask):
            a, b = edges[i]
            adj.setdefault(a, []).append((b, i))
            adj.setdefault(b, []).append((a, i))
        return adj

    def path_max(adj, a, b):
        # largest rank on the forest path a..b, None if disconnected
        stack, seen = [(a, -1)], {a}
        while stack:
            v, best = stack.pop()
            if v == b:
                return best
            for w, ei in adj.get(v, ()):
                if w not in seen:
                    seen.add(w)
                    stack.append((w, max(best, rank[ei])))
        return None

    def admissible(mask, j):
        a, b = edges[j]
        if path_max(adjacency(mask), a, b) is not None:
            return False
        grown = mask | 1 << j
        adj = adjacency(grown)
        for e in range(l):
            if grown >> e & 1:
                continue
            pm = path_max(adj, *edges[e])
            if pm is not None and pm < rank[e]:
                return False
        return True

    def grow(mask, start):
        out.append(mask)
        for j in range(start, l):
            if admissible(mask, j):
                grow(mask | 1 << j, j + 1)

    grow(0, 0)
    return sorted(out)


def nbc_matching(ideal: MonomialIdeal, order=None, field: Field = QQ):
    """First standard sequence for a quadratic squarefree ideal.

    Repeatedly takes a largest circuit ``Z`` still present and matches
    ``Z ∪ I -> (Z ∖ max Z) ∪ I`` for all disjoint ``I``.  Returns the matching
    (on the Taylor complex) and the surviving masks, which are the nbc-sets.
    """
    _require_quadratic(ideal)
    rank = edge_rank(ideal, order)
    table = SubsetTable.build(ideal)
    cx = build_taylor(ideal, field, table=table)
    cell_of = {c.label: c for c in cx.diff}
    full = ideal.full_mask
    matched = set()
    m = Matching()
    for z in sorted(circuits(ideal), key=lambda c: (-popcount(c), c)):
        if z in matched:
            continue
        top = max(bits(z), key=lambda i: rank[i])
        zlow = z & ~(1 << top)
        rest = full & ~z
        sub = rest
        while True:
            up, lo = z | sub, zlow | sub
            if up not in matched and lo not in matched:
                m.add(cell_of[up], cell_of[lo], 1)
                matched.update((up, lo))
            if sub == 0:
                break
            sub = (sub - 1) & rest
    survivors = [0] + [c for c in range(1, 1 << ideal.l) if c not in matched]
    return m, survivors


# ----------------------------------------------------------------------
# gcd-condition matchings


def strong_gcd_violation(ideal: MonomialIdeal, order: list):
    """First coprime pair ``m ≺ n`` with no admissible ``u``, or None."""
    pos = {g: k for k, g in enumerate(order)}
    if sorted(order) != list(range(ideal.l)):
        raise ValueError("order must be a permutation of generator indices")
    gens = ideal.gens
    for a, b in combinations(order, 2):
        if not coprime(gens[a], gens[b]):
            continue
        lc = mono_lcm(gens[a], gens[b])
        if not any(u not in (a, b) and pos[u] > pos[a] and divides(gens[u], lc)
                   for u in range(ideal.l)):
            return a, b
    return None


def gcd_matching(ideal: MonomialIdeal, order: list, field: Field = QQ) -> Matching:
    """Acyclic matching on the Taylor complex whose critical cells all have cl = 1.

    ``order`` lists generator indices from smallest to largest and must witness
    the strong gcd-condition.
    """
    bad = strong_gcd_violation(ideal, order)
    if bad is not None:
        a, b = bad
        raise PreconditionError(
            f"order fails the strong gcd-condition at coprime pair "
            f"({mono_str(ideal.gens[a])}, {mono_str(ideal.gens[b])})")
    table = SubsetTable.build(ideal)
    cx = build_taylor(ideal, field, table=table)
    cell_of = {c.label: c for c in cx.diff}
    gens = ideal.gens
    full = ideal.full_mask
    matched = set()
    m = Matching()
    for stage, a in enumerate(order):
        for b in order[stage + 1:]:
            if not coprime(gens[a], gens[b]):
                continue
            lc = mono_lcm(gens[a], gens[b])
            u = next(u for u in order[stage + 1:]
                     if u != b and divides(gens[u], lc))
            base = (1 << a) | (1 << b)
            rest = full & ~(base | 1 << u)
            sub = rest
            while True:
                lo = base | sub
                up = lo | 1 << u
                if (up not in matched and lo not in matched
                        and (stage == 0 or table.cl[lo] >= 2)):
                    m.add(cell_of[up], cell_of[lo], stage + 1)
                    matched.update((up, lo))
                if sub == 0:
                    break
                sub = (sub - 1) & rest
    return m
