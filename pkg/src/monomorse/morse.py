"""Finitely based multigraded chain complexes and algebraic discrete Morse theory.

A :class:`BasedComplex` stores, for every cell, its boundary as a dict of
nonzero field scalars.  The monomial part of each coefficient is implied by
homogeneity: ``[c:c']`` carries ``mdeg(c) / mdeg(c')``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any, Callable, NamedTuple

from .linalg import Field, QQ, rank
from .monomial import Monomial, divides, mono_div, mono_str


class ComplexError(ValueError):
    pass


class MatchingError(ValueError):
    pass


class Cell(NamedTuple):
    deg: int
    label: Any
    mdeg: Monomial


@dataclass(frozen=True)
class Coefficient:
    scalar: Any
    monomial: Monomial

    def is_unit(self) -> bool:
        return self.scalar != 0 and not any(self.monomial)


class BasedComplex:
    """Chain complex of free modules with a chosen multigraded basis."""

    def __init__(self, field: Field = QQ, label_str: Callable | None = None):
        self.field = field
        self.cells: dict = defaultdict(list)
        self.diff: dict = {}
        self.label_str = label_str or str

    # -- construction --------------------------------------------------
    def add_cell(self, cell: Cell) -> Cell:
        if cell in self.diff:
            raise ComplexError(f"duplicate cell {cell}")
        self.cells[cell.deg].append(cell)
        self.diff[cell] = {}
        return cell

    def set_boundary(self, cell: Cell, boundary: dict) -> None:
        out = {}
        p = self.field.char
        for tgt, a in boundary.items():
            if p:
                a = self.field(a)
            if a == 0:
                continue
            if tgt.deg != cell.deg - 1:
                raise ComplexError(f"{cell} -> {tgt} does not drop degree by one")
            if not divides(tgt.mdeg, cell.mdeg):
                raise ComplexError(f"{cell} -> {tgt} is not homogeneous")
            out[tgt] = a
        self.diff[cell] = out

    # -- queries -------------------------------------------------------
    def degrees(self) -> list:
        return sorted(d for d, cs in self.cells.items() if cs)

    def all_cells(self) -> list:
        return [c for d in self.degrees() for c in self.cells[d]]

    def coefficient(self, src: Cell, tgt: Cell) -> Coefficient:
        a = self.diff[src].get(tgt, 0)
        return Coefficient(a, mono_div(src.mdeg, tgt.mdeg))

    def ranks(self) -> dict:
        return {d: len(self.cells[d]) for d in self.degrees()}

    def cell_counts(self) -> dict:
        """Counts per ``(degree, multidegree)``."""
        out = defaultdict(int)
        for c in self.diff:
            out[(c.deg, c.mdeg)] += 1
        return dict(out)

    def equal_degree_entries(self) -> list:
        """Differential entries between cells of equal multidegree."""
        return [(c, t) for c, bd in self.diff.items() for t in bd if t.mdeg == c.mdeg]

    def is_minimal(self) -> bool:
        return not self.equal_degree_entries()

    def d_squared_is_zero(self) -> bool:
        p = self.field.char
        for c, bd in self.diff.items():
            acc = {}
            for v, a in bd.items():
                for w, b in self.diff[v].items():
                    x = acc.get(w, 0) + a * b
                    if p:
                        x %= p
                    acc[w] = x
            if any(acc.values()):
                return False
        return True

    def euler_by_mdeg(self) -> dict:
        out = defaultdict(int)
        for c in self.diff:
            out[c.mdeg] += -1 if c.deg % 2 else 1
        return {k: v for k, v in out.items() if v}

    def tensor_with_field(self) -> "BasedComplex":
        """``C ⊗_S k``: drop every entry whose coefficient is a non-unit monomial."""
        out = BasedComplex(self.field, self.label_str)
        out.cells = defaultdict(list, {d: list(cs) for d, cs in self.cells.items()})
        out.diff = {c: {t: a for t, a in bd.items() if t.mdeg == c.mdeg}
                    for c, bd in self.diff.items()}
        return out

    def dump(self) -> str:
        """Deterministic text dump of the differential."""
        lines = []
        for d in self.degrees():
            lines.append(f"degree {d}:")
            for c in self.cells[d]:
                terms = " ".join(
                    f"({a}, {mono_str(mono_div(c.mdeg, t.mdeg))}, {self.label_str(t.label)})"
                    for t, a in sorted(self.diff[c].items(), key=lambda kv: _label_key(kv[0])))
                lines.append(f"  {self.label_str(c.label)} [{mono_str(c.mdeg)}] -> {terms}".rstrip())
        return "\n".join(lines)


def _label_key(c: Cell):
    return (c.deg, repr(c.label) if not isinstance(c.label, int) else c.label)


# ----------------------------------------------------------------------
# matchings


@dataclass
class Matching:
    """Edges ``(upper, lower)``; ``seq[k]`` tags edge ``k`` with its sequence index."""

    edges: list = field(default_factory=list)
    seq: list = field(default_factory=list)

    def add(self, upper: Cell, lower: Cell, seq: int = 1) -> None:
        self.edges.append((upper, lower))
        self.seq.append(seq)

    def __len__(self):
        return len(self.edges)

    def matched_cells(self) -> set:
        return {c for e in self.edges for c in e}

    def partner(self) -> dict:
        out = {}
        for u, l in self.edges:
            out[u] = l
            out[l] = u
        return out


@dataclass
class ValidationReport:
    matching_ok: bool = True
    invertible_ok: bool = True
    acyclic_ok: bool = True
    problems: list = field(default_factory=list)
    cycle: list | None = None

    @property
    def ok(self) -> bool:
        return self.matching_ok and self.invertible_ok and self.acyclic_ok


def _layer_graph(cx: BasedComplex, up_of: dict, deg: int) -> dict:
    """Successor lists on lower cells of degree ``deg - 1`` matched upward.

    ``v -> v'`` whenever ``v`` is matched with ``u`` and ``[u:v'] != 0``.
    """
    succ = {}
    for v, u in up_of.items():
        if v.deg != deg - 1:
            continue
        succ[v] = [w for w in cx.diff[u] if w != v and w in up_of]
    return succ


def _find_cycle(succ: dict):
    color = {}
    for root in succ:
        if root in color:
            continue
        stack = [(root, iter(succ[root]))]
        color[root] = 1
        path = [root]
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[node] = 2
                stack.pop()
                path.pop()
                continue
            st = color.get(nxt)
            if st is None:
                color[nxt] = 1
                stack.append((nxt, iter(succ.get(nxt, ()))))
                path.append(nxt)
            elif st == 1:
                return path[path.index(nxt):] + [nxt]
    return None


def validate_matching(cx: BasedComplex, m: Matching) -> ValidationReport:
    rep = ValidationReport()
    seen = set()
    for u, l in m.edges:
        for c in (u, l):
            if c not in cx.diff:
                raise MatchingError(f"dangling cell reference {c}")
            if c in seen:
                rep.matching_ok = False
                rep.problems.append(f"cell {cx.label_str(c.label)} lies in more than one edge")
            seen.add(c)
        if u.deg != l.deg + 1:
            rep.matching_ok = False
            rep.problems.append(f"edge {u} -> {l} does not join adjacent degrees")
            continue
        coef = cx.coefficient(u, l)
        if not coef.is_unit():
            rep.invertible_ok = False
            rep.problems.append(
                f"edge {cx.label_str(u.label)} -> {cx.label_str(l.label)} has non-invertible "
                f"weight {coef.scalar}*{mono_str(coef.monomial)}")
    if not rep.matching_ok:
        return rep
    up_of = {l: u for u, l in m.edges}
    for deg in sorted({u.deg for u, _ in m.edges}):
        cyc = _find_cycle(_layer_graph(cx, up_of, deg))
        if cyc:
            rep.acyclic_ok = False
            witness = []
            for v in cyc[:-1]:
                witness.extend([v, up_of[v]])
            witness.append(cyc[-1])
            rep.cycle = witness
            rep.problems.append("directed cycle: " + " -> ".join(
                cx.label_str(c.label) for c in witness))
            break
    return rep


def _topo_order(succ: dict, reverse_ties: bool = False) -> list:
    """Kahn order (sources first) with deterministic tie-breaking."""
    indeg = {v: 0 for v in succ}
    for v, ws in succ.items():
        for w in ws:
            indeg[w] += 1
    key = _label_key
    ready = sorted((v for v, d in indeg.items() if d == 0), key=key, reverse=reverse_ties)
    out = []
    while ready:
        v = ready.pop(0)
        out.append(v)
        fresh = []
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                fresh.append(w)
        if fresh:
            ready = sorted(ready + fresh, key=key, reverse=reverse_ties)
    if len(out) != len(succ):
        raise MatchingError("matching is not acyclic")
    return out


def morse_complex(cx: BasedComplex, m: Matching, *, reverse_ties: bool = False,
                  check: bool = True) -> BasedComplex:
    """The Morse complex of ``cx`` with respect to the acyclic matching ``m``.

    The differential entry between critical cells is the weighted path sum
    over the matched digraph, evaluated by memoized dynamic programming over a
    topological order of each layer.
    """
    if check:
        rep = validate_matching(cx, m)
        if not rep.ok:
            raise MatchingError("; ".join(rep.problems))
    p = cx.field.char
    matched = m.matched_cells()
    up_of = {l: u for u, l in m.edges}
    out = BasedComplex(cx.field, cx.label_str)
    for d in cx.degrees():
        for c in cx.cells[d]:
            if c not in matched:
                out.add_cell(c)
    for deg in out.degrees():
        succ = _layer_graph(cx, up_of, deg)
        order = _topo_order(succ, reverse_ties)
        # phi[v]: path sums from lower cell v to critical cells of degree deg-1
        phi = {}
        for v in reversed(order):
            u = up_of[v]
            bd = cx.diff[u]
            scale = -cx.field.inv(bd[v])
            acc = {}
            for w, a in bd.items():
                if w == v:
                    continue
                contrib = _phi_of(w, phi, matched)
                if not contrib:
                    continue
                f = scale * a
                for t, b in contrib.items():
                    x = acc.get(t, 0) + f * b
                    if p:
                        x %= p
                    acc[t] = x
            phi[v] = {t: a for t, a in acc.items() if a}
        for c in out.cells[deg]:
            acc = {}
            for v, a in cx.diff[c].items():
                contrib = _phi_of(v, phi, matched)
                for t, b in contrib.items():
                    x = acc.get(t, 0) + a * b
                    if p:
                        x %= p
                    acc[t] = x
            out.diff[c] = {t: a for t, a in acc.items() if a}
    return out


_EMPTY = {}


def _phi_of(v: Cell, phi: dict, matched: set) -> dict:
    if v not in matched:
        return {v: 1}
    return phi.get(v, _EMPTY)


def complex_homology(cx: BasedComplex) -> dict:
    """Ranks of homology per ``(degree, multidegree)`` for a complex over k.

    Every differential entry must have identity monomial (apply
    :meth:`BasedComplex.tensor_with_field` first).
    """
    for c, t in ((c, t) for c, bd in cx.diff.items() for t in bd):
        if c.mdeg != t.mdeg:
            raise ComplexError("complex has non-scalar coefficients; tensor with k first")
    by = defaultdict(lambda: defaultdict(list))
    for c in cx.diff:
        by[c.mdeg][c.deg].append(c)
    out = {}
    for md, layers in by.items():
        rk = {}
        for d, cs in layers.items():
            if d - 1 in layers:
                index = {t: k for k, t in enumerate(layers[d - 1])}
                cols = [{index[t]: a for t, a in cx.diff[c].items()} for c in cs]
                rk[d] = rank(cols, cx.field)
            else:
                rk[d] = 0
        for d, cs in layers.items():
            h = len(cs) - rk[d] - rk.get(d + 1, 0)
            if h:
                out[(d, md)] = h
    return out
