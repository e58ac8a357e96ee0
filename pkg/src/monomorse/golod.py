"""Golod classification of monomial quotients ``A = S/a``.

Sufficient criteria (pairwise non-coprime generators, strong gcd-condition,
low Betti degrees) and obstructions (failing gcd-condition, nontrivial Koszul
product, a deficit of ``Tor^A(k, k)`` against the Golod bound) are evaluated
independently; the verdict records which one decided.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .linalg import Field, QQ
from .monomial import MonomialIdeal, coprime, divides, mono_lcm, mono_str
from .oracles import koszul_homology, product_trivial, tor_A_kk
from .series import golod_series

GOLOD = "golod"
NOT_GOLOD = "not-golod"
UNDETERMINED = "undetermined"

STRONG_GCD_CAP = 12


def coprime_pairs(ideal: MonomialIdeal) -> list:
    return [(a, b) for a, b in combinations(range(ideal.l), 2)
            if coprime(ideal.gens[a], ideal.gens[b])]


def gcd_condition(ideal: MonomialIdeal) -> bool:
    return gcd_condition_witness(ideal) is None


def gcd_condition_witness(ideal: MonomialIdeal):
    """A coprime pair with no third generator dividing its lcm, or None."""
    gens = ideal.gens
    for a, b in coprime_pairs(ideal):
        lc = mono_lcm(gens[a], gens[b])
        if not any(u not in (a, b) and divides(gens[u], lc) for u in range(ideal.l)):
            return a, b
    return None


@dataclass
class StrongGcdResult:
    status: str  # "found", "none" or "undetermined"
    order: list | None = None

    @property
    def found(self) -> bool:
        return self.status == "found"


def strong_gcd_condition(ideal: MonomialIdeal, cap: int = STRONG_GCD_CAP) -> StrongGcdResult:
    """Search for a linear order witnessing the strong gcd-condition.

    Generators are placed smallest first.  Placing ``m`` is allowed when every
    coprime partner ``n`` still to be placed has a ``u`` still to be placed
    (``u ≠ n``) dividing ``lcm(m, n)``.  Feasibility only depends on the set of
    generators left, so that set is memoized.
    """
    l = ideal.l
    if l > cap:
        return StrongGcdResult("undetermined")
    gens = ideal.gens
    divs = {}
    for a, b in coprime_pairs(ideal):
        lc = mono_lcm(gens[a], gens[b])
        m = sum(1 << u for u in range(l) if u not in (a, b) and divides(gens[u], lc))
        divs[(a, b)] = divs[(b, a)] = m
    partners = [[b for b in range(l) if (a, b) in divs] for a in range(l)]

    def placeable(a, rest):
        return all(divs[(a, b)] & rest & ~(1 << b) for b in partners[a] if rest >> b & 1)

    @lru_cache(maxsize=None)
    def solve(rest):
        if not rest:
            return ()
        for a in range(l):
            if rest >> a & 1:
                left = rest & ~(1 << a)
                if placeable(a, left):
                    tail = solve(left)
                    if tail is not None:
                        return (a,) + tail
        return None

    order = solve((1 << l) - 1)
    return StrongGcdResult("found", list(order)) if order is not None else StrongGcdResult("none")


def is_strong_gcd_order(ideal: MonomialIdeal, order: list) -> bool:
    pos = {g: k for k, g in enumerate(order)}
    gens = ideal.gens
    for a, b in coprime_pairs(ideal):
        if pos[a] > pos[b]:
            a, b = b, a
        lc = mono_lcm(gens[a], gens[b])
        if not any(u != b and pos[u] > pos[a] and divides(gens[u], lc)
                   for u in range(ideal.l)):
            return False
    return True


def lex_order(ideal: MonomialIdeal) -> list:
    """Generator indices from lex-smallest to lex-largest (``x1`` heaviest)."""
    return sorted(range(ideal.l), key=lambda i: ideal.gens[i])


# ----------------------------------------------------------------------


def degree_bound_checks(betti: dict, ideal: MonomialIdeal) -> dict:
    """Both directions of the Betti-degree criterion for equigenerated ideals.

    ``betti`` holds ``dim Tor^S_i(A, k)_α``.  With ``d`` the generator degree,
    ``sufficient`` says every entry with ``i ≥ 1`` has ``|α| − i < 2(d − 1)``;
    ``necessary`` says every entry has ``|α| − i < i(d − 2) + 2``.
    """
    d = ideal.generator_degree()
    if d is None or not ideal.l:
        return {"applicable": False}
    suff = all(sum(a) - i < 2 * (d - 1) for (i, a), b in betti.items() if i >= 1 and b)
    bad = [(i, a) for (i, a), b in betti.items()
           if i >= 1 and b and sum(a) - i >= i * (d - 2) + 2]
    return {"applicable": True, "degree": d, "sufficient": suff,
            "necessary": not bad, "violations": bad}


def series_comparison(ideal: MonomialIdeal, betti: dict, H: int, D: int,
                      field: Field = QQ) -> dict:
    """Compare ``Tor^A(k, k)`` with the Golod bound up to ``(H, D)``."""
    bound = golod_series(betti, ideal.n, D, H)
    tor = tor_A_kk(ideal, H, D, field)
    actual = {(a, i, 0): v for (i, a), v in tor.entries.items()}
    keys = set(actual) | set(bound.terms)
    diffs = sorted((k for k in keys if actual.get(k, 0) != bound.terms.get(k, 0)),
                   key=lambda k: (k[1], sum(k[0]), k[0]))
    first = None
    if diffs:
        k = diffs[0]
        first = {"alpha": list(k[0]), "t": k[1], "tor": actual.get(k, 0),
                 "bound": str(bound.terms.get(k, 0))}
    return {"match": not diffs, "first_difference": first, "partial": tor.partial}


@dataclass
class GolodReport:
    ideal: MonomialIdeal
    pairwise_noncoprime: bool
    gcd_condition: bool
    gcd_witness: tuple | None
    strong_gcd: StrongGcdResult
    product: object
    series: dict | None
    degree_bound: dict
    final: str = UNDETERMINED
    provenance: list = field(default_factory=list)
    conditional: bool = False
    proved_class: str | None = None
    conflicts: list = field(default_factory=list)

    def to_dict(self) -> dict:
        prod = {"trivial": self.product.trivial}
        if self.product.witness:
            c1, c2, expansion = self.product.witness
            prod["witness"] = {
                "left": _cid(c1), "right": _cid(c2),
                "product": [{"class": _cid(c), "coeff": str(a)} for c, a in expansion.items()]}
        gw = None
        if self.gcd_witness:
            gw = [mono_str(self.ideal.gens[k]) for k in self.gcd_witness]
        order = None
        if self.strong_gcd.order is not None:
            order = [mono_str(self.ideal.gens[k]) for k in self.strong_gcd.order]
        return {
            "ideal": str(self.ideal),
            "pairwise_noncoprime": self.pairwise_noncoprime,
            "gcd_condition": {"holds": self.gcd_condition, "failing_pair": gw},
            "strong_gcd": {"status": self.strong_gcd.status, "order": order},
            "product_trivial": prod,
            "series_match": self.series,
            "degree_bound": _jsonable(self.degree_bound),
            "final": self.final,
            "decided_by": self.provenance,
            "conditional": self.conditional,
            "proved_class": self.proved_class,
            "conflicts": self.conflicts,
        }

    def summary(self) -> str:
        lines = [f"ideal: {self.ideal}",
                 f"verdict: {self.final}" + (" (conditional)" if self.conditional else ""),
                 f"decided by: {', '.join(self.provenance) or 'nothing'}",
                 f"pairwise non-coprime: {self.pairwise_noncoprime}",
                 f"gcd-condition: {self.gcd_condition}",
                 f"strong gcd-condition: {self.strong_gcd.status}",
                 f"Koszul product trivial: {self.product.trivial}"]
        if self.series is not None:
            lines.append(f"series match: {self.series['match']}")
        if self.degree_bound.get("applicable"):
            lines.append(f"degree bound: sufficient={self.degree_bound['sufficient']} "
                         f"necessary={self.degree_bound['necessary']}")
        if self.proved_class:
            lines.append(f"proved class: {self.proved_class}")
        for c in self.conflicts:
            lines.append(f"conflict: {c}")
        return "\n".join(lines)


def _cid(c):
    i, a, k = c
    return {"i": i, "alpha": list(a), "index": k}


def _jsonable(d):
    out = {}
    for k, v in d.items():
        if k == "violations":
            v = [{"i": i, "alpha": list(a)} for i, a in v]
        out[k] = v
    return out


def _proved_class(ideal: MonomialIdeal, betti: dict) -> str | None:
    if ideal.is_squarefree() and ideal.generator_degree() == 2:
        return "generated in degree two"
    taylor_betti = sum(b for (i, _), b in betti.items() if i >= 1)
    if taylor_betti == (1 << ideal.l) - 1:
        return "Taylor resolution minimal"
    return None


def golod_verdict(ideal: MonomialIdeal, H: int = 6, D: int = 8, field: Field = QQ,
                  *, series: bool = True) -> GolodReport:
    betti, basis = koszul_homology(ideal, field)
    pw = not coprime_pairs(ideal)
    gw = gcd_condition_witness(ideal)
    sg = strong_gcd_condition(ideal)
    prod = product_trivial(ideal, field, basis)
    # the Golod bound is only meaningful for a inside the square of the maximal ideal
    linear = any(sum(g) < 2 for g in ideal.gens)
    ser = (series_comparison(ideal, betti.entries, H, D, field)
           if series and not linear else None)
    deg = degree_bound_checks(betti.entries, ideal)
    rep = GolodReport(ideal, pw, gw is None, gw, sg, prod, ser, deg,
                      proved_class=_proved_class(ideal, betti.entries))

    pro, con = [], []
    if pw:
        pro.append("pairwise non-coprime generators")
    if deg.get("applicable") and deg["sufficient"]:
        pro.append("Betti degree bound")
    if sg.found:
        pro.append("strong gcd-condition")
    if gw is not None:
        con.append("gcd-condition fails")
    if not prod.trivial:
        con.append("nontrivial Koszul product")
    if ser is not None and not ser["match"]:
        con.append("Tor^A(k,k) below the Golod bound")
    if deg.get("applicable") and not deg["necessary"]:
        con.append("Betti degree bound violated")

    if pro and con:
        rep.final = UNDETERMINED
        rep.conflicts = [f"{p} vs {c}" for p in pro for c in con]
        rep.provenance = pro + con
    elif con:
        rep.final = NOT_GOLOD
        rep.provenance = con
    elif pro:
        rep.final = GOLOD
        rep.provenance = pro
        # only the strong gcd route leans on the closed-form conjecture
        rep.conditional = pro == ["strong gcd-condition"] and rep.proved_class is None
    elif ser is not None and ser["match"] and prod.trivial:
        rep.final = GOLOD
        rep.provenance = [f"series equality at H={H}, D={D}", "trivial Koszul product"]
        rep.conditional = True
    return rep
