"""The built-in corpus of ideals and posets shipped in ``monomorse/data``."""

from __future__ import annotations

import random
from importlib import resources

from .io import parse_ideal, parse_poset
from .monomial import MonomialIdeal
from .taylor import SubsetTable

# hand-assigned families; derived properties (degree two, Taylor-minimal) are
# computed by the predicates below instead
FAMILIES = {
    "5gon": {"gorenstein"},
    "ci2": {"complete-intersection"},
    "ci_squares": {"complete-intersection"},
    "ci_mixed": {"complete-intersection"},
    "path4": {"strong-gcd"},
    "star": {"strong-gcd"},
    "sqfree_stable4": {"stable-type", "strong-gcd"},
    "sqfree_stable5": {"stable-type", "strong-gcd"},
    "sqfree_stable_cubic": {"stable-type", "strong-gcd"},
    "triangle": {"stable-type", "strong-gcd"},
    "x2": {"sanity"},
}


def _data():
    return resources.files("monomorse") / "data"


def names(kind: str = "ideal") -> list:
    return sorted(p.name[: -len(kind) - 1] for p in _data().iterdir()
                  if p.name.endswith("." + kind))


def ideal(name: str) -> MonomialIdeal:
    path = _data() / f"{name}.ideal"
    return parse_ideal(path.read_text(), source=f"{name}.ideal")


def poset(name: str):
    path = _data() / f"{name}.poset"
    return parse_poset(path.read_text(), source=f"{name}.poset")


def ideals() -> dict:
    return {n: ideal(n) for n in names("ideal")}


def posets() -> dict:
    return {n: poset(n) for n in names("poset")}


def family(name: str) -> set:
    return set(FAMILIES.get(name, ()))


def is_degree_two(a: MonomialIdeal) -> bool:
    return a.l > 0 and all(sum(g) == 2 for g in a.gens)


def is_taylor_minimal(a: MonomialIdeal) -> bool:
    """No subset shares its lcm with a subset missing one element."""
    table = SubsetTable.build(a)
    for m in range(1, 1 << a.l):
        sub = m
        while sub:
            low = sub & -sub
            if table.lcm[m] == table.lcm[m & ~low]:
                return False
            sub &= sub - 1
    return True


def random_ideal(rng: random.Random, n_range=(2, 5), l_range=(2, 8),
                 degrees=(2, 2, 3, 3, 4), max_exp: int | None = None) -> MonomialIdeal:
    """A random minimal monomial ideal with ``n`` and ``l`` in the given ranges."""
    n = rng.randint(*n_range)
    target = rng.randint(*l_range)
    gens = []
    for _ in range(200):
        d = rng.choice(degrees)
        e = [0] * n
        for _ in range(d):
            e[rng.randrange(n)] += 1
        if max_exp is not None and max(e) > max_exp:
            continue
        cand = MonomialIdeal.from_monomials(gens + [tuple(e)], n)
        if cand.l > l_range[1]:
            continue
        gens = list(cand.gens)
        if len(gens) >= target:
            break
    return MonomialIdeal.from_monomials(gens, n)


def random_ideals(count: int, seed: int = 0, **kw) -> list:
    rng = random.Random(seed)
    return [random_ideal(rng, **kw) for _ in range(count)]
