"""Monomials, monomial ideals, generator subsets and polarization.

Monomials are plain tuples of nonnegative exponents.  Generator subsets are
bitmasks over the (ordered) minimal generating system of an ideal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

Monomial = tuple  # tuple[int, ...]

MAX_GENERATORS = 24


class IdealError(ValueError):
    """Invalid monomial data (unit ideal, length mismatch, ...)."""


class GeneratorOverflow(IdealError):
    """Too many generators for bitmask-indexed subsets."""


def one(n: int) -> Monomial:
    return (0,) * n


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x >= y else y for x, y in zip(a, b))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    """a / b, assuming b divides a."""
    return tuple(x - y for x, y in zip(a, b))


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def coprime(a: Monomial, b: Monomial) -> bool:
    return not any(x and y for x, y in zip(a, b))


def degree(a: Monomial) -> int:
    return sum(a)


def support(a: Monomial) -> tuple:
    return tuple(i for i, e in enumerate(a) if e)


def unit_vector(n: int, i: int) -> Monomial:
    return tuple(1 if j == i else 0 for j in range(n))


def mono_str(a: Monomial, names: Sequence[str] | None = None) -> str:
    """Render ``x1*x2^2``; the identity monomial renders as ``1``."""
    parts = []
    for i, e in enumerate(a):
        if not e:
            continue
        name = names[i] if names else f"x{i + 1}"
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def canonical_key(m: Monomial):
    # total degree first, then lex with x1 heaviest (larger exponent earlier)
    return (sum(m), tuple(-e for e in m))


def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def bits(mask: int) -> list:
    """Indices of the set bits of ``mask`` in increasing order."""
    return list(_bits(mask))


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class GenSubset:
    mask: int
    lcm: Monomial
    cl: int

    @property
    def size(self) -> int:
        return popcount(self.mask)


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal given by its minimal generating system.

    Use :meth:`from_monomials` to build one from arbitrary generators; the
    constructor itself only checks the invariants.
    """

    n: int
    gens: tuple
    max_generators: int = field(default=MAX_GENERATORS, compare=False)

    def __post_init__(self):
        if self.n <= 0:
            raise IdealError("variable count must be positive")
        gens = tuple(tuple(int(e) for e in g) for g in self.gens)
        object.__setattr__(self, "gens", gens)
        for g in gens:
            if len(g) != self.n:
                raise IdealError(f"monomial {g} has length {len(g)}, expected {self.n}")
            if any(e < 0 for e in g):
                raise IdealError(f"negative exponent in {g}")
            if not any(g):
                raise IdealError("the monomial 1 generates the unit ideal")
        for i, a in enumerate(gens):
            for j, b in enumerate(gens):
                if i != j and divides(a, b):
                    raise IdealError(f"generator {b} is divisible by {a}; not minimal")
        if len(gens) > self.max_generators:
            raise GeneratorOverflow(
                f"{len(gens)} generators exceed the cap of {self.max_generators}")

    @classmethod
    def from_monomials(cls, raw: Iterable[Sequence[int]], n: int | None = None, *,
                       keep_order: bool = False,
                       max_generators: int = MAX_GENERATORS) -> "MonomialIdeal":
        return minimalize_generators(raw, n, keep_order=keep_order,
                                     max_generators=max_generators)

    @classmethod
    def zero(cls, n: int) -> "MonomialIdeal":
        return cls(n, ())

    # ------------------------------------------------------------------
    @property
    def l(self) -> int:
        return len(self.gens)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.gens)) - 1

    def contains(self, m: Monomial) -> bool:
        """Whether the monomial ``m`` lies in the ideal."""
        return any(divides(g, m) for g in self.gens)

    def is_squarefree(self) -> bool:
        return all(e <= 1 for g in self.gens for e in g)

    def is_equigenerated(self) -> bool:
        return len({sum(g) for g in self.gens}) <= 1

    def generator_degree(self) -> int | None:
        degs = {sum(g) for g in self.gens}
        return degs.pop() if len(degs) == 1 else None

    @cached_property
    def _coprime_adj(self) -> tuple:
        # adjacency masks of the "share a variable" graph on generators
        adj = []
        for i, a in enumerate(self.gens):
            m = 0
            for j, b in enumerate(self.gens):
                if i != j and not coprime(a, b):
                    m |= 1 << j
            adj.append(m)
        return tuple(adj)

    def lcm(self, mask: int) -> Monomial:
        out = one(self.n)
        for i in _bits(mask):
            out = mono_lcm(out, self.gens[i])
        return out

    def cl(self, mask: int) -> int:
        return component_classes(self, mask)[0]

    def subset(self, mask: int) -> GenSubset:
        if mask >> len(self.gens):
            raise IdealError(f"mask {mask:#b} outside generator range")
        return GenSubset(mask, self.lcm(mask), self.cl(mask))

    def gen_str(self, i: int) -> str:
        return mono_str(self.gens[i])

    def mask_str(self, mask: int) -> str:
        return "{" + ",".join(self.gen_str(i) for i in _bits(mask)) + "}"

    def __str__(self) -> str:
        return "<" + ", ".join(mono_str(g) for g in self.gens) + ">"


def minimalize_generators(raw: Iterable[Sequence[int]], n: int | None = None, *,
                          keep_order: bool = False,
                          max_generators: int = MAX_GENERATORS) -> MonomialIdeal:
    """Reduce ``raw`` to the minimal generating system of the ideal it spans."""
    mons = [tuple(int(e) for e in m) for m in raw]
    if n is None:
        if not mons:
            raise IdealError("variable count required for an empty generator list")
        n = len(mons[0])
    if n <= 0:
        raise IdealError("variable count must be positive")
    for m in mons:
        if len(m) != n:
            raise IdealError(f"monomial {m} has length {len(m)}, expected {n}")
        if not any(m):
            raise IdealError("the monomial 1 generates the unit ideal")
    unique = list(dict.fromkeys(mons))
    keep = [m for m in unique
            if not any(o != m and divides(o, m) for o in unique)]
    if not keep_order:
        keep.sort(key=canonical_key)
    return MonomialIdeal(n, tuple(keep), max_generators=max_generators)


def component_classes(ideal: MonomialIdeal, mask: int) -> tuple:
    """Connected components of ``mask`` under "shares a variable".

    Returns ``(cl, components)`` with components as masks, ordered by their
    lowest member.
    """
    adj = ideal._coprime_adj
    comps = []
    rest = mask
    while rest:
        low = rest & -rest
        comp = low
        frontier = low
        while frontier:
            i = (frontier & -frontier).bit_length() - 1
            frontier &= frontier - 1
            new = adj[i] & mask & ~comp
            comp |= new
            frontier |= new
        comps.append(comp)
        rest &= ~comp
    return len(comps), comps


def polarize(ideal: MonomialIdeal):
    """Standard polarization.

    Returns ``(squarefree_ideal, varmap)`` where ``varmap[k] = (i, c)`` says the
    new variable ``k`` is the ``c``-th copy (0-based) of old variable ``i``.
    Generator order is preserved.
    """
    copies = [max([1] + [g[i] for g in ideal.gens]) for i in range(ideal.n)]
    varmap = [(i, c) for i in range(ideal.n) for c in range(copies[i])]
    offset = [0] * ideal.n
    for i in range(1, ideal.n):
        offset[i] = offset[i - 1] + copies[i - 1]
    new_gens = []
    for g in ideal.gens:
        e = [0] * len(varmap)
        for i, a in enumerate(g):
            for c in range(a):
                e[offset[i] + c] = 1
        new_gens.append(tuple(e))
    out = MonomialIdeal(len(varmap), tuple(new_gens),
                        max_generators=ideal.max_generators)
    return out, varmap
