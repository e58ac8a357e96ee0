"""Word languages attached to quadratic monomial ideals, used as counting oracles.

``L_j`` consists of the words ``x_{i_1} ... x_{i_r}`` (``r ≥ 2``) with
``i_1 = j`` smaller than every later index, such that each letter after the
first has an earlier partner ``x_{i_l'}`` forming a generator with it and all
letters strictly between the two are larger than it.

The full language concatenates words of ``L_{j_1}, L_{j_2}, ...`` with
``j_1 ≥ j_2 ≥ ...``; see :func:`enumerate_language`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .monomial import MonomialIdeal, popcount
from .taylor import PreconditionError, nbc_sets_dfs


class LanguageBoundError(ValueError):
    pass


MAX_WORDS = 2_000_000


@dataclass(frozen=True)
class WordLanguageSpec:
    ideal: MonomialIdeal
    start: int | None  # 0-based j; None means the full language
    length: int

    def __post_init__(self):
        if self.length < 0:
            raise LanguageBoundError("length bound must be nonnegative")


def _pairs(ideal: MonomialIdeal) -> set:
    if not ideal.is_squarefree() or any(sum(g) != 2 for g in ideal.gens):
        raise PreconditionError("languages need a squarefree ideal generated in degree 2")
    out = set()
    for g in ideal.gens:
        i, j = (v for v, e in enumerate(g) if e)
        out.add((i, j))
        out.add((j, i))
    return out


def words_from(ideal: MonomialIdeal, j: int, length: int) -> list:
    """All words of ``L_j`` of length at most ``length`` (0-based letters)."""
    pairs = _pairs(ideal)
    n = ideal.n
    out = []

    def admissible(word, c):
        # some earlier letter pairs with c and everything after it exceeds c
        for lp in range(len(word) - 1, -1, -1):
            if (word[lp], c) in pairs:
                return True
            if word[lp] <= c:
                return False
        return False

    def grow(word):
        if len(word) >= 2:
            out.append(tuple(word))
            if len(out) > MAX_WORDS:
                raise LanguageBoundError("word enumeration exceeded its cap")
        if len(word) == length:
            return
        for c in range(j + 1, n):
            if admissible(word, c):
                word.append(c)
                grow(word)
                word.pop()

    grow([j])
    return out


def _count(words, n: int) -> dict:
    out = {}
    for w in words:
        alpha = [0] * n
        for c in w:
            alpha[c] += 1
        key = (len(w), tuple(alpha))
        out[key] = out.get(key, 0) + 1
    return out


def full_language(ideal: MonomialIdeal, length: int) -> list:
    """Concatenations ``w_1 w_2 ...`` with ``w_k ∈ L_{j_k}`` and ``j_1 ≥ j_2 ≥ ...``.

    The empty word is included.
    """
    n = ideal.n
    blocks = {j: words_from(ideal, j, length) for j in range(n)}
    out = []

    def extend(prefix, top, left):
        out.append(prefix)
        if len(out) > MAX_WORDS:
            raise LanguageBoundError("word enumeration exceeded its cap")
        for j in range(top, -1, -1):
            for w in blocks[j]:
                if len(w) <= left:
                    extend(prefix + w, j, left - len(w))

    extend((), n - 1, length)
    if len(set(out)) != len(out):
        raise AssertionError("concatenation is not unique")
    return out


def enumerate_language(spec: WordLanguageSpec) -> dict:
    """Counts per ``(length, multidegree)``."""
    if spec.start is None:
        return _count(full_language(spec.ideal, spec.length), spec.ideal.n)
    return _count(words_from(spec.ideal, spec.start, spec.length), spec.ideal.n)


# ----------------------------------------------------------------------
# monomials of R


def r_generators(ideal: MonomialIdeal) -> list:
    """``(mask, degree, lcm)`` for the variables ``Y_I``: I nbc, connected."""
    out = []
    for m in nbc_sets_dfs(ideal):
        if m and ideal.cl(m) == 1:
            out.append((m, popcount(m) + 1, ideal.lcm(m)))
    return out


def r_monomials(ideal: MonomialIdeal, degree: int) -> dict:
    """Counts of monomials of ``R`` per ``(degree, multidegree)`` up to ``degree``.

    Generators commute exactly when their lcms are coprime; monomials are
    taken in the normal form where commuting neighbours are ordered by
    decreasing minimal variable.
    """
    _pairs(ideal)
    gens = r_generators(ideal)
    n = ideal.n
    low = [min(v for v in range(n) if g[2][v]) for g in gens]
    supp = [sum(1 << v for v in range(n) if g[2][v]) for g in gens]

    def commute(a, b):
        return not supp[a] & supp[b]

    out = {}
    count = [0]

    def ok(word, b):
        # b may follow word unless it could slide left past a larger-min letter
        for a in reversed(word):
            if not commute(a, b):
                return True
            if low[a] < low[b]:
                return False
        return True

    def grow(word, deg, alpha):
        key = (deg, alpha)
        out[key] = out.get(key, 0) + 1
        count[0] += 1
        if count[0] > MAX_WORDS:
            raise LanguageBoundError("monomial enumeration exceeded its cap")
        for b, (_, d, lcm) in enumerate(gens):
            if deg + d <= degree and ok(word, b):
                word.append(b)
                grow(word, deg + d, tuple(x + y for x, y in zip(alpha, lcm)))
                word.pop()

    grow([], 0, (0,) * n)
    return out
