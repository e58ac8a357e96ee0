"""Text formats for ideals and posets.

Ideal files::

    vars: 3
    # comment
    x1*x2^2
    [0, 1, 1]

Poset files::

    p: 4
    1 < 2
    1 < 3
"""

from __future__ import annotations

import re
from pathlib import Path

from .monomial import IdealError, MonomialIdeal, mono_str
from .poset import Poset, PosetError


class ParseError(ValueError):
    def __init__(self, msg: str, line: int | None = None, source: str | None = None):
        where = ""
        if source:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {msg}" if where else msg)
        self.line = line


_VAR = re.compile(r"^x(\d+)(?:\^(\d+))?$")
_HEADER = re.compile(r"^(\w+)\s*:\s*(\S+)$")


def _lines(text: str):
    for k, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield k, line


def _header(it, key: str, source):
    try:
        k, line = next(it)
    except StopIteration:
        raise ParseError(f"missing '{key}: <count>' header", None, source) from None
    m = _HEADER.match(line)
    if not m or m.group(1) != key:
        raise ParseError(f"expected '{key}: <count>' header, got {line!r}", k, source)
    try:
        val = int(m.group(2))
    except ValueError:
        raise ParseError(f"count {m.group(2)!r} is not an integer", k, source) from None
    if val <= 0:
        raise ParseError(f"{key} must be positive", k, source)
    return val


def parse_monomial(token: str, n: int) -> tuple:
    token = token.strip()
    if token.startswith("["):
        if not token.endswith("]"):
            raise ValueError(f"unterminated exponent vector {token!r}")
        body = token[1:-1].strip()
        parts = [p.strip() for p in body.split(",")] if body else []
        try:
            exps = [int(p) for p in parts]
        except ValueError:
            raise ValueError(f"non-integer exponent in {token!r}") from None
        if len(exps) != n:
            raise ValueError(f"exponent vector has length {len(exps)}, expected {n}")
        if any(e < 0 for e in exps):
            raise ValueError(f"negative exponent in {token!r}")
        return tuple(exps)
    exps = [0] * n
    for factor in token.replace(" ", "").split("*"):
        m = _VAR.match(factor)
        if not m:
            raise ValueError(f"cannot read factor {factor!r}")
        i = int(m.group(1))
        if not 1 <= i <= n:
            raise ValueError(f"variable x{i} outside x1..x{n}")
        e = int(m.group(2)) if m.group(2) else 1
        exps[i - 1] += e
    return tuple(exps)


def parse_ideal(text: str, *, keep_order: bool = False, source: str | None = None,
                max_generators: int | None = None) -> MonomialIdeal:
    it = _lines(text)
    n = _header(it, "vars", source)
    mons = []
    for k, line in it:
        try:
            mons.append(parse_monomial(line, n))
        except ValueError as e:
            raise ParseError(str(e), k, source) from None
    if not mons:
        return MonomialIdeal.zero(n)
    kw = {} if max_generators is None else {"max_generators": max_generators}
    try:
        return MonomialIdeal.from_monomials(mons, n, keep_order=keep_order, **kw)
    except IdealError as e:
        raise ParseError(str(e), None, source) from None


def parse_poset(text: str, *, source: str | None = None) -> Poset:
    it = _lines(text)
    p = _header(it, "p", source)
    rel = []
    for k, line in it:
        m = re.match(r"^(\d+)\s*<\s*(\d+)$", line)
        if not m:
            raise ParseError(f"expected 'i < j', got {line!r}", k, source)
        i, j = int(m.group(1)), int(m.group(2))
        if not (1 <= i <= p and 1 <= j <= p):
            raise ParseError(f"element outside 1..{p}", k, source)
        if i >= j:
            raise ParseError(f"relation {i} < {j} violates the natural labelling", k, source)
        rel.append((i - 1, j - 1))
    try:
        return Poset.from_relations(p, rel)
    except PosetError as e:
        raise ParseError(str(e), None, source) from None


def format_ideal(ideal: MonomialIdeal) -> str:
    lines = [f"vars: {ideal.n}"] + [mono_str(g) for g in ideal.gens]
    return "\n".join(lines) + "\n"


def load_ideal(path, **kw) -> MonomialIdeal:
    p = Path(path)
    return parse_ideal(p.read_text(), source=str(p), **kw)


def load_poset(path) -> Poset:
    p = Path(path)
    return parse_poset(p.read_text(), source=str(p))
