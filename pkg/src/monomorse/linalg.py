"""Exact sparse linear algebra over Q or GF(p).

Vectors are dicts ``{key: value}`` with no zero values.  Keys only need to be
mutually comparable; the smallest key of a reduced vector is its pivot.
"""

from __future__ import annotations

from fractions import Fraction


class FieldError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class Field:
    """The prime field of characteristic ``char`` (0 means Q)."""

    __slots__ = ("char",)

    def __init__(self, char: int = 0):
        if char != 0 and not _is_prime(char):
            raise FieldError(f"characteristic must be 0 or prime, got {char}")
        self.char = char

    def __repr__(self):
        return "QQ" if self.char == 0 else f"GF({self.char})"

    def __eq__(self, other):
        return isinstance(other, Field) and other.char == self.char

    def __hash__(self):
        return hash(("Field", self.char))

    def __call__(self, x):
        if self.char:
            if isinstance(x, Fraction):
                return x.numerator * pow(x.denominator, -1, self.char) % self.char
            return int(x) % self.char
        return Fraction(x)

    def inv(self, a):
        if self.char:
            return pow(a, -1, self.char)
        return 1 / Fraction(a)

    def is_zero(self, a) -> bool:
        return a == 0

    def normalize(self, a):
        return a % self.char if self.char else a


QQ = Field(0)


def axpy(v: dict, c, w: dict, p: int) -> None:
    """In place ``v += c * w``."""
    for k, a in w.items():
        x = v.get(k, 0) + c * a
        if p:
            x %= p
        if x:
            v[k] = x
        else:
            v.pop(k, None)


class Echelon:
    """Incrementally built row-echelon basis of a subspace.

    Each stored row has leading key equal to its smallest key and leading
    coefficient 1.
    """

    def __init__(self, field: Field):
        self.field = field
        self.rows: dict = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: dict) -> dict:
        p = self.field.char
        if p:
            v = {k: x for k, x in ((k, self.field(a)) for k, a in v.items()) if x}
        else:
            v = dict(v)
        out = {}
        rows = self.rows
        while v:
            k = min(v)
            c = v.pop(k)
            row = rows.get(k)
            if row is None:
                out[k] = c
                continue
            for j, a in row.items():
                if j == k:
                    continue
                x = v.get(j, 0) - c * a
                if p:
                    x %= p
                if x:
                    v[j] = x
                else:
                    v.pop(j, None)
        return out

    def add(self, v: dict) -> bool:
        """Insert ``v``; return True iff it was independent of the span."""
        r = self.reduce(v)
        if not r:
            return False
        self._insert(r)
        return True

    def _insert(self, r: dict) -> None:
        k = min(r)
        inv = self.field.inv(r[k])
        p = self.field.char
        if p:
            self.rows[k] = {j: a * inv % p for j, a in r.items()}
        else:
            self.rows[k] = {j: a * inv for j, a in r.items()}

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)


def kernel_and_image(columns: list, field: Field):
    """Kernel basis and rank of the linear map with the given image columns.

    ``columns[j]`` is the image of the j-th basis vector.  Kernel vectors are
    returned as dicts ``{j: coefficient}`` over input indices.  The choice of
    kernel basis is deterministic (earliest dependent column first).
    """
    ech = Echelon(field)
    kernel = []
    one = field(1)
    for j, col in enumerate(columns):
        tagged = {(0, k): a for k, a in col.items()}
        tagged[(1, j)] = one
        r = ech.reduce(tagged)
        if r and min(r)[0] == 0:
            ech._insert(r)
        else:
            kernel.append({k[1]: a for k, a in r.items()})
    return kernel, len(columns) - len(kernel)


def rank(columns: list, field: Field) -> int:
    ech = Echelon(field)
    return sum(1 for c in columns if ech.add(c))


def solve_in_span(basis: list, target: dict, field: Field):
    """Coefficients ``a`` with ``sum a[i] * basis[i] == target`` or None."""
    ech = Echelon(field)
    for i, b in enumerate(basis):
        tagged = {(0, k): a for k, a in b.items()}
        tagged[(1, i)] = field(1)
        r = ech.reduce(tagged)
        if r and min(r)[0] == 0:
            ech._insert(r)
    r = ech.reduce({(0, k): a for k, a in target.items()})
    if any(k[0] == 0 for k in r):
        return None
    p = field.char
    coeffs = {}
    for k, a in r.items():
        x = -a
        if p:
            x %= p
        coeffs[k[1]] = x
    return coeffs
