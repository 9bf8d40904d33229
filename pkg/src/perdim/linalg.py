"""Exact linear algebra over the rationals and prime fields.

Rational elements are Python ``int`` or ``fractions.Fraction`` (a Fraction is
only ever produced by division); prime field elements are canonical residues
``0 <= x < p``.  No floating point is used anywhere.

Two representations are supported: dense matrices (lists of rows) for the
small per-vertex blocks of modules, and sparse rows (``dict`` column ->
value) for the larger intertwiner systems solved by ``hom``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """The rationals (``p == 0``) or the prime field with ``p`` elements."""

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        if p and not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    @property
    def kind(self) -> str:
        return "prime_field" if self.p else "rationals"

    @classmethod
    def parse(cls, text: str) -> "Field":
        t = text.strip()
        if t in ("Q", "QQ", "rationals"):
            return RATIONALS
        m = re.fullmatch(r"(?:Fp\((\d+)\)|GF\((\d+)\)|F(\d+))", t)
        if not m:
            raise ValueError(f"unknown field {text!r}; use Q, Fp(p) or F<p>")
        return cls(int(next(g for g in m.groups() if g)))

    def __call__(self, x) -> int | Fraction:
        """Coerce an int or Fraction into the field."""
        p = self.p
        if not p:
            if isinstance(x, Fraction):
                return x.numerator if x.denominator == 1 else x
            return int(x)
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError(f"denominator {x.denominator} vanishes mod {p}")
            return x.numerator * pow(x.denominator, -1, p) % p
        return int(x) % p

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(x, -1, self.p)
        return canon(Fraction(1) / x)

    def div(self, a, b):
        if self.p:
            return a * pow(b, -1, self.p) % self.p
        return canon(Fraction(a) / b)

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return f"Fp({self.p})" if self.p else "Q"

    def __str__(self):
        return repr(self)


RATIONALS = Field(0)


def canon(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def fmt(x) -> str:
    """Canonical text of a field element ("3", "-1/2")."""
    return str(Fraction(x)) if isinstance(x, Fraction) else str(x)


# --------------------------------------------------------------------------
# dense matrices


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length must equal rows * cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    def to_rows(self) -> list[list]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        return Matrix.from_rows(transpose(self.to_rows(), self.cols), self.rows)


def zeros(r: int, c: int) -> list[list]:
    return [[0] * c for _ in range(r)]


def identity(n: int) -> list[list]:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = 1
    return m


def transpose(rows: Sequence[Sequence], ncols: Optional[int] = None) -> list[list]:
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    return [[r[j] for r in rows] for j in range(ncols)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence], field: Field, inner: Optional[int] = None,
           ncols: Optional[int] = None) -> list[list]:
    """Product of an (r x k) and a (k x c) matrix.  ``inner``/``ncols`` are
    needed only when a dimension is zero and cannot be read off the rows."""
    if inner is None:
        inner = len(b)
    if ncols is None:
        ncols = len(b[0]) if b else 0
    p = field.p
    out = []
    for row in a:
        acc = [0] * ncols
        for k in range(inner):
            x = row[k]
            if x:
                bk = b[k]
                for j in range(ncols):
                    y = bk[j]
                    if y:
                        acc[j] += x * y
        if p:
            acc = [v % p for v in acc]
        else:
            acc = [canon(v) for v in acc]
        out.append(acc)
    return out


def matvec(a: Sequence[Sequence], v: Sequence, field: Field) -> list:
    p = field.p
    out = []
    for row in a:
        s = 0
        for x, y in zip(row, v):
            if x and y:
                s += x * y
        out.append(s % p if p else canon(s))
    return out


def is_zero_matrix(a: Sequence[Sequence]) -> bool:
    return not any(any(r) for r in a)


def _rref_inplace(m: list[list], ncols: int, field: Field) -> list[int]:
    p = field.p
    pivots = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        row = m[r]
        inv = field.inv(row[c])
        if p:
            row[:] = [x * inv % p for x in row]
        else:
            row[:] = [canon(x * inv) if x else 0 for x in row]
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    other = m[i]
                    if p:
                        for j in range(c, ncols):
                            if row[j]:
                                other[j] = (other[j] - f * row[j]) % p
                    else:
                        for j in range(c, ncols):
                            if row[j]:
                                other[j] = canon(other[j] - f * row[j])
        pivots.append(c)
        r += 1
    return pivots


def rref_rows(rows: Sequence[Sequence], ncols: int, field: Field) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns."""
    m = [[field(x) for x in r] for r in rows]
    piv = _rref_inplace(m, ncols, field)
    return m[:len(piv)], piv


def rref(m: Matrix, field: Field = RATIONALS) -> tuple[Matrix, int, list[int]]:
    rows = [[field(x) for x in r] for r in m.to_rows()]
    piv = _rref_inplace(rows, m.cols, field)
    return Matrix.from_rows(rows, m.cols), len(piv), piv


def rank_rows(rows: Sequence[Sequence], ncols: int, field: Field) -> int:
    if not rows or not ncols:
        return 0
    return len(rref_rows(rows, ncols, field)[1])


def rank(m: Matrix, field: Field = RATIONALS) -> int:
    return rref(m, field)[1]


def kernel_rows(rows: Sequence[Sequence], ncols: int, field: Field) -> list[list]:
    """Basis of the right null space, one vector per free column."""
    red, piv = rref_rows(rows, ncols, field)
    pivset = set(piv)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [0] * ncols
        v[f] = 1
        for r, c in zip(red, piv):
            if r[f]:
                v[c] = field(-r[f])
        basis.append(v)
    return basis


def kernel_basis(m: Matrix, field: Field = RATIONALS) -> list[list]:
    return kernel_rows(m.to_rows(), m.cols, field)


def solve_rows(rows: Sequence[Sequence], ncols: int, b: Sequence, field: Field) -> Optional[list]:
    if len(b) != len(rows):
        raise ValueError("right-hand side length must equal the number of rows")
    aug = [list(r) + [x] for r, x in zip(rows, b)]
    red, piv = rref_rows(aug, ncols + 1, field)
    if piv and piv[-1] == ncols:
        return None
    x = [0] * ncols
    for r, c in zip(red, piv):
        x[c] = r[ncols]
    return x


def solve(m: Matrix, b: Sequence, field: Field = RATIONALS) -> Optional[list]:
    """Some x with m x = b, or None when the system is inconsistent."""
    return solve_rows(m.to_rows(), m.cols, b, field)


def inverse(rows: Sequence[Sequence], field: Field) -> Optional[list[list]]:
    n = len(rows)
    if n == 0:
        return []
    aug = [list(r) + e for r, e in zip(rows, identity(n))]
    red, piv = rref_rows(aug, 2 * n, field)
    if len(piv) < n or piv[n - 1] >= n:
        return None
    return [r[n:] for r in red]


class Subspace:
    """A subspace of k^n held as RREF rows.

    Coordinates of a member vector relative to the stored basis are its
    entries at the pivot columns, so membership tests and coordinate reads
    never need a solve.
    """

    __slots__ = ("n", "rows", "pivots", "field")

    def __init__(self, vectors: Iterable[Sequence], n: int, field: Field):
        vecs = [list(v) for v in vectors]
        self.n = n
        self.field = field
        if vecs and n:
            self.rows, self.pivots = rref_rows(vecs, n, field)
        else:
            self.rows, self.pivots = [], []

    @property
    def dim(self) -> int:
        return len(self.rows)

    def coords(self, v: Sequence) -> list:
        return [v[c] for c in self.pivots]

    def reduce(self, v: Sequence) -> list:
        """v minus its projection along the complement spanned by unit vectors
        at the free columns; zero iff v lies in the subspace."""
        p = self.field.p
        w = list(v)
        for r, c in zip(self.rows, self.pivots):
            f = w[c]
            if f:
                if p:
                    w = [(x - f * y) % p for x, y in zip(w, r)]
                else:
                    w = [canon(x - f * y) for x, y in zip(w, r)]
        return w

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def complement(self) -> list[int]:
        piv = set(self.pivots)
        return [j for j in range(self.n) if j not in piv]


# --------------------------------------------------------------------------
# sparse elimination


def sparse_nullspace(rows: Iterable[dict], ncols: int, field: Field) -> list[dict]:
    """Null space basis of a sparse system; each row maps column -> value.

    Maintains a fully reduced pivot set so one pass per incoming row suffices.
    """
    p = field.p
    pivots: dict[int, dict] = {}
    for row in rows:
        r = {c: v for c, v in row.items() if v}
        if p:
            r = {c: v % p for c, v in r.items() if v % p}
        hit = [c for c in r if c in pivots]
        for c in hit:
            f = r.get(c)
            if not f:
                continue
            for j, y in pivots[c].items():
                nv = r.get(j, 0) - f * y
                if p:
                    nv %= p
                if nv:
                    r[j] = nv if p else canon(nv)
                else:
                    r.pop(j, None)
        if not r:
            continue
        c0 = min(r)
        inv = field.inv(r[c0])
        if p:
            r = {j: v * inv % p for j, v in r.items()}
        else:
            r = {j: canon(v * inv) for j, v in r.items()}
        for prow in pivots.values():
            f = prow.get(c0)
            if f:
                for j, y in r.items():
                    nv = prow.get(j, 0) - f * y
                    if p:
                        nv %= p
                    if nv:
                        prow[j] = nv if p else canon(nv)
                    else:
                        prow.pop(j, None)
        pivots[c0] = r
    by_free: dict[int, list] = {}
    for c, prow in pivots.items():
        for j, y in prow.items():
            if j != c:
                by_free.setdefault(j, []).append((c, y))
    basis = []
    for f in range(ncols):
        if f in pivots:
            continue
        v = {f: 1}
        for c, y in by_free.get(f, ()):
            v[c] = (-y) % p if p else -y
        basis.append(v)
    return basis
