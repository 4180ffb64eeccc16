"""Exact rational and integer linear algebra.

Everything here works over :class:`fractions.Fraction` and Python ints; no
floating point value is ever produced.  Matrices are small (a few hundred rows
at most), so plain nested tuples are fast enough.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence


def _frac(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError("floating point entries are not allowed")
    return Fraction(value)


class ExactMatrix:
    """An immutable matrix of exact rationals."""

    __slots__ = ("rows", "cols", "entries", "_hash")

    def __init__(self, entries: Iterable[Iterable], cols: int | None = None):
        data = tuple(tuple(_frac(v) for v in row) for row in entries)
        if data:
            width = len(data[0])
            if any(len(row) != width for row in data):
                raise ValueError("ragged matrix")
        else:
            width = cols or 0
        if cols is not None and data and cols != width:
            raise ValueError("column count mismatch")
        self.entries = data
        self.rows = len(data)
        self.cols = width
        self._hash = None

    # construction helpers
    @classmethod
    def identity(cls, size: int) -> "ExactMatrix":
        one, zero = Fraction(1), Fraction(0)
        return cls(((one if i == j else zero) for j in range(size)) for i in range(size))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        zero = Fraction(0)
        return cls(([zero] * cols for _ in range(rows)), cols=cols)

    @classmethod
    def from_json(cls, data) -> "ExactMatrix":
        return cls(data)

    def to_json(self) -> list[list[str]]:
        return [[_frac_str(v) for v in row] for row in self.entries]

    def __getitem__(self, key):
        i, j = key
        return self.entries[i][j]

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.cols == other.cols and self.entries == other.entries

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.cols, self.entries))
        return self._hash

    def __repr__(self) -> str:
        return f"ExactMatrix({self.to_json()})"

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        _check_same_shape(self, other)
        return ExactMatrix(
            (a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        _check_same_shape(self, other)
        return ExactMatrix(
            (a - b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)
        )

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix((-a for a in r) for r in self.entries)

    def scale(self, c) -> "ExactMatrix":
        c = _frac(c)
        return ExactMatrix((c * a for a in r) for r in self.entries)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return ExactMatrix(matmul(self.entries, other.entries), cols=other.cols)

    def apply(self, vector: Sequence) -> tuple[Fraction, ...]:
        if len(vector) != self.cols:
            raise ValueError("vector length mismatch")
        vec = [_frac(v) for v in vector]
        return tuple(sum((a * b for a, b in zip(row, vec) if a), Fraction(0)) for row in self.entries)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(zip(*self.entries), cols=self.rows) if self.rows else ExactMatrix.zeros(self.cols, 0)

    T = property(transpose)

    def __pow__(self, e: int) -> "ExactMatrix":
        if self.rows != self.cols:
            raise ValueError("power of a non-square matrix")
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = ExactMatrix.identity(self.rows)
        while e:
            if e & 1:
                result = result @ base
            e >>= 1
            if e:
                base = base @ base
        return result

    def is_zero(self) -> bool:
        return all(not v for row in self.entries for v in row)

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for row in self.entries for v in row)

    def inverse(self) -> "ExactMatrix":
        return ExactMatrix(inverse(self.entries))

    def det(self) -> Fraction:
        return determinant(self.entries)

    def rank(self) -> int:
        return rank(self.entries)


def _frac_str(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _check_same_shape(a: ExactMatrix, b: ExactMatrix) -> None:
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    """Product of two nested-sequence matrices (ints or Fractions)."""
    bt = list(zip(*b))
    out = []
    for row in a:
        nz = [(k, x) for k, x in enumerate(row) if x]
        out.append([sum((x * col[k] for k, x in nz), 0) for col in bt])
    if not bt:
        out = [[] for _ in a]
    return out


def transpose(a: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*a)]


def block_matrix(blocks: Sequence[Sequence[ExactMatrix]]) -> ExactMatrix:
    """Assemble a matrix from a rectangular grid of equally sized blocks."""
    rows = []
    for block_row in blocks:
        height = block_row[0].rows
        for i in range(height):
            line = []
            for blk in block_row:
                line.extend(blk.entries[i])
            rows.append(line)
    cols = sum(blk.cols for blk in blocks[0]) if blocks else 0
    return ExactMatrix(rows, cols=cols)


# --------------------------------------------------------------------------
# rank / kernel


def _integer_rows(m: Sequence[Sequence]) -> list[list[int]]:
    """Clear denominators row by row; row scaling leaves the rank unchanged."""
    out = []
    for row in m:
        fr = [_frac(v) for v in row]
        den = 1
        for v in fr:
            if v.denominator != 1:
                den = lcm(den, v.denominator)
        out.append([int(v * den) for v in fr])
    return out


def bareiss_rank(m: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination with full pivoting.

    All intermediate values are exact minors of the input, so entry growth is
    bounded by Hadamard's inequality.
    """
    a = [list(row) for row in m if any(row)]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    prev = 1
    r = 0
    while r < nrows and r < ncols:
        # full pivot: smallest nonzero magnitude keeps numbers short
        best = None
        for i in range(r, nrows):
            row = a[i]
            for j in range(r, ncols):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        a[r], a[pi] = a[pi], a[r]
        if pj != r:
            for row in a:
                row[r], row[pj] = row[pj], row[r]
        piv = a[r][r]
        prow = a[r]
        for i in range(r + 1, nrows):
            row = a[i]
            f = row[r]
            if f:
                for j in range(r + 1, ncols):
                    row[j] = (piv * row[j] - f * prow[j]) // prev
            else:
                for j in range(r + 1, ncols):
                    row[j] = (piv * row[j]) // prev
            row[r] = 0
        prev = piv
        r += 1
    return r


def rank(m) -> int:
    """Exact rank of a rational (or integer) matrix."""
    entries = m.entries if isinstance(m, ExactMatrix) else m
    if not entries:
        return 0
    rows = _integer_rows(entries)
    # eliminate along the short side
    if len(rows) > len(rows[0]):
        rows = [list(c) for c in zip(*rows)]
    return bareiss_rank(rows)


def rref(m: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q and the pivot columns."""
    a = [[_frac(v) for v in row] for row in m]
    if not a:
        return a, []
    nrows, ncols = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pi = next((i for i in range(r, nrows) if a[i][c]), None)
        if pi is None:
            continue
        a[r], a[pi] = a[pi], a[r]
        inv = 1 / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def kernel_basis(m) -> ExactMatrix:
    """Columns spanning the right kernel of ``m`` (cols - rank of them)."""
    entries = m.entries if isinstance(m, ExactMatrix) else m
    ncols = m.cols if isinstance(m, ExactMatrix) else (len(entries[0]) if entries else 0)
    red, pivots = rref(entries)
    free = [c for c in range(ncols) if c not in set(pivots)]
    vectors = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        vectors.append(v)
    if not vectors:
        return ExactMatrix.zeros(ncols, 0)
    return ExactMatrix(zip(*vectors), cols=len(vectors))


def determinant(m: Sequence[Sequence]) -> Fraction:
    a = [[_frac(v) for v in row] for row in m]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        pi = next((i for i in range(c, n) if a[i][c]), None)
        if pi is None:
            return Fraction(0)
        if pi != c:
            a[c], a[pi] = a[pi], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def inverse(m: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(m)
    aug = [[_frac(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


# --------------------------------------------------------------------------
# Smith normal form


def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return ``(U, D, W)`` with ``U @ m @ W == D`` and U, W unimodular.

    D is diagonal with nonnegative entries d_1 | d_2 | ... .  The identity is
    recomputed before returning and an AssertionError raised if it fails.
    """
    if isinstance(m, ExactMatrix):
        if not m.is_integral():
            raise ValueError("Smith normal form needs an integer matrix")
        a = [[int(v) for v in row] for row in m.entries]
        ncols = m.cols
    else:
        a = [[int(v) for v in row] for row in m]
        ncols = len(a[0]) if a else 0
    nrows = len(a)
    orig = [row[:] for row in a]
    U = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    W = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in W:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):  # row_dst += f * row_src
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x + f * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, f):  # col_dst += f * col_src
        for row in a:
            row[dst] += f * row[src]
        for row in W:
            row[dst] += f * row[src]

    t = 0
    while t < min(nrows, ncols):
        nz = [(abs(a[i][j]), i, j) for i in range(t, nrows) for j in range(t, ncols) if a[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            done = True
            for i in range(t + 1, nrows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(i, t, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, ncols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(j, t, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # divisibility: pull any offending row into row t
            piv = a[t][t]
            bad = next(
                (i for i in range(t + 1, nrows) for j in range(t + 1, ncols) if a[i][j] % piv),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
        t += 1

    D = a
    assert matmul(matmul(U, orig), W) == D or (not orig and not D), "U m W != D"
    diag = [D[i][i] for i in range(min(nrows, ncols))]
    nonzero = [d for d in diag if d]
    assert all(nonzero[i + 1] % nonzero[i] == 0 for i in range(len(nonzero) - 1))
    return U, D, W


def invariant_factors(m) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form, in divisibility order."""
    _, D, _ = smith_normal_form(m)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]

