"""Oriented automorphisms of the Heisenberg group.

An oriented automorphism is a pair ``(M, c)`` with ``M`` an integer symplectic
matrix and ``c`` an integer vector; it acts by ``(k, x) -> (k + (c.x) nu, M x)``.
Composition follows the crossed-homomorphism rule

    (M2, c2) o (M1, c1) = (M2 M1, c1 + M1^T c2).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping, Sequence

from .exact_linalg import matmul, transpose
from .heisenberg import HeisElem, HeisParams, ParamsMismatch


class NotSymplectic(ValueError):
    def __init__(self, row: int, col: int, value: int):
        super().__init__(f"M^T J M - J has entry {value} at ({row}, {col})")
        self.row, self.col, self.value = row, col, value


def standard_form(g: int) -> tuple:
    """J = [[0, I], [-I, 0]] in the basis (a_1..a_g, b_1..b_g)."""
    size = 2 * g
    J = [[0] * size for _ in range(size)]
    for i in range(g):
        J[i][g + i] = 1
        J[g + i][i] = -1
    return tuple(tuple(r) for r in J)


def identity_matrix(size: int) -> tuple:
    return tuple(tuple(int(i == j) for j in range(size)) for i in range(size))


def _tup(a) -> tuple:
    return tuple(tuple(int(v) for v in row) for row in a)


def _matvec(M, x) -> tuple:
    return tuple(sum(a * b for a, b in zip(row, x)) for row in M)


def symplectic_defect(M) -> list[list[int]]:
    g = len(M) // 2
    J = standard_form(g)
    lhs = matmul(matmul(transpose(M), J), M)
    return [[lhs[i][j] - J[i][j] for j in range(2 * g)] for i in range(2 * g)]


def is_symplectic(M) -> bool:
    return not any(v for row in symplectic_defect(M) for v in row)


@dataclass(frozen=True)
class HeisAut:
    """``(M, c)``; use :func:`make_aut` to get a validated instance."""

    params: HeisParams
    M: tuple
    c: tuple

    def __call__(self, h: HeisElem) -> HeisElem:
        return aut_apply(self, h)

    def to_json(self) -> dict:
        return {"M": [list(r) for r in self.M], "c": list(self.c)}

    @classmethod
    def from_json(cls, params: HeisParams, data: Mapping) -> "HeisAut":
        return make_aut(data["M"], data.get("c") or [0] * params.rank, params)


def make_aut(M: Sequence[Sequence[int]], c: Sequence[int], params) -> HeisAut:
    P = HeisParams.of(params)
    M = _tup(M)
    c = tuple(int(v) for v in c)
    size = P.rank
    if len(M) != size or any(len(r) != size for r in M):
        raise ValueError(f"M must be {size}x{size}")
    if len(c) != size:
        raise ValueError(f"c must have length {size}")
    defect = symplectic_defect(M)
    for i, row in enumerate(defect):
        for j, v in enumerate(row):
            if v:
                raise NotSymplectic(i, j, v)
    return HeisAut(P, M, c)


def identity_aut(params) -> HeisAut:
    P = HeisParams.of(params)
    return HeisAut(P, identity_matrix(P.rank), (0,) * P.rank)


def aut_apply(t: HeisAut, h: HeisElem) -> HeisElem:
    if t.params != h.params:
        raise ParamsMismatch("automorphism and element over different groups")
    shift = sum(a * b for a, b in zip(t.c, h.x))
    return HeisElem(h.params, h.m + shift, _matvec(t.M, h.x))


def aut_compose(t2: HeisAut, t1: HeisAut) -> HeisAut:
    """``t2 o t1``: apply ``t1`` first."""
    if t1.params != t2.params:
        raise ParamsMismatch("automorphisms over different groups")
    M = _tup(matmul(t2.M, t1.M))
    pulled = _matvec(transpose(t1.M), t2.c)
    return HeisAut(t1.params, M, tuple(a + b for a, b in zip(t1.c, pulled)))


def symplectic_inverse(M) -> tuple:
    """M^-1 = -J M^T J for symplectic M."""
    J = standard_form(len(M) // 2)
    prod = matmul(matmul(J, transpose(M)), J)
    return tuple(tuple(-v for v in row) for row in prod)


def aut_inverse(t: HeisAut) -> HeisAut:
    Minv = symplectic_inverse(t.M)
    c = _matvec(transpose(Minv), t.c)
    return HeisAut(t.params, Minv, tuple(-v for v in c))


def forget_center(t: HeisAut, x: Sequence[int]) -> tuple:
    """Induced map on H_1 (the vector part of the action)."""
    return aut_apply(t, HeisElem(t.params, 0, tuple(x))).x


# --------------------------------------------------------------------------
# random sampling of Sp(2g, Z) and of automorphisms


def _shear(g: int, S) -> tuple:
    # [[I, S], [0, I]] with S symmetric
    M = [list(r) for r in identity_matrix(2 * g)]
    for i in range(g):
        for j in range(g):
            M[i][g + j] = S[i][j]
    return _tup(M)


def _lower_shear(g: int, S) -> tuple:
    M = [list(r) for r in identity_matrix(2 * g)]
    for i in range(g):
        for j in range(g):
            M[g + i][j] = S[i][j]
    return _tup(M)


def _block_diag(g: int, A, Ainv_T) -> tuple:
    M = [[0] * (2 * g) for _ in range(2 * g)]
    for i in range(g):
        for j in range(g):
            M[i][j] = A[i][j]
            M[g + i][g + j] = Ainv_T[i][j]
    return _tup(M)


def random_symplectic(g: int, rng: random.Random, steps: int = 3, bound: int = 2) -> tuple:
    """Product of random elementary symplectic matrices."""
    M = identity_matrix(2 * g)
    for _ in range(steps):
        kind = rng.randrange(4)
        if kind in (0, 1):
            S = [[0] * g for _ in range(g)]
            for i in range(g):
                for j in range(i, g):
                    S[i][j] = S[j][i] = rng.randint(-bound, bound)
            E = _shear(g, S) if kind == 0 else _lower_shear(g, S)
        elif kind == 2:
            # A = I + t e_ij (unimodular), A^-T = I - t e_ji
            i, j = rng.sample(range(g), 2)
            t = rng.choice([v for v in range(-bound, bound + 1) if v])
            A = [[int(r == s) for s in range(g)] for r in range(g)]
            Ait = [row[:] for row in A]
            A[i][j] = t
            Ait[j][i] = -t
            E = _block_diag(g, A, Ait)
        else:
            E = standard_form(g)
        M = _tup(matmul(E, M))
    return M


def random_aut(params, rng: random.Random, steps: int = 3, c_range: int = 3) -> HeisAut:
    P = HeisParams.of(params)
    M = random_symplectic(P.g, rng, steps)
    c = [rng.randint(-c_range, c_range) for _ in range(P.rank)]
    return make_aut(M, c, P)
