"""Finite dimensional representations of the Heisenberg group over Q.

The main example is the linearised regular representation ``rho_L`` on
``L = H_g^Q (+) Q`` with coordinates ``(k, p_1..p_g, q_1..q_g, t)``:

    k' = k + t k0 + p0.q - q0.p
    p' = p + t p0
    q' = q + t q0
    t' = t

which is upper unitriangular in this basis.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Mapping

from .automorphisms import HeisAut, aut_apply
from .exact_linalg import ExactMatrix
from .heisenberg import (
    HeisElem,
    HeisParams,
    ParamsMismatch,
    a_tilde,
    b_tilde,
    bezout_center,
    heis_mul,
    random_elem,
    u_elem,
    v_elem,
)
from .report import Report

RepMatrix = ExactMatrix


def generator_names(params: HeisParams) -> list[str]:
    g = params.g
    return ["u", "v"] + [f"a{i}" for i in range(1, g + 1)] + [f"b{i}" for i in range(1, g + 1)]


def generator_elements(params: HeisParams) -> dict[str, HeisElem]:
    gens = {"u": u_elem(params), "v": v_elem(params)}
    for i in range(1, params.g + 1):
        gens[f"a{i}"] = a_tilde(params, i)
    for i in range(1, params.g + 1):
        gens[f"b{i}"] = b_tilde(params, i)
    return gens


def rho_L(h: HeisElem) -> RepMatrix:
    P = h.params
    g = P.g
    size = 2 * g + 2
    one, zero = Fraction(1), Fraction(0)
    rows = [[one if i == j else zero for j in range(size)] for i in range(size)]
    p0, q0 = h.p, h.q
    k_row = rows[0]
    for i in range(g):
        k_row[1 + i] = Fraction(-q0[i])
        k_row[1 + g + i] = Fraction(p0[i])
        rows[1 + i][size - 1] = Fraction(p0[i])
        rows[1 + g + i][size - 1] = Fraction(q0[i])
    k_row[size - 1] = h.k
    return ExactMatrix(rows, cols=size)


def affine_slice(h: HeisElem) -> tuple[Fraction, ...]:
    """``rho_L(h)`` applied to ``(0, ..., 0, 1)``: recovers ``(k0, p0, q0, 1)``."""
    size = 2 * h.params.g + 2
    return rho_L(h).apply([0] * (size - 1) + [1])


def element_from_slice(params: HeisParams, vec) -> HeisElem:
    m = Fraction(vec[0]) / params.nu
    assert m.denominator == 1 and vec[-1] == 1
    return HeisElem(params, int(m), tuple(int(v) for v in vec[1:-1]))


class CoefficientSystem:
    """A representation H_g -> GL_d(Q) given on the generators u, v, a_i, b_i.

    Arbitrary elements are evaluated through the normal form

        (m, x) = nu^(m - unit * sum p_i q_i) * a_1^p_1 ... a_g^p_g * b_1^q_1 ... b_g^q_g

    where ``nu = u^s v^t`` for Bezout coefficients of ``(m_u, m_v)``.  A custom
    ``evaluator`` may replace the normal form (it is then trusted, and should be
    checked with :func:`check_representation`).
    """

    def __init__(
        self,
        params: HeisParams,
        images: Mapping[str, RepMatrix],
        label: str = "custom",
        evaluator: Callable[[HeisElem], RepMatrix] | None = None,
        check: int = 0,
        seed: int = 0,
    ):
        self.params = HeisParams.of(params)
        names = generator_names(self.params)
        missing = [n for n in names if n not in images]
        if missing:
            raise ValueError(f"missing generator images: {missing}")
        self.images = {n: images[n] for n in names}
        dims = {m.shape for m in self.images.values()}
        if len(dims) != 1:
            raise ValueError(f"generator images have different shapes: {dims}")
        (shape,) = dims
        if shape[0] != shape[1]:
            raise ValueError("generator images must be square")
        self.dim = shape[0]
        self.label = label
        self._evaluator = evaluator
        self._cache: dict[HeisElem, RepMatrix] = {}
        self._nu_image = None
        if check:
            report = check_representation(self, check, seed=seed)
            if not report.passed:
                raise ValueError(f"not a representation: {report.failures[0].detail}")

    def __repr__(self) -> str:
        return f"CoefficientSystem({self.label!r}, dim={self.dim}, g={self.params.g}, n={self.params.n})"

    def _center_image(self) -> RepMatrix:
        if self._nu_image is None:
            s, t = bezout_center(self.params)
            self._nu_image = (self.images["u"] ** s) @ (self.images["v"] ** t)
        return self._nu_image

    def normal_form_eval(self, h: HeisElem) -> RepMatrix:
        P = self.params
        g = P.g
        p, q = h.p, h.q
        m_center = h.m - P.unit * sum(a * b for a, b in zip(p, q))
        result = self._center_image() ** m_center
        for i in range(g):
            if p[i]:
                result = result @ (self.images[f"a{i + 1}"] ** p[i])
        for i in range(g):
            if q[i]:
                result = result @ (self.images[f"b{i + 1}"] ** q[i])
        return result

    def __call__(self, h: HeisElem) -> RepMatrix:
        if h.params != self.params:
            raise ParamsMismatch("element over a different group")
        cached = self._cache.get(h)
        if cached is None:
            cached = self._evaluator(h) if self._evaluator else self.normal_form_eval(h)
            if len(self._cache) < 200_000:
                self._cache[h] = cached
        return cached

    def generator_matrices(self) -> list[RepMatrix]:
        return [self.images[n] for n in generator_names(self.params)]

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "dim": self.dim,
            "images": {n: m.to_json() for n, m in self.images.items()},
        }

    @classmethod
    def from_json(cls, params: HeisParams, data: Mapping, check: int = 16) -> "CoefficientSystem":
        images = {n: ExactMatrix(m) for n, m in data["images"].items()}
        return cls(params, images, label=data.get("label", "file"), check=check)


def _gens_images(params: HeisParams, f: Callable[[HeisElem], RepMatrix]) -> dict[str, RepMatrix]:
    return {n: f(h) for n, h in generator_elements(params).items()}


def rho_l_system(params) -> CoefficientSystem:
    P = HeisParams.of(params)
    return CoefficientSystem(P, _gens_images(P, rho_L), label="rho-l", evaluator=rho_L)


def trivial_system(params, dim: int = 1) -> CoefficientSystem:
    P = HeisParams.of(params)
    eye = ExactMatrix.identity(dim)
    return CoefficientSystem(P, {n: eye for n in generator_names(P)}, label="trivial-q")


def character_system(params, values, center_sign: int = 1) -> CoefficientSystem:
    """One-dimensional character: a_i -> values[i], b_i -> values[g+i], and the
    generator nu of the center -> ``center_sign`` (must be +1 or -1 over Q)."""
    P = HeisParams.of(params)
    values = [Fraction(v) for v in values]
    if len(values) != P.rank:
        raise ValueError(f"need {P.rank} character values")
    if any(v == 0 for v in values):
        raise ValueError("character values must be nonzero")
    if center_sign not in (1, -1):
        raise ValueError("the center must map to +1 or -1")
    one = lambda v: ExactMatrix([[v]])  # noqa: E731
    images = {"u": one(center_sign ** P.m_u), "v": one(center_sign ** P.m_v)}
    for i in range(P.g):
        images[f"a{i + 1}"] = one(values[i])
        images[f"b{i + 1}"] = one(values[P.g + i])
    label = "char:" + ",".join(str(v) for v in values) + ("" if center_sign == 1 else ";-1")
    return CoefficientSystem(P, images, label=label)


def random_character(params, rng: random.Random) -> CoefficientSystem:
    P = HeisParams.of(params)
    choices = [Fraction(a, b) for a in range(-3, 4) if a for b in (1, 2, 3)]
    return character_system(P, [rng.choice(choices) for _ in range(P.rank)], rng.choice((1, -1)))


def twist(rep: CoefficientSystem, t: HeisAut) -> CoefficientSystem:
    """The system ``h -> rep(t(h))``."""
    if rep.params != t.params:
        raise ParamsMismatch("representation and automorphism over different groups")

    def evaluator(h):
        return rep(aut_apply(t, h))

    images = _gens_images(rep.params, evaluator)
    return CoefficientSystem(rep.params, images, label=f"{rep.label}@twisted", evaluator=evaluator)


def intertwiner(t: HeisAut) -> RepMatrix:
    """Matrix of ``(k, x, t) -> (k + (c.x) nu, M x, t)`` on L."""
    P = t.params
    size = P.rank + 2
    rows = [[Fraction(0)] * size for _ in range(size)]
    rows[0][0] = Fraction(1)
    for j in range(P.rank):
        rows[0][1 + j] = t.c[j] * P.nu
        for i in range(P.rank):
            rows[1 + i][1 + j] = Fraction(t.M[i][j])
    rows[size - 1][size - 1] = Fraction(1)
    return ExactMatrix(rows, cols=size)


def check_representation(rep: CoefficientSystem, samples: int, seed: int = 0, rng: random.Random | None = None) -> Report:
    """Compare rep(h1 h2) with rep(h1) rep(h2) on random pairs."""
    if samples < 1:
        raise ValueError("samples must be positive")
    rng = rng or random.Random(seed)
    P = rep.params
    report = Report(f"check-representation {rep.label}")
    eye = ExactMatrix.identity(rep.dim)
    report.add("identity", rep(HeisElem(P, 0)) == eye)
    for _ in range(samples):
        h1 = random_elem(P, rng)
        h2 = random_elem(P, rng)
        if rep(heis_mul(h1, h2)) == rep(h1) @ rep(h2):
            report.add("homomorphism", True)
        else:
            report.add("homomorphism", False, h1=h1.to_json(), h2=h2.to_json())
    return report


def is_unitriangular(m: RepMatrix) -> bool:
    n = m.rows
    return all(m[i, i] == 1 for i in range(n)) and all(m[i, j] == 0 for i in range(n) for j in range(i))
