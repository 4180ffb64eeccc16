"""The Heisenberg group H_g = Z.nu x H_1(Sigma_g; Z), its group ring, and the
quotient map phi from the weakly framed braid group.

Elements are stored as ``(m, x)`` where the central coordinate is ``k = m * nu``
and ``x`` is an integer vector in the basis ``(a_1..a_g, b_1..b_g)``.  The
product is ``(k, x)(l, y) = (k + l + x.y, x + y)`` with the intersection
pairing ``a_i . b_j = delta_ij``, ``b_i . a_j = -delta_ij``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

from .braid_presentation import (
    BraidWord,
    Presentation,
    SurfaceParams,
    build_presentation,
    render,
    sigma,
    word,
    F,
)
from .report import Report


@dataclass(frozen=True)
class HeisParams:
    g: int
    n: int
    d: int = field(init=False, compare=False)
    nu: Fraction = field(init=False, compare=False)

    def __post_init__(self):
        SurfaceParams(self.g, self.n)  # validates
        d = gcd(2 * self.g - 2, self.g + self.n - 1)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "nu", Fraction(d, 2 * self.g - 2))

    @classmethod
    def of(cls, params) -> "HeisParams":
        if isinstance(params, HeisParams):
            return params
        return cls(params.g, params.n)

    @property
    def surface(self) -> SurfaceParams:
        return SurfaceParams(self.g, self.n)

    @property
    def unit(self) -> int:
        """m-value of k = 1; also the m-value of u and of one intersection unit."""
        return (2 * self.g - 2) // self.d

    @property
    def m_u(self) -> int:
        return self.unit

    @property
    def m_v(self) -> int:
        return (self.g + self.n - 1) // self.d

    @property
    def rank(self) -> int:
        return 2 * self.g


def intersection(x: Sequence[int], y: Sequence[int]) -> int:
    g = len(x) // 2
    return sum(x[i] * y[g + i] - x[g + i] * y[i] for i in range(g))


class ParamsMismatch(ValueError):
    pass


@dataclass(frozen=True)
class HeisElem:
    params: HeisParams
    m: int
    x: tuple = ()

    def __post_init__(self):
        x = tuple(int(v) for v in self.x) if self.x else (0,) * self.params.rank
        if len(x) != self.params.rank:
            raise ValueError(f"homology vector must have length {self.params.rank}")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "m", int(self.m))

    @property
    def k(self) -> Fraction:
        return self.m * self.params.nu

    @property
    def p(self) -> tuple:
        return self.x[: self.params.g]

    @property
    def q(self) -> tuple:
        return self.x[self.params.g :]

    def is_central(self) -> bool:
        return not any(self.x)

    def is_identity(self) -> bool:
        return self.m == 0 and self.is_central()

    def __mul__(self, other: "HeisElem") -> "HeisElem":
        return heis_mul(self, other)

    def __invert__(self) -> "HeisElem":
        return heis_inverse(self)

    def __pow__(self, e: int) -> "HeisElem":
        return heis_pow(self, e)

    def to_json(self) -> dict:
        k = self.k
        return {
            "m": self.m,
            "k": str(k.numerator) if k.denominator == 1 else f"{k.numerator}/{k.denominator}",
            "x": list(self.x),
        }

    @classmethod
    def from_json(cls, params: HeisParams, data: Mapping) -> "HeisElem":
        if "m" in data:
            m = int(data["m"])
        else:
            m = Fraction(str(data["k"])) / params.nu
            if m.denominator != 1:
                raise ValueError(f"k={data['k']} is not a multiple of nu={params.nu}")
            m = int(m)
        return cls(params, m, tuple(data.get("x") or ()))

    def __str__(self) -> str:
        return f"({self.k}, {list(self.x)})"


def identity(params: HeisParams) -> HeisElem:
    return HeisElem(params, 0)


def central(params: HeisParams, m: int) -> HeisElem:
    return HeisElem(params, m)


def basis_vector(params: HeisParams, index: int) -> tuple:
    x = [0] * params.rank
    x[index] = 1
    return tuple(x)


def a_tilde(params: HeisParams, i: int) -> HeisElem:
    return HeisElem(params, 0, basis_vector(params, i - 1))


def b_tilde(params: HeisParams, i: int) -> HeisElem:
    return HeisElem(params, 0, basis_vector(params, params.g + i - 1))


def u_elem(params: HeisParams) -> HeisElem:
    return HeisElem(params, params.m_u)


def v_elem(params: HeisParams) -> HeisElem:
    return HeisElem(params, params.m_v)


def _same(a: HeisElem, b: HeisElem) -> None:
    if a.params != b.params:
        raise ParamsMismatch(f"elements over {a.params} and {b.params}")


def heis_mul(h1: HeisElem, h2: HeisElem) -> HeisElem:
    _same(h1, h2)
    P = h1.params
    m = h1.m + h2.m + P.unit * intersection(h1.x, h2.x)
    return HeisElem(P, m, tuple(a + b for a, b in zip(h1.x, h2.x)))


def heis_inverse(h: HeisElem) -> HeisElem:
    return HeisElem(h.params, -h.m, tuple(-a for a in h.x))


def heis_pow(h: HeisElem, e: int) -> HeisElem:
    base = h if e >= 0 else heis_inverse(h)
    e = abs(e)
    result = identity(h.params)
    while e:
        if e & 1:
            result = heis_mul(result, base)
        e >>= 1
        if e:
            base = heis_mul(base, base)
    return result


def heis_commutator(h1: HeisElem, h2: HeisElem) -> HeisElem:
    return h1 * h2 * ~h1 * ~h2


def bezout_center(params: HeisParams) -> tuple[int, int]:
    """Integers ``(s, t)`` with ``s * m_u + t * m_v == 1``."""
    a, b = params.m_u, params.m_v
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r != 1:
        raise ArithmeticError(f"m_u={a} and m_v={b} are not coprime")
    return old_s, old_t


# --------------------------------------------------------------------------
# phi


def generator_image(params: HeisParams, gen) -> HeisElem:
    if gen.kind == "s":
        return u_elem(params)
    if gen.kind == "f":
        return v_elem(params)
    if gen.kind == "a":
        return a_tilde(params, gen.index)
    return b_tilde(params, gen.index)


def phi(w: BraidWord, params: HeisParams | None = None) -> HeisElem:
    P = HeisParams.of(w.params)
    if params is not None and HeisParams.of(params) != P:
        raise ParamsMismatch("word and target group disagree on (g, n)")
    # accumulate (m, x) directly; same as folding heis_mul over the letters
    m = 0
    x = [0] * P.rank
    g = P.g
    unit, mu, mv = P.unit, P.m_u, P.m_v
    for gen, e in w.letters:
        kind = gen.kind
        if kind == "s":
            m += e * mu
        elif kind == "f":
            m += e * mv
        else:
            idx = gen.index - 1 + (g if kind == "b" else 0)
            # x . (e * basis_idx)
            if kind == "a":
                m += unit * (-x[g + idx]) * e
            else:
                m += unit * x[idx - g] * e
            x[idx] += e
    return HeisElem(P, m, tuple(x))


def verify_presentation(params, presentation: Presentation | None = None) -> Report:
    """Evaluate phi on every relator; passes iff all are the identity."""
    P = HeisParams.of(params)
    pres = presentation or build_presentation(P.surface)
    report = Report(f"verify-presentation g={P.g} n={P.n}")
    per_family: dict[str, list[int]] = {}
    for i, rel in enumerate(pres.relators):
        value = phi(rel.word)
        ok = value.is_identity()
        counts = per_family.setdefault(rel.family, [0, 0])
        counts[0 if ok else 1] += 1
        detail = {"index": i, "family": rel.family}
        if not ok:
            detail.update(word=render(rel.word), residue=value.to_json())
        report.add(f"{rel.family}[{i}]", ok, **detail)
    report.extra["relators"] = len(pres.relators)
    report.extra["families"] = {fam: {"pass": c[0], "fail": c[1]} for fam, c in per_family.items()}
    return report


def kernel_witnesses(params, sample_words: Iterable[BraidWord]) -> Report:
    """Check the listed kernel elements of phi are sent to the identity."""
    P = HeisParams.of(params)
    S = P.surface
    report = Report(f"kernel-check g={P.g} n={P.n}")
    w0 = word(S, (sigma(1), P.g + P.n - 1), (F, 2 - 2 * P.g))
    val = phi(w0)
    report.add("s1^(g+n-1) F^(2-2g)", val.is_identity(), word=render(w0), value=val.to_json())
    s1 = word(S, sigma(1))
    for w in sample_words:
        c = s1 * w * s1.inverse() * w.inverse()
        val = phi(c)
        report.add(f"[s1, {render(w)}]", val.is_identity(), value=val.to_json())
    return report


# --------------------------------------------------------------------------
# group ring Z[H_g]


class GroupRingElem:
    """Finite formal integer combination of Heisenberg elements."""

    __slots__ = ("params", "terms")

    def __init__(self, params: HeisParams, terms: Mapping[HeisElem, int] | None = None):
        self.params = params
        clean = {}
        for h, c in (terms or {}).items():
            if h.params != params:
                raise ParamsMismatch("term over a different group")
            if c:
                clean[h] = clean.get(h, 0) + int(c)
        self.terms = {h: c for h, c in clean.items() if c}

    @classmethod
    def of(cls, h: HeisElem, coeff: int = 1) -> "GroupRingElem":
        return cls(h.params, {h: coeff})

    @classmethod
    def one(cls, params: HeisParams) -> "GroupRingElem":
        return cls(params, {identity(params): 1})

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupRingElem):
            return NotImplemented
        return self.params == other.params and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{h}" for h, c in sorted(self.terms.items(), key=lambda t: (t[0].m, t[0].x)))

    def __add__(self, other: "GroupRingElem") -> "GroupRingElem":
        return gr_add(self, other)

    def __neg__(self) -> "GroupRingElem":
        return gr_scale(self, -1)

    def __sub__(self, other: "GroupRingElem") -> "GroupRingElem":
        return gr_add(self, gr_scale(other, -1))

    def __mul__(self, other: "GroupRingElem") -> "GroupRingElem":
        return gr_mul(self, other)

    def is_zero(self) -> bool:
        return not self.terms

    def conj(self) -> "GroupRingElem":
        """The anti-involution sum c_h h -> sum c_h h^-1."""
        return GroupRingElem(self.params, {heis_inverse(h): c for h, c in self.terms.items()})


def gr_add(a: GroupRingElem, b: GroupRingElem) -> GroupRingElem:
    if a.params != b.params:
        raise ParamsMismatch("group ring elements over different groups")
    terms = dict(a.terms)
    for h, c in b.terms.items():
        terms[h] = terms.get(h, 0) + c
    return GroupRingElem(a.params, terms)


def gr_scale(a: GroupRingElem, c: int) -> GroupRingElem:
    return GroupRingElem(a.params, {h: c * v for h, v in a.terms.items()})


def gr_mul(a: GroupRingElem, b: GroupRingElem) -> GroupRingElem:
    if a.params != b.params:
        raise ParamsMismatch("group ring elements over different groups")
    terms: dict[HeisElem, int] = {}
    for h1, c1 in a.terms.items():
        for h2, c2 in b.terms.items():
            h = heis_mul(h1, h2)
            terms[h] = terms.get(h, 0) + c1 * c2
    return GroupRingElem(a.params, terms)


# --------------------------------------------------------------------------
# sampling


def random_elem(params: HeisParams, rng: random.Random, m_range: int = 30, x_range: int = 4) -> HeisElem:
    return HeisElem(
        params,
        rng.randint(-m_range, m_range),
        tuple(rng.randint(-x_range, x_range) for _ in range(params.rank)),
    )


def random_word(params, rng: random.Random, max_len: int = 12) -> BraidWord:
    from .braid_presentation import generators

    S = HeisParams.of(params).surface
    gens = generators(S)
    length = rng.randint(1, max_len)
    return BraidWord(S, tuple((rng.choice(gens), rng.choice((1, -1))) for _ in range(length)))
