"""Fox calculus on the weakly framed braid presentation and homology of the
presentation 2-complex with local coefficients pulled back along phi.

Conventions.  Left Fox derivatives satisfy

    w - 1 = sum_j (dw/dx_j)(x_j - 1)

in the free group ring.  A representation ``rho`` makes ``V`` a left module;
the cellular chains of the cover are turned into right modules through the
anti-involution ``h -> h^-1`` before tensoring with ``V``.  This gives the
blocks

    d1[j]    = rho(x_j^-1) - I
    d2[j, r] = rho(conj(dr/dx_j))

and ``d1 @ d2`` has ``r``-th block ``rho(r^-1) - I``, which vanishes exactly
when ``rho(phi(r)) = I``.  H_0 is then the module of coinvariants of ``V``.
Only degrees 0 and 1 compute group homology; the degree 2 number is a
property of this particular 2-complex.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .braid_presentation import (
    BraidWord,
    Generator,
    Presentation,
    build_presentation,
    exponent_sums,
    render,
)
from .exact_linalg import ExactMatrix, block_matrix, rank, smith_normal_form
from .heisenberg import GroupRingElem, HeisElem, HeisParams, phi
from .representations import CoefficientSystem, generator_elements

ProgressCallback = Callable[[int, int], None]


class FreeGroupRingElem:
    """Finite integer combination of freely reduced words."""

    __slots__ = ("params", "terms")

    def __init__(self, params, terms: Mapping[BraidWord, int] | None = None):
        self.params = params
        clean: dict[BraidWord, int] = {}
        for w, c in (terms or {}).items():
            clean[w] = clean.get(w, 0) + c
        self.terms = {w: c for w, c in clean.items() if c}

    @classmethod
    def of(cls, w: BraidWord, c: int = 1) -> "FreeGroupRingElem":
        return cls(w.params, {w: c})

    @classmethod
    def one(cls, params) -> "FreeGroupRingElem":
        return cls(params, {BraidWord(params): 1})

    def __eq__(self, other) -> bool:
        if not isinstance(other, FreeGroupRingElem):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "FreeGroupRingElem") -> "FreeGroupRingElem":
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, 0) + c
        return FreeGroupRingElem(self.params, terms)

    def __neg__(self) -> "FreeGroupRingElem":
        return FreeGroupRingElem(self.params, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "FreeGroupRingElem") -> "FreeGroupRingElem":
        return self + (-other)

    def __mul__(self, other: "FreeGroupRingElem") -> "FreeGroupRingElem":
        terms: dict[BraidWord, int] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 * w2
                terms[w] = terms.get(w, 0) + c1 * c2
        return FreeGroupRingElem(self.params, terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*[{render(w) or '1'}]" for w, c in self.terms.items())

    def is_zero(self) -> bool:
        return not self.terms

    def augmentation(self) -> int:
        return sum(self.terms.values())

    def to_heisenberg(self) -> GroupRingElem:
        """Push forward along phi to Z[H_g]."""
        P = HeisParams.of(self.params)
        terms: dict[HeisElem, int] = {}
        for w, c in self.terms.items():
            h = phi(w)
            terms[h] = terms.get(h, 0) + c
        return GroupRingElem(P, terms)


def fox_derivative(w: BraidWord, x: Generator, generators: Sequence[Generator] | None = None) -> FreeGroupRingElem:
    """Left Fox derivative of ``w`` with respect to the generator ``x``."""
    if generators is not None and x not in generators:
        raise ValueError(f"{x} is not one of the generators")
    if not x.valid_for(w.params):
        raise ValueError(f"{x} is not a generator for g={w.params.g}, n={w.params.n}")
    terms: dict[BraidWord, int] = {}
    prefix: list = []
    for gen, e in w.letters:
        if gen == x:
            if e == 1:
                key = BraidWord(w.params, tuple(prefix))
                terms[key] = terms.get(key, 0) + 1
            else:
                key = BraidWord(w.params, tuple(prefix) + ((gen, -1),))
                terms[key] = terms.get(key, 0) - 1
        prefix.append((gen, e))
    return FreeGroupRingElem(w.params, terms)


def fox_identity_holds(w: BraidWord, generators: Sequence[Generator]) -> bool:
    """Check ``w - 1 == sum_j (dw/dx_j)(x_j - 1)`` in the free group ring."""
    P = w.params
    one = FreeGroupRingElem.one(P)
    total = FreeGroupRingElem(P)
    for x in generators:
        xj = FreeGroupRingElem.of(BraidWord(P, ((x, 1),)))
        total = total + fox_derivative(w, x) * (xj - one)
    return total == FreeGroupRingElem.of(w) - one


def evaluate(rep: CoefficientSystem, elem: GroupRingElem) -> ExactMatrix:
    """rho extended linearly to the group ring."""
    out = ExactMatrix.zeros(rep.dim, rep.dim)
    for h, c in elem.terms.items():
        out = out + rep(h).scale(c)
    return out


@dataclass
class ChainComplexData:
    params: HeisParams
    dim: int
    generators: tuple
    families: tuple
    d1: ExactMatrix
    d2: ExactMatrix

    @property
    def N(self) -> int:
        return len(self.generators)

    @property
    def R(self) -> int:
        return len(self.families)

    def composition(self) -> ExactMatrix:
        return self.d1 @ self.d2

    def is_complex(self) -> bool:
        return self.composition().is_zero()

    def failing_blocks(self) -> list[dict]:
        """Relators whose column block of ``d1 @ d2`` is nonzero."""
        comp = self.composition()
        d = self.dim
        bad = []
        for r in range(self.R):
            block = [row[r * d : (r + 1) * d] for row in comp.entries]
            if any(v for row in block for v in row):
                bad.append({"relator": r, "family": self.families[r], "block": ExactMatrix(block).to_json()})
        return bad

    def to_json(self) -> dict:
        return {"d1": self.d1.to_json(), "d2": self.d2.to_json()}


def boundary_matrices(
    pres: Presentation,
    rep: CoefficientSystem,
    check: int = 0,
    progress: ProgressCallback | None = None,
) -> ChainComplexData:
    P = HeisParams.of(pres.params)
    if rep.params != P:
        raise ValueError("coefficient system and presentation disagree on (g, n)")
    if check:
        from .representations import check_representation

        report = check_representation(rep, check)
        if not report.passed:
            raise ValueError(f"coefficient system is not a representation: {report.failures[0].detail}")
    d = rep.dim
    eye = ExactMatrix.identity(d)
    gens = pres.generators
    d1_blocks = [rep(phi(BraidWord(pres.params, ((x, -1),)))) - eye for x in gens]
    columns = []
    total = len(pres.relators)
    for r, rel in enumerate(pres.relators):
        col = [evaluate(rep, fox_derivative(rel.word, x).to_heisenberg().conj()) for x in gens]
        columns.append(col)
        if progress:
            progress(r + 1, total)
    d1 = block_matrix([d1_blocks])
    if columns:
        d2 = block_matrix([[columns[r][j] for r in range(total)] for j in range(len(gens))])
    else:
        d2 = ExactMatrix.zeros(len(gens) * d, 0)
    return ChainComplexData(P, d, tuple(gens), tuple(rel.family for rel in pres.relators), d1, d2)


@dataclass
class HomologyReport:
    params: HeisParams
    coefficients: str
    dim: int
    N: int
    R: int
    h0: int
    h1: int
    h2_presentation_complex: int
    integral: dict | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def euler_lhs(self) -> int:
        return self.h0 - self.h1 + self.h2_presentation_complex

    @property
    def euler_rhs(self) -> int:
        return self.dim * (1 - self.N + self.R)

    @property
    def euler_ok(self) -> bool:
        return self.euler_lhs == self.euler_rhs

    def to_json(self) -> dict:
        out = {
            "params": {"g": self.params.g, "n": self.params.n},
            "coefficients": self.coefficients,
            "dim": self.dim,
            "generators": self.N,
            "relators": self.R,
            "h0": self.h0,
            "h1": self.h1,
            "h2_presentation_complex": self.h2_presentation_complex,
            "euler_check": {"lhs": self.euler_lhs, "rhs": self.euler_rhs, "ok": self.euler_ok},
            "notes": list(self.notes),
        }
        if self.integral is not None:
            out.update(self.integral)
        return out


_DEGREE2_NOTE = (
    "h2_presentation_complex is the degree 2 homology of the presentation 2-complex; "
    "it is not claimed to be H_2 of the group or of the configuration space"
)


def homology_from_complex(cx: ChainComplexData, label: str) -> HomologyReport:
    rk1 = rank(cx.d1)
    rk2 = rank(cx.d2)
    d, N, R = cx.dim, cx.N, cx.R
    return HomologyReport(
        cx.params,
        label,
        d,
        N,
        R,
        h0=d - rk1,
        h1=N * d - rk1 - rk2,
        h2_presentation_complex=R * d - rk2,
        notes=[_DEGREE2_NOTE],
    )


def homology_ranks(
    params,
    rep: CoefficientSystem,
    presentation: Presentation | None = None,
    progress: ProgressCallback | None = None,
) -> HomologyReport:
    P = HeisParams.of(params)
    pres = presentation or build_presentation(P.surface)
    cx = boundary_matrices(pres, rep, progress=progress)
    if not cx.is_complex():
        raise ValueError(f"d1 @ d2 != 0; failing relators: {[b['relator'] for b in cx.failing_blocks()]}")
    return homology_from_complex(cx, rep.label)


def coinvariants_dim(rep: CoefficientSystem) -> int:
    """d - rank [rho(u) - I | rho(v) - I | rho(a_i) - I | rho(b_i) - I]."""
    eye = ExactMatrix.identity(rep.dim)
    blocks = [rep(h) - eye for h in generator_elements(rep.params).values()]
    return rep.dim - rank(block_matrix([blocks]))


def abelianization_matrix(pres: Presentation) -> list[list[int]]:
    """Exponent-sum matrix: one row per relator, one column per generator."""
    return [exponent_sums(rel.word, pres.generators) for rel in pres.relators]


def integral_homology_trivial(params, presentation: Presentation | None = None) -> HomologyReport:
    P = HeisParams.of(params)
    pres = presentation or build_presentation(P.surface)
    A = abelianization_matrix(pres)
    N, R = len(pres.generators), len(pres.relators)
    _, D, _ = smith_normal_form(A)
    diag = [D[i][i] for i in range(min(R, N))]
    r = sum(1 for v in diag if v)
    torsion = [v for v in diag if v > 1]
    rep = HomologyReport(
        P,
        "trivial-z",
        1,
        N,
        R,
        h0=1,
        h1=N - r,
        h2_presentation_complex=R - r,
        notes=[_DEGREE2_NOTE],
    )
    rep.integral = {
        "h0": {"free_rank": 1, "torsion": []},
        "h1": {"free_rank": N - r, "torsion": torsion},
        "h2_presentation_complex": {"free_rank": R - r, "torsion": []},
        "h1_rational_dim": N - r,
    }
    return rep


def trivial_q_homology(params) -> HomologyReport:
    from .representations import trivial_system

    return homology_ranks(params, trivial_system(params))
