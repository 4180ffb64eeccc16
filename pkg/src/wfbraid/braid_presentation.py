"""Words in the weakly framed surface braid generators and the finite
presentation of the weakly framed braid group of a closed genus ``g`` surface.

Generators are ``alpha_1..alpha_g, beta_1..beta_g, sigma_1..sigma_{n-1}, F``.
A word ``x1 x2 ... xm`` means the product taken left to right.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

FAMILIES = ("FCENTRAL", "BR1", "BR2", "CR1", "CR2", "CR3", "SCR", "FR")


class WordSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class IndexOutOfBounds(ValueError):
    def __init__(self, token: str, params: "SurfaceParams"):
        super().__init__(f"generator index out of range in token {token!r} for g={params.g}, n={params.n}")
        self.token = token


@dataclass(frozen=True)
class SurfaceParams:
    g: int
    n: int

    def __post_init__(self):
        if not (isinstance(self.g, int) and isinstance(self.n, int)):
            raise TypeError("g and n must be integers")
        if self.g < 2 or self.n < 2:
            raise ValueError(f"need g >= 2 and n >= 2, got g={self.g}, n={self.n}")


@dataclass(frozen=True, order=True)
class Generator:
    """One of ``a<i>`` (alpha), ``b<i>`` (beta), ``s<i>`` (sigma) or ``f`` (F)."""

    kind: str
    index: int = 0

    def __post_init__(self):
        if self.kind not in ("a", "b", "s", "f"):
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.kind == "f" and self.index != 0:
            raise ValueError("F carries no index")

    def valid_for(self, params: SurfaceParams) -> bool:
        if self.kind in ("a", "b"):
            return 1 <= self.index <= params.g
        if self.kind == "s":
            return 1 <= self.index <= params.n - 1
        return True

    def __str__(self) -> str:
        return "f" if self.kind == "f" else f"{self.kind}{self.index}"


def alpha(i: int) -> Generator:
    return Generator("a", i)


def beta(i: int) -> Generator:
    return Generator("b", i)


def sigma(i: int) -> Generator:
    return Generator("s", i)


F = Generator("f")

Letter = tuple  # (Generator, +1 | -1)


def _reduce_letters(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    stack: list[Letter] = []
    for gen, e in letters:
        if stack and stack[-1][0] == gen and stack[-1][1] == -e:
            stack.pop()
        else:
            stack.append((gen, e))
    return tuple(stack)


@dataclass(frozen=True)
class BraidWord:
    """A freely reduced word in the generators.

    The constructor reduces its input, so every instance satisfies the
    no-adjacent-cancelling-pair invariant.
    """

    params: SurfaceParams
    letters: tuple = field(default=())

    def __post_init__(self):
        letters = tuple((g, int(e)) for g, e in self.letters)
        for gen, e in letters:
            if e not in (1, -1):
                raise ValueError(f"exponent must be +1 or -1, got {e}")
            if not gen.valid_for(self.params):
                raise IndexOutOfBounds(str(gen), self.params)
        object.__setattr__(self, "letters", _reduce_letters(letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.params != other.params:
            raise ValueError("words over different surfaces")
        return BraidWord(self.params, self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.params, tuple((g, -e) for g, e in reversed(self.letters)))

    def __pow__(self, e: int) -> "BraidWord":
        base = self if e >= 0 else self.inverse()
        return BraidWord(self.params, base.letters * abs(e))

    def render(self) -> str:
        return render(self)

    def __str__(self) -> str:
        return self.render()


def word(params: SurfaceParams, *items) -> BraidWord:
    """Build a word from generators, ``(generator, exponent)`` pairs or words."""
    letters: list[Letter] = []
    for item in items:
        if isinstance(item, Generator):
            letters.append((item, 1))
        elif isinstance(item, BraidWord):
            letters.extend(item.letters)
        else:
            gen, e = item
            letters.extend([(gen, 1 if e > 0 else -1)] * abs(e))
    return BraidWord(params, tuple(letters))


def inv(gen: Generator) -> Letter:
    return (gen, -1)


def free_reduce(w: BraidWord) -> BraidWord:
    # BraidWord is reduced on construction; kept as an explicit operation
    return BraidWord(w.params, _reduce_letters(w.letters))


_TOKEN = re.compile(r"([abs])(\d+)|([fF])")


def parse_word(text: str, params: SurfaceParams) -> BraidWord:
    """Parse whitespace separated tokens like ``"s1 b1' f'"``."""
    letters: list[Letter] = []
    pos = 0
    length = len(text)
    while pos < length:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if m is None:
            raise WordSyntaxError(f"unexpected character {text[pos]!r}", pos)
        end = m.end()
        exp = 1
        if end < length and text[end] == "'":
            exp = -1
            end += 1
        if end < length and not text[end].isspace():
            raise WordSyntaxError(f"missing whitespace after token {text[pos:end]!r}", end)
        if m.group(3):
            gen = F
        else:
            gen = Generator(m.group(1), int(m.group(2)))
        if not gen.valid_for(params):
            raise IndexOutOfBounds(text[pos:end], params)
        letters.append((gen, exp))
        pos = end
    return BraidWord(params, tuple(letters))


def render(w: BraidWord) -> str:
    return " ".join(f"{gen}{'' if e == 1 else chr(39)}" for gen, e in w.letters)


def commutator(params: SurfaceParams, x, y) -> BraidWord:
    """``[x, y] = x y x^-1 y^-1`` for generators or words."""
    x = word(params, x)
    y = word(params, y)
    return x * y * x.inverse() * y.inverse()


@dataclass(frozen=True)
class Relator:
    family: str
    word: BraidWord


@dataclass(frozen=True)
class Presentation:
    params: SurfaceParams
    generators: tuple
    relators: tuple

    def family_counts(self) -> dict[str, int]:
        counts = dict.fromkeys(FAMILIES, 0)
        for rel in self.relators:
            counts[rel.family] += 1
        return counts

    def to_text(self) -> str:
        lines = [f"wfbraid g={self.params.g} n={self.params.n}"]
        lines.extend(render(rel.word) for rel in self.relators)
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "params": {"g": self.params.g, "n": self.params.n},
            "generators": [str(gen) for gen in self.generators],
            "relators": [{"family": rel.family, "word": render(rel.word)} for rel in self.relators],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def replace_relator(self, index: int, new_word: BraidWord) -> "Presentation":
        rels = list(self.relators)
        rels[index] = Relator(rels[index].family, new_word)
        return Presentation(self.params, self.generators, tuple(rels))


def generators(params: SurfaceParams) -> tuple[Generator, ...]:
    g, n = params.g, params.n
    return (
        tuple(alpha(i) for i in range(1, g + 1))
        + tuple(beta(i) for i in range(1, g + 1))
        + tuple(sigma(i) for i in range(1, n))
        + (F,)
    )


def expected_relator_count(params: SurfaceParams) -> int:
    g, n = params.g, params.n
    far_pairs = sum(1 for i in range(1, n) for j in range(i + 1, n) if j - i >= 2)
    return (2 * g + n - 1) + far_pairs + (n - 2) + 2 * g * (n - 2) + 2 * g + 4 * g * (g - 1) // 2 + g + 1


def surface_word(params: SurfaceParams) -> BraidWord:
    """``beta_g abar_g bbar_g alpha_g ... beta_1 abar_1 bbar_1 alpha_1``."""
    letters: list[Letter] = []
    for r in range(params.g, 0, -1):
        letters += [(beta(r), 1), (alpha(r), -1), (beta(r), -1), (alpha(r), 1)]
    return BraidWord(params, tuple(letters))


def fr_lhs(params: SurfaceParams) -> BraidWord:
    n = params.n
    sig = [(sigma(i), 1) for i in range(1, n)]
    return surface_word(params) * BraidWord(params, tuple(sig + sig[::-1]))


def build_presentation(params: SurfaceParams) -> Presentation:
    g, n = params.g, params.n
    P = params
    rels: list[Relator] = []

    def add(family, w):
        rels.append(Relator(family, w))

    gens = generators(P)
    for x in gens[:-1]:
        add("FCENTRAL", commutator(P, F, x))

    for i in range(1, n):
        for j in range(i + 2, n):
            add("BR1", commutator(P, sigma(i), sigma(j)))
    for i in range(1, n - 1):
        si, sj = sigma(i), sigma(i + 1)
        add("BR2", word(P, si, sj, si, inv(sj), inv(si), inv(sj)))

    for i in range(2, n):
        for r in range(1, g + 1):
            add("CR1", commutator(P, alpha(r), sigma(i)))
            add("CR1", commutator(P, beta(r), sigma(i)))

    s1 = sigma(1)
    for r in range(1, g + 1):
        add("CR2", commutator(P, alpha(r), word(P, s1, alpha(r), s1)))
        add("CR2", commutator(P, beta(r), word(P, s1, beta(r), s1)))

    for r in range(1, g + 1):
        for s in range(r + 1, g + 1):
            for x in (alpha(r), beta(r)):
                for y in (alpha(s), beta(s)):
                    add("CR3", commutator(P, x, word(P, inv(s1), y, s1)))

    for r in range(1, g + 1):
        lhs = word(P, s1, beta(r), s1, alpha(r), s1)
        rhs = word(P, alpha(r), s1, beta(r))
        add("SCR", lhs * rhs.inverse())

    add("FR", fr_lhs(P) * word(P, (F, 4 - 4 * g)))

    pres = Presentation(P, gens, tuple(rels))
    assert len(pres.relators) == expected_relator_count(P)
    return pres


def parse_presentation_text(text: str) -> Presentation:
    """Inverse of :meth:`Presentation.to_text`; families are not recoverable
    from the plain format and are re-derived by matching against the built
    presentation where possible."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    m = re.fullmatch(r"wfbraid g=(\d+) n=(\d+)", lines[0].strip())
    if not m:
        raise WordSyntaxError("bad header", 0)
    params = SurfaceParams(int(m.group(1)), int(m.group(2)))
    reference = {rel.word: rel.family for rel in build_presentation(params).relators}
    rels = []
    for ln in lines[1:]:
        w = parse_word(ln, params)
        rels.append(Relator(reference.get(w, "UNKNOWN"), w))
    return Presentation(params, generators(params), tuple(rels))


def exponent_sums(w: BraidWord, gens: Sequence[Generator]) -> list[int]:
    index = {gen: i for i, gen in enumerate(gens)}
    sums = [0] * len(gens)
    for gen, e in w.letters:
        sums[index[gen]] += e
    return sums
