"""Two-letter theory: Christoffel words and special Sturmian morphisms.

A morphism on a two-letter alphabet ``(x, y)`` is stored as the pair of
images ``(f(x), f(y))``; evaluated on the divided seed ``x|y`` it is the
authentic mode ``f(x)|f(y)``.

The four elementary generators, relative to the ordered alphabet (x, y)::

    G : x -> x,  y -> xy        G~: x -> x,  y -> yx
    D : x -> yx, y -> y         D~: x -> xy, y -> y

Normal forms are tuples of generators written left to right as in
``G^k D G^2n``; the rightmost factor acts first.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from .words import DividedMode, DomainError, Word, desubstitute, rotate, substitute

Mat2 = tuple[tuple[int, int], tuple[int, int]]


class Generator2(str, enum.Enum):
    G = "G"
    D = "D"
    GT = "G~"
    DT = "D~"

    def __str__(self) -> str:
        return self.value

    def images(self, x: str, y: str) -> dict[str, str]:
        return {
            Generator2.G: {x: x, y: x + y},
            Generator2.GT: {x: x, y: y + x},
            Generator2.D: {x: y + x, y: y},
            Generator2.DT: {x: x + y, y: y},
        }[self]


G, D, GT, DT = Generator2.G, Generator2.D, Generator2.GT, Generator2.DT

NormalForm2 = tuple[Generator2, ...]

STURMIAN_ORDER = (G, GT, D, DT)
STANDARD_ORDER = (G, D)


@dataclass(frozen=True, order=True)
class Substitution2:
    alphabet: tuple[str, str]
    images: tuple[Word, Word]

    def __post_init__(self):
        x, y = self.alphabet
        if x == y:
            raise DomainError("alphabet letters must differ")
        if not all(self.images):
            raise DomainError("images must be nonempty")
        for img in self.images:
            if set(img) - {x, y}:
                raise DomainError(f"image {img!r} leaves the alphabet {x}{y}")

    @classmethod
    def identity(cls, x: str = "a", y: str = "b") -> Substitution2:
        return cls((x, y), (x, y))

    @classmethod
    def from_mode(cls, mode: DividedMode, alphabet: tuple[str, str]) -> Substitution2:
        if mode.is_triadic:
            raise DomainError("a two-letter morphism needs an authentic (single-divider) mode")
        return cls(alphabet, mode.segments)

    @property
    def mode(self) -> DividedMode:
        return DividedMode("".join(self.images), (len(self.images[0]),))

    @property
    def is_identity(self) -> bool:
        return self.images == self.alphabet

    def __call__(self, w: Word) -> Word:
        return substitute(w, dict(zip(self.alphabet, self.images)))

    def __str__(self) -> str:
        return f"{self.images[0]}|{self.images[1]}"


def christoffel_word(p: int, q: int, lower: bool = True, alphabet: tuple[str, str] = ("a", "b")) -> Word:
    """Christoffel word with ``p`` x's and ``q`` y's (the lattice path under
    the segment from (0, 0) to (p, q) when ``lower``; its reversal otherwise)."""
    if p < 1 or q < 1 or math.gcd(p, q) != 1:
        raise DomainError(f"Christoffel word needs coprime positive counts, got ({p}, {q})")
    x, y = alphabet
    n = p + q
    w = "".join(y if (i * q) // n > ((i - 1) * q) // n else x for i in range(1, n + 1))
    return w if lower else w[::-1]


@lru_cache(maxsize=4096)
def _christoffel_square(p: int, q: int) -> str:
    w = christoffel_word(p, q)
    return w + w


def is_well_formed_word(w: Word) -> bool:
    """True iff ``w`` is a conjugate of a Christoffel word.

    Words using a single letter are not well-formed.
    """
    letters = sorted(set(w))
    if len(letters) != 2:
        return False
    x, y = letters
    p, q = w.count(x), w.count(y)
    if math.gcd(p, q) != 1:
        return False
    return w.translate(str.maketrans(x + y, "ab")) in _christoffel_square(p, q)


def apply_generator(g: Generator2, s: Substitution2) -> Substitution2:
    """Return ``g o s``."""
    imgs = g.images(*s.alphabet)
    return Substitution2(s.alphabet, tuple(substitute(w, imgs) for w in s.images))


def peel_generator(g: Generator2, s: Substitution2) -> Optional[Substitution2]:
    """Return ``t`` with ``g o t == s`` and strictly shorter images, or None."""
    imgs = g.images(*s.alphabet)
    pre = [desubstitute(w, imgs) for w in s.images]
    if any(not p for p in pre):
        return None
    if sum(map(len, pre)) == sum(map(len, s.images)):
        return None
    return Substitution2(s.alphabet, tuple(pre))


def evaluate_normal_form(nf: Sequence[Generator2], alphabet: tuple[str, str] = ("a", "b")) -> Substitution2:
    s = Substitution2.identity(*alphabet)
    for g in reversed(nf):
        s = apply_generator(g, s)
    return s


def _recognize(s: Substitution2, order: Sequence[Generator2]) -> Optional[NormalForm2]:
    failed: set[Substitution2] = set()

    def search(t: Substitution2) -> Optional[list[Generator2]]:
        if t.is_identity:
            return []
        if t in failed:
            return None
        for g in order:
            pre = peel_generator(g, t)
            if pre is None:
                continue
            rest = search(pre)
            if rest is not None:
                return [g, *rest]
        failed.add(t)
        return None

    found = search(s)
    return None if found is None else tuple(found)


def recognize_special_sturmian(s: Substitution2) -> Optional[NormalForm2]:
    """Certificate over {G, G~, D, D~} evaluating to ``s``, or None if ``s``
    is outside the special Sturmian monoid."""
    return _recognize(s, STURMIAN_ORDER)


def recognize_special_standard(s: Substitution2) -> Optional[NormalForm2]:
    """Like :func:`recognize_special_sturmian` restricted to {G, D}."""
    return _recognize(s, STANDARD_ORDER)


def is_special_sturmian(s: Substitution2) -> bool:
    return recognize_special_sturmian(s) is not None


def is_special_standard(s: Substitution2) -> bool:
    return recognize_special_standard(s) is not None


def reverse_normal_form(nf: Sequence[Generator2]) -> NormalForm2:
    """The anti-automorphism of <G, D> fixing G and D."""
    for g in nf:
        if g not in (G, D):
            raise DomainError(f"reversal is only defined on <G, D>, got {g}")
    return tuple(reversed(nf))


def incidence2(s: Substitution2) -> Mat2:
    x, y = s.alphabet
    u, v = s.images
    return ((u.count(x), v.count(x)), (u.count(y), v.count(y)))


def det2(m: Mat2) -> int:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def power(g: Generator2, k: int) -> NormalForm2:
    return (g,) * k


def format_normal_form(nf: Sequence[Generator2]) -> str:
    """Compact text with exponents, e.g. ``G D G^2``; empty is ``id``."""
    if not nf:
        return "id"
    parts = []
    i = 0
    while i < len(nf):
        j = i
        while j < len(nf) and nf[j] == nf[i]:
            j += 1
        parts.append(str(nf[i]) if j - i == 1 else f"{nf[i]}^{j - i}")
        i = j
    return " ".join(parts)


def parse_normal_form(text: str) -> NormalForm2:
    out: list[Generator2] = []
    for tok in text.split():
        if tok == "id":
            continue
        name, _, exp = tok.partition("^")
        try:
            g = Generator2(name)
        except ValueError:
            raise DomainError(f"unknown generator {name!r}") from None
        out.extend([g] * (int(exp) if exp else 1))
    return tuple(out)


def standard_morphisms(max_len: int, alphabet: tuple[str, str] = ("a", "c")) -> Iterator[tuple[NormalForm2, Substitution2]]:
    """All special standard morphisms with ``|f(x)| + |f(y)| <= max_len``.

    Every generator strictly lengthens a morphism, so the search is finite;
    <G, D> is free, so each morphism appears once.
    """
    stack: list[tuple[NormalForm2, Substitution2]] = [((), Substitution2.identity(*alphabet))]
    while stack:
        nf, s = stack.pop()
        yield nf, s
        for g in (D, G):
            t = apply_generator(g, s)
            if sum(map(len, t.images)) <= max_len:
                stack.append(((g, *nf), t))


def authentic_divider(p: int, q: int) -> int:
    """The divider m at which conjugates of the (p, q) Christoffel class can
    be special Sturmian: the division must have determinant +1, which forces
    m*q = 1 mod p+q."""
    if p < 1 or q < 1 or math.gcd(p, q) != 1:
        raise DomainError(f"need coprime positive counts, got ({p}, {q})")
    n = p + q
    return pow(q, -1, n) if n > 1 else 1


def bad_conjugates(p: int, q: int, alphabet: tuple[str, str] = ("a", "b")) -> list[Word]:
    """Rotations of the (p, q) Christoffel word whose division at the
    authentic divider is not a special Sturmian morphism."""
    w = christoffel_word(p, q, alphabet=alphabet)
    m = authentic_divider(p, q)
    out = []
    for k in range(len(w)):
        r = rotate(w, k)
        if not is_special_sturmian(Substitution2(alphabet, (r[:m], r[m:]))):
            out.append(r)
    return out
