"""Three-letter theory: pairwise well-formed words, bisection, projections of
substitutions and the classification of triadic modes."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import permutations
from typing import NamedTuple, Optional

from .sturmian import (
    Mat2,
    Substitution2,
    is_special_standard,
    is_special_sturmian,
    is_well_formed_word,
)
from .words import (
    DividedMode,
    DomainError,
    Word,
    is_primitive,
    project_word,
    relabel,
    rotate,
    rotate_once,
    substitute,
)

Mat3 = tuple[tuple[int, int, int], tuple[int, int, int], tuple[int, int, int]]

SINGULAR_WORD = "abacaba"

# (source letter, target letter) of each named projection
PROJECTIONS = {
    "apotomic": ("b", "c"),
    "syntonic": ("c", "a"),
    "apo-syntonic": ("a", "b"),
}


class Substitution3(NamedTuple):
    a: Word
    b: Word
    c: Word

    @classmethod
    def from_mode(cls, mode: DividedMode) -> Substitution3:
        if not mode.is_triadic:
            raise DomainError(f"{mode} is not a triadic mode")
        return cls(*mode.segments)

    @classmethod
    def identity(cls) -> Substitution3:
        return cls("a", "b", "c")

    @property
    def mode(self) -> DividedMode:
        return DividedMode(self.a + self.b + self.c, (len(self.a), len(self.a) + len(self.b)))

    @property
    def word(self) -> Word:
        return self.a + self.b + self.c

    def __call__(self, w: Word) -> Word:
        return substitute(w, {"a": self.a, "b": self.b, "c": self.c})

    def relabel(self, perm: dict[str, str]) -> Substitution3:
        return Substitution3(*(relabel(w, perm) for w in self))

    def __str__(self) -> str:
        return str(self.mode)


def letter_permutations() -> list[dict[str, str]]:
    return [dict(zip("abc", p)) for p in permutations("abc")]


def canonical_form(s: Substitution3) -> Substitution3:
    """Representative of ``s`` up to renaming the letters inside its images."""
    return min(s.relabel(p) for p in letter_permutations())


def is_pairwise_well_formed(w: Word) -> bool:
    """All three letter identifications of ``w`` are well-formed (the
    singular class included)."""
    return all(is_well_formed_word(project_word(w, x, y)) for x, y in PROJECTIONS.values())


def is_singular(w: Word) -> bool:
    """Is ``w`` a conjugate of abacaba up to renaming the letters?"""
    if len(w) != len(SINGULAR_WORD):
        return False
    doubled = w + w
    return any(relabel(SINGULAR_WORD, p) in doubled for p in letter_permutations())


def is_pwwf_word(w: Word) -> bool:
    """Non-singular pairwise well-formed word."""
    return bool(w) and is_pairwise_well_formed(w) and not is_singular(w)


def bisect(w: Word) -> Word:
    """Split the c's of ``w`` over {a, c} alternately into b (odd-numbered
    occurrences) and c (even-numbered ones)."""
    if set(w) - {"a", "c"}:
        raise DomainError(f"bisection takes a word over {{a, c}}, got {w!r}")
    if len(w) % 2 == 0 or w.count("c") % 2:
        raise DomainError(f"bisection needs odd length and an even number of c's, got {w!r}")
    out = []
    seen = 0
    for ch in w:
        if ch == "c":
            seen += 1
            out.append("b" if seen % 2 else "c")
        else:
            out.append(ch)
    return "".join(out)


def bisecting_substitution(f: Substitution2) -> Substitution3:
    if f.alphabet != ("a", "c"):
        raise DomainError(f"bisecting substitution needs a morphism of {{a, c}}*, got alphabet {f.alphabet}")
    if not is_special_standard(f):
        raise DomainError(f"{f} is not special standard")
    v = bisect(f("ac"))
    m = len(f.images[0])
    if 2 * m >= len(v):
        raise DomainError(f"{f}: |f(a)| too long to slice off two segments")
    return Substitution3(v[:m], v[m : 2 * m], v[2 * m :])


def project_substitution(s: Substitution3, which: str) -> Substitution2:
    """The induced two-letter substitution, merging the two slots whose
    letters are identified."""
    try:
        x, y = PROJECTIONS[which]
    except KeyError:
        raise DomainError(f"unknown projection {which!r}") from None
    if which == "apotomic":
        images = (s.a, s.b + s.c)
        alphabet = ("a", "c")
    elif which == "apo-syntonic":
        images = (s.a + s.b, s.c)
        alphabet = ("b", "c")
    else:
        images = (s.a + s.b, s.c)
        alphabet = ("a", "b")
    return Substitution2(alphabet, tuple(project_word(w, x, y) for w in images))


def projections(s: Substitution3) -> dict[str, Substitution2]:
    return {which: project_substitution(s, which) for which in PROJECTIONS}


def is_authentic_pwwf_substitution(s: Substitution3) -> bool:
    return all(is_special_sturmian(p) for p in projections(s).values())


class ModeKind(str, enum.Enum):
    MORPHIC = "morphic"
    GOOD = "good"
    BAD_SYNTONIC = "bad*"
    BAD_APOTOMIC = "bad**"
    IRREGULAR = "irregular"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class ModeClassification:
    kind: ModeKind
    apotomic: bool
    syntonic: bool
    apo_syntonic: bool
    # set for morphic modes
    decomposition: Optional[object] = None

    @property
    def authentic(self) -> bool:
        return self.apotomic and self.syntonic and self.apo_syntonic


def classify_mode(s: Substitution3) -> ModeClassification:
    from .f3aut import decide_morphic

    ok = {which: is_special_sturmian(p) for which, p in projections(s).items()}
    apo, syn, aposyn = ok["apotomic"], ok["syntonic"], ok["apo-syntonic"]
    decomposition = None
    if apo and syn and aposyn:
        decomposition = decide_morphic(s)
        kind = ModeKind.MORPHIC if decomposition is not None else ModeKind.GOOD
    elif apo and aposyn:
        kind = ModeKind.BAD_SYNTONIC
    elif syn and not apo and not aposyn:
        kind = ModeKind.BAD_APOTOMIC
    else:
        kind = ModeKind.IRREGULAR
    return ModeClassification(kind, apo, syn, aposyn, decomposition)


def is_standard_mode(s: Substitution3) -> bool:
    """Apotomic and apo-syntonic projections are both special standard."""
    return is_special_standard(project_substitution(s, "apotomic")) and is_special_standard(
        project_substitution(s, "apo-syntonic")
    )


def incidence3(s: Substitution3) -> Mat3:
    return tuple(tuple(img.count(letter) for img in s) for letter in "abc")


def det3(m: Mat3) -> int:
    (a, b, c), (d, e, f), (g, h, i) = m
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def _check_parity(mf: Mat2) -> None:
    total = sum(map(sum, mf))
    c_count = mf[1][0] + mf[1][1]
    if total % 2 == 0 or c_count % 2:
        raise DomainError(f"{mf}: bisection needs |f(ac)| odd and |f(ac)|_c even")
    if mf[1][1] < mf[1][0]:
        raise DomainError(f"{mf}: |f(c)|_c < |f(a)|_c")


def predicted_incidence_sigma(mf: Mat2) -> Mat3:
    """Incidence matrix of the bisecting substitution predicted from M_f.

    Rows are returned in the order of the published closed form; that order
    lists the floor-halved count first, which under the Def.-style slicing
    (odd-numbered c's become b) belongs to letter c. Use :func:`swap_bc_rows`
    to compare against :func:`incidence3`.
    """
    _check_parity(mf)
    (faa, fca), (fac, fcc) = mf
    half = (fcc - fac) // 2
    return (
        (faa, faa, fca - faa),
        (fac // 2, (fac + 1) // 2, half),
        ((fac + 1) // 2, fac // 2, half),
    )


def swap_bc_rows(m: Mat3) -> Mat3:
    return (m[0], m[2], m[1])


def predicted_incidence_g(mf: Mat2) -> Mat2:
    """Common incidence matrix of the apo-syntonic and syntonic projections."""
    _check_parity(mf)
    (faa, fca), (fac, fcc) = mf
    half = (fcc - fac) // 2
    return ((2 * faa + fac, fca - faa + half), (fac, half))


def rotations(s: Substitution3) -> list[Substitution3]:
    mode = s.mode
    out = []
    for _ in range(len(mode.word)):
        out.append(Substitution3.from_mode(mode))
        mode = rotate_once(mode)
    return out


def conjugation_cycle(s: Substitution3) -> list[tuple[DividedMode, ModeClassification]]:
    """Every single-letter conjugate of ``s`` with its classification,
    starting from ``s`` itself."""
    if not is_primitive(s.word):
        raise DomainError(f"{s}: the mode word is not primitive")
    return [(t.mode, classify_mode(t)) for t in rotations(s)]


def cycle_labels(cycle: list[tuple[DividedMode, ModeClassification]]) -> list[str]:
    """Table labels: ``morphic**`` marks the standard mode, ``good*`` the good
    mode right after the bad* mode."""
    labels = []
    for i, (mode, cls) in enumerate(cycle):
        label = str(cls.kind)
        if cls.kind is ModeKind.MORPHIC and is_standard_mode(Substitution3.from_mode(mode)):
            label = "morphic**"
        elif cls.kind is ModeKind.GOOD and cycle[i - 1][1].kind is ModeKind.BAD_SYNTONIC:
            label = "good*"
        labels.append(label)
    return labels


def mode_label(s: Substitution3) -> str:
    cls = classify_mode(s)
    if cls.kind is ModeKind.MORPHIC and is_standard_mode(s):
        return "morphic**"
    if cls.kind is ModeKind.GOOD:
        prev = Substitution3.from_mode(DividedMode(rotate(s.word, -1), s.mode.dividers))
        if classify_mode(prev).kind is ModeKind.BAD_SYNTONIC:
            return "good*"
    return str(cls.kind)
