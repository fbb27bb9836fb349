"""Words over the alphabet {a, b, c} and divided modes.

Words are plain Python strings. A divided mode is a word together with one
(authentic) or two (triadic) divider offsets, written ``aaba|aab`` or
``ba|ca||bac``.
"""

from __future__ import annotations

from dataclasses import dataclass

LETTERS = "abc"

Word = str


class DomainError(ValueError):
    """Raised when an operation is called outside its mathematical domain."""


class ParseError(ValueError):
    """Raised for malformed word or mode text; ``position`` is 0-based."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def check_word(w: str) -> str:
    for i, ch in enumerate(w):
        if ch not in LETTERS:
            raise ParseError(f"invalid letter {ch!r}", i)
    return w


@dataclass(frozen=True, order=True)
class DividedMode:
    word: Word
    dividers: tuple[int, ...]

    def __post_init__(self):
        if len(self.dividers) not in (1, 2):
            raise DomainError("a mode has one or two dividers")
        prev = 0
        for d in self.dividers:
            if not prev < d < len(self.word):
                raise DomainError(f"divider offsets {self.dividers} do not split {self.word!r}")
            prev = d

    @property
    def segments(self) -> tuple[Word, ...]:
        cuts = (0, *self.dividers, len(self.word))
        return tuple(self.word[i:j] for i, j in zip(cuts, cuts[1:]))

    @property
    def is_triadic(self) -> bool:
        return len(self.dividers) == 2

    def __str__(self) -> str:
        marks = ("|", "||")
        parts = self.segments
        out = parts[0]
        for mark, seg in zip(marks, parts[1:]):
            out += mark + seg
        return out


def parse_mode(text: str) -> DividedMode:
    """Parse ``x|y`` or ``x|y||z``; whitespace is ignored."""
    word = []
    dividers = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "|":
            double = i + 1 < len(text) and text[i + 1] == "|"
            expected = "|" if not dividers else "||"
            mark = "||" if double else "|"
            if mark != expected or len(dividers) == 2:
                raise ParseError(f"unexpected divider {mark!r}", i)
            if not word or (dividers and dividers[-1] == len(word)):
                raise ParseError("empty segment before divider", i)
            dividers.append(len(word))
            i += len(mark)
            continue
        if ch not in LETTERS:
            raise ParseError(f"invalid letter {ch!r}", i)
        word.append(ch)
        i += 1
    if not dividers:
        raise ParseError("missing divider", len(text))
    if dividers[-1] == len(word):
        raise ParseError("empty segment after divider", len(text))
    return DividedMode("".join(word), tuple(dividers))


def parse_word(text: str) -> Word:
    return check_word("".join(text.split()))


def rotate(w: Word, k: int = 1) -> Word:
    if not w:
        return w
    k %= len(w)
    return w[k:] + w[:k]


def rotate_once(m: DividedMode) -> DividedMode:
    """Shift the letters one place left; the divider offsets stay put."""
    if not m.word:
        raise DomainError("cannot rotate an empty word")
    return DividedMode(rotate(m.word), m.dividers)


def reverse(w: Word) -> Word:
    return w[::-1]


def project_word(w: Word, x: str, y: str) -> Word:
    """Letter identification pi_{x->y}: every ``x`` becomes ``y``."""
    if x == y:
        raise DomainError("projection needs two distinct letters")
    return w.replace(x, y)


def conjugacy_class(w: Word) -> frozenset[Word]:
    if not w:
        raise DomainError("conjugacy class of the empty word")
    return frozenset(rotate(w, k) for k in range(len(w)))


def is_primitive(w: Word) -> bool:
    # w is a proper power iff it occurs inside ww at an offset other than 0 and |w|
    return bool(w) and (w + w).find(w, 1) == len(w)


def canonical_rotation(w: Word) -> Word:
    return min(conjugacy_class(w))


def relabel(w: Word, perm: dict[str, str]) -> Word:
    return w.translate(str.maketrans(perm))


def substitute(w: Word, images: dict[str, Word]) -> Word:
    return "".join(images.get(ch, ch) for ch in w)


def desubstitute(w: Word, images: dict[str, Word]) -> Word | None:
    """Unique preimage of ``w`` under a letter-to-word code, or None.

    Greedy longest match is exact for the elementary codes used here: all
    codewords are single letters except one two-letter word ``uv``, and
    either ``u`` is not a codeword or no codeword starts with ``v``, so a
    match of ``uv`` can never be split.
    """
    by_image = sorted(((img, ch) for ch, img in images.items()), key=lambda t: -len(t[0]))
    out = []
    i = 0
    while i < len(w):
        for img, ch in by_image:
            if w.startswith(img, i):
                out.append(ch)
                i += len(img)
                break
        else:
            return None
    return "".join(out)
