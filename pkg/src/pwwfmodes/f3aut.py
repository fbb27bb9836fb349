"""Positive automorphisms of the free group on {a, b, c}.

Elementary transformations for letters x != y (z the third letter)::

    E_xy: x -> y,  y -> x
    A_xy: x -> xy
    P_xy: x -> yx

A substitution is morphic when it is a composition of these. Any such
composition can be rewritten as (productions) o (letter permutation), since
E o A_uv = A_E(u)E(v) o E, so deciding morphicity reduces to peeling
productions off until a permuted seed ``(a, b, c)`` is left.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

from .pwwf import Substitution3, det3, incidence3
from .words import DomainError, desubstitute, substitute


class ElemAut(NamedTuple):
    kind: str  # "E", "A" or "P"
    x: str
    y: str

    def images(self) -> dict[str, str]:
        x, y = self.x, self.y
        if self.kind == "E":
            return {x: y, y: x}
        if self.kind == "A":
            return {x: x + y}
        return {x: y + x}

    def __str__(self) -> str:
        return f"{self.kind}({self.x}{self.y})"


def _pairs():
    return [(x, y) for x in "abc" for y in "abc" if x != y]


# trial order: appends before prepends, letter pairs lexicographic
PRODUCTIONS = tuple(ElemAut(k, x, y) for k in "AP" for x, y in _pairs())
EXCHANGES = tuple(ElemAut("E", x, y) for x, y in _pairs() if x < y)

_FACTOR = re.compile(r"([EAP])\(([abc])([abc])\)")


def apply_elem(e: ElemAut, s: Substitution3) -> Substitution3:
    """``e o s``: rewrite every image of ``s`` through ``e``."""
    imgs = e.images()
    return Substitution3(*(substitute(w, imgs) for w in s))


def peel_elem(e: ElemAut, s: Substitution3) -> Optional[Substitution3]:
    """The unique ``t`` with ``e o t == s`` for a production ``e``, or None.

    Productions whose letter x does not occur are reported as not peelable,
    so every successful peel strictly shortens the triple.
    """
    if e.kind == "E":
        raise DomainError("only productions are peeled")
    if not any(e.x in w for w in s):
        return None
    code = {e.x: e.images()[e.x], e.y: e.y}
    z = ({"a", "b", "c"} - {e.x, e.y}).pop()
    code[z] = z
    pre = [desubstitute(w, code) for w in s]
    if any(not p for p in pre):
        return None
    return Substitution3(*pre)


def replay(factors: Sequence[ElemAut], seed: Substitution3 = Substitution3("a", "b", "c")) -> Substitution3:
    """Apply ``factors`` innermost first, starting from ``seed``."""
    s = seed
    for e in factors:
        s = apply_elem(e, s)
    return s


def _exchange_words() -> dict[Substitution3, tuple[ElemAut, ...]]:
    # shortest E-sequence (innermost first) for each letter permutation
    start = Substitution3("a", "b", "c")
    found = {start: ()}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        for e in EXCHANGES:
            t = apply_elem(e, s)
            if t not in found:
                found[t] = found[s] + (e,)
                queue.append(t)
    return found


_PERMUTATION_WORDS = _exchange_words()


def is_permutation(s: Substitution3) -> bool:
    return s in _PERMUTATION_WORDS


@dataclass(frozen=True)
class Decomposition:
    """Seed permutation (images of a, b, c) followed by productions,
    innermost first."""

    permutation: Substitution3
    productions: tuple[ElemAut, ...]

    def __post_init__(self):
        if not is_permutation(self.permutation):
            raise DomainError(f"{self.permutation} is not a letter permutation")
        if any(e.kind == "E" for e in self.productions):
            raise DomainError("exchanges belong in the seed permutation")

    @property
    def factors(self) -> tuple[ElemAut, ...]:
        return _PERMUTATION_WORDS[self.permutation] + self.productions

    def evaluate(self) -> Substitution3:
        return replay(self.productions, self.permutation)

    def __str__(self) -> str:
        return " ".join(map(str, self.factors)) or "id"


def format_factors(factors: Sequence[ElemAut]) -> str:
    return " ".join(map(str, factors)) or "id"


def parse_factors(text: str) -> tuple[ElemAut, ...]:
    """Parse ``E(ab) P(cb) A(ba)`` (innermost first)."""
    out = []
    for tok in text.split():
        if tok == "id":
            continue
        m = _FACTOR.fullmatch(tok)
        if not m or m.group(2) == m.group(3):
            raise DomainError(f"bad factor {tok!r}")
        out.append(ElemAut(*m.groups()))
    return tuple(out)


def parse_decomposition(text: str) -> Decomposition:
    factors = parse_factors(text)
    k = 0
    while k < len(factors) and factors[k].kind == "E":
        k += 1
    return Decomposition(replay(factors[:k]), factors[k:])


@dataclass
class MorphicSearch:
    """Outcome of the peeling search, with its evidence.

    For a morphic substitution ``decomposition`` is set. Otherwise either
    ``determinant`` is the non-unimodular determinant that rules it out, or
    ``dead_ends`` lists every irreducible non-permutation triple the search
    reached (an exhaustive irreducibility trace).
    """

    target: Substitution3
    decomposition: Optional[Decomposition] = None
    determinant: int = 0
    dead_ends: list[Substitution3] = field(default_factory=list)
    explored: int = 0

    @property
    def morphic(self) -> bool:
        return self.decomposition is not None


def search_morphic(s: Substitution3) -> MorphicSearch:
    """Depth-first peeling over the twelve productions with backtracking."""
    result = MorphicSearch(s)
    result.determinant = det3(incidence3(s))
    if abs(result.determinant) != 1:
        return result
    failed: set[Substitution3] = set()
    dead_ends: set[Substitution3] = set()

    def search(t: Substitution3) -> Optional[list[ElemAut]]:
        if is_permutation(t):
            return []
        if t in failed:
            return None
        result.explored += 1
        progressed = False
        for e in PRODUCTIONS:
            pre = peel_elem(e, t)
            if pre is None:
                continue
            progressed = True
            rest = search(pre)
            if rest is not None:
                return [*rest, e]
        if not progressed:
            dead_ends.add(t)
        failed.add(t)
        return None

    found = search(s)
    if found is not None:
        peeled = s
        for e in reversed(found):
            peeled = peel_elem(e, peeled)
        result.decomposition = Decomposition(peeled, tuple(found))
        assert result.decomposition.evaluate() == s, "unsound decomposition"
    else:
        result.dead_ends = sorted(dead_ends)
    return result


def decide_morphic(s: Substitution3) -> Optional[Decomposition]:
    return search_morphic(s).decomposition


def verify_decomposition(d: Decomposition | Sequence[ElemAut], s: Substitution3) -> bool:
    if isinstance(d, Decomposition):
        return d.evaluate() == s
    return replay(d) == s


def is_irreducible(s: Substitution3) -> bool:
    return all(peel_elem(e, s) is None for e in PRODUCTIONS)


def verify_trace(search: MorphicSearch) -> bool:
    """Recheck a negative verdict from scratch."""
    s = search.target
    if search.morphic:
        return search.decomposition.evaluate() == s
    if abs(det3(incidence3(s))) != 1:
        return search.determinant == det3(incidence3(s))
    reached: set[Substitution3] = set()
    stack = [s]
    seen = set()
    while stack:
        t = stack.pop()
        if t in seen:
            continue
        seen.add(t)
        if is_permutation(t):
            return False
        children = [p for e in PRODUCTIONS if (p := peel_elem(e, t)) is not None]
        if not children:
            reached.add(t)
        stack.extend(children)
    return sorted(reached) == search.dead_ends and all(is_irreducible(t) for t in reached)
