"""The morphic family v_{k,n}, its conjugation tables, and an exhaustive
search testing whether that family exhausts the morphic modes."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .conversion import f_form, in_sigma_lower, theta, theta_tilde
from .f3aut import ElemAut, Decomposition, replay, search_morphic, verify_trace
from .pwwf import (
    ModeClassification,
    ModeKind,
    Substitution3,
    bisecting_substitution,
    canonical_form,
    classify_mode,
    cycle_labels,
    is_special_sturmian,
    projections,
    rotations,
)
from .sturmian import Mat2, NormalForm2, Substitution2, incidence2, standard_morphisms
from .words import DividedMode, DomainError


def _check_params(k: int, n: int) -> None:
    if k < 0 or n < 1:
        raise DomainError(f"family parameters need k >= 0 and n >= 1, got k={k}, n={n}")


def v_kn(k: int, n: int) -> Substitution3:
    """a^k ba | a^k ca || (a^k ba a^k ca)^(n-1) a^k ba a^k c"""
    _check_params(k, n)
    p = "a" * k
    return Substitution3(p + "ba", p + "ca", (p + "ba" + p + "ca") * (n - 1) + p + "ba" + p + "c")


def gamma_kn(k: int, n: int) -> Substitution3:
    """The first good mode after the bad* mode in the cycle of v_{k,n}."""
    _check_params(k, n)
    p = "a" * k
    q = "a" * (k + 1)
    return Substitution3(q + "c", p + "ba", (p + "c" + q + "ba") * (n - 1) + p + "c" + q + "b")


def mode_length(k: int, n: int) -> int:
    return (k + 2) * (2 * n + 1) + k + 1


def family_normal_forms(k: int, n: int) -> tuple[NormalForm2, NormalForm2, NormalForm2]:
    """Normal forms of the apotomic, apo-syntonic and syntonic projections."""
    _check_params(k, n)
    f = f_form(k, n)
    return f, theta(f), theta_tilde(f)


def family_matrices(k: int, n: int) -> tuple[Mat2, Mat2]:
    """Closed forms of M_f and of the shared M_g = M_g~."""
    _check_params(k, n)
    mf = ((k + 1, 2 * n * (k + 1) + k), (1, 2 * n + 1))
    mg = ((2 * k + 3, n * (2 * k + 3) - 1), (1, n))
    return mf, mg


def projection_kinds(s: Substitution3) -> Optional[ModeKind]:
    """bad*/bad**/irregular from the projections alone; None if authentic."""
    ok = {w: is_special_sturmian(p) for w, p in projections(s).items()}
    if all(ok.values()):
        return None
    if ok["apotomic"] and ok["apo-syntonic"]:
        return ModeKind.BAD_SYNTONIC
    if ok["syntonic"] and not ok["apotomic"] and not ok["apo-syntonic"]:
        return ModeKind.BAD_APOTOMIC
    return ModeKind.IRREGULAR


def morphic_arc(kinds: list[Optional[ModeKind]]) -> Optional[list[int]]:
    """Indices strictly after the bad** mode and strictly before the bad*
    mode, walking forward; None unless each bad kind occurs exactly once."""
    if kinds.count(ModeKind.BAD_SYNTONIC) != 1 or kinds.count(ModeKind.BAD_APOTOMIC) != 1:
        return None
    n = len(kinds)
    start = kinds.index(ModeKind.BAD_APOTOMIC)
    stop = kinds.index(ModeKind.BAD_SYNTONIC)
    out = []
    i = (start + 1) % n
    while i != stop:
        out.append(i)
        i = (i + 1) % n
    return out


def good_arc(kinds: list[Optional[ModeKind]]) -> Optional[list[int]]:
    if kinds.count(ModeKind.BAD_SYNTONIC) != 1 or kinds.count(ModeKind.BAD_APOTOMIC) != 1:
        return None
    n = len(kinds)
    start = kinds.index(ModeKind.BAD_SYNTONIC)
    stop = kinds.index(ModeKind.BAD_APOTOMIC)
    out = []
    i = (start + 1) % n
    while i != stop:
        out.append(i)
        i = (i + 1) % n
    return out


@dataclass(frozen=True)
class FamilyRow:
    mode: DividedMode
    classification: ModeClassification
    label: str

    @property
    def decomposition(self) -> Optional[Decomposition]:
        return self.classification.decomposition

    @property
    def substitution(self) -> Substitution3:
        return Substitution3.from_mode(self.mode)


def segment_structure_holds(rows: list[FamilyRow]) -> bool:
    """One bad* and one bad**, a morphic arc from after bad** to before bad*
    (all decompositions verified) and a good arc on the other side."""
    kinds = [r.classification.kind for r in rows]
    arc = morphic_arc(kinds)
    goods = good_arc(kinds)
    if arc is None or goods is None:
        return False
    for i in arc:
        d = rows[i].decomposition
        if rows[i].classification.kind is not ModeKind.MORPHIC or d is None:
            return False
        if d.evaluate() != rows[i].substitution:
            return False
    for i in goods:
        c = rows[i].classification
        if c.kind is not ModeKind.GOOD or not c.authentic:
            return False
    return True


def family_table(k: int, n: int) -> list[FamilyRow]:
    """All single-letter conjugates of v_{k,n}, classified."""
    cycle = [(t.mode, classify_mode(t)) for t in rotations(v_kn(k, n))]
    rows = [FamilyRow(m, c, label) for (m, c), label in zip(cycle, cycle_labels(cycle))]
    if not segment_structure_holds(rows):
        raise RuntimeError(f"segment structure fails for v_{{{k},{n}}}")
    return rows


def v_kn_factors(k: int, n: int) -> tuple[ElemAut, ...]:
    """E/A/P factors (innermost first) whose replay on a|b||c is v_{k,n}:
    E_ab, P_cb, (P_ca P_cb)^(n-1), P_ac, A_ba, P_ca^k, P_ba^k."""
    _check_params(k, n)
    return (
        (ElemAut("E", "a", "b"), ElemAut("P", "c", "b"))
        + (ElemAut("P", "c", "a"), ElemAut("P", "c", "b")) * (n - 1)
        + (ElemAut("P", "a", "c"), ElemAut("A", "b", "a"))
        + (ElemAut("P", "c", "a"),) * k
        + (ElemAut("P", "b", "a"),) * k
    )


def good_mode_decomposition_witness(k: int, n: int, l: int) -> tuple[ElemAut, ...]:
    """Productions (innermost first) carrying gamma_{0,n} to the good mode
    with parameter l: A_ba^l, then A_ca^l, then P_ba^(k-l), then P_ca^(k-l)."""
    _check_params(k, n)
    if not 0 < l <= k:
        raise DomainError(f"need 0 < l <= k, got l={l}, k={k}")
    return (
        (ElemAut("A", "b", "a"),) * l
        + (ElemAut("A", "c", "a"),) * l
        + (ElemAut("P", "b", "a"),) * (k - l)
        + (ElemAut("P", "c", "a"),) * (k - l)
    )


def replay_good_witness(k: int, n: int, l: int) -> Substitution3:
    return replay(good_mode_decomposition_witness(k, n, l), gamma_kn(0, n))


# --- exhaustive search -------------------------------------------------------


def bisection_classes(max_len: int) -> list[tuple[NormalForm2, Substitution2]]:
    """Special standard f over {a, c} with M_f in Sigma_2 and |f(ac)| odd,
    |f(ac)| <= max_len, |f(ac)|_c even; one per conjugation class."""
    out = []
    for nf, f in standard_morphisms(max_len, ("a", "c")):
        w = f("ac")
        if len(w) % 2 == 0 or w.count("c") % 2:
            continue
        if in_sigma_lower(incidence2(f)):
            out.append((nf, f))
    out.sort(key=lambda t: (len(t[1]("ac")), t[1].images))
    return out


def enumerate_authentic(max_len: int) -> Iterator[Substitution3]:
    """Authentic PWWF substitutions with mode length <= max_len, one per
    letter-renaming class, in the naming produced by bisection."""
    if max_len < 7:
        raise DomainError(f"max_len must be at least 7, got {max_len}")
    seen: set[Substitution3] = set()
    for _, f in bisection_classes(max_len):
        for t in rotations(bisecting_substitution(f)):
            if projection_kinds(t) is None:
                key = canonical_form(t)
                if key not in seen:
                    seen.add(key)
                    yield t


def family_morphic_modes(max_len: int) -> set[Substitution3]:
    """Canonical forms of the morphic-arc modes of every v_{k,n} up to
    max_len; the arc is located from projections only."""
    out: set[Substitution3] = set()
    k = 0
    while mode_length(k, 1) <= max_len:
        n = 1
        while mode_length(k, n) <= max_len:
            rots = rotations(v_kn(k, n))
            arc = morphic_arc([projection_kinds(t) for t in rots])
            if arc is None:
                raise RuntimeError(f"v_{{{k},{n}}} has no morphic arc")
            out.update(canonical_form(rots[i]) for i in arc)
            n += 1
        k += 1
    return out


_COUNT_KEYS = {
    ModeKind.MORPHIC: "morphic",
    ModeKind.GOOD: "good",
    ModeKind.BAD_SYNTONIC: "bad_star",
    ModeKind.BAD_APOTOMIC: "bad_double_star",
    ModeKind.IRREGULAR: "irregular",
}


def _search_class(args: tuple[int, str, str, frozenset]) -> dict:
    max_len, fa, fc, family = args
    f = Substitution2(("a", "c"), (fa, fc))
    counts = dict.fromkeys(_COUNT_KEYS.values(), 0)
    entries = []
    for i, t in enumerate(rotations(bisecting_substitution(f))):
        kind = projection_kinds(t)
        if kind is not None:
            counts[_COUNT_KEYS[kind]] += 1
            continue
        search = search_morphic(t)
        counts["morphic" if search.morphic else "good"] += 1
        member = canonical_form(t) in family
        entry = {
            "mode": str(t),
            "rotation": i,
            "morphic": search.morphic,
            "family_member": member,
            "certificate_valid": verify_trace(search),
        }
        if search.morphic:
            entry["decomposition"] = str(search.decomposition)
        elif abs(search.determinant) != 1:
            entry["determinant"] = search.determinant
        else:
            entry["dead_ends"] = [str(d) for d in search.dead_ends]
            entry["explored"] = search.explored
        entries.append(entry)
    return {
        "f": str(f),
        "length": len(fa) + len(fc),
        "M_f": [list(r) for r in incidence2(f)],
        "counts": counts,
        "entries": entries,
    }


@dataclass
class ConjectureReport:
    max_length: int
    classes_searched: int
    counts: dict[str, int]
    counterexamples: list[dict] = field(default_factory=list)
    classes: list[dict] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.counterexamples

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "max_length": self.max_length,
            "classes_searched": self.classes_searched,
            "counts": self.counts,
            "counterexamples": self.counterexamples,
            "classes": self.classes,
        }


def conjecture_search(max_len: int, jobs: int = 1) -> ConjectureReport:
    """Check, for every authentic substitution up to max_len, that it is
    morphic exactly when it is (up to renaming letters) a morphic-arc mode
    of some v_{k,n}."""
    if max_len < 7:
        raise DomainError(f"max_len must be at least 7, got {max_len}")
    family = frozenset(family_morphic_modes(max_len))
    tasks = [(max_len, *f.images, family) for _, f in bisection_classes(max_len)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_search_class, tasks))
    else:
        results = [_search_class(t) for t in tasks]
    results.sort(key=lambda r: (r["length"], r["f"]))
    counts = dict.fromkeys(_COUNT_KEYS.values(), 0)
    counterexamples = []
    for r in results:
        for key, v in r["counts"].items():
            counts[key] += v
        for e in r["entries"]:
            if e["morphic"] != e["family_member"]:
                counterexamples.append({"class": r["f"], **e})
    return ConjectureReport(max_len, len(results), counts, counterexamples, results)
