import json

import oracles
import pytest

from pwwfmodes.conversion import f_form, theta, theta_tilde
from pwwfmodes.f3aut import ElemAut, verify_decomposition
from pwwfmodes.family import (
    bisection_classes,
    conjecture_search,
    enumerate_authentic,
    family_matrices,
    family_normal_forms,
    family_table,
    gamma_kn,
    good_mode_decomposition_witness,
    mode_length,
    replay_good_witness,
    v_kn,
)
from pwwfmodes.pwwf import (
    ModeKind,
    Substitution3,
    canonical_form,
    incidence3,
    predicted_incidence_sigma,
    project_substitution,
    swap_bc_rows,
)
from pwwfmodes.sturmian import evaluate_normal_form, incidence2, recognize_special_standard
from pwwfmodes.words import DomainError


def A(i):
    return "a" * i


def reference_rows(k, n):
    """The closed-form rows of the v_{k,n} conjugation table, keyed by
    their position in the cycle (negative = from the end)."""
    rows = {}
    for l in range(k + 1):
        p, q = A(k - l), A(l + 1)
        rows[l] = (p + "b" + q, p + "c" + q, (p + "b" + q + p + "c" + q) * (n - 1) + p + "b" + q + p + "c" + A(l))
    K = A(k + 1)
    rows["last morphic"] = ("ab" + A(k), "ac" + A(k), "b" + A(k) + "ac" + A(k) + ("ab" + A(k) + "ac" + A(k)) * (n - 1))
    rows["bad*"] = ("b" + K, "c" + A(k) + "b", (K + "c" + K + "b") * (n - 1) + K + "c" + K)
    rows["good*"] = (K + "c", A(k) + "ba", (A(k) + "c" + K + "ba") * (n - 1) + A(k) + "c" + K + "b")
    rows[-2] = ("ac" + A(k), "b" + K, ("c" + K + "b" + K) * (n - 1) + "c" + K + "b" + A(k))
    rows[-1] = ("c" + A(k) + "b", K + "c", (K + "b" + K + "c") * (n - 1) + K + "b" + K)
    return {key: Substitution3(*v) for key, v in rows.items()}


def test_v_kn_examples():
    assert v_kn(0, 1) == Substitution3("ba", "ca", "bac")
    assert v_kn(1, 1) == Substitution3("aba", "aca", "abaac")
    assert v_kn(0, 2) == Substitution3("ba", "ca", "bacabac")
    with pytest.raises(DomainError):
        v_kn(0, 0)
    with pytest.raises(DomainError):
        v_kn(-1, 1)


def test_v_kn_length_and_multiplicities():
    for k in range(6):
        for n in range(1, 6):
            w = v_kn(k, n).word
            f = evaluate_normal_form(f_form(k, n), ("a", "c"))
            assert len(w) == len(f("ac")) == mode_length(k, n)
            assert len(w) % 2 == 1
            assert w.count("b") == w.count("c") == n + 1


def test_family_matrices_examples():
    assert family_matrices(0, 1) == (((1, 2), (1, 3)), ((3, 2), (1, 1)))
    assert family_matrices(1, 1) == (((2, 5), (1, 3)), ((5, 4), (1, 1)))
    for k in range(5):
        for n in range(1, 5):
            mf, mg = family_matrices(k, n)
            s = v_kn(k, n)
            assert incidence2(project_substitution(s, "apotomic")) == mf
            assert incidence2(project_substitution(s, "apo-syntonic")) == mg
            assert incidence2(project_substitution(s, "syntonic")) == mg


def test_projections_equal_normal_form_evaluations():
    for k in range(6):
        for n in range(1, 6):
            f, g, gt = family_normal_forms(k, n)
            s = v_kn(k, n)
            assert project_substitution(s, "apotomic") == evaluate_normal_form(f, ("a", "c"))
            assert project_substitution(s, "apo-syntonic") == evaluate_normal_form(g, ("b", "c"))
            assert project_substitution(s, "syntonic") == evaluate_normal_form(gt, ("a", "b"))
            assert g == theta(f) and gt == theta_tilde(f)
            assert recognize_special_standard(project_substitution(s, "apo-syntonic")) == g


def test_family_table_phrygian():
    rows = family_table(0, 1)
    assert [str(r.mode) for r in rows] == [
        "ba|ca||bac", "ac|ab||acb", "ca|ba||cba", "ab|ac||bac", "ba|cb||aca", "ac|ba||cab", "cb|ac||aba",
    ]
    assert [r.label for r in rows] == ["morphic**", "morphic", "morphic", "morphic", "bad*", "good*", "bad**"]


def test_family_table_sizes():
    rows = family_table(1, 1)
    assert len(rows) == len(v_kn(1, 1).word) == 11
    kinds = [r.classification.kind for r in rows]
    assert kinds.count(ModeKind.BAD_SYNTONIC) == 1 and kinds.count(ModeKind.BAD_APOTOMIC) == 1
    family_table(1, 2)
    with pytest.raises(DomainError):
        family_table(0, 0)


@pytest.mark.parametrize("k", range(4))
@pytest.mark.parametrize("n", range(1, 4))
def test_reference_rows_of_large_table(k, n):
    rows = family_table(k, n)
    subs = [r.substitution for r in rows]
    kinds = [r.classification.kind for r in rows]
    bad_star = kinds.index(ModeKind.BAD_SYNTONIC)
    ref = reference_rows(k, n)
    for l in range(k + 1):
        assert subs[l] == ref[l]
        assert kinds[l] is ModeKind.MORPHIC
    assert subs[bad_star - 1] == ref["last morphic"] and kinds[bad_star - 1] is ModeKind.MORPHIC
    assert subs[bad_star] == ref["bad*"]
    assert subs[bad_star + 1] == ref["good*"] == gamma_kn(k, n)
    assert rows[bad_star + 1].label == "good*"
    assert subs[-2] == ref[-2] and kinds[-2] is ModeKind.GOOD
    assert subs[-1] == ref[-1] and kinds[-1] is ModeKind.BAD_APOTOMIC
    # k + 1 good modes between bad* and bad**
    assert kinds[bad_star + 1 : -1] == [ModeKind.GOOD] * (k + 1)
    for r in rows:
        if r.decomposition is not None:
            assert verify_decomposition(r.decomposition, r.substitution)


def test_incidence_of_family_matches_closed_form():
    for k in range(5):
        for n in range(1, 5):
            mf, _ = family_matrices(k, n)
            assert incidence3(v_kn(k, n)) == swap_bc_rows(predicted_incidence_sigma(mf))


def test_good_witness_examples():
    assert good_mode_decomposition_witness(1, 1, 1) == (ElemAut("A", "b", "a"), ElemAut("A", "c", "a"))
    assert good_mode_decomposition_witness(2, 1, 1) == (
        ElemAut("A", "b", "a"), ElemAut("A", "c", "a"), ElemAut("P", "b", "a"), ElemAut("P", "c", "a"),
    )
    with pytest.raises(DomainError):
        good_mode_decomposition_witness(1, 1, 0)
    with pytest.raises(DomainError):
        good_mode_decomposition_witness(1, 1, 2)


def test_good_witness_replays_to_table_rows():
    for k in range(1, 4):
        for n in range(1, 4):
            rows = family_table(k, n)
            kinds = [r.classification.kind for r in rows]
            good_star = kinds.index(ModeKind.BAD_SYNTONIC) + 1
            assert rows[good_star].substitution == gamma_kn(k, n)
            for l in range(1, k + 1):
                row = rows[good_star + l]
                assert replay_good_witness(k, n, l) == row.substitution
                assert row.classification.kind is ModeKind.GOOD


def test_bisection_classes_are_distinct():
    classes = bisection_classes(19)
    words = [f("ac") for _, f in classes]
    assert len(set(words)) == len(words)
    for _, f in classes:
        assert len(f("ac")) % 2 == 1 and f("ac").count("c") % 2 == 0


def test_enumerate_authentic_small():
    found = list(enumerate_authentic(7))
    assert len({canonical_form(s) for s in found}) == len(found)
    assert Substitution3("ba", "ca", "bac") in found
    assert canonical_form(Substitution3("ac", "ba", "cab")) in {canonical_form(s) for s in found}
    assert {tuple(canonical_form(s)) for s in found} == oracles.brute_force_authentic(7)
    with pytest.raises(DomainError):
        list(enumerate_authentic(6))


def test_enumerate_authentic_matches_brute_force_13():
    lib = {tuple(canonical_form(s)) for s in enumerate_authentic(13)}
    assert lib == oracles.brute_force_authentic(13)


def test_conjecture_small():
    report = conjecture_search(7)
    assert report.holds and report.classes_searched == 1
    assert report.counts == {"morphic": 4, "good": 1, "bad_star": 1, "bad_double_star": 1, "irregular": 0}
    data = report.to_json()
    assert data["schema"] == 1
    assert set(data) >= {"max_length", "classes_searched", "counts", "counterexamples"}
    json.dumps(data)
    with pytest.raises(DomainError):
        conjecture_search(6)


def test_conjecture_13_is_deterministic():
    one = conjecture_search(13, jobs=1).to_json()
    many = conjecture_search(13, jobs=3).to_json()
    assert one == many
    assert one["counterexamples"] == []
    for c in one["classes"]:
        for e in c["entries"]:
            assert e["certificate_valid"]
            assert ("decomposition" in e) == e["morphic"]
