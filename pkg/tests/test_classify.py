"""Tests for indecomposable enumeration and the precluster/cluster classifiers"""
import itertools

import pytest

from arthom.approx import add_equal
from arthom.classify import (
    classify_algebra,
    coresolution_pd_condition,
    cotilting_witness,
    enumerate_indecomposables,
    gorenstein_dimension,
    gorenstein_projectives,
    injectives_of_small_pd,
    is_almost_cluster,
    is_almost_precluster,
    is_nakayama,
    is_precluster,
    perp_category,
    precluster_from_algebra,
    search_sweep,
    six_term_sequence,
    translate_hom_conditions,
)
from arthom.endocat import endo_algebra
from arthom.errors import EnumerationUnavailableError, NotGorensteinError, PreconditionError
from arthom.fixtures import nakayama_family
from arthom.homology import ar_translate, ext, is_injective
from arthom.models import Caps
from arthom.pathalg import parse_algebra
from arthom.repmod import direct_sum, dual_regular_module, simple_module

D4 = """\
field Q
vertices 1 2 3 4
arrow a : 1 -> 4
arrow b : 2 -> 4
arrow c : 3 -> 4
"""


def test_enumeration_nakayama(a2, c3):
    """Test 1: uniserial census counts"""
    alg, _ = c3
    assert is_nakayama(alg)
    universe = enumerate_indecomposables(alg)
    assert universe.method == "nakayama-uniserial"
    assert universe.complete
    assert len(universe) == 10
    assert universe.index_of(simple_module(alg, 2)) is not None
    assert enumerate_indecomposables(alg) is universe
    assert len(enumerate_indecomposables(a2[0])) == 3
    print("✅ Test passed: Nakayama enumeration")


def test_enumeration_knitting(g):
    """Test 2: knitting finishes on representation-finite algebras"""
    alg, _ = g
    assert not is_nakayama(alg)
    universe = enumerate_indecomposables(alg)
    assert universe.method == "knitting"
    assert universe.complete
    star = parse_algebra(D4)
    assert len(enumerate_indecomposables(star)) == 12
    print("✅ Test passed: Knitting enumeration")


def test_enumeration_cap(g):
    """Test 3: a tight cap leaves the enumeration incomplete"""
    alg, mods = g
    universe = enumerate_indecomposables(alg, Caps(enumeration=3))
    assert not universe.complete
    with pytest.raises(EnumerationUnavailableError):
        perp_category(mods["I"], 1, "right", universe)
    report = is_almost_cluster(mods["I"], 1, universe=universe)
    assert report.verdict == "unknown"
    assert report.exit_code == 2
    print("✅ Test passed: Enumeration cap")


def test_almost_precluster(c3):
    """Test 4: M = S(1) ⊕ U ⊕ DA is almost 2-precluster tilting but not 2-precluster"""
    alg, mods = c3
    report = is_almost_precluster(mods["M"], 2)
    assert report.verdict is True
    assert [c.label for c in report.conditions] == ["cogenerator", "self-orthogonal", "tau_n-closed", "codim"]
    assert report.digest
    pre = is_precluster(mods["M"], 2)
    assert pre.verdict is False
    assert [c.label for c in pre.conditions if not c.ok] == ["contains-A"]
    assert is_almost_precluster(dual_regular_module(alg), 2).verdict is False
    with pytest.raises(PreconditionError):
        is_almost_precluster(mods["M"], 0)
    print("✅ Test passed: Almost precluster")


def test_translate_closure(c3):
    """Test 5: add M = add(τ_2 M ⊕ DA)"""
    alg, mods = c3
    tn = ar_translate(mods["M"], "tau_n", 2)
    assert add_equal(mods["M"], direct_sum([tn, dual_regular_module(alg)]))
    print("✅ Test passed: Translate closure")


def test_almost_cluster(a2):
    """Test 6: the sum of all indecomposables of A2 is 1-cluster tilting"""
    alg, _ = a2
    universe = enumerate_indecomposables(alg)
    M = direct_sum(universe.items)
    report = is_almost_cluster(M, 1)
    assert report.verdict is True
    assert is_almost_cluster(dual_regular_module(alg), 1).verdict is False
    print("✅ Test passed: Almost cluster")


def test_perp_category(c3):
    """Test 7: M^⊥1 lies in ^⊥1 M"""
    alg, mods = c3
    right = perp_category(mods["M"], 1, "right")
    assert right
    for X in right:
        assert ext(X, mods["M"], 1) == 0
    with pytest.raises(PreconditionError):
        perp_category(mods["M"], 1, "middle")
    print("✅ Test passed: Perpendicular category")


def test_six_term_sequence(c3):
    """Test 8: dimensions along 0 → End M → Hom(P_•, M) → D Hom(M, τ_2 M) → 0"""
    alg, mods = c3
    report = six_term_sequence(mods["M"], 2)
    assert report.verdict is True, [c.detail for c in report.conditions]
    nodes = report.findings["nodes"]
    assert len(nodes) == 5
    assert nodes[0] - nodes[1] + nodes[2] - nodes[3] + nodes[4] == 0
    print("✅ Test passed: Six-term sequence")


def test_classify_algebra(a2, c3):
    """Test 9: hereditary A2 and End M"""
    alg, _ = a2
    report = classify_algebra(alg, 0)
    assert report.verdict is True
    assert report.findings["gld"]["value"] == 1
    assert report.findings["gorenstein"] is True
    alg, mods = c3
    lam = endo_algebra(mods["M"]).algebra
    report = classify_algebra(lam, 2)
    assert report.verdict is True
    assert report.findings["id_left"]["value"] == 3
    assert report.findings["I_domdim"]["value"] == 3
    with pytest.raises(PreconditionError):
        classify_algebra(lam, -1)
    print("✅ Test passed: Algebra classification")


def test_gorenstein(a2, c3):
    """Test 10: Gorenstein projectives over a hereditary algebra are projective"""
    alg, _ = a2
    left, right, ok = gorenstein_dimension(alg)
    assert ok and left.value == 1
    gp = gorenstein_projectives(alg)
    assert len(gp) == 2
    assert not gorenstein_projectives(alg, simple_module(alg, 0))
    alg, _ = c3
    left, right, ok = gorenstein_dimension(alg)
    if not ok:
        with pytest.raises(NotGorensteinError):
            gorenstein_projectives(alg)
    print("✅ Test passed: Gorenstein projectives")


def test_injectives_of_small_pd(g):
    """Test 11: every injective over G has pd at most 2"""
    alg, _ = g
    I = injectives_of_small_pd(alg, 2)
    assert add_equal(I, dual_regular_module(alg))
    assert injectives_of_small_pd(alg, 1).dim < I.dim
    print("✅ Test passed: Injectives of small projective dimension")


def test_precluster_from_algebra(c3):
    """Test 12: End M gives back an almost 2-precluster tilting module"""
    alg, mods = c3
    lam = endo_algebra(mods["M"]).algebra
    back = precluster_from_algebra(lam, 2)
    assert back.presentation.algebra.dim == alg.dim
    assert back.report.verdict is True
    print("✅ Test passed: Precluster from algebra")


def test_cotilting_witness(c3):
    """Test 13: the cotilting module built from the injective resolution"""
    alg, mods = c3
    lam = endo_algebra(mods["M"]).algebra
    report = cotilting_witness(lam, 2)
    assert report.verdict is True, [c.detail for c in report.conditions if not c.ok]
    assert "id-two" in [c.label for c in report.conditions]
    with pytest.raises(PreconditionError):
        cotilting_witness(lam, 1)
    print("✅ Test passed: Cotilting witness")


def test_other_module_conditions(c3):
    """Test 14: the report forms of the remaining module characterizations"""
    alg, mods = c3
    th = translate_hom_conditions(mods["M"])
    assert [c.label for c in th.conditions] == ["cogenerator-codim", "endomorphism-presentation", "projective-hom"]
    assert th.conditions[0].ok
    cp = coresolution_pd_condition(mods["M"], 2)
    assert cp.conditions[0].label == "codim" and cp.conditions[0].ok
    print("✅ Test passed: Module characterizations")


def test_search_sweep(a2):
    """Test 15: over A2 the only almost 1-precluster cogenerator adds S(2)"""
    alg, _ = a2
    hits = search_sweep(alg, 1, max_extra=1)
    assert len(hits) == 1
    hit = hits[0]
    assert [X.dims for X in hit.extras] == [(0, 1)]
    assert hit.contains_regular
    assert hit.translate_closed
    print("✅ Test passed: Search sweep")


def test_sweep_screening_keeps_every_hit(c3):
    """Test 16: screening summands first finds the same modules as classifying every candidate"""
    alg, _ = c3
    items = enumerate_indecomposables(alg).items
    DA = dual_regular_module(alg)
    candidates = [X for X in items if not is_injective(X)]
    expected = []
    for size in range(3):
        for extras in itertools.combinations(candidates, size):
            M = direct_sum([DA, *extras], alg)
            if is_almost_precluster(M, 2).verdict is True:
                expected.append([X.dims for X in extras])
    hits = search_sweep(alg, 2, max_extra=2)
    assert [[X.dims for X in hit.extras] for hit in hits] == expected
    assert expected
    print("✅ Test passed: Sweep screening")


@pytest.mark.parametrize("n", [1, 2])
def test_full_nakayama_sweep(n):
    """Test 17: almost n-precluster cogenerators over Nakayama algebras with ≤ 4 vertices and Loewy length ≤ 5"""
    found = 0
    for kupisch, cyclic, text in nakayama_family(4, 5):
        for hit in search_sweep(parse_algebra(text), n):
            summands = [X.dims for X in hit.extras]
            assert hit.translate_closed, (kupisch, cyclic, summands)
            if n == 1:
                assert hit.contains_regular, (kupisch, cyclic, summands)
            found += 1
    assert found > 0
    print(f"✅ Test passed: Nakayama sweep n={n} ({found} modules)")
