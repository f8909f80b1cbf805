"""Tests for endomorphism algebra presentations and Hom transport"""
import pytest

from arthom.endocat import (
    contravariant_transport,
    endo_algebra,
    evaluation_iso,
    hom_transport,
    natural_eval_iso,
    to_text,
    transport_map,
)
from arthom.errors import AlgebraMismatchError, PreconditionError
from arthom.pathalg import parse_algebra
from arthom.repmod import (
    RepMap,
    direct_sum,
    hom,
    isomorphic,
    regular_module,
    simple_module,
)


def test_end_m_presentation(c3):
    """Test 1: End M has one vertex per summand and the right dimension"""
    alg, mods = c3
    pres = endo_algebra(mods["M"])
    assert pres.algebra.num_vertices == 5
    assert pres.algebra.dim == len(hom(mods["M"], mods["M"]))
    assert pres.dimension == pres.algebra.dim
    assert len(pres.path_maps) == pres.algebra.dim
    assert pres.vertex_of(simple_module(alg, 0)) is not None
    assert endo_algebra(mods["M"]) is pres
    print("✅ Test passed: End M presentation")


def test_semisimple_endomorphisms(a2):
    """Test 2: End(S1 ⊕ S2) is k × k"""
    alg, _ = a2
    pres = endo_algebra(direct_sum([simple_module(alg, 0), simple_module(alg, 1)]))
    assert pres.algebra.num_vertices == 2
    assert len(pres.algebra.quiver.arrows) == 0
    assert pres.algebra.dim == 2
    print("✅ Test passed: Semisimple endomorphisms")


def test_regular_transport(c3):
    """Test 3: Hom(M, M) is the regular Λ-module"""
    alg, mods = c3
    pres = endo_algebra(mods["M"])
    T = hom_transport(mods["M"], pres)
    assert isomorphic(T, regular_module(pres.algebra))
    assert hom_transport(mods["M"], pres) is T
    R = contravariant_transport(mods["M"], pres)
    assert R.alg is pres.algebra.opposite()
    assert R.dim == pres.algebra.dim
    print("✅ Test passed: Regular transport")


def test_transport_map(c3):
    """Test 4: Hom(-, M) sends identities to identities"""
    alg, mods = c3
    pres = endo_algebra(mods["M"])
    U = mods["U"]
    g = transport_map(RepMap.identity(U), pres)
    assert g.src is g.dst is hom_transport(U, pres)
    assert g.is_iso()
    with pytest.raises(AlgebraMismatchError):
        a2 = parse_algebra("field Q\nvertices 1 2\narrow a : 1 -> 2\n")
        hom_transport(simple_module(a2, 0), pres)
    print("✅ Test passed: Transport map")


def test_evaluation_algebra_direction(c3):
    """Test 5: A ≅ End_Λ(Hom_A(A, M)) when DA ∈ add M"""
    alg, mods = c3
    pres = endo_algebra(mods["M"])
    cert = natural_eval_iso(pres, "algebra")
    assert cert.ok
    assert cert.source_dim == 10
    assert evaluation_iso(mods["U"], pres).ok
    print("✅ Test passed: Evaluation, algebra direction")


def test_evaluation_endomorphism_direction(g):
    """Test 6: G ≅ End_A(Hom_G(G, I)) since I-domdim G ≥ 2"""
    alg, mods = g
    pres = endo_algebra(mods["I"])
    cert = natural_eval_iso(pres, "endomorphism")
    assert cert.ok
    assert cert.source_dim == alg.dim
    print("✅ Test passed: Evaluation, endomorphism direction")


def test_evaluation_preconditions(a2, c3):
    """Test 7: missing hypotheses are reported, not guessed"""
    alg, mods = c3
    with pytest.raises(PreconditionError):
        natural_eval_iso(endo_algebra(mods["M"]), "endomorphism")
    alg, _ = a2
    with pytest.raises(PreconditionError):
        natural_eval_iso(endo_algebra(regular_module(alg)), "algebra")
    with pytest.raises(ValueError):
        natural_eval_iso(endo_algebra(regular_module(alg)), "sideways")
    print("✅ Test passed: Evaluation preconditions")


def test_to_text_round_trip(c3):
    """Test 8: the written presentation parses back"""
    alg, mods = c3
    pres = endo_algebra(mods["M"])
    text = to_text(pres)
    assert text.startswith("# End of M")
    again = parse_algebra(text)
    assert again.dim == pres.algebra.dim
    assert again.quiver.num_vertices == 5
    print("✅ Test passed: Presentation text round trip")
