"""Tests for quivers, path bases, Gröbner reduction and the algebra file format"""
import pytest

from arthom.errors import CapExceededError, NonAdmissibleError, ParseError, UnknownVertexError
from arthom.exactlin import FieldSpec
from arthom.fixtures import FIX_C3
from arthom.pathalg import normal_form, parse_algebra, parse_document, to_text


def test_fixture_dimensions(a2, g, c3):
    """Test 1: dimensions of the golden algebras"""
    assert a2[0].dim == 3
    assert g[0].dim == 14
    assert c3[0].dim == 10
    print("✅ Test passed: Fixture dimensions")


def test_c3_basis(c3):
    """Test 2: the normal-form basis of the cyclic Nakayama algebra"""
    alg, _ = c3
    labels = {p.label(alg.quiver) for p in alg.basis}
    assert labels == {"e1", "e2", "e3", "a", "b", "g", "b*a", "g*b", "a*g", "b*a*g"}
    assert alg.loewy_length == 4
    print("✅ Test passed: C3 basis")


def test_normal_form(c3):
    """Test 3: relations reduce to zero, basis paths are fixed"""
    alg, _ = c3
    assert normal_form(alg, {("g", "b", "a"): 1}) == {}
    assert normal_form(alg, {("a", "g", "b"): 1}) == {}
    reduced = normal_form(alg, {("b", "a", "g"): 1})
    assert len(reduced) == 1
    (path, coeff), = reduced.items()
    assert path.label(alg.quiver) == "b*a*g" and coeff == 1
    print("✅ Test passed: Normal form")


def test_between(a2, c3):
    """Test 4: paths between vertices"""
    alg, _ = a2
    assert len(alg.between(0, 1)) == 1
    assert len(alg.between(1, 0)) == 0
    alg, _ = c3
    assert len(alg.between(2, 2)) == 2
    print("✅ Test passed: Paths between vertices")


def test_opposite(a2, c3):
    """Test 5: arrow reversal keeps the dimension and is an involution"""
    alg, _ = a2
    opp = alg.opposite()
    assert opp.dim == 3
    assert len(opp.between(1, 0)) == 1
    assert opp.opposite() is alg
    assert c3[0].opposite().dim == 10
    print("✅ Test passed: Opposite algebra")


def test_to_text_round_trip(g, c3):
    """Test 6: serialization parses back to the same algebra"""
    for alg, _ in (g, c3):
        again = parse_algebra(to_text(alg))
        assert again.dim == alg.dim
        assert again.quiver == alg.quiver
    print("✅ Test passed: Text round trip")


def test_prime_field():
    """Test 7: field declaration over GF(p)"""
    alg = parse_algebra(FIX_C3.replace("field Q", "field GF(101)"))
    assert alg.field == FieldSpec.prime(101)
    assert alg.dim == 10
    print("✅ Test passed: Prime field algebra")


def test_parse_errors():
    """Test 8: syntax errors carry their line"""
    with pytest.raises(ParseError) as exc:
        parse_algebra("field Q\nvertices 1 2\narrow a : 1 -> 3\n")
    assert exc.value.line == 3
    with pytest.raises(ParseError) as exc:
        parse_algebra("field Q\nvertices 1 2\narrow a : 1 -> 2\nrelation a*\n")
    assert exc.value.line == 4
    with pytest.raises(ParseError):
        parse_algebra("field R\nvertices 1\n")
    with pytest.raises(ParseError):
        parse_algebra("arrow a : 1 -> 2\n")
    print("✅ Test passed: Parse errors")


def test_non_admissible():
    """Test 9: relations outside rad^2 and infinite path bases are rejected"""
    with pytest.raises(NonAdmissibleError):
        parse_algebra("field Q\nvertices 1 2\narrow a : 1 -> 2\nrelation a\n")
    with pytest.raises(CapExceededError):
        parse_algebra("field Q\nvertices 1\narrow x : 1 -> 1\n", path_cap=6)
    print("✅ Test passed: Non-admissible input")


def test_module_declarations():
    """Test 10: module declarations are kept for repmod"""
    doc = parse_document(FIX_C3)
    names = [d.name for d in doc.modules]
    assert names == ["U", "V", "M"]
    assert doc.modules[0].explicit
    assert doc.modules[0].dims == (1, 0, 1)
    assert not doc.modules[2].explicit
    print("✅ Test passed: Module declarations")


def test_unknown_vertex(c3):
    """Test 11: vertex lookups fail loudly"""
    with pytest.raises(UnknownVertexError):
        c3[0].quiver.vertex_index("9")
    print("✅ Test passed: Unknown vertex")
