"""Tests for certificate chains, digests and rendering"""
from arthom.classify import is_almost_precluster
from arthom.models import Assertion, ClassifierReport, Condition, FixtureReport
from arthom.report import (
    GENESIS,
    CertificateChain,
    finalize,
    render_json,
    render_text,
    report_digest,
    verify_assertions,
    verify_chain,
)


def _report():
    return finalize(ClassifierReport(
        verdict=True,
        conditions=[
            Condition(label="first", ok=True, detail="one"),
            Condition(label="second", ok=True, detail="two"),
        ],
        parameters={"n": 2},
        timings={"total_ms": 1.5},
    ))


def test_chain_links():
    """Test 1: entries link to their predecessor"""
    chain = CertificateChain()
    first = chain.add_entry({"x": 1})
    second = chain.add_entry({"x": 2})
    assert first["previous_hash"] == GENESIS
    assert second["previous_hash"] == first["entry_hash"]
    assert len(first["entry_hash"]) == 64
    assert CertificateChain.verify(chain.entries)["valid"]
    assert CertificateChain.verify([])["chain_length"] == 0
    print("✅ Test passed: Chain links")


def test_tamper_detection():
    """Test 2: editing a condition breaks its certificate"""
    report = _report()
    assert verify_chain(report.conditions)["valid"]
    report.conditions[0].detail = "edited"
    result = verify_chain(report.conditions)
    assert not result["valid"]
    assert "entry 0" in result["error"]
    print("✅ Test passed: Tamper detection")


def test_assertion_chain():
    """Test 3: fixture assertions carry their links"""
    report = finalize(FixtureReport(
        name="demo",
        ok=True,
        assertions=[Assertion(label="a", expected=1, actual=1, ok=True)],
    ))
    assert report.assertions[0].previous_hash == GENESIS
    assert verify_assertions(report.assertions)["valid"]
    report.assertions[0].actual = 2
    assert not verify_assertions(report.assertions)["valid"]
    print("✅ Test passed: Assertion chain")


def test_digest_is_stable(c3):
    """Test 4: identical runs have identical digests regardless of timings"""
    _, mods = c3
    first = is_almost_precluster(mods["M"], 2)
    second = is_almost_precluster(mods["M"], 2)
    assert first.digest == second.digest
    report = _report()
    digest = report.digest
    report.timings = {"total_ms": 99.0}
    assert report_digest(report) == digest
    print("✅ Test passed: Stable digest")


def test_render():
    """Test 5: text and JSON rendering"""
    report = _report()
    text = render_text(report)
    assert text.startswith("verdict: true")
    assert "✅ first: one" in text
    assert f"digest: {report.digest}" in text
    assert '"verdict": true' in render_json(report)
    unknown = finalize(ClassifierReport(verdict="unknown", reason="enumeration is incomplete"))
    assert "reason: enumeration is incomplete" in render_text(unknown)
    assert unknown.exit_code == 2
    print("✅ Test passed: Rendering")
