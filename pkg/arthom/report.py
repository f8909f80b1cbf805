"""SHA-256 certificate chains and report rendering"""
import hashlib
import json
from typing import Any, Dict, List, Sequence, Union

from .models import Assertion, ClassifierReport, Condition, FixtureReport

GENESIS = "GENESIS"

Report = Union[ClassifierReport, FixtureReport]


def canonical_json(payload: Any) -> str:
    """Sorted-key JSON; anything not JSON-native is rendered with str()"""
    return json.dumps(payload, sort_keys=True, default=str)


class CertificateChain:
    """Blockchain-style chain over conditions or fixture assertions

    Each entry hashes its own payload together with the previous entry's
    hash, starting from GENESIS, so editing any entry breaks every later link.
    """

    def __init__(self):
        self.entries: List[Dict[str, Any]] = []

    @staticmethod
    def generate_entry_hash(payload: Dict[str, Any], previous_hash: str) -> str:
        """
        Generate SHA-256 hash of a chain entry

        Args:
            payload: Entry fields (certificate fields excluded)
            previous_hash: Hash of the previous entry or GENESIS

        Returns:
            str: SHA-256 hash (64 hex characters)
        """
        body = canonical_json({"payload": payload, "previous_hash": previous_hash})
        return hashlib.sha256(body.encode("utf-8")).hexdigest()

    @property
    def last_hash(self) -> str:
        return self.entries[-1]["entry_hash"] if self.entries else GENESIS

    def add_entry(self, payload: Dict[str, Any]) -> Dict[str, Any]:
        previous = self.last_hash
        entry = {
            "payload": payload,
            "previous_hash": previous,
            "entry_hash": self.generate_entry_hash(payload, previous),
        }
        self.entries.append(entry)
        return entry

    @classmethod
    def verify(cls, entries: Sequence[Dict[str, Any]]) -> Dict[str, Any]:
        """
        Verify integrity of a complete chain

        Returns:
            dict: Verification result with status and details
        """
        if not entries:
            return {"valid": True, "chain_length": 0, "message": "Empty chain"}
        for i, entry in enumerate(entries):
            expected_previous = GENESIS if i == 0 else entries[i - 1]["entry_hash"]
            if entry["previous_hash"] != expected_previous:
                return {
                    "valid": False,
                    "error": f"Hash chain broken at entry {i}: previous_hash mismatch",
                    "expected": expected_previous,
                    "found": entry["previous_hash"],
                    "chain_length": len(entries),
                }
            computed = cls.generate_entry_hash(entry["payload"], entry["previous_hash"])
            if computed != entry["entry_hash"]:
                return {
                    "valid": False,
                    "error": f"Hash mismatch at entry {i}: entry has been tampered",
                    "expected": computed,
                    "found": entry["entry_hash"],
                    "chain_length": len(entries),
                }
        return {
            "valid": True,
            "chain_length": len(entries),
            "message": "Chain integrity verified successfully",
        }


# ============================================================================
# CONDITIONS AND ASSERTIONS
# ============================================================================

def _condition_payload(c: Condition) -> Dict[str, Any]:
    return {"label": c.label, "ok": c.ok, "detail": c.detail}


def _assertion_payload(a: Assertion) -> Dict[str, Any]:
    return {"label": a.label, "expected": a.expected, "actual": a.actual, "ok": a.ok}


def chain_conditions(conditions: List[Condition]) -> List[Condition]:
    """Fill in each condition's certificate as a link of one chain"""
    chain = CertificateChain()
    for c in conditions:
        c.certificate = chain.add_entry(_condition_payload(c))["entry_hash"]
    return conditions


def chain_assertions(assertions: List[Assertion]) -> List[Assertion]:
    chain = CertificateChain()
    for a in assertions:
        entry = chain.add_entry(_assertion_payload(a))
        a.previous_hash = entry["previous_hash"]
        a.entry_hash = entry["entry_hash"]
    return assertions


def verify_chain(conditions: Sequence[Condition]) -> Dict[str, Any]:
    """Recompute the certificates of a condition list"""
    entries = []
    previous = GENESIS
    for c in conditions:
        entries.append({"payload": _condition_payload(c), "previous_hash": previous, "entry_hash": c.certificate})
        previous = c.certificate
    return CertificateChain.verify(entries)


def verify_assertions(assertions: Sequence[Assertion]) -> Dict[str, Any]:
    entries = [
        {"payload": _assertion_payload(a), "previous_hash": a.previous_hash, "entry_hash": a.entry_hash}
        for a in assertions
    ]
    return CertificateChain.verify(entries)


# ============================================================================
# DIGESTS AND RENDERING
# ============================================================================

def report_digest(report: Report) -> str:
    """Hash of the report without timings, equal across identical runs"""
    data = report.model_dump(mode="json", exclude={"timings", "digest"})
    return hashlib.sha256(canonical_json(data).encode("utf-8")).hexdigest()


def finalize(report: Report) -> Report:
    """Chain the certificates and stamp the digest"""
    if isinstance(report, ClassifierReport):
        chain_conditions(report.conditions)
    else:
        chain_assertions(report.assertions)
    report.digest = report_digest(report)
    return report


def render_json(report: Report) -> str:
    return report.model_dump_json(indent=2)


def render_text(report: Report) -> str:
    lines = []
    if isinstance(report, ClassifierReport):
        verdict = report.verdict if report.verdict == "unknown" else ("true" if report.verdict else "false")
        lines.append(f"verdict: {verdict}")
        if report.reason:
            lines.append(f"reason: {report.reason}")
        for key, value in sorted(report.parameters.items()):
            lines.append(f"  {key} = {value}")
        for c in report.conditions:
            mark = "✅" if c.ok else "❌"
            lines.append(f"{mark} {c.label}: {c.detail}")
        for key, value in sorted(report.findings.items()):
            lines.append(f"  {key}: {value}")
    else:
        lines.append(f"fixture {report.name}: {'ok' if report.ok else 'FAILED'}")
        for a in report.assertions:
            mark = "✅" if a.ok else "❌"
            detail = f"{a.actual}" if a.ok else f"expected {a.expected}, got {a.actual}"
            lines.append(f"{mark} {a.label}: {detail}")
    if report.digest:
        lines.append(f"digest: {report.digest}")
    return "\n".join(lines)
