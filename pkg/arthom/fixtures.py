"""Embedded golden algebras, the Nakayama family and fixture scenarios"""
import itertools
import logging
import time
from typing import Callable, Dict, Iterator, List, Sequence, Tuple

from .approx import add_equal, coresolution, AddClosure, in_add
from .classify import (
    classify_algebra,
    enumerate_indecomposables,
    gorenstein_projectives,
    injectives_of_small_pd,
    is_almost_precluster,
    is_precluster,
    perp_category,
    precluster_from_algebra,
    six_term_sequence,
)
from .endocat import endo_algebra, hom_transport, natural_eval_iso
from .errors import ArthomError, PreconditionError
from .homology import ar_translate, projective_dimension, rel_domdim
from .models import Assertion, FixtureReport
from .pathalg import AlgebraDocument, parse_document
from .relhom import SubBifunctor, is_F_cotilting, is_F_tilting, pd_id_F, perp_F
from .report import finalize
from .repmod import (
    Rep,
    decompose,
    direct_sum,
    dual_regular_module,
    hom,
    indecomposable_iso,
    injective_module,
    load_modules,
    projective_module,
    regular_module,
    simple_module,
)

logger = logging.getLogger(__name__)


# ============================================================================
# GOLDEN ALGEBRAS
# ============================================================================

FIX_A2 = """\
# path algebra of 1 -> 2
field Q
vertices 1 2
arrow a : 1 -> 2
"""

FIX_G = """\
# 1 -> 2 -> 3 -> 4 <- 5 <- 6 with the length three path from 1 killed
field Q
vertices 1 2 3 4 5 6
arrow a : 1 -> 2
arrow b : 2 -> 3
arrow g : 3 -> 4
arrow d : 5 -> 4
arrow e : 6 -> 5
relation g*b*a
module I = I(2) + I(3) + I(4) + I(5) + I(6)
"""

FIX_C3 = """\
# cyclic Nakayama algebra on three vertices, Kupisch series (3, 3, 4)
field Q
vertices 1 2 3
arrow a : 1 -> 2
arrow b : 2 -> 3
arrow g : 3 -> 1
relation g*b*a
relation a*g*b
module U {
  dim 1 0 1;
  map g = [[1]]
}
module V {
  dim 1 1 0;
  map a = [[1]]
}
module M = S(1) + U + DA
"""

ALGEBRAS: Dict[str, str] = {"A2": FIX_A2, "G": FIX_G, "C3": FIX_C3}


def load_fixture(name: str) -> Tuple[AlgebraDocument, Dict[str, Rep]]:
    """Parsed fixture algebra with its declared modules"""
    try:
        text = ALGEBRAS[name]
    except KeyError:
        raise PreconditionError("known fixture algebra", name)
    doc = parse_document(text)
    return doc, load_modules(doc)


# ============================================================================
# NAKAYAMA FAMILY
# ============================================================================

def is_admissible_kupisch(kupisch: Sequence[int], cyclic: bool) -> bool:
    n = len(kupisch)
    if n == 0:
        return False
    if cyclic:
        if any(c < 2 for c in kupisch):
            return False
        return all(kupisch[i] <= kupisch[(i + 1) % n] + 1 for i in range(n))
    if kupisch[-1] != 1 or any(c < 2 for c in kupisch[:-1]):
        return False
    return all(kupisch[i] <= kupisch[i + 1] + 1 for i in range(n - 1))


def nakayama_algebra(kupisch: Sequence[int], cyclic: bool = False) -> str:
    """Algebra file text of the Nakayama algebra with dim P(i) = kupisch[i-1]

    Arrows run i -> i+1 (and n -> 1 when cyclic); the path of length c_i
    leaving i is a relation whenever it is not implied by the next one.
    """
    kupisch = [int(c) for c in kupisch]
    if not is_admissible_kupisch(kupisch, cyclic):
        raise PreconditionError("admissible Kupisch series", str(kupisch))
    n = len(kupisch)
    lines = [
        f"# {'cyclic' if cyclic else 'linear'} Nakayama algebra, Kupisch series {tuple(kupisch)}",
        "field Q",
        "vertices " + " ".join(str(i + 1) for i in range(n)),
    ]
    for i in range(n if cyclic else n - 1):
        lines.append(f"arrow a{i + 1} : {i + 1} -> {(i + 1) % n + 1}")
    for i, c in enumerate(kupisch):
        if c == 1 or kupisch[(i + 1) % n] < c:
            continue
        word = [f"a{(i + k) % n + 1}" for k in range(c)]
        lines.append("relation " + "*".join(reversed(word)))
    return "\n".join(lines) + "\n"


def _canonical_rotation(kupisch: Tuple[int, ...]) -> Tuple[int, ...]:
    return min(kupisch[i:] + kupisch[:i] for i in range(len(kupisch)))


def nakayama_family(max_vertices: int, max_loewy: int) -> Iterator[Tuple[Tuple[int, ...], bool, str]]:
    """Connected Nakayama algebras up to rotation: (kupisch, cyclic, text)"""
    for n in range(1, max_vertices + 1):
        for kupisch in itertools.product(range(1, max_loewy + 1), repeat=n):
            if is_admissible_kupisch(kupisch, False):
                yield kupisch, False, nakayama_algebra(kupisch, False)
            if is_admissible_kupisch(kupisch, True) and _canonical_rotation(kupisch) == kupisch:
                yield kupisch, True, nakayama_algebra(kupisch, True)


# ============================================================================
# SCENARIOS
# ============================================================================

class _Checks:
    """Collects expected/actual pairs in order"""

    def __init__(self):
        self.assertions: List[Assertion] = []

    def expect(self, label: str, expected, actual) -> None:
        self.assertions.append(Assertion(label=label, expected=expected, actual=actual, ok=expected == actual))


def _relative_domdim(checks: _Checks) -> None:
    doc, mods = load_fixture("G")
    alg = doc.algebra
    I = mods["I"]
    checks.expect("pd I", 2, projective_dimension(I).value)
    checks.expect("I-domdim", 2, rel_domdim(regular_module(alg), I).value)
    checks.expect("pd I(1)", 2, projective_dimension(injective_module(alg, 0)).value)
    checks.expect("I(1) in add I", False, in_add(injective_module(alg, 0), AddClosure(I)))


def _almost_precluster(checks: _Checks) -> None:
    doc, mods = load_fixture("C3")
    alg = doc.algebra
    M = mods["M"]
    checks.expect("almost 2-precluster", True, is_almost_precluster(M, 2).verdict)
    checks.expect("2-precluster", False, is_precluster(M, 2).verdict)
    res = coresolution(regular_module(alg), AddClosure(M))
    checks.expect("M-codim A", 1, res.dimension().value)
    t = ar_translate(simple_module(alg, 0), "tau_n-", 2)
    checks.expect("tau_2^- S(1) is 1 over 2", True, indecomposable_iso(t, mods["V"]) is not None)
    checks.expect("tau_2^- S(1) in add M", False, in_add(t, AddClosure(M)))


def _summand_dims(X: Rep) -> List[Tuple[int, ...]]:
    return sorted(R.dims for R in decompose(X).indecomposables())


def _endomorphism_roundtrip(checks: _Checks) -> None:
    doc, mods = load_fixture("C3")
    alg = doc.algebra
    M = mods["M"]
    pres = endo_algebra(M)
    lam = pres.algebra
    checks.expect("vertices of End M", 5, lam.num_vertices)
    checks.expect("dim End M", len(hom(M, M)), lam.dim)
    report = classify_algebra(lam, 2)
    checks.expect("id End M", 3, report.findings["id_left"]["value"])
    checks.expect("I-domdim End M", 3, report.findings["I_domdim"]["value"])
    checks.expect("almost 2-minimal Auslander-Gorenstein", True, report.verdict)
    cert = natural_eval_iso(pres, "algebra")
    checks.expect("A -> End(Hom(A,M)) bijective", True, cert.ok)

    back = precluster_from_algebra(lam, 2)
    checks.expect("injectives of pd <= 1", alg.num_vertices, back.presentation.algebra.num_vertices)
    checks.expect("dim End(I)", alg.dim, back.presentation.algebra.dim)
    # vertex k of End(I) is the summand of I isomorphic to Hom(P(i), M)
    order = []
    for i in range(alg.num_vertices):
        T = hom_transport(projective_module(alg, i), pres)
        k = next((k for k, N in enumerate(back.presentation.summands) if indecomposable_iso(N, T) is not None), None)
        order.append(k)
    checks.expect("vertex correspondence", True, sorted(o for o in order if o is not None) == list(range(alg.num_vertices)))
    if None not in order:
        permuted = sorted(tuple(R.dims[k] for k in order) for R in decompose(back.module).indecomposables())
        checks.expect("Hom(Lambda,I) matches M", _summand_dims(M), permuted)
    checks.expect("Hom(Lambda,I) almost 2-precluster", True, back.report.verdict)


def _six_term_sequence(checks: _Checks) -> None:
    _, mods = load_fixture("C3")
    M = mods["M"]
    report = six_term_sequence(M, 2)
    for c in report.conditions:
        checks.expect(c.label, True, c.ok)


def _translate_closure(checks: _Checks) -> None:
    doc, mods = load_fixture("C3")
    alg = doc.algebra
    M = mods["M"]
    tn = ar_translate(M, "tau_n", 2)
    checks.expect("add M = add(tau_2 M + DA)", True, add_equal(M, direct_sum([tn, dual_regular_module(alg)], alg)))
    checks.expect("A in add M", False, in_add(regular_module(alg), AddClosure(M)))


def _gorenstein_duality(checks: _Checks) -> None:
    doc, mods = load_fixture("C3")
    alg = doc.algebra
    M = mods["M"]
    F = SubBifunctor.upper(M)
    universe = enumerate_indecomposables(alg)
    checks.expect("indecomposables", 10, len(universe))
    checks.expect("M is F-cotilting", True, is_F_cotilting(M, F))
    checks.expect("M is F-tilting", True, is_F_tilting(M, F))
    checks.expect("id_F M", 0, pd_id_F(M, F, "id").value)
    perp = perp_F(M, F, universe)
    perp1 = perp_category(M, 1, "right", universe)
    same = len(perp) == len(perp1) and all(any(X is Y for Y in perp1) for X in perp)
    checks.expect("F-perpendicular equals Ext^1-perpendicular", True, same)

    pres = endo_algebra(M)
    lam = pres.algebra
    I = injectives_of_small_pd(lam)
    transported = [hom_transport(X, pres) for X in perp]
    checks.expect("Gorenstein projective transports", len(perp),
                  sum(1 for T in transported if gorenstein_projectives(lam, T)))
    checks.expect("I-domdim of transports >= 3", len(perp),
                  sum(1 for T in transported if rel_domdim(T, I).at_least(3)))
    mismatches = 0
    for X, TX in zip(perp, transported):
        for Y, TY in zip(perp, transported):
            if len(hom(X, Y)) != len(hom(TY, TX)):
                mismatches += 1
    checks.expect("Hom duality mismatches", 0, mismatches)


SCENARIOS: Dict[str, Callable[[_Checks], None]] = {
    "relative-domdim": _relative_domdim,
    "almost-precluster": _almost_precluster,
    "endomorphism-roundtrip": _endomorphism_roundtrip,
    "six-term-sequence": _six_term_sequence,
    "translate-closure": _translate_closure,
    "gorenstein-duality": _gorenstein_duality,
}

# short citation-style names accepted alongside the descriptive keys
FIXTURE_ALIASES: Dict[str, str] = {
    "remark-3.2": "relative-domdim",
    "remark-4.4": "almost-precluster",
    "theorem-4.8-roundtrip": "endomorphism-roundtrip",
    "lemma-4.5": "six-term-sequence",
    "prop-4.6": "translate-closure",
    "thm-4.13-duality": "gorenstein-duality",
}


def resolve_fixture(name: str) -> str:
    """Scenario key for a scenario name or alias

    Raises:
        PreconditionError: unknown scenario name
    """
    key = FIXTURE_ALIASES.get(name, name)
    if key not in SCENARIOS:
        known = ", ".join(list(SCENARIOS) + list(FIXTURE_ALIASES))
        raise PreconditionError("known fixture", f"{name}; choose from {known}")
    return key


def verify_fixture(name: str) -> FixtureReport:
    """Run a golden scenario and chain its assertions

    Raises:
        PreconditionError: unknown scenario name
    """
    scenario = SCENARIOS[resolve_fixture(name)]
    started = time.perf_counter()
    checks = _Checks()
    try:
        scenario(checks)
    except ArthomError as e:
        checks.assertions.append(Assertion(label="completed", expected=True, actual=str(e), ok=False))
    report = FixtureReport(
        name=name,
        ok=all(a.ok for a in checks.assertions),
        assertions=checks.assertions,
        timings={"total_ms": round((time.perf_counter() - started) * 1000, 3)},
    )
    finalize(report)
    if report.ok:
        logger.info(f"✅ Fixture {name}: {len(report.assertions)} assertions passed")
    else:
        failed = [a.label for a in report.assertions if not a.ok]
        logger.error(f"❌ Fixture {name}: failed {failed}")
    return report
