"""Seeded property checks over small Nakayama algebras"""
import random
from collections import Counter

import pytest

from arthom.classify import enumerate_indecomposables, six_term_sequence
from arthom.endocat import endo_algebra, hom_transport
from arthom.fixtures import nakayama_family
from arthom.homology import dominant_dimension, ext, is_projective, rel_domdim, tau, tau_inverse
from arthom.pathalg import parse_algebra
from arthom.repmod import (
    decompose,
    direct_sum,
    dual_regular_module,
    hom_dim,
    indecomposable_iso,
    regular_module,
)

SEED = 20240611


def _sample_algebras(count, max_vertices=3, max_loewy=3, seed=SEED):
    family = [(k, c, t) for k, c, t in nakayama_family(max_vertices, max_loewy) if len(k) > 1]
    rng = random.Random(seed)
    return [(k, c, parse_algebra(t)) for k, c, t in rng.sample(family, min(count, len(family)))]


class _Universes:
    """Parsed Nakayama algebras and their indecomposables, built on first use"""

    def __init__(self, max_vertices, max_loewy):
        self.family = [(k, c, t) for k, c, t in nakayama_family(max_vertices, max_loewy) if len(k) > 1]
        self._items = {}

    def choice(self, rng):
        kupisch, cyclic, text = rng.choice(self.family)
        key = (kupisch, cyclic)
        if key not in self._items:
            alg = parse_algebra(text)
            self._items[key] = (alg, enumerate_indecomposables(alg).items)
        return key, *self._items[key]


@pytest.mark.parametrize("kupisch, cyclic, alg", _sample_algebras(4))
def test_translate_round_trip(kupisch, cyclic, alg):
    """Test 1: τ⁻τX ≅ X for every non-projective indecomposable"""
    for X in enumerate_indecomposables(alg).items:
        if is_projective(X):
            continue
        back = tau_inverse(tau(X))
        assert indecomposable_iso(back, X) is not None, (kupisch, cyclic, X.dims)
    print(f"✅ Test passed: τ⁻τ round trip on {kupisch}")


def test_decomposition_is_additive(a2, c3):
    """Test 2: decomposing 100 random direct sums recovers the summands with multiplicity"""
    rng = random.Random(SEED)
    universes = [enumerate_indecomposables(alg).items for alg, _ in (a2, c3)]
    for _ in range(100):
        items = rng.choice(universes)
        picks = [rng.randrange(len(items)) for _ in range(rng.randint(1, 3))]
        cert = decompose(direct_sum([items[k] for k in picks], items[0].alg))
        assert cert.witness.is_iso()
        assert cert.residues == [1] * cert.count
        found = Counter()
        for R, mult in cert.summands:
            k = next(k for k, Y in enumerate(items) if indecomposable_iso(R, Y) is not None)
            found[k] += mult
        assert found == Counter(picks), ([items[k].dims for k in picks], [R.dims for R, _ in cert.summands])
    print("✅ Test passed: Krull-Schmidt additivity")


def test_ext_measures_relative_domdim(c3):
    """Test 3: I-domdim Hom(X, M) is one more than the first non-vanishing Ext^i(X, M)"""
    alg, mods = c3
    M = mods["M"]
    pres = endo_algebra(M)
    I = hom_transport(regular_module(alg), pres)
    for X in enumerate_indecomposables(alg).items:
        first = next((i for i in range(1, 5) if ext(X, M, i) != 0), None)
        value = rel_domdim(hom_transport(X, pres), I)
        if first is None:
            assert value.at_least(5), X.dims
        else:
            assert value.value == first + 1, (X.dims, first, str(value))
    print("✅ Test passed: Ext and relative dominant dimension")


def test_generator_cogenerator_domdim():
    """Test 4: End of 25 random generator-cogenerators has dominant dimension at least 2"""
    rng = random.Random(SEED + 1)
    universes = _Universes(4, 3)
    seen = set()
    attempts = 0
    while len(seen) < 25:
        attempts += 1
        assert attempts < 500
        key, alg, items = universes.choice(rng)
        k = rng.randrange(len(items))
        if (key, k) in seen:
            continue
        seen.add((key, k))
        M = direct_sum([regular_module(alg), dual_regular_module(alg), items[k]], alg)
        lam = endo_algebra(M).algebra
        assert dominant_dimension(regular_module(lam)).at_least(2), (key, items[k].dims)
    print("✅ Test passed: dominant dimension of 25 endomorphism algebras")


def test_six_term_sequence_on_rigid_modules(c3):
    """Test 5: the Hom sequence into D Hom(M, τ_n M) is exact for M without self-extensions"""
    _, mods = c3
    assert six_term_sequence(mods["M"], 2).verdict is True
    rng = random.Random(SEED + 2)
    universes = _Universes(4, 4)
    checked = 0
    attempts = 0
    while checked < 20:
        attempts += 1
        assert attempts < 400
        key, alg, items = universes.choice(rng)
        n = rng.choice([2, 3])
        picks = rng.sample(items, min(len(items), rng.randint(1, 3)))
        M = direct_sum(picks, alg)
        if any(ext(M, M, i) for i in range(1, n)):
            continue
        report = six_term_sequence(M, n)
        assert report.verdict is True, (key, n, [X.dims for X in picks], [c.detail for c in report.conditions])
        checked += 1
    print(f"✅ Test passed: six-term sequence on {checked} rigid modules")


def test_hom_transport_is_a_duality(c3):
    """Test 6: Hom_A(-, M) preserves Hom dimensions for a cogenerator M"""
    alg, mods = c3
    pres = endo_algebra(mods["M"])
    items = enumerate_indecomposables(alg).items
    for X in items:
        for Y in items:
            assert hom_dim(X, Y) == hom_dim(hom_transport(Y, pres), hom_transport(X, pres)), (X.dims, Y.dims)
    print("✅ Test passed: Hom transport duality")
