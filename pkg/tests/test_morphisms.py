import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from heytingkit.errors import ArgumentError, SizeLimitError
from heytingkit.filters import prime_representation
from heytingkit.lattice import chain_algebra
from heytingkit.logic.corpus import load_corpus
from heytingkit.logic.semantics import KripkeModel, Valuation, evaluate, validity
from heytingkit.morphisms import (
    LatticeMap, PosetMap, cc_power, cc_punctured, is_cone_cover, meet_surjection, posetmap_from_json,
    posetmap_to_json, preimage, pullback_model, pullback_valuation, verify_hom,
)
from heytingkit.order import (
    Poset, antichain_poset, chain_poset, fork_poset, open_algebra, power_poset, upset_masks,
)
from heytingkit.stock import bounded_posets_up_to_iso
from strategies import algebras, formulas

POINT = Poset(np.ones((1, 1), dtype=bool))


def diamond():
    return Poset.from_pairs(4, [(0, 1), (0, 2), (1, 3), (2, 3)])


def test_identity_is_an_embedding():
    H = open_algebra(fork_poset())
    assert verify_hom(LatticeMap(H, H, tuple(range(H.size))), "embedding").ok


def test_eta_is_an_embedding():
    rep = prime_representation(chain_algebra(3))
    assert verify_hom(LatticeMap(chain_algebra(3), rep.target, rep.eta), "embedding").ok


def test_verify_hom_reports_violations():
    C = chain_algebra(3)
    bad = verify_hom(LatticeMap(C, C, (0, 0, 2)), "embedding")
    laws = {law for law, _ in bad.violations}
    assert "injective" in laws and not bad.ok
    assert bad.to_dict()["ok"] is False
    missed = verify_hom(LatticeMap(C, C, (0, 0, 2)), "surjection")
    assert ("surjective", (1,)) in missed.violations


@given(algebras, st.data())
def test_meet_surjection(H, data):
    c = data.draw(st.integers(0, H.size - 1))
    d = data.draw(st.sampled_from([x for x in range(H.size) if H.le[c, x]]))
    e = data.draw(st.integers(0, H.size - 1))
    assert verify_hom(meet_surjection(H, c, d, e), "surjection").ok


def test_cone_cover_examples():
    P = fork_poset()
    assert is_cone_cover(PosetMap(P, P, (0, 1, 2)))
    assert is_cone_cover(PosetMap(chain_poset(2), POINT, (0, 0)))
    check = is_cone_cover(PosetMap(antichain_poset(2), antichain_poset(2), (0, 0)))
    assert not check and check.witness == (None, 1)


def test_cone_cover_witness_for_missing_cone():
    # chain 0<1 onto the fork: the cone above r misses one top
    f = PosetMap(chain_poset(3), fork_poset(), (0, 1, 1))
    check = is_cone_cover(f)
    assert not check
    a, d = check.witness
    assert d == 2


def test_cc_punctured_small_tables():
    assert cc_punctured(1).table() == ["{0} -> {}", "{1} -> {}", "{0,1} -> {0}"]
    rows = dict(r.split(" -> ") for r in cc_punctured(2).table())
    assert rows["{0,2}"] == "{1}"
    assert rows["{1,2}"] == "{1}"


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_cc_punctured_is_cone_cover(n):
    assert is_cone_cover(cc_punctured(n))


@pytest.mark.parametrize("n", [0, 7])
def test_cc_punctured_range(n):
    with pytest.raises(SizeLimitError):
        cc_punctured(n)


def test_cc_power_examples():
    m, f = cc_power(POINT)
    assert m == 1 and len(set(f.map)) == 1 and is_cone_cover(f)
    m, f = cc_power(chain_poset(2))
    assert m >= 1 and is_cone_cover(f)
    m, f = cc_power(diamond())
    assert is_cone_cover(f) and f.source.size == 2**m


def test_cc_power_rejects_unbounded():
    with pytest.raises(ArgumentError):
        cc_power(fork_poset())


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_cc_power_all_small_bounded(n):
    for Q in bounded_posets_up_to_iso(n):
        m, f = cc_power(Q)
        assert is_cone_cover(f), Q.le.tolist()


def test_preimage_and_pullback_examples():
    f = cc_punctured(1)
    H = open_algebra(power_poset(1))
    empty_only = 0b01  # the upset {∅} of P_1
    v = Valuation(H, {0: H.index_of(empty_only)})
    w = pullback_valuation(f, v)
    assert w.target.elements[w(0)] == preimage(f, empty_only) == 0b011
    ident = PosetMap(fork_poset(), fork_poset(), (0, 1, 2))
    O = open_algebra(fork_poset())
    v = Valuation(O, {0: 1, 1: 3})
    assert pullback_valuation(ident, v, O).assignment == v.assignment
    const = PosetMap(chain_poset(2), POINT, (0, 0))
    T = open_algebra(POINT)
    w = pullback_valuation(const, Valuation(T, {0: T.top}))
    assert w.target.elements[w(0)] == 0b11


def test_pullback_requires_cone_cover():
    f = PosetMap(antichain_poset(2), antichain_poset(2), (0, 0))
    T = open_algebra(antichain_poset(2))
    with pytest.raises(ArgumentError):
        pullback_valuation(f, Valuation(T, {}))


def test_posetmap_json_round_trip():
    f = cc_punctured(2)
    g = posetmap_from_json(posetmap_to_json(f))
    assert g.map == f.map and np.array_equal(g.source.le, f.source.le)
    with pytest.raises(ArgumentError):
        posetmap_from_json('{"source": {}}')


COVERS = [cc_punctured(1), cc_punctured(2), cc_power(chain_poset(3))[1], cc_power(diamond())[1]]


@settings(max_examples=60)
@given(st.sampled_from(COVERS), formulas(), st.integers(0, 2**32 - 1))
def test_pullback_is_a_homomorphism(f, phi, seed):
    rng = random.Random(seed)
    masks = upset_masks(f.target)
    M = KripkeModel(f.target, {a: rng.choice(masks) for a in phi.atoms})
    N = pullback_model(f, M)
    assert N.truth_set(phi) == preimage(f, M.truth_set(phi))


@settings(max_examples=30)
@given(st.sampled_from(COVERS[:2]), formulas(n_atoms=2), st.integers(0, 2**32 - 1))
def test_pullback_valuation_commutes_with_evaluation(f, phi, seed):
    rng = random.Random(seed)
    T = open_algebra(f.target)
    S = open_algebra(f.source)
    v = Valuation(T, {a: rng.randrange(T.size) for a in phi.atoms})
    w = pullback_valuation(f, v, S)
    assert S.elements[evaluate(S, w, phi)] == preimage(f, T.elements[evaluate(T, v, phi)])


def test_cone_covers_transport_theories():
    corpus = [e.formula for e in load_corpus()]
    for f in COVERS[:2]:
        S, T = open_algebra(f.source), open_algebra(f.target)
        for phi in corpus:
            if len(phi.atoms) <= 3 and validity(S, phi).valid:
                assert validity(T, phi).valid, (str(phi), f.table())
