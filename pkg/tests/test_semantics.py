import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from heytingkit.errors import ArgumentError, SizeLimitError
from heytingkit.lattice import chain_algebra
from heytingkit.logic.generate import random_formula
from heytingkit.logic.semantics import KripkeModel, Valuation, evaluate, evaluate_many, validity
from heytingkit.logic.syntax import parse
from heytingkit.order import fork_poset, open_algebra, power_poset, upset_masks
from heytingkit.stock import random_poset
from strategies import algebras, formulas, posets

WEM = parse("~p0 | ~~p0")


def test_eval_boolean_excluded_middle():
    B = chain_algebra(2)
    assert evaluate(B, Valuation(B, {0: 1}), parse("p0 | ~p0")) == B.top


def test_eval_wem_on_three_chain():
    C = chain_algebra(3)
    m = C.labels.index("m")
    assert C.neg(m) == C.bot and C.neg(C.neg(m)) == C.top
    assert evaluate(C, Valuation(C, {0: m}), WEM) == C.top


def test_eval_wem_on_fork():
    H = open_algebra(fork_poset())
    x = H.labels.index("{x}")
    value = evaluate(H, Valuation(H, {0: x}), WEM)
    assert H.labels[value] == "{x,y}" and value != H.top


def test_unlisted_atoms_default_to_top():
    C = chain_algebra(3)
    v = Valuation(C, {})
    assert v(7) == C.top
    assert evaluate(C, v, parse("p3")) == C.top


def test_valuation_checks_range():
    C = chain_algebra(3)
    with pytest.raises(ArgumentError):
        Valuation(C, {0: 3})


def test_validity_examples():
    assert validity(chain_algebra(2), parse("p0 | ~p0")).valid
    C = chain_algebra(3)
    v = validity(C, parse("((p0->p1)->p0)->p0"))
    assert not v.valid
    assert v.counter.assignment == {0: C.labels.index("m"), 1: C.bot}
    H = open_algebra(fork_poset())
    v = validity(H, WEM)
    assert v.counter.assignment == {0: H.labels.index("{x}")}


def test_validity_guard():
    H = open_algebra(power_poset(3))
    with pytest.raises(SizeLimitError):
        validity(H, parse("p0 & p1 & p2 & p3 & p4 & p5 & p6"))
    with pytest.raises(SizeLimitError):
        validity(H, parse("p0 | p1"), bound=100)


def test_validity_first_counter_is_lexicographic():
    C = chain_algebra(3)
    phi = parse("p0 | p1")
    v = validity(C, phi)
    first = min(
        (a, b) for a in range(3) for b in range(3)
        if evaluate(C, Valuation(C, {0: a, 1: b}), phi) != C.top
    )
    assert tuple(v.counter.assignment.values()) == first


@given(algebras, formulas(), st.data())
def test_vectorized_matches_direct(H, phi, data):
    atoms = sorted(phi.atoms)
    values = [data.draw(st.integers(0, H.size - 1)) for _ in atoms]
    v = Valuation(H, dict(zip(atoms, values)))
    cols = {a: np.array([x]) for a, x in zip(atoms, values)}
    assert int(evaluate_many(H, phi, cols)[0]) == evaluate(H, v, phi)


def _check_agreement(P, H, rng, phi):
    masks = upset_masks(P)
    forcing = {a: rng.choice(masks) for a in phi.atoms}
    M = KripkeModel(P, forcing)
    v = M.valuation(H, atoms=phi.atoms)
    return M.truth_set(phi) == H.elements[evaluate(H, v, phi)]


def test_kripke_algebra_agreement_ten_thousand_pairs():
    rng = random.Random(2024)
    pairs = 0
    while pairs < 10_000:
        P = random_poset(rng, rng.randint(1, 5), rng.choice((0.2, 0.4, 0.6)))
        H = open_algebra(P)
        for _ in range(50):
            phi = random_formula(rng, rng.randint(1, 4), n_atoms=3)
            assert _check_agreement(P, H, rng, phi), (P.le.tolist(), str(phi))
            pairs += 1
    assert pairs >= 10_000


@given(posets(), formulas(), st.integers(0, 2**32 - 1))
def test_kripke_algebra_agreement(P, phi, seed):
    assert _check_agreement(P, open_algebra(P), random.Random(seed), phi)


@given(posets(), formulas(), st.integers(0, 2**32 - 1))
def test_forcing_is_monotone(P, phi, seed):
    rng = random.Random(seed)
    masks = upset_masks(P)
    M = KripkeModel(P, {a: rng.choice(masks) for a in range(3)})
    truth = M.truth_set(phi)
    for a in range(P.size):
        for b in range(P.size):
            if P.le[a, b] and truth >> a & 1:
                assert truth >> b & 1


def test_kripke_rejects_non_upsets():
    with pytest.raises(ArgumentError):
        KripkeModel(fork_poset(), {0: 0b001})


def test_kripke_model_serialisation():
    M = KripkeModel(fork_poset(), {0: 0b010})
    d = M.to_dict()
    assert d["forcing"] == {"p0": [1]} and d["worlds"] == ["r", "x", "y"]
    assert not M.forces(0, WEM) and M.forces(1, WEM)
    assert not M.valid(WEM)
