import numpy as np
import pytest
from hypothesis import given, strategies as st

from heytingkit.errors import ArgumentError, StructureError
from heytingkit.filters import as_filter, principal_filter
from heytingkit.lattice import (
    HeytingAlgebra, chain_algebra, dual_algebra, dual_implication_law_violations,
    dual_residuation_violations, implication_law_violations, implication_table, interval, irreducibility_flags, is_distributive,
    lattice_dot, lattice_from_json, lattice_from_order, lattice_to_json, quotient_by_filter,
    residuation_violations,
)
from heytingkit.order import fork_poset, open_algebra, power_poset
from heytingkit.stock import random_upset_algebras
from strategies import algebras, posets, stock


def _m3():
    le = np.eye(5, dtype=bool)
    le[0, :] = True
    le[:, 4] = True
    return lattice_from_order(le)


def test_boolean_implication():
    B = chain_algebra(2)
    assert B.imp[1, 0] == 0
    assert all(B.imp[0, x] == 1 for x in range(2))


def test_three_chain_implication():
    C = chain_algebra(3)
    m = C.labels.index("m")
    assert C.imp[C.top, m] == m
    assert C.imp[m, C.bot] == C.bot


def test_m3_is_not_implicative():
    with pytest.raises(StructureError):
        implication_table(_m3())
    assert not is_distributive(_m3())


def test_interval_whole_algebra():
    H = open_algebra(fork_poset())
    I = interval(H, H.bot, H.top)
    assert np.array_equal(I.imp, H.imp) and np.array_equal(I.le, H.le)


def test_interval_of_three_chain():
    C = chain_algebra(3)
    assert interval(C, C.labels.index("m"), C.top).size == 2


def test_interval_in_fork_algebra():
    H = open_algebra(fork_poset())
    x = H.labels.index("{x}")
    I = interval(H, x, H.top)
    assert I.labels == ("{x}", "{x,y}", "{r,x,y}")
    assert I.imp[1, 0] == 0
    assert residuation_violations(I) == []


def test_interval_bounds_checked():
    C = chain_algebra(3)
    with pytest.raises(ArgumentError):
        interval(C, C.top, C.bot)


def test_dual_of_boolean():
    B = chain_algebra(2)
    D = dual_algebra(B)
    assert D.size == 2 and D.bot == B.top and D.top == B.bot


def test_dual_of_three_chain():
    C = chain_algebra(3)
    D = dual_algebra(C)
    m = C.labels.index("m")
    assert D.bot == C.top and D.top == C.bot
    assert D.le[C.top, m] and D.le[m, C.bot]
    assert np.array_equal(D.le, C.le.T)
    assert np.array_equal(D.imp, C.dual_imp)


def test_dual_requires_dual_implication():
    C = chain_algebra(3)
    bare = HeytingAlgebra(C.lattice, C.imp)
    with pytest.raises(StructureError):
        dual_algebra(bare)
    with pytest.raises(StructureError):
        dual_implication_law_violations(bare)


@pytest.mark.parametrize("H", stock(), ids=lambda H: H.name)
def test_dual_involution(H):
    if H.dual_imp is None:
        return
    DD = dual_algebra(dual_algebra(H))
    assert np.array_equal(DD.le, H.le)
    assert np.array_equal(DD.imp, H.imp)
    assert np.array_equal(DD.meet, H.meet) and np.array_equal(DD.join, H.join)


def test_irreducibility_examples():
    f = irreducibility_flags(chain_algebra(2))
    assert f.zero_irreducible and f.one_irreducible
    f = irreducibility_flags(open_algebra(fork_poset()))
    assert f.one_irreducible and not f.zero_irreducible
    f = irreducibility_flags(open_algebra(power_poset(2)))
    assert f.one_irreducible and f.zero_irreducible


def test_quotient_by_unit_filter():
    H = open_algebra(fork_poset())
    q = quotient_by_filter(H, as_filter(H, {H.top}))
    assert q.lattice.size == H.size


def test_quotient_by_improper_set():
    C = chain_algebra(3)
    with pytest.raises(ArgumentError):
        quotient_by_filter(C, {0, 1, 2})


def test_quotient_of_three_chain():
    C = chain_algebra(3)
    m = C.labels.index("m")
    q = quotient_by_filter(C, as_filter(C, {m, C.top}))
    assert q.lattice.size == 2
    assert q.classes == ((C.bot,), (m, C.top))
    assert q.generator == m
    assert q.segment.labels == ("0", "m")


def test_lattice_json_round_trip():
    H = open_algebra(fork_poset())
    H2 = lattice_from_json(lattice_to_json(H))
    assert np.array_equal(H.le, H2.le) and np.array_equal(H.imp, H2.imp)


def test_lattice_dot_deterministic():
    C = chain_algebra(3)
    assert lattice_dot(C) == lattice_dot(C)
    assert lattice_dot(C).count("->") == 2


@pytest.mark.parametrize("H", stock(), ids=lambda H: H.name)
def test_laws_on_stock(H):
    assert implication_law_violations(H) == []
    assert residuation_violations(H) == []
    if H.dual_imp is not None:
        assert dual_implication_law_violations(H) == []
        assert dual_residuation_violations(H) == []


def test_laws_on_random_upset_algebras():
    for H in random_upset_algebras(60, max_size=12, seed=7):
        assert is_distributive(H)
        assert implication_law_violations(H) == []
        if H.dual_imp is not None:
            assert dual_implication_law_violations(H) == []


@given(posets(max_size=6))
def test_dual_residuation_on_upset_algebras(P):
    H = open_algebra(P)
    assert dual_residuation_violations(H) == []
    assert dual_implication_law_violations(H) == []


@given(algebras, st.data())
def test_relative_implication_in_intervals(H, data):
    c = data.draw(st.integers(0, H.size - 1))
    d = data.draw(st.sampled_from([x for x in range(H.size) if H.le[c, x]]))
    I = interval(H, c, d)
    assert residuation_violations(I) == []


@given(algebras)
def test_quotient_order_is_implication_membership(H):
    for e in range(H.size):
        if e == H.bot:
            continue
        F = principal_filter(H, e)
        q = quotient_by_filter(H, F)
        for a in range(H.size):
            for b in range(H.size):
                below = bool(q.lattice.le[q.projection[a], q.projection[b]])
                assert below == (int(H.imp[a, b]) in F.members)
