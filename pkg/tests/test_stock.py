import random

import pytest

from heytingkit.lattice import is_distributive
from heytingkit.stock import (
    bounded_posets_up_to_iso, canonical_form, implicative_stock, lattices_up_to_iso,
    posets_up_to_iso, random_poset, random_upset_algebras,
)


@pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 5), (4, 16), (5, 63)])
def test_poset_counts(n, count):
    assert len(posets_up_to_iso(n)) == count


@pytest.mark.parametrize("n,count", [(1, 1), (2, 1), (3, 1), (4, 2), (5, 5), (6, 15), (7, 53)])
def test_lattice_counts(n, count):
    assert len(lattices_up_to_iso(n)) == count


@pytest.mark.parametrize("n,count", [(2, 1), (3, 1), (4, 2), (5, 3), (6, 5), (7, 8), (8, 15)])
def test_distributive_counts(n, count):
    found = implicative_stock(n, min_size=n)
    assert len(found) == count
    assert all(is_distributive(H) for H in found)


def test_canonical_form_ignores_labelling():
    rng = random.Random(3)
    for _ in range(30):
        P = random_poset(rng, 5)
        perm = list(range(5))
        rng.shuffle(perm)
        assert canonical_form(P.le) == canonical_form(P.le[perm][:, perm])


def test_bounded_posets_are_bounded():
    for Q in bounded_posets_up_to_iso(5):
        assert Q.least is not None and Q.greatest is not None


def test_random_upset_algebras_respect_size():
    algs = random_upset_algebras(40, max_size=12, seed=1)
    assert len(algs) == 40 and all(2 <= H.size <= 12 for H in algs)
    again = random_upset_algebras(40, max_size=12, seed=1)
    assert [H.size for H in algs] == [H.size for H in again]
