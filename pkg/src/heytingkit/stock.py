"""Test stock: small posets and lattices up to isomorphism, random upset algebras."""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import permutations, product

import numpy as np

from .errors import SizeLimitError, StructureError
from .lattice import FiniteLattice, HeytingAlgebra, implication_table, lattice_from_order
from .order import Poset, open_algebra, upset_masks

__all__ = [
    "canonical_form",
    "posets_up_to_iso",
    "bounded_posets_up_to_iso",
    "lattices_up_to_iso",
    "implicative_stock",
    "random_poset",
    "random_upset_algebras",
]


def canonical_form(le: np.ndarray) -> bytes:
    """Lexicographically least order table over all relabellings.

    Only permutations that sort elements by (down-set size, up-set size) are
    tried, which keeps the search to within-class shuffles.
    """
    n = le.shape[0]
    down = le.sum(axis=0)
    up = le.sum(axis=1)
    sig = sorted(range(n), key=lambda i: (down[i], up[i]))
    classes: list[list[int]] = []
    for i in sig:
        if classes and (down[classes[-1][0]], up[classes[-1][0]]) == (down[i], up[i]):
            classes[-1].append(i)
        else:
            classes.append([i])
    best = None
    for parts in product(*(permutations(c) for c in classes)):
        order = [i for p in parts for i in p]
        key = le[np.ix_(order, order)].tobytes()
        if best is None or key < best:
            best = key
    return best


@lru_cache(maxsize=None)
def _posets(n: int) -> tuple:
    if n == 1:
        return (np.ones((1, 1), dtype=bool),)
    seen = {}
    for le in _posets(n - 1):
        P = Poset(le, check=False)
        # the new element sits above a down-closed set of the old ones
        for ups in upset_masks(P):
            below = P.full & ~ups
            new = np.zeros((n, n), dtype=bool)
            new[: n - 1, : n - 1] = le
            new[n - 1, n - 1] = True
            for i in range(n - 1):
                if below >> i & 1:
                    new[i, n - 1] = True
            key = canonical_form(new)
            if key not in seen:
                seen[key] = new
    return tuple(seen[k] for k in sorted(seen))


def posets_up_to_iso(n: int) -> list[Poset]:
    """One representative per isomorphism class of ``n``-element posets."""
    return [Poset(le, name=f"poset{n}.{i}") for i, le in enumerate(_posets(n))]


def _bounded(inner: np.ndarray | None, n: int) -> np.ndarray:
    le = np.zeros((n, n), dtype=bool)
    le[0, :] = True
    le[:, n - 1] = True
    if inner is not None:
        le[1 : n - 1, 1 : n - 1] = inner
    return le


def bounded_posets_up_to_iso(n: int) -> list[Poset]:
    """Posets with least and greatest elements, ``n`` elements, up to isomorphism."""
    if n == 1:
        return [Poset(np.ones((1, 1), dtype=bool), name="point")]
    inners = [None] if n == 2 else list(_posets(n - 2))
    return [Poset(_bounded(x, n), name=f"bounded{n}.{i}") for i, x in enumerate(inners)]


def lattices_up_to_iso(n: int) -> list[FiniteLattice]:
    out = []
    for P in bounded_posets_up_to_iso(n):
        try:
            out.append(lattice_from_order(P.le))
        except StructureError:
            continue
    return out


def implicative_stock(max_size: int, min_size: int = 1) -> list[HeytingAlgebra]:
    """Every implicative lattice with ``min_size..max_size`` elements, up to isomorphism."""
    out = []
    for n in range(min_size, max_size + 1):
        for i, L in enumerate(lattices_up_to_iso(n)):
            try:
                out.append(implication_table(L, name=f"L{n}.{i}"))
            except StructureError:
                continue
    return out


def random_poset(rng: random.Random, size: int, density: float = 0.3) -> Poset:
    """A random order: a random DAG on ``0..size-1`` (edges go upward) closed transitively."""
    pairs = [(i, j) for i in range(size) for j in range(i + 1, size) if rng.random() < density]
    return Poset.from_pairs(size, pairs, name=f"random{size}")


def random_upset_algebras(count: int, max_size: int = 12, seed: int = 0,
                          max_points: int = 6) -> list[HeytingAlgebra]:
    """``count`` open-set algebras of random posets, each with at most ``max_size`` elements."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        P = random_poset(rng, rng.randint(1, max_points), rng.choice((0.2, 0.4, 0.6)))
        try:
            upset_masks(P, limit=max_size)
        except SizeLimitError:
            continue
        out.append(open_algebra(P))
    return out
