"""Filters, prime filters and the prime-filter representation.

The representation maps a finite implicative lattice ``H`` into the open-set
algebra of its prime filters ordered by inclusion, ``a ↦ {F prime : a ∈ F}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

from .errors import ArgumentError, ConsistencyError, FIPError
from .lattice import HeytingAlgebra
from .order import Poset, Upset, open_algebra

__all__ = [
    "Filter",
    "as_filter",
    "filter_violations",
    "is_filter",
    "is_prime_filter",
    "principal_filter",
    "generated_filter",
    "all_filters",
    "prime_filters",
    "separating_prime",
    "Representation",
    "prime_representation",
]


def filter_violations(H: HeytingAlgebra, S: Iterable[int]) -> list[str]:
    """Names of the filter axioms that ``S`` fails (empty list for a filter)."""
    S = set(S)
    out = []
    if not S:
        out.append("nonempty")
    if len(S) == H.size:
        out.append("proper")
    if any(b not in S for a in S for b in range(H.size) if H.le[a, b]):
        out.append("upward closed")
    if any(int(H.meet[a, b]) not in S for a in S for b in S):
        out.append("meet closed")
    return out


def is_filter(H: HeytingAlgebra, S: Iterable[int]) -> bool:
    return not filter_violations(H, S)


def _prime_violation(H: HeytingAlgebra, S: set[int]):
    for a in range(H.size):
        for b in range(a, H.size):
            if int(H.join[a, b]) in S and a not in S and b not in S:
                return a, b
    return None


def is_prime_filter(H: HeytingAlgebra, S: Iterable[int]) -> bool:
    S = set(S)
    return is_filter(H, S) and _prime_violation(H, S) is None


@dataclass(frozen=True)
class Filter:
    """A filter on a specific algebra instance."""

    algebra: HeytingAlgebra
    members: frozenset

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(int(x) for x in self.members))
        bad = filter_violations(self.algebra, self.members)
        if bad:
            raise ArgumentError(f"not a filter (fails: {', '.join(bad)})")

    def __contains__(self, a):
        return a in self.members

    def __le__(self, other: "Filter") -> bool:
        return self.members <= other.members

    @property
    def is_prime(self) -> bool:
        return _prime_violation(self.algebra, set(self.members)) is None

    def labels(self) -> list[str]:
        return [self.algebra.labels[a] for a in sorted(self.members)]

    def __repr__(self):
        return "Filter{" + ",".join(self.labels()) + "}"


def as_filter(H: HeytingAlgebra, F) -> Filter:
    if isinstance(F, Filter):
        if F.algebra is not H:
            raise ArgumentError("filter belongs to a different algebra instance")
        return F
    return Filter(H, frozenset(F))


def principal_filter(H: HeytingAlgebra, e: int) -> Filter:
    """``H_e = {a : e <= a}`` for ``e != 0``."""
    if e == H.bot:
        raise ArgumentError("the principal filter of the bottom is improper")
    return Filter(H, frozenset(a for a in range(H.size) if H.le[e, a]))


def generated_filter(H: HeytingAlgebra, A: Iterable[int]) -> Filter:
    """``H_A``: everything above some finite meet of members of ``A``."""
    A = sorted(set(int(a) for a in A))
    if not A:
        raise ArgumentError("generated_filter needs a nonempty generator set")
    m = H.top
    for a in A:
        m = int(H.meet[m, a])
    if m == H.bot:
        # shrink to a minimal witness with bottom meet
        witness = list(A)
        for a in A:
            rest = [x for x in witness if x != a]
            mm = H.top
            for x in rest:
                mm = int(H.meet[mm, x])
            if rest and mm == H.bot:
                witness = rest
        raise FIPError(
            "generators lack the finite intersection property: "
            + " ∧ ".join(H.labels[x] for x in witness) + " = 0",
            witness,
        )
    return Filter(H, frozenset(a for a in range(H.size) if H.le[m, a]))


def all_filters(H: HeytingAlgebra) -> list[Filter]:
    """Every filter, found by scanning all subsets (independent of principality)."""
    n = H.size
    out = []
    for mask in range(1, 1 << n):
        S = {i for i in range(n) if mask >> i & 1}
        if is_filter(H, S):
            out.append(Filter(H, frozenset(S)))
    return out


def prime_filters(H: HeytingAlgebra) -> list[Filter]:
    """All prime filters, sorted by (size, members)."""
    found = []
    seen = set()
    for e in range(H.size):
        if e == H.bot:
            continue
        F = principal_filter(H, e)
        if F.is_prime and F.members not in seen:
            seen.add(F.members)
            found.append(F)
    found.sort(key=lambda F: (len(F.members), sorted(F.members)))
    return found


def separating_prime(H: HeytingAlgebra, F, a: int, b: int) -> Filter:
    """A prime ``G ⊇ F`` with ``a ∈ G`` and ``b ∉ G``.

    Greedy maximal extension: starting from ``H_{F ∪ {a}}`` every element is
    tried once in index order and kept when the extension still omits ``b``.
    Membership of ``b`` and FIP failure are both monotone, so one pass yields a
    maximal member of the class of such filters, which is prime.
    """
    F = as_filter(H, F)
    for e in F.members:
        if H.le[H.meet[e, a], b]:
            raise ArgumentError(
                f"precondition fails: {H.labels[e]} ∧ {H.labels[a]} <= {H.labels[b]}"
            )
    G = generated_filter(H, F.members | {a})
    for x in range(H.size):
        if x in G.members:
            continue
        try:
            cand = generated_filter(H, G.members | {x})
        except FIPError:
            continue
        if b not in cand.members:
            G = cand
    if b in G.members or a not in G.members or not F.members <= G.members:
        raise ConsistencyError("separating filter lost its defining properties")
    if not G.is_prime:
        raise ConsistencyError(f"maximal extension {G} is not prime")
    return G


@dataclass(frozen=True)
class Representation:
    """Prime filters, their inclusion poset, and ``eta[a]`` as an index into ``target``."""

    primes: tuple
    poset: Poset
    target: HeytingAlgebra
    eta: tuple
    report: object

    def to_json(self) -> str:
        H = self.primes[0].algebra if self.primes else None
        return json.dumps({
            "primes": [sorted(F.members) for F in self.primes],
            "order": [[int(i), int(j)] for i in range(self.poset.size)
                      for j in range(self.poset.size) if self.poset.le[i, j]],
            "eta": {str(a): sorted(Upset(self.poset, self.target.elements[t]).members)
                    for a, t in enumerate(self.eta)},
            "eta_index": list(self.eta),
            "source_size": H.size if H is not None else 0,
            "ok": bool(self.report.ok),
        })


def prime_representation(H: HeytingAlgebra) -> Representation:
    """Embed ``H`` into ``O(primes, ⊆)`` via ``η(a) = {F : a ∈ F}`` and verify it."""
    from .morphisms import LatticeMap, verify_hom

    primes = prime_filters(H)
    k = len(primes)
    labels = ["{" + ",".join(F.labels()) + "}" for F in primes]
    P = Poset.from_pairs(
        k,
        [(i, j) for i in range(k) for j in range(k) if primes[i].members <= primes[j].members],
        labels=labels, name="primes", close=False,
    ) if k else None
    if P is None:
        raise ConsistencyError("a finite implicative lattice with 0 != 1 has a prime filter")
    O = open_algebra(P)
    eta = []
    for a in range(H.size):
        mask = sum(1 << i for i, F in enumerate(primes) if a in F.members)
        eta.append(O.index_of(mask))
    m = LatticeMap(H, O, tuple(eta))
    report = verify_hom(m, "embedding")
    if not report.ok:
        raise ConsistencyError(f"prime representation failed verification: {report.violations[:3]}")
    return Representation(tuple(primes), P, O, tuple(eta), report)
