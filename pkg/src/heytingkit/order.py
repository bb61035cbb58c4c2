"""Finite posets, their upsets and the open-set Heyting algebras O(P).

Subsets of a poset are handled as Python ``int`` bitmasks over element indices
(bit ``i`` set means element ``i`` is a member). The canonical order of O(P)
is ascending bitmask value.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import ArgumentError, SizeLimitError, StructureError
from .lattice import FiniteLattice, HeytingAlgebra, _validate

__all__ = [
    "Poset",
    "Upset",
    "PowerPoset",
    "MAX_UPSETS",
    "MAX_ALGEBRA",
    "MAX_POWER",
    "power_poset",
    "power_subsets",
    "subset_label",
    "upset_masks",
    "enumerate_upsets",
    "open_algebra",
    "upset_imp",
    "chain_poset",
    "antichain_poset",
    "fork_poset",
    "poset_to_json",
    "poset_from_json",
    "hasse_dot",
]

MAX_UPSETS = 1 << 24
MAX_POWER = 20
# open_algebra materializes |O(P)|^2 tables
MAX_ALGEBRA = 4096


def _bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


class Poset:
    """An immutable finite partial order on ``range(size)``.

    ``le[i, j]`` is true iff ``i <= j``. The axioms are checked on construction.
    """

    def __init__(self, le, labels: Sequence[str] | None = None, name: str = "",
                 check: bool = True):
        le = np.array(le, dtype=bool)
        n = le.shape[0] if le.ndim == 2 else 0
        if n < 1 or le.shape != (n, n):
            raise StructureError("a poset needs a nonempty square order table")
        if not le.diagonal().all():
            raise StructureError("order is not reflexive")
        if (le & le.T & ~np.eye(n, dtype=bool)).any():
            raise StructureError("order is not antisymmetric")
        if check:
            li = le.astype(np.int64)
            if ((li @ li > 0) & ~le).any():
                raise StructureError("order is not transitive")
        le.setflags(write=False)
        self.power: tuple[int, bool] | None = None
        self.le = le
        self.size = n
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        if len(self.labels) != n:
            raise StructureError("one label per element is required")
        self.name = name

    @classmethod
    def from_pairs(cls, size: int, pairs: Iterable[tuple[int, int]], labels=None,
                   name: str = "", close: bool = True) -> "Poset":
        """Build from generating pairs ``(i, j)`` meaning ``i <= j``.

        With ``close`` the reflexive-transitive closure is taken; otherwise the
        pairs must already list the full order.
        """
        le = np.zeros((size, size), dtype=bool)
        for i, j in pairs:
            le[i, j] = True
        if close:
            le |= np.eye(size, dtype=bool)
            for k in range(size):
                le |= le[:, k:k + 1] & le[k:k + 1, :]
        return cls(le, labels, name)

    def __eq__(self, other):
        return isinstance(other, Poset) and np.array_equal(self.le, other.le)

    def __hash__(self):
        return hash(self.le.tobytes())

    def __repr__(self):
        return f"Poset({self.name or self.size})"

    def leq(self, i: int, j: int) -> bool:
        return bool(self.le[i, j])

    @cached_property
    def full(self) -> int:
        return (1 << self.size) - 1

    @cached_property
    def up(self) -> tuple[int, ...]:
        """``up[i]`` is the bitmask of ``{j : i <= j}``."""
        return tuple(sum(1 << int(j) for j in np.flatnonzero(self.le[i])) for i in range(self.size))

    @cached_property
    def down(self) -> tuple[int, ...]:
        return tuple(sum(1 << int(j) for j in np.flatnonzero(self.le[:, i])) for i in range(self.size))

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """Pairs ``(i, j)`` with ``i < j`` and nothing strictly between."""
        out = []
        for i in range(self.size):
            for j in range(self.size):
                if i != j and self.le[i, j]:
                    strict = (self.up[i] & self.down[j]) & ~((1 << i) | (1 << j))
                    if not strict:
                        out.append((i, j))
        return tuple(out)

    @cached_property
    def least(self) -> int | None:
        for i in range(self.size):
            if self.up[i] == self.full:
                return i
        return None

    @cached_property
    def greatest(self) -> int | None:
        for i in range(self.size):
            if self.down[i] == self.full:
                return i
        return None

    @property
    def bounded_below(self) -> bool:
        return self.least is not None

    @property
    def bounded_above(self) -> bool:
        return self.greatest is not None

    def is_upset(self, mask: int) -> bool:
        return all(self.up[i] & ~mask == 0 for i in _bits(mask))

    def upward_closure(self, elements: Iterable[int]) -> int:
        mask = 0
        for i in elements:
            mask |= self.up[i]
        return mask

    def induced(self, elements: Sequence[int], name: str = "") -> "Poset":
        """Subposet on ``elements`` (new index ``k`` is ``elements[k]``)."""
        sel = np.array(list(elements))
        return Poset(self.le[np.ix_(sel, sel)], [self.labels[i] for i in elements], name)


@dataclass(frozen=True)
class Upset:
    """An upward closed subset of ``poset`` stored as a bitmask."""

    poset: Poset
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask > self.poset.full or not self.poset.is_upset(self.mask):
            raise ArgumentError(f"mask {self.mask:#b} is not an upset")

    @classmethod
    def from_members(cls, poset: Poset, members: Iterable[int]) -> "Upset":
        mask = 0
        for i in members:
            mask |= 1 << i
        return cls(poset, mask)

    @property
    def members(self) -> frozenset[int]:
        return frozenset(_bits(self.mask))

    def __contains__(self, i: int) -> bool:
        return bool(self.mask >> i & 1)

    def __len__(self):
        return bin(self.mask).count("1")

    def __repr__(self):
        return "Upset{" + ",".join(self.poset.labels[i] for i in _bits(self.mask)) + "}"


def subset_label(mask: int) -> str:
    return "{" + ",".join(str(i) for i in _bits(mask)) + "}"


def power_subsets(n: int, punctured: bool = False) -> list[int]:
    """Bitmasks of the subsets of ``{0..n-1}`` in poset index order."""
    return list(range(1 if punctured else 0, 1 << n))


class PowerPoset(Poset):
    """Subsets of ``{0..n-1}`` under reverse inclusion, built lazily.

    Element ``i`` is the subset with bitmask ``i`` (``i + 1`` when punctured).
    The dense order table is only materialized on demand.
    """

    DENSE_LIMIT = 1 << 12

    def __init__(self, n: int, punctured: bool = False):
        self.power = (n, punctured)
        self.offset = 1 if punctured else 0
        self.size = (1 << n) - self.offset
        self.name = f"P{n}-" if punctured else f"P{n}"
        self.labels = tuple(subset_label(s) for s in power_subsets(n, punctured)) \
            if self.size <= self.DENSE_LIMIT else _LazyLabels(self)

    def subset(self, i: int) -> int:
        return i + self.offset

    def index(self, subset: int) -> int:
        return subset - self.offset

    @cached_property
    def le(self) -> np.ndarray:
        if self.size > self.DENSE_LIMIT:
            raise SizeLimitError(f"{self!r} is too large for a dense order table")
        arr = np.array(power_subsets(*self.power), dtype=np.int64)
        le = (arr[:, None] & arr[None, :]) == arr[None, :]
        le.setflags(write=False)
        return le

    def leq(self, i: int, j: int) -> bool:
        a, b = self.subset(i), self.subset(j)
        return a & b == b

    def __eq__(self, other):
        if isinstance(other, PowerPoset):
            return self.power == other.power
        return Poset.__eq__(self, other)

    def __hash__(self):
        return hash(("power",) + self.power)

    def lower_covers(self, i: int) -> list[int]:
        """Elements immediately above ``i``: its subsets with one member removed."""
        s = self.subset(i)
        out = []
        for b in _bits(s):
            t = s & ~(1 << b)
            if t or not self.offset:
                out.append(self.index(t))
        return out

    @cached_property
    def least(self) -> int | None:
        return self.index((1 << self.power[0]) - 1)

    @cached_property
    def greatest(self) -> int | None:
        if self.offset:
            return 0 if self.power[0] == 1 else None
        return 0


class _LazyLabels:
    def __init__(self, P):
        self.P = P

    def __getitem__(self, i):
        return subset_label(self.P.subset(i))

    def __len__(self):
        return self.P.size


def power_poset(n: int, punctured: bool = False) -> PowerPoset:
    """Subsets of ``{0..n-1}`` ordered by reverse inclusion (``a <= b`` iff ``a ⊇ b``).

    Element ``i`` is the subset with bitmask ``i`` (``i + 1`` when punctured,
    which drops the empty set). Labels are the subsets in set notation.
    """
    if not 1 <= n <= MAX_POWER:
        raise SizeLimitError(f"power poset order {n} outside 1..{MAX_POWER}")
    return PowerPoset(n, punctured)


def chain_poset(k: int) -> Poset:
    idx = np.arange(k)
    return Poset(idx[:, None] <= idx[None, :], name=f"chain{k}")


def antichain_poset(k: int) -> Poset:
    return Poset(np.eye(k, dtype=bool), name=f"antichain{k}")


def fork_poset() -> Poset:
    """A root ``r`` below two incomparable points ``x`` and ``y``."""
    return Poset.from_pairs(3, [(0, 1), (0, 2)], labels=["r", "x", "y"], name="fork")


def upset_masks(P: Poset, limit: int = MAX_UPSETS) -> list[int]:
    """All upsets of ``P`` as ascending bitmasks."""
    n = P.size
    up, down = P.up, P.down
    out: list[int] = []
    # decide elements from the top down so that forced choices propagate
    order = sorted(range(n), key=lambda i: -bin(up[i]).count("1"))

    def rec(k: int, inside: int, outside: int):
        if len(out) > limit:
            raise SizeLimitError(f"{P!r} has more than {limit} upsets")
        while k < n and (inside | outside) >> order[k] & 1:
            k += 1
        if k == n:
            out.append(inside)
            return
        x = order[k]
        rec(k + 1, inside, outside | down[x])
        rec(k + 1, inside | up[x], outside)

    rec(0, 0, 0)
    if len(out) > limit:
        raise SizeLimitError(f"{P!r} has more than {limit} upsets")
    out.sort()
    return out


def enumerate_upsets(P: Poset, limit: int = MAX_UPSETS) -> list[Upset]:
    return [Upset(P, m) for m in upset_masks(P, limit)]


def upset_imp(P: Poset, a: int, b: int) -> int:
    """``A ⇒ B``: the largest upset ``C`` with ``A ∩ C ⊆ B``, i.e. ``{x : ↑x ∩ A ⊆ B}``."""
    bad = a & ~b
    out = 0
    for x, u in enumerate(P.up):
        if not u & bad:
            out |= 1 << x
    return out


def _bits_label(P: Poset, mask: int) -> str:
    return "{" + ",".join(P.labels[i] for i in _bits(mask)) + "}"


def open_algebra(P: Poset, limit: int = MAX_ALGEBRA, check: bool = True) -> HeytingAlgebra:
    """The Heyting algebra ``(O(P), ∅, P, ∩, ∪, ⊆)`` with ``A⇒B = ⋃{C : A∩C ⊆ B}``.

    ``elements[i]`` is the bitmask of the i-th upset. ``meta`` records the
    carrier and the irreducibility facts that follow from boundedness of P.
    """
    masks = upset_masks(P, limit=limit)
    N = len(masks)
    pos = {m: i for i, m in enumerate(masks)}
    if P.size <= 62:
        arr = np.array(masks, dtype=np.int64)
        meet = np.searchsorted(arr, arr[:, None] & arr[None, :])
        join = np.searchsorted(arr, arr[:, None] | arr[None, :])
        le = (arr[:, None] & ~arr[None, :]) == 0
        bad = arr[:, None] & ~arr[None, :]
        imp_mask = np.zeros((N, N), dtype=np.int64)
        for x, u in enumerate(P.up):
            imp_mask |= np.where((bad & u) == 0, np.int64(1) << x, np.int64(0))
        imp = np.searchsorted(arr, imp_mask)
    else:
        meet = np.array([[pos[a & b] for b in masks] for a in masks])
        join = np.array([[pos[a | b] for b in masks] for a in masks])
        le = np.array([[a & ~b == 0 for b in masks] for a in masks])
        imp = np.array([[pos[upset_imp(P, a, b)] for b in masks] for a in masks])
    labels = tuple(_bits_label(P, m) for m in masks)
    L = FiniteLattice(le, meet, join, pos[0], pos[P.full], labels)
    # O(P) is dual-implicative too: a ⇒∂ b is the upward closure of b \ a
    dimp = np.array([[pos[P.upward_closure(_bits(b & ~a))] for b in masks] for a in masks]) \
        if N <= 512 else None
    H = HeytingAlgebra(
        L, imp, dimp, name=f"O({P.name or P.size})", elements=tuple(masks),
        meta={
            "carrier": P,
            "one_irreducible": P.bounded_below,
            "zero_irreducible": P.bounded_above,
        },
    )
    return _validate(H) if check else H


def poset_to_json(P: Poset) -> str:
    pairs = [[int(i), int(j)] for i, j in np.argwhere(P.le)]
    return json.dumps({"size": P.size, "le": pairs})


def poset_from_json(text: str, name: str = "") -> Poset:
    """Load ``{"size": n, "le": [[i, j], ...]}`` listing the full reflexive order."""
    try:
        data = json.loads(text)
        n = int(data["size"])
        pairs = [(int(i), int(j)) for i, j in data["le"]]
        labels = data.get("labels")
    except (KeyError, TypeError, ValueError) as exc:
        raise ArgumentError(f"malformed poset JSON: {exc}") from exc
    if any(not (0 <= i < n and 0 <= j < n) for i, j in pairs):
        raise ArgumentError("poset JSON refers to elements outside 0..size-1")
    return Poset.from_pairs(n, pairs, labels=labels, name=name, close=False)


def hasse_dot(P: Poset, name: str = "P") -> str:
    """DOT source for the covering relation, nodes in index order."""
    lines = [f"digraph {json.dumps(name)} {{", "  rankdir=BT;"]
    for i in range(P.size):
        lines.append(f"  n{i} [label={json.dumps(P.labels[i])}];")
    for i, j in P.covers:
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
