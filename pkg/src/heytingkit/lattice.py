"""Finite bounded lattices and their implicative structure.

Elements of every finite structure are the indices ``0..size-1``. The order and
the operations are stored as read-only numpy tables so that whole-algebra scans
(residuation, distributivity, validity of formulas) can be vectorized.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable, Sequence

import numpy as np

from .errors import ArgumentError, StructureError

__all__ = [
    "FiniteLattice",
    "HeytingAlgebra",
    "Irreducibility",
    "QuotientResult",
    "lattice_from_order",
    "is_distributive",
    "implication_table",
    "residuation_violations",
    "dual_residuation_violations",
    "implication_law_violations",
    "dual_implication_law_violations",
    "interval",
    "dual_algebra",
    "irreducibility_flags",
    "quotient_by_filter",
    "chain_algebra",
    "lattice_to_json",
    "lattice_from_json",
    "lattice_dot",
]


# cubic table checks are skipped above this size
FULL_CHECK_LIMIT = 256


def _frozen(a, dtype) -> np.ndarray:
    arr = np.array(a, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class FiniteLattice:
    """A bounded lattice given by its order and its two operation tables."""

    le: np.ndarray
    meet: np.ndarray
    join: np.ndarray
    bot: int
    top: int
    labels: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "le", _frozen(self.le, bool))
        object.__setattr__(self, "meet", _frozen(self.meet, np.intp))
        object.__setattr__(self, "join", _frozen(self.join, np.intp))
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(self.size)))
        self._check()

    @property
    def size(self) -> int:
        return self.le.shape[0]

    def _check(self):
        n = self.size
        le, meet, join = self.le, self.meet, self.join
        if n < 1 or le.shape != (n, n) or meet.shape != (n, n) or join.shape != (n, n):
            raise StructureError("lattice tables have inconsistent shapes")
        if not (le[self.bot, :].all() and le[:, self.top].all()):
            raise StructureError("bot/top are not the least/greatest elements")
        # meet(a,b) is a lower bound and every lower bound is below it
        idx = np.arange(n)
        lower = le[meet, idx[None, :]] & le[meet, idx[:, None]]
        upper = le[idx[None, :], join] & le[idx[:, None], join]
        if not (lower.all() and upper.all()):
            raise StructureError("meet/join tables are not bounds")
        if n > FULL_CHECK_LIMIT:
            return
        common_lower = le[:, :, None] & le[:, None, :]  # [x, a, b]: x <= a and x <= b
        if (common_lower & ~le[:, meet]).any():
            raise StructureError("meet table is not the greatest lower bound")
        common_upper = le[:, None, :] & le[None, :, :]  # [a, b, x]: a <= x and b <= x
        if (common_upper & ~le[join, :]).any():
            raise StructureError("join table is not the least upper bound")

    def leq(self, a: int, b: int) -> bool:
        return bool(self.le[a, b])

    def same_tables(self, other: "FiniteLattice") -> bool:
        return (
            self.size == other.size
            and self.bot == other.bot
            and self.top == other.top
            and np.array_equal(self.le, other.le)
            and np.array_equal(self.meet, other.meet)
            and np.array_equal(self.join, other.join)
        )


@dataclass(frozen=True, eq=False)
class HeytingAlgebra:
    """A finite implicative lattice, optionally with a dual implication.

    ``elements`` carries the concrete value behind each index where one exists
    (an upset bitmask for open-set algebras, a parent index chain for
    intervals); it is informational and never consulted by the operations.
    """

    lattice: FiniteLattice
    imp: np.ndarray
    dual_imp: np.ndarray | None = None
    name: str = ""
    elements: tuple = ()
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "imp", _frozen(self.imp, np.intp))
        if self.dual_imp is not None:
            object.__setattr__(self, "dual_imp", _frozen(self.dual_imp, np.intp))
        n = self.size
        if self.imp.shape != (n, n):
            raise StructureError("implication table has the wrong shape")
        if not self.elements:
            object.__setattr__(self, "elements", tuple(range(n)))

    # convenience forwarding
    @property
    def size(self) -> int:
        return self.lattice.size

    @property
    def le(self) -> np.ndarray:
        return self.lattice.le

    @property
    def meet(self) -> np.ndarray:
        return self.lattice.meet

    @property
    def join(self) -> np.ndarray:
        return self.lattice.join

    @property
    def bot(self) -> int:
        return self.lattice.bot

    @property
    def top(self) -> int:
        return self.lattice.top

    @property
    def labels(self) -> tuple:
        return self.lattice.labels

    def neg(self, a: int) -> int:
        return int(self.imp[a, self.bot])

    def index_of(self, element: Hashable) -> int:
        try:
            return self._element_index[element]
        except AttributeError:
            object.__setattr__(self, "_element_index", {e: i for i, e in enumerate(self.elements)})
            return self._element_index[element]

    def same_tables(self, other: "HeytingAlgebra") -> bool:
        if not self.lattice.same_tables(other.lattice):
            return False
        if not np.array_equal(self.imp, other.imp):
            return False
        if (self.dual_imp is None) != (other.dual_imp is None):
            return False
        return self.dual_imp is None or np.array_equal(self.dual_imp, other.dual_imp)

    def __repr__(self):
        name = self.name or "HeytingAlgebra"
        return f"<{name} size={self.size}>"


@dataclass(frozen=True)
class Irreducibility:
    zero_irreducible: bool
    one_irreducible: bool


def lattice_from_order(le, labels: Sequence[str] = ()) -> FiniteLattice:
    """Derive meet/join tables from an order; fails unless it is a bounded lattice."""
    le = np.array(le, dtype=bool)
    n = le.shape[0]
    if le.shape != (n, n) or n < 1:
        raise StructureError("order table must be square and nonempty")
    if not le.diagonal().all():
        raise StructureError("order is not reflexive")
    if (le & le.T & ~np.eye(n, dtype=bool)).any():
        raise StructureError("order is not antisymmetric")
    if ((le.astype(np.int64) @ le.astype(np.int64) > 0) & ~le).any():
        raise StructureError("order is not transitive")
    meet = np.zeros((n, n), dtype=np.intp)
    join = np.zeros((n, n), dtype=np.intp)
    for a in range(n):
        for b in range(a, n):
            lower = np.flatnonzero(le[:, a] & le[:, b])
            glb = [x for x in lower if le[lower, x].all()]
            upper = np.flatnonzero(le[a, :] & le[b, :])
            lub = [x for x in upper if le[x, upper].all()]
            if not glb or not lub:
                raise StructureError(f"elements {a} and {b} lack a meet or a join")
            meet[a, b] = meet[b, a] = glb[0]
            join[a, b] = join[b, a] = lub[0]
    bots = [x for x in range(n) if le[x, :].all()]
    tops = [x for x in range(n) if le[:, x].all()]
    if not bots or not tops:
        raise StructureError("order is not bounded")
    return FiniteLattice(le, meet, join, bots[0], tops[0], tuple(labels))


def is_distributive(L: FiniteLattice | HeytingAlgebra) -> bool:
    meet, join = L.meet, L.join
    # a ∧ (b ∨ c) == (a ∧ b) ∨ (a ∧ c) for all a, b, c
    n = L.size
    a = np.arange(n)[:, None, None]
    b = np.arange(n)[None, :, None]
    c = np.arange(n)[None, None, :]
    lhs = meet[a, join[b, c]]
    rhs = join[meet[a, b], meet[a, c]]
    return bool((lhs == rhs).all())


def _relative_pseudocomplements(L: FiniteLattice):
    """Return (imp table, offending pair or None)."""
    n = L.size
    le, meet = L.le, L.meet
    imp = np.zeros((n, n), dtype=np.intp)
    for a in range(n):
        # cand[b, c]: a ∧ c <= b
        cand = le[meet[a, :], :].T
        for b in range(n):
            cs = np.flatnonzero(cand[b])
            best = [m for m in cs if le[cs, m].all()]
            if not best:
                return None, (a, b)
            imp[a, b] = best[0]
    return imp, None


def _dual_pseudocomplements(L: FiniteLattice):
    n = L.size
    le, join = L.le, L.join
    dimp = np.zeros((n, n), dtype=np.intp)
    for a in range(n):
        # cand[b, c]: b <= a ∨ c
        cand = le[:, join[a, :]]
        for b in range(n):
            cs = np.flatnonzero(cand[b])
            least = [m for m in cs if le[m, cs].all()]
            if not least:
                return None
            dimp[a, b] = least[0]
    return dimp


def implication_table(L: FiniteLattice, name: str = "", elements: tuple = ()) -> HeytingAlgebra:
    """Compute ``a ⇒ b = max{c : a ∧ c <= b}`` (and the dual where it exists)."""
    imp, bad = _relative_pseudocomplements(L)
    if bad is not None:
        a, b = bad
        raise StructureError(
            f"lattice is not implicative: no greatest c with {L.labels[a]} ∧ c <= {L.labels[b]}"
        )
    if not is_distributive(L):
        raise StructureError("lattice has residuals but is not distributive (table bug)")
    dimp = _dual_pseudocomplements(L)
    return HeytingAlgebra(L, imp, dimp, name=name, elements=elements)


def residuation_violations(H: HeytingAlgebra, limit: int = 10) -> list[tuple[int, int, int]]:
    """Triples (a, b, c) where ``c <= a⇒b`` and ``a ∧ c <= b`` disagree."""
    n = H.size
    le, meet, imp = H.le, H.meet, H.imp
    out = []
    c = np.arange(n)
    for a in range(n):
        lhs = le[c[None, :], imp[a, :][:, None]]  # [b, c]
        rhs = le[meet[a, :][None, :], np.arange(n)[:, None]]  # [b, c]
        bad = np.argwhere(lhs != rhs)
        for b, cc in bad[: limit - len(out)]:
            out.append((a, int(b), int(cc)))
        if len(out) >= limit:
            break
    return out


def dual_residuation_violations(H: HeytingAlgebra, limit: int = 10) -> list[tuple[int, int, int]]:
    """Triples (a, b, c) where ``a⇒∂b <= c`` and ``b <= a ∨ c`` disagree."""
    if H.dual_imp is None:
        raise StructureError("algebra has no dual implication")
    n = H.size
    le, join, dimp = H.le, H.join, H.dual_imp
    out = []
    idx = np.arange(n)
    for a in range(n):
        lhs = le[dimp[a, :][:, None], idx[None, :]]  # [b, c]
        rhs = le[idx[:, None], join[a, :][None, :]]  # [b, c]
        bad = np.argwhere(lhs != rhs)
        for b, cc in bad[: limit - len(out)]:
            out.append((a, int(b), int(cc)))
        if len(out) >= limit:
            break
    return out


def _law_scan(H: HeytingAlgebra, imp: np.ndarray, laws, limit: int) -> list[tuple[str, tuple]]:
    n = H.size
    x, y, z = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    out = []
    for name, holds in laws:
        bad = np.argwhere(~holds(x, y, z, imp, H.meet, H.join, H.le))
        out.extend((name, tuple(int(v) for v in w)) for w in bad[:limit])
    return out


_LAWS = (
    # a ⇒ (c ∧ d) = (a ⇒ c) ∧ (a ⇒ d)
    ("(1)", lambda a, c, d, I, M, J, le: I[a, M[c, d]] == M[I[a, c], I[a, d]]),
    # a ⇒ (c ∨ d) >= (a ⇒ c) ∨ (a ⇒ d)
    ("(2)", lambda a, c, d, I, M, J, le: le[J[I[a, c], I[a, d]], I[a, J[c, d]]]),
    # (a ∨ b) ⇒ c = (a ⇒ c) ∧ (b ⇒ c)
    ("(3)", lambda a, b, c, I, M, J, le: I[J[a, b], c] == M[I[a, c], I[b, c]]),
    # (a ∧ b) ⇒ c >= (a ⇒ c) ∨ (b ⇒ c)
    ("(4)", lambda a, b, c, I, M, J, le: le[J[I[a, c], I[b, c]], I[M[a, b], c]]),
)

_DUAL_LAWS = (
    # a ⇒∂ (c ∧ d) <= (a ⇒∂ c) ∧ (a ⇒∂ d)
    ("(1)∂", lambda a, c, d, I, M, J, le: le[I[a, M[c, d]], M[I[a, c], I[a, d]]]),
    # a ⇒∂ (c ∨ d) = (a ⇒∂ c) ∨ (a ⇒∂ d)
    ("(2)∂", lambda a, c, d, I, M, J, le: I[a, J[c, d]] == J[I[a, c], I[a, d]]),
    # (a ∨ b) ⇒∂ c <= (a ⇒∂ c) ∧ (b ⇒∂ c)
    ("(3)∂", lambda a, b, c, I, M, J, le: le[I[J[a, b], c], M[I[a, c], I[b, c]]]),
    # (a ∧ b) ⇒∂ c = (a ⇒∂ c) ∨ (b ⇒∂ c)
    ("(4)∂", lambda a, b, c, I, M, J, le: I[M[a, b], c] == J[I[a, c], I[b, c]]),
)


def implication_law_violations(H: HeytingAlgebra, limit: int = 10) -> list[tuple[str, tuple]]:
    """Failures of the four distribution laws of ``⇒`` over all element triples."""
    return _law_scan(H, H.imp, _LAWS, limit)


def dual_implication_law_violations(H: HeytingAlgebra, limit: int = 10) -> list[tuple[str, tuple]]:
    """The order-dual laws for ``⇒∂``; raises when ``H`` has no dual implication."""
    if H.dual_imp is None:
        raise StructureError("no dual implication table")
    return _law_scan(H, H.dual_imp, _DUAL_LAWS, limit)


def _validate(H: HeytingAlgebra) -> HeytingAlgebra:
    if H.size > FULL_CHECK_LIMIT:
        return H
    bad = residuation_violations(H, limit=1)
    if bad:
        raise StructureError(f"residuation fails at (a, b, c) = {bad[0]}")
    if H.dual_imp is not None:
        bad = dual_residuation_violations(H, limit=1)
        if bad:
            raise StructureError(f"dual residuation fails at (a, b, c) = {bad[0]}")
    return H


def interval(H: HeytingAlgebra, c: int, d: int) -> HeytingAlgebra:
    """The segment ``{x : c <= x <= d}`` with relative implication ``(a⇒b) ∧ d``."""
    if not H.le[c, d]:
        raise ArgumentError(f"interval bounds out of order: {H.labels[c]} is not <= {H.labels[d]}")
    keep = [x for x in range(H.size) if H.le[c, x] and H.le[x, d]]
    pos = {x: i for i, x in enumerate(keep)}
    sel = np.array(keep)
    le = H.le[np.ix_(sel, sel)]
    meet = np.vectorize(pos.__getitem__, otypes=[np.intp])(H.meet[np.ix_(sel, sel)])
    join = np.vectorize(pos.__getitem__, otypes=[np.intp])(H.join[np.ix_(sel, sel)])
    rel = H.meet[H.imp[np.ix_(sel, sel)], d]
    imp = np.vectorize(pos.__getitem__, otypes=[np.intp])(rel)
    dimp = None
    if H.dual_imp is not None:
        drel = H.join[H.dual_imp[np.ix_(sel, sel)], c]
        dimp = np.vectorize(pos.__getitem__, otypes=[np.intp])(drel)
    L = FiniteLattice(le, meet, join, pos[c], pos[d], tuple(H.labels[x] for x in keep))
    name = f"{H.name or 'H'}[{H.labels[c]},{H.labels[d]}]"
    out = HeytingAlgebra(
        L, imp, dimp, name=name,
        elements=tuple(H.elements[x] for x in keep),
        meta={"parent_index": tuple(keep)},
    )
    return _validate(out)


def dual_algebra(H: HeytingAlgebra) -> HeytingAlgebra:
    """Order-dual: order reversed, meet/join and bot/top swapped, ``imp := dual_imp``."""
    if H.dual_imp is None:
        raise StructureError("dual_algebra needs a dual implication table")
    L = H.lattice
    Ld = FiniteLattice(L.le.T, L.join, L.meet, L.top, L.bot, L.labels)
    name = H.name[:-1] if H.name.endswith("∂") else (H.name or "H") + "∂"
    return HeytingAlgebra(Ld, H.dual_imp, H.imp, name=name, elements=H.elements)


def irreducibility_flags(H: HeytingAlgebra) -> Irreducibility:
    n = H.size
    below_top = [x for x in range(n) if x != H.top]
    above_bot = [x for x in range(n) if x != H.bot]
    one = not any(H.join[a, b] == H.top for a in below_top for b in below_top)
    zero = not any(H.meet[a, b] == H.bot for a in above_bot for b in above_bot)
    return Irreducibility(zero_irreducible=zero, one_irreducible=one)


@dataclass(frozen=True)
class QuotientResult:
    """``lattice`` is L/F; ``classes[i]`` lists the members of class i.

    ``projection[a]`` is the class of ``a``. ``segment`` is ``L[0, e]`` for the
    generator ``e`` of the (principal) filter and ``iso[i]`` is the element of
    ``segment`` matched with class ``i``.
    """

    lattice: FiniteLattice
    classes: tuple
    projection: tuple
    generator: int
    segment: HeytingAlgebra
    iso: tuple


def quotient_by_filter(H: HeytingAlgebra, F: Any) -> QuotientResult:
    from .filters import as_filter

    F = as_filter(H, F)
    members = sorted(F.members)
    n = H.size
    fm = np.array(members)
    # below_F[a, b]: some e in F with a ∧ e <= b
    below_F = np.zeros((n, n), dtype=bool)
    for a in range(n):
        below_F[a] = H.le[H.meet[a, fm]].any(axis=0)
    equiv = below_F & below_F.T
    reps: list[int] = []
    projection = [0] * n
    for a in range(n):
        for i, r in enumerate(reps):
            if equiv[a, r]:
                projection[a] = i
                break
        else:
            projection[a] = len(reps)
            reps.append(a)
    k = len(reps)
    le = np.array([[below_F[reps[i], reps[j]] for j in range(k)] for i in range(k)])
    meet = np.array([[projection[H.meet[reps[i], reps[j]]] for j in range(k)] for i in range(k)])
    join = np.array([[projection[H.join[reps[i], reps[j]]] for j in range(k)] for i in range(k)])
    classes = tuple(tuple(a for a in range(n) if projection[a] == i) for i in range(k))
    labels = tuple("[" + ",".join(H.labels[a] for a in cls) + "]" for cls in classes)
    Q = FiniteLattice(le, meet, join, projection[H.bot], projection[H.top], labels)
    # finite filters are principal: F = H_e with e the meet of its members
    e = members[0]
    for x in members[1:]:
        e = int(H.meet[e, x])
    seg = interval(H, H.bot, e)
    seg_pos = {x: i for i, x in enumerate(seg.meta["parent_index"])}
    iso = tuple(seg_pos[int(H.meet[reps[i], e])] for i in range(k))
    return QuotientResult(Q, classes, tuple(projection), e, seg, iso)


def chain_algebra(k: int) -> HeytingAlgebra:
    """The k-element chain ``0 < 1 < ... < k-1``."""
    if k < 1:
        raise ArgumentError("a chain needs at least one element")
    idx = np.arange(k)
    le = idx[:, None] <= idx[None, :]
    meet = np.minimum(idx[:, None], idx[None, :])
    join = np.maximum(idx[:, None], idx[None, :])
    imp = np.where(idx[:, None] <= idx[None, :], k - 1, idx[None, :])
    # dual: a ⇒∂ b = least c with b <= max(a, c)
    dimp = np.where(idx[None, :] <= idx[:, None], 0, idx[None, :])
    labels = tuple(str(i) for i in range(k))
    if k == 3:
        labels = ("0", "m", "1")
    L = FiniteLattice(le, meet, join, 0, k - 1, labels)
    return _validate(HeytingAlgebra(L, imp, dimp, name=f"chain{k}"))


def lattice_to_json(L: FiniteLattice | HeytingAlgebra) -> str:
    pairs = [[int(i), int(j)] for i, j in np.argwhere(L.le)]
    return json.dumps({"size": int(L.size), "le": pairs})


def lattice_from_json(text: str, name: str = "") -> HeytingAlgebra:
    """Load ``{"size": n, "le": [[i, j], ...]}`` and derive all operations."""
    data = json.loads(text)
    try:
        n = int(data["size"])
        le = np.zeros((n, n), dtype=bool)
        for i, j in data["le"]:
            le[int(i), int(j)] = True
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ArgumentError(f"malformed lattice JSON: {exc}") from exc
    return implication_table(lattice_from_order(le), name=name)


def lattice_dot(L: FiniteLattice | HeytingAlgebra, name: str = "L") -> str:
    le = L.le
    n = L.size
    lines = [f"digraph {json.dumps(name)} {{", "  rankdir=BT;"]
    for i in range(n):
        lines.append(f"  n{i} [label={json.dumps(str(L.labels[i]))}];")
    for i in range(n):
        for j in range(n):
            if i != j and le[i, j]:
                between = any(le[i, k] and le[k, j] for k in range(n) if k not in (i, j))
                if not between:
                    lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
