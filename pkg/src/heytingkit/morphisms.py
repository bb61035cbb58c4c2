"""Lattice homomorphisms, cone-covers and valuation pullback.

A cone-cover ``f: P -> Q`` is a surjection such that for every ``a`` the image
of ``↑a`` is exactly ``↑f(a)``. Preimages of upsets under a cone-cover
commute with the Heyting operations, which is what transports validity from
``O(P)`` to ``O(Q)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ArgumentError, ConsistencyError, SizeLimitError
from .lattice import HeytingAlgebra, interval
from .order import Poset, PowerPoset, open_algebra, power_poset, poset_from_json, _bits

__all__ = [
    "LatticeMap",
    "HomReport",
    "verify_hom",
    "meet_surjection",
    "PosetMap",
    "ConeCoverCheck",
    "is_cone_cover",
    "cc_punctured",
    "cc_power",
    "MAX_CC_POWER",
    "preimage",
    "pullback_valuation",
    "pullback_model",
    "posetmap_to_json",
    "posetmap_from_json",
]

MAX_CC_PUNCTURED = 6
# cc_power materializes maps on 2^m subsets
MAX_CC_POWER = 12


@dataclass(frozen=True)
class LatticeMap:
    source: HeytingAlgebra
    target: HeytingAlgebra
    map: tuple

    def __post_init__(self):
        m = tuple(int(x) for x in self.map)
        if len(m) != self.source.size:
            raise ArgumentError("map must be total on the source")
        if any(not 0 <= x < self.target.size for x in m):
            raise ArgumentError("map has images outside the target")
        object.__setattr__(self, "map", m)

    def __call__(self, a: int) -> int:
        return self.map[a]


@dataclass
class HomReport:
    kind: str
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"kind": self.kind, "ok": self.ok,
                "violations": [{"law": v[0], "witness": list(v[1])} for v in self.violations]}


def verify_hom(m: LatticeMap, kind: str = "embedding", limit: int = 20) -> HomReport:
    """Check preservation of 0, 1, ∧, ∨, ⇒ and injectivity or surjectivity.

    Each violation is ``(law, witness)`` with the witness given as source
    element indices (target indices for a missed surjectivity value).
    """
    if kind not in ("embedding", "surjection", "homomorphism"):
        raise ArgumentError(f"unknown kind {kind!r}")
    S, T = m.source, m.target
    f = np.array(m.map)
    report = HomReport(kind)
    if f[S.bot] != T.bot:
        report.violations.append(("0", (S.bot,)))
    if f[S.top] != T.top:
        report.violations.append(("1", (S.top,)))
    for law, s_tab, t_tab in (("∧", S.meet, T.meet), ("∨", S.join, T.join), ("⇒", S.imp, T.imp)):
        bad = np.argwhere(f[s_tab] != t_tab[f[:, None], f[None, :]])
        for a, b in bad[:limit]:
            report.violations.append((law, (int(a), int(b))))
    if kind == "embedding":
        seen: dict[int, int] = {}
        for a, x in enumerate(m.map):
            if x in seen:
                report.violations.append(("injective", (seen[x], a)))
            else:
                seen[x] = a
    elif kind == "surjection":
        missed = sorted(set(range(T.size)) - set(m.map))
        for y in missed[:limit]:
            report.violations.append(("surjective", (y,)))
    return report


def meet_surjection(H: HeytingAlgebra, c: int, d: int, e: int) -> LatticeMap:
    """``x ↦ x ∧ e`` from ``H[c, d]`` onto ``H[c∧e, d∧e]``."""
    src = interval(H, c, d)
    tgt = interval(H, int(H.meet[c, e]), int(H.meet[d, e]))
    pos = {x: i for i, x in enumerate(tgt.meta["parent_index"])}
    return LatticeMap(src, tgt, tuple(pos[int(H.meet[x, e])] for x in src.meta["parent_index"]))


# -- poset maps and cone-covers ---------------------------------------------


@dataclass(frozen=True)
class PosetMap:
    source: Poset
    target: Poset
    map: tuple

    def __post_init__(self):
        m = tuple(int(x) for x in self.map)
        if len(m) != self.source.size:
            raise ArgumentError("map must be total on the source")
        if any(not 0 <= x < self.target.size for x in m):
            raise ArgumentError("map has images outside the target")
        object.__setattr__(self, "map", m)

    def __call__(self, a: int) -> int:
        return self.map[a]

    def table(self) -> list[str]:
        S, T = self.source, self.target
        return [f"{S.labels[a]} -> {T.labels[x]}" for a, x in enumerate(self.map)]


@dataclass(frozen=True)
class ConeCoverCheck:
    ok: bool
    witness: tuple | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok

    def to_dict(self) -> dict:
        return {"ok": self.ok, "witness": list(self.witness) if self.witness else None,
                "reason": self.reason}


def _upper_covers(P: Poset) -> list[list[int]]:
    if isinstance(P, PowerPoset):
        return [P.lower_covers(i) for i in range(P.size)]
    out: list[list[int]] = [[] for _ in range(P.size)]
    for i, j in P.covers:
        out[i].append(j)
    return out


def _topdown(P: Poset) -> list[int]:
    """Element order in which everything above ``x`` precedes ``x``."""
    if isinstance(P, PowerPoset):
        return list(range(P.size))
    return sorted(range(P.size), key=lambda i: bin(P.up[i]).count("1"))


def is_cone_cover(f: PosetMap) -> ConeCoverCheck:
    """Surjectivity plus ``f(↑a) = ↑f(a)`` for every ``a``.

    On failure the witness is ``(a, d)``: either ``d ≥ f(a)`` has no preimage
    in ``↑a`` or some ``b ≥ a`` is sent to ``d`` outside ``↑f(a)``. A missed
    value ``d`` with no preimage at all is reported as ``(None, d)``.
    """
    S, T = f.source, f.target
    hit = set(f.map)
    if len(hit) != T.size:
        d = min(set(range(T.size)) - hit)
        return ConeCoverCheck(False, (None, d), "not surjective")
    covers = _upper_covers(S)
    image = [0] * S.size
    tup = T.up
    for a in _topdown(S):
        img = 1 << f.map[a]
        for b in covers[a]:
            img |= image[b]
        image[a] = img
        want = tup[f.map[a]]
        if img != want:
            extra = img & ~want
            if extra:
                return ConeCoverCheck(False, (a, _bits(extra)[0]), "cone image leaves the target cone")
            return ConeCoverCheck(False, (a, _bits(want & ~img)[0]), "target cone not covered")
    return ConeCoverCheck(True)


def cc_punctured(n: int) -> PosetMap:
    """The cone-cover from the nonempty subsets of ``n+1`` onto the subsets of ``n``.

    A set loses its least member and every remaining member shifts down by one.
    """
    if not 1 <= n <= MAX_CC_PUNCTURED:
        raise SizeLimitError(f"cc_punctured needs 1 <= n <= {MAX_CC_PUNCTURED}")
    S = power_poset(n + 1, punctured=True)
    T = power_poset(n)
    table = []
    for i in range(S.size):
        X = S.subset(i)
        table.append(T.index((X & (X - 1)) >> 1))
    f = PosetMap(S, T, tuple(table))
    check = is_cone_cover(f)
    if not check:
        raise ConsistencyError(f"cc_punctured({n}) fails the cone-cover check at {check.witness}")
    return f


def _successors(Q: Poset, elems: Sequence[int], z: int) -> list[int]:
    above = [e for e in elems if e != z and Q.le[z, e]]
    return [e for e in above if not any(x != e and Q.le[x, e] for x in above)]


def _cc_size(Q: Poset, elems: tuple[int, ...]) -> int:
    if len(elems) == 1:
        return 1
    z = next(x for x in elems if all(Q.le[x, y] for y in elems))
    succ = _successors(Q, elems, z)
    if len(succ) == 1:
        return _cc_size(Q, tuple(x for x in elems if x != z)) + 1
    return sum(_cc_size(Q, _cone_with_bottom(Q, elems, z, e)) for e in succ)


def _cone_with_bottom(Q: Poset, elems, z: int, e: int) -> tuple[int, ...]:
    return tuple(x for x in elems if x == z or Q.le[e, x])


def _cc_table(Q: Poset, elems: tuple[int, ...]) -> tuple[int, list[int]]:
    """``(m, g)`` with ``g[A]`` the element of ``Q`` assigned to subset ``A`` of ``m``."""
    if len(elems) == 1:
        return 1, [elems[0], elems[0]]
    z = next(x for x in elems if all(Q.le[x, y] for y in elems))
    top = next(x for x in elems if all(Q.le[y, x] for y in elems))
    succ = _successors(Q, elems, z)
    if len(succ) == 1:
        e0 = succ[0]
        m, g = _cc_table(Q, tuple(x for x in elems if x != z))
        f = []
        for A in range(1 << (m + 1)):
            low = g[A & ((1 << m) - 1)]
            f.append(z if A >> m & 1 and low == e0 else low)
        return m + 1, f
    parts = [_cc_table(Q, _cone_with_bottom(Q, elems, z, e)) for e in succ]
    sizes = [mi for mi, _ in parts]
    m = sum(sizes)
    f = []
    for A in range(1 << m):
        values = []
        shift = 0
        for mi, gi in parts:
            values.append(gi[A >> shift & ((1 << mi) - 1)])
            shift += mi
        nonzero = [v for v in values if v != z]
        if len(nonzero) >= 2:
            f.append(top)
        else:
            f.append(nonzero[0] if nonzero else z)
    return m, f


def cc_power(Q: Poset, max_m: int = MAX_CC_POWER) -> tuple[int, PosetMap]:
    """A cone-cover from the power poset ``P_m`` onto a bounded poset ``Q``.

    Follows the induction on ``|Q|``: a single point is covered by ``P_1``.
    With one immediate successor ``e0`` of the bottom, a cover ``g`` of the
    rest extends to ``P_{m+1}`` by sending ``A`` to the bottom when the new
    coordinate is in ``A`` and ``g(A∩m) = e0``. With several successors
    ``e_i``, covers ``g_i`` of ``↑e_i ∪ {0}`` are run on disjoint bit blocks
    and the result is the top once two blocks leave the bottom.
    """
    if Q.least is None or Q.greatest is None:
        raise ArgumentError("cc_power needs a poset with least and greatest elements")
    if Q.size > 8:
        raise SizeLimitError("cc_power is limited to posets with at most 8 elements")
    elems = tuple(range(Q.size))
    m_pred = _cc_size(Q, elems)
    if m_pred > max_m:
        raise SizeLimitError(f"cc_power would need P_{m_pred}, above the limit {max_m}")
    m, table = _cc_table(Q, elems)
    if m != m_pred:
        raise ConsistencyError("cone-cover size prediction disagrees with the construction")
    # P_m indexes subsets by bitmask, so table[A] is the image of element A
    f = PosetMap(power_poset(m), Q, tuple(table))
    check = is_cone_cover(f)
    if not check:
        raise ConsistencyError(f"cc_power construction fails at {check.witness}: {check.reason}")
    return m, f


# -- pullback --------------------------------------------------------------


def preimage(f: PosetMap, mask: int) -> int:
    """Bitmask of the source elements sent into the target set ``mask``."""
    out = 0
    for a, x in enumerate(f.map):
        if mask >> x & 1:
            out |= 1 << a
    return out


def _require_cone_cover(f: PosetMap):
    check = is_cone_cover(f)
    if not check:
        raise ArgumentError(f"not a cone-cover: {check.reason} at {check.witness}")


def pullback_valuation(f: PosetMap, v, source_algebra: HeytingAlgebra | None = None):
    """``v^f``: every atom goes to the preimage of its value under ``v``.

    ``v`` is a valuation into ``O(target)`` whose algebra records its upsets
    in ``elements``. The source algebra is built unless supplied.
    """
    from .logic.semantics import Valuation

    _require_cone_cover(f)
    H = source_algebra if source_algebra is not None else open_algebra(f.source)
    T = v.target
    assignment = {a: H.index_of(preimage(f, T.elements[x])) for a, x in v.assignment.items()}
    # unlisted atoms sit at the top on both sides, and the preimage of the top is the top
    return Valuation(H, assignment)


def pullback_model(f: PosetMap, model):
    """The Kripke model on ``f.source`` forcing each atom on the preimage of its set."""
    from .logic.semantics import KripkeModel

    _require_cone_cover(f)
    if model.frame != f.target:
        raise ArgumentError("model frame differs from the map's target")
    return KripkeModel(f.source, {a: preimage(f, m) for a, m in model.forcing.items()})


def posetmap_to_json(f: PosetMap) -> str:
    def poset(P):
        return {"size": P.size, "le": [[int(i), int(j)] for i, j in np.argwhere(P.le)]}

    return json.dumps({"source": poset(f.source), "target": poset(f.target), "map": list(f.map)})


def posetmap_from_json(text: str) -> PosetMap:
    try:
        data = json.loads(text)
        S = poset_from_json(json.dumps(data["source"]))
        T = poset_from_json(json.dumps(data["target"]))
        return PosetMap(S, T, tuple(data["map"]))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ArgumentError):
            raise
        raise ArgumentError(f"malformed poset map JSON: {exc}") from exc
