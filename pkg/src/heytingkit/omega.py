"""Finitely generated upsets over the finite and cofinite subsets of ω.

``P_ω`` is the set of finite or cofinite subsets of ω ordered by reverse
inclusion, so its join is intersection and its bottom is ω. An element of
``O_ω`` is the upward closure ``A*`` of a finite generator set ``A``, which
in terms of sets is every ``x`` with ``x ⊆ a`` for some ``a ∈ A``. It is
stored as the ⊆-maximal generators, which makes equality syntactic.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import ArgumentError, SizeLimitError
from .lattice import interval
from .order import Upset, _bits, power_poset

__all__ = [
    "FinCofin",
    "fin",
    "cof",
    "OMEGA",
    "EMPTY",
    "fc_dual_impl",
    "OmegaElem",
    "star_normalize",
    "omega_lattice_op",
    "omega_meet",
    "omega_join",
    "omega_impl",
    "omega_dual_impl",
    "omega_leq",
    "TOP",
    "BOTTOM",
    "fincofin_universe",
    "antichains",
    "closure_oracle",
    "IsoReport",
    "transport_interval",
    "default_enumeration",
    "TheoremKReport",
    "theorem_k_check",
    "MAX_THEOREM_K_PAIRS",
]

MAX_THEOREM_K_PAIRS = 64
MAX_ANTICHAINS = 1 << 20


@dataclass(frozen=True, order=True)
class FinCofin:
    """A finite set (``kind="finite"``) or the complement of one (``"cofinite"``).

    ``support`` is the set itself or its complement. Finite and cofinite sets
    never coincide, so the pair is already canonical.
    """

    kind: str
    support: tuple

    def __post_init__(self):
        if self.kind not in ("finite", "cofinite"):
            raise ArgumentError(f"kind must be finite or cofinite, not {self.kind!r}")
        s = tuple(sorted(set(int(x) for x in self.support)))
        if s and s[0] < 0:
            raise ArgumentError("supports are sets of naturals")
        object.__setattr__(self, "support", s)

    @property
    def finite(self) -> bool:
        return self.kind == "finite"

    @property
    def _set(self) -> frozenset:
        return frozenset(self.support)

    def complement(self) -> "FinCofin":
        return FinCofin("cofinite" if self.finite else "finite", self.support)

    def __or__(self, other: "FinCofin") -> "FinCofin":
        a, b = self._set, other._set
        if self.finite and other.finite:
            return fin(a | b)
        if self.finite:
            return cof(b - a)
        if other.finite:
            return cof(a - b)
        return cof(a & b)

    def __and__(self, other: "FinCofin") -> "FinCofin":
        a, b = self._set, other._set
        if self.finite and other.finite:
            return fin(a & b)
        if self.finite:
            return fin(a - b)
        if other.finite:
            return fin(b - a)
        return cof(a | b)

    def issubset(self, other: "FinCofin") -> bool:
        a, b = self._set, other._set
        if self.finite:
            return a <= b if other.finite else not (a & b)
        return False if other.finite else b <= a

    def __contains__(self, x: int) -> bool:
        return (x in self._set) == self.finite

    def __repr__(self):
        body = "{" + ",".join(map(str, self.support)) + "}"
        return f"fin{body}" if self.finite else f"cof{body}"

    def to_dict(self) -> dict:
        return {"kind": self.kind, "support": list(self.support)}

    @classmethod
    def from_dict(cls, data) -> "FinCofin":
        try:
            return cls(data["kind"], tuple(data["support"]))
        except (KeyError, TypeError) as exc:
            raise ArgumentError(f"malformed finite/cofinite set: {exc}") from exc


def fin(s: Iterable[int] = ()) -> FinCofin:
    return FinCofin("finite", tuple(s))


def cof(s: Iterable[int] = ()) -> FinCofin:
    """The complement of the finite set ``s``."""
    return FinCofin("cofinite", tuple(s))


OMEGA = cof()
EMPTY = fin()


def fc_dual_impl(a: FinCofin, b: FinCofin) -> FinCofin:
    """``a ⇒∂ b = b ∪ (ω ∖ a)``, the least ``c`` (in ``P_ω``) with ``b <= a ∨ c``."""
    return b | a.complement()


# -- the algebra O_ω --------------------------------------------------------


@dataclass(frozen=True)
class OmegaElem:
    """``A*`` for an antichain ``generators`` of ⊆-maximal sets."""

    generators: tuple

    def __repr__(self):
        if not self.generators:
            return "⊥"
        return "{" + ", ".join(map(repr, self.generators)) + "}*"

    def contains(self, x: FinCofin) -> bool:
        return any(x.issubset(a) for a in self.generators)

    def to_dict(self) -> dict:
        return {"generators": [g.to_dict() for g in self.generators]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data) -> "OmegaElem":
        try:
            return star_normalize([FinCofin.from_dict(g) for g in data["generators"]])
        except (KeyError, TypeError) as exc:
            raise ArgumentError(f"malformed O_ω element: {exc}") from exc


def star_normalize(gens: Iterable[FinCofin]) -> OmegaElem:
    """Keep only the ⊆-maximal generators, in canonical order."""
    uniq = sorted(set(gens))
    keep = [a for a in uniq if not any(a != b and a.issubset(b) for b in uniq)]
    return OmegaElem(tuple(keep))


TOP = OmegaElem((OMEGA,))
BOTTOM = OmegaElem(())


def omega_leq(A: OmegaElem, B: OmegaElem) -> bool:
    """``A* ⊆ B*``."""
    return all(B.contains(a) for a in A.generators)


def omega_meet(A: OmegaElem, B: OmegaElem) -> OmegaElem:
    return star_normalize(a & b for a in A.generators for b in B.generators)


def omega_join(A: OmegaElem, B: OmegaElem) -> OmegaElem:
    return star_normalize(A.generators + B.generators)


def omega_lattice_op(kind: str, A: OmegaElem, B: OmegaElem) -> OmegaElem:
    if kind == "meet":
        return omega_meet(A, B)
    if kind == "join":
        return omega_join(A, B)
    raise ArgumentError(f"unknown lattice operation {kind!r}")


def omega_impl(A: OmegaElem, B: OmegaElem) -> OmegaElem:
    """``A* ⇒ B*``: the intersection over ``a ∈ A`` of ``{a ⇒∂ b : b ∈ B}*``."""
    out = TOP
    for a in A.generators:
        out = omega_meet(out, star_normalize(fc_dual_impl(a, b) for b in B.generators))
    return out


def omega_dual_impl(A: OmegaElem, B: OmegaElem) -> OmegaElem:
    """``A* ⇒∂ B*``, the least ``X`` with ``B* ⊆ A* ∪ X``: the generators of ``B`` outside ``A*``."""
    return star_normalize(b for b in B.generators if not A.contains(b))


# -- bounded universes for exhaustive checks --------------------------------


def fincofin_universe(support: Sequence[int]) -> list[FinCofin]:
    """Every finite subset of ``support`` and every complement of one."""
    support = sorted(support)
    subsets = [tuple(c) for r in range(len(support) + 1) for c in combinations(support, r)]
    return [fin(s) for s in subsets] + [cof(s) for s in subsets]


def antichains(elems: Sequence[FinCofin], limit: int = MAX_ANTICHAINS) -> list[OmegaElem]:
    """All ⊆-antichains of ``elems`` as normalized elements (raises past ``limit``)."""
    elems = sorted(set(elems))
    n = len(elems)
    comparable = [
        sum(1 << j for j in range(n) if j != i and (elems[i].issubset(elems[j]) or elems[j].issubset(elems[i])))
        for i in range(n)
    ]
    out: list[OmegaElem] = []

    def rec(i: int, chosen: list[int], blocked: int):
        if len(out) > limit:
            raise SizeLimitError(f"more than {limit} antichains")
        if i == n:
            out.append(OmegaElem(tuple(elems[k] for k in chosen)))
            return
        rec(i + 1, chosen, blocked)
        if not blocked >> i & 1:
            rec(i + 1, chosen + [i], blocked | comparable[i])

    rec(0, [], 0)
    if len(out) > limit:
        raise SizeLimitError(f"more than {limit} antichains")
    return out


def closure_oracle(gens: Iterable[FinCofin], universe: Sequence[FinCofin]) -> frozenset:
    """The members of ``universe`` lying below some generator, by direct scan."""
    gens = list(gens)
    return frozenset(x for x in universe if any(x.issubset(g) for g in gens))


# -- transport of power-set intervals ---------------------------------------


@dataclass
class IsoReport:
    ok: bool
    size: int
    mapping: dict
    mismatches: list

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "size": self.size,
            "mapping": {str(k): v.to_dict() for k, v in self.mapping.items()},
            "mismatches": self.mismatches,
        }


def _relabel(mask: int, a: Sequence[int]) -> FinCofin:
    return fin(a[i] for i in _bits(mask))


def _upset_mask(n: int, D) -> int:
    if isinstance(D, Upset):
        return D.mask
    return int(D)


def transport_interval(n: int, D, support: Iterable[int]) -> tuple[OmegaElem, IsoReport]:
    """Carry an upset ``D`` of ``P_n`` to ``E`` in ``O_ω`` over the set ``support``.

    The segment ``O_n[D, 1]`` is compared operation by operation with the
    segment of ``O_ω`` between ``E`` and ``{support}*``. The ``O_ω`` side is
    enumerated independently, as every antichain of subsets of ``support``
    whose closure contains ``E``, and uses the relative implication
    ``(A ⇒ B) ∧ {support}*``.
    """
    a = sorted(set(int(x) for x in support))
    if len(a) != n or n < 1:
        raise ArgumentError(f"support must have exactly n={n} elements")
    P = power_poset(n)
    D = _upset_mask(n, D)
    if D == 0 or not P.is_upset(D) or D & ~P.full:
        raise ArgumentError("D must be a nonempty upset of P_n")
    from .logic.families import family_algebra

    O = family_algebra(n, False)
    # element i of P_n is the subset with bitmask i
    maximal = [s for s in _bits(D) if not any(t != s and t & s == s for t in _bits(D))]
    E = star_normalize(_relabel(s, a) for s in maximal)
    ceiling = OmegaElem((fin(a),))

    seg = interval(O, O.index_of(D), O.top)
    # independent enumeration of the O_ω segment
    omega_side = [X for X in antichains(fincofin_universe(a)) if all(g.finite for g in X.generators)
                  and omega_leq(E, X) and omega_leq(X, ceiling)]
    image = {}
    for i, up in enumerate(seg.elements):
        gens = [s for s in _bits(up) if not any(t != s and t & s == s for t in _bits(up))]
        image[i] = star_normalize(_relabel(s, a) for s in gens)
    mismatches = []
    if sorted(map(repr, image.values())) != sorted(map(repr, omega_side)):
        mismatches.append("segment elements differ from the relabelled upsets")
    index = {v: k for k, v in image.items()}
    if len(index) != len(image):
        mismatches.append("relabelling is not injective")
    k = seg.size
    for x in range(k):
        for y in range(k):
            X, Y = image[x], image[y]
            if omega_leq(X, Y) != bool(seg.le[x, y]):
                mismatches.append(f"order at ({x},{y})")
            if index.get(omega_meet(X, Y)) != seg.meet[x, y]:
                mismatches.append(f"meet at ({x},{y})")
            if index.get(omega_join(X, Y)) != seg.join[x, y]:
                mismatches.append(f"join at ({x},{y})")
            rel = omega_meet(omega_impl(X, Y), ceiling)
            if index.get(rel) != seg.imp[x, y]:
                mismatches.append(f"implication at ({x},{y})")
    return E, IsoReport(not mismatches, k, image, mismatches)


# -- the initial-segment witnesses ------------------------------------------


def default_enumeration(n_max: int = 3) -> list[tuple[int, int]]:
    """Every ``(n, D)`` with ``1 <= n <= n_max`` and ``D`` a nonempty upset of ``P_n``."""
    from .logic.families import family_algebra

    out = []
    for n in range(1, n_max + 1):
        for D in family_algebra(n, False).elements:
            if D:
                out.append((n, D))
    return out


@dataclass
class TheoremKReport:
    records: list

    @property
    def ok(self) -> bool:
        return all(r["pass"] for r in self.records)

    def counts(self) -> dict:
        out: dict = {}
        for r in self.records:
            c = out.setdefault(r["identity"], [0, 0])
            c[0 if r["pass"] else 1] += 1
        return {k: {"pass": v[0], "fail": v[1]} for k, v in out.items()}

    def to_json(self) -> str:
        return json.dumps({"ok": self.ok, "counts": self.counts(), "records": self.records})


def theorem_k_check(pairs: Sequence[tuple[int, object]] | None = None,
                    supports: Sequence[Iterable[int]] | None = None) -> TheoremKReport:
    """Check the per-index identities behind the initial-segment embedding.

    For each ``k`` let ``p_k = {a_k}*`` and ``q_k = E_k`` (the transported
    ``D_k``). Inside ``O_ω`` the checks are (a) ``q_k ⊆ p_k``; (b) for ``k ≠ l``,
    ``p_k ∧ q_l = {∅}*`` and ``{∅}* ⊆ q_k``; (c) ``p_k ∧ q_k = q_k``. Under the
    order-reversing embedding into degrees these read ``p_k <= q_k`` and
    ``p_k ∨ q_l >= q_k``.
    """
    pairs = list(default_enumeration() if pairs is None else pairs)
    if len(pairs) > MAX_THEOREM_K_PAIRS:
        raise SizeLimitError(f"at most {MAX_THEOREM_K_PAIRS} pairs")
    if supports is None:
        supports, nxt = [], 0
        for n, _ in pairs:
            supports.append(list(range(nxt, nxt + n)))
            nxt += n
    supports = [sorted(set(int(x) for x in s)) for s in supports]
    if len(supports) != len(pairs):
        raise ArgumentError("one support per pair is required")
    seen: dict[int, int] = {}
    for k, s in enumerate(supports):
        for x in s:
            if x in seen:
                raise ArgumentError(f"supports {seen[x]} and {k} share {x}")
            seen[x] = k
    p_hat, q_hat = [], []
    records = []
    for k, ((n, D), s) in enumerate(zip(pairs, supports)):
        E, iso = transport_interval(n, D, s)
        records.append({"identity": "transport", "k": k, "pass": iso.ok})
        p_hat.append(OmegaElem((fin(s),)))
        q_hat.append(E)
    bottom_gen = OmegaElem((EMPTY,))
    for k in range(len(pairs)):
        records.append({"identity": "(a) q_k ⊆ p_k, i.e. p_k <= q_k", "k": k,
                        "pass": omega_leq(q_hat[k], p_hat[k])})
        records.append({"identity": "(c) p_k ∧ q_k = q_k", "k": k,
                        "pass": omega_meet(p_hat[k], q_hat[k]) == q_hat[k]})
        for l in range(len(pairs)):
            if l == k:
                continue
            ok = omega_meet(p_hat[k], q_hat[l]) == bottom_gen and omega_leq(bottom_gen, q_hat[k])
            records.append({"identity": "(b) p_k ∧ q_l = {∅}* ⊆ q_k, i.e. p_k ∨ q_l >= q_k",
                            "k": k, "l": l, "pass": ok})
    return TheoremKReport(records)


def random_fincofin(rng: random.Random, support: Sequence[int]) -> FinCofin:
    s = [x for x in support if rng.random() < 0.5]
    return fin(s) if rng.random() < 0.5 else cof(s)


def random_omega(rng: random.Random, support: Sequence[int], max_gens: int = 4) -> OmegaElem:
    return star_normalize(random_fincofin(rng, support) for _ in range(rng.randint(0, max_gens)))
