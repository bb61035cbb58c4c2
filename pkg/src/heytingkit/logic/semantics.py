"""Algebraic and Kripke semantics.

A valuation sends atoms to elements of a finite implicative lattice; formulas
are evaluated homomorphically with ``¬a`` read as ``a ⇒ 0``. A Kripke model is
a finite frame with an upset of worlds for each atom; forcing is computed on
bitmasks directly from the frame, independently of any algebra tables.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from ..errors import ArgumentError, SizeLimitError
from ..lattice import HeytingAlgebra
from ..order import Poset, open_algebra, upset_imp, _bits
from .syntax import And, Atom, Bot, Formula, Imp, Not, Or

__all__ = [
    "Valuation",
    "evaluate",
    "evaluate_many",
    "Verdict",
    "validity",
    "VALIDITY_BOUND",
    "KripkeModel",
]

VALIDITY_BOUND = 10**8
_CHUNK = 1 << 18


@dataclass(frozen=True)
class Valuation:
    """Atom index -> element index of ``target``; unlisted atoms take the top."""

    target: HeytingAlgebra
    assignment: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for atom, value in dict(self.assignment).items():
            atom, value = int(atom), int(value)
            if atom < 0 or not 0 <= value < self.target.size:
                raise ArgumentError(f"bad assignment p{atom} -> {value}")
            clean[atom] = value
        object.__setattr__(self, "assignment", dict(sorted(clean.items())))

    def __call__(self, atom: int) -> int:
        return self.assignment.get(atom, self.target.top)

    def __eq__(self, other):
        if not isinstance(other, Valuation) or other.target is not self.target:
            return NotImplemented
        keys = set(self.assignment) | set(other.assignment)
        return all(self(k) == other(k) for k in keys)

    def __hash__(self):
        return hash(tuple((k, v) for k, v in self.assignment.items() if v != self.target.top))

    def describe(self) -> str:
        if not self.assignment:
            return "(every atom at the top)"
        return ", ".join(f"p{k} -> {self.target.labels[v]}" for k, v in self.assignment.items())

    def to_dict(self) -> dict:
        return {f"p{k}": self.target.labels[v] for k, v in self.assignment.items()}


def evaluate(H: HeytingAlgebra, v: Valuation, phi: Formula) -> int:
    """The value of ``phi`` under ``v``, as an element index of ``H``."""
    if v.target is not H:
        raise ArgumentError("valuation targets a different algebra")
    memo: dict[Formula, int] = {}

    def go(f: Formula) -> int:
        r = memo.get(f)
        if r is not None:
            return r
        if isinstance(f, Atom):
            r = v(f.index)
        elif isinstance(f, Bot):
            r = H.bot
        elif isinstance(f, Not):
            r = int(H.imp[go(f.arg), H.bot])
        elif isinstance(f, And):
            r = int(H.meet[go(f.left), go(f.right)])
        elif isinstance(f, Or):
            r = int(H.join[go(f.left), go(f.right)])
        elif isinstance(f, Imp):
            r = int(H.imp[go(f.left), go(f.right)])
        else:
            raise TypeError(f"not a formula: {f!r}")
        memo[f] = r
        return r

    return go(phi)


def evaluate_many(H: HeytingAlgebra, phi: Formula, columns: Mapping[int, np.ndarray]) -> np.ndarray:
    """Vectorized evaluation: ``columns[i]`` holds the values of atom ``i`` per row."""
    length = len(next(iter(columns.values()))) if columns else 1
    memo: dict[Formula, np.ndarray] = {}

    def go(f: Formula) -> np.ndarray:
        r = memo.get(f)
        if r is not None:
            return r
        if isinstance(f, Atom):
            r = columns[f.index] if f.index in columns else np.full(length, H.top)
        elif isinstance(f, Bot):
            r = np.full(length, H.bot)
        elif isinstance(f, Not):
            r = H.imp[go(f.arg), H.bot]
        elif isinstance(f, And):
            r = H.meet[go(f.left), go(f.right)]
        elif isinstance(f, Or):
            r = H.join[go(f.left), go(f.right)]
        elif isinstance(f, Imp):
            r = H.imp[go(f.left), go(f.right)]
        else:
            raise TypeError(f"not a formula: {f!r}")
        memo[f] = r
        return r

    return np.asarray(go(phi))


@dataclass(frozen=True)
class Verdict:
    valid: bool
    counter: Valuation | None = None

    def __bool__(self):
        return self.valid

    def to_dict(self) -> dict:
        if self.valid:
            return {"valid": True}
        return {"valid": False, "counter": self.counter.to_dict()}


def validity(H: HeytingAlgebra, phi: Formula, bound: int = VALIDITY_BOUND) -> Verdict:
    """Exhaustive scan of the valuations of the atoms of ``phi``.

    Valuations are visited in lexicographic order of the value tuple over the
    sorted atoms, so the returned countervaluation is the first one in that
    order.
    """
    atoms = sorted(phi.atoms)
    k = len(atoms)
    N = H.size
    total = N**k
    if total > bound:
        raise SizeLimitError(f"{N}^{k} valuations exceed the bound {bound}")
    shape = (N,) * k
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK))
        digits = np.unravel_index(idx, shape) if k else ()
        values = evaluate_many(H, phi, dict(zip(atoms, digits)))
        bad = np.flatnonzero(values != H.top)
        if bad.size:
            row = int(bad[0])
            assignment = {a: int(d[row]) for a, d in zip(atoms, digits)}
            counter = Valuation(H, assignment)
            if evaluate(H, counter, phi) == H.top:
                raise AssertionError("vectorized and direct evaluation disagree")
            return Verdict(False, counter)
    return Verdict(True)


class KripkeModel:
    """A finite frame together with an upset of worlds for each atom."""

    def __init__(self, frame: Poset, forcing: Mapping[int, int]):
        self.frame = frame
        clean = {}
        for atom, mask in dict(forcing).items():
            mask = int(mask)
            if mask & ~frame.full or not frame.is_upset(mask):
                raise ArgumentError(f"forcing set of p{atom} is not an upset")
            clean[int(atom)] = mask
        self.forcing = dict(sorted(clean.items()))

    @property
    def size(self) -> int:
        return self.frame.size

    def truth_set(self, phi: Formula) -> int:
        """Bitmask of the worlds forcing ``phi``; unlisted atoms are forced nowhere."""
        P = self.frame
        memo: dict[Formula, int] = {}

        def go(f: Formula) -> int:
            r = memo.get(f)
            if r is not None:
                return r
            if isinstance(f, Atom):
                r = self.forcing.get(f.index, 0)
            elif isinstance(f, Bot):
                r = 0
            elif isinstance(f, Not):
                r = upset_imp(P, go(f.arg), 0)
            elif isinstance(f, And):
                r = go(f.left) & go(f.right)
            elif isinstance(f, Or):
                r = go(f.left) | go(f.right)
            elif isinstance(f, Imp):
                r = upset_imp(P, go(f.left), go(f.right))
            else:
                raise TypeError(f"not a formula: {f!r}")
            memo[f] = r
            return r

        return go(phi)

    def forces(self, world: int, phi: Formula) -> bool:
        return bool(self.truth_set(phi) >> world & 1)

    def valid(self, phi: Formula) -> bool:
        return self.truth_set(phi) == self.frame.full

    def valuation(self, algebra: HeytingAlgebra | None = None, atoms: Iterable[int] = ()) -> Valuation:
        """The induced valuation into ``O(frame)``.

        Atoms listed in ``atoms`` but absent from ``forcing`` are sent to ∅, so
        the result agrees with forcing on every formula over those atoms.
        """
        H = algebra if algebra is not None else open_algebra(self.frame)
        assignment = {a: H.index_of(0) for a in atoms}
        assignment.update({a: H.index_of(m) for a, m in self.forcing.items()})
        return Valuation(H, assignment)

    def describe(self) -> list[str]:
        P = self.frame
        lines = [f"worlds: {P.size}"]
        for w in range(P.size):
            above = [P.labels[u] for u in _bits(P.up[w]) if u != w]
            forced = [f"p{a}" for a, m in self.forcing.items() if m >> w & 1]
            lines.append(
                f"  {P.labels[w]}: forces {{{', '.join(forced)}}}"
                + (f"; below {', '.join(above)}" if above else "")
            )
        return lines

    def to_dict(self) -> dict:
        P = self.frame
        return {
            "worlds": list(P.labels),
            "order": [[int(i), int(j)] for i, j in np.argwhere(P.le) if i != j],
            "forcing": {f"p{a}": _bits(m) for a, m in self.forcing.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())
