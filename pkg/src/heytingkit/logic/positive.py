"""Negation-free translation ``phi+`` and the interval lifting of its refutations.

With ``n`` the largest atom index of ``phi`` (0 when it has none) and
``top = p0 & ... & p(n+1)``, each ``~psi`` becomes ``psi+ -> top`` and each
``F`` becomes ``top``; everything else is translated homomorphically.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import ArgumentError
from ..lattice import HeytingAlgebra, interval
from .semantics import Valuation, evaluate
from .syntax import And, Atom, Bot, Formula, Imp, Not, Or, conj

__all__ = ["positivize", "atom_bound", "Lifted", "lift_counter"]


def atom_bound(phi: Formula) -> int:
    """Smallest ``n`` with every atom of ``phi`` among ``p0..pn``."""
    return max(phi.atoms, default=0)


def positivize(phi: Formula) -> Formula:
    n = atom_bound(phi)
    falsum = conj([Atom(i) for i in range(n + 2)])

    def go(f: Formula) -> Formula:
        if isinstance(f, Atom):
            return f
        if isinstance(f, Bot):
            return falsum
        if isinstance(f, Not):
            return Imp(go(f.arg), falsum)
        return type(f)(go(f.left), go(f.right))

    return go(phi)


@dataclass(frozen=True)
class Lifted:
    """A countervaluation of ``phi`` in ``H[d, 1]`` built from one of ``phi+`` in ``H``."""

    d: int
    segment: HeytingAlgebra
    valuation: Valuation
    value: int

    @property
    def refutes(self) -> bool:
        return self.value != self.segment.top


def lift_counter(H: HeytingAlgebra, phi: Formula, v: Valuation) -> Lifted:
    """Move a refutation of ``phi+`` under ``v`` to the segment above ``d = v(p0)∧…∧v(p(n+1))``.

    The new valuation keeps ``v`` on ``p0..p(n+1)`` and sends every other atom
    to the top. Raises :class:`ArgumentError` if ``v`` does not refute ``phi+``.
    """
    if evaluate(H, v, positivize(phi)) == H.top:
        raise ArgumentError("the valuation does not refute the positive translation")
    n = atom_bound(phi)
    d = H.top
    for i in range(n + 2):
        d = int(H.meet[d, v(i)])
    seg = interval(H, d, H.top)
    pos = {x: i for i, x in enumerate(seg.meta["parent_index"])}
    w = Valuation(seg, {i: pos[v(i)] for i in range(n + 2)})
    return Lifted(d, seg, w, evaluate(seg, w, phi))
