"""Random formulas for sampling-based checks."""

from __future__ import annotations

import random

from .syntax import And, Atom, Bot, Formula, Imp, Not, Or

__all__ = ["random_formula"]


def random_formula(rng: random.Random, depth: int, n_atoms: int = 3, bot: bool = True) -> Formula:
    """A formula of depth at most ``depth`` over ``p0..p(n_atoms-1)``."""
    if depth == 0 or rng.random() < 0.2:
        if bot and rng.random() < 0.08:
            return Bot()
        return Atom(rng.randrange(n_atoms))
    r = rng.random()
    if r < 0.2:
        return Not(random_formula(rng, depth - 1, n_atoms, bot))
    op = (And, Or, Imp)[int((r - 0.2) / 0.8 * 3)]
    return op(random_formula(rng, depth - 1, n_atoms, bot), random_formula(rng, depth - 1, n_atoms, bot))
