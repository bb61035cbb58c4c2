"""Bounded validity checks over the open-set algebras of power posets.

``O_n`` is the algebra of upsets of the subsets of ``{0..n-1}`` under reverse
inclusion and ``O_n_minus`` the same with the empty set removed. The interval
families range over the segments ``O[D, 1]`` for every upset ``D``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from ..errors import ArgumentError, SizeLimitError
from ..lattice import HeytingAlgebra, interval
from ..order import open_algebra, power_poset
from .semantics import VALIDITY_BOUND, Verdict, validity
from .syntax import Formula

__all__ = ["FAMILIES", "FAMILY_LIMITS", "family_algebra", "family_members", "FamilyReport", "family_check"]

FAMILIES = ("O_n", "O_n_minus", "O_n_intervals", "O_n_minus_intervals")
FAMILY_LIMITS = {"O_n": 4, "O_n_minus": 4, "O_n_intervals": 3, "O_n_minus_intervals": 3}


@lru_cache(maxsize=None)
def family_algebra(n: int, punctured: bool) -> HeytingAlgebra:
    """``O_n`` or ``O_n_minus``, built once per process."""
    return open_algebra(power_poset(n, punctured))


def family_members(family: str, n_max: int):
    """Yield ``(n, D, algebra)``; ``D`` is ``None`` outside the interval families."""
    if family not in FAMILIES:
        raise ArgumentError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    if not 1 <= n_max <= FAMILY_LIMITS[family]:
        raise SizeLimitError(f"{family} is limited to 1 <= n <= {FAMILY_LIMITS[family]}")
    punctured = "minus" in family
    for n in range(1, n_max + 1):
        H = family_algebra(n, punctured)
        if family.endswith("intervals"):
            for D in range(H.size):
                yield n, D, interval(H, D, H.top)
        else:
            yield n, None, H


@dataclass
class FamilyEntry:
    n: int
    D: int | None
    D_label: str | None
    size: int
    verdict: Verdict


@dataclass
class FamilyReport:
    formula: Formula
    family: str
    n_max: int
    entries: list = field(default_factory=list)

    @property
    def counterexample(self) -> FamilyEntry | None:
        return next((e for e in self.entries if not e.verdict.valid), None)

    @property
    def valid(self) -> bool:
        return self.counterexample is None

    def summary(self) -> str:
        c = self.counterexample
        if c is None:
            return f"valid up to bound: {self.formula} holds in {self.family} for n <= {self.n_max}"
        where = f"n={c.n}" + (f", D={c.D_label}" if c.D is not None else "")
        return f"counterexample in {self.family} at {where}: {c.verdict.counter.describe()}"

    def to_dict(self) -> dict:
        return {
            "formula": str(self.formula),
            "family": self.family,
            "n_max": self.n_max,
            "valid_up_to_bound": self.valid,
            "entries": [
                {"n": e.n, "D": e.D_label, "size": e.size, **e.verdict.to_dict()}
                for e in self.entries
            ],
        }


def family_check(phi: Formula, family: str, n_max: int, stop_at_first: bool = True,
                 bound: int = VALIDITY_BOUND) -> FamilyReport:
    """Check ``phi`` in every member of ``family`` with ``n <= n_max``, in order."""
    report = FamilyReport(phi, family, n_max)
    for n, D, A in family_members(family, n_max):
        verdict = validity(A, phi, bound=bound)
        label = family_algebra(n, "minus" in family).labels[D] if D is not None else None
        report.entries.append(FamilyEntry(n, D, label, A.size, verdict))
        if stop_at_first and not verdict.valid:
            break
    return report
