"""Deciding intuitionistic validity.

Two independent procedures run on every query:

* Contraction-free sequent search (G4ip). A derivation is returned as the
  proof trace of a theorem.
* Hintikka-set elimination. Candidate worlds are the locally consistent sets
  of subformulas. A set is discarded while some implication or negation it
  lacks has no witnessing superset among the survivors. The formula is valid
  iff every survivor contains it; otherwise a smallest rooted family of
  survivors is extracted as a Kripke countermodel.

The two verdicts must agree and every countermodel is re-checked by forcing.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from itertools import count

import numpy as np

from ..errors import ConsistencyError, ResourceError
from ..order import Poset
from .semantics import KripkeModel
from .syntax import And, Atom, Bot, Formula, Imp, Not, Or

__all__ = ["ProofNode", "IPCResult", "ipc_decide", "prove", "MAX_FORMULA_SIZE", "MAX_PRIMES"]

MAX_FORMULA_SIZE = 120
# worlds are indexed by the truth values of atoms, implications and negations
MAX_PRIMES = 22
SEARCH_BUDGET = 200_000


# -- sequent search ---------------------------------------------------------


@dataclass(frozen=True)
class ProofNode:
    rule: str
    antecedent: tuple
    succedent: Formula
    premises: tuple = ()

    def sequent(self) -> str:
        return ", ".join(str(f) for f in self.antecedent) + " ⊢ " + str(self.succedent)

    def lines(self, indent: int = 0) -> list[str]:
        out = ["  " * indent + f"[{self.rule}] {self.sequent()}"]
        for p in self.premises:
            out.extend(p.lines(indent + 1))
        return out

    def size(self) -> int:
        return 1 + sum(p.size() for p in self.premises)

    def to_dict(self) -> dict:
        return {
            "rule": self.rule,
            "sequent": self.sequent(),
            "premises": [p.to_dict() for p in self.premises],
        }


def _desugar(f: Formula) -> Formula:
    """Rewrite ``¬a`` as ``a -> F`` for the sequent calculus."""
    if isinstance(f, Not):
        return Imp(_desugar(f.arg), Bot())
    if isinstance(f, (And, Or, Imp)):
        return type(f)(_desugar(f.left), _desugar(f.right))
    return f


class _Prover:
    def __init__(self):
        self.memo: dict = {}

    def prove(self, gamma: frozenset, c: Formula) -> ProofNode | None:
        key = (gamma, c)
        if key in self.memo:
            return self.memo[key]
        self.memo[key] = None  # cycle guard; G4ip terminates, this never bites
        r = self._prove(gamma, c)
        self.memo[key] = r
        return r

    def _node(self, rule, gamma, c, *premises):
        if any(p is None for p in premises):
            return None
        return ProofNode(rule, tuple(sorted(gamma, key=str)), c, premises)

    def _prove(self, gamma: frozenset, c: Formula) -> ProofNode | None:
        if Bot() in gamma:
            return self._node("⊥L", gamma, c)
        if c in gamma:
            return self._node("id", gamma, c)
        ordered = sorted(gamma, key=str)
        # invertible left rules
        for f in ordered:
            rest = gamma - {f}
            if isinstance(f, And):
                return self._node("∧L", gamma, c, self.prove(rest | {f.left, f.right}, c))
            if isinstance(f, Or):
                return self._node(
                    "∨L", gamma, c,
                    self.prove(rest | {f.left}, c), self.prove(rest | {f.right}, c),
                )
            if isinstance(f, Imp):
                a, b = f.left, f.right
                if isinstance(a, Atom) and a in gamma:
                    return self._node("p→L", gamma, c, self.prove(rest | {b}, c))
                if isinstance(a, Bot):
                    return self._node("⊥→L", gamma, c, self.prove(rest, c))
                if isinstance(a, And):
                    return self._node("∧→L", gamma, c, self.prove(rest | {Imp(a.left, Imp(a.right, b))}, c))
                if isinstance(a, Or):
                    return self._node("∨→L", gamma, c, self.prove(rest | {Imp(a.left, b), Imp(a.right, b)}, c))
        # invertible right rules
        if isinstance(c, And):
            return self._node("∧R", gamma, c, self.prove(gamma, c.left), self.prove(gamma, c.right))
        if isinstance(c, Imp):
            return self._node("→R", gamma, c, self.prove(gamma | {c.left}, c.right))
        # non-invertible choices
        if isinstance(c, Or):
            for side, rule in ((c.left, "∨R1"), (c.right, "∨R2")):
                p = self.prove(gamma, side)
                if p is not None:
                    return self._node(rule, gamma, c, p)
        for f in ordered:
            if isinstance(f, Imp) and isinstance(f.left, Imp):
                (x, y), b = (f.left.left, f.left.right), f.right
                rest = gamma - {f}
                left = self.prove(rest | {Imp(y, b)}, f.left)
                if left is None:
                    continue
                right = self.prove(rest | {b}, c)
                if right is not None:
                    return self._node("→→L", gamma, c, left, right)
        return None


def prove(phi: Formula) -> ProofNode | None:
    """A G4ip derivation of ``⊢ phi``, or ``None`` when there is none."""
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 10_000))
    try:
        return _Prover().prove(frozenset(), _desugar(phi))
    finally:
        sys.setrecursionlimit(old)


# -- Hintikka-set elimination ----------------------------------------------


class _Closure:
    """Subformulas of ``phi`` with their truth tables over the prime-bit cube.

    A world is a bit vector over the "prime" subformulas (atoms, implications
    and negations); conjunctions and disjunctions are then determined. As both
    are monotone, inclusion of full subformula sets coincides with inclusion of
    prime bits.
    """

    def __init__(self, phi: Formula):
        subs: list[Formula] = []
        seen = set()
        for s in phi.subformulas():
            if s not in seen:
                seen.add(s)
                subs.append(s)
        self.phi = phi
        self.subs = subs
        self.primes = [s for s in subs if isinstance(s, (Atom, Imp, Not))]
        k = len(self.primes)
        if k > MAX_PRIMES:
            raise ResourceError(f"{k} prime subformulas exceed the limit {MAX_PRIMES}")
        self.k = k
        self.bit = {s: i for i, s in enumerate(self.primes)}
        cube = np.arange(1 << k, dtype=np.int64)
        truth: dict[Formula, np.ndarray] = {}
        for s in subs:
            if s in self.bit:
                truth[s] = (cube >> self.bit[s] & 1).astype(bool)
            elif isinstance(s, Bot):
                truth[s] = np.zeros(1 << k, dtype=bool)
            elif isinstance(s, And):
                truth[s] = truth[s.left] & truth[s.right]
            else:
                truth[s] = truth[s.left] | truth[s.right]
        self.truth = truth
        # (prime, antecedent, consequent) for each implication-like prime
        self.arrows = []
        for s in self.primes:
            if isinstance(s, Imp):
                self.arrows.append((s, truth[s.left], truth[s.right]))
            elif isinstance(s, Not):
                self.arrows.append((s, truth[s.arg], np.zeros(1 << k, dtype=bool)))

    def locally_consistent(self) -> np.ndarray:
        ok = np.ones(1 << self.k, dtype=bool)
        for s, a, b in self.arrows:
            t = self.truth[s]
            ok &= ~(b & ~t)       # consequent true forces the implication
            ok &= ~(t & a & ~b)   # modus ponens inside a world
        return ok


def _superset_any(cand: np.ndarray, k: int) -> np.ndarray:
    """``out[x]`` is true iff ``cand[y]`` for some ``y ⊇ x`` (bitwise)."""
    out = cand.copy()
    for i in range(k):
        view = out.reshape(-1, 2, 1 << i)
        view[:, 0, :] |= view[:, 1, :]
    return out


def _eliminate(cl: _Closure) -> np.ndarray:
    alive = cl.locally_consistent()
    while True:
        drop = np.zeros_like(alive)
        for s, a, b in cl.arrows:
            witness = _superset_any(alive & a & ~b, cl.k)
            drop |= alive & ~cl.truth[s] & ~witness
        if not drop.any():
            return alive
        alive &= ~drop


def _is_sub(x: int, y: int) -> bool:
    return x & ~y == 0


class _FamilySearch:
    """Smallest family of surviving worlds rooted at a set lacking ``phi``."""

    def __init__(self, cl: _Closure, alive: np.ndarray):
        self.cl = cl
        self.alive = [int(x) for x in np.flatnonzero(alive)]
        self.alive_set = set(self.alive)
        self.arrow_bits = []
        for s, a, b in cl.arrows:
            self.arrow_bits.append((1 << cl.bit[s], a, b))
        self.budget = SEARCH_BUDGET

    def obligations(self, x: int) -> list[int]:
        """Indices of arrows missing from world ``x``."""
        return [t for t, (bit, _, _) in enumerate(self.arrow_bits) if not x & bit]

    def witnesses(self, x: int, t: int) -> list[int]:
        _, a, b = self.arrow_bits[t]
        return [y for y in self.alive if y != x and _is_sub(x, y) and a[y] and not b[y]]

    def _open(self, family: tuple) -> list[tuple[int, int]]:
        out = []
        for x in family:
            for t in self.obligations(x):
                _, a, b = self.arrow_bits[t]
                if not any(_is_sub(x, y) and a[y] and not b[y] for y in family):
                    out.append((x, t))
        return out

    def _dfs(self, family: tuple, limit: int, seen: set) -> tuple | None:
        self.budget -= 1
        if self.budget < 0:
            raise _OutOfBudget
        pending = self._open(family)
        if not pending:
            return family
        if len(family) >= limit:
            return None
        # most constrained obligation first
        best = None
        for x, t in pending:
            cands = [y for y in self.witnesses(x, t) if y not in family]
            if best is None or len(cands) < len(best):
                best = cands
                if not cands:
                    return None
        for y in best:
            nxt = tuple(sorted(family + (y,)))
            if nxt in seen:
                continue
            seen.add(nxt)
            r = self._dfs(nxt, limit, seen)
            if r is not None:
                return r
        return None

    def minimal(self, roots: list[int]) -> tuple[tuple, bool]:
        try:
            for limit in count(1):
                if limit > len(self.alive):
                    break
                seen: set = set()
                for r in roots:
                    found = self._dfs((r,), limit, seen)
                    if found is not None:
                        return found, True
        except _OutOfBudget:
            pass
        return self.greedy(roots[0]), False

    def greedy(self, root: int) -> tuple:
        family = [root]
        while True:
            pending = self._open(tuple(family))
            if not pending:
                return tuple(sorted(family))
            x, t = pending[0]
            family.append(self.witnesses(x, t)[0])


class _OutOfBudget(Exception):
    pass


def _model_from_family(cl: _Closure, family: tuple) -> KripkeModel:
    worlds = sorted(family, key=lambda x: (bin(x).count("1"), x))
    n = len(worlds)
    le = np.array([[_is_sub(worlds[i], worlds[j]) for j in range(n)] for i in range(n)])
    labels = [f"w{i}" for i in range(n)]
    frame = Poset(le, labels=labels, name="countermodel")
    forcing = {}
    for s in cl.primes:
        if isinstance(s, Atom):
            forcing[s.index] = sum(1 << i for i, x in enumerate(worlds) if x >> cl.bit[s] & 1)
    return KripkeModel(frame, forcing)


@dataclass
class IPCResult:
    theorem: bool
    proof: ProofNode | None = None
    countermodel: KripkeModel | None = None
    minimal: bool = True
    stats: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        if self.theorem:
            return {"theorem": True, "proof": self.proof.to_dict(), "stats": self.stats}
        return {
            "theorem": False,
            "countermodel": self.countermodel.to_dict(),
            "minimal": self.minimal,
            "stats": self.stats,
        }


def ipc_decide(phi: Formula, max_size: int = MAX_FORMULA_SIZE) -> IPCResult:
    """Decide ``phi`` in intuitionistic propositional logic.

    Returns a G4ip derivation for theorems and a rooted Kripke countermodel
    otherwise. The countermodel has the fewest worlds possible unless the
    search budget ran out, in which case ``minimal`` is false.
    """
    if len(phi) > max_size:
        raise ResourceError(f"formula size {len(phi)} exceeds the bound {max_size}")
    proof = prove(phi)
    cl = _Closure(phi)
    alive = _eliminate(cl)
    refuting = alive & ~cl.truth[phi]
    stats = {"subformulas": len(cl.subs), "primes": cl.k, "surviving_worlds": int(alive.sum())}
    if proof is not None:
        if refuting.any():
            raise ConsistencyError(f"sequent proof found but {phi} has a refuting world")
        stats["proof_size"] = proof.size()
        return IPCResult(True, proof=proof, stats=stats)
    if not refuting.any():
        raise ConsistencyError(f"no sequent proof of {phi} yet no refuting world survives")
    search = _FamilySearch(cl, alive)
    roots = [int(x) for x in np.flatnonzero(refuting)]
    family, minimal = search.minimal(roots)
    model = _model_from_family(cl, family)
    if model.forces(0, phi):
        raise ConsistencyError(f"extracted countermodel forces {phi} at its root")
    if model.frame.least != 0:
        raise ConsistencyError("extracted countermodel is not rooted")
    stats["worlds"] = model.size
    return IPCResult(False, countermodel=model, minimal=minimal, stats=stats)
