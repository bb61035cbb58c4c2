"""The acceptance suite: eleven end-to-end checks with time limits.

Each check returns a :class:`CriterionResult`; a criterion passes when no
violation was found and it finished within its time limit.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .errors import FIPError, SizeLimitError
from .filters import (
    all_filters, generated_filter, is_prime_filter, prime_filters, prime_representation,
    principal_filter, separating_prime,
)
from .lattice import (
    chain_algebra, dual_implication_law_violations, implication_law_violations,
    irreducibility_flags, quotient_by_filter,
)
from .logic.corpus import load_corpus
from .logic.families import family_check, family_algebra
from .logic.generate import random_formula
from .logic.ipc import ipc_decide
from .logic.positive import lift_counter, positivize
from .logic.semantics import KripkeModel, validity
from .logic.syntax import parse
from .morphisms import PosetMap, cc_power, cc_punctured, is_cone_cover, preimage, pullback_model
from .omega import (
    antichains, closure_oracle, fincofin_universe, omega_impl, omega_leq, omega_meet,
    random_omega, star_normalize, theorem_k_check, transport_interval,
)
from .order import antichain_poset, chain_poset, fork_poset, open_algebra, power_poset, upset_masks
from .stock import bounded_posets_up_to_iso, implicative_stock, random_upset_algebras

__all__ = [
    "CriterionResult", "CRITERIA", "run_criterion", "run_acceptance", "scoreboard",
    "residuation_scan", "principal_residuation_scan",
]

WEM = "~p0 | ~~p0"
KREISEL_PUTNAM = "(~p0 -> p1 | p2) -> ((~p0 -> p1) | (~p0 -> p2))"
PEIRCE = "((p0 -> p1) -> p0) -> p0"


@dataclass
class CriterionResult:
    number: int
    title: str
    limit: float
    ok: bool = True
    seconds: float = 0.0
    details: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.ok and not self.failures and self.seconds < self.limit

    def fail(self, message: str):
        if len(self.failures) < 20:
            self.failures.append(message)
        self.ok = False

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        timing = f"{self.seconds:.1f}s / {self.limit:.0f}s"
        extra = f": {self.failures[0]}" if self.failures else ""
        if self.ok and self.seconds >= self.limit:
            extra = ": time limit exceeded"
        return f"[{status}] criterion {self.number:>2} {self.title} ({timing}){extra}"


# -- 1 -------------------------------------------------------------------


def _distribution_laws(res: CriterionResult, seed: int):
    exhaustive = implicative_stock(6)
    sampled = random_upset_algebras(200, max_size=12, seed=seed)
    dual_count = 0
    for H in exhaustive + sampled:
        for law, w in implication_law_violations(H, limit=1):
            res.fail(f"{H.name} violates {law} at {w}")
        if H.dual_imp is not None:
            dual_count += 1
            for law, w in dual_implication_law_violations(H, limit=1):
                res.fail(f"{H.name} violates {law} at {w}")
    res.details.append(f"{len(exhaustive)} lattices up to isomorphism (size <= 6), "
                       f"{len(sampled)} random upset algebras (size <= 12), "
                       f"{dual_count} with dual implication")


# -- 2 -------------------------------------------------------------------


def _representation(res: CriterionResult, seed: int):
    count = 0
    for H in implicative_stock(8, min_size=2):
        if not irreducibility_flags(H).one_irreducible:
            continue
        count += 1
        rep = prime_representation(H)
        if not rep.report.ok:
            res.fail(f"{H.name}: {rep.report.violations[:2]}")
        if not any(F.members == {H.top} for F in rep.primes):
            res.fail(f"{H.name}: the unit filter is not among the primes")
    res.details.append(f"{count} one-irreducible implicative lattices with 2..8 elements")


# -- 3 -------------------------------------------------------------------


def _filter_package(res: CriterionResult, seed: int):
    stock = implicative_stock(8, min_size=2)
    n_filters = n_sep = 0
    for H in stock:
        filters = all_filters(H)
        primes = [F for F in filters if is_prime_filter(H, F.members)]
        if sorted(tuple(sorted(F.members)) for F in primes) != sorted(tuple(sorted(F.members)) for F in prime_filters(H)):
            res.fail(f"{H.name}: prime enumeration disagrees with the subset scan")
        n_filters += len(filters)
        # maximal filters are prime
        for F in filters:
            if not any(F.members < G.members for G in filters) and not F.is_prime:
                res.fail(f"{H.name}: maximal filter {F} is not prime")
        for F in filters:
            S = F.members
            # splitting a join outside F
            for c, d in product(range(H.size), repeat=2):
                if int(H.join[c, d]) in S and c not in S and d not in S:
                    try:
                        Gc = generated_filter(H, S | {c})
                        Gd = generated_filter(H, S | {d})
                    except FIPError as exc:
                        res.fail(f"{H.name}: {F} with {c} or {d} lacks FIP ({exc})")
                        continue
                    if Gc.members & Gd.members != S:
                        res.fail(f"{H.name}: generated filters from {F} meet outside it")
            # separation by a prime
            for a, b in product(range(H.size), repeat=2):
                if all(not H.le[H.meet[e, a], b] for e in S):
                    G = separating_prime(H, F, a, b)
                    n_sep += 1
                    if not (is_prime_filter(H, G.members) and S <= G.members
                            and a in G.members and b not in G.members):
                        res.fail(f"{H.name}: bad separating prime for {F}, {a}, {b}")
            # implication membership through primes
            above = [G for G in primes if S <= G.members]
            for a, b in product(range(H.size), repeat=2):
                lhs = int(H.imp[a, b]) in S
                rhs = all(b in G.members for G in above if a in G.members)
                if lhs != rhs:
                    res.fail(f"{H.name}: implication criterion fails for {F}, {a}, {b}")
        # principal filters and join-irreducibles
        for e in range(H.size):
            if e == H.bot:
                continue
            irreducible = not any(
                H.join[x, y] == e for x in range(H.size) for y in range(H.size)
                if x != e and y != e
            )
            if principal_filter(H, e).is_prime != irreducible:
                res.fail(f"{H.name}: principal filter of {H.labels[e]} primeness mismatch")
    res.details.append(f"{len(stock)} algebras, {n_filters} filters, {n_sep} separations")


# -- 4 -------------------------------------------------------------------


def _wem(res: CriterionResult, seed: int):
    phi = parse(WEM)
    rep = family_check(phi, "O_n", 3)
    if not rep.valid:
        res.fail(rep.summary())
    sizes = [e.size for e in rep.entries]
    v = validity(open_algebra(fork_poset()), phi)
    if v.valid:
        res.fail("weak excluded middle holds in the fork algebra")
    r = ipc_decide(phi)
    if r.theorem:
        res.fail("weak excluded middle proved intuitionistically")
    elif r.countermodel.size > 3:
        res.fail(f"countermodel has {r.countermodel.size} worlds")
    res.details.append(f"valid in algebras of sizes {sizes}; fork counter {v.counter.describe() if v.counter else None}")


# -- 5 -------------------------------------------------------------------


def _medvedev(res: CriterionResult, seed: int):
    kp = parse(KREISEL_PUTNAM)
    rep = family_check(kp, "O_n_minus", 3)
    if not rep.valid:
        res.fail(rep.summary())
    r = ipc_decide(kp)
    if r.theorem or r.countermodel.size > 8:
        res.fail("no Kreisel-Putnam countermodel within 8 worlds")
    peirce = parse(PEIRCE)
    if validity(chain_algebra(3), peirce).valid:
        res.fail("Peirce's law holds in the 3-chain")
    if ipc_decide(peirce).theorem:
        res.fail("Peirce's law proved intuitionistically")
    res.details.append(f"Kreisel-Putnam countermodel: {r.countermodel.size if not r.theorem else '-'} worlds")


# -- 6 -------------------------------------------------------------------


def _completeness(res: CriterionResult, seed: int):
    corpus = load_corpus()
    if len(corpus) < 50:
        res.fail(f"corpus has only {len(corpus)} formulas")
    refuted = 0
    for entry in corpus:
        phi = entry.formula
        r = ipc_decide(phi)
        if entry.theorem is not None and r.theorem != entry.theorem:
            res.fail(f"line {entry.line}: recorded status disagrees for {phi}")
        reports = [family_check(phi, "O_n_intervals", 2), family_check(phi, "O_n_minus_intervals", 3)]
        found = any(not rep.valid for rep in reports)
        if r.theorem and found:
            res.fail(f"theorem {phi} refuted: {[rep.summary() for rep in reports if not rep.valid][0]}")
        if not r.theorem and not found:
            res.fail(f"non-theorem {phi} not refuted within the bound")
        refuted += found
    res.details.append(f"{len(corpus)} formulas, {refuted} refuted by an interval algebra")


# -- 7 -------------------------------------------------------------------


def _positivization(res: CriterionResult, seed: int):
    rng = random.Random(seed)
    pool = implicative_stock(6, min_size=2) + random_upset_algebras(40, max_size=12, seed=seed + 1)
    lifted = 0
    for _ in range(1000):
        H = rng.choice(pool)
        phi = random_formula(rng, rng.randint(1, 5), n_atoms=3)
        plus = positivize(phi)
        if not plus.is_positive:
            res.fail(f"translation of {phi} is not positive")
        vp = validity(H, plus)
        v = validity(H, phi)
        if vp.valid and not v.valid:
            res.fail(f"{H.name}: {plus} valid but {phi} refuted")
        if not vp.valid:
            out = lift_counter(H, phi, vp.counter)
            if not out.refutes:
                res.fail(f"{H.name}: lifting a counter to {plus} did not refute {phi}")
            elif validity(out.segment, phi).valid:
                res.fail(f"{H.name}: segment above {H.labels[out.d]} validates {phi}")
            lifted += 1
    res.details.append(f"1000 pairs, {lifted} counters lifted to segments")


# -- 8 -------------------------------------------------------------------


def _identity_map(P):
    return PosetMap(P, P, tuple(range(P.size)))


def _cone_covers(res: CriterionResult, seed: int):
    rng = random.Random(seed)
    pool = []
    for n in range(1, 5):
        f = cc_punctured(n)
        if not is_cone_cover(f):
            res.fail(f"cc_punctured({n}) is not a cone-cover")
        pool.append((f"punctured{n}", f))
    count = 0
    for size in range(1, 6):
        for Q in bounded_posets_up_to_iso(size):
            m, f = cc_power(Q)
            count += 1
            if not is_cone_cover(f):
                res.fail(f"cc_power({Q.name}) is not a cone-cover")
            pool.append((f"power->{Q.name}(m={m})", f))
    for P in (chain_poset(2), chain_poset(3), chain_poset(4), fork_poset(), antichain_poset(2)):
        pool.append((f"identity {P.name}", _identity_map(P)))
    point = chain_poset(1)
    for P in (chain_poset(2), chain_poset(3), fork_poset(), power_poset(2), power_poset(3, True)):
        pool.append((f"constant {P.name}", PosetMap(P, point, (0,) * P.size)))
    sample = rng.sample(pool, 20)
    corpus = [e.formula for e in load_corpus()]
    direct = 0
    for name, f in sample:
        T = f.target
        TA = open_algebra(T)
        targets = upset_masks(T)
        try:
            upset_masks(f.source, limit=64)
            SA = open_algebra(f.source)
        except SizeLimitError:
            SA = None
        for phi in corpus:
            # route 1: pull a target refutation back along f
            vt = validity(TA, phi)
            if not vt.valid:
                model = KripkeModel(T, {a: TA.elements[vt.counter(a)] for a in phi.atoms})
                if pullback_model(f, model).valid(phi):
                    res.fail(f"{name}: pulled-back valuation does not refute {phi}")
            # route 2: scan the source algebra directly where it is small
            if SA is not None:
                if validity(SA, phi).valid and not vt.valid:
                    res.fail(f"{name}: {phi} valid in the source, refuted in the target")
                direct += 1
            # preimages commute with evaluation
            for _ in range(2):
                forcing = {a: rng.choice(targets) for a in phi.atoms}
                tm = KripkeModel(T, forcing)
                sm = pullback_model(f, tm)
                if sm.truth_set(phi) != preimage(f, tm.truth_set(phi)):
                    res.fail(f"{name}: pullback is not a homomorphism at {phi}")
    res.details.append(f"cc_punctured(1..4), {count} bounded posets, 20 sampled covers, "
                       f"{direct} direct source scans")


# -- 9 -------------------------------------------------------------------


def _closure_masks(elems, universe):
    pos = {x: i for i, x in enumerate(universe)}
    return [sum(1 << pos[x] for x in closure_oracle(A.generators, universe)) for A in elems]


def residuation_scan(support) -> tuple[int, int]:
    """Exhaustive residuation over every antichain of sets supported in ``support``.

    Returns ``(triples checked, violations)``. Elements are compared through
    their closures over the finite universe, computed by direct scan.
    """
    universe = fincofin_universe(support)
    elems = antichains(universe)
    index = {A: i for i, A in enumerate(elems)}
    masks = np.array(_closure_masks(elems, universe), dtype=object)
    k = len(elems)
    imp = np.empty((k, k), dtype=object)
    meet = np.empty((k, k), dtype=object)
    for i, A in enumerate(elems):
        for j, B in enumerate(elems):
            imp[i, j] = masks[index[omega_impl(A, B)]]
            meet[i, j] = masks[index[omega_meet(A, B)]]
    bad = 0
    for i in range(k):
        for j in range(k):
            left = np.array([(c & ~imp[i, j]) == 0 for c in masks])
            right = np.array([(meet[i, c] & ~masks[j]) == 0 for c in range(k)])
            bad += int((left != right).sum())
    return k**3, bad


def principal_residuation_scan(support) -> tuple[int, int]:
    """Residuation for all triples ``a*, b*, c*`` of principal elements over ``support``."""
    universe = fincofin_universe(support)
    stars = [star_normalize([g]) for g in universe]
    masks = _closure_masks(stars, universe)
    k = len(stars)
    meet = [_closure_masks([omega_meet(A, C) for C in stars], universe) for A in stars]
    bad = 0
    for i, A in enumerate(stars):
        imps = _closure_masks([omega_impl(A, B) for B in stars], universe)
        for j in range(k):
            x, b = imps[j], masks[j]
            for c in range(k):
                if ((masks[c] & ~x) == 0) != ((meet[i][c] & ~b) == 0):
                    bad += 1
    return k**3, bad


def _omega(res: CriterionResult, seed: int):
    # residuation at the stated bound
    try:
        n, bad = residuation_scan(range(6))
        if bad:
            res.fail(f"{bad} residuation failures over supports in 0..5")
    except SizeLimitError as exc:
        res.fail(f"exhaustive residuation over supports in 0..5 is out of reach ({exc})")
    # the same scan where it is feasible
    n, bad = residuation_scan(range(3))
    if bad:
        res.fail(f"{bad} residuation failures over supports in 0..2")
    res.details.append(f"residuation: {n} triples over supports in 0..2, {bad} failures")
    # every triple of principal elements at the stated bound
    n, bad = principal_residuation_scan(range(6))
    if bad:
        res.fail(f"{bad} residuation failures among principal elements over supports in 0..5")
    res.details.append(f"residuation: {n} principal triples over supports in 0..5, {bad} failures")
    # sampled triples at the stated bound
    rng = random.Random(seed)
    support = range(6)
    universe = fincofin_universe(support)
    for _ in range(3000):
        A, B, C = (random_omega(rng, support) for _ in range(3))
        X = omega_impl(A, B)
        if omega_leq(C, X) != omega_leq(omega_meet(A, C), B):
            res.fail(f"residuation fails at {A}, {B}, {C}")
        if closure_oracle(X.generators, universe) != closure_oracle(
                [g for g in universe if omega_leq(omega_meet(A, star_normalize([g])), B)], universe):
            res.fail(f"implication closure differs from the oracle at {A}, {B}")
    res.details.append("3000 sampled triples over supports in 0..5")
    # normal forms against the closure oracle
    universe = fincofin_universe(range(3))
    seen: dict = {}
    for mask in range(1 << len(universe)):
        gens = [universe[i] for i in range(len(universe)) if mask >> i & 1]
        nf = star_normalize(gens)
        cl = closure_oracle(gens, universe)
        if seen.setdefault(cl, nf) != nf:
            res.fail(f"two normal forms for one closure: {nf} and {seen[cl]}")
    if len(set(seen.values())) != len(seen):
        res.fail("distinct closures share a normal form")
    res.details.append(f"normal forms: {1 << len(universe)} generator sets, {len(seen)} closures")
    # transport of power-set segments
    cases = 0
    for n in range(1, 4):
        for D in family_algebra(n, False).elements:
            if not D:
                continue
            _, iso = transport_interval(n, D, range(10, 10 + n))
            cases += 1
            if not iso.ok:
                res.fail(f"transport fails for n={n}, D={D}: {iso.mismatches[:2]}")
    res.details.append(f"transport verified for {cases} (n, D) pairs")


# -- 10 ------------------------------------------------------------------


def _theorem_k(res: CriterionResult, seed: int):
    report = theorem_k_check()
    for name, c in report.counts().items():
        if c["fail"]:
            res.fail(f"{name}: {c['fail']} failures")
    res.details.append(", ".join(f"{k}: {v['pass']} pass" for k, v in report.counts().items()))


# -- 11 ------------------------------------------------------------------


def _quotients(res: CriterionResult, seed: int):
    count = 0
    for H in implicative_stock(8, min_size=2):
        for e in range(H.size):
            if e == H.bot:
                continue
            F = principal_filter(H, e)
            q = quotient_by_filter(H, F)
            seg = q.segment
            iso = q.iso
            count += 1
            if sorted(iso) != list(range(seg.size)) or len(iso) != q.lattice.size:
                res.fail(f"{H.name}/{H.labels[e]}: class map is not a bijection")
                continue
            k = q.lattice.size
            for i in range(k):
                for j in range(k):
                    if (q.lattice.le[i, j] != seg.le[iso[i], iso[j]]
                            or iso[q.lattice.meet[i, j]] != seg.meet[iso[i], iso[j]]
                            or iso[q.lattice.join[i, j]] != seg.join[iso[i], iso[j]]):
                        res.fail(f"{H.name}/{H.labels[e]}: iso fails at classes {i}, {j}")
            for a in range(H.size):
                for b in range(H.size):
                    below = q.lattice.le[q.projection[a], q.projection[b]]
                    if below != (int(H.imp[a, b]) in F.members):
                        res.fail(f"{H.name}/{H.labels[e]}: order and implication disagree at {a}, {b}")
    res.details.append(f"{count} principal quotients")


CRITERIA = {
    1: ("distribution laws of implication", 60, _distribution_laws),
    2: ("prime-filter representation", 120, _representation),
    3: ("filter properties", 120, _filter_package),
    4: ("weak excluded middle separation", 10, _wem),
    5: ("Medvedev evidence", 30, _medvedev),
    6: ("interval completeness on the corpus", 300, _completeness),
    7: ("positive translation", 120, _positivization),
    8: ("cone-covers", 180, _cone_covers),
    9: ("the O_ω algebra", 120, _omega),
    10: ("initial-segment identities", 30, _theorem_k),
    11: ("quotients by principal filters", 60, _quotients),
}


def run_criterion(number: int, seed: int = 0) -> CriterionResult:
    title, limit, fn = CRITERIA[number]
    res = CriterionResult(number, title, limit)
    start = time.perf_counter()
    try:
        fn(res, seed)
    except Exception as exc:  # a crash is a failed criterion, reported like any other
        res.fail(f"{type(exc).__name__}: {exc}")
    res.seconds = time.perf_counter() - start
    return res


def run_acceptance(only=None, seed: int = 0, echo=None) -> list[CriterionResult]:
    out = []
    for number in sorted(only or CRITERIA):
        res = run_criterion(number, seed)
        if echo is not None:
            echo(res.line())
        out.append(res)
    return out


def scoreboard(results: list[CriterionResult], verbose: bool = False) -> str:
    lines = []
    for r in results:
        lines.append(r.line())
        if verbose:
            lines.extend(f"      {d}" for d in r.details)
            lines.extend(f"      ! {f}" for f in r.failures[1:])
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} criteria passed")
    return "\n".join(lines)
