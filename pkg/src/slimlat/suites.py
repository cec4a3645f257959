"""Verification suites: the executable acceptance checks.

Each ``check_*`` function returns a :class:`CriterionResult`.  Universes are
built once per :class:`Context` and shared between checks.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from .builders import (
    add_corner,
    add_fork,
    corner_check,
    corner_positions,
    grid,
    proper_extension_witness,
    remove_corner,
)
from .classify import classify, patch_by_corners, patch_by_irreducibles, weak_corners
from .congruence import (
    all_congruences,
    boolean_retraction,
    chain_determination_check,
    kernel,
    prime_ideal_congruence,
    quotient,
)
from .diagram import four_cells, infer_diagram
from .enumerate import GENERATE_CEILING, Universe, brute_force_universe, canonical_form, generate_universe
from .equations import EquationSampler, algebraic_closedness_verdict
from .errors import ConfigInvalid, NotPrime
from .fixtures import b4, chain, s7
from .lattice import FiniteLattice, bits, is_chain, is_semimodular, is_slim, join_irreducibles, \
    maximal_chains, meet_irreducibles
from .maps import Category, check_morphism
from .morphism import (
    absolute_retract_verdict,
    builder_extensions,
    embeddings,
    enumerate_homs,
    find_retraction,
    fork_counterexample,
    maximality_verdict,
)


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    summary: str
    failures: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] criterion {self.number}: {self.name} -- {self.summary}"

    def to_json(self) -> dict:
        return {"criterion": self.number, "name": self.name, "passed": self.passed,
                "summary": self.summary, "failures": self.failures[:10], "stats": self.stats}


class Context:
    """Lazily built, shared universes."""

    def __init__(self, jobs: int = 1, seed: int = 0, cache_dir=None):
        self.jobs = jobs
        self.seed = seed
        self.cache_dir = cache_dir
        self._universes: dict = {}

    def universe(self, max_size: int, klass: str = "slim-semimodular") -> Universe:
        key = (max_size, klass)
        if key not in self._universes:
            big = [k for k in self._universes if k[1] == klass and k[0] >= max_size]
            if big:
                self._universes[key] = self._universes[min(big)].filtered(klass, max_size)
            else:
                self._universes[key] = generate_universe(max_size, klass, cache_dir=self.cache_dir)
        return self._universes[key]

    def map(self, fn: Callable, items: list) -> list:
        if self.jobs <= 1 or len(items) < 2:
            return [fn(x) for x in items]
        with ProcessPoolExecutor(self.jobs) as pool:
            return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * self.jobs))))


def _is_small_or_patch(L: FiniteLattice) -> bool:
    return L.n <= 2 or bool(classify(L).is_patch)


def _is_small_boolean(L: FiniteLattice) -> bool:
    return L.n <= 2 or canonical_form(L) == canonical_form(b4())


# -- criterion 1 --------------------------------------------------------------

def check_oracle_equivalence(ctx: Context, max_size: int = 8) -> CriterionResult:
    B = brute_force_universe(max_size)
    oracle = {f for f, m in B.members.items() if m.diagram is not None}
    G = ctx.universe(max_size)
    gen = set(G.members)
    per_size = {n: (sum(1 for f in oracle if f[0] == n), sum(1 for f in gen if f[0] == n))
                for n in range(1, max_size + 1)}
    failures = [{"missing": len(oracle - gen), "extra": len(gen - oracle)}] if oracle != gen else []
    counts = ", ".join(f"{n}:{a}" for n, (a, _) in per_size.items())
    return CriterionResult(1, "structure theorems vs brute force", not failures,
                           f"n<={max_size}, {len(B)} lattices, slim semimodular per size {counts}",
                           failures, {"per_size": per_size, "all_lattices": len(B)})


# -- criterion 2 --------------------------------------------------------------

def random_diagram(rng: random.Random, max_size: int = 14):
    """A random diagram reached from a random grid by forks and corner moves."""
    grids = [(p, q) for p in range(1, max_size) for q in range(1, max_size)
             if (p + 1) * (q + 1) <= max_size]
    D = grid(*rng.choice(grids))
    for _ in range(rng.randrange(0, 8)):
        moves = []
        for c in four_cells(D):
            moves.append(("fork", c))
        for u in range(D.n):
            if corner_check(D, u) is None:
                moves.append(("rm", u))
        for side, z in corner_positions(D):
            moves.append(("add", (side, z)))
        rng.shuffle(moves)
        for kind, arg in moves:
            if kind == "fork":
                E = add_fork(D, arg)[0]
            elif kind == "rm":
                E = remove_corner(D, arg)
            else:
                E = add_corner(D, *arg)
            if E is not None and E.n <= max_size:
                D = E
                break
    return D


def check_fork_closure(ctx: Context, samples: int = 1000, max_size: int = 14) -> CriterionResult:
    rng = random.Random(ctx.seed)
    failures = []
    tried = 0
    while tried < samples:
        D = random_diagram(rng, max_size)
        cells = four_cells(D)
        if not cells:
            continue
        cell = rng.choice(cells)
        tried += 1
        K, rec = add_fork(D, cell)
        L2 = K.lattice
        old_mir = {rec.new_of_old[x] for x in meet_irreducibles(D.lattice)}
        new_mir = set(meet_irreducibles(L2))
        ok = (bool(is_slim(L2)) and bool(is_semimodular(L2))
              and new_mir == old_mir | {rec.m} and rec.m not in old_mir
              and len(L2.lower[rec.m]) == 2
              and L2.length == D.lattice.length + 1
              and L2.n == D.n + rec.added)
        if not ok:
            failures.append({"diagram": D.to_json(), "cell": list(cell)})
    return CriterionResult(2, "fork closure", not failures,
                           f"{tried} random (diagram, cell) pairs within {max_size} elements, "
                           f"{len(failures)} failures", failures)


# -- criterion 3 --------------------------------------------------------------

def _thm_main_row(member_json):
    from .diagram import PlanarDiagram
    L = FiniteLattice.from_json(member_json)
    D = PlanarDiagram(L, member_json["upper_order"])
    return L, D


def _thm_main_one(args):
    member_json, others = args
    L, D = _thm_main_row(member_json)
    U = [FiniteLattice.from_json(o) for o in others]
    ext = builder_extensions(D)
    expected = _is_small_or_patch(L)
    maximal = maximality_verdict(L, None, U + ext)
    ar = absolute_retract_verdict(L, None, Category.LEN, U + ext)
    witness = proper_extension_witness(D)
    in_u_only = maximality_verdict(L, None, U)
    return {
        "n": L.n, "covers": [list(p) for p in L.covers],
        "expected": expected, "maximal": maximal.holds, "ar": ar.holds,
        "witness_maximal": witness == "maximal",
        "boundary_only": in_u_only.holds and not maximal.holds,
    }


def check_theorem_main(ctx: Context, max_size: int = 12) -> CriterionResult:
    U = ctx.universe(max_size)
    all_json = [m.lattice.to_json() for m in U]
    rows = ctx.map(_thm_main_one, [(m.to_json(), all_json) for m in U])
    failures = [r for r in rows if not (r["expected"] == r["maximal"] == r["ar"] == r["witness_maximal"])]
    patch = sum(r["expected"] for r in rows)
    boundary = sum(r["boundary_only"] for r in rows)
    return CriterionResult(
        3, "patch = maximal = absolute retract (LEN)", not failures,
        f"{len(rows)} members up to {max_size}; {patch} patch or |L|<=2; "
        f"{boundary} non-patch members only refuted by a one-element builder extension "
        f"beyond the bound; {len(failures)} disagreements",
        failures, {"members": len(rows), "patch_or_small": patch, "boundary_extensions": boundary})


# -- criterion 4 --------------------------------------------------------------

def _rigidity_one(args):
    lj, others = args
    L = FiniteLattice.from_json(lj)
    count, bad = 0, []
    for kj in others:
        K = FiniteLattice.from_json(kj)
        for iota in enumerate_homs(L, K, Category.LEN):
            count += 1
            rho = find_retraction(iota, Category.ALL, check=False)
            if rho is not None:
                bad.append({"L": lj, "K": kj, "iota": list(iota.image), "rho": list(rho.image)})
    return count, bad


def check_retraction_rigidity(ctx: Context, max_size: int = 11) -> CriterionResult:
    U = ctx.universe(max_size)
    lats = [m.lattice for m in U]
    jobs = []
    for L in lats:
        others = [K.to_json() for K in lats if K.n > L.n and K.length == L.length]
        if others:
            jobs.append((L.to_json(), others))
    results = ctx.map(_rigidity_one, jobs)
    count = sum(c for c, _ in results)
    failures = [b for _, bad in results for b in bad]
    return CriterionResult(4, "no homomorphic retraction of a proper LEN-embedding", not failures,
                           f"{count} proper length-preserving embeddings between members up to "
                           f"{max_size}; {len(failures)} with a retraction", failures,
                           {"embeddings": count})


# -- criterion 5 --------------------------------------------------------------

def _prop_zo_b(args):
    member_json = args
    L, D = _thm_main_row(member_json)
    out = {"n": L.n, "covers": [list(p) for p in L.covers], "patch": False,
           "found": False, "fork_ok": None}
    report = classify(L, D)
    out["patch"] = bool(report.is_patch)
    if report.is_patch and L.n >= 5:
        found = fork_counterexample(D)
        if found is not None:
            _, iota = found
            out["fork_ok"] = find_retraction(iota, Category.ZO) is None
            out["found"] = out["fork_ok"]
        else:
            out["fork_ok"] = False
    if not out["found"]:
        w = proper_extension_witness(D)
        if w != "maximal" and find_retraction(w.embedding, Category.ZO) is None:
            out["found"] = True
    return out


def check_prop_zo(ctx: Context, max_size: int = 11, small: int = 9) -> CriterionResult:
    U = ctx.universe(max_size)
    lats = [m.lattice for m in U]
    failures = []
    checked_a = {}
    for name, L in (("B1", chain(1)), ("C2", chain(2)), ("B4", b4())):
        v = absolute_retract_verdict(L, None, Category.ZO, lats)
        checked_a[name] = v.checked
        if not v.holds:
            failures.append({"part": "a", "lattice": name, "iota": list(v.witness.image),
                             "target": v.witness.target.to_json()})
    rows = ctx.map(_prop_zo_b, [m.to_json() for m in U
                                if m.lattice.n <= small and not _is_small_boolean(m.lattice)])
    for r in rows:
        if not r["found"] or (r["patch"] and r["n"] >= 5 and not r["fork_ok"]):
            failures.append({"part": "b", **r})
    forks = sum(1 for r in rows if r["fork_ok"])
    return CriterionResult(
        5, "absolute retracts under {0,1}-homomorphisms", not failures,
        f"(a) B1, C2, B4 retract along all {sum(checked_a.values())} {{0,1}}-embeddings into members "
        f"up to {max_size}; (b) {len(rows)} other members up to {small} refuted, "
        f"{forks} patch member{'s' * (forks != 1)} by the fork-extension inclusion", failures,
        {"embeddings_a": checked_a, "refuted_b": len(rows), "fork_counterexamples": forks})


# -- criterion 6 --------------------------------------------------------------

def _gn_one(lj):
    L = FiniteLattice.from_json(lj)
    cons = all_congruences(L)
    bad = []
    chains = 0
    for C in maximal_chains(L):
        chains += 1
        if not chain_determination_check(L, C, cons):
            bad.append({"L": lj, "chain": list(C)})
    return len(cons), chains, bad


def check_chain_determination(ctx: Context, max_size: int = 10) -> CriterionResult:
    U = ctx.universe(max_size)
    results = ctx.map(_gn_one, [m.lattice.to_json() for m in U])
    failures = [b for _, _, bad in results for b in bad]
    cons = sum(r[0] for r in results)
    chains = sum(r[1] for r in results)
    return CriterionResult(6, "congruences are determined on a maximal chain", not failures,
                           f"{len(results)} members up to {max_size}, {cons} congruences, "
                           f"{chains} maximal chains, {len(failures)} failures", failures,
                           {"congruences": cons, "chains": chains})


# -- criterion 7 --------------------------------------------------------------

def rectangular_facts(D) -> list[str]:
    """Names of the violated rectangular facts (empty when all hold)."""
    L = D.lattice
    lc, rc = weak_corners(D)
    bad = []
    if lc is None or rc is None or L.meet(lc, rc) != 0 or L.join(lc, rc) != L.n - 1:
        return ["complementary weak corners"]
    sets = {"down lc": bits(L.down[lc]), "down rc": bits(L.down[rc]),
            "up lc": bits(L.up[lc]), "up rc": bits(L.up[rc])}
    for name, s in sets.items():
        if not is_chain(L, s):
            bad.append(f"{name} is a chain")
    mir, jir = set(meet_irreducibles(L)), set(join_irreducibles(L))
    for name in ("up lc", "up rc"):
        if not set(sets[name]) - {L.n - 1} <= mir:
            bad.append(f"{name} minus 1 inside Mir")
    for name in ("down lc", "down rc"):
        if not set(sets[name]) - {0} <= jir:
            bad.append(f"{name} minus 0 inside Jir")
    for p in set(sets["up lc"]) | set(sets["up rc"]):
        if p == L.n - 1:
            continue
        try:
            prime_ideal_congruence(L, bits(L.down[p]))
        except NotPrime:
            bad.append(f"down {p} is a prime ideal")
    if any(len(u) > 2 for u in L.upper):
        bad.append("at most two upper covers")
    return bad


def check_rectangular_facts(ctx: Context, max_size: int = 14) -> CriterionResult:
    R = ctx.universe(max_size, "rectangular")
    failures = []
    for m in R:
        bad = rectangular_facts(m.diagram)
        if bad:
            failures.append({"L": m.lattice.to_json(), "violated": bad})
    return CriterionResult(7, "rectangular lattice facts", not failures,
                           f"{len(R)} slim rectangular lattices up to {max_size}, "
                           f"{len(failures)} failures", failures, {"members": len(R)})


# -- criterion 8 --------------------------------------------------------------

def check_patch_definitions(ctx: Context, max_size: int = 12) -> CriterionResult:
    from .diagram import all_diagrams
    U = ctx.universe(max_size)
    failures = []
    tested = 0
    for m in U:
        d11 = bool(patch_by_irreducibles(m.lattice))
        for D in all_diagrams(m.lattice):
            for E in (D, D.reflect()):
                tested += 1
                if bool(patch_by_corners(E)) != d11:
                    failures.append({"L": m.lattice.to_json(), "upper_order": E.to_json()["upper_order"]})
    return CriterionResult(8, "two patch definitions agree", not failures,
                           f"{len(U)} members up to {max_size}, {tested} diagrams and reflections, "
                           f"{len(failures)} disagreements", failures, {"diagrams": tested})


# -- criterion 9 --------------------------------------------------------------

def check_boolean_retraction(ctx: Context, max_size: int = 12) -> CriterionResult:
    R = ctx.universe(max_size, "rectangular")
    B = b4()
    failures = []
    pairs = 0
    for m in R:
        K = m.diagram
        for iota in embeddings(B, K.lattice, Category.ZO):
            pairs += 1
            u, v = iota(1), iota(2)
            try:
                rho = boolean_retraction(K, u, v)
            except Exception as exc:  # any failure is a counterexample
                failures.append({"K": K.to_json(), "pair": [u, v], "error": repr(exc)})
                continue
            gamma = kernel(rho)
            Q, _ = quotient(K.lattice, gamma)
            ok = (len(set(gamma.labels)) == 4
                  and canonical_form(Q) == canonical_form(B)
                  and rho.compose(iota).is_identity()
                  and bool(check_morphism(rho, Category.ZO)))
            if not ok:
                failures.append({"K": K.to_json(), "pair": [u, v]})
    return CriterionResult(9, "four-block retraction onto B4", not failures,
                           f"{len(R)} rectangular lattices up to {max_size}, {pairs} embeddings of B4, "
                           f"{len(failures)} failures", failures, {"embeddings": pairs})


# -- criterion 10 -------------------------------------------------------------

def _closed_one(args):
    member_json, others, cat_name, pool, unknowns = args
    L, D = _thm_main_row(member_json)
    U = [FiniteLattice.from_json(o) for o in others]
    cat = Category.parse(cat_name)
    extra = builder_extensions(D)
    if cat is Category.ZO:
        extra += [add_fork(D, c)[0].lattice for c in four_cells(D)]
        codomains = extra + U
    else:
        codomains = U + extra
    v = algebraic_closedness_verdict(L, codomains, cat, EquationSampler(pool, unknowns))
    size = len(v.counterexample.system.equations) if v.counterexample else None
    return {"n": L.n, "covers": [list(p) for p in L.covers], "closed": v.holds, "system_size": size}


def closedness_rows(ctx: Context, cat, max_size: int = 10, pool: str = "all", unknowns: int = 2):
    U = ctx.universe(max_size)
    all_json = [m.lattice.to_json() for m in U]
    name = Category.parse(cat).value
    return ctx.map(_closed_one, [(m.to_json(), all_json, name, pool, unknowns) for m in U])


def check_algebraic_closedness(ctx: Context, max_size: int = 10, cats=None) -> CriterionResult:
    failures = []
    stats = {}
    wanted = {Category.parse(c) for c in cats} if cats else {Category.LEN, Category.ZO}
    for cat, expect in ((Category.LEN, _is_small_or_patch), (Category.ZO, _is_small_boolean)):
        if cat not in wanted:
            continue
        rows = closedness_rows(ctx, cat, max_size)
        closed = 0
        sizes = []
        for r in rows:
            L = FiniteLattice.from_json(r)
            closed += r["closed"]
            if r["system_size"] is not None:
                sizes.append(r["system_size"])
            if r["closed"] != expect(L):
                failures.append({"cat": cat.value, **r})
        stats[cat.value] = {"closed": closed, "members": len(rows),
                            "max_counterexample_equations": max(sizes) if sizes else None}
    parts = ", ".join(f"{c.upper()} closed {v['closed']}/{v['members']}" for c, v in stats.items())
    largest = max(v["max_counterexample_equations"] or 0 for v in stats.values())
    return CriterionResult(
        10, "algebraic closedness by sampled equations", not failures,
        f"members up to {max_size}: {parts}; largest minimized counterexample has {largest} equations",
        failures, stats)


# -- criterion 11 -------------------------------------------------------------

def check_fixtures(ctx: Context) -> CriterionResult:
    from .builders import chain_diagram
    failures = []
    B = grid(1, 1)
    S, _ = add_fork(B, four_cells(B)[0])
    if canonical_form(S.lattice) != canonical_form(s7()):
        failures.append("add_fork(B4) is not S7")
    if canonical_form(remove_corner(B, 1).lattice) != canonical_form(chain(3)):
        failures.append("remove_corner(B4, a) is not C3")
    E = add_corner(chain_diagram(3), "left", 1)
    if E is None or canonical_form(E.lattice) != canonical_form(b4()):
        failures.append("add_corner(C3, left, 1) is not B4")
    rho = boolean_retraction(infer_diagram(s7()), 3, 5)
    # blocks {0}, {zl, l}, {zr, r}, {m, 1}
    if rho.image != (0, 1, 2, 1, 3, 2, 3):
        failures.append(f"boolean_retraction(S7, l, r) = {list(rho.image)}")
    return CriterionResult(11, "fixture regressions", not failures,
                           f"4 fixtures, {len(failures)} mismatches", failures)


# -- suites -------------------------------------------------------------------

SUITES = {
    "thm-main": [(3, check_theorem_main), (4, check_retraction_rigidity), (8, check_patch_definitions)],
    "prop-zo": [(5, check_prop_zo), (9, check_boolean_retraction)],
    "cor-closed": [(10, check_algebraic_closedness)],
    "lemmas-sec2": [(1, check_oracle_equivalence), (2, check_fork_closure),
                    (6, check_chain_determination), (7, check_rectangular_facts),
                    (11, check_fixtures)],
}

# default bound per criterion, and the most a --max-size override may raise it to
DEFAULT_BOUNDS = {1: 8, 3: 12, 4: 11, 5: 11, 6: 10, 7: 14, 8: 12, 9: 12, 10: 10}
CEILINGS = {1: 8, 3: 14, 4: 14, 5: 14, 6: 12, 7: 14, 8: 14, 9: 14, 10: 12}


def run_suite(name: str, max_size: int | None = None, ctx: Context | None = None,
              cat=None) -> list[CriterionResult]:
    """Run one suite.  ``max_size`` overrides every size bound of the suite
    (clamped to each criterion's ceiling); ``cat`` restricts criterion 10."""
    if name not in SUITES:
        raise ConfigInvalid(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    if max_size is not None and not 1 <= max_size <= GENERATE_CEILING:
        raise ConfigInvalid(f"--max-size must lie in 1..{GENERATE_CEILING}, got {max_size}")
    ctx = ctx or Context()
    out = []
    for number, fn in SUITES[name]:
        if number in (2, 11):
            out.append(fn(ctx))
            continue
        bound = DEFAULT_BOUNDS[number] if max_size is None else min(max_size, CEILINGS[number])
        if number == 10 and cat is not None:
            out.append(fn(ctx, bound, cats=[cat]))
        else:
            out.append(fn(ctx, bound))
    return out
