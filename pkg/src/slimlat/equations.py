"""Lattice equations with parameters, and bounded algebraic-closedness search.

A term is a nested tuple: ``("x", i)`` is unknown ``i``, ``("a", j)`` is
parameter ``j``, and ``("meet", s, t)`` / ``("join", s, t)`` combine terms.

Searching every system of bounded depth literally is hopeless (there are
about 10^8 terms of depth 3 in five letters).  The search below is exact
for the sampled family anyway.  Fix an embedding ``iota: L -> K`` and a
candidate solution ``k`` in ``K``.  Some system whose image is solved by
``k`` has no solution in ``L`` iff the set of *all* equations of depth
at most ``d`` true at ``k`` has none.  That set is equivalent to a small
layered system: one representative term per value reached at each depth,
and one equation ``op(rep a, rep b) = rep(a op b)`` per pair of values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .errors import BudgetExceeded
from .lattice import FiniteLattice, doubly_irreducibles
from .maps import Category, LatticeMap

DEFAULT_BUDGET = 2_000_000


# -- terms and systems --------------------------------------------------------

def var(i: int) -> tuple:
    return ("x", i)


def par(j: int) -> tuple:
    return ("a", j)


def meet(s, t) -> tuple:
    return ("meet", s, t)


def join(s, t) -> tuple:
    return ("join", s, t)


def evaluate(L: FiniteLattice, term, params: Sequence[int], values: Sequence[int]) -> int:
    kind = term[0]
    if kind == "x":
        return values[term[1]]
    if kind == "a":
        return params[term[1]]
    s = evaluate(L, term[1], params, values)
    t = evaluate(L, term[2], params, values)
    return L.meet_table[s][t] if kind == "meet" else L.join_table[s][t]


def depth(term) -> int:
    return 0 if term[0] in ("x", "a") else 1 + max(depth(term[1]), depth(term[2]))


def render(term, names=None) -> str:
    kind = term[0]
    if kind == "x":
        return f"x{term[1] + 1}"
    if kind == "a":
        return names[term[1]] if names else f"a{term[1] + 1}"
    op = " ^ " if kind == "meet" else " v "
    return "(" + render(term[1], names) + op + render(term[2], names) + ")"


def _letters(term, kind: str) -> set[int]:
    if term[0] == kind:
        return {term[1]}
    if term[0] in ("x", "a"):
        return set()
    return _letters(term[1], kind) | _letters(term[2], kind)


@dataclass(frozen=True)
class EquationSystem:
    arena: FiniteLattice
    parameters: tuple
    unknowns: int
    equations: tuple  # pairs of terms

    def __post_init__(self):
        for s, t in self.equations:
            for term in (s, t):
                if any(i >= self.unknowns for i in _letters(term, "x")):
                    raise ValueError("term uses an undeclared unknown")
                if any(j >= len(self.parameters) for j in _letters(term, "a")):
                    raise ValueError("term uses an undeclared parameter")

    def image(self, mu: LatticeMap) -> "EquationSystem":
        return EquationSystem(mu.target, tuple(mu(a) for a in self.parameters),
                              self.unknowns, self.equations)

    def holds(self, values: Sequence[int]) -> bool:
        return all(evaluate(self.arena, s, self.parameters, values)
                   == evaluate(self.arena, t, self.parameters, values)
                   for s, t in self.equations)

    def without(self, index: int) -> "EquationSystem":
        eqs = self.equations[:index] + self.equations[index + 1:]
        return EquationSystem(self.arena, self.parameters, self.unknowns, eqs)

    def to_json(self) -> dict:
        return {"parameters": list(self.parameters), "unknowns": self.unknowns,
                "equations": [f"{render(s)} = {render(t)}" for s, t in self.equations]}


def solve_equations(L: FiniteLattice, system: EquationSystem,
                    budget: int = DEFAULT_BUDGET) -> tuple | None:
    if system.arena != L:
        system = EquationSystem(L, system.parameters, system.unknowns, system.equations)
    if L.n ** system.unknowns > budget:
        raise BudgetExceeded(f"{L.n}^{system.unknowns} assignments exceed the budget {budget}")
    for values in product(range(L.n), repeat=system.unknowns):
        if system.holds(values):
            return values
    return None


# -- bounded closedness search ------------------------------------------------

@dataclass(frozen=True)
class EquationSampler:
    """The family of sampled systems: parameters from ``pool``
    (``"all"`` = every element, ``"dirr"`` = doubly irreducibles with 0
    and 1), at most ``unknowns`` unknowns, term depth at most ``depth``.

    The narrow ``"dirr"`` pool does not separate the classes: C2 x C3 is
    closed for it although it is not a patch lattice.
    """

    pool: str = "all"
    unknowns: int = 2
    depth: int = 3

    def parameters(self, L: FiniteLattice) -> tuple:
        if self.pool == "all":
            return tuple(range(L.n))
        if self.pool == "dirr":
            return tuple(sorted({0, L.n - 1, *doubly_irreducibles(L)}))
        raise ValueError(f"unknown parameter pool {self.pool!r}")


class _Compiled:
    """Layered system of all depth-bounded equations true at one point of K."""

    def __init__(self, K: FiniteLattice, leaves: Sequence[int], max_depth: int):
        self.leaves = list(leaves)
        index: dict[int, int] = {}
        self.values: list[int] = []
        self.defs: list = []
        self.leaf_eqs = []
        for i, w in enumerate(leaves):
            if w in index:
                self.leaf_eqs.append((i, index[w]))
            else:
                index[w] = len(self.values)
                self.values.append(w)
                self.defs.append(("leaf", i))
        self.layers = []  # per depth: (new defs, checks)
        for _ in range(max_depth):
            cur = len(self.values)
            checks = []
            for op, table in (("meet", K.meet_table), ("join", K.join_table)):
                for i in range(cur):
                    for j in range(i + 1, cur):
                        w = table[self.values[i]][self.values[j]]
                        if w not in index:
                            index[w] = len(self.values)
                            self.values.append(w)
                            self.defs.append((op, i, j))
                        else:
                            checks.append((op, i, j, index[w]))
            self.layers.append(checks)
            if len(self.values) == cur:
                break
        self.index = index

    def solvable_in(self, L: FiniteLattice, params: Sequence[int], unknowns: int) -> bool:
        points = np.array(list(product(range(L.n), repeat=unknowns)), dtype=np.int64)
        meet_t = np.array(L.meet_table, dtype=np.int64)
        join_t = np.array(L.join_table, dtype=np.int64)
        leaf_vals = [np.full(len(points), p, dtype=np.int64) for p in params]
        leaf_vals += [points[:, i] for i in range(unknowns)]
        ok = np.ones(len(points), dtype=bool)
        for i, j in self.leaf_eqs:
            ok &= leaf_vals[i] == leaf_vals[j]
        vals: list = []
        for d in self.defs:
            if d[0] == "leaf":
                vals.append(leaf_vals[d[1]])
            else:
                t = meet_t if d[0] == "meet" else join_t
                vals.append(t[vals[d[1]], vals[d[2]]])
        for checks in self.layers:
            for op, i, j, w in checks:
                t = meet_t if op == "meet" else join_t
                ok &= t[vals[i], vals[j]] == vals[w]
                if not ok.any():
                    return False
        return bool(ok.any())

    def system(self, L: FiniteLattice, params: Sequence[int], unknowns: int) -> EquationSystem:
        m = len(params)

        def leaf(i):
            return par(i) if i < m else var(i - m)

        reps: list = []
        for d in self.defs:
            if d[0] == "leaf":
                reps.append(leaf(d[1]))
            else:
                reps.append((d[0], reps[d[1]], reps[d[2]]))
        eqs = [(leaf(i), leaf(j)) for i, j in self.leaf_eqs]
        eqs += [((op, reps[i], reps[j]), reps[w]) for checks in self.layers
                for op, i, j, w in checks]
        # definitions are equations too, but trivially satisfied by the reps
        return EquationSystem(L, tuple(params), unknowns, tuple(eqs))


def minimize_system(L: FiniteLattice, system: EquationSystem) -> EquationSystem:
    """Greedily drop equations while the system stays unsolvable in ``L``."""
    i = 0
    while i < len(system.equations):
        smaller = system.without(i)
        if solve_equations(L, smaller) is None:
            system = smaller
        else:
            i += 1
    return system


@dataclass
class ClosednessCounterexample:
    system: EquationSystem
    embedding: LatticeMap
    solution_in_target: tuple

    def to_json(self) -> dict:
        return {"system": self.system.to_json(), "target": self.embedding.target.to_json(),
                "embedding": list(self.embedding.image),
                "solution_in_target": list(self.solution_in_target)}


def transfer_failure(iota: LatticeMap, sampler: EquationSampler = EquationSampler(),
                     minimize: bool = True) -> ClosednessCounterexample | None:
    """A sampled system solvable in the target but not in the source."""
    L, K = iota.source, iota.target
    params = sampler.parameters(L)
    image = set(iota.image)
    for u in range(1, sampler.unknowns + 1):
        for k in product(range(K.n), repeat=u):
            if all(v in image for v in k):
                continue  # pulled back along the embedding
            comp = _Compiled(K, [iota(a) for a in params] + list(k), sampler.depth)
            if not comp.solvable_in(L, params, u):
                system = comp.system(L, params, u)
                if minimize:
                    system = minimize_system(L, system)
                return ClosednessCounterexample(system, iota, tuple(k))
    return None


@dataclass
class ClosednessVerdict:
    holds: bool
    label: str
    counterexample: ClosednessCounterexample | None = None
    checked: int = 0
    skipped_by_retraction: int = 0
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        return {"holds": self.holds, "verdict": self.label,
                "counterexample": self.counterexample.to_json() if self.counterexample else None,
                "checked": self.checked, "skipped_by_retraction": self.skipped_by_retraction}


def algebraic_closedness_verdict(L: FiniteLattice, codomains: Iterable[FiniteLattice], cat=Category.LEN,
                                 sampler: EquationSampler = EquationSampler(),
                                 embeddings_of=None) -> ClosednessVerdict:
    """``closed-in-sample`` unless some monomorphism ``L -> K`` (``K`` among
    ``codomains``) and sampled system fail to transfer back.

    When the embedding has a retraction that is merely a lattice
    homomorphism, solutions pull back along it, so such embeddings are
    skipped without searching.
    """
    from .morphism import embeddings, find_retraction
    cat = Category.parse(cat)
    checked = skipped = 0
    for K in codomains:
        maps = embeddings_of(K) if embeddings_of else embeddings(L, K, cat)
        for iota in maps:
            checked += 1
            if find_retraction(iota, Category.ALL, check=False) is not None:
                skipped += 1
                continue
            cex = transfer_failure(iota, sampler)
            if cex is not None:
                return ClosednessVerdict(False, "counterexample", cex, checked, skipped)
    return ClosednessVerdict(True, "closed-in-sample", None, checked, skipped)


def complement_system(L: FiniteLattice, a: int) -> EquationSystem:
    """``a v x = 1`` and ``a ^ x = 0``."""
    return EquationSystem(L, (a, 0, L.n - 1), 1,
                          ((join(par(0), var(0)), par(2)), (meet(par(0), var(0)), par(1))))


