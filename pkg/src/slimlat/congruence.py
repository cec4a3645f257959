"""Congruences, quotients and the retractions onto B4 and C2."""

from __future__ import annotations

from typing import Iterable

from .diagram import PlanarDiagram
from .errors import (
    ClassificationFailed,
    InternalValidationFailed,
    NotComplementaryPair,
    NotMaximalChain,
    NotPrime,
    NotRectangular,
    SizeBoundExceeded,
)
from .lattice import ElementSubset, FiniteLattice, is_maximal_chain, lattice_from_order, mask_of
from .maps import Category, LatticeMap, check_morphism

DEFAULT_MAX_SIZE = 12


class Congruence:
    """An equivalence on ``0..n-1`` stored as ``labels[x] = min`` of its block."""

    __slots__ = ("lattice", "labels")

    def __init__(self, lattice: FiniteLattice, labels: Iterable[int]):
        self.lattice = lattice
        self.labels = _canonical(list(labels))

    @classmethod
    def from_blocks(cls, lattice: FiniteLattice, blocks) -> "Congruence":
        labels = [-1] * lattice.n
        for b in blocks:
            for x in b:
                labels[x] = min(b)
        if -1 in labels:
            raise ValueError("blocks do not cover every element")
        return cls(lattice, labels)

    @classmethod
    def diagonal(cls, L: FiniteLattice) -> "Congruence":
        return cls(L, range(L.n))

    @classmethod
    def full(cls, L: FiniteLattice) -> "Congruence":
        return cls(L, [0] * L.n)

    def __eq__(self, other) -> bool:
        return isinstance(other, Congruence) and self.labels == other.labels \
            and self.lattice == other.lattice

    def __hash__(self) -> int:
        return hash(self.labels)

    def __repr__(self) -> str:
        return f"Congruence({self.blocks()})"

    def related(self, x: int, y: int) -> bool:
        return self.labels[x] == self.labels[y]

    def blocks(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for x, b in enumerate(self.labels):
            out.setdefault(b, []).append(x)
        return [out[k] for k in sorted(out)]

    def block_of(self, x: int) -> list[int]:
        b = self.labels[x]
        return [y for y in range(len(self.labels)) if self.labels[y] == b]

    def restrict(self, elements) -> tuple:
        """Restriction to a subset, as a canonical partition of it."""
        els = sorted(elements)
        seen: dict[int, int] = {}
        return tuple(seen.setdefault(self.labels[x], i) for i, x in enumerate(els))

    def join(self, other: "Congruence") -> "Congruence":
        uf = _UnionFind(self.lattice.n)
        for lab in (self.labels, other.labels):
            for x, b in enumerate(lab):
                uf.union(x, b)
        return Congruence(self.lattice, [uf.find(x) for x in range(self.lattice.n)])

    def meet(self, other: "Congruence") -> "Congruence":
        pairs: dict[tuple[int, int], int] = {}
        return Congruence(self.lattice, [pairs.setdefault((a, b), x)
                                         for x, (a, b) in enumerate(zip(self.labels, other.labels))])

    def leq(self, other: "Congruence") -> bool:
        return all(other.labels[x] == other.labels[b] for x, b in enumerate(self.labels))

    @property
    def is_diagonal(self) -> bool:
        return self.labels == tuple(range(len(self.labels)))

    @property
    def is_full(self) -> bool:
        return all(b == 0 for b in self.labels)

    def to_json(self) -> dict:
        return {"blocks": self.blocks()}


def _canonical(labels: list[int]) -> tuple:
    first: dict[int, int] = {}
    for x, b in enumerate(labels):
        first.setdefault(b, x)
    return tuple(first[b] for b in labels)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if ry < rx:
            rx, ry = ry, rx
        self.parent[ry] = rx
        return True


def is_congruence(L: FiniteLattice, labels) -> bool:
    lab = list(labels)
    for x in range(L.n):
        for y in range(x + 1, L.n):
            if lab[x] != lab[y]:
                continue
            for z in range(L.n):
                if lab[L.meet_table[x][z]] != lab[L.meet_table[y][z]]:
                    return False
                if lab[L.join_table[x][z]] != lab[L.join_table[y][z]]:
                    return False
    return True


def generated_congruence(L: FiniteLattice, pairs) -> Congruence:
    """Least congruence containing the given pairs."""
    uf = _UnionFind(L.n)
    queue = list(pairs)
    M, J = L.meet_table, L.join_table
    while queue:
        x, y = queue.pop()
        if not uf.union(x, y):
            continue
        mx, my, jx, jy = M[x], M[y], J[x], J[y]
        for z in range(L.n):
            if mx[z] != my[z]:
                queue.append((mx[z], my[z]))
            if jx[z] != jy[z]:
                queue.append((jx[z], jy[z]))
    return Congruence(L, [uf.find(x) for x in range(L.n)])


def principal_congruence(L: FiniteLattice, a: int, b: int) -> Congruence:
    return generated_congruence(L, [(a, b)])


def all_congruences(L: FiniteLattice, max_size: int = DEFAULT_MAX_SIZE) -> list[Congruence]:
    """Every congruence, sorted by number of blocks (descending) then labels."""
    if L.n > max_size:
        raise SizeBoundExceeded(f"{L.n} elements exceed the bound {max_size}", L.n)
    principal = list({principal_congruence(L, x, y) for x, y in L.covers})
    found = {Congruence.diagonal(L)}
    frontier = list(found)
    while frontier:
        nxt = []
        for theta in frontier:
            for p in principal:
                j = theta.join(p)
                if j not in found:
                    found.add(j)
                    nxt.append(j)
        frontier = nxt
    return sorted(found, key=lambda c: (-len(set(c.labels)), c.labels))


def quotient(L: FiniteLattice, theta: Congruence) -> tuple[FiniteLattice, LatticeMap]:
    reps = sorted(set(theta.labels))
    index = {b: i for i, b in enumerate(reps)}
    k = len(reps)
    ups = [0] * k
    for i, a in enumerate(reps):
        for j, b in enumerate(reps):
            if theta.labels[L.join(a, b)] == b:
                ups[i] |= 1 << j
    Q = lattice_from_order(k, ups)
    proj = LatticeMap(L, Q, tuple(index[b] for b in theta.labels))
    return Q, proj


def kernel(f: LatticeMap) -> Congruence:
    first: dict[int, int] = {}
    return Congruence(f.source, [first.setdefault(v, x) for x, v in enumerate(f.image)])


def chain_determination_check(L: FiniteLattice, C, congruences=None) -> bool:
    elements = sorted(C)
    if not is_maximal_chain(L, elements):
        raise NotMaximalChain(f"{elements} is not a maximal chain", elements)
    cons = congruences if congruences is not None else all_congruences(L, max(L.n, DEFAULT_MAX_SIZE))
    restricted = {c.restrict(elements) for c in cons}
    return len(restricted) == len(set(cons))


def prime_ideal_congruence(L: FiniteLattice, I) -> Congruence:
    members = frozenset(I)
    m = mask_of(members)
    if not members:
        raise NotPrime("the empty set is not an ideal", None)
    for x in members:
        if L.down[x] & ~m:
            raise NotPrime(f"{sorted(members)} is not down-closed at {x}", ("down", x))
    outside = [x for x in range(L.n) if x not in members]
    if not outside:
        raise NotPrime("an ideal equal to the whole lattice is not prime", None)
    for x in members:
        for y in members:
            if L.join(x, y) not in members:
                raise NotPrime(f"{x} v {y} leaves the ideal", ("join", x, y))
    for x in outside:
        for y in outside:
            if L.meet(x, y) in members:
                raise NotPrime(f"{x} ^ {y} = {L.meet(x, y)} falls into the ideal", ("meet", x, y))
    return Congruence(L, [0 if x in members else outside[0] for x in range(L.n)])


def _corners(K: PlanarDiagram):
    from .classify import is_rectangular, weak_corners
    if not is_rectangular(K):
        raise NotRectangular("the retraction needs a slim rectangular diagram")
    return weak_corners(K)


def _down(L: FiniteLattice, x: int) -> ElementSubset:
    from .lattice import bits
    return ElementSubset(frozenset(bits(L.down[x])), "ideal", True)


def boolean_retraction(K: PlanarDiagram, u_hat: int, v_hat: int) -> LatticeMap:
    """Four-block {0,1}-homomorphism ``K -> B4`` sending ``u_hat`` to ``a``
    (index 1) and ``v_hat`` to ``b`` (index 2)."""
    from .fixtures import b4
    L = K.lattice
    if L.meet(u_hat, v_hat) != 0 or L.join(u_hat, v_hat) != L.n - 1 \
            or {u_hat, v_hat} & {0, L.n - 1}:
        raise NotComplementaryPair(
            f"{u_hat} and {v_hat} are not complementary elements outside {{0, 1}}"
            f" (meet {L.meet(u_hat, v_hat)}, join {L.join(u_hat, v_hat)})", (u_hat, v_hat))
    lc, rc = _corners(K)
    I, J = _down(L, lc), _down(L, rc)
    alpha = prime_ideal_congruence(L, I)
    beta = prime_ideal_congruence(L, J)
    gamma = alpha.meet(beta)
    if len(set(gamma.labels)) != 4:
        raise ClassificationFailed(f"gamma has {len(set(gamma.labels))} blocks, expected 4", gamma)
    placed = [(u in I, u in J) for u in (u_hat, v_hat)]
    if placed not in ([(True, False), (False, True)], [(False, True), (True, False)]):
        raise ClassificationFailed("the pair does not separate the two prime ideals", placed)
    target = {gamma.labels[0]: 0, gamma.labels[L.n - 1]: 3,
              gamma.labels[u_hat]: 1, gamma.labels[v_hat]: 2}
    if len(target) != 4:
        raise ClassificationFailed("0, 1, u and v are not in distinct blocks", target)
    rho = LatticeMap(L, b4(), tuple(target[b] for b in gamma.labels))
    ok = check_morphism(rho, Category.ZO)
    if not ok:
        raise InternalValidationFailed(f"four-block map is not a homomorphism: {ok.witness}", ok.witness)
    return rho


def two_block_retraction(K: PlanarDiagram, side: str = "left") -> LatticeMap:
    """``x -> 0`` on the down-set of a weak corner, ``1`` elsewhere."""
    from .fixtures import chain
    L = K.lattice
    lc, rc = _corners(K)
    I = _down(L, lc if side == "left" else rc)
    alpha = prime_ideal_congruence(L, I)
    rho = LatticeMap(L, chain(2), tuple(0 if x in I else 1 for x in range(L.n)))
    if not check_morphism(rho, Category.ZO) or len(set(alpha.labels)) != 2:
        raise InternalValidationFailed("two-block map is not a {0,1}-homomorphism")
    return rho
