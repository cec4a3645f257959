"""Finite lattices on dense integer elements.

Elements are ``0 .. n-1`` listed in a linear extension of the order, so the
bottom is ``0`` and the top is ``n-1``.  Order relations are stored as
bitsets (Python ints): bit ``y`` of ``up[x]`` is set iff ``x <= y``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, NamedTuple

from .errors import (
    IndexOutOfRange,
    LatticeError,
    NoBounds,
    NotALattice,
    NotLinearExtension,
    NotReduced,
)


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for x in elements:
        m |= 1 << x
    return m


class Check(NamedTuple):
    """Boolean verdict with an optional witness of failure."""

    ok: bool
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok


class FiniteLattice:
    """An immutable finite lattice given by its covering relation.

    Construction validates the input and precomputes the order bitsets,
    meet/join tables and heights.  Use :func:`build_lattice` or call the
    class directly.
    """

    __slots__ = (
        "n", "covers", "upper", "lower", "up", "down",
        "meet_table", "join_table", "height", "_cover_set", "_hash",
    )

    def __init__(self, n: int, covers: Iterable[tuple[int, int]]):
        if not isinstance(n, int) or n < 1:
            raise LatticeError(f"element count must be a positive integer, got {n!r}")
        pairs = sorted({(int(x), int(y)) for x, y in covers})
        upper: list[list[int]] = [[] for _ in range(n)]
        lower: list[list[int]] = [[] for _ in range(n)]
        for x, y in pairs:
            if not (0 <= x < n and 0 <= y < n):
                raise IndexOutOfRange(f"cover pair {(x, y)} out of range for n={n}", (x, y))
            if x >= y:
                raise NotLinearExtension(
                    f"cover pair {(x, y)} violates the linear-extension convention", (x, y))
            upper[x].append(y)
            lower[y].append(x)

        up = [0] * n
        for x in range(n - 1, -1, -1):
            m = 1 << x
            for y in upper[x]:
                m |= up[y]
            up[x] = m
        for x in range(n):
            for y in upper[x]:
                for z in upper[x]:
                    if z != y and (up[z] >> y) & 1:
                        raise NotReduced(f"cover pair {(x, y)} is implied via {z}", (x, y))

        minimal = [x for x in range(n) if not lower[x]]
        maximal = [x for x in range(n) if not upper[x]]
        if len(minimal) > 1:
            raise NoBounds(f"several minimal elements {minimal}", tuple(minimal[:2]))
        if len(maximal) > 1:
            raise NoBounds(f"several maximal elements {maximal}", tuple(maximal[:2]))

        down = [0] * n
        for y in range(n):
            m = 1 << y
            for x in lower[y]:
                m |= down[x]
            down[y] = m

        meet = [[0] * n for _ in range(n)]
        join = [[0] * n for _ in range(n)]
        for x in range(n):
            for y in range(x, n):
                common = down[x] & down[y]
                m = common.bit_length() - 1
                if common & ~down[m]:
                    raise NotALattice(f"elements {x} and {y} have no meet", (x, y))
                common = up[x] & up[y]
                j = (common & -common).bit_length() - 1
                if common & ~up[j]:
                    raise NotALattice(f"elements {x} and {y} have no join", (x, y))
                meet[x][y] = meet[y][x] = m
                join[x][y] = join[y][x] = j

        height = [0] * n
        for y in range(n):
            if lower[y]:
                height[y] = 1 + max(height[x] for x in lower[y])

        self.n = n
        self.covers = tuple(pairs)
        self.upper = tuple(tuple(u) for u in upper)
        self.lower = tuple(tuple(d) for d in lower)
        self.up = tuple(up)
        self.down = tuple(down)
        self.meet_table = tuple(tuple(r) for r in meet)
        self.join_table = tuple(tuple(r) for r in join)
        self.height = tuple(height)
        self._cover_set = frozenset(pairs)
        self._hash = hash((n, self.covers))

    # basic queries
    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return self.n - 1

    @property
    def length(self) -> int:
        return self.height[self.n - 1]

    def __len__(self) -> int:
        return self.n

    def leq(self, x: int, y: int) -> bool:
        return bool((self.up[x] >> y) & 1)

    def meet(self, x: int, y: int) -> int:
        return self.meet_table[x][y]

    def join(self, x: int, y: int) -> int:
        return self.join_table[x][y]

    def is_cover(self, x: int, y: int) -> bool:
        return (x, y) in self._cover_set

    def elements(self) -> range:
        return range(self.n)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteLattice):
            return NotImplemented
        return self.n == other.n and self.covers == other.covers

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"FiniteLattice(n={self.n}, covers={list(self.covers)})"

    def to_json(self) -> dict:
        return {"n": self.n, "covers": [list(p) for p in self.covers]}

    @classmethod
    def from_json(cls, data: dict) -> "FiniteLattice":
        return cls(data["n"], [tuple(p) for p in data["covers"]])


def build_lattice(n: int, covers: Iterable[tuple[int, int]]) -> FiniteLattice:
    return FiniteLattice(n, covers)


def lattice_from_order(n: int, leq_masks: list[int]) -> FiniteLattice:
    """Build from up-set bitsets of an order on ``0..n-1`` already in a
    linear extension; the covering relation is the transitive reduction."""
    covers = []
    for x in range(n):
        strict = leq_masks[x] & ~(1 << x)
        for y in bits(strict):
            if not any((leq_masks[z] >> y) & 1 for z in bits(strict & ~(1 << y))):
                covers.append((x, y))
    return FiniteLattice(n, covers)


def relabel(n: int, covers: Iterable[tuple[int, int]], tiebreak=None) -> tuple[FiniteLattice, list[int]]:
    """Relabel an arbitrary finite DAG (given by covers on ``0..n-1``) into
    a linear extension ordered by (longest-chain height, tiebreak, old id).

    Returns the lattice and ``new_of_old``.
    """
    covers = list(covers)
    ups = [[] for _ in range(n)]
    indeg = [0] * n
    for x, y in covers:
        ups[x].append(y)
        indeg[y] += 1
    height = [0] * n
    stack = [x for x in range(n) if indeg[x] == 0]
    order = []
    while stack:
        x = stack.pop()
        order.append(x)
        for y in ups[x]:
            height[y] = max(height[y], height[x] + 1)
            indeg[y] -= 1
            if indeg[y] == 0:
                stack.append(y)
    if len(order) != n:
        raise NotALattice("covering relation has a cycle")
    key = (lambda x: (height[x], tiebreak(x), x)) if tiebreak else (lambda x: (height[x], x))
    old_sorted = sorted(range(n), key=key)
    new_of_old = [0] * n
    for new, old in enumerate(old_sorted):
        new_of_old[old] = new
    return FiniteLattice(n, [(new_of_old[x], new_of_old[y]) for x, y in covers]), new_of_old


def order_query(L: FiniteLattice, kind: str, x: int, y: int | None = None):
    for e in (x, y):
        if e is not None and not (0 <= e < L.n):
            raise IndexOutOfRange(f"element {e} out of range for n={L.n}", e)
    if kind == "height":
        return L.height[x]
    if y is None:
        raise LatticeError(f"query {kind!r} needs two elements")
    if kind == "leq":
        return L.leq(x, y)
    if kind == "meet":
        return L.meet(x, y)
    if kind == "join":
        return L.join(x, y)
    raise LatticeError(f"unknown query kind {kind!r}")


@dataclass(frozen=True)
class ElementSubset:
    members: frozenset
    kind: str = "set"
    is_chain: bool = False

    def __contains__(self, x) -> bool:
        return x in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)

    @property
    def mask(self) -> int:
        return mask_of(self.members)


def is_chain(L: FiniteLattice, elements: Iterable[int]) -> bool:
    els = list(elements)
    return all(L.leq(a, b) or L.leq(b, a) for a, b in combinations(els, 2))


def subset(L: FiniteLattice, elements: Iterable[int], kind: str = "set") -> ElementSubset:
    members = frozenset(elements)
    bad = [x for x in members if not (0 <= x < L.n)]
    if bad:
        raise IndexOutOfRange(f"elements {bad} out of range", bad)
    m = mask_of(members)
    if kind == "ideal" and any(L.down[x] & ~m for x in members):
        raise LatticeError("ideal-tagged subset is not down-closed")
    if kind == "filter" and any(L.up[x] & ~m for x in members):
        raise LatticeError("filter-tagged subset is not up-closed")
    chain = is_chain(L, members)
    if kind == "chain" and not chain:
        raise LatticeError("chain-tagged subset is not totally ordered")
    return ElementSubset(members, kind, chain)


def principal(L: FiniteLattice, u: int, direction: str = "ideal") -> ElementSubset:
    if not 0 <= u < L.n:
        raise IndexOutOfRange(f"element {u} out of range", u)
    if direction == "ideal":
        return subset(L, bits(L.down[u]), "ideal")
    if direction == "filter":
        return subset(L, bits(L.up[u]), "filter")
    raise LatticeError(f"direction must be 'ideal' or 'filter', got {direction!r}")


# -- predicates ---------------------------------------------------------------

def is_semimodular(L: FiniteLattice) -> Check:
    """``x ^ y < x`` (a cover) must imply ``y < x v y`` (a cover)."""
    for x in range(L.n):
        for y in range(L.n):
            m = L.meet_table[x][y]
            if L.is_cover(m, x) and not L.is_cover(y, L.join_table[x][y]):
                return Check(False, (x, y))
    return Check(True)


def join_irreducibles(L: FiniteLattice) -> list[int]:
    return [x for x in range(1, L.n) if len(L.lower[x]) == 1]


def meet_irreducibles(L: FiniteLattice) -> list[int]:
    return [x for x in range(L.n - 1) if len(L.upper[x]) == 1]


def doubly_irreducibles(L: FiniteLattice) -> list[int]:
    return [x for x in range(1, L.n - 1) if len(L.lower[x]) == 1 and len(L.upper[x]) == 1]


def irreducibles(L: FiniteLattice) -> tuple[ElementSubset, ElementSubset, ElementSubset]:
    return (
        subset(L, join_irreducibles(L)),
        subset(L, meet_irreducibles(L)),
        subset(L, doubly_irreducibles(L)),
    )


def is_slim(L: FiniteLattice) -> Check:
    """Jir L has width at most two, i.e. no three pairwise incomparable
    join-irreducibles."""
    jir = join_irreducibles(L)
    comparable = {}
    for a, b in combinations(jir, 2):
        comparable[a, b] = L.leq(a, b) or L.leq(b, a)
    for a, b, c in combinations(jir, 3):
        if not (comparable[a, b] or comparable[a, c] or comparable[b, c]):
            return Check(False, (a, b, c))
    return Check(True)


def two_chain_cover(L: FiniteLattice) -> tuple[list[int], list[int]] | None:
    """Split Jir L into two chains, or return None when impossible."""
    jir = join_irreducibles(L)  # ascending index = linear extension
    chains: tuple[list[int], list[int]] = ([], [])

    def place(i: int) -> bool:
        if i == len(jir):
            return True
        x = jir[i]
        tried_empty = False
        for c in chains:
            if not c:
                if tried_empty:
                    continue
                tried_empty = True
            elif not L.leq(c[-1], x):
                continue
            c.append(x)
            if place(i + 1):
                return True
            c.pop()
        return False

    return (list(chains[0]), list(chains[1])) if place(0) else None


def is_slim_semimodular(L: FiniteLattice) -> bool:
    return bool(is_slim(L)) and bool(is_semimodular(L))


def maximal_chains(L: FiniteLattice):
    """Yield every maximal chain as a tuple from bottom to top."""
    path = [0]

    def walk(x):
        if x == L.n - 1:
            yield tuple(path)
            return
        for y in L.upper[x]:
            path.append(y)
            yield from walk(y)
            path.pop()

    yield from walk(0)


def is_maximal_chain(L: FiniteLattice, elements: Iterable[int]) -> bool:
    chain = sorted(set(elements))
    if not chain or chain[0] != 0 or chain[-1] != L.n - 1:
        return False
    return all(L.is_cover(a, b) for a, b in zip(chain, chain[1:]))


def antichains(L: FiniteLattice, exclude_bottom: bool = False):
    """Yield every nonempty antichain as a tuple in increasing order."""
    comparable = [L.up[x] | L.down[x] for x in range(L.n)]
    start = 1 if exclude_bottom else 0
    chosen: list[int] = []

    def extend(i: int, blocked: int):
        for x in range(i, L.n):
            if not (blocked >> x) & 1:
                chosen.append(x)
                yield tuple(chosen)
                yield from extend(x + 1, blocked | comparable[x])
                chosen.pop()

    yield from extend(start, 0)
