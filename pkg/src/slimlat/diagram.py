"""Planar diagrams of slim semimodular lattices.

A diagram is fixed by listing, for every element, its upper covers from
left to right.  Since slim semimodular lattices are graded, the drawing
puts element ``x`` on the horizontal line ``y = height(x)``; the
left-to-right order of each level is read off from the upper-cover lists
of the level below.  Planarity is then checked on the actual straight-line
drawing; coordinates are exact rationals.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterator, NamedTuple

from .errors import (
    CrossingDetected,
    EdgeNotInDiagram,
    InconsistentOrder,
    NoDiagramFound,
    NotSlimSemimodular,
)
from .lattice import ElementSubset, FiniteLattice, is_semimodular, is_slim


class FourCell(NamedTuple):
    bottom: int
    left: int
    right: int
    top: int


class DiagramEdge(NamedTuple):
    lower: int
    upper: int
    on_left_boundary: bool
    on_right_boundary: bool


def _levels_from_orders(L: FiniteLattice, upper_order) -> list[list[int]]:
    """Level orders by first occurrence in the concatenated upper-cover lists."""
    levels = [[0]]
    for h in range(L.length):
        seen: set[int] = set()
        level: list[int] = []
        for x in levels[h]:
            for y in upper_order[x]:
                if y not in seen:
                    seen.add(y)
                    level.append(y)
        levels.append(level)
    return levels


def _cross(pa, py, pb, pz) -> bool:
    """Edges a-y and b-z join the same two horizontal levels, so the straight
    segments cross exactly when the left-to-right orders of their ends are
    inverted; arguments are level positions (shared endpoints never cross)."""
    return (pa - pb) * (py - pz) < 0


class PlanarDiagram:
    """A slim semimodular lattice with a fixed planar diagram.

    Build with :func:`attach_diagram` or :func:`infer_diagram`.
    """

    __slots__ = ("lattice", "upper_order", "lower_order", "levels", "position", "coords", "_cells")

    def __init__(self, lattice: FiniteLattice, upper_order, _validated_levels=None):
        L = lattice
        upper_order = tuple(tuple(int(y) for y in u) for u in upper_order)
        if len(upper_order) != L.n:
            raise InconsistentOrder(f"expected {L.n} upper-cover lists, got {len(upper_order)}")
        for x in range(L.n):
            if sorted(upper_order[x]) != list(L.upper[x]):
                raise InconsistentOrder(
                    f"upper_order[{x}]={list(upper_order[x])} is not a permutation of the covers"
                    f" {list(L.upper[x])}", x)
        levels = _validated_levels or _levels_from_orders(L, upper_order)
        position = [0] * L.n
        coords: list = [None] * L.n
        for h, level in enumerate(levels):
            offset = Fraction(len(level) - 1, 2)
            for i, x in enumerate(level):
                position[x] = i
                coords[x] = (Fraction(i) - offset, h)
        placed = sorted(x for level in levels for x in level)
        if placed != list(range(L.n)):
            raise InconsistentOrder("levels do not cover every element exactly once")
        if _validated_levels is None:
            for x in range(L.n):
                pos = [position[y] for y in upper_order[x]]
                if pos != sorted(pos):
                    raise InconsistentOrder(
                        f"upper_order[{x}]={list(upper_order[x])} disagrees with the drawn"
                        " left-to-right order", x)
        for h in range(len(levels) - 1):
            band = [(x, y) for x in levels[h] for y in upper_order[x]]
            for (a, y), (b, z) in combinations(band, 2):
                if _cross(position[a], position[y], position[b], position[z]):
                    raise CrossingDetected(f"edge {a}-{y} crosses edge {b}-{z}", ((a, y), (b, z)))
        self.lattice = L
        self.upper_order = upper_order
        self.lower_order = tuple(
            tuple(sorted(L.lower[y], key=position.__getitem__)) for y in range(L.n))
        self.levels = tuple(tuple(level) for level in levels)
        self.position = tuple(position)
        self.coords = tuple(coords)
        self._cells = None

    @property
    def n(self) -> int:
        return self.lattice.n

    def __eq__(self, other) -> bool:
        if not isinstance(other, PlanarDiagram):
            return NotImplemented
        return self.lattice == other.lattice and self.upper_order == other.upper_order

    def __hash__(self) -> int:
        return hash((self.lattice, self.upper_order))

    def __repr__(self) -> str:
        return f"PlanarDiagram(n={self.n}, upper_order={[list(u) for u in self.upper_order]})"

    def reflect(self) -> "PlanarDiagram":
        return PlanarDiagram(self.lattice, [tuple(reversed(u)) for u in self.upper_order])

    @property
    def left_chain(self) -> tuple[int, ...]:
        return tuple(level[0] for level in self.levels)

    @property
    def right_chain(self) -> tuple[int, ...]:
        return tuple(level[-1] for level in self.levels)

    def edges(self) -> list[DiagramEdge]:
        left = set(zip(self.left_chain, self.left_chain[1:]))
        right = set(zip(self.right_chain, self.right_chain[1:]))
        return [DiagramEdge(x, y, (x, y) in left, (x, y) in right)
                for x in range(self.n) for y in self.upper_order[x]]

    def left_of(self, x: int, y: int) -> bool:
        """Same-level comparison of horizontal position."""
        return self.coords[x][0] < self.coords[y][0]

    def to_json(self) -> dict:
        data = self.lattice.to_json()
        data["upper_order"] = [list(u) for u in self.upper_order]
        return data

    @classmethod
    def from_json(cls, data: dict) -> "PlanarDiagram":
        return attach_diagram(FiniteLattice.from_json(data), data["upper_order"])


def _require_slim_semimodular(L: FiniteLattice) -> None:
    slim = is_slim(L)
    if not slim:
        raise NotSlimSemimodular(f"not slim: Jir contains the antichain {slim.witness}", slim.witness)
    semi = is_semimodular(L)
    if not semi:
        raise NotSlimSemimodular(f"not semimodular at pair {semi.witness}", semi.witness)


def attach_diagram(L: FiniteLattice, upper_order, check_class: bool = True) -> PlanarDiagram:
    if check_class:
        _require_slim_semimodular(L)
    return PlanarDiagram(L, upper_order)


def all_diagrams(L: FiniteLattice, check_class: bool = True) -> Iterator[PlanarDiagram]:
    """Every valid diagram, in lexicographic order of the upper-cover lists
    (elements visited level by level, left to right)."""
    if check_class:
        _require_slim_semimodular(L)
    orders: list = [None] * L.n
    orders[L.n - 1] = ()

    def level_search(levels: list[list[int]]):
        h = len(levels) - 1
        if h == L.length:
            yield [list(lv) for lv in levels]
            return
        current = levels[h]
        owner: dict[int, int] = {}
        nxt: list[int] = []

        def place(i: int):
            if i == len(current):
                levels.append(list(nxt))
                yield from level_search(levels)
                levels.pop()
                return
            x = current[i]
            for perm in permutations(L.upper[x]):
                added = []
                ok = True
                last = nxt[-1] if nxt else None
                for y in perm:
                    if y == last:
                        continue
                    if y in owner:
                        ok = False
                        break
                    owner[y] = x
                    nxt.append(y)
                    added.append(y)
                    last = y
                if ok:
                    orders[x] = perm
                    yield from place(i + 1)
                for y in added:
                    del owner[y]
                    nxt.pop()

        yield from place(0)

    for levels in level_search([[0]]):
        yield PlanarDiagram(L, list(orders), _validated_levels=levels)


def infer_diagram(L: FiniteLattice) -> PlanarDiagram:
    for D in all_diagrams(L):
        return D
    raise NoDiagramFound("no planar diagram found for a slim semimodular lattice")


def boundary_chains(D: PlanarDiagram) -> tuple[ElementSubset, ElementSubset]:
    return (ElementSubset(frozenset(D.left_chain), "chain", True),
            ElementSubset(frozenset(D.right_chain), "chain", True))


def boundary(D: PlanarDiagram) -> frozenset:
    return frozenset(D.left_chain) | frozenset(D.right_chain)


def four_cells(D: PlanarDiagram) -> list[FourCell]:
    if D._cells is None:
        L = D.lattice
        cells = []
        for b in range(L.n):
            order = D.upper_order[b]
            for u, v in zip(order, order[1:]):
                t = L.join(u, v)
                if L.meet(u, v) == b and L.is_cover(u, t) and L.is_cover(v, t):
                    cells.append(FourCell(b, u, v, t))
        D._cells = tuple(cells)
    return list(D._cells)


def cell_at_edge(D: PlanarDiagram, edge: tuple[int, int], role: str) -> FourCell | None:
    """The 4-cell having ``edge`` as its upper-right (resp. upper-left) side."""
    x, y = edge
    if not D.lattice.is_cover(x, y):
        raise EdgeNotInDiagram(f"{edge} is not an edge of the diagram", edge)
    if role not in ("upper_right", "upper_left"):
        raise ValueError(f"role must be 'upper_right' or 'upper_left', got {role!r}")
    for c in four_cells(D):
        if c.top == y and (c.right if role == "upper_right" else c.left) == x:
            return c
    return None


def edge_cell_incidence(D: PlanarDiagram) -> dict[tuple[int, int], int]:
    counts = {(e.lower, e.upper): 0 for e in D.edges()}
    for c in four_cells(D):
        for e in ((c.bottom, c.left), (c.bottom, c.right), (c.left, c.top), (c.right, c.top)):
            counts[e] += 1
    return counts


def to_dot(D: PlanarDiagram, name: str = "L", labels=None) -> str:
    """Graphviz source with fixed node positions (rank = height)."""
    lines = [f"graph {name} {{", "  node [shape=circle, width=0.3, fixedsize=true];"]
    for h, level in enumerate(D.levels):
        items = " ".join(f"n{x};" for x in level)
        lines.append(f"  {{ rank=same; {items} }}")
    for x in range(D.n):
        cx, cy = D.coords[x]
        label = labels[x] if labels else str(x)
        lines.append(f'  n{x} [label="{label}", pos="{float(cx):g},{cy}!"];')
    for x in range(D.n):
        for y in D.upper_order[x]:
            lines.append(f"  n{x} -- n{y};")
    lines.append("}")
    return "\n".join(lines) + "\n"
