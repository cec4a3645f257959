"""Constructions on planar diagrams: grids, forks and corners.

Every construction returns a freshly labelled diagram whose elements are
numbered in reading order (level by level, left to right), and every
result is re-validated by the class predicates and the planarity check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .diagram import FourCell, PlanarDiagram, four_cells
from .errors import (
    DiagramError,
    InternalValidationFailed,
    LatticeError,
    NotACell,
    NotACorner,
    NotOnBoundary,
    NotRectangular,
)
from .lattice import FiniteLattice, is_semimodular, is_slim, relabel
from .maps import LatticeMap

LEFT, RIGHT = "left", "right"


class TrajectoryStep(NamedTuple):
    """Edge ``lower < upper`` of the old diagram subdivided by ``new``."""

    lower: int
    upper: int
    new: int


@dataclass(frozen=True)
class ForkRecord:
    cell: FourCell                   # labels of the diagram the fork was added to
    m: int                           # labels of the result from here on
    left_trajectory: tuple
    right_trajectory: tuple
    new_of_old: tuple                # inclusion of the old elements

    @property
    def added(self) -> int:
        return 1 + len(self.left_trajectory) + len(self.right_trajectory)

    def to_json(self) -> dict:
        return {
            "cell": list(self.cell),
            "m": self.m,
            "left_trajectory": [list(s) for s in self.left_trajectory],
            "right_trajectory": [list(s) for s in self.right_trajectory],
        }


@dataclass(frozen=True)
class ExtensionWitness:
    extended: PlanarDiagram
    embedding: LatticeMap
    kind: str  # "corner_added" or "filter_insertion"
    added: int = -1

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "added_element": self.added,
            "embedding": list(self.embedding.image),
            "extended": self.extended.to_json(),
        }


def _finish(n: int, covers, upper_order, validate: bool = True) -> tuple[PlanarDiagram, list[int]]:
    """Relabel an arbitrary planar cover graph into reading order.

    ``upper_order`` lists the upper covers of each old label left to right.
    Raises :class:`LatticeError` / :class:`DiagramError` when the input is
    not a lattice or not planar, and :class:`InternalValidationFailed`
    when ``validate`` is set and the class predicates fail.
    """
    covers = list(covers)
    L0, first = relabel(n, covers)
    old_of_first = [0] * n
    for old, new in enumerate(first):
        old_of_first[new] = old
    uo0 = [tuple(first[y] for y in upper_order[old_of_first[x]]) for x in range(n)]
    D0 = PlanarDiagram(L0, uo0)
    reading = [0] * n
    for i, x in enumerate(x for level in D0.levels for x in level):
        reading[x] = i
    L = FiniteLattice(n, [(reading[x], reading[y]) for x, y in L0.covers])
    uo = [()] * n
    for x in range(n):
        uo[reading[x]] = tuple(reading[y] for y in uo0[x])
    levels = [[reading[x] for x in level] for level in D0.levels]
    D = PlanarDiagram(L, uo, _validated_levels=levels)
    if validate:
        slim, semi = is_slim(L), is_semimodular(L)
        if not (slim and semi):
            raise InternalValidationFailed(
                f"construction left the class (slim={slim.ok}, semimodular={semi.ok})",
                slim.witness or semi.witness)
    return D, [reading[first[x]] for x in range(n)]


def _edge_lists(D: PlanarDiagram):
    covers = set(D.lattice.covers)
    uo = [list(u) for u in D.upper_order]
    return covers, uo


# -- grids --------------------------------------------------------------------

def grid_index(p: int, i: int, j: int) -> int:
    return i + (p + 1) * j


def grid_coords(p: int, x: int) -> tuple[int, int]:
    return x % (p + 1), x // (p + 1)


def grid(p: int, q: int) -> PlanarDiagram:
    """``C_{p+1} x C_{q+1}``; element ``(i, j)`` has index ``i + (p+1) j`` and
    the first factor runs up-left."""
    if p < 1 or q < 1:
        raise ValueError(f"grid sides must be at least 1, got {(p, q)}")
    n = (p + 1) * (q + 1)
    covers, uo = [], []
    for x in range(n):
        i, j = grid_coords(p, x)
        ups = []
        if i < p:
            ups.append(grid_index(p, i + 1, j))
        if j < q:
            ups.append(grid_index(p, i, j + 1))
        covers.extend((x, y) for y in ups)
        uo.append(tuple(ups))
    return PlanarDiagram(FiniteLattice(n, covers), uo)


def chain_diagram(n: int) -> PlanarDiagram:
    L = FiniteLattice(n, [(i, i + 1) for i in range(n - 1)])
    return PlanarDiagram(L, [(i + 1,) for i in range(n - 1)] + [()])


# -- forks --------------------------------------------------------------------

def _trajectories(D: PlanarDiagram, cell: FourCell):
    by_top_right, by_top_left = {}, {}
    for c in four_cells(D):
        by_top_right[c.top, c.right] = c
        by_top_left[c.top, c.left] = c
    left = [(cell.bottom, cell.left)]
    while (c := by_top_right.get((left[-1][1], left[-1][0]))) is not None:
        left.append((c.bottom, c.left))
    right = [(cell.bottom, cell.right)]
    while (c := by_top_left.get((right[-1][1], right[-1][0]))) is not None:
        right.append((c.bottom, c.right))
    return left, right


def add_fork(D: PlanarDiagram, cell) -> tuple[PlanarDiagram, ForkRecord]:
    cell = FourCell(*cell)
    if cell not in four_cells(D):
        raise NotACell(f"{tuple(cell)} is not a 4-cell of the diagram", tuple(cell))
    n = D.n
    left, right = _trajectories(D, cell)
    covers, uo = _edge_lists(D)
    m = n
    uo.append([cell.top])
    covers.add((m, cell.top))

    def subdivide(traj, start, side):
        prev = m
        for k, (x, y) in enumerate(traj):
            a = start + k
            covers.discard((x, y))
            covers.update({(x, a), (a, y), (a, prev)})
            uo[x][uo[x].index(y)] = a
            uo.append([y, prev] if side == LEFT else [prev, y])
            prev = a

    subdivide(left, n + 1, LEFT)
    subdivide(right, n + 1 + len(left), RIGHT)
    # m's place among the lower covers of t follows from the levels
    size = n + 1 + len(left) + len(right)
    result, new_of_old = _finish(size, covers, uo)
    rec = ForkRecord(
        cell=cell,
        m=new_of_old[m],
        left_trajectory=tuple(TrajectoryStep(new_of_old[x], new_of_old[y], new_of_old[n + 1 + k])
                              for k, (x, y) in enumerate(left)),
        right_trajectory=tuple(
            TrajectoryStep(new_of_old[x], new_of_old[y], new_of_old[n + 1 + len(left) + k])
            for k, (x, y) in enumerate(right)),
        new_of_old=tuple(new_of_old[:n]),
    )
    return result, rec


def _descend(D: PlanarDiagram, start: int, side: str):
    """Walk a candidate trajectory down from a lower cover of a fork top."""
    L = D.lattice
    steps = []
    a = start
    seen = set()
    while True:
        if a in seen or len(L.upper[a]) != 2:
            return None
        seen.add(a)
        lows = D.lower_order[a]
        if len(lows) == 1:
            x, nxt = lows[0], None
        elif len(lows) == 2:
            x, nxt = (lows[1], lows[0]) if side == LEFT else (lows[0], lows[1])
        else:
            return None
        ups = D.upper_order[a]
        y = ups[0] if side == LEFT else ups[1]
        steps.append((x, y, a))
        if nxt is None:
            return steps
        a = nxt


def fork_candidates(D: PlanarDiagram) -> list[int]:
    L = D.lattice
    return [x for x in range(1, L.n - 1) if len(L.upper[x]) == 1 and len(L.lower[x]) == 2]


def _try_unfork(D: PlanarDiagram, m: int):
    L = D.lattice
    lo = D.lower_order[m]
    t = L.upper[m][0]
    left = _descend(D, lo[0], LEFT)
    right = _descend(D, lo[1], RIGHT)
    if not left or not right or left[0][0] != right[0][0]:
        return None
    removed = {m} | {s[2] for s in left} | {s[2] for s in right}
    if len(removed) != 1 + len(left) + len(right):
        return None
    keep = [x for x in range(L.n) if x not in removed]
    idx = {x: i for i, x in enumerate(keep)}
    back = {s[2]: s[1] for s in left + right}
    covers = set()
    for x, y in L.covers:
        if x in removed:
            continue
        y = back.get(y, y)
        if y in removed:
            return None
        covers.add((idx[x], idx[y]))
    uo = []
    for x in keep:
        if any(y == m for y in D.upper_order[x]):
            return None
        uo.append([idx[back.get(y, y)] for y in D.upper_order[x]])
    try:
        reduced, new_of_old = _finish(len(keep), covers, uo)
    except (LatticeError, DiagramError, InternalValidationFailed):
        return None
    cell = FourCell(new_of_old[idx[left[0][0]]], new_of_old[idx[left[0][1]]], new_of_old[idx[right[0][1]]],
                    new_of_old[idx[t]])
    if cell not in four_cells(reduced):
        return None
    try:
        again, rec = add_fork(reduced, cell)
    except InternalValidationFailed:
        return None
    # the re-forked diagram must be exactly D under the obvious matching
    match = [0] * again.n
    for old in keep:
        match[rec.new_of_old[new_of_old[idx[old]]]] = old
    match[rec.m] = m
    if len(rec.left_trajectory) != len(left) or len(rec.right_trajectory) != len(right):
        return None
    for s, (_, _, a) in zip(rec.left_trajectory + rec.right_trajectory, left + right):
        match[s.new] = a
    if sorted((match[x], match[y]) for x, y in again.lattice.covers) != list(L.covers):
        return None
    for x in range(again.n):
        if tuple(match[y] for y in again.upper_order[x]) != D.upper_order[match[x]]:
            return None
    return reduced, rec


def remove_fork_once(D: PlanarDiagram, check_rectangular: bool = True):
    """Undo one fork; ``None`` when no fork can be removed (a grid).

    The returned record is the one produced by forking the reduced diagram
    back, so ``add_fork(reduced, record.cell)`` reproduces ``D``.
    """
    if check_rectangular:
        from .classify import is_rectangular
        if not is_rectangular(D):
            raise NotRectangular("fork removal needs a slim rectangular diagram")
    for m in fork_candidates(D):
        found = _try_unfork(D, m)
        if found is not None:
            return found
    return None


# -- corners ------------------------------------------------------------------

def corner_check(D: PlanarDiagram, u: int):
    """Reason why ``u`` is not a corner, or ``None`` when it is one."""
    L = D.lattice
    if not 0 <= u < L.n:
        return "element out of range"
    if u in (0, L.n - 1) or len(L.lower[u]) != 1 or len(L.upper[u]) != 1:
        return "not doubly irreducible"
    top, low = L.upper[u][0], L.lower[u][0]
    if len(L.lower[top]) != 2:
        return f"upper cover {top} covers {len(L.lower[top])} elements, not 2"
    if len(L.upper[low]) != 2:
        return f"lower cover {low} is covered by {len(L.upper[low])} elements, not 2"
    return None


def _delete(D: PlanarDiagram, u: int) -> tuple[PlanarDiagram, list[int]]:
    L = D.lattice
    keep = [x for x in range(L.n) if x != u]
    idx = {x: i for i, x in enumerate(keep)}
    covers = [(idx[x], idx[y]) for x, y in L.covers if u not in (x, y)]
    uo = [[idx[y] for y in D.upper_order[x] if y != u] for x in keep]
    reduced, new_of_kept = _finish(len(keep), covers, uo, validate=False)
    return reduced, [new_of_kept[idx[x]] if x != u else -1 for x in range(L.n)]


def remove_corner(D: PlanarDiagram, u: int) -> PlanarDiagram:
    reason = corner_check(D, u)
    if reason is not None:
        raise NotACorner(f"{u} is not a corner: {reason}", (u, reason))
    reduced, _ = _delete(D, u)
    if not (is_slim(reduced.lattice) and is_semimodular(reduced.lattice)):
        raise InternalValidationFailed("corner removal left the class", u)
    return reduced


def remove_doubly_irreducible(D: PlanarDiagram, u: int) -> PlanarDiagram:
    """Delete any doubly irreducible element (no new cover edges appear).

    Unlike :func:`remove_corner` this does not insist on the cell shape, so
    the result can leave the class or change length; callers validate.
    """
    L = D.lattice
    if u in (0, L.n - 1) or len(L.lower[u]) != 1 or len(L.upper[u]) != 1:
        raise NotACorner(f"{u} is not doubly irreducible", (u, "not doubly irreducible"))
    if L.is_cover(L.lower[u][0], L.upper[u][0]) or not _no_gap(L, u):
        raise NotACorner(f"deleting {u} would need a new cover edge", (u, "gap"))
    return _delete(D, u)[0]


def _no_gap(L: FiniteLattice, u: int) -> bool:
    low, top = L.lower[u][0], L.upper[u][0]
    return any(y != u and L.leq(y, top) for y in L.upper[low])


def add_corner_with_map(D: PlanarDiagram, side: str, z: int):
    """``(extended, new_of_old)`` or ``None``; ``new_of_old[D.n]`` is the
    added element, the earlier entries give the inclusion."""
    if side not in (LEFT, RIGHT):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    chain = D.left_chain if side == LEFT else D.right_chain
    if z not in chain[1:-1]:
        raise NotOnBoundary(f"{z} is not an inner element of the {side} boundary chain", z)
    h = chain.index(z)
    x, y = chain[h - 1], chain[h + 1]
    n = D.n
    covers, uo = _edge_lists(D)
    covers.update({(x, n), (n, y)})
    uo[x] = [n] + uo[x] if side == LEFT else uo[x] + [n]
    uo.append([y])
    try:
        ext, new_of_old = _finish(n + 1, covers, uo, validate=False)
    except (LatticeError, DiagramError):
        return None
    if not (is_slim(ext.lattice) and is_semimodular(ext.lattice)):
        return None
    return ext, new_of_old


def add_corner(D: PlanarDiagram, side: str, z: int) -> PlanarDiagram | None:
    found = add_corner_with_map(D, side, z)
    return None if found is None else found[0]


def corner_positions(D: PlanarDiagram):
    for side, chain in ((LEFT, D.left_chain), (RIGHT, D.right_chain)):
        for z in chain[1:-1]:
            yield side, z


def _witness(D, side, z, kind):
    found = add_corner_with_map(D, side, z)
    if found is None:
        return None
    ext, new_of_old = found
    emb = LatticeMap(D.lattice, ext.lattice, tuple(new_of_old[:D.n]))
    return ExtensionWitness(ext, emb, kind, new_of_old[D.n])


def proper_extension_witness(D: PlanarDiagram):
    """A one-element length-preserving extension, or ``"maximal"``."""
    if D.n <= 2:
        return "maximal"
    from .classify import weak_corners, is_rectangular
    if is_rectangular(D):
        L = D.lattice
        lc, rc = weak_corners(D)
        for side, corner, chain in ((LEFT, lc, D.left_chain), (RIGHT, rc, D.right_chain)):
            # insert d with u < d < 1, u the element of up(corner) two below the top
            if not L.is_cover(corner, L.n - 1):
                w = _witness(D, side, chain[-2], "filter_insertion")
                if w is not None:
                    return w
    for side, z in corner_positions(D):
        w = _witness(D, side, z, "corner_added")
        if w is not None:
            return w
    return "maximal"
