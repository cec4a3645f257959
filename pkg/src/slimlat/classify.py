"""Rectangular and patch lattices, weak corners, grid certificates."""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagram import PlanarDiagram, infer_diagram
from .errors import CertificateSearchFailed, InternalValidationFailed
from .lattice import (
    Check,
    FiniteLattice,
    doubly_irreducibles,
    is_semimodular,
    is_slim,
)


@dataclass(frozen=True)
class WeakCorners:
    lc: int | None
    rc: int | None
    left_count: int
    right_count: int

    def __iter__(self):
        return iter((self.lc, self.rc))


def weak_corners(D: PlanarDiagram) -> WeakCorners:
    """Doubly irreducible elements of the left and right boundary chains;
    a side reports ``None`` unless it has exactly one."""
    dirr = set(doubly_irreducibles(D.lattice))
    left = [x for x in D.left_chain if x in dirr]
    right = [x for x in D.right_chain if x in dirr]
    return WeakCorners(left[0] if len(left) == 1 else None,
                       right[0] if len(right) == 1 else None,
                       len(left), len(right))


def is_rectangular(D: PlanarDiagram) -> Check:
    L = D.lattice
    wc = weak_corners(D)
    if wc.lc is None or wc.rc is None:
        return Check(False, {"reason": "weak corner missing or ambiguous",
                             "left_count": wc.left_count, "right_count": wc.right_count})
    if wc.lc == wc.rc:
        return Check(False, {"reason": "lc equals rc", "lc": wc.lc})
    if L.meet(wc.lc, wc.rc) != 0:
        return Check(False, {"reason": "lc and rc meet above 0", "meet": L.meet(wc.lc, wc.rc)})
    if L.join(wc.lc, wc.rc) != L.n - 1:
        return Check(False, {"reason": "lc and rc join below 1", "join": L.join(wc.lc, wc.rc)})
    return Check(True)


def patch_by_irreducibles(L: FiniteLattice) -> Check:
    """Diagram-free test: exactly two doubly irreducible elements, both
    coatoms, meeting in 0."""
    dirr = doubly_irreducibles(L)
    if len(dirr) != 2:
        return Check(False, {"reason": "doubly irreducible count", "dirr": dirr})
    a, b = dirr
    for x in dirr:
        if not L.is_cover(x, L.n - 1):
            return Check(False, {"reason": "not a coatom", "element": x})
    if L.meet(a, b) != 0:
        return Check(False, {"reason": "meet above 0", "meet": L.meet(a, b)})
    return Check(True)


def patch_by_corners(D: PlanarDiagram) -> Check:
    """Rectangular with both weak corners coatoms."""
    rect = is_rectangular(D)
    if not rect:
        return rect
    L = D.lattice
    lc, rc = weak_corners(D)
    for x in (lc, rc):
        if not L.is_cover(x, L.n - 1):
            return Check(False, {"reason": "weak corner is not a coatom", "element": x})
    return Check(True)


@dataclass
class ClassReport:
    is_slim: bool
    is_semimodular: bool
    is_rectangular: bool | None
    is_patch_def11: bool
    is_patch_24: bool | None
    lc: int | None = None
    rc: int | None = None
    witnesses: dict = field(default_factory=dict)

    @property
    def is_patch(self) -> bool:
        return self.is_patch_def11

    def to_json(self) -> dict:
        return {
            "is_slim": self.is_slim,
            "is_semimodular": self.is_semimodular,
            "is_rectangular": self.is_rectangular,
            "is_patch_def11": self.is_patch_def11,
            "is_patch_24": self.is_patch_24,
            "lc": self.lc,
            "rc": self.rc,
            "witnesses": self.witnesses,
        }


def classify(L: FiniteLattice, D: PlanarDiagram | None = None) -> ClassReport:
    slim, semi = is_slim(L), is_semimodular(L)
    witnesses = {}
    if not slim:
        witnesses["is_slim"] = list(slim.witness)
    if not semi:
        witnesses["is_semimodular"] = list(semi.witness)
    if not (slim and semi):
        return ClassReport(slim.ok, semi.ok, False, False, False, witnesses=witnesses)
    if D is None:
        D = infer_diagram(L)
    p11 = patch_by_irreducibles(L)
    rect = is_rectangular(D)
    p24 = patch_by_corners(D)
    wc = weak_corners(D)
    for name, c in (("is_rectangular", rect), ("is_patch_def11", p11), ("is_patch_24", p24)):
        if not c:
            witnesses[name] = c.witness
    if p11.ok != p24.ok:
        raise InternalValidationFailed("the two patch characterizations disagree", L)
    return ClassReport(True, True, rect.ok, p11.ok, p24.ok, wc.lc, wc.rc, witnesses)


def is_patch(L: FiniteLattice, D: PlanarDiagram | None = None) -> ClassReport:
    return classify(L, D)


# -- grid certificates --------------------------------------------------------

@dataclass(frozen=True)
class GridCertificate:
    """Replay recipe: start at ``grid(p, q)``, apply ``forks`` in order, then
    remove ``corners`` in order.

    Cells and corners are labelled in the diagram current at that step.  A
    degenerate certificate (``p = q = 0``) stands for the chain ``C_n``.
    """

    p: int
    q: int
    forks: tuple
    corners: tuple
    size: int = 0

    def to_json(self) -> dict:
        return {"grid": [self.p, self.q], "forks": [list(c) for c in self.forks],
                "corners": list(self.corners), "size": self.size}

    @classmethod
    def from_json(cls, data: dict) -> "GridCertificate":
        p, q = data["grid"]
        return cls(p, q, tuple(tuple(c) for c in data["forks"]), tuple(data["corners"]),
                   data.get("size", 0))


def replay(cert: GridCertificate) -> PlanarDiagram:
    from .builders import add_fork, chain_diagram, grid, remove_corner
    if cert.p == 0:
        return chain_diagram(cert.size)
    D = grid(cert.p, cert.q)
    for cell in cert.forks:
        D, _ = add_fork(D, cell)
    for u in cert.corners:
        D = remove_corner(D, u)
    return D


def position_map(A: PlanarDiagram, B: PlanarDiagram) -> list[int]:
    """Element of ``B`` drawn at the same place as each element of ``A``;
    raises when the two pictures differ."""
    if [len(lv) for lv in A.levels] != [len(lv) for lv in B.levels]:
        raise CertificateSearchFailed("diagrams have different level profiles")
    pi = [0] * A.n
    for la, lb in zip(A.levels, B.levels):
        for x, y in zip(la, lb):
            pi[x] = y
    for x in range(A.n):
        if tuple(pi[y] for y in A.upper_order[x]) != B.upper_order[pi[x]]:
            raise CertificateSearchFailed("diagrams are drawn differently")
    return pi


def _rectangular_cover(D: PlanarDiagram, max_depth: int):
    """A sequence of corner additions reaching a rectangular diagram:
    first valid position first, backtracking only out of dead ends.
    Returns the list of (extended diagram, added element), or ``None``."""
    from .builders import add_corner_with_map, corner_check, corner_positions
    if is_rectangular(D):
        return []
    dead: set = set()

    def search(E: PlanarDiagram, depth: int):
        key = (E.lattice, E.upper_order)
        if key in dead:
            return None
        for side, z in corner_positions(E):
            found = add_corner_with_map(E, side, z)
            if found is None:
                continue
            ext, new_of_old = found
            u = new_of_old[E.n]
            if corner_check(ext, u) is not None:
                continue
            if is_rectangular(ext):
                return [(ext, u)]
            if depth > 1:
                rest = search(ext, depth - 1)
                if rest is not None:
                    return [(ext, u)] + rest
        # labels are in reading order, so equal keys are equal pictures
        dead.add(key)
        return None

    return search(D, max_depth)


def _strip_forks(R: PlanarDiagram):
    """Remove forks down to a grid; returns the grid and the list of
    (reduced diagram, cell) pairs from the grid upwards."""
    from .builders import remove_fork_once
    steps = []
    E = R
    while True:
        found = remove_fork_once(E, check_rectangular=False)
        if found is None:
            return E, steps[::-1]
        E, rec = found
        steps.append((E, rec.cell))


def grid_certificate(D: PlanarDiagram, max_depth: int | None = None) -> GridCertificate:
    from .builders import add_fork, grid, remove_corner
    L = D.lattice
    if L.n <= 2:
        return GridCertificate(0, 0, (), (), L.n)
    # a rectangle of length h has at most (h/2 + 1)^2 elements
    path = _rectangular_cover(D, max_depth or (L.length + 1) ** 2)
    if path is None:
        raise CertificateSearchFailed("no corner re-addition reaches a rectangular diagram", L)
    R = path[-1][0] if path else D
    base, steps = _strip_forks(R)
    wc = weak_corners(base)
    if wc.lc is None or wc.rc is None:
        raise CertificateSearchFailed("fork removal did not end at a rectangular diagram")
    p, q = base.lattice.height[wc.lc], base.lattice.height[wc.rc]
    E = grid(p, q)
    position_map(base, E)  # the base must be drawn exactly like the grid
    forks = []
    for F, cell in steps:
        pi = position_map(F, E)
        c = tuple(pi[x] for x in cell)
        forks.append(c)
        E, _ = add_fork(E, c)
    corners = []
    for ext, u in reversed(path):
        pi = position_map(ext, E)
        corners.append(pi[u])
        E = remove_corner(E, pi[u])
    cert = GridCertificate(p, q, tuple(forks), tuple(corners), L.n)
    position_map(replay(cert), D)  # raises unless the replay redraws D
    return cert
