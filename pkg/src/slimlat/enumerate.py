"""Canonical forms and isomorph-free universes of lattices.

The canonical labelling is computed by colour refinement seeded with
(height, depth, up-degree, down-degree), followed by an individualisation
search that keeps the lexicographically smallest cover encoding.  Twins
(elements with identical upper and lower covers) are interchangeable, so
only one of them is branched on.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from .errors import CeilingExceeded, NotALattice
from .lattice import FiniteLattice, antichains, is_semimodular, is_slim, lattice_from_order

GENERATE_CEILING = 14
BRUTE_FORCE_CEILING = 8

CLASSES = ("all-lattices", "slim-semimodular", "rectangular", "patch")


# -- canonical form -----------------------------------------------------------

def _rank(signatures: list) -> list[int]:
    order = {s: i for i, s in enumerate(sorted(set(signatures)))}
    return [order[s] for s in signatures]


def _refine(L: FiniteLattice, colour: list[int]) -> list[int]:
    count = len(set(colour))
    while True:
        sig = [(colour[x],
                tuple(sorted(colour[y] for y in L.upper[x])),
                tuple(sorted(colour[y] for y in L.lower[x])))
               for x in range(L.n)]
        new = _rank(sig)
        k = len(set(new))
        if k == count:
            return new
        colour, count = new, k


def _encode(L: FiniteLattice, colour: list[int]) -> bytes:
    pairs = sorted((colour[x], colour[y]) for x, y in L.covers)
    out = bytearray([L.n])
    for a, b in pairs:
        out += bytes((a, b))
    return bytes(out)


def canonical_labelling(L: FiniteLattice) -> tuple[bytes, list[int]]:
    """Canonical form and a labelling ``x -> canonical index`` achieving it.

    The canonical labelling is always a linear extension because the
    initial colour starts with the height.
    """
    n = L.n
    depth = [0] * n
    for x in range(n - 1, -1, -1):
        if L.upper[x]:
            depth[x] = 1 + max(depth[y] for y in L.upper[x])
    start = _refine(L, _rank([(L.height[x], depth[x], len(L.upper[x]), len(L.lower[x]))
                               for x in range(n)]))
    twin_key = [(L.upper[x], L.lower[x]) for x in range(n)]
    best: list = [None, None]

    def search(colour: list[int]):
        if len(set(colour)) == n:
            code = _encode(L, colour)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, list(colour)
            return
        cells: dict[int, list[int]] = {}
        for x, c in enumerate(colour):
            cells.setdefault(c, []).append(x)
        c, cell = min((c, xs) for c, xs in cells.items() if len(xs) > 1)
        tried = set()
        for v in cell:
            if twin_key[v] in tried:
                continue
            tried.add(twin_key[v])
            nxt = [2 * col + (1 if col == c and x != v else 0) for x, col in enumerate(colour)]
            search(_refine(L, _rank(nxt)))

    search(start)
    return best[0], best[1]


def canonical_form(L: FiniteLattice) -> bytes:
    return canonical_labelling(L)[0]


def canonical_lattice(L: FiniteLattice) -> FiniteLattice:
    _, lab = canonical_labelling(L)
    return FiniteLattice(L.n, [(lab[x], lab[y]) for x, y in L.covers])


def find_isomorphism(L: FiniteLattice, K: FiniteLattice) -> list[int] | None:
    """An order isomorphism ``L -> K`` (as a list), or ``None``."""
    fl, ll = canonical_labelling(L)
    fk, lk = canonical_labelling(K)
    if fl != fk:
        return None
    inv = [0] * K.n
    for x, c in enumerate(lk):
        inv[c] = x
    return [inv[ll[x]] for x in range(L.n)]


# -- universes ----------------------------------------------------------------

@dataclass
class Member:
    lattice: FiniteLattice
    diagram: object = None          # PlanarDiagram or None
    certificate: object = None      # GridCertificate or None

    def to_json(self) -> dict:
        data = self.lattice.to_json()
        if self.diagram is not None:
            data["upper_order"] = [list(u) for u in self.diagram.upper_order]
        if self.certificate is not None:
            data["certificate"] = self.certificate.to_json()
        return data


@dataclass
class Universe:
    max_size: int
    klass: str
    members: dict = field(default_factory=dict)   # canonical form -> Member

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Member]:
        for form in self.forms():
            yield self.members[form]

    def __contains__(self, L) -> bool:
        return canonical_form(L) in self.members

    def forms(self) -> list[bytes]:
        return sorted(self.members, key=lambda f: (f[0], f))

    def lattices(self) -> list[FiniteLattice]:
        return [m.lattice for m in self]

    def of_size(self, n: int) -> list[Member]:
        return [m for m in self if m.lattice.n == n]

    def filtered(self, klass: str, max_size: int | None = None) -> "Universe":
        limit = self.max_size if max_size is None else max_size
        keep = {f: m for f, m in self.members.items()
                if m.lattice.n <= limit and _in_class(m, klass)}
        return Universe(limit, klass, keep)

    def counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for m in self.members.values():
            out[m.lattice.n] = out.get(m.lattice.n, 0) + 1
        return dict(sorted(out.items()))

    def save(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(json.dumps({"max_size": self.max_size, "class": self.klass}) + "\n")
            for m in self:
                fh.write(json.dumps(m.to_json(), sort_keys=True) + "\n")

    @classmethod
    def load(cls, path) -> "Universe":
        from .classify import GridCertificate
        from .diagram import PlanarDiagram
        with open(path) as fh:
            header = json.loads(fh.readline())
            U = cls(header["max_size"], header["class"])
            for line in fh:
                data = json.loads(line)
                L = FiniteLattice.from_json(data)
                D = PlanarDiagram(L, data["upper_order"]) if "upper_order" in data else None
                cert = GridCertificate.from_json(data["certificate"]) if "certificate" in data else None
                U.members[canonical_form(L)] = Member(L, D, cert)
        return U


def _in_class(m: Member, klass: str) -> bool:
    if klass == "all-lattices":
        return True
    L = m.lattice
    if not (is_slim(L) and is_semimodular(L)):
        return False
    if klass == "slim-semimodular":
        return True
    from .classify import is_rectangular, patch_by_irreducibles
    from .diagram import infer_diagram
    D = m.diagram if m.diagram is not None else infer_diagram(L)
    if klass == "rectangular":
        return bool(is_rectangular(D))
    if klass == "patch":
        return bool(patch_by_irreducibles(L))
    raise ValueError(f"unknown class {klass!r}")


def _check_class(klass: str) -> None:
    if klass not in CLASSES:
        raise ValueError(f"class must be one of {CLASSES}, got {klass!r}")


def generate_universe(max_size: int, klass: str = "slim-semimodular",
                      certificates: bool = False, ceiling: int = GENERATE_CEILING,
                      cache_dir=None) -> Universe:
    """Slim semimodular lattices with at most ``max_size`` elements.

    Seeds are the chains and grids; the moves are fork extension at every
    4-cell, corner addition at every boundary position and corner removal,
    each applied to every planar diagram of a member.  Rectangular and
    patch universes only need grids and forks.
    """
    _check_class(klass)
    if klass == "all-lattices":
        raise ValueError("use brute_force_universe for the class of all lattices")
    if max_size > ceiling:
        raise CeilingExceeded(f"max_size {max_size} exceeds the ceiling {ceiling}", max_size)
    cache = _cache_path(cache_dir, "gen", max_size, klass)
    if cache is not None and cache.exists():
        U = Universe.load(cache)
        if certificates and any(m.certificate is None for m in U):
            _attach_certificates(U)
        return U
    rect_only = klass in ("rectangular", "patch")
    U = Universe(max_size, klass)
    for m in _closure(max_size, rect_only):
        U.members[canonical_form(m.lattice)] = m
    U = U.filtered(klass)
    if certificates:
        _attach_certificates(U)
    if cache is not None:
        cache.parent.mkdir(parents=True, exist_ok=True)
        U.save(cache)
    return U


def _attach_certificates(U: Universe) -> None:
    from .classify import grid_certificate
    for m in U:
        if m.certificate is None:
            m.certificate = grid_certificate(m.diagram)


def _cache_path(cache_dir, kind: str, max_size: int, klass: str):
    root = cache_dir or os.environ.get("SLIMLAT_CACHE")
    if not root:
        return None
    return Path(root) / f"{kind}-{klass}-{max_size}.jsonl"


def _closure(max_size: int, rect_only: bool) -> Iterable[Member]:
    from .builders import (add_corner, add_fork, chain_diagram, corner_check, corner_positions,
                           grid, remove_corner)
    from .diagram import all_diagrams, four_cells

    found: dict[bytes, Member] = {}
    queue: list[bytes] = []

    def offer(D) -> None:
        if D is None or D.n > max_size:
            return
        form = canonical_form(D.lattice)
        if form not in found:
            found[form] = Member(D.lattice, D)
            queue.append(form)

    for n in range(1, max_size + 1):
        if not rect_only or n == 1 or n == 2:
            offer(chain_diagram(n))
    for p in range(1, max_size):
        for q in range(1, max_size):
            if (p + 1) * (q + 1) <= max_size:
                offer(grid(p, q))
    while queue:
        form = queue.pop()
        m = found[form]
        for D in all_diagrams(m.lattice):
            for cell in four_cells(D):
                if D.n + 3 <= max_size:
                    offer(_fork_or_none(add_fork, D, cell, max_size))
            if rect_only:
                continue
            for side, z in corner_positions(D):
                if D.n < max_size:
                    offer(add_corner(D, side, z))
            for u in range(D.n):
                if corner_check(D, u) is None:
                    offer(remove_corner(D, u))
    return found.values()


def _fork_or_none(add_fork, D, cell, max_size):
    from .builders import _trajectories
    left, right = _trajectories(D, cell)
    if D.n + 1 + len(left) + len(right) > max_size:
        return None
    return add_fork(D, cell)[0]


# -- brute force --------------------------------------------------------------

def all_lattices(max_size: int) -> dict[bytes, FiniteLattice]:
    """Every lattice with at most ``max_size`` elements, up to isomorphism.

    A lattice with ``n >= 3`` elements has an atom ``a`` whose removal
    leaves a lattice (any atom of a finite lattice works: the remaining
    meets stay or drop to 0 and joins are unchanged).  So every lattice is a
    smaller lattice plus one new atom below a nonempty antichain ``A`` of
    non-zero elements, with ``a <= y`` exactly for ``y`` in the up-set of
    ``A``.  The extension is kept when it is again a lattice.
    """
    out: dict[bytes, FiniteLattice] = {}
    levels: list[list[FiniteLattice]] = [[], [FiniteLattice(1, [])]]
    if max_size >= 2:
        levels.append([FiniteLattice(2, [(0, 1)])])
    for L in levels[1] + (levels[2] if max_size >= 2 else []):
        out[canonical_form(L)] = L
    for n in range(3, max_size + 1):
        level: dict[bytes, FiniteLattice] = {}
        for L in levels[n - 1]:
            for A in antichains(L, exclude_bottom=True):
                K = _add_atom(L, A)
                if K is None:
                    continue
                f = canonical_form(K)
                if f not in level:
                    level[f] = K
        levels.append(list(level.values()))
        out.update(level)
    return out


def _add_atom(L: FiniteLattice, A) -> FiniteLattice | None:
    """New element right after 0, below the up-set of antichain ``A``."""
    n = L.n
    up_a = 0
    for y in A:
        up_a |= L.up[y]
    # relabel: 0 stays, the atom becomes 1, old x >= 1 becomes x + 1
    masks = [0] * (n + 1)
    masks[0] = (1 << (n + 1)) - 1
    masks[1] = 0b10 | (up_a << 1)
    for x in range(1, n):
        masks[x + 1] = L.up[x] << 1
    try:
        return lattice_from_order(n + 1, masks)
    except NotALattice:
        return None


def brute_force_universe(max_size: int, ceiling: int = BRUTE_FORCE_CEILING) -> Universe:
    if max_size > ceiling:
        raise CeilingExceeded(f"brute force is limited to {ceiling} elements", max_size)
    from .diagram import infer_diagram
    U = Universe(max_size, "all-lattices")
    for f, L in all_lattices(max_size).items():
        D = None
        if is_slim(L) and is_semimodular(L):
            D = infer_diagram(L)
        U.members[f] = Member(L, D)
    return U


__all__ = [
    "CLASSES", "Member", "Universe", "all_lattices", "brute_force_universe",
    "canonical_form", "canonical_labelling", "canonical_lattice", "find_isomorphism",
    "generate_universe",
]
