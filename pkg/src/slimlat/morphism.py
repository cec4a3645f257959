"""Homomorphism search, retractions, and the universe-relative verdicts.

Homomorphisms ``L -> K`` are found by backtracking over the elements of
``L`` in index order (a linear extension).  An element with two or more
lower covers is the join of any two of them, so its image is forced; a
join-irreducible element ranges over the up-set of the image of its lower
cover.  Every meet is checked when its later argument is assigned, every
join when its value is assigned, so each emitted map is a homomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import BudgetExceeded, NotMono
from .lattice import FiniteLattice, bits
from .maps import Category, LatticeMap, check_morphism

DEFAULT_BUDGET = 5_000_000


def _join_pairs(L: FiniteLattice) -> list[list[tuple[int, int]]]:
    """For each ``w``, the pairs ``x < y < w`` (indices) with ``x v y = w``."""
    out: list[list[tuple[int, int]]] = [[] for _ in range(L.n)]
    for x in range(L.n):
        row = L.join_table[x]
        for y in range(x + 1, L.n):
            w = row[y]
            if w != y:
                out[w].append((x, y))
    return out


def enumerate_homs(L: FiniteLattice, K: FiniteLattice, cat=Category.ALL, *,
                   injective: bool = False, cover_preserving: bool = False,
                   fixed: dict | None = None, budget: int = DEFAULT_BUDGET) -> Iterator[LatticeMap]:
    """All maps ``L -> K`` in ``cat``, in lexicographic order of images.

    ``injective`` restricts to embeddings, ``cover_preserving`` to maps
    sending covers to covers, and ``fixed`` pins chosen values.  Raises
    :class:`BudgetExceeded` after ``budget`` search nodes.
    """
    cat = Category.parse(cat)
    if cat is Category.LEN:
        injective = cover_preserving = True
        if K.n < L.n or K.length != L.length:
            return
    if injective and K.n < L.n:
        return
    fixed = dict(fixed or {})
    if cat is not Category.ALL:
        for x, v in ((0, 0), (L.n - 1, K.n - 1)):
            if fixed.setdefault(x, v) != v:
                return
    n = L.n
    MK, JK = K.meet_table, K.join_table
    ML = L.meet_table
    jpairs = _join_pairs(L)
    img = [-1] * n
    used = [False] * K.n
    nodes = [0]
    lens = cat is Category.LEN
    refl = cover_preserving and lens

    def consistent(z: int, fz: int) -> bool:
        mrow, mk = ML[z], MK[fz]
        for y in range(z):
            fy = img[y]
            if img[mrow[y]] != mk[fy]:
                return False
            if refl and L.is_cover(y, z) != K.is_cover(fy, fz):
                return False
        if cover_preserving and not refl:
            for y in L.lower[z]:
                if not K.is_cover(img[y], fz):
                    return False
        for x, y in jpairs[z]:
            if JK[img[x]][img[y]] != fz:
                return False
        return True

    def candidates(z: int) -> Iterable[int]:
        if z in fixed:
            return (fixed[z],)
        low = L.lower[z]
        if len(low) >= 2:
            return (JK[img[low[0]]][img[low[1]]],)
        if not low:
            return range(K.n)
        base = img[low[0]]
        if cover_preserving:
            return K.upper[base]
        return bits(K.up[base])

    def search(z: int):
        if z == n:
            yield LatticeMap(L, K, tuple(img))
            return
        for fz in candidates(z):
            nodes[0] += 1
            if nodes[0] > budget:
                raise BudgetExceeded(f"homomorphism search exceeded {budget} nodes", budget)
            if injective and used[fz]:
                continue
            if lens and K.height[fz] != L.height[z]:
                continue
            if z in fixed and fixed[z] != fz:
                continue
            if not consistent(z, fz):
                continue
            img[z] = fz
            used[fz] = True
            yield from search(z + 1)
            used[fz] = False
            img[z] = -1

    yield from search(0)


def count_homs(L, K, cat=Category.ALL, **kw) -> int:
    return sum(1 for _ in enumerate_homs(L, K, cat, **kw))


def first_hom(L, K, cat=Category.ALL, **kw) -> LatticeMap | None:
    return next(iter(enumerate_homs(L, K, cat, **kw)), None)


def is_monomorphism(f: LatticeMap, cat) -> bool:
    """Monomorphisms in these categories are exactly the embeddings."""
    return bool(check_morphism(f, cat)) and f.is_injective()


def find_retraction(iota: LatticeMap, cat=Category.ZO, *, budget: int = DEFAULT_BUDGET,
                    check: bool = True) -> LatticeMap | None:
    cat = Category.parse(cat)
    if check and not is_monomorphism(iota, cat):
        raise NotMono("the map is not a monomorphism of the category", iota.image)
    L, K = iota.source, iota.target
    fixed = {v: x for x, v in enumerate(iota.image)}
    return first_hom(K, L, cat, fixed=fixed, budget=budget)


def embeddings(L: FiniteLattice, K: FiniteLattice, cat=Category.ZO, **kw) -> Iterator[LatticeMap]:
    cat = Category.parse(cat)
    return enumerate_homs(L, K, cat, injective=True, **kw)


# -- verdicts -----------------------------------------------------------------

@dataclass
class Verdict:
    holds: bool
    label: str
    witness: object = None
    checked: int = 0
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        w = self.witness
        if isinstance(w, LatticeMap):
            w = {"target": w.target.to_json(), "map": list(w.image)}
        return {"holds": self.holds, "verdict": self.label, "witness": w,
                "checked": self.checked, **self.details}


def _codomains(U, extra: Iterable[FiniteLattice]) -> list[FiniteLattice]:
    out = [m.lattice for m in U] if U is not None else []
    out.extend(extra)
    return out


def builder_extensions(D) -> list[FiniteLattice]:
    """Lattices one element larger, built from ``D`` by the corner and
    filter insertions, used as extra codomains beyond the universe bound."""
    from .builders import proper_extension_witness
    w = proper_extension_witness(D)
    return [] if w == "maximal" else [w.extended.lattice]


def maximality_verdict(L: FiniteLattice, U=None, extra: Iterable[FiniteLattice] = (),
                       budget: int = DEFAULT_BUDGET, diagram=None) -> Verdict:
    """No length-preserving embedding into a strictly larger equal-length
    lattice among the universe members and ``extra``.

    With a ``diagram`` of ``L`` the one-element extension witness is
    computed too and reported under ``details["one_element_witness"]``;
    near the size bound it may find an extension the universe lacks.
    """
    details = {}
    if diagram is not None:
        from .builders import proper_extension_witness
        w = proper_extension_witness(diagram)
        details["one_element_witness"] = "maximal" if w == "maximal" else w.kind
    checked = 0
    for K in _codomains(U, extra):
        if K.n <= L.n or K.length != L.length:
            continue
        checked += 1
        f = first_hom(L, K, Category.LEN, budget=budget)
        if f is not None:
            return Verdict(False, "extendable", f, checked, details)
    return Verdict(True, "maximal-in-U", None, checked, details)


def absolute_retract_verdict(L: FiniteLattice, U=None, cat=Category.ZO,
                             extra: Iterable[FiniteLattice] = (), *,
                             budget: int = DEFAULT_BUDGET, max_target: int | None = None) -> Verdict:
    """Every monomorphism from ``L`` into a universe member (or ``extra``)
    has a retraction in ``cat``; otherwise the first failing embedding."""
    cat = Category.parse(cat)
    checked = 0
    for K in _codomains(U, extra):
        if max_target is not None and K.n > max_target:
            continue
        for iota in embeddings(L, K, cat, budget=budget):
            checked += 1
            if find_retraction(iota, cat, budget=budget, check=False) is None:
                return Verdict(False, "counterexample", iota, checked)
    return Verdict(True, "AR-in-U", None, checked)


def cover_preserving_copies(S: FiniteLattice, L: FiniteLattice) -> Iterator[LatticeMap]:
    return enumerate_homs(S, L, Category.ALL, injective=True, cover_preserving=True)


def fork_counterexample(D) -> tuple[object, LatticeMap] | None:
    """For a patch diagram with at least 5 elements: fork at the upper-left
    4-cell of a cover-preserving copy of S7 and return the extended diagram
    with the inclusion."""
    from .builders import add_fork
    from .diagram import four_cells
    from .fixtures import s7
    cells = set(four_cells(D))
    for f in cover_preserving_copies(s7(), D.lattice):
        zl, zr, l, m, r, top = (f(i) for i in range(1, 7))
        left_cell = (zl, l, m, top) if D.left_of(l, m) else (zl, m, l, top)
        right_cell = (zr, m, r, top) if D.left_of(m, r) else (zr, r, m, top)
        upper_left = left_cell if D.left_of(l, r) else right_cell
        if upper_left in cells:
            K, rec = add_fork(D, upper_left)
            return K, LatticeMap(D.lattice, K.lattice, rec.new_of_old)
    return None


__all__ = [
    "Category", "LatticeMap", "Verdict", "absolute_retract_verdict", "builder_extensions",
    "check_morphism", "count_homs", "cover_preserving_copies", "embeddings", "enumerate_homs",
    "find_retraction", "first_hom", "fork_counterexample", "is_monomorphism",
    "maximality_verdict",
]
