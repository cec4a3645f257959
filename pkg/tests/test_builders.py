import pytest

from slimlat.builders import (
    add_corner,
    add_corner_with_map,
    add_fork,
    chain_diagram,
    corner_check,
    corner_positions,
    grid,
    proper_extension_witness,
    remove_corner,
    remove_doubly_irreducible,
    remove_fork_once,
)
from slimlat.diagram import attach_diagram, four_cells, infer_diagram
from slimlat.enumerate import canonical_form
from slimlat.errors import NotACell, NotACorner, NotOnBoundary, NotRectangular
from slimlat.fixtures import b4, chain, g23, s7
from slimlat.lattice import is_semimodular, is_slim, meet_irreducibles
from slimlat.maps import Category, LatticeMap, check_morphism

ZL, ZR, L_, M, R, ONE = 1, 2, 3, 4, 5, 6
S7_ORDER = [[ZL, ZR], [L_, M], [M, R], [ONE], [ONE], [ONE], []]


def iso(A, B):
    return canonical_form(A) == canonical_form(B)


def test_grid():
    assert grid(1, 1).lattice == b4()
    G = grid(1, 2)
    assert G.n == 6 and G.lattice.length == 3 and G.lattice == g23()
    G22 = grid(2, 2)
    assert G22.n == 9 and len(four_cells(G22)) == 4


def test_chain_diagram():
    assert chain_diagram(3).lattice == chain(3)


def test_fork_b4_is_s7():
    D, rec = add_fork(grid(1, 1), (0, 1, 2, 3))
    assert D.lattice == s7()
    assert D == attach_diagram(s7(), S7_ORDER)
    assert len(rec.left_trajectory) == len(rec.right_trajectory) == 1
    assert rec.m == M and rec.added == 3
    assert list(D.lattice.lower[rec.m]) == [ZL, ZR] and D.lattice.upper[rec.m] == (ONE,)


def test_fork_s7_top_left_cell():
    D = attach_diagram(s7(), S7_ORDER)
    K, rec = add_fork(D, (ZL, L_, M, ONE))
    assert K.n == 11
    f = rec.new_of_old
    # steps are in the labels of the result
    assert [(s.lower, s.upper) for s in rec.left_trajectory] == [(f[ZL], f[L_])]
    assert [(s.lower, s.upper) for s in rec.right_trajectory] == [(f[ZL], f[M]), (f[0], f[ZR])]
    assert is_slim(K.lattice) and is_semimodular(K.lattice)
    # trajectory elements have one lower and two upper covers
    for s in rec.left_trajectory + rec.right_trajectory:
        assert len(K.lattice.upper[s.new]) == 2


def test_fork_g23():
    sizes = sorted(add_fork(grid(1, 2), c)[0].n for c in four_cells(grid(1, 2)))
    assert sizes == [9, 10]
    # the cell at the lower-left corner of the natural diagram
    assert add_fork(grid(1, 2), (0, 1, 2, 3))[0].n == 9


def test_fork_inclusion_is_zo_not_len():
    D, rec = add_fork(grid(1, 1), (0, 1, 2, 3))
    f = LatticeMap(b4(), D.lattice, rec.new_of_old)
    assert check_morphism(f, Category.ZO)
    assert not check_morphism(f, Category.LEN)


def test_fork_rejects_non_cell():
    with pytest.raises(NotACell):
        add_fork(grid(1, 1), (0, 2, 1, 3))


def test_unfork():
    D = attach_diagram(s7(), S7_ORDER)
    reduced, rec = remove_fork_once(D)
    assert reduced.lattice == b4()
    assert add_fork(reduced, rec.cell)[0] == D
    assert remove_fork_once(grid(1, 2)) is None
    for c in four_cells(grid(1, 2)):
        K, _ = add_fork(grid(1, 2), c)
        back, rec = remove_fork_once(K)
        assert iso(back.lattice, g23())
        assert add_fork(back, rec.cell)[0] == K
    with pytest.raises(NotRectangular):
        remove_fork_once(chain_diagram(3))


def test_remove_corner():
    assert remove_corner(grid(1, 1), 1).lattice == chain(3)
    D = attach_diagram(s7(), S7_ORDER)
    with pytest.raises(NotACorner):
        remove_corner(D, M)
    # the top covers three elements, so l fails the corner condition
    assert corner_check(D, L_) is not None
    with pytest.raises(NotACorner):
        remove_corner(D, L_)


def test_remove_doubly_irreducible_s7():
    D = attach_diagram(s7(), S7_ORDER)
    E = remove_doubly_irreducible(D, L_)
    assert E.n == 6 and is_slim(E.lattice) and is_semimodular(E.lattice)
    assert iso(E.lattice, g23())


def test_add_corner():
    assert add_corner(chain_diagram(3), "left", 1).lattice == b4()
    ext, new_of_old = add_corner_with_map(grid(1, 2), "left", 3)
    assert ext.n == 7 and iso(ext.lattice, s7())
    new = new_of_old[6]
    assert ext.lattice.lower[new] == (new_of_old[1],) and ext.lattice.upper[new] == (6,)
    assert add_corner(grid(1, 1), "left", 1) is None
    with pytest.raises(NotOnBoundary):
        add_corner(grid(1, 1), "left", 2)


def test_corner_round_trip():
    G = grid(2, 2)
    for u in range(G.n):
        if corner_check(G, u) is None:
            E = remove_corner(G, u)
            assert E.lattice.length == G.lattice.length
            back = [add_corner(E, side, z) for side, z in corner_positions(E)]
            assert any(b is not None and iso(b.lattice, G.lattice) for b in back)


def test_witness():
    assert proper_extension_witness(attach_diagram(s7(), S7_ORDER)) == "maximal"
    assert proper_extension_witness(chain_diagram(2)) == "maximal"
    assert proper_extension_witness(chain_diagram(1)) == "maximal"
    w = proper_extension_witness(chain_diagram(3))
    assert w.extended.lattice == b4() and w.kind == "corner_added"
    w = proper_extension_witness(grid(1, 2))
    assert w.kind == "filter_insertion" and iso(w.extended.lattice, s7())
    d = w.added
    assert w.extended.lattice.lower[d] == (w.embedding(1),)
    assert w.extended.lattice.upper[d] == (w.extended.n - 1,)
    assert check_morphism(w.embedding, Category.LEN)


def test_fork_adds_one_meet_irreducible():
    for c in four_cells(grid(2, 2)):
        K, rec = add_fork(grid(2, 2), c)
        old = {rec.new_of_old[x] for x in meet_irreducibles(grid(2, 2).lattice)}
        assert set(meet_irreducibles(K.lattice)) == old | {rec.m}
        assert K.lattice.length == 5


def test_infer_then_fork():
    D = infer_diagram(s7())
    for c in four_cells(D):
        K, _ = add_fork(D, c)
        assert is_slim(K.lattice) and is_semimodular(K.lattice)
