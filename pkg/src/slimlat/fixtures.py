"""Small named lattices."""

from __future__ import annotations

from .lattice import FiniteLattice

S7_COVERS = [(0, 1), (0, 2), (1, 3), (1, 4), (2, 4), (2, 5), (3, 6), (4, 6), (5, 6)]
# element names of S7: 0, zl, zr, l, m, r, 1
S7_NAMES = ("0", "zl", "zr", "l", "m", "r", "1")


def chain(n: int) -> FiniteLattice:
    return FiniteLattice(n, [(i, i + 1) for i in range(n - 1)])


def b4() -> FiniteLattice:
    return FiniteLattice(4, [(0, 1), (0, 2), (1, 3), (2, 3)])


def s7() -> FiniteLattice:
    return FiniteLattice(7, S7_COVERS)


def g23() -> FiniteLattice:
    """C2 x C3 with (i, j) stored at index i + 2 j."""
    return FiniteLattice(6, [(0, 1), (0, 2), (1, 3), (2, 3), (2, 4), (3, 5), (4, 5)])


def n5() -> FiniteLattice:
    """Pentagon 0 < b < c < 1, 0 < a < 1 with b=1, a=2, c=3."""
    return FiniteLattice(5, [(0, 1), (0, 2), (1, 3), (2, 4), (3, 4)])


def m3() -> FiniteLattice:
    return FiniteLattice(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])


NAMED = {
    "B1": lambda: chain(1),
    "C1": lambda: chain(1),
    "C2": lambda: chain(2),
    "C3": lambda: chain(3),
    "C4": lambda: chain(4),
    "B4": b4,
    "S7": s7,
    "G23": g23,
    "N5": n5,
    "M3": m3,
}
