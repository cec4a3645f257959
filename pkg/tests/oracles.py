"""Independent brute-force oracles.

These work from the bare covering relation by definition-level search and
share no code with the package beyond the input format.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations, product


def order_matrix(n, covers):
    leq = [[x == y for y in range(n)] for x in range(n)]
    for x, y in covers:
        leq[x][y] = True
    for k in range(n):
        for i in range(n):
            if leq[i][k]:
                for j in range(n):
                    if leq[k][j]:
                        leq[i][j] = True
    return leq


class Brute:
    """A lattice given by covers, with meets and joins found by scanning."""

    def __init__(self, n, covers):
        self.n = n
        self.covers = {tuple(c) for c in covers}
        self.leq = order_matrix(n, self.covers)
        self.meet = [[self._bound(x, y, low=True) for y in range(n)] for x in range(n)]
        self.join = [[self._bound(x, y, low=False) for y in range(n)] for x in range(n)]

    @classmethod
    def of(cls, L):
        return cls(L.n, L.covers)

    def _bound(self, x, y, low):
        if low:
            cands = [z for z in range(self.n) if self.leq[z][x] and self.leq[z][y]]
            best = [z for z in cands if all(self.leq[w][z] for w in cands)]
        else:
            cands = [z for z in range(self.n) if self.leq[x][z] and self.leq[y][z]]
            best = [z for z in cands if all(self.leq[z][w] for w in cands)]
        return best[0] if len(best) == 1 else None

    def lower(self, y):
        return [x for x, z in self.covers if z == y]

    def upper(self, x):
        return [z for y, z in self.covers if y == x]

    def is_lattice(self):
        return all(self.meet[x][y] is not None and self.join[x][y] is not None
                   for x in range(self.n) for y in range(self.n))


def jir(B):
    return [x for x in range(B.n) if len(B.lower(x)) == 1]


def mir(B):
    return [x for x in range(B.n) if len(B.upper(x)) == 1]


def slim_by_two_chains(B):
    """Jir is a union of two chains: try every 2-colouring."""
    J = jir(B)

    def chain(s):
        return all(B.leq[a][b] or B.leq[b][a] for a, b in combinations(s, 2))

    for colours in product((0, 1), repeat=len(J)):
        if colours and colours[0] == 1:
            continue
        if chain([j for j, c in zip(J, colours) if c == 0]) and \
                chain([j for j, c in zip(J, colours) if c == 1]):
            return True
    return not J


def semimodular(B):
    cov = B.covers
    return all(not ((B.meet[x][y], x) in cov) or (y, B.join[x][y]) in cov
               for x in range(B.n) for y in range(B.n))


def set_partitions(n):
    """All partitions of range(n) as label lists (restricted growth strings)."""
    def grow(prefix, top):
        if len(prefix) == n:
            yield list(prefix)
            return
        for b in range(top + 2):
            yield from grow(prefix + [b], max(top, b))
    yield from grow([0], 0)


def congruence_partitions(B):
    out = set()
    for lab in set_partitions(B.n):
        ok = True
        for x, y in combinations(range(B.n), 2):
            if lab[x] != lab[y]:
                continue
            for z in range(B.n):
                if lab[B.meet[x][z]] != lab[B.meet[y][z]] or lab[B.join[x][z]] != lab[B.join[y][z]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.add(frozenset(frozenset(x for x in range(B.n) if lab[x] == b) for b in set(lab)))
    return out


def homomorphisms(A, B, kind="all"):
    """All maps A -> B by brute force; ``kind`` in all / zo / len."""
    found = []
    for img in product(range(B.n), repeat=A.n):
        if kind != "all" and (img[0] != 0 or img[A.n - 1] != B.n - 1):
            continue
        if any(img[A.meet[x][y]] != B.meet[img[x]][img[y]] or img[A.join[x][y]] != B.join[img[x]][img[y]]
               for x in range(A.n) for y in range(x + 1, A.n)):
            continue
        if kind == "len":
            if len(set(img)) != A.n:
                continue
            if any(((x, y) in A.covers) != ((img[x], img[y]) in B.covers)
                   for x in range(A.n) for y in range(A.n) if x != y):
                continue
        found.append(tuple(img))
    return found


def isomorphic(A, B):
    if A.n != B.n or len(A.covers) != len(B.covers):
        return False
    for perm in permutations(range(A.n)):
        if all((perm[x], perm[y]) in B.covers for x, y in A.covers):
            return True
    return False


def segments_cross(p1, p2, q1, q2):
    """Proper crossing of two straight segments (shared endpoints excluded)."""
    def orient(a, b, c):
        v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        return (v > 0) - (v < 0)
    if {p1, p2} & {q1, q2}:
        return False
    d1, d2 = orient(q1, q2, p1), orient(q1, q2, p2)
    d3, d4 = orient(p1, p2, q1), orient(p1, p2, q2)
    return d1 * d2 < 0 and d3 * d4 < 0


def drawing_is_planar(D):
    pts = [(Fraction(x), Fraction(y)) for x, y in D.coords]
    edges = [(x, y) for x in range(D.n) for y in D.upper_order[x]]
    return not any(segments_cross(pts[a], pts[b], pts[c], pts[d])
                   for (a, b), (c, d) in combinations(edges, 2))


def cover_squares(B):
    """All 4-element cover-preserving boolean sublattices {b, u, v, t}."""
    out = set()
    for b in range(B.n):
        for u, v in combinations(B.upper(b), 2):
            t = B.join[u][v]
            if (u, t) in B.covers and (v, t) in B.covers:
                out.add(frozenset((b, u, v, t)))
    return out
