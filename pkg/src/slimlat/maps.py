"""Maps between lattices and the three morphism categories."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .lattice import Check, FiniteLattice


class Category(str, enum.Enum):
    ALL = "all"   # all lattice homomorphisms
    ZO = "zo"     # {0,1}-homomorphisms
    LEN = "len"   # length-preserving embeddings

    @classmethod
    def parse(cls, tag) -> "Category":
        if isinstance(tag, Category):
            return tag
        return cls(str(tag).lower())


@dataclass(frozen=True)
class LatticeMap:
    source: FiniteLattice
    target: FiniteLattice
    image: tuple

    def __post_init__(self):
        object.__setattr__(self, "image", tuple(int(v) for v in self.image))
        if len(self.image) != self.source.n:
            raise ValueError(f"map has {len(self.image)} values for {self.source.n} elements")
        if any(not 0 <= v < self.target.n for v in self.image):
            raise ValueError("map value outside the target lattice")

    def __repr__(self) -> str:
        return f"LatticeMap({self.source.n} -> {self.target.n}, {list(self.image)})"

    def __call__(self, x: int) -> int:
        return self.image[x]

    def compose(self, inner: "LatticeMap") -> "LatticeMap":
        """``self o inner`` (apply ``inner`` first)."""
        if inner.target != self.source:
            raise ValueError("maps are not composable")
        return LatticeMap(inner.source, self.target, tuple(self.image[v] for v in inner.image))

    def is_injective(self) -> bool:
        return len(set(self.image)) == len(self.image)

    def is_surjective(self) -> bool:
        return len(set(self.image)) == self.target.n

    def is_identity(self) -> bool:
        return self.source == self.target and self.image == tuple(range(self.source.n))

    def categories(self) -> frozenset:
        return frozenset(c for c in Category if check_morphism(self, c))

    def to_json(self) -> dict:
        return {"map": list(self.image)}

    @classmethod
    def identity(cls, L: FiniteLattice) -> "LatticeMap":
        return cls(L, L, tuple(range(L.n)))


def check_morphism(f: LatticeMap, cat) -> Check:
    cat = Category.parse(cat)
    L, K, img = f.source, f.target, f.image
    for x in range(L.n):
        fx = img[x]
        for y in range(x + 1, L.n):
            fy = img[y]
            if img[L.meet_table[x][y]] != K.meet_table[fx][fy]:
                return Check(False, ("meet", x, y))
            if img[L.join_table[x][y]] != K.join_table[fx][fy]:
                return Check(False, ("join", x, y))
    if cat is Category.ALL:
        return Check(True)
    if img[0] != 0:
        return Check(False, ("bottom", 0))
    if img[L.n - 1] != K.n - 1:
        return Check(False, ("top", L.n - 1))
    if cat is Category.ZO:
        return Check(True)
    seen = {}
    for x, v in enumerate(img):
        if v in seen:
            return Check(False, ("injective", seen[v], x))
        seen[v] = x
    for x in range(L.n):
        for y in range(L.n):
            if L.is_cover(x, y) != K.is_cover(img[x], img[y]):
                return Check(False, ("cover", x, y))
    if L.length != K.length:
        return Check(False, ("length", L.length, K.length))
    return Check(True)
