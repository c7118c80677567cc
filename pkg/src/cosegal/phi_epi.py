"""Finite sets, surjections, and the latching categories used by the free
construction.

An arrow m -> n of the opposite-surjection index category is stored as the
surjection n ->> m (array of length n with values in {0..m-1}).  Bijections
n ->> n stay in every enumeration: the symmetry data lives exactly there.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

__all__ = [
    "Surjection",
    "enumerate_surjections",
    "compose",
    "disjoint_sum",
    "unique_to_one",
    "identity_surjection",
    "block_swap",
    "PairObject",
    "PlusObject",
    "ShapeArrow",
    "LatchingDiagramShape",
    "latching_shape",
]


@dataclass(frozen=True, order=True)
class Surjection:
    """A surjection {0..m-1} ->> {0..n-1}, stored as the image array."""

    source_size: int
    target_size: int
    map: tuple

    def __post_init__(self):
        m, n = self.source_size, self.target_size
        if m < 1 or n < 1:
            raise ValueError("sizes must be positive (the empty set is isolated)")
        if len(self.map) != m or set(self.map) != set(range(n)):
            raise ValueError(f"not a surjection {m} ->> {n}: {self.map}")
        object.__setattr__(self, "map", tuple(int(x) for x in self.map))

    def __call__(self, i: int) -> int:
        return self.map[i]

    def is_identity(self) -> bool:
        return self.source_size == self.target_size and all(
            self.map[i] == i for i in range(self.source_size)
        )

    def is_bijection(self) -> bool:
        return self.source_size == self.target_size

    def __repr__(self):
        return f"Surjection({self.source_size}->>{self.target_size}, {list(self.map)})"


def identity_surjection(n: int) -> Surjection:
    return Surjection(n, n, tuple(range(n)))


def unique_to_one(n: int) -> Surjection:
    """The unique surjection n ->> 1."""
    return Surjection(n, 1, (0,) * n)


def compose(g: Surjection, f: Surjection) -> Surjection:
    """Function composition g . f (apply f first)."""
    if f.target_size != g.source_size:
        raise ValueError("size mismatch in composition")
    return Surjection(f.source_size, g.target_size, tuple(g.map[x] for x in f.map))


def disjoint_sum(u: Surjection, v: Surjection) -> Surjection:
    """Block sum: v's blocks are placed after u's."""
    m = tuple(u.map) + tuple(x + u.target_size for x in v.map)
    return Surjection(u.source_size + v.source_size, u.target_size + v.target_size, m)


def block_swap(p: int, q: int) -> Surjection:
    """The bijection exchanging a front block of size q with a back block of
    size p; this is the symmetry isomorphism between p+q and q+p in the
    opposite index category."""
    m = tuple(i + p for i in range(q)) + tuple(i for i in range(p))
    return Surjection(p + q, p + q, m)


def enumerate_surjections(m: int, n: int) -> list[Surjection]:
    """All surjections m ->> n in lexicographic order of their image arrays."""
    if m < 1 or n < 1 or n > m:
        return []
    out = []
    targets = set(range(n))
    for arr in product(range(n), repeat=m):
        if set(arr) == targets:
            out.append(Surjection(m, n, arr))
    return out


# ---------------------------------------------------------------------------
# latching shapes
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class PairObject:
    """A decomposition object: a pair (p, q) with p, q >= 1 together with a
    surjection n ->> p+q."""

    p: int
    q: int
    to_sum: Surjection


@dataclass(frozen=True, order=True)
class PlusObject:
    """A single-level object: p < n together with a surjection n ->> p."""

    p: int
    to_level: Surjection


@dataclass(frozen=True)
class ShapeArrow:
    """An arrow of the latching shape.

    kind "pair": (a, b) acts between pair objects; kind "gamma": a surjection
    c from a pair object into a plus object (c = identity is the canonical
    multiplication arrow); kind "plus": c between plus objects.
    """

    src: int
    tgt: int
    kind: str
    a: Surjection | None = None
    b: Surjection | None = None
    c: Surjection | None = None


@dataclass(frozen=True)
class LatchingDiagramShape:
    level: int
    classical: bool
    objects: tuple
    arrows: tuple

    def plus_index(self, p: int, surj: Surjection) -> int:
        """Index of the plus object (p, surj); the embedding of the classical
        shape into the full shape."""
        for k, ob in enumerate(self.objects):
            if isinstance(ob, PlusObject) and ob.p == p and ob.to_level == surj:
                return k
        raise KeyError((p, surj))


def latching_shape(n: int, classical: bool = False) -> LatchingDiagramShape:
    """The shape of the latching diagram at level n.

    classical=True gives the ordinary latching category over the lower
    truncation: objects (p, n ->> p) with p < n.  classical=False adds the
    decomposition objects ((p, q), n ->> p+q) with p, q >= 1; the objects
    that would refer to level n itself are excluded.
    """
    if n < 2:
        raise ValueError("latching shapes start at level 2")
    objects: list = []
    if not classical:
        for p in range(1, n):
            for q in range(1, n - p + 1):
                for v in enumerate_surjections(n, p + q):
                    objects.append(PairObject(p, q, v))
    for p in range(1, n):
        for v in enumerate_surjections(n, p):
            objects.append(PlusObject(p, v))
    objects.sort(key=_object_key)

    index = {ob: k for k, ob in enumerate(objects)}
    arrows: list = []
    for ob in objects:
        if isinstance(ob, PairObject):
            # (a, b) arrows into other pair objects
            for tgt in objects:
                if not isinstance(tgt, PairObject):
                    continue
                for a in enumerate_surjections(tgt.p, ob.p):
                    for b in enumerate_surjections(tgt.q, ob.q):
                        if compose(disjoint_sum(a, b), tgt.to_sum) == ob.to_sum:
                            arr = ShapeArrow(index[ob], index[tgt], "pair", a=a, b=b)
                            if arr.src != arr.tgt or not (a.is_identity() and b.is_identity()):
                                arrows.append(arr)
            # gamma-type arrows into plus objects through some c: r ->> p+q
            for tgt in objects:
                if not isinstance(tgt, PlusObject):
                    continue
                for c in enumerate_surjections(tgt.p, ob.p + ob.q):
                    if compose(c, tgt.to_level) == ob.to_sum:
                        arrows.append(ShapeArrow(index[ob], index[tgt], "gamma", c=c))
        else:
            for tgt in objects:
                if not isinstance(tgt, PlusObject):
                    continue
                for c in enumerate_surjections(tgt.p, ob.p):
                    if compose(c, tgt.to_level) == ob.to_level:
                        if index[ob] == index[tgt] and c.is_identity():
                            continue
                        arrows.append(ShapeArrow(index[ob], index[tgt], "plus", c=c))
    return LatchingDiagramShape(n, classical, tuple(objects), tuple(arrows))


def _object_key(ob):
    if isinstance(ob, PairObject):
        return (0, ob.p, ob.q, ob.to_sum.map)
    return (1, ob.p, ob.to_level.map)
