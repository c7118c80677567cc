"""Truncated commutative premonoids: lax symmetric monoidal diagrams over the
opposite surjection category, truncated at a finite level N.

A premonoid stores one chain complex per level 1..N, a structure map for
every non-identity surjection between levels, a multiplication-style laxity
map for every pair of levels (p, q) with p+q <= N, and a weak unit.  Level 0
is never stored: its value is the monoidal unit and its laxity maps are the
(identity) unitors.

Validation is exact matrix equality; the report names each violated axiom
with the indices of the offending square.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chain import (
    ChainComplex,
    ChainMap,
    associator,
    braiding,
    is_quasi_iso,
    tensor,
    tensor_map,
    unit_complex,
)
from .field_linalg import Field
from .phi_epi import (
    Surjection,
    block_swap,
    compose,
    disjoint_sum,
    enumerate_surjections,
    unique_to_one,
)

__all__ = [
    "StrictMonoid",
    "TruncatedPremonoid",
    "PremonoidMorphism",
    "Violation",
    "validate",
    "validate_strict",
    "validate_morphism",
    "is_cosegal",
    "from_strict",
    "to_strict",
    "is_easy_weq",
    "is_easy_fib",
    "h_star",
    "all_surjections_upto",
]


@dataclass(frozen=True)
class Violation:
    axiom: str
    where: tuple
    detail: str = ""

    def __str__(self):
        loc = ",".join(str(w) for w in self.where)
        msg = f"{self.axiom} at ({loc})"
        return msg + (f": {self.detail}" if self.detail else "")


@dataclass
class StrictMonoid:
    """A commutative differential graded monoid: (A, mu, e)."""

    obj: ChainComplex
    mu: ChainMap
    e: ChainMap

    def __post_init__(self):
        a = self.obj
        if self.mu.source != tensor(a, a) or self.mu.target != a:
            raise ValueError("multiplication has wrong endpoints")
        if self.e.source != unit_complex(a.field) or self.e.target != a:
            raise ValueError("unit has wrong endpoints")

    @property
    def field(self) -> Field:
        return self.obj.field

    def __eq__(self, other):
        if not isinstance(other, StrictMonoid):
            return NotImplemented
        return self.obj == other.obj and self.mu == other.mu and self.e == other.e


def validate_strict(m: StrictMonoid) -> list[Violation]:
    """Associativity, commutativity and two-sided unitality, exactly."""
    out = []
    a, mu, e = m.obj, m.mu, m.e
    ident = ChainMap.identity(a)
    lhs = mu @ tensor_map(mu, ident)
    rhs = mu @ tensor_map(ident, mu) @ associator(a, a, a)
    if lhs != rhs:
        out.append(Violation("associativity", ()))
    if mu @ braiding(a, a) != mu:
        out.append(Violation("commutativity", ()))
    # I (x) A and A (x) I are literally A, so the unitors are identities
    if mu @ tensor_map(e, ident) != ident:
        out.append(Violation("left-unit", ()))
    if mu @ tensor_map(ident, e) != ident:
        out.append(Violation("right-unit", ()))
    return out


def all_surjections_upto(level: int):
    """All non-identity surjections n ->> m with n <= level, deterministic order."""
    for n in range(1, level + 1):
        for m in range(1, n + 1):
            for v in enumerate_surjections(n, m):
                if not v.is_identity():
                    yield v


@dataclass
class TruncatedPremonoid:
    """Objects F(n) for 1 <= n <= N with structure, laxity and unit data."""

    level: int
    objects: dict
    structure: dict
    laxity: dict
    unit: ChainMap

    def __post_init__(self):
        n_max = self.level
        if n_max < 2:
            raise ValueError("truncation level must be at least 2")
        if set(self.objects) != set(range(1, n_max + 1)):
            raise ValueError("objects must cover levels 1..N")
        fld = self.objects[1].field
        if any(c.field != fld for c in self.objects.values()):
            raise ValueError("field mismatch among objects")
        structure = {}
        for v, f in self.structure.items():
            if not isinstance(v, Surjection) or v.is_identity():
                continue
            if v.source_size > n_max:
                raise ValueError(f"structure map beyond level {n_max}: {v}")
            if f.source != self.objects[v.target_size] or f.target != self.objects[v.source_size]:
                raise ValueError(f"structure map for {v} has wrong endpoints")
            structure[v] = f
        for v in all_surjections_upto(n_max):
            if v not in structure:
                raise ValueError(f"missing structure map for {v}")
        self.structure = structure
        expected = {
            (p, q)
            for p in range(1, n_max)
            for q in range(1, n_max - p + 1)
        }
        if set(self.laxity) != expected:
            raise ValueError("laxity maps must cover exactly {p,q >= 1, p+q <= N}")
        for (p, q), f in self.laxity.items():
            if f.source != tensor(self.objects[p], self.objects[q]):
                raise ValueError(f"laxity ({p},{q}) has wrong source")
            if f.target != self.objects[p + q]:
                raise ValueError(f"laxity ({p},{q}) has wrong target")
        if self.unit.source != unit_complex(fld) or self.unit.target != self.objects[1]:
            raise ValueError("unit has wrong endpoints")

    @property
    def field(self) -> Field:
        return self.objects[1].field

    def structure_map(self, v: Surjection) -> ChainMap:
        if v.is_identity():
            return ChainMap.identity(self.objects[v.source_size])
        return self.structure[v]

    def laxity_map(self, p: int, q: int) -> ChainMap:
        return self.laxity[(p, q)]


@dataclass
class PremonoidMorphism:
    source: TruncatedPremonoid
    target: TruncatedPremonoid
    components: dict

    def __post_init__(self):
        if self.source.level != self.target.level:
            raise ValueError("level mismatch")
        for n in range(1, self.source.level + 1):
            f = self.components.get(n)
            if f is None:
                raise ValueError(f"missing component at level {n}")
            if f.source != self.source.objects[n] or f.target != self.target.objects[n]:
                raise ValueError(f"component at level {n} has wrong endpoints")

    def component(self, n: int) -> ChainMap:
        return self.components[n]

    def __eq__(self, other):
        if not isinstance(other, PremonoidMorphism):
            return NotImplemented
        return self.components == other.components

    @staticmethod
    def identity(f: TruncatedPremonoid) -> "PremonoidMorphism":
        return PremonoidMorphism(
            f, f, {n: ChainMap.identity(f.objects[n]) for n in f.objects}
        )

    def compose(self, other: "PremonoidMorphism") -> "PremonoidMorphism":
        """self after other."""
        comps = {
            n: self.components[n] @ other.components[n] for n in self.components
        }
        return PremonoidMorphism(other.source, self.target, comps)


def validate(f: TruncatedPremonoid) -> list[Violation]:
    """Check every premonoid axiom; empty report means valid.

    Axiom names: functoriality, laxity-naturality, laxity-associativity,
    laxity-symmetry, diag-unitality.
    """
    out = []
    n_max = f.level

    # functoriality: F(v).F(u) = F(u.v) for composable u, v
    for v in all_surjections_upto(n_max):
        for u in all_surjections_upto(v.target_size):
            if u.source_size != v.target_size:
                continue
            lhs = f.structure_map(v) @ f.structure_map(u)
            rhs = f.structure_map(compose(u, v))
            if lhs != rhs:
                out.append(Violation("functoriality", (tuple(v.map), tuple(u.map))))

    # laxity naturality against all pairs of structure maps
    for (p, q) in sorted(f.laxity):
        for (pp, qq) in sorted(f.laxity):
            for a in enumerate_surjections(pp, p):
                for b in enumerate_surjections(qq, q):
                    lhs = f.laxity_map(pp, qq) @ tensor_map(
                        f.structure_map(a), f.structure_map(b)
                    )
                    rhs = f.structure_map(disjoint_sum(a, b)) @ f.laxity_map(p, q)
                    if lhs != rhs:
                        out.append(
                            Violation(
                                "laxity-naturality",
                                (p, q, pp, qq, tuple(a.map), tuple(b.map)),
                            )
                        )

    # associativity modulo the associator
    for p in range(1, n_max - 1):
        for q in range(1, n_max - p):
            for r in range(1, n_max - p - q + 1):
                fp, fq, fr = f.objects[p], f.objects[q], f.objects[r]
                lhs = f.laxity_map(p + q, r) @ tensor_map(
                    f.laxity_map(p, q), ChainMap.identity(fr)
                )
                rhs = (
                    f.laxity_map(p, q + r)
                    @ tensor_map(ChainMap.identity(fp), f.laxity_map(q, r))
                    @ associator(fp, fq, fr)
                )
                if lhs != rhs:
                    out.append(Violation("laxity-associativity", (p, q, r)))

    # symmetry: F(swap) . phi_{p,q} = phi_{q,p} . braiding
    for (p, q) in sorted(f.laxity):
        lhs = f.structure_map(block_swap(p, q)) @ f.laxity_map(p, q)
        rhs = f.laxity_map(q, p) @ braiding(f.objects[p], f.objects[q])
        if lhs != rhs:
            out.append(Violation("laxity-symmetry", (p, q)))

    # weak unitality: phi_{1,1}.(e (x) id) = F(u_2) via the (identity) unitor
    ident1 = ChainMap.identity(f.objects[1])
    lhs = f.laxity_map(1, 1) @ tensor_map(f.unit, ident1)
    rhs = f.structure_map(unique_to_one(2))
    if lhs != rhs:
        out.append(Violation("diag-unitality", (1,)))

    return out


def validate_morphism(s: PremonoidMorphism) -> list[Violation]:
    """Naturality, multiplicativity and the unit triangle for a morphism."""
    out = []
    f, g = s.source, s.target
    for v in all_surjections_upto(f.level):
        lhs = s.component(v.source_size) @ f.structure_map(v)
        rhs = g.structure_map(v) @ s.component(v.target_size)
        if lhs != rhs:
            out.append(Violation("naturality", (tuple(v.map),)))
    for (p, q) in sorted(f.laxity):
        lhs = s.component(p + q) @ f.laxity_map(p, q)
        rhs = g.laxity_map(p, q) @ tensor_map(s.component(p), s.component(q))
        if lhs != rhs:
            out.append(Violation("multiplicativity", (p, q)))
    if s.component(1) @ f.unit != g.unit:
        out.append(Violation("unit-triangle", (1,)))
    return out


def _require_valid(f: TruncatedPremonoid):
    report = validate(f)
    if report:
        raise ValueError("invalid premonoid: " + "; ".join(map(str, report[:3])))


def is_cosegal(f: TruncatedPremonoid) -> bool:
    """Whether F(1) -> F(n) is a quasi-isomorphism for every 2 <= n <= N.

    Since level 1 is initial, two-out-of-three then makes every structure map
    a quasi-isomorphism.
    """
    _require_valid(f)
    return all(
        is_quasi_iso(f.structure_map(unique_to_one(n)))
        for n in range(2, f.level + 1)
    )


def from_strict(m: StrictMonoid, level: int) -> TruncatedPremonoid:
    """The constant premonoid: identity structure maps, laxity the multiplication."""
    if validate_strict(m):
        raise ValueError("invalid strict monoid")
    a = m.obj
    objects = {n: a for n in range(1, level + 1)}
    structure = {v: ChainMap.identity(a) for v in all_surjections_upto(level)}
    laxity = {
        (p, q): m.mu
        for p in range(1, level)
        for q in range(1, level - p + 1)
    }
    return TruncatedPremonoid(level, objects, structure, laxity, m.e)


def to_strict(f: TruncatedPremonoid) -> StrictMonoid | None:
    """Recover the strict monoid from a constant premonoid; None otherwise."""
    _require_valid(f)
    for v in all_surjections_upto(f.level):
        fv = f.structure_map(v)
        if fv != ChainMap.identity(f.objects[v.source_size]):
            return None
    return StrictMonoid(f.objects[1], f.laxity_map(1, 1), f.unit)


def is_easy_weq(s: PremonoidMorphism) -> bool:
    """Weak equivalence in the level-1-concentrated model structure."""
    _require_valid_morphism(s)
    return is_quasi_iso(s.component(1))


def is_easy_fib(s: PremonoidMorphism) -> bool:
    """Fibration in the level-1-concentrated model structure."""
    _require_valid_morphism(s)
    g = s.component(1)
    return all(g.component(n).is_surjective() for n in g.target.dims)


def _require_valid_morphism(s: PremonoidMorphism):
    report = validate_morphism(s)
    if report:
        raise ValueError("invalid morphism: " + "; ".join(map(str, report[:3])))


def h_star(
    f: TruncatedPremonoid, h: ChainMap, e_tilde: ChainMap
) -> tuple[TruncatedPremonoid, PremonoidMorphism]:
    """Rebase f at its initial entry along h : m -> F(1).

    Requires the unit factorization h . e_tilde = e.  The result g has
    g(1) = m and g(n) = F(n) for n >= 2; laxity maps touching level 1 are
    precomposed with h; the canonical morphism g -> f is h at level 1 and
    the identity elsewhere.
    """
    if h.target != f.objects[1]:
        raise ValueError("h must land in F(1)")
    if h @ e_tilde != f.unit:
        raise ValueError("unit factorization h . e_tilde = e fails")
    m = h.source
    objects = {n: (m if n == 1 else f.objects[n]) for n in range(1, f.level + 1)}
    structure = {}
    for v in all_surjections_upto(f.level):
        base = f.structure_map(v)
        structure[v] = base @ h if v.target_size == 1 else base
    ident = {n: ChainMap.identity(f.objects[n]) for n in f.objects}
    laxity = {}
    for (p, q), phi in f.laxity.items():
        left = h if p == 1 else ident[p]
        right = h if q == 1 else ident[q]
        if p == 1 or q == 1:
            laxity[(p, q)] = phi @ tensor_map(left, right)
        else:
            laxity[(p, q)] = phi
    g = TruncatedPremonoid(f.level, objects, structure, laxity, e_tilde)
    comps = {n: (h if n == 1 else ident[n]) for n in range(1, f.level + 1)}
    can = PremonoidMorphism(g, f, comps)
    return g, can
