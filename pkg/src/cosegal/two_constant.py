"""Two-constant premonoids and their co-Segal replacement.

A 2-constant premonoid is constant above level 1: it is determined by a
strict commutative monoid (the base), an apex complex over level 1, a
comparison map h from the apex into the base, and a unit factorization.
Everything here works with that packaged form; `expand_to_premonoid`
materialises the full truncated premonoid by rebasing the constant diagram.

The replacement functor factors h as a cofibration into the mapping
cylinder followed by a trivial fibration.  Over a field this produces, in
one deterministic step, an object whose level maps are trivial fibrations,
i.e. one that is injective against the whole localizing set; the usual
transfinite induction is never needed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chain import (
    ChainComplex,
    ChainMap,
    GeneratingCofibration,
    cylinder_factorization,
    generating_cofibrations,
    has_rlp,
    induced_matrix,
    is_trivial_fibration,
    pushout,
    pushout_universal,
    rlp_window,
    unit_complex,
    wide_pushout,
)
from .field_linalg import Matrix
from .phi_epi import unique_to_one
from .premonoid import (
    PremonoidMorphism,
    StrictMonoid,
    TruncatedPremonoid,
    from_strict,
    h_star,
    to_strict,
    validate,
    validate_strict,
)

__all__ = [
    "ArrowSquare",
    "TwoConstantPremonoid",
    "K2Instruction",
    "LocalizingTemplate",
    "localizing_set",
    "expand_to_premonoid",
    "canonical_morphism",
    "package_two_constant",
    "reflect",
    "fundamental_factorization",
    "pushout_k2",
    "upsilon_morphism",
    "push_instruction_forward",
    "wide_pushout_two_constant",
    "cosegalify_two_constant",
    "is_k_injective",
]


@dataclass
class ArrowSquare:
    """A commutative square g . top = bottom . alpha in chain complexes."""

    alpha: ChainMap
    top: ChainMap
    bottom: ChainMap
    g: ChainMap

    def __post_init__(self):
        if self.g @ self.top != self.bottom @ self.alpha:
            raise ValueError("square does not commute")


@dataclass
class TwoConstantPremonoid:
    """Base monoid, apex over level 1, comparison h, and unit factorization."""

    base: StrictMonoid
    apex: ChainComplex
    h: ChainMap
    unit_map: ChainMap

    def __post_init__(self):
        if self.h.source != self.apex or self.h.target != self.base.obj:
            raise ValueError("h must run from the apex to the base object")
        if self.unit_map.source != unit_complex(self.apex.field) or self.unit_map.target != self.apex:
            raise ValueError("unit map must run from the unit into the apex")
        if self.h @ self.unit_map != self.base.e:
            raise ValueError("unit factorization h . unit = base unit fails")

    @property
    def field(self):
        return self.apex.field

    def validate(self):
        return validate_strict(self.base)


@dataclass
class K2Instruction:
    """A level-2 attaching instruction: a generating cofibration together
    with maps q (sphere into the apex) and p (disc into the base) making the
    square against h commute."""

    alpha: GeneratingCofibration
    q: ChainMap
    p: ChainMap

    def square(self, f: TwoConstantPremonoid) -> ArrowSquare:
        return ArrowSquare(self.alpha.inclusion, self.q, self.p, f.h)


@dataclass(frozen=True)
class LocalizingTemplate:
    """One localizing morphism shape: a generating cofibration degree and the
    level it attaches at; completed into an instruction by attaching maps."""

    degree: int
    level: int


def localizing_set(window: tuple[int, int], max_level: int) -> list[LocalizingTemplate]:
    """Templates for the localizing set: one per (disc degree meeting the
    window, level 2..N)."""
    if max_level < 2:
        raise ValueError("need at least level 2")
    lo, hi = window
    out = []
    for n in range(2, max_level + 1):
        for d in range(lo, hi + 2):
            out.append(LocalizingTemplate(d, n))
    return out


def expand_to_premonoid(f: TwoConstantPremonoid, level: int) -> TruncatedPremonoid:
    """Materialise the truncated premonoid: the constant diagram of the base,
    rebased at level 1 along h."""
    if f.validate():
        raise ValueError("invalid base monoid")
    const = from_strict(f.base, level)
    g, _ = h_star(const, f.h, f.unit_map)
    return g


def canonical_morphism(f: TwoConstantPremonoid, level: int) -> PremonoidMorphism:
    """The comparison from the expanded premonoid into the constant one: h at
    level 1 and identities above."""
    const = from_strict(f.base, level)
    return h_star(const, f.h, f.unit_map)[1]


def package_two_constant(f: TruncatedPremonoid) -> TwoConstantPremonoid:
    """Recover the packaged form from a 2-constant truncated premonoid.

    The base multiplication lives at the (2,2) laxity entry, so the
    truncation level must be at least 4; below that a premonoid document
    simply does not contain enough data to reconstruct the base monoid.
    """
    if f.level < 4:
        raise ValueError(
            "need level >= 4 to recover the base multiplication from a "
            "premonoid document; use a packaged two_constant document instead"
        )
    u2 = unique_to_one(2)
    h = f.structure_map(u2)
    a = f.objects[2]
    mu = f.laxity_map(2, 2)
    e = h @ f.unit
    base = StrictMonoid(a, mu, e)
    packaged = TwoConstantPremonoid(base, f.objects[1], h, f.unit)
    expanded = expand_to_premonoid(packaged, f.level)
    same = (
        expanded.objects == f.objects
        and expanded.laxity == f.laxity
        and expanded.structure == f.structure
        and expanded.unit == f.unit
    )
    if not same:
        raise ValueError("premonoid is not 2-constant (not a rebased constant diagram)")
    return packaged


def reflect(f) -> StrictMonoid:
    """The strict reflection on the shapes where it is explicit: the base of
    a 2-constant premonoid, or the underlying monoid of a constant one."""
    if isinstance(f, TwoConstantPremonoid):
        return f.base
    if isinstance(f, TruncatedPremonoid):
        m = to_strict(f)
        if m is not None:
            return m
    raise ValueError("unsupported shape: reflection is only explicit for "
                     "constant and 2-constant premonoids")


def fundamental_factorization(
    f: TwoConstantPremonoid, level: int
) -> tuple[PremonoidMorphism, PremonoidMorphism]:
    """Factor the unit into the reflection as rho (identity at level 1)
    followed by eps (h at level 1, identities above).

    For an already 2-constant input the middle object is the input itself,
    so rho is the identity morphism; rho is always an easy weak equivalence.
    """
    expanded = expand_to_premonoid(f, level)
    rho = PremonoidMorphism.identity(expanded)
    eps = canonical_morphism(f, level)
    return rho, eps


def pushout_k2(
    f: TwoConstantPremonoid, ins: K2Instruction
) -> tuple[TwoConstantPremonoid, ChainMap, ChainMap]:
    """Glue a generating cofibration onto the apex along an attaching square.

    Returns (e, eps, i_v): the new 2-constant premonoid e whose apex is the
    pushout of alpha along q; eps is the apex leg (level-1 component of the
    canonical morphism into e, identity at levels >= 2); i_v the disc leg.
    The base is untouched, so the reflection is preserved verbatim.
    """
    square = ins.square(f)  # raises if the attaching square does not commute
    p_obj, i_v, eps = pushout(ins.alpha.inclusion, ins.q)
    gamma = pushout_universal(eps, i_v, f.h, ins.p)
    e = TwoConstantPremonoid(f.base, p_obj, gamma, eps @ f.unit_map)
    return e, eps, i_v


def upsilon_morphism(
    f: TwoConstantPremonoid, e: TwoConstantPremonoid, eps: ChainMap, level: int
) -> PremonoidMorphism:
    """The canonical premonoid morphism expand(f) -> expand(e): eps at level
    1 and identities above."""
    src = expand_to_premonoid(f, level)
    tgt = expand_to_premonoid(e, level)
    comps = {1: eps}
    for n in range(2, level + 1):
        comps[n] = ChainMap.identity(src.objects[n])
    return PremonoidMorphism(src, tgt, comps)


def push_instruction_forward(ins: K2Instruction, eps: ChainMap) -> K2Instruction:
    """Reattach an instruction along the apex leg of a previous pushout."""
    return K2Instruction(ins.alpha, eps @ ins.q, ins.p)


def wide_pushout_two_constant(
    f: TwoConstantPremonoid, instructions: list[K2Instruction]
):
    """Amalgamate several attaching instructions in one step.

    The apex is the wide pushout of the individual apex legs; the base is
    unchanged.  Returns (e_inf, source_leg, legs) with legs indexed like the
    instructions.
    """
    if not instructions:
        return f, ChainMap.identity(f.apex), []
    pieces = [pushout_k2(f, ins) for ins in instructions]
    q, src_leg, legs = wide_pushout([eps for _, eps, _ in pieces])
    comps = {}
    for n in q.dims:
        through = Matrix.hstack(
            q.field,
            [src_leg.component(n)] + [leg.component(n) for leg in legs],
        )
        composite = Matrix.hstack(
            q.field,
            [f.h.component(n)] + [piece[0].h.component(n) for piece in pieces],
        )
        comps[n] = induced_matrix(through, composite)
    h_inf = ChainMap(q, f.base.obj, comps)
    e_inf = TwoConstantPremonoid(f.base, q, h_inf, src_leg @ f.unit_map)
    return e_inf, src_leg, legs


def cosegalify_two_constant(
    f: TwoConstantPremonoid, level: int
) -> tuple[TwoConstantPremonoid, PremonoidMorphism]:
    """Replace f by a 2-constant premonoid satisfying the co-Segal
    conditions: factor h through its mapping cylinder.

    The new apex is Cyl(h); the new comparison is the trivial fibration part
    of the factorization, which is exactly injectivity against the level-2
    localizing instructions.  The base, hence the reflection, is preserved.
    """
    if f.validate():
        raise ValueError("invalid base monoid")
    i, p = cylinder_factorization(f.h)
    s = TwoConstantPremonoid(f.base, p.source, p, i @ f.unit_map)
    src = expand_to_premonoid(f, level)
    tgt = expand_to_premonoid(s, level)
    comps = {1: i}
    for n in range(2, level + 1):
        comps[n] = ChainMap.identity(src.objects[n])
    tau = PremonoidMorphism(src, tgt, comps)
    return s, tau


def is_k_injective(f, level: int | None = None, cross_check: bool = False) -> bool:
    """Whether every map from level 1 up to level n is a trivial fibration.

    Accepts a TruncatedPremonoid or a TwoConstantPremonoid (expanded on the
    fly).  With cross_check=True the answer is recomputed as the right
    lifting property against every sphere-disc generator in the inflated
    window, and the two must agree.
    """
    if isinstance(f, TwoConstantPremonoid):
        if level is None:
            raise ValueError("level required for a packaged 2-constant premonoid")
        f = expand_to_premonoid(f, level)
    report = validate(f)
    if report:
        raise ValueError("invalid premonoid: " + "; ".join(map(str, report[:3])))
    level = f.level
    answer = True
    for n in range(2, level + 1):
        g = f.structure_map(unique_to_one(n))
        direct = is_trivial_fibration(g)
        if cross_check:
            lo, hi = rlp_window(g)
            via_rlp = all(
                has_rlp(gen.inclusion, g)
                for gen in generating_cofibrations(f.field, lo, hi)
            )
            assert direct == via_rlp, "lifting characterisation out of sync"
        if not direct:
            answer = False
            if not cross_check:
                return False
    return answer
