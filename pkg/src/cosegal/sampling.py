"""Seeded random generators for complexes, maps, monoids and premonoids.

Everything takes an explicit `random.Random`, so a fixed seed reproduces the
same objects bit-for-bit.  Used by the test suite and the CLI's --seed flag.
"""

from __future__ import annotations

from fractions import Fraction
from random import Random

from .chain import (
    ChainComplex,
    ChainMap,
    associator,
    braiding,
    chain_map_basis,
    direct_sum,
    inverse_iso,
    single_complex,
    tensor,
    tensor_map,
    unit_complex,
)
from .field_linalg import Field, Matrix

__all__ = [
    "random_element",
    "random_matrix",
    "random_complex",
    "random_chain_map",
    "random_trivial_fibration",
    "monoid_algebra",
    "random_commutative_table",
    "exterior_monoid",
    "acyclic_monoid",
    "monoid_tensor",
    "random_strict_monoid",
    "tower_diagram",
    "random_tower_diagram",
    "random_diagram_morphism",
    "random_two_constant",
    "random_k2_instruction",
]


def random_element(rng: Random, field: Field):
    if field.is_rational:
        return Fraction(rng.randrange(-4, 5), rng.choice([1, 1, 1, 2, 3]))
    return rng.randrange(field.characteristic)


def random_matrix(rng: Random, field: Field, rows: int, cols: int) -> Matrix:
    return Matrix.from_rows(
        field, [[random_element(rng, field) for _ in range(cols)] for _ in range(rows)],
        cols=cols,
    )


def _random_kernel_element(rng: Random, a: Matrix) -> Matrix:
    """A random column vector in the null space of a."""
    ker = a.kernel()
    coeffs = random_matrix(rng, a.field, ker.cols, 1)
    return ker @ coeffs


def random_complex(
    rng: Random, field: Field, lo: int, hi: int, max_dim: int
) -> ChainComplex:
    """Random complex on [lo, hi]; differentials built top-down so d.d = 0."""
    dims = {n: rng.randrange(max_dim + 1) for n in range(lo, hi + 1)}
    dims = {n: d for n, d in dims.items() if d}
    diff: dict = {}
    for n in sorted(dims, reverse=True):
        rows, cols = dims.get(n - 1, 0), dims[n]
        if rows == 0:
            continue
        upper = diff.get(n + 1)
        if upper is None or upper.is_zero():
            m = random_matrix(rng, field, rows, cols)
        else:
            # rows x cols unknowns M with M @ upper = 0
            sys = upper.transpose().kron(Matrix.identity(field, rows))
            vec = _random_kernel_element(rng, sys)
            m = Matrix(field, vec.data.reshape(cols, rows).T.copy())
        if not m.is_zero():
            diff[n] = m
    return ChainComplex(field, dims, diff)


def random_chain_map(rng: Random, source: ChainComplex, target: ChainComplex) -> ChainMap:
    basis = chain_map_basis(source, target)
    if not basis:
        return ChainMap.zero(source, target)
    out = ChainMap.zero(source, target)
    for b in basis:
        c = random_element(rng, source.field)
        if c:
            comps = {n: m.scale(c) for n, m in b.components.items()}
            out = out + ChainMap(source, target, comps)
    return out


def random_trivial_fibration(rng: Random, field: Field, lo: int, hi: int, max_dim: int):
    """A degreewise surjective quasi-isomorphism onto a random base."""
    base = random_complex(rng, field, lo, hi, max_dim)
    discs = []
    for _ in range(rng.randrange(1, 3)):
        d = rng.randrange(lo, hi + 1)
        discs.append(
            ChainComplex(field, {d: 1, d - 1: 1}, {d: Matrix.identity(field, 1)})
        )
    total, _, projs = direct_sum([base] + discs)
    g = projs[0]
    # shear by a random map off the acyclic part: still surjective, still a
    # quasi-isomorphism, but no longer a plain projection
    if not base.is_zero_complex():
        acyc = direct_sum(discs)[0]
        s = random_chain_map(rng, acyc, base)
        shear = {}
        for n in total.dims:
            m = g.component(n).data.copy()
            col = base.dim(n)
            sm = s.component(n)
            if sm.cols and sm.rows:
                m[:, col:] = m[:, col:] + sm.data
            shear[n] = Matrix(field, g.component(n).reduce(m))
        g = ChainMap(total, base, shear)
    return g


# ---------------------------------------------------------------------------
# strict commutative monoids
# ---------------------------------------------------------------------------


def random_commutative_table(rng: Random, size: int) -> list[list[int]]:
    """A random associative commutative multiplication table with unit 0."""
    while True:
        t = [[0] * size for _ in range(size)]
        for i in range(size):
            t[0][i] = t[i][0] = i
        for i in range(1, size):
            for j in range(i, size):
                t[i][j] = t[j][i] = rng.randrange(size)
        ok = all(
            t[t[i][j]][k] == t[i][t[j][k]]
            for i in range(size)
            for j in range(size)
            for k in range(size)
        )
        if ok:
            return t


def monoid_algebra(field: Field, table: list[list[int]]):
    """The monoid algebra of a finite commutative monoid, in degree 0."""
    from .premonoid import StrictMonoid

    size = len(table)
    a = single_complex(field, 0, size)
    mu_rows = [[0] * (size * size) for _ in range(size)]
    for i in range(size):
        for j in range(size):
            mu_rows[table[i][j]][i * size + j] = 1
    mu = ChainMap(tensor(a, a), a, {0: Matrix.from_rows(field, mu_rows)})
    e_col = [[1 if i == 0 else 0] for i in range(size)]
    e = ChainMap(unit_complex(field), a, {0: Matrix.from_rows(field, e_col)})
    return StrictMonoid(a, mu, e)


def exterior_monoid(field: Field):
    """k[x]/(x^2) with x in degree 1 and zero differential."""
    from .premonoid import StrictMonoid

    a = ChainComplex(field, {0: 1, 1: 1}, {})
    aa = tensor(a, a)
    mu = ChainMap(
        aa,
        a,
        {
            0: Matrix.from_rows(field, [[1]]),
            1: Matrix.from_rows(field, [[1, 1]]),
            # x.x = 0 in degree 2
        },
    )
    e = ChainMap(unit_complex(field), a, {0: Matrix.from_rows(field, [[1]])})
    return StrictMonoid(a, mu, e)


def acyclic_monoid(field: Field):
    """k[x]/(x^2) with x in degree 1 and dx = 1; the underlying complex is an
    acyclic disc."""
    from .premonoid import StrictMonoid

    a = ChainComplex(field, {0: 1, 1: 1}, {1: Matrix.identity(field, 1)})
    aa = tensor(a, a)
    mu = ChainMap(
        aa,
        a,
        {
            0: Matrix.from_rows(field, [[1]]),
            1: Matrix.from_rows(field, [[1, 1]]),
        },
    )
    e = ChainMap(unit_complex(field), a, {0: Matrix.from_rows(field, [[1]])})
    return StrictMonoid(a, mu, e)


def monoid_tensor(m1, m2):
    """Tensor product of strict commutative monoids (Koszul middle swap)."""
    from .premonoid import StrictMonoid

    a, b = m1.obj, m2.obj
    ab = tensor(a, b)
    ida, idb = ChainMap.identity(a), ChainMap.identity(b)
    idab = ChainMap.identity(ab)
    # (A(x)B)(x)(A(x)B) -> (A(x)A)(x)(B(x)B) by the middle-four interchange
    step1 = associator(a, b, ab)
    step2 = tensor_map(ida, inverse_iso(associator(b, a, b)))
    step3 = tensor_map(ida, tensor_map(braiding(b, a), idb))
    step4 = tensor_map(ida, associator(a, b, b))
    step5 = inverse_iso(associator(a, a, tensor(b, b)))
    mid4 = step5 @ step4 @ step3 @ step2 @ step1
    mu = tensor_map(m1.mu, m2.mu) @ mid4
    e = tensor_map(m1.e, m2.e)
    return StrictMonoid(ab, mu, e)


def random_strict_monoid(rng: Random, field: Field, allow_graded: bool = True):
    base = monoid_algebra(field, random_commutative_table(rng, rng.randrange(1, 4)))
    if not allow_graded:
        return base
    extra = rng.randrange(3)
    if extra == 1:
        return monoid_tensor(base, exterior_monoid(field))
    if extra == 2:
        return monoid_tensor(base, acyclic_monoid(field))
    return base


# ---------------------------------------------------------------------------
# diagrams
# ---------------------------------------------------------------------------


def random_two_constant(
    rng: Random, field: Field, surjective_h: bool | None = None, base=None
):
    """A random 2-constant premonoid: a random base monoid plus an apex built
    over it with a compatible unit factorization.

    With surjective_h=True the apex contains a copy of the base and h is a
    sheared projection (so instruction sampling never stalls); with False the
    apex is the unit complex plus noise.
    """
    from .two_constant import TwoConstantPremonoid

    if base is None:
        base = random_strict_monoid(rng, field)
    a = base.obj
    if surjective_h is None:
        surjective_h = rng.randrange(2) == 0
    lo = min(list(a.dims) + [0])
    hi = max(list(a.dims) + [0])
    noise = random_complex(rng, field, lo, hi + 1, 2)
    if surjective_h:
        total, incls, projs = direct_sum([a, noise])
        s = random_chain_map(rng, noise, a)
        h = projs[0] + (s @ projs[1])
        unit = incls[0] @ base.e
    else:
        i_complex = unit_complex(field)
        total, incls, projs = direct_sum([i_complex, noise])
        s = random_chain_map(rng, noise, a)
        h = (base.e @ projs[0]) + (s @ projs[1])
        unit = incls[0]
    return TwoConstantPremonoid(base, total, h, unit)


def random_k2_instruction(rng: Random, f, degree: int, tries: int = 40):
    """An attaching instruction for a generating cofibration of the given
    degree: draw a cycle-valued q into the apex, then solve for a compatible
    disc map p; resample if the boundary condition has no solution."""
    from .chain import GeneratingCofibration
    from .two_constant import K2Instruction

    field = f.field
    gen = GeneratingCofibration(degree, field)
    a = f.base.obj
    for _ in range(tries):
        d = degree - 1
        cyc = f.apex.d(d).kernel()
        if cyc.cols == 0:
            qmat = Matrix.zeros(field, f.apex.dim(d), 1)
        else:
            qmat = cyc @ random_matrix(rng, field, cyc.cols, 1)
        if f.apex.dim(d) == 0:
            q = ChainMap.zero(gen.sphere, f.apex)
        else:
            q = ChainMap(gen.sphere, f.apex, {d: qmat})
        # p on the disc: p(top) = y with dy = h(q(s)); p(bottom) = h(q(s))
        target = (f.h @ q).component(d)
        y = a.d(degree).solve(target)
        if y is None:
            continue
        comps = {}
        if a.dim(degree):
            comps[degree] = y
        if a.dim(d):
            comps[d] = target
        p = ChainMap(gen.disc, a, comps)
        return K2Instruction(gen, q, p)
    raise RuntimeError("could not sample an attaching square; boundary never hit")


def tower_diagram(maps: list[ChainMap]):
    """The functorial diagram induced by a tower X_1 -> X_2 -> ... -> X_N:
    every surjection between the same pair of levels acts by the same
    composite, and bijections act as the identity."""
    from .free_gamma import PlainDiagram
    from .premonoid import all_surjections_upto

    level = len(maps) + 1
    objects = {1: maps[0].source if maps else None}
    for i, m in enumerate(maps):
        objects[i + 2] = m.target
    if maps == []:
        raise ValueError("need at least one map")
    composites = {}
    for m in range(1, level + 1):
        acc = ChainMap.identity(objects[m])
        composites[(m, m)] = acc
        for n in range(m + 1, level + 1):
            acc = maps[n - 2] @ acc
            composites[(m, n)] = acc
    structure = {}
    for v in all_surjections_upto(level):
        structure[v] = composites[(v.target_size, v.source_size)]
    return PlainDiagram(level, objects, structure)


def random_tower_diagram(
    rng: Random, field: Field, level: int, lo: int, hi: int, max_dim: int
):
    objs = [random_complex(rng, field, lo, hi, max_dim) for _ in range(level)]
    maps = [random_chain_map(rng, objs[i], objs[i + 1]) for i in range(level - 1)]
    return tower_diagram(maps)


def _flatten_map(f: ChainMap) -> list:
    out = []
    for n in sorted(set(f.source.dims) | set(f.target.dims)):
        m = f.component(n)
        out.extend(m.data.T.reshape(-1).tolist())
    return out


def random_diagram_morphism(rng: Random, f, g):
    """A random natural transformation f -> g of plain diagrams, sampled from
    the exact solution space of the naturality constraints."""
    from .chain import chain_map_basis
    from .free_gamma import DiagramMorphism
    from .premonoid import all_surjections_upto

    field = f.field
    bases = {
        n: chain_map_basis(f.objects[n], g.objects[n])
        for n in range(1, f.level + 1)
    }
    offs, total = {}, 0
    for n in sorted(bases):
        offs[n] = total
        total += len(bases[n])
    if total == 0:
        comps = {
            n: ChainMap.zero(f.objects[n], g.objects[n]) for n in bases
        }
        return DiagramMorphism(f, g, comps)
    rows = []
    for v in all_surjections_upto(f.level):
        m, n = v.target_size, v.source_size
        probe = ChainMap.zero(f.objects[m], g.objects[n])
        width = len(_flatten_map(probe))
        if width == 0:
            continue
        cols = []
        for k in range(total):
            cols.append([field.coerce(0)] * width)
        for k, b in enumerate(bases[n]):
            vecs = _flatten_map(b @ f.structure_map(v))
            cols[offs[n] + k] = vecs
        for k, b in enumerate(bases[m]):
            neg = _flatten_map(g.structure_map(v) @ b)
            prev = cols[offs[m] + k]
            cols[offs[m] + k] = [x - y for x, y in zip(prev, neg)]
        mtx = Matrix.from_rows(field, [list(r) for r in zip(*cols)], cols=total)
        rows.append(mtx.data)
    if rows:
        import numpy as np

        sys = Matrix(field, np.vstack(rows))
        ker = sys.kernel()
    else:
        ker = Matrix.identity(field, total)
    coeffs = ker @ random_matrix(rng, field, ker.cols, 1)
    comps = {}
    for n in bases:
        acc = ChainMap.zero(f.objects[n], g.objects[n])
        for k, b in enumerate(bases[n]):
            c = coeffs.data[offs[n] + k, 0]
            if c:
                acc = acc + ChainMap(
                    b.source, b.target, {d: m.scale(c) for d, m in b.components.items()}
                )
        comps[n] = acc
    return DiagramMorphism(f, g, comps)
