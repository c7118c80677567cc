"""Bounded-window chain complexes over an exact field.

Complexes are zero outside a finite degree window.  The tensor product uses
the Koszul sign convention; the basis of ``(C (x) D)_n`` is ordered by left
degree ascending, then left index, then right index, so unitors against the
one-dimensional unit complex are literal identities and associators are
permutation matrices.

Homological predicates (quasi-isomorphism, fibration, cofibration, lifting)
are computed on a window inflated by one degree on each side so boundary
degrees are never silently truncated.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field_linalg import Field, Matrix, quotient

__all__ = [
    "ChainComplex",
    "ChainMap",
    "GeneratingCofibration",
    "unit_complex",
    "single_complex",
    "zero_complex",
    "homology_dims",
    "tensor",
    "tensor_map",
    "braiding",
    "associator",
    "direct_sum",
    "cone",
    "is_quasi_iso",
    "cylinder_factorization",
    "is_cofibration",
    "is_fibration",
    "is_trivial_fibration",
    "solve_lifting",
    "has_rlp",
    "chain_map_basis",
    "inverse_iso",
    "generating_cofibrations",
    "rlp_window",
    "colimit",
    "pushout",
    "pushout_universal",
    "wide_pushout",
    "induced_matrix",
]


@dataclass(frozen=True)
class ChainComplex:
    """A chain complex supported on a finite window of degrees.

    dims maps degree -> dimension (nonzero entries only); diff maps degree n
    to the matrix of d_n : C_n -> C_{n-1}.  Zero differentials are dropped,
    so equality of complexes is equality of the stored data.
    """

    field: Field
    dims: dict
    diff: dict

    def __post_init__(self):
        dims = {int(n): int(k) for n, k in self.dims.items() if int(k) != 0}
        if any(k < 0 for k in dims.values()):
            raise ValueError("negative dimension")
        diff = {}
        for n, m in self.diff.items():
            n = int(n)
            if not isinstance(m, Matrix):
                raise TypeError("differential entries must be Matrix")
            if m.shape != (dims.get(n - 1, 0), dims.get(n, 0)):
                raise ValueError(f"differential at degree {n} has wrong shape")
            if not m.is_zero():
                diff[n] = m
        for n, m in diff.items():
            if n - 1 in diff:
                if not (diff[n - 1] @ m).is_zero():
                    raise ValueError(f"d.d != 0 at degree {n}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "diff", diff)

    @property
    def window(self) -> tuple[int, int]:
        """Tight window (lo, hi); (0, -1) for the zero complex."""
        if not self.dims:
            return (0, -1)
        return (min(self.dims), max(self.dims))

    def degrees(self, inflate: int = 0):
        lo, hi = self.window
        return range(lo - inflate, hi + 1 + inflate)

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def d(self, n: int) -> Matrix:
        m = self.diff.get(n)
        if m is None:
            return Matrix.zeros(self.field, self.dim(n - 1), self.dim(n))
        return m

    def is_zero_complex(self) -> bool:
        return not self.dims

    def __repr__(self):
        return f"ChainComplex({self.field}, dims={self.dims})"


def single_complex(field: Field, degree: int, dim: int = 1) -> ChainComplex:
    """A complex concentrated in one degree with zero differential."""
    return ChainComplex(field, {degree: dim} if dim else {}, {})


def unit_complex(field: Field) -> ChainComplex:
    """The monoidal unit: one-dimensional in degree 0."""
    return single_complex(field, 0, 1)


def zero_complex(field: Field) -> ChainComplex:
    return ChainComplex(field, {}, {})


@dataclass(frozen=True)
class ChainMap:
    """A degreewise linear map commuting with the differentials."""

    source: ChainComplex
    target: ChainComplex
    components: dict

    def __post_init__(self):
        if self.source.field != self.target.field:
            raise ValueError("field mismatch between source and target")
        comps = {}
        for n, m in self.components.items():
            n = int(n)
            if m.shape != (self.target.dim(n), self.source.dim(n)):
                raise ValueError(f"component at degree {n} has wrong shape")
            if not m.is_zero():
                comps[n] = m
        object.__setattr__(self, "components", comps)
        for n in self._degrees():
            lhs = self.target.d(n) @ self.component(n)
            rhs = self.component(n - 1) @ self.source.d(n)
            if lhs != rhs:
                raise ValueError(f"not a chain map at degree {n}")

    def _degrees(self):
        degs = set(self.source.dims) | set(self.target.dims)
        if not degs:
            return range(0)
        return range(min(degs), max(degs) + 2)

    @property
    def field(self) -> Field:
        return self.source.field

    def component(self, n: int) -> Matrix:
        m = self.components.get(n)
        if m is None:
            return Matrix.zeros(self.field, self.target.dim(n), self.source.dim(n))
        return m

    def is_zero(self) -> bool:
        return not self.components

    def compose(self, other: "ChainMap") -> "ChainMap":
        """self after other."""
        if other.target != self.source:
            raise ValueError("non-composable chain maps")
        comps = {
            n: self.component(n) @ other.component(n)
            for n in other.source.dims
        }
        return ChainMap(other.source, self.target, comps)

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        return self.compose(other)

    def __add__(self, other: "ChainMap") -> "ChainMap":
        assert self.source == other.source and self.target == other.target
        degs = set(self.components) | set(other.components)
        comps = {n: self.component(n) + other.component(n) for n in degs}
        return ChainMap(self.source, self.target, comps)

    def __sub__(self, other: "ChainMap") -> "ChainMap":
        assert self.source == other.source and self.target == other.target
        degs = set(self.components) | set(other.components)
        comps = {n: self.component(n) - other.component(n) for n in degs}
        return ChainMap(self.source, self.target, comps)

    def __repr__(self):
        return f"ChainMap({self.source.dims} -> {self.target.dims})"

    @staticmethod
    def identity(c: ChainComplex) -> "ChainMap":
        comps = {n: Matrix.identity(c.field, c.dim(n)) for n in c.dims}
        return ChainMap(c, c, comps)

    @staticmethod
    def zero(source: ChainComplex, target: ChainComplex) -> "ChainMap":
        return ChainMap(source, target, {})


def homology_dims(c: ChainComplex) -> dict:
    """dim H_n per degree (nonzero entries only), computed by exact ranks."""
    out = {}
    for n in c.degrees(inflate=1):
        h = c.dim(n) - c.d(n).rank() - c.d(n + 1).rank()
        if h:
            out[n] = h
    return out


# ---------------------------------------------------------------------------
# tensor structure
# ---------------------------------------------------------------------------


def _tensor_blocks(c: ChainComplex, d: ChainComplex, n: int):
    """Ordered list of ((i, j), offset, size) for (c (x) d)_n."""
    blocks = []
    off = 0
    lo_c, hi_c = c.window
    for i in range(lo_c, hi_c + 1):
        j = n - i
        size = c.dim(i) * d.dim(j)
        if size:
            blocks.append(((i, j), off, size))
            off += size
    return blocks


def tensor(c: ChainComplex, d: ChainComplex) -> ChainComplex:
    """Tensor product with Koszul signs: d(x (x) y) = dx (x) y + (-1)^|x| x (x) dy."""
    if c.field != d.field:
        raise ValueError("field mismatch in tensor")
    fld = c.field
    if c.is_zero_complex() or d.is_zero_complex():
        return zero_complex(fld)
    lo = c.window[0] + d.window[0]
    hi = c.window[1] + d.window[1]
    dims = {}
    for n in range(lo, hi + 1):
        k = sum(size for _, _, size in _tensor_blocks(c, d, n))
        if k:
            dims[n] = k
    diff = {}
    for n in range(lo + 1, hi + 1):
        src = _tensor_blocks(c, d, n)
        tgt = _tensor_blocks(c, d, n - 1)
        if not src or not tgt:
            continue
        tgt_off = {ij: (off, size) for ij, off, size in tgt}
        rows = sum(size for _, _, size in tgt)
        cols = sum(size for _, _, size in src)
        out = Matrix.zeros(fld, rows, cols).data.copy()
        for (i, j), off_s, _ in src:
            if (i - 1, j) in tgt_off:
                blk = c.d(i).kron(Matrix.identity(fld, d.dim(j)))
                off_t = tgt_off[(i - 1, j)][0]
                out[off_t : off_t + blk.rows, off_s : off_s + blk.cols] = blk.data
            if (i, j - 1) in tgt_off:
                blk = Matrix.identity(fld, c.dim(i)).kron(d.d(j))
                if i % 2:
                    blk = -blk
                off_t = tgt_off[(i, j - 1)][0]
                out[off_t : off_t + blk.rows, off_s : off_s + blk.cols] = blk.data
        diff[n] = Matrix(fld, out)
    return ChainComplex(fld, dims, diff)


def tensor_map(f: ChainMap, g: ChainMap) -> ChainMap:
    """The map f (x) g between the tensor products (no Koszul sign in degree 0)."""
    src = tensor(f.source, g.source)
    tgt = tensor(f.target, g.target)
    fld = f.field
    comps = {}
    for n in src.dims:
        s_blocks = _tensor_blocks(f.source, g.source, n)
        t_blocks = _tensor_blocks(f.target, g.target, n)
        t_off = {ij: off for ij, off, _ in t_blocks}
        out = Matrix.zeros(fld, tgt.dim(n), src.dim(n)).data.copy()
        for (i, j), off_s, _ in s_blocks:
            blk = f.component(i).kron(g.component(j))
            if blk.rows == 0 or (i, j) not in t_off:
                continue
            ot = t_off[(i, j)]
            out[ot : ot + blk.rows, off_s : off_s + blk.cols] = blk.data
        comps[n] = Matrix(fld, out)
    return ChainMap(src, tgt, comps)


def braiding(c: ChainComplex, d: ChainComplex) -> ChainMap:
    """Symmetry c (x) d -> d (x) c with sign (-1)^{ij} on the (i, j) block."""
    if c.field != d.field:
        raise ValueError("field mismatch in braiding")
    fld = c.field
    src = tensor(c, d)
    tgt = tensor(d, c)
    comps = {}
    for n in src.dims:
        s_blocks = _tensor_blocks(c, d, n)
        t_blocks = _tensor_blocks(d, c, n)
        t_off = {ij: off for ij, off, _ in t_blocks}
        out = Matrix.zeros(fld, tgt.dim(n), src.dim(n)).data.copy()
        one = fld.coerce(1)
        for (i, j), off_s, _ in s_blocks:
            m, k = c.dim(i), d.dim(j)
            ot = t_off[(j, i)]
            sign = one if (i * j) % 2 == 0 else fld.coerce(-1)
            for a in range(m):
                for b in range(k):
                    out[ot + b * m + a, off_s + a * k + b] = sign
        comps[n] = Matrix(fld, out)
    return ChainMap(src, tgt, comps)


def associator(a: ChainComplex, b: ChainComplex, c: ChainComplex) -> ChainMap:
    """The permutation (a (x) b) (x) c -> a (x) (b (x) c) regrouping the basis."""
    fld = a.field
    ab = tensor(a, b)
    bc = tensor(b, c)
    src = tensor(ab, c)
    tgt = tensor(a, bc)
    comps = {}
    one = fld.coerce(1)
    for n in src.dims:
        out = Matrix.zeros(fld, tgt.dim(n), src.dim(n)).data.copy()
        left_off = {ij: off for ij, off, _ in _tensor_blocks(ab, c, n)}
        right_off = {ij: off for ij, off, _ in _tensor_blocks(a, bc, n)}
        for i in a.dims:
            for j in b.dims:
                for l in c.dims:
                    if i + j + l != n:
                        continue
                    da, db, dc = a.dim(i), b.dim(j), c.dim(l)
                    ab_off = dict(
                        (ij, off) for ij, off, _ in _tensor_blocks(a, b, i + j)
                    )[(i, j)]
                    bc_off = dict(
                        (ij, off) for ij, off, _ in _tensor_blocks(b, c, j + l)
                    )[(j, l)]
                    lo = left_off[(i + j, l)]
                    ro = right_off[(i, j + l)]
                    for ai in range(da):
                        for bj in range(db):
                            for cl in range(dc):
                                li = lo + (ab_off + ai * db + bj) * dc + cl
                                ri = ro + ai * bc.dim(j + l) + bc_off + bj * dc + cl
                                out[ri, li] = one
        comps[n] = Matrix(fld, out)
    return ChainMap(src, tgt, comps)


def direct_sum(summands: list[ChainComplex]):
    """Direct sum with inclusion and projection chain maps."""
    assert summands
    fld = summands[0].field
    degs = sorted({n for s in summands for n in s.dims})
    dims = {n: sum(s.dim(n) for s in summands) for n in degs}
    diff = {}
    for n in degs:
        if dims.get(n - 1, 0):
            diff[n] = Matrix.block_diag(fld, [s.d(n) for s in summands])
    total = ChainComplex(fld, dims, diff)
    incls, projs = [], []
    for k, s in enumerate(summands):
        comps_i, comps_p = {}, {}
        for n in s.dims:
            off = sum(t.dim(n) for t in summands[:k])
            ins = Matrix.zeros(fld, total.dim(n), s.dim(n)).data.copy()
            ins[off : off + s.dim(n), :] = Matrix.identity(fld, s.dim(n)).data
            comps_i[n] = Matrix(fld, ins)
            comps_p[n] = Matrix(fld, ins.T.copy())
        incls.append(ChainMap(s, total, comps_i))
        projs.append(ChainMap(total, s, comps_p))
    return total, incls, projs


# ---------------------------------------------------------------------------
# cones, cylinders, model predicates
# ---------------------------------------------------------------------------


def cone(f: ChainMap) -> ChainComplex:
    """Mapping cone: Cone(f)_n = A_{n-1} + B_n."""
    a, b, fld = f.source, f.target, f.field
    degs = sorted(set(n + 1 for n in a.dims) | set(b.dims))
    dims = {n: a.dim(n - 1) + b.dim(n) for n in degs}
    diff = {}
    for n in degs:
        rows_a, rows_b = a.dim(n - 2), b.dim(n - 1)
        if rows_a + rows_b == 0:
            continue
        cols_a, cols_b = a.dim(n - 1), b.dim(n)
        out = Matrix.zeros(fld, rows_a + rows_b, cols_a + cols_b).data.copy()
        out[:rows_a, :cols_a] = (-a.d(n - 1)).data
        out[rows_a:, :cols_a] = (-f.component(n - 1)).data
        out[rows_a:, cols_a:] = b.d(n).data
        diff[n] = Matrix(fld, out)
    return ChainComplex(fld, dims, diff)


def is_quasi_iso(f: ChainMap) -> bool:
    return not homology_dims(cone(f))


def is_cofibration(f: ChainMap) -> bool:
    """Over a field: degreewise injective."""
    return all(f.component(n).is_injective() for n in f.source.dims)


def is_fibration(f: ChainMap) -> bool:
    """Degreewise surjective."""
    return all(f.component(n).is_surjective() for n in f.target.dims)


def is_trivial_fibration(f: ChainMap) -> bool:
    return is_fibration(f) and is_quasi_iso(f)


def cylinder_factorization(f: ChainMap) -> tuple[ChainMap, ChainMap]:
    """Factor f as a cofibration i into the mapping cylinder followed by the
    trivial fibration p, with p . i = f.

    Cyl(f)_n = A_n + A_{n-1} + B_n with d(a, a', b) = (da - a', -da', f(a') + db).
    """
    a, b, fld = f.source, f.target, f.field
    degs = sorted(set(a.dims) | set(n + 1 for n in a.dims) | set(b.dims))
    dims = {n: a.dim(n) + a.dim(n - 1) + b.dim(n) for n in degs}
    dims = {n: k for n, k in dims.items() if k}
    diff = {}
    for n in dims:
        r = [a.dim(n - 1), a.dim(n - 2), b.dim(n - 1)]
        c = [a.dim(n), a.dim(n - 1), b.dim(n)]
        if sum(r) == 0:
            continue
        out = Matrix.zeros(fld, sum(r), sum(c)).data.copy()
        out[: r[0], : c[0]] = a.d(n).data
        out[: r[0], c[0] : c[0] + c[1]] = (-Matrix.identity(fld, a.dim(n - 1))).data
        out[r[0] : r[0] + r[1], c[0] : c[0] + c[1]] = (-a.d(n - 1)).data
        out[r[0] + r[1] :, c[0] : c[0] + c[1]] = f.component(n - 1).data
        out[r[0] + r[1] :, c[0] + c[1] :] = b.d(n).data
        diff[n] = Matrix(fld, out)
    cyl = ChainComplex(fld, dims, diff)
    comps_i, comps_p = {}, {}
    for n in cyl.dims:
        ca, ca1, cb = a.dim(n), a.dim(n - 1), b.dim(n)
        ins = Matrix.zeros(fld, cyl.dim(n), ca).data.copy()
        ins[:ca, :] = Matrix.identity(fld, ca).data
        comps_i[n] = Matrix(fld, ins)
        pr = Matrix.zeros(fld, b.dim(n), cyl.dim(n)).data.copy()
        pr[:, :ca] = f.component(n).data
        pr[:, ca + ca1 :] = Matrix.identity(fld, cb).data
        comps_p[n] = Matrix(fld, pr)
    i = ChainMap(a, cyl, comps_i)
    p = ChainMap(cyl, b, comps_p)
    return i, p


# ---------------------------------------------------------------------------
# lifting problems
# ---------------------------------------------------------------------------


def _vec(m: Matrix) -> Matrix:
    """Column-major vectorisation as a column vector."""
    out = m.data.T.reshape(-1, 1).copy()
    return Matrix(m.field, out)


def _unvec(field: Field, v, rows: int, cols: int) -> Matrix:
    out = np.asarray(v).reshape(cols, rows).T.copy()
    return Matrix(field, out)


def solve_lifting(
    alpha: ChainMap, g: ChainMap, top: ChainMap, bottom: ChainMap
) -> ChainMap | None:
    """Find k with k.alpha = top, g.k = bottom, k a chain map; None if no lift.

    alpha : U -> V, g : X -> Y, top : U -> X, bottom : V -> Y, and the square
    must commute: g.top = bottom.alpha.
    """
    if g @ top != bottom @ alpha:
        raise ValueError("lifting square does not commute")
    v, x = alpha.target, g.source
    fld = alpha.field
    degs = sorted(
        set(v.dims) | set(x.dims) | set(g.target.dims) | set(alpha.source.dims)
    )
    if not degs:
        return ChainMap.zero(v, x)
    lo, hi = degs[0], degs[-1]
    var_deg = [n for n in range(lo, hi + 1) if v.dim(n) and x.dim(n)]
    offs, total = {}, 0
    for n in var_deg:
        offs[n] = total
        total += v.dim(n) * x.dim(n)

    rows_a, rhs_a = [], []

    def add_equation(coeffs: dict, rhs: Matrix):
        # coeffs: degree -> Matrix acting on vec(k_degree)
        neq = rhs.rows
        row = Matrix.zeros(fld, neq, total).data.copy()
        for n, m in coeffs.items():
            row[:, offs[n] : offs[n] + m.cols] = m.data
        rows_a.append(row)
        rhs_a.append(rhs.data)

    for n in range(lo, hi + 2):
        # chain condition d.k_n - k_{n-1}.d = 0
        if x.dim(n - 1) and v.dim(n):
            coeffs = {}
            if n in offs:
                coeffs[n] = Matrix.identity(fld, v.dim(n)).kron(x.d(n))
            if n - 1 in offs:
                coeffs[n - 1] = (-(v.d(n).transpose())).kron(
                    Matrix.identity(fld, x.dim(n - 1))
                )
            if coeffs:
                add_equation(coeffs, Matrix.zeros(fld, x.dim(n - 1) * v.dim(n), 1))
        # k.alpha = top
        u = alpha.source
        if u.dim(n) and x.dim(n):
            t = _vec(top.component(n))
            if n in offs:
                add_equation(
                    {n: alpha.component(n).transpose().kron(Matrix.identity(fld, x.dim(n)))},
                    t,
                )
            elif not t.is_zero():
                return None
        # g.k = bottom
        if v.dim(n) and g.target.dim(n):
            bvec = _vec(bottom.component(n))
            if n in offs:
                add_equation(
                    {n: Matrix.identity(fld, v.dim(n)).kron(g.component(n))}, bvec
                )
            elif not bvec.is_zero():
                return None

    if not rows_a:
        k = ChainMap.zero(v, x)
    else:
        big = Matrix(fld, np.vstack(rows_a))
        rhs = Matrix(fld, np.vstack(rhs_a))
        sol = big.solve(rhs)
        if sol is None:
            return None
        comps = {
            n: _unvec(fld, sol.data[offs[n] : offs[n] + v.dim(n) * x.dim(n)], x.dim(n), v.dim(n))
            for n in var_deg
        }
        k = ChainMap(v, x, comps)
    assert k @ alpha == top and g @ k == bottom
    return k


def _square_space_basis(alpha: ChainMap, g: ChainMap):
    """Basis of the linear space of commuting squares (top, bottom) over (alpha, g)."""
    u, v, x, y = alpha.source, alpha.target, g.source, g.target
    fld = alpha.field
    degs = sorted(set(u.dims) | set(v.dims) | set(x.dims) | set(y.dims))
    if not degs:
        return []
    lo, hi = degs[0], degs[-1]
    tvar = [n for n in range(lo, hi + 1) if u.dim(n) and x.dim(n)]
    bvar = [n for n in range(lo, hi + 1) if v.dim(n) and y.dim(n)]
    offs, total = {}, 0
    for n in tvar:
        offs[("t", n)] = total
        total += u.dim(n) * x.dim(n)
    for n in bvar:
        offs[("b", n)] = total
        total += v.dim(n) * y.dim(n)
    if total == 0:
        return []
    rows = []

    def block_row(coeffs: dict, neq: int):
        row = Matrix.zeros(fld, neq, total).data.copy()
        for key, m in coeffs.items():
            row[:, offs[key] : offs[key] + m.cols] = m.data
        rows.append(row)

    for n in range(lo, hi + 2):
        # top is a chain map
        if x.dim(n - 1) and u.dim(n):
            coeffs = {}
            if ("t", n) in offs:
                coeffs[("t", n)] = Matrix.identity(fld, u.dim(n)).kron(x.d(n))
            if ("t", n - 1) in offs:
                coeffs[("t", n - 1)] = (-(u.d(n).transpose())).kron(
                    Matrix.identity(fld, x.dim(n - 1))
                )
            if coeffs:
                block_row(coeffs, x.dim(n - 1) * u.dim(n))
        # bottom is a chain map
        if y.dim(n - 1) and v.dim(n):
            coeffs = {}
            if ("b", n) in offs:
                coeffs[("b", n)] = Matrix.identity(fld, v.dim(n)).kron(y.d(n))
            if ("b", n - 1) in offs:
                coeffs[("b", n - 1)] = (-(v.d(n).transpose())).kron(
                    Matrix.identity(fld, y.dim(n - 1))
                )
            if coeffs:
                block_row(coeffs, y.dim(n - 1) * v.dim(n))
        # g.top = bottom.alpha
        if u.dim(n) and y.dim(n):
            coeffs = {}
            if ("t", n) in offs:
                coeffs[("t", n)] = Matrix.identity(fld, u.dim(n)).kron(g.component(n))
            if ("b", n) in offs:
                coeffs[("b", n)] = -(alpha.component(n).transpose().kron(
                    Matrix.identity(fld, y.dim(n))
                ))
            if coeffs:
                block_row(coeffs, u.dim(n) * y.dim(n))

    if rows:
        ker = Matrix(fld, np.vstack(rows)).kernel()
    else:
        ker = Matrix.identity(fld, total)
    basis = []
    for j in range(ker.cols):
        col = ker.column(j)
        tops, bots = {}, {}
        for n in tvar:
            o = offs[("t", n)]
            tops[n] = _unvec(fld, col.data[o : o + u.dim(n) * x.dim(n)], x.dim(n), u.dim(n))
        for n in bvar:
            o = offs[("b", n)]
            bots[n] = _unvec(fld, col.data[o : o + v.dim(n) * y.dim(n)], y.dim(n), v.dim(n))
        basis.append((ChainMap(u, x, tops), ChainMap(v, y, bots)))
    return basis


def chain_map_basis(source: ChainComplex, target: ChainComplex) -> list[ChainMap]:
    """Basis of the vector space of chain maps source -> target."""
    fld = source.field
    degs = sorted(set(source.dims) | set(target.dims))
    if not degs:
        return []
    lo, hi = degs[0], degs[-1]
    var_deg = [n for n in range(lo, hi + 1) if source.dim(n) and target.dim(n)]
    offs, total = {}, 0
    for n in var_deg:
        offs[n] = total
        total += source.dim(n) * target.dim(n)
    if total == 0:
        return []
    rows = []
    for n in range(lo, hi + 2):
        if target.dim(n - 1) and source.dim(n):
            row = Matrix.zeros(fld, target.dim(n - 1) * source.dim(n), total).data.copy()
            if n in offs:
                m = Matrix.identity(fld, source.dim(n)).kron(target.d(n))
                row[:, offs[n] : offs[n] + m.cols] = m.data
            if n - 1 in offs:
                m = (-(source.d(n).transpose())).kron(
                    Matrix.identity(fld, target.dim(n - 1))
                )
                row[:, offs[n - 1] : offs[n - 1] + m.cols] = m.data
            rows.append(row)
    ker = (
        Matrix(fld, np.vstack(rows)).kernel() if rows else Matrix.identity(fld, total)
    )
    basis = []
    for j in range(ker.cols):
        col = ker.column(j)
        comps = {
            n: _unvec(
                fld,
                col.data[offs[n] : offs[n] + source.dim(n) * target.dim(n)],
                target.dim(n),
                source.dim(n),
            )
            for n in var_deg
        }
        basis.append(ChainMap(source, target, comps))
    return basis


def inverse_iso(f: ChainMap) -> ChainMap:
    """Inverse of a degreewise isomorphism."""
    comps = {}
    for n in set(f.source.dims) | set(f.target.dims):
        m = f.component(n)
        if m.rows != m.cols:
            raise ValueError("not an isomorphism (shape)")
        inv = m.solve(Matrix.identity(f.field, m.rows))
        if inv is None or (m @ inv) != Matrix.identity(f.field, m.rows):
            raise ValueError("not an isomorphism")
        comps[n] = inv
    return ChainMap(f.target, f.source, comps)


def has_rlp(alpha: ChainMap, g: ChainMap) -> bool:
    """Whether g has the right lifting property against alpha.

    The commuting squares over (alpha, g) form a vector space and lifts
    depend linearly on the square, so it suffices to solve the lifting
    problem on a basis of that space.
    """
    for top, bottom in _square_space_basis(alpha, g):
        if solve_lifting(alpha, g, top, bottom) is None:
            return False
    return True


@dataclass(frozen=True)
class GeneratingCofibration:
    """The sphere-disc inclusion in a single degree d.

    The sphere is one-dimensional in degree d-1; the disc is one-dimensional
    in degrees d and d-1 with identity differential; the inclusion hits
    degree d-1 identically.
    """

    degree: int
    field: Field

    @property
    def sphere(self) -> ChainComplex:
        return single_complex(self.field, self.degree - 1, 1)

    @property
    def disc(self) -> ChainComplex:
        d = self.degree
        return ChainComplex(
            self.field,
            {d: 1, d - 1: 1},
            {d: Matrix.identity(self.field, 1)},
        )

    @property
    def inclusion(self) -> ChainMap:
        return ChainMap(
            self.sphere,
            self.disc,
            {self.degree - 1: Matrix.identity(self.field, 1)},
        )


def generating_cofibrations(field: Field, lo: int, hi: int) -> list[GeneratingCofibration]:
    """All sphere-disc inclusions whose disc meets the window [lo, hi]."""
    return [GeneratingCofibration(d, field) for d in range(lo, hi + 2)]


def rlp_window(*maps: ChainMap) -> tuple[int, int]:
    """Inflated window covering all complexes of the given maps."""
    degs = set()
    for f in maps:
        degs |= set(f.source.dims) | set(f.target.dims)
    if not degs:
        return (0, -1)
    return (min(degs) - 1, max(degs) + 1)


# ---------------------------------------------------------------------------
# colimits
# ---------------------------------------------------------------------------


def colimit(nodes: list[ChainComplex], arrows: list[tuple[int, int, ChainMap]]):
    """Colimit of a finite diagram of chain complexes.

    nodes[i] are the objects; each arrow (s, t, f) glues node s into node t
    along f.  Returns (Q, legs) where legs[i] : nodes[i] -> Q.  The quotient
    basis is deterministic in the node order.
    """
    assert nodes
    fld = nodes[0].field
    degs = sorted({n for c in nodes for n in c.dims})
    offsets = {}
    totals = {}
    for n in degs:
        off, offs = 0, []
        for c in nodes:
            offs.append(off)
            off += c.dim(n)
        offsets[n] = offs
        totals[n] = off

    projs = {}
    qdims = {}
    for n in degs:
        rels = []
        for s, t, f in arrows:
            ds = nodes[s].dim(n)
            if ds == 0:
                continue
            m = f.component(n)
            block = Matrix.zeros(fld, ds, totals[n]).data.copy()
            block[:, offsets[n][t] : offsets[n][t] + nodes[t].dim(n)] = (
                (-m).transpose().data
            )
            one = fld.coerce(1)
            for a in range(ds):
                block[a, offsets[n][s] + a] += one
            rels.append(block)
        if rels:
            relrows = Matrix(fld, np.vstack(rels))
        else:
            relrows = Matrix.zeros(fld, 0, totals[n])
        qdim, proj = quotient(fld, totals[n], relrows)
        projs[n] = proj
        qdims[n] = qdim

    # induced differential through the projections
    diff = {}
    for n in degs:
        if qdims.get(n, 0) == 0 or qdims.get(n - 1, 0) == 0:
            continue
        blk = Matrix.block_diag(fld, [c.d(n) for c in nodes])
        rhs = projs[n - 1] @ blk
        dn = induced_matrix(projs[n], rhs)
        diff[n] = dn
    q = ChainComplex(fld, qdims, diff)

    legs = []
    for i, c in enumerate(nodes):
        comps = {}
        for n in c.dims:
            proj = projs[n]
            comps[n] = Matrix(
                fld,
                proj.data[:, offsets[n][i] : offsets[n][i] + c.dim(n)].copy(),
            )
        legs.append(ChainMap(c, q, comps))
    return q, legs


def induced_matrix(through: Matrix, composite: Matrix) -> Matrix:
    """The unique m with m @ through = composite, for surjective `through`."""
    sol = through.transpose().solve(composite.transpose())
    assert sol is not None, "map does not descend through the projection"
    return sol.transpose()


def pushout(f: ChainMap, g: ChainMap):
    """Pushout of B <- A -> C; returns (P, leg_B, leg_C)."""
    if f.source != g.source:
        raise ValueError("pushout maps must share their source")
    q, legs = colimit([f.source, f.target, g.target], [(0, 1, f), (0, 2, g)])
    return q, legs[1], legs[2]


def pushout_universal(leg_b: ChainMap, leg_c: ChainMap, u: ChainMap, v: ChainMap) -> ChainMap:
    """Universal map out of a pushout: the unique w with w.leg_b = u, w.leg_c = v."""
    p = leg_b.target
    fld = p.field
    comps = {}
    for n in p.dims:
        stacked = Matrix.hstack(fld, [leg_b.component(n), leg_c.component(n)])
        rhs = Matrix.hstack(fld, [u.component(n), v.component(n)])
        comps[n] = induced_matrix(stacked, rhs)
    return ChainMap(p, u.target, comps)


def wide_pushout(maps: list[ChainMap]):
    """Wide pushout of a family sharing one source; returns (P, source_leg, legs)."""
    assert maps
    src = maps[0].source
    if any(m.source != src for m in maps):
        raise ValueError("wide pushout maps must share their source")
    nodes = [src] + [m.target for m in maps]
    arrows = [(0, i + 1, m) for i, m in enumerate(maps)]
    q, legs = colimit(nodes, arrows)
    return q, legs[0], legs[1:]
