"""Independent brute-force oracles for the test suite.

Everything here is written from first principles on plain Python lists:
its own Gaussian elimination, its own surjection enumeration, its own
comma-category crawl, its own signed permutation action.  The point is to
check the library against code that shares nothing with it beyond the
definitions.
"""

from fractions import Fraction
from itertools import permutations, product


# ---------------------------------------------------------------------------
# plain-list linear algebra
# ---------------------------------------------------------------------------


def gauss_rank(rows, p):
    """Rank of a list-of-lists matrix over F_p (p prime) or Q (p == 0)."""
    if not rows or not rows[0]:
        return 0
    if p:
        m = [[int(x) % p for x in r] for r in rows]
    else:
        m = [[Fraction(x) for x in r] for r in rows]
    nrows, ncols = len(m), len(m[0])
    rank = 0
    row = 0
    for col in range(ncols):
        piv = None
        for r in range(row, nrows):
            if m[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        if p:
            inv = pow(m[row][col], -1, p)
            m[row] = [(x * inv) % p for x in m[row]]
        else:
            inv = 1 / m[row][col]
            m[row] = [x * inv for x in m[row]]
        for r in range(nrows):
            if r != row and m[r][col] != 0:
                c = m[r][col]
                if p:
                    m[r] = [(a - c * b) % p for a, b in zip(m[r], m[row])]
                else:
                    m[r] = [a - c * b for a, b in zip(m[r], m[row])]
        row += 1
        rank += 1
        if row == nrows:
            break
    return rank


def kernel_dim_by_enumeration(rows, ncols):
    """Kernel dimension over F_2 by trying all vectors (tiny systems only)."""
    count = 0
    for bits in range(2 ** ncols):
        v = [(bits >> i) & 1 for i in range(ncols)]
        if all(sum(r[i] * v[i] for i in range(ncols)) % 2 == 0 for r in rows):
            count += 1
    # the solution set is a subspace; its size is 2^dim
    dim = 0
    while (1 << dim) < count:
        dim += 1
    assert (1 << dim) == count
    return dim


# ---------------------------------------------------------------------------
# combinatorics
# ---------------------------------------------------------------------------


def oracle_surjections(m, n):
    """All maps {0..m-1} -> {0..n-1} whose image is everything."""
    out = []
    for arr in product(range(n), repeat=m):
        if len(set(arr)) == n:
            out.append(arr)
    return out


def stirling2(m, n):
    if n == 0:
        return 1 if m == 0 else 0
    if m == 0:
        return 0
    return n * stirling2(m - 1, n) + stirling2(m - 1, n - 1)


def oracle_lax_shape(n):
    """Objects of the level-n decomposition shape, crawled from scratch:
    pairs ((p, q), surjection n ->> p+q) with p, q >= 1, and single levels
    (p, surjection n ->> p) with p < n."""
    pairs = []
    for p in range(1, n):
        for q in range(1, n - p + 1):
            for v in oracle_surjections(n, p + q):
                pairs.append(("pair", p, q, v))
    plus = []
    for p in range(1, n):
        for v in oracle_surjections(n, p):
            plus.append(("plus", p, v))
    return pairs, plus


def oracle_lax_shape_arrows(n):
    """Arrows of the decomposition shape, enumerated from the comma-category
    composition law (compatibility of the defining surjections)."""
    pairs, plus = oracle_lax_shape(n)
    objects = pairs + plus
    arrows = []

    def comp(g, f):  # g after f, plain tuples
        return tuple(g[x] for x in f)

    def dsum(a, b, off):
        return tuple(a) + tuple(x + off for x in b)

    for src in objects:
        for tgt in objects:
            if src[0] == "pair" and tgt[0] == "pair":
                _, p, q, v = src
                _, pp, qq, vv = tgt
                for a in oracle_surjections(pp, p):
                    for b in oracle_surjections(qq, q):
                        if comp(dsum(a, b, p), vv) == v:
                            if src == tgt and a == tuple(range(p)) and b == tuple(range(q)):
                                continue
                            arrows.append((src, tgt, ("pair", a, b)))
            elif src[0] == "pair" and tgt[0] == "plus":
                _, p, q, v = src
                _, r, w = tgt
                for c in oracle_surjections(r, p + q):
                    if comp(c, w) == v:
                        arrows.append((src, tgt, ("gamma", c)))
            elif src[0] == "plus" and tgt[0] == "plus":
                _, p, v = src
                _, r, w = tgt
                for c in oracle_surjections(r, p):
                    if comp(c, w) == v:
                        if src == tgt and c == tuple(range(p)):
                            continue
                        arrows.append((src, tgt, ("plus", c)))
    return arrows


# ---------------------------------------------------------------------------
# colimit dimension
# ---------------------------------------------------------------------------


def colimit_dim(node_dims, arrows, p):
    """Dimension of the colimit of vector spaces: total minus the rank of the
    gluing relations.  arrows: (src, tgt, matrix-as-rows mapping src -> tgt)."""
    offs = []
    total = 0
    for d in node_dims:
        offs.append(total)
        total += d
    rels = []
    for s, t, mat in arrows:
        for a in range(node_dims[s]):
            row = [0] * total
            row[offs[s] + a] += 1
            for i in range(node_dims[t]):
                row[offs[t] + i] -= mat[i][a]
            rels.append(row)
    return total - gauss_rank(rels, p)


# ---------------------------------------------------------------------------
# signed permutation action and symmetric powers
# ---------------------------------------------------------------------------


def koszul_sign(perm, degrees):
    """Sign of permuting homogeneous factors: product of (-1)^(d_i d_j) over
    inversions of the permutation."""
    sign = 1
    n = len(perm)
    for i in range(n):
        for j in range(i + 1, n):
            if perm[i] > perm[j]:
                if (degrees[i] * degrees[j]) % 2:
                    sign = -sign
    return sign


def oracle_sym_power_dims(dim_by_degree, n, p):
    """Dimensions and homology of the n-th symmetric power of a complex given
    by per-degree dimensions and differentials, computed from scratch.

    dim_by_degree: dict degree -> (dim, diff rows to degree-1 or None)
    Returns (dims, homology) as dicts.
    """
    degrees = sorted(dim_by_degree)
    single = []
    for d in degrees:
        dim = dim_by_degree[d][0]
        for i in range(dim):
            single.append((d, i))
    basis = [combo for combo in product(single, repeat=n)]
    index = {b: k for k, b in enumerate(basis)}
    total = len(basis)

    def tensor_degree(b):
        return sum(f[0] for f in b)

    # differential on the tensor power: Leibniz with the running Koszul sign
    diff = [[0] * total for _ in range(total)]
    for b in basis:
        col = index[b]
        running = 1
        for slot in range(n):
            d, i = b[slot]
            rows = dim_by_degree[d][1]
            if rows is not None:
                for i2 in range(len(rows)):
                    coef = rows[i2][i]
                    if coef:
                        nb = list(b)
                        nb[slot] = (d - 1, i2)
                        diff[index[tuple(nb)]][col] += running * coef
            if d % 2:
                running = -running

    # quotient relations: v - sign(perm, degrees(v)) perm(v), all permutations
    rels = []
    for b in basis:
        degs = [f[0] for f in b]
        for perm in permutations(range(n)):
            if perm == tuple(range(n)):
                continue
            permuted = tuple(b[perm.index(slot)] for slot in range(n))
            row = [0] * total
            row[index[b]] += 1
            row[index[permuted]] -= koszul_sign(perm, degs)
            rels.append(row)

    # intersect everything per degree
    by_degree = {}
    for b in basis:
        by_degree.setdefault(tensor_degree(b), []).append(index[b])
    dims, hom = {}, {}
    # build per-degree projections via quotient rank and induced differential
    # ranks; we only need dimensions and homology numbers, which follow from
    # rank computations on the full (graded) matrices
    deg_list = sorted(by_degree)
    rel_by_degree = {}
    for row in rels:
        supp = [k for k, x in enumerate(row) if x]
        if not supp:
            continue
        d = tensor_degree(basis[supp[0]])
        rel_by_degree.setdefault(d, []).append([row[k] for k in by_degree[d]])
    qdim = {}
    for d in deg_list:
        cols = by_degree[d]
        rrows = rel_by_degree.get(d, [])
        qdim[d] = len(cols) - gauss_rank(rrows, p)
        if qdim[d]:
            dims[d] = qdim[d]
    # rank of the induced differential: rank of (proj . d) on the quotient;
    # equivalently rank of [d restricted] modulo relations in the target:
    # rank(proj_{d-1} . diff_d . incl) = rank([diff_d | rel_{d-1} basis]) - rank(rel_{d-1})
    rank_d = {}
    for d in deg_list:
        if d - 1 not in by_degree:
            rank_d[d] = 0
            continue
        cols, tcols = by_degree[d], by_degree[d - 1]
        block = [[diff[t][c] for c in cols] for t in tcols]
        trel = rel_by_degree.get(d - 1, [])
        # columns of block modulo the span of trel rows: stack and subtract
        stacked = [list(r) for r in trel]
        joint = [list(col) for col in zip(*block)] + stacked
        rank_d[d] = gauss_rank(joint, p) - gauss_rank(stacked, p)
    for d in deg_list:
        h = qdim.get(d, 0) - rank_d.get(d, 0) - rank_d.get(d + 1, 0)
        if h:
            hom[d] = h
    return dims, hom
