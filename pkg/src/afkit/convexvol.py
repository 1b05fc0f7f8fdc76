"""Exact convex body engine over the rationals.

Bodies are stored by vertices only (V-representation); every operation
re-canonicalizes to extreme points. Hulls are built by incremental facet
insertion on denominator-cleared integer coordinates, volumes come from
a simplex fan over a fixed base vertex, and mixed volumes evaluate the
polarization formula with subset Minkowski sums memoized and reduced as
they grow. Everything is integer or Fraction arithmetic end to end.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial, gcd, lcm
from operator import mul
from typing import Sequence

from ._kernels import compositions, int_det
from .errors import DimensionMismatchError, InvariantViolationError, SizeLimitError
from .rationals import Rat, as_rat

MAX_DIMENSION = 4
DEFAULT_VERTEX_BUDGET = 50_000


def _dot(a, b):
    return sum(map(mul, a, b))


def _clear_points(points):
    """Scale rational points to integer coordinates by a common factor."""
    dens = [1]
    for p in points:
        for c in p:
            dens.append(c.denominator)
    scale = lcm(*dens)
    ints = [tuple(int(c * scale) for c in p) for p in points]
    return ints, scale


class _IntEchelon:
    """Row echelon store over the integers, for exact rank and span tests."""

    __slots__ = ("rows",)

    def __init__(self):
        self.rows = []  # (pivot index, normalized row) pairs

    def add(self, vec) -> bool:
        """Insert vec if independent of the stored rows; report growth."""
        v = list(vec)
        for piv, row in self.rows:
            if v[piv]:
                a, b = v[piv], row[piv]
                v = [b * x - a * y for x, y in zip(v, row)]
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            return False
        g = 0
        for x in v:
            g = gcd(g, x)
        self.rows.append((piv, tuple(x // g for x in v)))
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)


def _affine_basis(ints, d):
    """Greedy affinely independent subset; returns (indices, echelon)."""
    base = ints[0]
    ech = _IntEchelon()
    idx = [0]
    for i in range(1, len(ints)):
        if ech.add(tuple(a - b for a, b in zip(ints[i], base))):
            idx.append(i)
            if len(idx) == d + 1:
                break
    return idx, ech


def _facet_plane(ints, vidx):
    """Primitive (normal, offset) of the hyperplane through d points.

    Normal components are cofactors of the edge matrix, hence orthogonal
    to every edge; a zero normal would mean an affinely degenerate facet,
    which the insertion logic rules out.
    """
    d = len(ints[0])
    base = ints[vidx[0]]
    edges = [tuple(ints[v][j] - base[j] for j in range(d)) for v in vidx[1:]]
    normal = []
    for j in range(d):
        minor = [[e[c] for c in range(d) if c != j] for e in edges]
        a = int_det(minor)
        normal.append(-a if j & 1 else a)
    if not any(normal):
        raise InvariantViolationError("degenerate facet in hull construction")
    b = _dot(normal, base)
    g = 0
    for x in normal:
        g = gcd(g, x)
    g = gcd(g, b)
    if g > 1:
        normal = [x // g for x in normal]
        b //= g
    return tuple(normal), b


def _oriented(plane, cref, dplus1):
    # orient the facet so the initial-simplex barycenter is strictly beneath
    a, b = plane
    s = _dot(a, cref)
    rhs = dplus1 * b
    if s > rhs:
        return tuple(-x for x in a), -b
    if s == rhs:
        raise InvariantViolationError("interior reference point on a facet plane")
    return a, b


def _hull_full_dim(ints, d, basis_idx):
    """Incremental hull of a full-dimensional integer point cloud.

    Returns (facets, apex index). Facets are (normal, offset, vertex
    index tuple) triples forming a simplicial triangulation of the
    boundary, oriented so that normal . x <= offset holds on the hull.
    """
    cref = tuple(sum(ints[i][j] for i in basis_idx) for j in range(d))
    dplus1 = d + 1
    facets = []
    for drop in range(dplus1):
        vidx = tuple(basis_idx[i] for i in range(dplus1) if i != drop)
        a, b = _oriented(_facet_plane(ints, vidx), cref, dplus1)
        facets.append((a, b, vidx))
    seeded = set(basis_idx)
    for pi, p in enumerate(ints):
        if pi in seeded:
            continue
        visible = []
        kept = []
        for f in facets:
            if _dot(f[0], p) > f[1]:
                visible.append(f)
            else:
                kept.append(f)
        if not visible:
            continue
        # a ridge shared by two visible facets is interior to the visible
        # region; one seen exactly once lies on the horizon
        ridge_count = {}
        for _, _, vidx in visible:
            for drop in range(d):
                ridge = tuple(sorted(vidx[i] for i in range(d) if i != drop))
                ridge_count[ridge] = ridge_count.get(ridge, 0) + 1
        for ridge, count in ridge_count.items():
            if count != 1:
                continue
            vidx = ridge + (pi,)
            a, b = _oriented(_facet_plane(ints, vidx), cref, dplus1)
            kept.append((a, b, vidx))
        facets = kept
    return facets, basis_idx[0]


def _extreme_indices(ints, d, facets):
    """Indices of the extreme points, given the final facet list.

    A boundary point is a vertex exactly when its active facet normals
    span the whole space; testing every supporting plane makes coplanar
    splits of a geometric facet harmless. Duplicate planes from such
    splits contribute nothing to the rank, so they are deduplicated
    up front.
    """
    listed = set()
    for _, _, vidx in facets:
        listed.update(vidx)
    planes = sorted({(a, b) for a, b, _ in facets})
    out = []
    for v in sorted(listed):
        p = ints[v]
        ech = _IntEchelon()
        for a, b in planes:
            if _dot(a, p) == b:
                ech.add(a)
                if ech.rank == d:
                    break
        if ech.rank == d:
            out.append(v)
    return out


def _invert_fraction_matrix(m):
    k = len(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(k)]
           for i, row in enumerate(m)]
    for c in range(k):
        pr = next(i for i in range(c, k) if aug[i][c] != 0)
        aug[c], aug[pr] = aug[pr], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for i in range(k):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[k:] for row in aug]


def _project_affine(ints, basis_idx, rank):
    """Affine-isomorphic image of a flat cloud in Q^rank.

    Coordinates are taken against the independent difference vectors of
    the affine basis. Every point lies in their span by construction, so
    solving on a set of pivot coordinates is exact and total.
    """
    d = len(ints[0])
    base = ints[basis_idx[0]]
    u = [tuple(ints[i][j] - base[j] for j in range(d)) for i in basis_idx[1:]]
    m = [[Fraction(x) for x in vec] for vec in u]
    piv_cols = []
    r = 0
    for c in range(d):
        pr = next((i for i in range(r, rank) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(rank):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        piv_cols.append(c)
        r += 1
        if r == rank:
            break
    inv = _invert_fraction_matrix([[u[i][c] for i in range(rank)] for c in piv_cols])
    out = []
    for p in ints:
        w = [Fraction(p[c] - base[c]) for c in piv_cols]
        out.append(tuple(
            sum(inv[i][j] * w[j] for j in range(rank)) for i in range(rank)
        ))
    return out


def _extreme_index_set(points, d):
    """Ascending indices of the extreme points of a deduped cloud."""
    if len(points) == 1:
        return [0]
    if d == 1:
        lo = min(range(len(points)), key=lambda i: points[i])
        hi = max(range(len(points)), key=lambda i: points[i])
        return sorted({lo, hi})
    ints, _ = _clear_points(points)
    basis_idx, ech = _affine_basis(ints, d)
    rank = ech.rank
    if rank == d:
        facets, _ = _hull_full_dim(ints, d, basis_idx)
        return _extreme_indices(ints, d, facets)
    # flat cloud: extreme points are preserved by any affine isomorphism
    # of the span, so recurse in lower dimension
    return _extreme_index_set(_project_affine(ints, basis_idx, rank), rank)


def _volume_points(points, d):
    """Exact d-volume of the hull of a deduped cloud of Fraction tuples."""
    if d == 1:
        return max(points)[0] - min(points)[0]
    if len(points) <= d:
        return Fraction(0)
    ints, scale = _clear_points(points)
    basis_idx, ech = _affine_basis(ints, d)
    if ech.rank < d:
        return Fraction(0)
    facets, apex = _hull_full_dim(ints, d, basis_idx)
    ap = ints[apex]
    total = 0
    for _, _, vidx in facets:
        if apex in vidx:
            continue
        rows = [[ints[v][j] - ap[j] for j in range(d)] for v in vidx]
        total += abs(int_det(rows))
    return Fraction(total, factorial(d) * scale ** d)


class Polytope:
    """Convex polytope in Q^d, stored by its extreme points.

    Construction canonicalizes: whatever point set comes in, vertices end
    up as the lexicographically sorted extreme points of its hull, so
    equal bodies compare equal structurally. Flat (lower-dimensional)
    bodies are allowed.
    """

    __slots__ = ("dim", "vertices")

    def __init__(self, points):
        pts = [tuple(as_rat(c) for c in p) for p in points]
        if not pts:
            raise ValueError("a polytope needs at least one point")
        d = len(pts[0])
        if d == 0:
            raise ValueError("points must have at least one coordinate")
        if any(len(p) != d for p in pts):
            raise DimensionMismatchError("points of mixed dimension")
        if d > MAX_DIMENSION:
            raise SizeLimitError(
                f"dimension {d} exceeds the supported maximum {MAX_DIMENSION}"
            )
        uniq = sorted(set(pts))
        self.dim = d
        self.vertices = tuple(uniq[i] for i in _extreme_index_set(uniq, d))

    def __eq__(self, other):
        if not isinstance(other, Polytope):
            return NotImplemented
        return self.dim == other.dim and self.vertices == other.vertices

    def __hash__(self):
        return hash((self.dim, self.vertices))

    def __repr__(self):
        return f"Polytope(dim={self.dim}, vertices={len(self.vertices)})"


class BodyTuple:
    """An ordered tuple of d bodies in dimension d."""

    __slots__ = ("dim", "bodies")

    def __init__(self, bodies: Sequence[Polytope]):
        bodies = tuple(bodies)
        if not bodies:
            raise ValueError("body tuple must not be empty")
        for b in bodies:
            if not isinstance(b, Polytope):
                raise TypeError(f"expected a Polytope, got {type(b).__name__}")
        d = bodies[0].dim
        if len(bodies) != d or any(b.dim != d for b in bodies):
            raise DimensionMismatchError(
                f"need exactly {d} bodies of dimension {d}, "
                f"got {len(bodies)} of dimensions {[b.dim for b in bodies]}"
            )
        self.dim = d
        self.bodies = bodies


def convex_hull(points) -> Polytope:
    """Extreme points of the hull of a finite rational point set."""
    return Polytope(points)


def volume(p: Polytope) -> Rat:
    """Exact d-dimensional volume; 0 for lower-dimensional bodies."""
    return _volume_points(list(p.vertices), p.dim)


def minkowski_sum(p: Polytope, q: Polytope) -> Polytope:
    """Hull of all pairwise vertex sums."""
    if p.dim != q.dim:
        raise DimensionMismatchError(f"body dimensions differ: {p.dim} vs {q.dim}")
    return Polytope({
        tuple(a + b for a, b in zip(u, v))
        for u in p.vertices for v in q.vertices
    })


def translate(p: Polytope, vec) -> Polytope:
    """The body shifted by a fixed vector."""
    t = tuple(as_rat(c) for c in vec)
    if len(t) != p.dim:
        raise DimensionMismatchError(f"translation vector of length {len(t)} in dimension {p.dim}")
    return Polytope([tuple(a + b for a, b in zip(v, t)) for v in p.vertices])


def dilate(p: Polytope, lam) -> Polytope:
    """Scale by a nonnegative factor; factor 0 collapses to the origin."""
    lam = as_rat(lam)
    if lam < 0:
        raise ValueError("dilation requires a nonnegative factor")
    if lam == 0:
        return Polytope([(0,) * p.dim])
    return Polytope([tuple(lam * c for c in v) for v in p.vertices])


def mixed_volume(t: BodyTuple, budget: int = DEFAULT_VERTEX_BUDGET) -> Rat:
    """V(K_1, ..., K_d) via the polarization formula.

    Subset Minkowski sums are memoized and reduced to extreme points
    after every pairwise sum, keeping intermediate clouds small; the
    budget bounds a pairwise product before it is materialized.
    """
    d = t.dim
    clouds = {1 << i: list(b.vertices) for i, b in enumerate(t.bodies)}
    for mask in range(3, 1 << d):
        if mask & (mask - 1) == 0:
            continue
        low = mask & -mask
        a = clouds[mask ^ low]
        b = clouds[low]
        if len(a) * len(b) > budget:
            raise SizeLimitError(
                f"intermediate Minkowski sum of {len(a) * len(b)} points "
                f"exceeds the budget of {budget}"
            )
        sums = sorted({tuple(x + y for x, y in zip(u, v)) for u in a for v in b})
        clouds[mask] = [sums[i] for i in _extreme_index_set(sums, d)]
    total = Fraction(0)
    for mask in range(1, 1 << d):
        v = _volume_points(clouds[mask], d)
        if (d + mask.bit_count()) & 1:
            total -= v
        else:
            total += v
    result = total / factorial(d)
    if result < 0:
        raise InvariantViolationError("mixed volume of polytopes must be nonnegative")
    return result


def minkowski_expansion_check(bodies: Sequence[Polytope], lambdas) -> bool:
    """Verify volume(sum lambda_i K_i) against its multinomial expansion.

    The right-hand side runs over all compositions r_1 + ... + r_m = d,
    weighting V(K_1 repeated r_1, ..., K_m repeated r_m) by the
    multinomial coefficient and the monomial in the lambdas.
    """
    bodies = list(bodies)
    if not bodies:
        raise ValueError("need at least one body")
    if len(lambdas) != len(bodies):
        raise DimensionMismatchError(
            f"{len(bodies)} bodies but {len(lambdas)} coefficients"
        )
    d = bodies[0].dim
    if any(b.dim != d for b in bodies):
        raise DimensionMismatchError("bodies must share one dimension")
    lams = [as_rat(l) for l in lambdas]
    if any(l < 0 for l in lams):
        raise ValueError("expansion requires nonnegative coefficients")

    combo = dilate(bodies[0], lams[0])
    for b, lam in zip(bodies[1:], lams[1:]):
        combo = minkowski_sum(combo, dilate(b, lam))
    lhs = volume(combo)

    df = factorial(d)
    rhs = Fraction(0)
    for comp in compositions(d, len(bodies)):
        coeff = df
        monomial = Fraction(1)
        rep = []
        for b, lam, r in zip(bodies, lams, comp):
            coeff //= factorial(r)
            monomial *= lam ** r
            rep.extend([b] * r)
        if monomial == 0:
            continue
        rhs += coeff * monomial * mixed_volume(BodyTuple(rep))
    return lhs == rhs
