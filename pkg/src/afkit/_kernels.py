"""Integer kernels: exact determinants over Z and Z[i], and the
permutation-sum accumulator behind mixed discriminants.

Matrices at this level are tuples of tuples, with Gaussian integers as
(re, im) int pairs. Callers clear denominators before descending here and
divide the scale factor back out afterwards; everything below is pure
integer arithmetic, so intermediate growth is the only cost.
"""

from math import lcm

_GZERO = (0, 0)


def compositions(total, parts):
    """All tuples of nonnegative ints of the given length summing to total."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in compositions(total - head, parts - 1):
            yield (head,) + rest


def _gmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gdivexact(a, b):
    # exact division in Z[i]; Bareiss guarantees divisibility, so any
    # remainder here is an arithmetic bug
    den = b[0] * b[0] + b[1] * b[1]
    qr, rr = divmod(a[0] * b[0] + a[1] * b[1], den)
    qi, ri = divmod(a[1] * b[0] - a[0] * b[1], den)
    if rr or ri:
        raise ArithmeticError("non-exact division in a fraction-free elimination step")
    return (qr, qi)


def clear_gauss_matrix(entries):
    """Scale a GaussRat grid up to Gaussian integers; return (rows, scale)."""
    dens = [1]
    for row in entries:
        for z in row:
            dens.append(z.re.denominator)
            dens.append(z.im.denominator)
    scale = lcm(*dens)
    rows = tuple(
        tuple((int(z.re * scale), int(z.im * scale)) for z in row) for row in entries
    )
    return rows, scale


def gauss_det(rows):
    """Determinant of a Gaussian-integer matrix via Bareiss elimination.

    Fraction-free: every division is exact in Z[i]. Returns an (re, im)
    int pair.
    """
    n = len(rows)
    if n == 0:
        return (1, 0)
    m = [list(r) for r in rows]
    sign = 1
    prev = (1, 0)
    for k in range(n - 1):
        if m[k][k] == _GZERO:
            for i in range(k + 1, n):
                if m[i][k] != _GZERO:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return _GZERO
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            for j in range(k + 1, n):
                p = _gmul(pivot, m[i][j])
                q = _gmul(mik, m[k][j])
                m[i][j] = _gdivexact((p[0] - q[0], p[1] - q[1]), prev)
            m[i][k] = _GZERO
        prev = pivot
    d = m[n - 1][n - 1]
    return (sign * d[0], sign * d[1]) if sign < 0 else d


def int_det(rows):
    """Determinant of a plain integer matrix via Bareiss elimination."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i = m[i]
            row_k = m[k]
            for j in range(k + 1, n):
                num = pivot * row_i[j] - mik * row_k[j]
                q, r = divmod(num, prev)
                if r:
                    raise ArithmeticError("non-exact division in a fraction-free elimination step")
                row_i[j] = q
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def mixed_perm_sum(mats):
    """Sum, over all ways to draw column j of a working matrix from a
    distinct source matrix, of the determinant of the result.

    Equals n! times the mixed discriminant of the integer inputs. The
    double sum over (matrix assignment, row permutation) folds into one
    subset DP keyed by (rows used, matrices used); the permutation sign
    accrues one inversion-count factor per placed row.
    """
    n = len(mats)
    dp = {(0, 0): (1, 0)}
    for col in range(n):
        nxt = {}
        for (rmask, mmask), acc in dp.items():
            for mi in range(n):
                if mmask >> mi & 1:
                    continue
                grid = mats[mi]
                nm = mmask | 1 << mi
                # placing row r after the rows in rmask contributes
                # (-1)^(count of used rows above r), accumulating sign(tau)
                for r in range(n):
                    if rmask >> r & 1:
                        continue
                    e = grid[r][col]
                    if e == _GZERO:
                        continue
                    term = _gmul(acc, e)
                    if (rmask >> (r + 1)).bit_count() & 1:
                        term = (-term[0], -term[1])
                    key = (rmask | 1 << r, nm)
                    cur = nxt.get(key)
                    nxt[key] = term if cur is None else (cur[0] + term[0], cur[1] + term[1])
        dp = nxt
        if not dp:
            return _GZERO
    full = (1 << n) - 1
    return dp.get((full, full), _GZERO)
