"""Matrices over the Gaussian rationals.

Two immutable types: GenMat for general square matrices and HermMat for
Hermitian ones (validated at construction). Determinants are exact via
fraction-free elimination on a denominator-cleared copy; positivity is
decided by exact minor arithmetic, never by eigenvalues.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from ._kernels import clear_gauss_matrix, gauss_det
from .errors import DimensionMismatchError, InvariantViolationError
from .rationals import GaussRat, Rat


def _as_gauss(value) -> GaussRat:
    if isinstance(value, GaussRat):
        return value
    return GaussRat(value)


class GenMat:
    """Square matrix with GaussRat entries; treat instances as immutable."""

    __slots__ = ("n", "entries")

    def __init__(self, rows: Sequence[Sequence[object]]):
        n = len(rows)
        if n == 0:
            raise ValueError("matrix must have at least one row")
        grid = []
        for row in rows:
            if len(row) != n:
                raise DimensionMismatchError(f"row of length {len(row)} in a {n}x{n} matrix")
            grid.append(tuple(_as_gauss(x) for x in row))
        self.n = n
        self.entries = tuple(grid)

    @classmethod
    def zero(cls, n: int) -> "GenMat":
        return cls([[0] * n for _ in range(n)])

    @classmethod
    def identity(cls, n: int) -> "GenMat":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def _require_same_shape(self, other: "GenMat") -> None:
        if self.n != other.n:
            raise DimensionMismatchError(f"matrix dimensions differ: {self.n} vs {other.n}")

    def __add__(self, other):
        if not isinstance(other, GenMat):
            return NotImplemented
        self._require_same_shape(other)
        rows = [
            [a + b for a, b in zip(r1, r2)]
            for r1, r2 in zip(self.entries, other.entries)
        ]
        cls = HermMat if isinstance(self, HermMat) and isinstance(other, HermMat) else GenMat
        return cls(rows)

    def __sub__(self, other):
        if not isinstance(other, GenMat):
            return NotImplemented
        self._require_same_shape(other)
        rows = [
            [a - b for a, b in zip(r1, r2)]
            for r1, r2 in zip(self.entries, other.entries)
        ]
        cls = HermMat if isinstance(self, HermMat) and isinstance(other, HermMat) else GenMat
        return cls(rows)

    def __neg__(self):
        return type(self)([[-x for x in row] for row in self.entries])

    def scale(self, c) -> "GenMat":
        z = _as_gauss(c)
        return GenMat([[x * z for x in row] for row in self.entries])

    def __matmul__(self, other):
        if not isinstance(other, GenMat):
            return NotImplemented
        self._require_same_shape(other)
        n = self.n
        rows = [
            [
                sum((self.entries[i][k] * other.entries[k][j] for k in range(n)), GaussRat(0))
                for j in range(n)
            ]
            for i in range(n)
        ]
        return GenMat(rows)

    def conj_transpose(self) -> "GenMat":
        n = self.n
        return GenMat([[self.entries[j][i].conjugate() for j in range(n)] for i in range(n)])

    def trace(self) -> GaussRat:
        t = GaussRat(0)
        for i in range(self.n):
            t = t + self.entries[i][i]
        return t

    def det(self) -> GaussRat:
        rows, scale = clear_gauss_matrix(self.entries)
        dre, dim = gauss_det(rows)
        s = scale ** self.n
        return GaussRat(Fraction(dre, s), Fraction(dim, s))

    def is_zero(self) -> bool:
        return all(not x for row in self.entries for x in row)

    def __eq__(self, other):
        if not isinstance(other, GenMat):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"{type(self).__name__}({[[str(x.re) if x.is_real else (str(x.re), str(x.im)) for x in row] for row in self.entries]!r})"


class HermMat(GenMat):
    """Hermitian matrix: conjugate-symmetric entries, real diagonal."""

    __slots__ = ()

    def __init__(self, rows):
        super().__init__(rows)
        e = self.entries
        for i in range(self.n):
            if e[i][i].im != 0:
                raise ValueError(f"diagonal entry ({i},{i}) is not real")
            for j in range(i + 1, self.n):
                if e[i][j] != e[j][i].conjugate():
                    raise ValueError(f"entries ({i},{j}) and ({j},{i}) are not conjugate")

    @classmethod
    def from_gram(cls, g: GenMat) -> "HermMat":
        """The Gram matrix G G*, Hermitian and positive semi-definite."""
        return cls((g @ g.conj_transpose()).entries)

    def scale(self, c) -> "HermMat":
        z = _as_gauss(c)
        if not z.is_real:
            raise ValueError("scaling a Hermitian matrix requires a real scalar")
        return HermMat([[x * z for x in row] for row in self.entries])


def _real_subdet(rows, idx_rows, idx_cols):
    """Integer determinant of a submatrix that must come out real."""
    sub = tuple(tuple(rows[i][j] for j in idx_cols) for i in idx_rows)
    dre, dim = gauss_det(sub)
    if dim != 0:
        raise InvariantViolationError("principal minor of a Hermitian matrix must be real")
    return dre


def principal_minor_sums(a: HermMat) -> list:
    """Coefficients c_k = sum of all k x k principal minors, k = 1..n.

    These are the characteristic-polynomial coefficients in the expansion
    det(tI - A) = t^n - c_1 t^(n-1) + c_2 t^(n-2) - ... and a Hermitian A
    is positive semi-definite exactly when every c_k is nonnegative.
    """
    if not isinstance(a, HermMat):
        raise TypeError("positivity tests require a Hermitian matrix")
    rows, scale = clear_gauss_matrix(a.entries)
    n = a.n
    out = []
    for k in range(1, n + 1):
        total = 0
        for subset in combinations(range(n), k):
            total += _real_subdet(rows, subset, subset)
        out.append(Fraction(total, scale ** k))
    return out


def is_psd(a: HermMat) -> bool:
    """Exact positive semi-definiteness test."""
    return all(c >= 0 for c in principal_minor_sums(a))


def is_pd(a: HermMat) -> bool:
    """Exact positive definiteness test via leading principal minors."""
    if not isinstance(a, HermMat):
        raise TypeError("positivity tests require a Hermitian matrix")
    rows, _ = clear_gauss_matrix(a.entries)
    for k in range(1, a.n + 1):
        # clearing scales each minor by scale^k > 0, so signs carry over
        if _real_subdet(rows, range(k), range(k)) <= 0:
            return False
    return True


def proportional(a: GenMat, b: GenMat) -> Optional[Rat]:
    """Return the real rational lambda with B = lambda * A, if one exists.

    Conventions: (0, 0) gives 0, (A, 0) gives 0 for nonzero A, and
    (0, B) for nonzero B gives None. A complex ratio is rejected.
    """
    if a.n != b.n:
        raise DimensionMismatchError(f"matrix dimensions differ: {a.n} vs {b.n}")
    pivot = None
    for i in range(a.n):
        for j in range(a.n):
            if a.entries[i][j]:
                pivot = (i, j)
                break
        if pivot:
            break
    if pivot is None:
        return Fraction(0) if b.is_zero() else None
    lam = b.entries[pivot[0]][pivot[1]] / a.entries[pivot[0]][pivot[1]]
    if not lam.is_real:
        return None
    for r1, r2 in zip(a.entries, b.entries):
        for x, y in zip(r1, r2):
            if y != x * lam:
                return None
    return lam.re
