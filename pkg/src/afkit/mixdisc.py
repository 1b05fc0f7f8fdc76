"""Mixed discriminants of matrix tuples.

Two independent evaluation routes cross-validate each other: a folded
permutation sum (fast, n factorial collapsed into a subset DP) and the
polarization alternating sum over subset determinants. The module also
carries the determinant expansion identity checker and the mixed
adjugate, the matrix of discriminants against single-entry basis
matrices.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Sequence

from ._kernels import clear_gauss_matrix, compositions, gauss_det, mixed_perm_sum
from .errors import DimensionMismatchError, InvariantViolationError, SizeLimitError
from .matrixcore import GenMat, HermMat
from .rationals import GaussRat, as_rat

PERMUTATION_ROUTE_MAX_N = 6
POLARIZED_ROUTE_MAX_N = 20


class MatTuple:
    """An ordered tuple of n matrices of dimension n."""

    __slots__ = ("n", "mats")

    def __init__(self, mats: Sequence[GenMat]):
        mats = tuple(mats)
        if not mats:
            raise ValueError("matrix tuple must not be empty")
        for m in mats:
            if not isinstance(m, GenMat):
                raise TypeError(f"expected a matrix, got {type(m).__name__}")
        n = mats[0].n
        if len(mats) != n or any(m.n != n for m in mats):
            raise DimensionMismatchError(
                f"need exactly {n} matrices of dimension {n}, "
                f"got {len(mats)} of dimensions {[m.n for m in mats]}"
            )
        self.n = n
        self.mats = mats

    def all_hermitian(self) -> bool:
        return all(isinstance(m, HermMat) for m in self.mats)


def _finalize(t: MatTuple, re: Fraction, im: Fraction) -> GaussRat:
    result = GaussRat(re, im)
    if t.all_hermitian() and not result.is_real:
        raise InvariantViolationError("mixed discriminant of Hermitian matrices must be real")
    return result


def mixed_discriminant(t: MatTuple) -> GaussRat:
    """D(A_1, ..., A_n) by the permutation sum over column assignments.

    Column j of the working matrix is column j of A_sigma(j); the result
    is the determinant sum over all sigma divided by n factorial.
    """
    n = t.n
    if n > PERMUTATION_ROUTE_MAX_N:
        raise SizeLimitError(
            f"permutation route limited to n <= {PERMUTATION_ROUTE_MAX_N}, got {n}; "
            "use mixed_discriminant_polarized"
        )
    cleared = [clear_gauss_matrix(m.entries) for m in t.mats]
    sre, sim = mixed_perm_sum([rows for rows, _ in cleared])
    denom = factorial(n)
    for _, scale in cleared:
        denom *= scale
    return _finalize(t, Fraction(sre, denom), Fraction(sim, denom))


def mixed_discriminant_polarized(t: MatTuple) -> GaussRat:
    """D(A_1, ..., A_n) by inclusion-exclusion over subset-sum determinants."""
    n = t.n
    if n > POLARIZED_ROUTE_MAX_N:
        raise SizeLimitError(
            f"polarization route limited to n <= {POLARIZED_ROUTE_MAX_N}, got {n}"
        )
    acc_re = Fraction(0)
    acc_im = Fraction(0)
    for mask in range(1, 1 << n):
        grid = None
        for i in range(n):
            if mask >> i & 1:
                e = t.mats[i].entries
                if grid is None:
                    grid = [list(row) for row in e]
                else:
                    for r in range(n):
                        row = grid[r]
                        erow = e[r]
                        for c in range(n):
                            row[c] = row[c] + erow[c]
        rows, scale = clear_gauss_matrix(grid)
        dre, dim = gauss_det(rows)
        s = scale ** n
        if (n + mask.bit_count()) & 1:
            dre, dim = -dre, -dim
        acc_re += Fraction(dre, s)
        acc_im += Fraction(dim, s)
    f = factorial(n)
    return _finalize(t, acc_re / f, acc_im / f)


def _discriminant_auto(t: MatTuple) -> GaussRat:
    if t.n <= PERMUTATION_ROUTE_MAX_N:
        return mixed_discriminant(t)
    return mixed_discriminant_polarized(t)


def det_expansion_check(mats: Sequence[GenMat], lambdas: Sequence) -> bool:
    """Verify det(sum lambda_r A_r) against its multinomial expansion.

    The right-hand side runs over all compositions r_1 + ... + r_m = n,
    weighting D(A_1 repeated r_1, ..., A_m repeated r_m) by the
    multinomial coefficient and the monomial in the lambdas.
    """
    mats = list(mats)
    if not mats:
        raise ValueError("need at least one matrix")
    if len(lambdas) != len(mats):
        raise DimensionMismatchError(
            f"{len(mats)} matrices but {len(lambdas)} coefficients"
        )
    n = mats[0].n
    if any(m.n != n for m in mats):
        raise DimensionMismatchError("matrices must share one dimension")
    lams = [as_rat(l) for l in lambdas]

    combo = GenMat.zero(n)
    for m, lam in zip(mats, lams):
        combo = combo + m.scale(lam)
    lhs = combo.det()

    nf = factorial(n)
    rhs = GaussRat(0)
    for comp in compositions(n, len(mats)):
        coeff = nf
        monomial = Fraction(1)
        rep = []
        for m, lam, r in zip(mats, lams, comp):
            coeff //= factorial(r)
            monomial *= lam ** r
            rep.extend([m] * r)
        if monomial == 0:
            continue
        rhs = rhs + _discriminant_auto(MatTuple(rep)) * (coeff * monomial)
    return lhs == rhs


def mixed_adjugate(partial: Sequence[HermMat]) -> HermMat:
    """The matrix W with W[j][k] = D(E_jk, A_1, ..., A_(n-1)).

    E_jk is the single-entry basis matrix. Expanding the lone nonzero
    column reduces each entry to a mixed discriminant of row/column
    deleted minors:

        W[j][k] = (-1)^(j+k) / n * D(A_1 del (j,k), ..., A_(n-1) del (j,k))

    which is what is computed here. The pairing identity
    D(B, A_1, ..., A_(n-1)) = sum_jk B[j][k] W[j][k] holds for every B.
    """
    part = list(partial)
    if not part:
        raise ValueError("need at least one matrix")
    for m in part:
        if not isinstance(m, HermMat):
            raise TypeError("mixed adjugate requires Hermitian inputs")
    n = part[0].n
    if len(part) != n - 1 or any(m.n != n for m in part):
        raise DimensionMismatchError(
            f"need exactly {n - 1} Hermitian matrices of dimension {n}"
        )
    rows_out = []
    for j in range(n):
        row = []
        for k in range(n):
            minors = [
                GenMat(
                    [
                        [m.entries[r][c] for c in range(n) if c != k]
                        for r in range(n) if r != j
                    ]
                )
                for m in part
            ]
            val = _discriminant_auto(MatTuple(minors)) * Fraction(1, n)
            if (j + k) & 1:
                val = -val
            row.append(val)
        rows_out.append(row)
    try:
        return HermMat(rows_out)
    except ValueError as exc:
        raise InvariantViolationError(
            "mixed adjugate of Hermitian inputs must be Hermitian"
        ) from exc
