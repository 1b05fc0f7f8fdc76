"""Alexandrov-Fenchel inequality verdicts for both engines.

Every left-hand side, right-hand side, and gap is an exact rational,
and equality verdicts are exact comparisons. Floating point enters in
exactly one place: the m-th roots sampled for concavity reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .convexvol import BodyTuple, Polytope, dilate, minkowski_sum, mixed_volume
from .errors import (
    DimensionMismatchError,
    HypothesisError,
    InvariantViolationError,
    NotBigError,
)
from .matrixcore import HermMat, is_pd, is_psd, proportional
from .mixdisc import MatTuple, _discriminant_auto
from .rationals import Rat, as_rat

DEFAULT_GRID_SIZE = 11


@dataclass(frozen=True)
class GapReport:
    """Exact verdict for one Alexandrov-Fenchel type instance.

    gap is lhs - rhs and is nonnegative on qualified inputs. The
    certificate carries a proportionality (or homothety) constant when
    one was found; it always implies equality. characterized records
    whether equality is claimed to occur *only* under such a
    certificate, which needs definite inputs.
    """

    lhs: Rat
    rhs: Rat
    gap: Rat
    equality: bool
    certificate: Optional[Rat]
    characterized: bool

    def __post_init__(self):
        if self.gap != self.lhs - self.rhs or self.equality != (self.gap == 0):
            raise InvariantViolationError("inconsistent gap report fields")


@dataclass(frozen=True)
class ConcavityReport:
    """Float samples of a concave root function on a rational grid."""

    grid: tuple
    values: tuple
    max_violation: float


def gap_report(lhs, rhs, certificate, characterized, context) -> GapReport:
    """Assemble a report, enforcing the inequality and its equality case."""
    gap = lhs - rhs
    if gap < 0:
        raise InvariantViolationError(f"{context}: negative gap {gap}")
    if certificate is not None and gap != 0:
        raise InvariantViolationError(
            f"{context}: certificate {certificate} found but gap {gap} is nonzero"
        )
    if characterized and gap == 0 and certificate is None:
        raise InvariantViolationError(
            f"{context}: equality holds on definite inputs but no certificate exists"
        )
    return GapReport(lhs, rhs, gap, gap == 0, certificate, characterized)


def _check_hermitian(mats) -> None:
    for m in mats:
        if not isinstance(m, HermMat):
            raise TypeError(f"expected a Hermitian matrix, got {type(m).__name__}")


def af_gap_discriminant(a: HermMat, b: HermMat, rest: Sequence[HermMat] = ()) -> GapReport:
    """Pairwise AF inequality for mixed discriminants.

    lhs = D(A, B, rest)^2 and rhs = D(A, A, rest) D(B, B, rest), where
    A and the fixed matrices must be positive semi-definite while B may
    be any Hermitian matrix. When A and the fixed matrices are positive
    definite the equality case is characterized: gap = 0 exactly when
    B is a real multiple of A, and that multiple is the certificate.
    """
    rest = list(rest)
    _check_hermitian([a, b] + rest)
    if not (is_psd(a) and all(is_psd(m) for m in rest)):
        raise HypothesisError(
            "the first and the fixed matrices must be positive semi-definite"
        )
    d_ab = _discriminant_auto(MatTuple([a, b] + rest)).re
    d_aa = _discriminant_auto(MatTuple([a, a] + rest)).re
    d_bb = _discriminant_auto(MatTuple([b, b] + rest)).re
    characterized = is_pd(a) and all(is_pd(m) for m in rest)
    return gap_report(
        d_ab ** 2, d_aa * d_bb, proportional(a, b), characterized, "AF discriminant"
    )


def af_m_fold_discriminant(t: MatTuple, m: int) -> GapReport:
    """m-fold AF inequality D(A_1..A_n)^m >= prod_i D(A_i^[m], tail).

    The i-th right-hand factor repeats A_i in the first m slots; the
    tail A_{m+1}..A_n is shared. All matrices must be positive
    semi-definite. For positive definite inputs equality holds exactly
    when A_1..A_m are pairwise proportional, and the certificate is the
    ratio of the second to the first.
    """
    n = t.n
    if not 2 <= m <= n:
        raise ValueError(f"m must lie in [2, {n}], got {m}")
    _check_hermitian(t.mats)
    if not all(is_psd(mat) for mat in t.mats):
        raise HypothesisError("m-fold AF requires positive semi-definite matrices")
    tail = list(t.mats[m:])
    lhs = _discriminant_auto(t).re ** m
    rhs = Fraction(1)
    for i in range(m):
        rhs *= _discriminant_auto(MatTuple([t.mats[i]] * m + tail)).re
    ratios = [proportional(t.mats[0], t.mats[i]) for i in range(1, m)]
    cert = ratios[0] if all(r is not None for r in ratios) else None
    characterized = all(is_pd(mat) for mat in t.mats)
    return gap_report(lhs, rhs, cert, characterized, "m-fold AF discriminant")


def homothety_ratio(k: Polytope, l: Polytope) -> Optional[Rat]:
    """Scale factor lam >= 0 with L = lam K + t, or None if no such map.

    Dilation by a positive factor plus translation preserves the
    lexicographic order of vertices, so sorted vertex lists must match
    position by position.
    """
    u, v = k.vertices, l.vertices
    if len(v) == 1:
        return Fraction(0)
    if len(u) != len(v):
        return None
    du = [tuple(a - b for a, b in zip(u[i], u[0])) for i in range(1, len(u))]
    dv = [tuple(a - b for a, b in zip(v[i], v[0])) for i in range(1, len(v))]
    lam = None
    for c, val in enumerate(du[0]):
        if val:
            lam = dv[0][c] / val
            break
    if lam is None or lam <= 0:
        return None
    for row_u, row_v in zip(du, dv):
        if any(y != lam * x for x, y in zip(row_u, row_v)):
            return None
    return lam


def af_gap_volume(k: Polytope, l: Polytope, rest: Sequence[Polytope] = ()) -> GapReport:
    """Pairwise AF inequality for mixed volumes.

    lhs = V(K, L, rest)^2 and rhs = V(K, K, rest) V(L, L, rest). A
    homothety L = lam K + t is detected and reported as a certificate,
    which is sufficient for equality; no full equality characterization
    is claimed, so characterized is always False here.
    """
    rest = list(rest)
    v_kl = mixed_volume(BodyTuple([k, l] + rest))
    v_kk = mixed_volume(BodyTuple([k, k] + rest))
    v_ll = mixed_volume(BodyTuple([l, l] + rest))
    return gap_report(
        v_kl ** 2, v_kk * v_ll, homothety_ratio(k, l), False, "AF volume"
    )


def af_m_fold_volume(t: BodyTuple, m: int) -> GapReport:
    """m-fold AF inequality for mixed volumes; see af_m_fold_discriminant."""
    d = t.dim
    if not 2 <= m <= d:
        raise ValueError(f"m must lie in [2, {d}], got {m}")
    tail = list(t.bodies[m:])
    lhs = mixed_volume(t) ** m
    rhs = Fraction(1)
    for i in range(m):
        rhs *= mixed_volume(BodyTuple([t.bodies[i]] * m + tail))
    ratios = [homothety_ratio(t.bodies[0], t.bodies[i]) for i in range(1, m)]
    cert = ratios[0] if all(r is not None for r in ratios) else None
    return gap_report(lhs, rhs, cert, False, "m-fold AF volume")


def _grid(grid_size: int):
    if grid_size < 3:
        raise ValueError(f"grid_size must be at least 3, got {grid_size}")
    return [Fraction(k, grid_size - 1) for k in range(grid_size)]


def _concavity_report(grid, exact_values, m) -> ConcavityReport:
    values = [float(v) ** (1.0 / m) for v in exact_values]
    max_violation = 0.0
    for i in range(len(values) - 2):
        bulge = values[i] + values[i + 2] - 2 * values[i + 1]
        if bulge > max_violation:
            max_violation = bulge
    g0, g1 = values[0], values[-1]
    for lam, gv in zip(grid, values):
        f = float(lam)
        shortfall = (1 - f) * g0 + f * g1 - gv
        if shortfall > max_violation:
            max_violation = shortfall
    return ConcavityReport(tuple(grid), tuple(values), max_violation)


def bm_concavity_discriminant(
    a0: HermMat,
    a1: HermMat,
    rest: Sequence[HermMat],
    m: int,
    grid_size: int = DEFAULT_GRID_SIZE,
) -> ConcavityReport:
    """Sample lam -> D(((1-lam)A0 + lam A1)^[m], rest)^(1/m) on [0, 1].

    The inner discriminants are exact; only the m-th root is floated.
    Concavity is probed two ways: second differences of consecutive
    grid triples and shortfall below the chord through the endpoints.
    """
    rest = list(rest)
    _check_hermitian([a0, a1] + rest)
    n = a0.n
    if not 1 <= m <= n:
        raise ValueError(f"m must lie in [1, {n}], got {m}")
    if len(rest) != n - m:
        raise DimensionMismatchError(
            f"need {n - m} fixed matrices for m = {m}, got {len(rest)}"
        )
    if not all(is_psd(x) for x in [a0, a1] + rest):
        raise HypothesisError("concavity needs positive semi-definite matrices")
    grid = _grid(grid_size)
    exact = []
    for lam in grid:
        combo = a0.scale(1 - lam) + a1.scale(lam)
        val = _discriminant_auto(MatTuple([combo] * m + rest)).re
        if val < 0:
            raise InvariantViolationError(
                "discriminant of a semi-definite tuple must be nonnegative"
            )
        exact.append(val)
    return _concavity_report(grid, exact, m)


def bm_concavity_volume(
    k0: Polytope,
    k1: Polytope,
    rest: Sequence[Polytope],
    m: int,
    grid_size: int = DEFAULT_GRID_SIZE,
) -> ConcavityReport:
    """Sample lam -> V(((1-lam)K0 + lam K1)^[m], rest)^(1/m) on [0, 1]."""
    rest = list(rest)
    d = k0.dim
    if not 1 <= m <= d:
        raise ValueError(f"m must lie in [1, {d}], got {m}")
    if len(rest) != d - m:
        raise DimensionMismatchError(
            f"need {d - m} fixed bodies for m = {m}, got {len(rest)}"
        )
    grid = _grid(grid_size)
    exact = []
    for lam in grid:
        combo = minkowski_sum(dilate(k0, 1 - lam), dilate(k1, lam))
        val = mixed_volume(BodyTuple([combo] * m + rest))
        exact.append(val)
    return _concavity_report(grid, exact, m)


def equality_lambda(d00, d01) -> Rat:
    """Proportionality constant d01/d00 read off a pairing table.

    A vanishing reference pairing d00 signals a non-big configuration,
    where no constant exists; that case raises NotBigError.
    """
    d00 = as_rat(d00)
    d01 = as_rat(d01)
    if d00 == 0:
        raise NotBigError("reference pairing d00 = 0: configuration is not big")
    return d01 / d00
