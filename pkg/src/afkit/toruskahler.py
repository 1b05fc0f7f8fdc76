"""Flat-torus model for cohomology classes of constant coefficients.

A Hermitian matrix A stands for the constant (1,1)-form it defines on
the unit torus; the intersection number of n such classes is
n! 2^n D(A_1, ..., A_n). Under this bridge nef means positive
semi-definite, Kahler means positive definite, and big-given-nef means
det > 0, so the AF inequality, the Khovanskii-Teissier inequalities,
and the equality theorems all become exactly checkable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Optional, Sequence

from .errors import HypothesisError, InvariantViolationError, NotBigError
from .ineqcheck import GapReport, gap_report
from .matrixcore import HermMat, is_pd, is_psd, proportional
from .mixdisc import MatTuple, _discriminant_auto, mixed_adjugate
from .rationals import Rat


class TorusClass:
    """A constant class on the torus, carried by a Hermitian matrix."""

    __slots__ = ("mat", "nef", "big", "kahler")

    def __init__(self, mat: HermMat):
        if not isinstance(mat, HermMat):
            raise TypeError(f"expected a Hermitian matrix, got {type(mat).__name__}")
        self.mat = mat
        self.nef = is_psd(mat)
        self.big = mat.det().re > 0
        self.kahler = is_pd(mat)
        if (self.nef and self.big) != self.kahler:
            raise InvariantViolationError(
                "nef and big must coincide with Kahler on the torus"
            )

    def __eq__(self, other):
        return isinstance(other, TorusClass) and self.mat == other.mat

    def __hash__(self):
        return hash(self.mat)

    def __repr__(self):
        flags = [name for name in ("nef", "big", "kahler") if getattr(self, name)]
        return f"TorusClass(n={self.mat.n}, {'+'.join(flags) or 'none'})"


def _check_classes(classes) -> None:
    for c in classes:
        if not isinstance(c, TorusClass):
            raise TypeError(f"expected a TorusClass, got {type(c).__name__}")


def _require_big(classes) -> None:
    for c in classes:
        if not (c.nef and c.big):
            raise NotBigError("equality theorems need nef and big classes")


def _inum(mats: Sequence[HermMat]) -> Rat:
    t = MatTuple(mats)
    return math.factorial(t.n) * 2 ** t.n * _discriminant_auto(t).re


def intersection_number(classes: Sequence[TorusClass]) -> Rat:
    """Integral of the wedge of n classes: n! 2^n D(A_1, ..., A_n)."""
    classes = list(classes)
    _check_classes(classes)
    return _inum([c.mat for c in classes])


def af_gap_torus(
    alpha: TorusClass, c: TorusClass, rest: Sequence[TorusClass] = ()
) -> GapReport:
    """AF inequality on intersection numbers against a Kahler reference.

    lhs = (alpha c rest)^2, rhs = (alpha^2 rest)(c^2 rest). The
    reference c and the fixed classes must be Kahler; alpha may be any
    class. Equality holds exactly when alpha = lam c, and that lam is
    the certificate.
    """
    rest = list(rest)
    _check_classes([alpha, c] + rest)
    if not (c.kahler and all(x.kahler for x in rest)):
        raise HypothesisError("the reference and fixed classes must be Kahler")
    rest_m = [x.mat for x in rest]
    lhs = _inum([alpha.mat, c.mat] + rest_m) ** 2
    rhs = _inum([alpha.mat, alpha.mat] + rest_m) * _inum([c.mat, c.mat] + rest_m)
    return gap_report(lhs, rhs, proportional(c.mat, alpha.mat), True, "AF Kahler")


def kt_sequence(g1: TorusClass, g2: TorusClass) -> list:
    """Khovanskii-Teissier numbers s_m = g1^m g2^(n-m) for m = 0..n.

    Both classes must be nef. Log-concavity of the sequence,
    s_m^2 >= s_(m-1) s_(m+1), is asserted before returning.
    """
    _check_classes([g1, g2])
    if not (g1.nef and g2.nef):
        raise HypothesisError("Khovanskii-Teissier needs nef classes")
    n = g1.mat.n
    seq = [_inum([g1.mat] * m + [g2.mat] * (n - m)) for m in range(n + 1)]
    for m in range(1, n):
        if seq[m] ** 2 < seq[m - 1] * seq[m + 1]:
            raise InvariantViolationError(
                f"log-concavity failed at position {m}: {seq}"
            )
    return seq


@dataclass(frozen=True)
class PairEqualityVerdict:
    """Equality theorem for a pair: gap, adjugates, and class ratios."""

    report: GapReport
    adjugates_proportional: bool
    adjugate_ratio: Optional[Rat]
    matrices_proportional: bool
    matrix_ratio: Optional[Rat]


@dataclass(frozen=True)
class MFoldEqualityVerdict:
    """m-fold equality theorem: gap plus the family of mixed adjugates."""

    report: GapReport
    adjugates_proportional: bool
    adjugate_count: int


@dataclass(frozen=True)
class FullEqualityVerdict:
    """Full-product corollary: gap plus pairwise class proportionality."""

    report: GapReport
    matrices_proportional: bool


def equality_theorem_pair(
    g1: TorusClass, g2: TorusClass, rest: Sequence[TorusClass] = ()
) -> PairEqualityVerdict:
    """Certify the pair equality theorem on nef and big classes.

    The AF gap of (g1 g2 rest)^2 vs (g1^2 rest)(g2^2 rest) vanishes
    exactly when the mixed adjugates W(g1, rest) and W(g2, rest) are
    proportional, and exactly when g1 and g2 themselves are; both
    biconditionals are asserted.
    """
    rest = list(rest)
    _check_classes([g1, g2] + rest)
    _require_big([g1, g2] + rest)
    rest_m = [x.mat for x in rest]
    lhs = _inum([g1.mat, g2.mat] + rest_m) ** 2
    rhs = _inum([g1.mat, g1.mat] + rest_m) * _inum([g2.mat, g2.mat] + rest_m)
    matrix_ratio = proportional(g1.mat, g2.mat)
    report = gap_report(lhs, rhs, matrix_ratio, True, "pair equality")
    w1 = mixed_adjugate([g1.mat] + rest_m)
    w2 = mixed_adjugate([g2.mat] + rest_m)
    adjugate_ratio = proportional(w1, w2)
    if report.equality != (adjugate_ratio is not None):
        raise InvariantViolationError(
            "adjugate proportionality must match the equality case"
        )
    return PairEqualityVerdict(
        report,
        adjugate_ratio is not None,
        adjugate_ratio,
        matrix_ratio is not None,
        matrix_ratio,
    )


def equality_theorem_m(classes: Sequence[TorusClass], m: int) -> MFoldEqualityVerdict:
    """Certify the m-fold equality theorem on nef and big classes.

    Equality in the m-fold AF inequality holds exactly when all mixed
    adjugates W(g_{i_1}, ..., g_{i_(m-1)}, tail) over multi-indices
    drawn from the first m classes are pairwise proportional; the
    biconditional is asserted.
    """
    classes = list(classes)
    _check_classes(classes)
    _require_big(classes)
    mats = [c.mat for c in classes]
    t = MatTuple(mats)
    n = t.n
    if not 2 <= m <= n:
        raise ValueError(f"m must lie in [2, {n}], got {m}")
    tail = mats[m:]
    lhs = _inum(mats) ** m
    rhs = 1
    for i in range(m):
        rhs *= _inum([mats[i]] * m + tail)
    ratios = [proportional(mats[0], mats[i]) for i in range(1, m)]
    cert = ratios[0] if all(r is not None for r in ratios) else None
    report = gap_report(lhs, rhs, cert, True, "m-fold equality")
    adjugates = [
        mixed_adjugate([mats[i] for i in combo] + tail)
        for combo in combinations_with_replacement(range(m), m - 1)
    ]
    base = adjugates[0]
    all_prop = all(proportional(base, w) is not None for w in adjugates[1:])
    if report.equality != all_prop:
        raise InvariantViolationError(
            "adjugate family proportionality must match the m-fold equality case"
        )
    return MFoldEqualityVerdict(report, all_prop, len(adjugates))


def equality_corollary_full(classes: Sequence[TorusClass]) -> FullEqualityVerdict:
    """Certify (g1 ... gn)^n = prod_i g_i^n iff all classes proportional."""
    classes = list(classes)
    _check_classes(classes)
    _require_big(classes)
    mats = [c.mat for c in classes]
    t = MatTuple(mats)
    n = t.n
    lhs = _inum(mats) ** n
    rhs = 1
    for mat in mats:
        rhs *= _inum([mat] * n)
    ratios = [proportional(mats[0], mats[i]) for i in range(1, n)]
    cert = ratios[0] if all(r is not None for r in ratios) else None
    report = gap_report(lhs, rhs, cert, True, "full proportionality")
    return FullEqualityVerdict(report, cert is not None)
