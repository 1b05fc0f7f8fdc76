"""Flat-torus model: intersection numbers of constant classes, the
Kahler-cone AF gap, Khovanskii-Teissier sequences, and the equality
theorems certified through mixed adjugates."""

import math
import random
from fractions import Fraction

import pytest

from afkit.errors import DimensionMismatchError, HypothesisError, NotBigError
from afkit.ineqcheck import af_gap_discriminant
from afkit.matrixcore import proportional
from afkit.mixdisc import MatTuple, mixed_adjugate, mixed_discriminant
from afkit.toruskahler import (
    FullEqualityVerdict,
    MFoldEqualityVerdict,
    PairEqualityVerdict,
    TorusClass,
    af_gap_torus,
    equality_corollary_full,
    equality_theorem_m,
    equality_theorem_pair,
    intersection_number,
    kt_sequence,
)

from support import diag, gen, identity, rand_pd, rand_psd

F = Fraction


def tc(mat):
    return TorusClass(mat)


def rand_kahler(rng, n):
    return tc(rand_pd(rng, n))


def test_class_flags():
    k = tc(diag(2, 3))
    assert k.nef and k.big and k.kahler
    s = tc(diag(1, 0))
    assert s.nef and not s.big and not s.kahler
    ind = tc(diag(1, -1))
    assert not ind.nef and not ind.kahler
    with pytest.raises(TypeError):
        tc(gen([[1, 0], [0, 1]]))


def test_intersection_frozen():
    one = tc(identity(2))
    assert intersection_number([one, one]) == 8
    zero = tc(diag(0, 0))
    assert intersection_number([one, zero]) == 0


def test_intersection_is_scaled_discriminant():
    rng = random.Random(293)
    for n in (2, 3):
        mats = [rand_pd(rng, n) for _ in range(n)]
        d = mixed_discriminant(MatTuple(mats)).re
        got = intersection_number([tc(m) for m in mats])
        assert got == math.factorial(n) * 2 ** n * d


def test_intersection_validation():
    with pytest.raises(TypeError):
        intersection_number([identity(2), identity(2)])
    with pytest.raises(DimensionMismatchError):
        intersection_number([tc(identity(2))])


def test_af_gap_torus_frozen():
    r = af_gap_torus(tc(diag(2, 1)), tc(diag(1, 2)))
    assert r.lhs == 400
    assert r.rhs == 256
    assert r.gap == 144
    assert not r.equality
    assert r.characterized


def test_af_gap_torus_proportional_certificate():
    rng = random.Random(307)
    c = rand_kahler(rng, 3)
    rest = [rand_kahler(rng, 3)]
    alpha = tc(c.mat.scale(F(5, 2)))
    r = af_gap_torus(alpha, c, rest)
    assert r.equality
    assert r.certificate == F(5, 2)


def test_af_gap_torus_scales_discriminant_gap():
    rng = random.Random(311)
    n = 3
    c = rand_kahler(rng, n)
    rest = [rand_kahler(rng, n)]
    alpha = tc(rand_pd(rng, n))
    torus = af_gap_torus(alpha, c, rest)
    disc = af_gap_discriminant(c.mat, alpha.mat, [x.mat for x in rest])
    factor = (math.factorial(n) * 2 ** n) ** 2
    assert torus.gap == factor * disc.gap


def test_af_gap_torus_requires_kahler_reference():
    with pytest.raises(HypothesisError):
        af_gap_torus(tc(identity(2)), tc(diag(1, 0)))


def test_kt_frozen_sequence():
    seq = kt_sequence(tc(diag(1, 2)), tc(identity(2)))
    assert seq == [8, 12, 16]


def test_kt_equal_classes_are_geometric():
    g = tc(diag(2, 1, 1))
    seq = kt_sequence(g, g)
    assert len(seq) == 4
    assert all(x == seq[0] for x in seq)


def test_kt_log_concavity_sweep():
    rng = random.Random(313)
    for _ in range(25):
        n = rng.choice((2, 3, 4))
        seq = kt_sequence(tc(rand_psd(rng, n)), tc(rand_psd(rng, n)))
        for m in range(1, n):
            assert seq[m] ** 2 >= seq[m - 1] * seq[m + 1]


def test_kt_requires_nef():
    with pytest.raises(HypothesisError):
        kt_sequence(tc(diag(1, -1)), tc(identity(2)))


def test_equality_pair_proportional_classes():
    rng = random.Random(317)
    g1 = rand_kahler(rng, 3)
    g2 = tc(g1.mat.scale(3))
    rest = [rand_kahler(rng, 3)]
    v = equality_theorem_pair(g1, g2, rest)
    assert isinstance(v, PairEqualityVerdict)
    assert v.report.equality
    assert v.matrices_proportional and v.matrix_ratio == 3
    assert v.adjugates_proportional and v.adjugate_ratio == 3


def test_equality_pair_diagonal_cases():
    eq = equality_theorem_pair(tc(diag(1, 2)), tc(diag(2, 4)))
    assert eq.report.equality and eq.matrix_ratio == 2
    strict = equality_theorem_pair(tc(diag(1, 2)), tc(diag(2, 1)))
    assert not strict.report.equality
    assert strict.report.gap == 144
    assert not strict.adjugates_proportional
    assert not strict.matrices_proportional


def test_equality_pair_generic_strict():
    rng = random.Random(331)
    for _ in range(10):
        g1 = rand_kahler(rng, 3)
        g2 = rand_kahler(rng, 3)
        if proportional(g1.mat, g2.mat) is not None:
            continue
        rest = [rand_kahler(rng, 3)]
        v = equality_theorem_pair(g1, g2, rest)
        assert v.report.gap > 0
        assert not v.adjugates_proportional


def test_equality_pair_adjugates_match_direct_computation():
    rng = random.Random(337)
    g1 = rand_kahler(rng, 3)
    g2 = rand_kahler(rng, 3)
    rest = [rand_kahler(rng, 3)]
    v = equality_theorem_pair(g1, g2, rest)
    w1 = mixed_adjugate([g1.mat] + [x.mat for x in rest])
    w2 = mixed_adjugate([g2.mat] + [x.mat for x in rest])
    assert v.adjugates_proportional == (proportional(w1, w2) is not None)


def test_equality_pair_rejects_non_big():
    with pytest.raises(NotBigError):
        equality_theorem_pair(tc(diag(1, 0)), tc(identity(2)))
    with pytest.raises(NotBigError):
        equality_theorem_pair(tc(identity(2)), tc(diag(1, -1)))


def test_equality_m_fold_proportional_family():
    rng = random.Random(347)
    base = rand_pd(rng, 3)
    classes = [tc(base.scale(F(i + 1, 2))) for i in range(3)]
    v = equality_theorem_m(classes, 3)
    assert isinstance(v, MFoldEqualityVerdict)
    assert v.report.equality
    assert v.adjugates_proportional
    # multisets of size 2 drawn from 3 classes
    assert v.adjugate_count == 6


def test_equality_m_fold_reduces_to_pair():
    rng = random.Random(349)
    classes = [rand_kahler(rng, 3) for _ in range(3)]
    v2 = equality_theorem_m(classes, 2)
    pair = equality_theorem_pair(classes[0], classes[1], classes[2:])
    assert v2.report.lhs == pair.report.lhs
    assert v2.report.rhs == pair.report.rhs
    assert v2.adjugates_proportional == pair.adjugates_proportional


def test_equality_m_fold_generic_strict():
    rng = random.Random(353)
    classes = [rand_kahler(rng, 4) for _ in range(4)]
    for m in (2, 3, 4):
        v = equality_theorem_m(classes, m)
        assert v.report.gap > 0
        assert not v.adjugates_proportional


def test_equality_m_fold_validation():
    rng = random.Random(359)
    classes = [rand_kahler(rng, 3) for _ in range(3)]
    with pytest.raises(ValueError):
        equality_theorem_m(classes, 1)
    with pytest.raises(NotBigError):
        equality_theorem_m([tc(diag(1, 0, 0))] + classes[1:], 2)


def test_equality_full_corollary():
    rng = random.Random(367)
    base = rand_pd(rng, 3)
    scaled = [tc(base.scale(i + 1)) for i in range(3)]
    v = equality_corollary_full(scaled)
    assert isinstance(v, FullEqualityVerdict)
    assert v.report.equality and v.matrices_proportional

    generic = [rand_kahler(rng, 3) for _ in range(3)]
    w = equality_corollary_full(generic)
    assert w.report.gap > 0
    assert not w.matrices_proportional


def test_adjugate_linearity():
    rng = random.Random(373)
    x = rand_pd(rng, 3)
    y = rand_pd(rng, 3)
    rest = [rand_pd(rng, 3)]
    a, b = F(3, 2), F(-2, 5)
    combo = mixed_adjugate([x.scale(a) + y.scale(b)] + rest)
    split = mixed_adjugate([x] + rest).scale(a) + mixed_adjugate([y] + rest).scale(b)
    assert combo == split
