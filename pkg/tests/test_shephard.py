"""Determinantal layer: Gram tables of pairings, Shephard matrices,
PSD certification, the unconditional determinant identity, and the
r = 2 inequality."""

import math
import random
from fractions import Fraction

import pytest

from afkit.errors import DimensionMismatchError, HypothesisError
from afkit.mixdisc import MatTuple, mixed_discriminant
from afkit.shephard import (
    GramTable,
    ShephardMatrix,
    check_psd_shephard,
    det_identity_check,
    gram_from_discriminants,
    gram_from_torus,
    r2_inequality,
    shephard_matrix,
)

from oracles import real_det
from support import diag, identity, rand_pd, rand_psd

F = Fraction


def rand_table(rng, r, bound=9):
    d = [[F(0)] * (r + 1) for _ in range(r + 1)]
    for i in range(r + 1):
        for j in range(i, r + 1):
            d[i][j] = d[j][i] = F(rng.randint(-bound, bound), rng.randint(1, 3))
    return GramTable(d)


def adapter_table(rng, r, n):
    classes = [rand_pd(rng, n) for _ in range(r + 1)]
    rest = [rand_pd(rng, n) for _ in range(n - 2)]
    return gram_from_discriminants(classes, rest), classes, rest


def test_gram_table_validation():
    g = GramTable([[1, 2], [2, 5]])
    assert g.r == 1
    assert g.d[0][1] == 2
    with pytest.raises(ValueError):
        GramTable([[1, 2], [3, 5]])
    with pytest.raises(DimensionMismatchError):
        GramTable([[1, 2], [2, 5, 7]])
    with pytest.raises(ValueError):
        GramTable([[1]])


def test_shephard_matrix_frozen_r1():
    s = shephard_matrix(GramTable([[2, 3], [3, 5]]))
    assert isinstance(s, ShephardMatrix)
    assert s.r == 1
    assert s.entries == ((F(-1),),)


def test_shephard_matrix_constant_table_is_zero():
    d = [[F(7)] * 3 for _ in range(3)]
    s = shephard_matrix(GramTable(d))
    assert all(x == 0 for row in s.entries for x in row)


def test_shephard_entries_formula():
    rng = random.Random(229)
    g = rand_table(rng, 3)
    s = shephard_matrix(g)
    for i in range(3):
        for j in range(3):
            want = g.d[0][i + 1] * g.d[0][j + 1] - g.d[0][0] * g.d[i + 1][j + 1]
            assert s.entries[i][j] == want


def test_check_psd_on_adapter_tables():
    rng = random.Random(233)
    for r in (1, 2, 3):
        for n in (2, 3):
            for _ in range(10):
                g, _, _ = adapter_table(rng, r, n)
                ok, witness = check_psd_shephard(g)
                assert ok and witness is None


def test_check_psd_witness_frozen():
    ok, witness = check_psd_shephard(GramTable([[100, 3], [3, 1]]))
    assert not ok
    assert witness == (1, F(-91))


def test_det_identity_r1():
    g = GramTable([[2, 3], [3, 5]])
    assert det_identity_check(g)


def test_det_identity_random_signed_tables():
    rng = random.Random(239)
    for _ in range(100):
        r = rng.choice((1, 2, 3))
        assert det_identity_check(rand_table(rng, r))


def test_det_identity_zero_corner():
    rng = random.Random(241)
    for r in (1, 2, 3):
        g = rand_table(rng, r)
        d = [list(row) for row in g.d]
        d[0][0] = F(0)
        assert det_identity_check(GramTable(d))


def test_det_identity_matches_oracle_determinants():
    rng = random.Random(251)
    g = rand_table(rng, 2)
    s = shephard_matrix(g)
    lhs = real_det([list(row) for row in s.entries])
    rhs = g.d[0][0] * real_det([list(row) for row in g.d])
    assert det_identity_check(g) == (lhs == rhs)


def test_zero_padding_preserves_verdicts():
    rng = random.Random(257)
    g, _, _ = adapter_table(rng, 2, 3)
    padded = [list(row) + [F(0)] for row in g.d] + [[F(0)] * (g.r + 2)]
    gp = GramTable(padded)
    ok, _ = check_psd_shephard(gp)
    assert ok
    assert det_identity_check(gp)


def test_r2_frozen_equal_classes():
    rng = random.Random(263)
    a = rand_pd(rng, 3)
    c = rand_pd(rng, 3)
    g = gram_from_discriminants([a, c, c], [rand_pd(rng, 3)])
    r = r2_inequality(g)
    assert r.equality and r.gap == 0


def test_r2_matches_shephard_determinant_and_propagation():
    rng = random.Random(269)
    for _ in range(20):
        g, classes, rest = adapter_table(rng, 2, 3)
        rep = r2_inequality(g)
        s = shephard_matrix(g)
        det_s = s.entries[0][0] * s.entries[1][1] - s.entries[0][1] * s.entries[1][0]
        assert rep.gap == det_s
        assert rep.gap >= 0
    # equality in the first diagonal entry propagates along the row
    a = rand_pd(rng, 3)
    g = gram_from_discriminants([a, a.scale(3), rand_pd(rng, 3)], [rand_pd(rng, 3)])
    d = g.d
    assert d[0][1] ** 2 == d[0][0] * d[1][1]
    assert d[0][1] * d[0][2] == d[0][0] * d[1][2]


def test_r2_requires_rank_two():
    with pytest.raises(ValueError):
        r2_inequality(GramTable([[2, 3], [3, 5]]))


def test_r2_rejects_non_af_table():
    bad = GramTable([[1, 0, 0], [0, -1, 0], [0, 0, 1]])
    with pytest.raises(HypothesisError):
        r2_inequality(bad)


def test_gram_from_discriminants_entries():
    rng = random.Random(271)
    classes = [rand_pd(rng, 3) for _ in range(2)]
    rest = [rand_pd(rng, 3)]
    g = gram_from_discriminants(classes, rest)
    assert g.r == 1
    for i in range(2):
        for j in range(2):
            want = mixed_discriminant(MatTuple([classes[i], classes[j]] + rest)).re
            assert g.d[i][j] == want


def test_gram_from_discriminants_warns_on_indefinite():
    with pytest.warns(UserWarning):
        g = gram_from_discriminants([diag(1, -1), identity(2)], [])
    assert g.r == 1


def test_gram_from_torus_factor_and_frozen():
    g = gram_from_torus([identity(2), identity(2)], [])
    assert all(x == 8 for row in g.d for x in row)

    rng = random.Random(277)
    classes = [rand_pd(rng, 3) for _ in range(3)]
    rest = [rand_pd(rng, 3)]
    base = gram_from_discriminants(classes, rest)
    torus = gram_from_torus(classes, rest)
    factor = math.factorial(3) * 2 ** 3
    for bi, ti in zip(base.d, torus.d):
        for b, t in zip(bi, ti):
            assert t == factor * b


def test_verdicts_invariant_under_scaling():
    rng = random.Random(281)
    g, _, _ = adapter_table(rng, 2, 3)
    scaled = GramTable([[4 * x for x in row] for row in g.d])
    assert check_psd_shephard(g)[0] == check_psd_shephard(scaled)[0]
    assert det_identity_check(scaled)
    assert r2_inequality(g).equality == r2_inequality(scaled).equality


def test_psd_adapter_entries_nonnegative():
    rng = random.Random(283)
    classes = [rand_psd(rng, 3) for _ in range(3)]
    g = gram_from_discriminants(classes, [rand_psd(rng, 3)])
    assert all(x >= 0 for row in g.d for x in row)
