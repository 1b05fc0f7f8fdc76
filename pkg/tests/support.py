"""Small builders shared across the test suite.

Unlike oracles.py, these are allowed to use the public package API; they
only construct inputs, never compute expected answers.
"""

from fractions import Fraction

from afkit.matrixcore import GenMat, HermMat
from afkit.rationals import GaussRat


def gr(re, im=0):
    return GaussRat(re, im)


def herm(rows):
    return HermMat(rows)


def gen(rows):
    return GenMat(rows)


def diag(*vals):
    n = len(vals)
    return HermMat([[vals[i] if i == j else 0 for j in range(n)] for i in range(n)])


def identity(n):
    return diag(*([1] * n))


def rand_gauss_mat(rng, n, bound=3):
    """Gaussian-integer matrix with entries in [-bound, bound]^2."""
    return GenMat(
        [[GaussRat(rng.randint(-bound, bound), rng.randint(-bound, bound))
          for _ in range(n)] for _ in range(n)]
    )


def rand_gen(rng, n, bound=5, denom=4):
    """General matrix with rational complex entries."""
    def part():
        return Fraction(rng.randint(-bound, bound), rng.randint(1, denom))

    return GenMat([[GaussRat(part(), part()) for _ in range(n)] for _ in range(n)])


def rand_herm(rng, n, bound=4, denom=1):
    """Random Hermitian matrix, not necessarily definite."""
    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = GaussRat(Fraction(rng.randint(-bound, bound), denom))
        for j in range(i + 1, n):
            z = GaussRat(
                Fraction(rng.randint(-bound, bound), denom),
                Fraction(rng.randint(-bound, bound), denom),
            )
            rows[i][j] = z
            rows[j][i] = z.conjugate()
    return HermMat(rows)


def rand_psd(rng, n, bound=3):
    """Gram matrix G G*, positive semi-definite by construction."""
    return HermMat.from_gram(rand_gauss_mat(rng, n, bound))


def rand_pd(rng, n, bound=3):
    """Gram matrix plus the identity, positive definite by construction."""
    return rand_psd(rng, n, bound) + identity(n)


def as_pairs(mat):
    """Convert a matrix into the (re, im) Fraction grid the oracles use."""
    return [[(e.re, e.im) for e in row] for row in mat.entries]
