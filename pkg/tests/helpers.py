"""Shared systems and random generators for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache

from hypothesis import strategies as st

from titsfaces import cartan, golden
from titsfaces import exactla as ex
from titsfaces import realization as rz

A2 = ((2, -1), (-1, 2))
B2 = ((2, -2), (-1, 2))
G2 = ((2, -1), (-3, 2))
A3 = ((2, -1, 0), (-1, 2, -1), (0, -1, 2))
A1xA1 = ((2, 0), (0, 2))
AFFINE_A1 = golden.AFFINE_A1
HYPERBOLIC = ((2, -3), (-2, 2))

FINITE = {"A2": A2, "B2": B2, "G2": G2, "A3": A3, "A1xA1": A1xA1, "A1": ((2,),)}


@lru_cache(maxsize=None)
def hexagon(name: str) -> rz.RootBase:
    return golden.BY_NAME[name].root_base()


@lru_cache(maxsize=None)
def gcm(A) -> cartan.GCM:
    return cartan.validate(A)


def F(*xs) -> tuple:
    return tuple(Fraction(x) for x in xs)


# -- random systems ----------------------------------------------------------------

_PAIRS = [(0, 0)] * 3 + [(-1, -1)] * 3 + [(-1, -2), (-2, -1), (-1, -3), (-3, -1), (-2, -2), (-1, -4), (-2, -3)]
_AFFINE_BLOCKS = [
    ((2, -2), (-2, 2)),
    ((2, -1), (-4, 2)),
    ((2, -1, -1), (-1, 2, -1), (-1, -1, 2)),
    ((2, -1, 0), (-2, 2, -2), (0, -1, 2)),
    ((2, -1, 0, -1), (-1, 2, -1, 0), (0, -1, 2, -1), (-1, 0, -1, 2)),
]
_SINGULAR_BLOCKS = _AFFINE_BLOCKS + [golden.HEXAGON, ((2, -2), (-2, 2))]


def random_gcm(rng: random.Random, n: int) -> cartan.GCM:
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            A[i][j], A[j][i] = rng.choice(_PAIRS)
    return cartan.validate(A)


def random_singular_gcm(rng: random.Random, max_n: int = 7) -> cartan.GCM:
    """Direct sum of affine blocks and random leftovers, indices shuffled.

    Two or more affine blocks (or the hexagon block) give coroot relations
    of mixed sign, so the relation space ``L_h`` can be nonzero.
    """
    blocks = []
    size = 0
    while True:
        b = rng.choice(_SINGULAR_BLOCKS)
        if size + len(b) > max_n:
            break
        blocks.append(b)
        size += len(b)
        if len(blocks) >= 2 and rng.random() < 0.3:
            break
    extra = rng.randint(0, min(1, max_n - size))
    n = size + extra
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    off = 0
    for b in blocks:
        for i in range(len(b)):
            for j in range(len(b)):
                A[off + i][off + j] = b[i][j]
        off += len(b)
    # leftovers may attach among themselves only, keeping the affine kernels intact
    for i in range(size, n):
        for j in range(i + 1, n):
            A[i][j], A[j][i] = rng.choice(_PAIRS)
    perm = list(range(n))
    rng.shuffle(perm)
    return cartan.validate([[A[perm[i]][perm[j]] for j in range(n)] for i in range(n)])


def random_relation_space(rng: random.Random, g: cartan.GCM, max_dim: int = 3) -> list:
    """Random subspace of ker(A^T) meeting the nonnegative orthant only in 0."""
    n = g.n
    basis = ex.kernel_basis(ex.transpose(g.A), n)
    for _ in range(30):
        k = rng.randint(1, min(max_dim, len(basis))) if basis else 0
        vecs = [ex.lincomb([Fraction(rng.randint(-3, 3)) for _ in basis], basis, n) for _ in range(k)]
        vecs = [v for v in vecs if not ex.is_zero(v)]
        try:
            rz.build(g, vecs)
        except rz.RootBaseViolation:
            continue
        return vecs
    return []


def random_root_base(seed: int, max_n: int = 7) -> rz.RootBase:
    rng = random.Random(seed)
    g = random_singular_gcm(rng, max_n)
    return rz.build(g, random_relation_space(rng, g))


def random_characteristic_system(seed: int, max_n: int = 6):
    rng = random.Random(seed)
    g = random_singular_gcm(rng, max_n) if rng.random() < 0.6 else random_gcm(rng, rng.randint(1, max_n))
    return g, rz.random_characteristic(g, rng)


seeds = st.integers(min_value=0, max_value=10**6)
