import random
from collections import Counter

import pytest
from hypothesis import given

from helpers import A2, A3, AFFINE_A1, B2, G2, gcm, seeds
from titsfaces import exactla as ex
from titsfaces import golden
from titsfaces import realization as rz
from titsfaces.coxeter import LEFT, RIGHT, CoxeterGroup


def group(A, **kw) -> CoxeterGroup:
    return CoxeterGroup(rz.free(gcm(A), **kw))


def poincare(degrees):
    """Coefficients of prod (1 + q + ... + q^(d-1))."""
    coeffs = [1]
    for d in degrees:
        out = [0] * (len(coeffs) + d - 1)
        for i, c in enumerate(coeffs):
            for k in range(d):
                out[i + k] += c
        coeffs = out
    return coeffs


@pytest.mark.parametrize(
    "A, degrees", [(A2, (2, 3)), (B2, (2, 4)), (G2, (2, 6)), (A3, (2, 3, 4)), (((2,),), (2,))]
)
def test_finite_group_length_distribution(A, degrees):
    W = group(A)
    counts = Counter(w.length for w in W.ball())
    assert [counts[k] for k in range(len(counts))] == poincare(degrees)


def test_free_product_growth():
    # every m_ij is infinite, so reduced words are exactly the words without repeated letters
    W = group(((2, -2, -2), (-2, 2, -2), (-2, -2, 2)))
    counts = Counter(w.length for w in W.ball(None, 5))
    assert [counts[k] for k in range(6)] == [1, 3, 6, 12, 24, 48]
    Waff = group(AFFINE_A1)
    assert Counter(w.length for w in Waff.ball(None, 6)) == Counter({0: 1, 1: 2, 2: 2, 3: 2, 4: 2, 5: 2, 6: 2})


def test_words_and_braid_relation():
    W = group(A2)
    assert W.from_word([]) == W.identity
    assert W.from_word([0, 0]) == W.identity
    assert W.from_word([0, 1, 0]) == W.from_word([1, 0, 1])
    assert W.from_word([0, 1, 0]).mat == W.from_word([1, 0, 1]).mat


def test_descents():
    W = group(A2)
    assert W.length_descents(W.identity) == (0, frozenset(), frozenset())
    assert W.length_descents(W.simple(1)) == (1, frozenset({1}), frozenset({1}))
    Waff = group(AFFINE_A1)
    w = Waff.from_word([0, 1, 0])
    assert w.length == 3 and Waff.right_descents(w) == {0}


def test_reduced_support():
    W = group(A2)
    assert W.red_support(W.identity) == frozenset()
    assert W.red_support(W.from_word([0, 1, 0])) == {0, 1}


def reduced_words(W, w):
    if w.length == 0:
        return [[]]
    out = []
    for k in sorted(W.right_descents(w)):
        for word in reduced_words(W, W.rmul_simple(w, k)):
            out.append(word + [k])
    return out


@given(seeds)
def test_support_is_independent_of_reduced_word(seed):
    rng = random.Random(seed)
    W = group(golden.HEXAGON) if rng.random() < 0.5 else group(A3)
    w = W.from_word([rng.randrange(W.n) for _ in range(rng.randint(0, 8))])
    words = reduced_words(W, w)
    assert all(len(x) == w.length for x in words)
    assert all(W.from_word(x) == w for x in words[:5])
    assert {frozenset(x) for x in words} == {W.red_support(w)}


def test_coset_examples():
    W = group(A2)
    s1, s2 = W.simple(0), W.simple(1)
    assert W.min_coset_rep(s1, {0}, LEFT) == W.identity
    assert W.min_double_rep(W.mul(s1, s2), {0}, ()) == s2


@given(seeds)
def test_coset_and_double_coset_decompositions(seed):
    rng = random.Random(seed)
    W = group(golden.HEXAGON)
    a = W.from_word([rng.randrange(6) for _ in range(rng.randint(0, 8))])
    J = frozenset(i for i in range(6) if rng.random() < 0.4)
    K = frozenset(i for i in range(6) if rng.random() < 0.4)
    u, x = W.coset_decompose(a, J, LEFT)
    assert W.mul(u, x) == a and W.in_parabolic(u, J) and not W.left_descents(x) & J
    x, u = W.coset_decompose(a, J, RIGHT)[::-1]
    assert W.mul(x, u) == a and not W.right_descents(x) & J
    u, x, v = W.double_decompose(a, J, K)
    assert W.mul(W.mul(u, x), v) == a
    assert W.min_double_rep(x, J, K) == x
    assert x.length <= a.length


def test_enumeration_small_cases():
    W = group(A2)
    assert W.enum_parabolic(()) == [W.identity]
    assert set(W.enum_parabolic({0})) == {W.identity, W.simple(0)}
    assert len(W.enum_parabolic({0, 1})) == 6


def test_mid_projector():
    rb = rz.free(gcm(A3), 1)
    W = CoxeterGroup(rb)
    assert W.mid_projector(()) == ex.identity(rb.dim)
    for J in ({0}, {0, 2}, {0, 1}, {0, 1, 2}):
        M = W.mid_projector(J)
        assert ex.matmul(M, M) == M
    # a single reflection: projection onto the wall along the root direction
    M = W.mid_projector({0})
    for lam in ([1, 0, 0, 2], [3, -1, 2, 0]):
        mu = ex.vecmat(lam, M)
        assert ex.dot(mu, rb.hvecs[0]) == 0
        diff = ex.sub(ex.as_vec(lam), mu)
        assert ex.Subspace.span([rb.avecs[0]], rb.dim).contains(diff)


@pytest.mark.parametrize("A", [A2, B2, A3])
def test_parabolic_intersection_matches_enumeration(A):
    W = group(A)
    n = W.n
    subsets = [frozenset(i for i in range(n) if m >> i & 1) for m in range(1 << n)]
    for sigma in W.ball():
        inv = W.inv(sigma)
        for J1 in subsets:
            P1 = set(W.enum_parabolic(J1))
            for J2 in subsets:
                conj = {W.mul(W.mul(sigma, w), inv) for w in W.enum_parabolic(J2)}
                if W.min_double_rep(sigma, J1, J2) == sigma:
                    common = W.cross_parabolic(J1, sigma, J2)
                    assert common == W.cross_parabolic_by_reflections(J1, sigma, J2)
                    assert P1 & conj == set(W.enum_parabolic(common))


def test_trivial_intersections():
    W = group(A3)
    s = W.from_word([0, 1])
    assert W.cross_parabolic({0, 1}, W.identity, {1, 2}) == {1}
    assert W.cross_parabolic({0, 1, 2}, s, ()) == frozenset()
