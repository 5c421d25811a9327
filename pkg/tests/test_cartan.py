import random

import pytest
from hypothesis import given

from helpers import A2, AFFINE_A1, HYPERBOLIC, gcm, random_gcm, seeds
from titsfaces import cartan, golden

HEX = golden.HEXAGON


def test_coxeter_labels():
    assert gcm(A2).m[0][1] == 3
    assert gcm(AFFINE_A1).m[0][1] is None
    g = gcm(HEX)
    assert all(g.m[i][(i + 1) % 6] is None for i in range(6))


@pytest.mark.parametrize(
    "A, where",
    [
        (((2, 1), (-1, 2)), (0, 1)),
        (((2, -1), (0, 2)), (0, 1)),
        (((1, -1), (-1, 2)), (0, 0)),
        (((2, -1), (-2, 2), (0, 0)), (0, 0)),
        (((2, "-1/2"), (-1, 2)), (0, 1)),
    ],
)
def test_validate_rejects(A, where):
    with pytest.raises(cartan.NotGCM) as err:
        cartan.validate(A)
    assert (err.value.i, err.value.j) == where


def test_components_on_the_hexagon():
    g = gcm(HEX)
    assert cartan.components(g, ()) == []
    assert cartan.components(g, {0, 1, 3, 4}) == [frozenset({0, 1}), frozenset({3, 4})]
    assert cartan.components(g, g.indices) == [g.indices]


def test_hexagon_types_by_size():
    g = gcm(HEX)
    for J in cartan.subsets(6):
        for K in cartan.components(g, J):
            expected = {1: cartan.FIN, 2: cartan.AFF}.get(len(K), cartan.IND)
            assert cartan.component_type(g, K) == expected


def test_small_types():
    assert cartan.classify(gcm(A2)).components == ((frozenset({0, 1}), cartan.FIN),)
    assert cartan.component_type(gcm(AFFINE_A1), {0, 1}) == cartan.AFF
    assert cartan.component_type(gcm(HYPERBOLIC), {0, 1}) == cartan.IND


def test_perp_and_special():
    g = gcm(HEX)
    assert cartan.perp(g, ()) == g.indices
    assert cartan.perp(g, {0, 1}) == {3, 4}
    assert cartan.perp(g, g.indices) == frozenset()
    assert cartan.is_special(g, ())
    assert cartan.is_special(g, {0, 1, 3, 4})
    assert not cartan.is_special(g, {0})
    assert cartan.separated(g, {0, 1}, {3, 4})


def test_hyperbolic_classes():
    g = gcm(HEX)
    assert cartan.hyperbolic_class(g, {0, 1, 2}) == cartan.HYP0
    assert cartan.hyperbolic_class(g, g.indices) == cartan.NEITHER
    assert cartan.hyperbolic_class(gcm(HYPERBOLIC), {0, 1}) == cartan.HYP0


def test_affine_kernel_vector():
    assert cartan.affine_kernel_vector(gcm(AFFINE_A1), {0, 1}) == {0: 1, 1: 1}
    k = cartan.affine_kernel_vector(gcm(((2, -1), (-4, 2))), {0, 1})
    assert k == {0: 2, 1: 1}


@given(seeds)
def test_parts_partition_and_are_unions_of_components(seed):
    rng = random.Random(seed)
    g = random_gcm(rng, rng.randint(1, 6))
    J = frozenset(i for i in range(g.n) if rng.random() < 0.6)
    fin, aff, ind = cartan.finite_part(g, J), cartan.affine_part(g, J), cartan.indefinite_part(g, J)
    assert fin | aff | ind == J
    assert not (fin & aff or fin & ind or aff & ind)
    assert cartan.infinite_part(g, J) == aff | ind
    assert cartan.is_finite_type(g, fin)
    # every finite component has a finite Coxeter group: all pair labels are finite
    for K in cartan.components(g, fin):
        assert all(g.m[i][j] is not None for i in K for j in K if i != j)
