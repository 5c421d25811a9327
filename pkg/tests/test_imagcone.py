import random

import pytest
from hypothesis import given, settings

from helpers import A2, AFFINE_A1, gcm, hexagon, seeds
from titsfaces import exactla as ex
from titsfaces import golden
from titsfaces import realization as rz
from titsfaces.imagcone import (
    ImaginaryCone,
    anti_isomorphism_check,
    dual_facet_type,
    dual_imaginary,
    dual_imaginary_direct,
    k_cone,
    k_cone_direct,
    k_theta,
)
from titsfaces.titscone import TitsCone

_cones = {}


def imag(name) -> ImaginaryCone:
    if name not in _cones:
        _cones[name] = ImaginaryCone(hexagon(name))
    return _cones[name]


def affine_base():
    return rz.build(gcm(AFFINE_A1), (), golden.AFFINE_A1_ROOT_RELATION)


def test_affine_imaginary_cone_is_a_ray():
    rb = affine_base()
    Z = ImaginaryCone(rb)
    delta = ex.add(rb.hvecs[0], rb.hvecs[1])
    assert Z.K == ex.PolyCone.from_generators(rb.dim, [delta])
    assert Z.membership_Z(delta, 0) is True
    s1 = Z.W.simple(0)
    assert Z.W.act_vector(s1, delta) == delta
    # h_1 is a real coroot, outside Z; a bounded search can only report "not found"
    assert Z.membership_Z(rb.hvecs[0], 4) is None
    whole = Z.whole()
    assert Z.hull(whole) == ex.Subspace.span([delta], rb.dim)


def test_affine_dual_imaginary_cone():
    rb = affine_base()
    Kv = dual_imaginary(rb)
    assert Kv == dual_imaginary_direct(rb)
    for v in list(Kv.generators) + list(Kv.lineality):
        assert all(x <= 0 for x in rb.chamber_values(v))


def test_finite_type_is_trivial():
    rb = rz.free(gcm(A2), 1)
    Z = ImaginaryCone(rb)
    assert Z.K.dim == 0
    assert dual_imaginary(rb).dim == 0
    assert Z.membership_Z(rb.hvecs[0], 2) is False
    assert Z.smallest() == Z.whole()


@pytest.mark.parametrize("name", "abcd")
def test_both_routes_for_k(name):
    rb = hexagon(name)
    assert k_cone(rb) == k_cone_direct(rb)
    assert dual_imaginary(rb) == dual_imaginary_direct(rb)


@pytest.mark.parametrize("name", "abcd")
def test_structural_checks(name):
    Z = imag(name)
    assert Z.check_special_nonempty() == []
    assert Z.check_hulls() == []
    assert Z.check_free_facets() == []


def test_affine_pair_is_kernel_ray():
    rb = hexagon("a")
    kt = k_theta(rb, {0, 1})
    assert kt.nonempty
    ray = ex.primitive(ex.add(rb.hvecs[0], rb.hvecs[1]))
    assert list(kt.cone.generators) == [ray]
    assert dual_facet_type(rb, ray) == {0, 1, 3, 4}


def test_smallest_and_whole():
    Z = imag("b")
    assert Z.dim(Z.smallest()) == 0
    assert Z.whole().theta == frozenset(range(6))
    for f in Z.handles(1):
        assert Z.leq(Z.smallest(), f)
        assert Z.leq(f, Z.whole())


def test_meet_join_examples():
    Z = imag("b")
    a, b = Z.face({0, 1}), Z.face({3, 4})
    assert Z.join(a, b) == Z.face({0, 1, 3, 4})
    assert Z.meet(a, b) == Z.smallest()


@pytest.mark.parametrize("name", "bd")
def test_exposure_section_semiduality(name):
    Z = imag(name)
    assert Z.check_exposed(1) == []
    assert Z.check_coroot_section(1) == []
    assert Z.check_semiduality(1) == []


def test_anti_isomorphism_finite_and_case_d():
    rb = rz.free(gcm(A2))
    T = TitsCone(rb)
    assert anti_isomorphism_check(T, ImaginaryCone(rb, T), 3) == []
    Z = imag("d")
    assert anti_isomorphism_check(Z.tits, Z, 2) == []


@given(seeds)
@settings(max_examples=30)
def test_relative_interior_points_classify(seed):
    rng = random.Random(seed)
    Z = imag(rng.choice("abcd"))
    theta = rng.choice(Z.special)
    sigma = Z.W.from_word([rng.randrange(6) for _ in range(rng.randint(0, 4))])
    f = Z.face(theta, sigma)
    p = Z.ri_point(f)
    assert Z.hull(f).contains(p)
    assert Z.membership_Z(p, sigma.length) is True
    # moving back to the coroot cone recovers a point of K
    local = Z.W.act_vector(Z.W.inv(f.sigma), p)
    assert Z.K.contains(local)


@pytest.mark.parametrize("name", "abcd")
def test_pointwise_stabilizer_fixes_hull(name):
    Z = imag(name)
    for theta in Z.special:
        f = Z.face(theta)
        _, fix = Z.pointwise_stabilizer(f)
        for v in Z.hull_generators(theta):
            for i in fix:
                assert Z.W.act_vector(Z.W.simple(i), v) == v
