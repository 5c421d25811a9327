import itertools
import random

import pytest
from hypothesis import given, settings

from helpers import A2, gcm, hexagon, seeds
from titsfaces import cartan
from titsfaces import exactla as ex
from titsfaces import realization as rz
from titsfaces.subcone import (
    BuiltinTits,
    FinitePolyhedral,
    InfiniteGroup,
    NotAChain,
    NotInChamber,
    NotInCrossSection,
    build_Y,
)
from titsfaces.titscone import TitsCone

_cache = {}


def hexagonal() -> FinitePolyhedral:
    if "hex" not in _cache:
        _cache["hex"] = FinitePolyhedral(rz.free(gcm(A2), 1), [(1, 1, 1)])
    return _cache["hex"]


def builtin(name) -> BuiltinTits:
    if name not in _cache:
        _cache[name] = BuiltinTits(hexagon(name))
    return _cache[name]


def test_hexagonal_cone_shape():
    Y = hexagonal()
    assert len(Y.elements) == 6
    assert Y.num_faces == 14
    assert sorted(Y.lattice.dims).count(1) == 6
    ups = Y.upsilon()
    assert len(ups) == 5
    assert sorted(Y.dim_of(R) for R in ups) == [0, 1, 2, 2, 3]
    assert Y.is_faithful()


def test_hexagonal_type_maps():
    Y = hexagonal()
    top, bottom = Y.top(), Y.bottom()
    assert Y.types(top).lower == frozenset() and Y.types(top).upper == {0, 1}
    assert Y.types(bottom).lower == {0, 1}
    (edge,) = [R for R in Y.upsilon() if Y.dim_of(R) == 1]
    assert Y.type_maps(edge) == (frozenset(), frozenset(), frozenset())
    with pytest.raises(NotInCrossSection):
        Y.types(next(f for f in range(Y.num_faces) if f not in Y.upsilon()))


def test_zero_and_whole_space():
    rb = rz.free(gcm(A2), 1)
    Y0 = FinitePolyhedral(rb, [])
    assert Y0.num_faces == 1 and len(Y0.upsilon()) == 1
    flat = FinitePolyhedral(rz.free(gcm(A2)), [(1, 1)])
    assert flat.num_faces == 1
    # the whole space is stable under every reflection but fixed pointwise by none
    t = flat.types(flat.top())
    assert t.lower == frozenset() and t.upper == {0, 1}


def test_construction_errors():
    with pytest.raises(InfiniteGroup):
        FinitePolyhedral(hexagon("a"), [])
    with pytest.raises(NotInChamber):
        FinitePolyhedral(rz.free(gcm(A2), 1), [(-1, 1, 0)])
    with pytest.raises(ValueError):
        build_Y(rz.free(gcm(A2)), "spherical")


def test_hexagonal_chains():
    Y = hexagonal()
    chains = [c for c in Y.saturated_chains() if Y.dim_of(c[0]) == 0 and Y.dim_of(c[-1]) == 3]
    assert len(chains) == 2 and all(len(c) == 4 for c in chains)
    assert Y.check_chain_lengths() == []
    assert Y.blocks().keys() == {frozenset()}


def test_hexagonal_chain_normalization_is_unique():
    Y = hexagonal()
    W = Y.W
    bottom, top = Y.bottom(), Y.top()
    (edge,) = [R for R in Y.upsilon() if Y.dim_of(R) == 1]
    for w in Y.elements:
        chain = [Y.face(bottom, w), Y.face(edge, w), Y.face(top, w)]
        sigma, S = Y.chain_normalize(chain)
        assert S == [bottom, edge, top]
        hits = [u for u in Y.elements if all(Y.face(R, u) == f for R, f in zip(S, chain))]
        assert hits and all(Y.face_index(Y.face(edge, u)) == Y.face_index(Y.face(edge, sigma)) for u in hits)
    with pytest.raises(NotAChain):
        Y.chain_normalize([Y.face(top), Y.face(bottom)])
    assert W.identity in Y.elements


def test_renner_unit_and_idempotents():
    Y = hexagonal()
    one = Y.renner_unit()
    for x in Y.renner_elements():
        assert Y.renner_mul(one, x) == x and Y.renner_mul(x, one) == x
    for f in range(Y.num_faces):
        e = Y.renner(Y.W.identity, Y.handle_of(f))
        assert Y.is_idempotent(e)


def test_hexagonal_interval_is_whole_lattice():
    Y = hexagonal()
    data = Y.interval(Y.bottom(), Y.top())
    assert sorted(data.members) == list(range(Y.num_faces))
    assert data.check() == []
    trivial = Y.interval(Y.top(), Y.top())
    assert trivial.members == [Y.top()]


def test_hexagonal_dual_imaginary_and_orbit_hull():
    Y = hexagonal()
    assert Y.contains_dual_imaginary()
    assert Y.check_orbit_hull((1, 1, 1)) == []
    assert Y.check_orbit_hull((2, 1, 0)) == []


@pytest.mark.parametrize(
    "A, d, S",
    [
        (A2, 1, [(1, 1, 1)]),
        (((2,),), 1, [(1, 1)]),
        (((2, -2), (-1, 2)), 1, [(1, 1, 1)]),
        (((2, 0), (0, 2)), 1, [(1, 1, 1)]),
        (A2, 1, [(1, 0, 1), (0, 2, 1)]),
    ],
    ids=["A2hex", "A1", "B2", "A1xA1", "A2two"],
)
def test_polyhedral_instances_pass_all_checks(A, d, S):
    Y = FinitePolyhedral(rz.free(gcm(A), d), S)
    report = Y.all_checks()
    assert {k: v for k, v in report.items() if v} == {}


def test_builtin_counts():
    assert len(builtin("d").upsilon()) == 5
    assert len(builtin("b").upsilon()) == 17


@pytest.mark.parametrize("name", "bd")
def test_builtin_types_from_hull(name):
    Y = builtin(name)
    for R in Y.upsilon():
        assert Y.types_from_hull(R) == Y.types(R)
    assert Y.check_type_axioms() == []
    assert Y.check_codim_one() == []
    assert Y.check_saturated_chains() == []
    assert Y.check_block_types() == []


@given(seeds)
@settings(max_examples=40)
def test_builtin_agrees_with_tits_cone(seed):
    rng = random.Random(seed)
    Y = builtin(rng.choice("bd"))
    T = Y.tits
    fs = []
    for _ in range(2):
        theta = rng.choice(T.special)
        sigma = T.W.from_word([rng.randrange(6) for _ in range(rng.randint(0, 4))])
        fs.append((T.face(theta, sigma), Y.face(theta, sigma)))
    (t1, y1), (t2, y2) = fs
    assert (t1.theta, t1.sigma) == (y1.R, y1.sigma)
    assert T.leq(t1, t2) == Y.face_leq(y1, y2)
    m, j = Y.meet_join(y1, y2)
    tm, tj = T.meet_join(t1, t2)
    assert (m.R, m.sigma) == (tm.theta, tm.sigma)
    assert (j.R, j.sigma) == (tj.theta, tj.sigma)


def test_builtin_chain_uniqueness_case_d():
    # every chain of three handles of length <= 3 normalizes to a unique cross-section chain
    Y = builtin("d")
    handles = Y.handles(3)
    ups = set(Y.upsilon())
    count = 0
    for a, b, c in itertools.product(handles, repeat=3):
        if not (Y.face_leq(a, b) and Y.face_leq(b, c)):
            continue
        sigma, S = Y.chain_normalize([a, b, c])
        assert set(S) <= ups
        assert [Y.face(R, sigma) for R in S] == [a, b, c]
        count += 1
    assert count > 0


def test_interval_index_sets_builtin():
    Y = builtin("b")
    g = Y.W.g
    for R1 in Y.upsilon():
        for R2 in Y.upsilon():
            if Y.upsilon_leq(R1, R2):
                assert Y.interval_index_set(R1, R2) == frozenset(R1) & cartan.perp(g, R2)


def test_tits_cone_face_lattice_on_finite_group():
    # for finite W the Tits cone is the whole space, a single face
    rb = rz.free(gcm(A2), 1)
    T = TitsCone(rb)
    assert T.special == (frozenset(),)
    Y = FinitePolyhedral(rb, [ex.unit_vec(3, 2)] + [(1, 1, 0)])
    assert Y.check_lattice_oracle() == []
