"""Faces of the Tits cone.

Covectors ``lam`` live in ``Q^dim`` (the dual of the realization space) and
``lam(h)`` is the dot product.  A face of the Tits cone is stored as a
handle ``(theta, sigma)`` standing for ``sigma R(theta)``, where ``theta`` is
special facial and ``R(theta) = W_{theta-perp} closure(F_theta)``.  Handles
are canonical: ``sigma`` is the minimal element of ``sigma W_{theta u theta-perp}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import cartan
from . import exactla as ex
from . import facial
from .coxeter import RIGHT, CoxElem, CoxeterGroup
from .realization import RootBase


class NotFound(RuntimeError):
    """The ascent did not reach the chamber within the step cap."""

    def __init__(self, cap: int):
        super().__init__(f"point not moved into the chamber within {cap} steps")
        self.cap = cap


class NotInChamber(ValueError):
    pass


class NotSpecialFacial(ValueError):
    pass


def facet_of(rb: RootBase, lam: Sequence[Fraction]) -> frozenset:
    """``J`` with ``lam`` in ``F_J``; also the generators of the stabilizer of ``lam``."""
    vals = rb.chamber_values(lam)
    if any(v < 0 for v in vals):
        raise NotInChamber("covector is not in the closed chamber")
    return frozenset(i for i, v in enumerate(vals) if v == 0)


def normalize(W: CoxeterGroup, lam: Sequence[Fraction], cap: int) -> tuple[CoxElem, ex.Vec]:
    """``(sigma, mu)`` with ``mu`` in the closed chamber and ``lam = sigma mu``.

    Repeatedly reflects in the smallest wall on whose negative side the
    current point lies.
    """
    rb = W.rb
    mu = ex.as_vec(lam)
    word: list[int] = []
    for _ in range(cap + 1):
        vals = rb.chamber_values(mu)
        bad = next((i for i, v in enumerate(vals) if v < 0), None)
        if bad is None:
            return W.from_word(word), mu
        if len(word) == cap:
            break
        mu = ex.sub(mu, ex.scale(vals[bad], rb.avecs[bad]))
        word.append(bad)
    raise NotFound(cap)


def interior_test(rb: RootBase, lam: Sequence[Fraction]) -> bool:
    """Whether ``lam`` (in the closed chamber) lies in the interior of the Tits cone."""
    return cartan.is_finite_type(rb.g, facet_of(rb, lam))


@dataclass(frozen=True)
class Facet:
    """The open facet ``sigma F_J`` with ``sigma`` minimal in ``sigma W_J``."""

    J: frozenset
    sigma: CoxElem


@dataclass(frozen=True)
class TitsFace:
    theta: frozenset
    sigma: CoxElem

    def label(self) -> str:
        return _set_label(self.theta) + "@" + ",".join(map(str, self.sigma.word1()))


def _set_label(J: Iterable[int]) -> str:
    return "{" + ",".join(str(i + 1) for i in sorted(J)) + "}"


class TitsCone:
    """Face lattice of the Tits cone of a root base, with symbolic face handles."""

    def __init__(self, rb: RootBase, family: facial.FacialFamily | None = None):
        self.rb = rb
        self.g = rb.g
        self.W = CoxeterGroup(rb)
        self.family = family if family is not None else facial.enumerate_facial(rb)
        self.special = tuple(self.family.special_facial)
        self._special_set = frozenset(self.special)
        self._inf_cache: dict[frozenset, frozenset] = {}
        self.I_inf = cartan.infinite_part(self.g, self.g.indices)

    # -- handles ------------------------------------------------------------

    def normalizer_indices(self, theta: Iterable[int]) -> frozenset:
        theta = frozenset(theta)
        return theta | cartan.perp(self.g, theta)

    def face(self, theta: Iterable[int], sigma: CoxElem | None = None) -> TitsFace:
        theta = frozenset(theta)
        if theta not in self._special_set:
            raise NotSpecialFacial(_set_label(theta))
        sigma = self.W.identity if sigma is None else sigma
        return TitsFace(theta, self.W.min_coset_rep(sigma, self.normalizer_indices(theta), RIGHT))

    def whole(self) -> TitsFace:
        return self.face(())

    def smallest(self) -> TitsFace:
        return self.face(self.I_inf)

    def translate(self, tau: CoxElem, f: TitsFace) -> TitsFace:
        return self.face(f.theta, self.W.mul(tau, f.sigma))

    def handles(self, depth: int) -> list[TitsFace]:
        """All distinct faces ``sigma R(theta)`` with ``l(sigma) <= depth``."""
        seen = {}
        for sigma in self.W.ball(None, depth):
            for theta in self.special:
                f = self.face(theta, sigma)
                seen.setdefault(f, None)
        return list(seen)

    # -- geometry -----------------------------------------------------------

    def hull(self, f: TitsFace) -> ex.Subspace:
        """Linear hull ``sigma {lam : lam(h_i) = 0, i in theta}``."""
        vecs = [self.W.act_vector(f.sigma, self.rb.hvecs[i]) for i in sorted(f.theta)]
        return ex.Subspace.span(vecs, self.rb.dim).annihilator()

    def dim(self, f: TitsFace) -> int:
        return self.hull(f).dim

    def pointwise_stabilizer(self, f: TitsFace) -> tuple[CoxElem, frozenset]:
        """``(sigma, theta)`` describing ``sigma W_theta sigma^-1``."""
        return f.sigma, f.theta

    def setwise_stabilizer(self, f: TitsFace) -> tuple[CoxElem, frozenset]:
        return f.sigma, self.normalizer_indices(f.theta)

    def exposing_vector(self, theta: Iterable[int]) -> ex.Vec:
        """A vector ``h`` in ``sum_{theta} R^+ h_i`` with ``alpha_j(h) <= 0`` for all j."""
        theta = sorted(theta)
        k = len(theta)
        if k == 0:
            return ex.zero_vec(self.rb.dim)
        A = self.g.A
        # r in Q^k, r > 0, sum_i r_i a_{theta_i, j} <= 0
        nonstrict = [tuple(-A[i][j] for i in theta) for j in range(self.g.n)]
        strict = [ex.unit_vec(k, t) for t in range(k)]
        r = ex.find_point([], nonstrict, strict, dim=k)
        if r is None:
            raise NotSpecialFacial(_set_label(theta))
        r = ex.primitive(r)
        return ex.lincomb(r, [self.rb.hvecs[i] for i in theta], self.rb.dim)

    # -- order --------------------------------------------------------------

    def leq(self, f1: TitsFace, f2: TitsFace) -> bool:
        """``f1`` is contained in ``f2``."""
        if not f1.theta >= f2.theta:
            return False
        rel = self.W.mul(self.W.inv(f2.sigma), f1.sigma)
        perp2 = cartan.perp(self.g, f2.theta)
        return self.W.in_product(rel, perp2, f1.theta)

    def infinite_part(self, J: Iterable[int]) -> frozenset:
        J = frozenset(J)
        if J not in self._inf_cache:
            self._inf_cache[J] = cartan.infinite_part(self.g, J)
        return self._inf_cache[J]

    def _reduce_pair(self, f1: TitsFace, f2: TitsFace):
        N1 = self.normalizer_indices(f1.theta)
        N2 = self.normalizer_indices(f2.theta)
        rel = self.W.mul(self.W.inv(f1.sigma), f2.sigma)
        u, tau, _ = self.W.double_decompose(rel, N1, N2)
        return self.W.mul(f1.sigma, u), tau

    def meet_theta(self, theta1, theta2, tau: CoxElem) -> frozenset:
        union = frozenset(theta1) | frozenset(theta2) | self.W.red_support(tau)
        out = self.infinite_part(self.family.closure(union))
        assert out in self._special_set
        return out

    def join_theta(self, theta1, theta2, tau: CoxElem) -> frozenset:
        common = self.W.cross_parabolic(theta1, tau, theta2)
        out = self.infinite_part(common)
        assert out in self._special_set
        return out

    def meet_join(self, f1: TitsFace, f2: TitsFace) -> tuple[TitsFace, TitsFace]:
        base, tau = self._reduce_pair(f1, f2)
        meet = self.face(self.meet_theta(f1.theta, f2.theta, tau), base)
        join = self.face(self.join_theta(f1.theta, f2.theta, tau), base)
        return meet, join

    def meet(self, f1: TitsFace, f2: TitsFace) -> TitsFace:
        return self.meet_join(f1, f2)[0]

    def join(self, f1: TitsFace, f2: TitsFace) -> TitsFace:
        return self.meet_join(f1, f2)[1]

    def check_lattice_axioms(self, depth: int) -> list[str]:
        """Lattice laws for meet/join on all pairs of handles with ``l(sigma) <= depth``.

        Checks idempotence, commutativity, absorption, bounds and that
        ``leq`` agrees with both ``meet`` and ``join``.
        """
        handles = self.handles(depth)
        memo: dict = {}

        def mj(a, b):
            if (a, b) not in memo:
                memo[a, b] = self.meet_join(a, b)
            return memo[a, b]

        bad = []
        for a in handles:
            if mj(a, a) != (a, a):
                bad.append(f"{a}: not idempotent")
            for b in handles:
                m, j = mj(a, b)
                if mj(b, a) != (m, j):
                    bad.append(f"{a}, {b}: not commutative")
                if mj(a, j)[0] != a or mj(a, m)[1] != a:
                    bad.append(f"{a}, {b}: absorption fails")
                below = self.leq(a, b)
                if below != (m == a) or below != (j == b):
                    bad.append(f"{a}, {b}: order disagrees with meet/join")
                if not (self.leq(m, a) and self.leq(m, b) and self.leq(a, j) and self.leq(b, j)):
                    bad.append(f"{a}, {b}: meet/join are not bounds")
        return bad

    # -- points -------------------------------------------------------------

    def facet_of_point(self, lam: Sequence[Fraction], cap: int) -> Facet:
        sigma, mu = normalize(self.W, lam, cap)
        J = facet_of(self.rb, mu)
        return Facet(J, self.W.min_coset_rep(sigma, J, RIGHT))

    def face_of_point(self, lam: Sequence[Fraction], cap: int) -> TitsFace:
        """The face whose relative interior contains ``lam``."""
        fac = self.facet_of_point(lam, cap)
        return self.face(self.infinite_part(fac.J), fac.sigma)

    def contains(self, f: TitsFace, lam: Sequence[Fraction], cap: int) -> bool:
        return self.leq(self.face_of_point(lam, cap), f)

    def ri_membership(self, lam: Sequence[Fraction], f: TitsFace, cap: int) -> bool | None:
        """Whether ``lam`` lies in the relative interior of ``f``; None if the ascent gives up."""
        try:
            return self.face_of_point(lam, cap) == f
        except NotFound:
            return None

    def ri_membership_by_search(self, lam: Sequence[Fraction], f: TitsFace, depth: int) -> bool | None:
        """Second route: search ``W_{theta-perp}`` up to ``depth`` for a point of some ``F_{theta u theta_f}``.

        Returns None when nothing is found, since the search is bounded.
        """
        theta = f.theta
        perp = cartan.perp(self.g, theta)
        local = self.W.act_covector(self.W.inv(f.sigma), lam)
        for tau in self.W.ball(perp, depth):
            mu = self.W.act_covector(self.W.inv(tau), local)
            vals = self.rb.chamber_values(mu)
            if any(v < 0 for v in vals):
                continue
            J = frozenset(i for i, v in enumerate(vals) if v == 0)
            if theta <= J and J - theta <= perp and cartan.is_finite_type(self.g, J - theta):
                return True
        return None

    def chamber_generators(self) -> list[ex.Vec]:
        """Generators of the closed chamber, lineality directions included with both signs."""
        C = facial.chamber_cone(self.rb)
        gens = list(C.generators)
        for v in C.lineality:
            gens += [v, ex.neg(v)]
        return gens

    def describe(self, f: TitsFace) -> dict:
        return {
            "theta": sorted(i + 1 for i in f.theta),
            "sigma": f.sigma.word1(),
            "dim": self.dim(f),
            "pointwise_stabilizer": sorted(i + 1 for i in f.theta),
            "setwise_stabilizer": sorted(i + 1 for i in self.normalizer_indices(f.theta)),
        }


def points_in_facet(rb: RootBase, J: Iterable[int], count: int = 1) -> list[ex.Vec]:
    """Up to ``count`` rational points of ``F_J`` (empty if ``J`` is not facial)."""
    J = frozenset(J)
    eqs = [rb.hvecs[i] for i in sorted(J)]
    strict = [rb.hvecs[i] for i in range(rb.n) if i not in J]
    p = ex.find_point(eqs, [], strict, dim=rb.dim)
    if p is None:
        return []
    out = [p]
    closed = ex.PolyCone.from_inequalities(rb.dim, rb.hvecs, eqs)
    for k, ray in enumerate(closed.generators[: count - 1]):
        out.append(ex.add(p, ex.scale(Fraction(k + 1), ray)))
    return out


__all__ = [
    "NotFound",
    "NotInChamber",
    "NotSpecialFacial",
    "Facet",
    "TitsFace",
    "TitsCone",
    "facet_of",
    "normalize",
    "interior_test",
    "points_in_facet",
]
