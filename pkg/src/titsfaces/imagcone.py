"""The imaginary cone ``Z = W K`` and its faces.

``K = (sum_i R+ h_i) n (-C^vee)`` is polyhedral and computed exactly; ``Z``
itself is only ever handled through ``K`` and the group action.  Faces are
handles ``(theta, sigma)`` for ``sigma F(theta)``, canonical modulo
``W_{theta u theta-perp}`` exactly as for the Tits cone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import cartan
from . import exactla as ex
from . import facial
from .coxeter import CoxElem, InfiniteParabolic
from .realization import RootBase
from .titscone import NotSpecialFacial, TitsCone, TitsFace, points_in_facet


def _label(J) -> str:
    return "{" + ",".join(str(i + 1) for i in sorted(J)) + "}"


# -- K and K(theta) ---------------------------------------------------------


def k_coefficient_cone(rb: RootBase, theta: Iterable[int] | None = None) -> ex.PolyCone:
    """``{r >= 0 : sum_i r_i alpha_j(h_i) <= 0 for all j}`` with ``r`` supported on ``theta``."""
    n = rb.n
    support = frozenset(range(n)) if theta is None else frozenset(theta)
    A = rb.g.A
    ineqs = [ex.unit_vec(n, i) for i in range(n)]
    ineqs += [tuple(-A[i][j] for i in range(n)) for j in range(n)]
    eqs = [ex.unit_vec(n, i) for i in range(n) if i not in support]
    return ex.PolyCone.from_inequalities(n, ineqs, eqs)


def k_cone(rb: RootBase) -> ex.PolyCone:
    """``K`` as the image of its coefficient cone under ``r -> sum r_i h_i``."""
    return k_coefficient_cone(rb).image(rb.coroot_matrix())


def k_cone_direct(rb: RootBase) -> ex.PolyCone:
    """``K`` as the coroot cone cut by ``alpha_j <= 0``, computed in the space itself."""
    cut = ex.PolyCone.from_inequalities(rb.dim, [ex.neg(a) for a in rb.avecs])
    return facial.coroot_cone(rb).intersect(cut)


@dataclass(frozen=True)
class KTheta:
    """The closed cone ``K(theta)-bar`` and whether the open part ``K(theta)`` is nonempty."""

    theta: frozenset
    cone: ex.PolyCone
    nonempty: bool
    interior_coefficients: ex.Vec | None = field(default=None, compare=False)

    def interior_point(self, rb: RootBase) -> ex.Vec | None:
        """A point of ``K(theta)`` (all coefficients on ``theta`` strictly positive)."""
        if self.interior_coefficients is None:
            return None
        return rb.coroot_combination(self.interior_coefficients)


def k_theta(rb: RootBase, theta: Iterable[int]) -> KTheta:
    theta = frozenset(theta)
    n = rb.n
    cone = k_coefficient_cone(rb, theta).image(rb.coroot_matrix())
    A = rb.g.A
    idx = sorted(theta)
    if not idx:
        return KTheta(theta, cone, True, ex.zero_vec(n))
    nonstrict = [tuple(-A[i][j] for i in idx) for j in range(n)]
    strict = [ex.unit_vec(len(idx), t) for t in range(len(idx))]
    r = ex.find_point([], nonstrict, strict, dim=len(idx))
    if r is None:
        return KTheta(theta, cone, False, None)
    r = ex.primitive(r)
    full = [ex.ZERO] * n
    for i, x in zip(idx, r):
        full[i] = x
    return KTheta(theta, cone, True, tuple(full))


def in_neg_dual_facet(rb: RootBase, h: Sequence[Fraction], J: Iterable[int]) -> bool:
    """``h`` lies in ``-F^vee_J``: ``alpha_j(h) = 0`` on ``J`` and ``< 0`` off ``J``."""
    J = frozenset(J)
    vals = rb.root_values(h)
    return all((v == 0) if j in J else (v < 0) for j, v in enumerate(vals))


def dual_facet_type(rb: RootBase, h: Sequence[Fraction]) -> frozenset | None:
    """``J`` with ``h`` in ``-F^vee_J``, or None if some ``alpha_j(h) > 0``."""
    vals = rb.root_values(h)
    if any(v > 0 for v in vals):
        return None
    return frozenset(j for j, v in enumerate(vals) if v == 0)


# -- the dual imaginary cone ------------------------------------------------


def dual_imaginary(rb: RootBase) -> ex.PolyCone:
    """``K^vee = (sum_i R+ alpha_i) n (-C)`` as a cone of covectors."""
    n = rb.n
    A = rb.g.A
    ineqs = [ex.unit_vec(n, i) for i in range(n)]
    ineqs += [tuple(-A[j][i] for i in range(n)) for j in range(n)]
    coeffs = ex.PolyCone.from_inequalities(n, ineqs)
    return coeffs.image(ex.transpose(rb.avecs, rb.dim))


def dual_imaginary_direct(rb: RootBase) -> ex.PolyCone:
    roots = ex.PolyCone.from_generators(rb.dim, rb.avecs)
    cut = ex.PolyCone.from_inequalities(rb.dim, [ex.neg(h) for h in rb.hvecs])
    return roots.intersect(cut)


# -- faces -------------------------------------------------------------------


@dataclass(frozen=True)
class ImagFace:
    theta: frozenset
    sigma: CoxElem

    def label(self) -> str:
        return _label(self.theta) + "@" + ",".join(map(str, self.sigma.word1()))


class ImaginaryCone:
    """Face lattice of the imaginary cone, sharing group and facial data with the Tits cone."""

    def __init__(self, rb: RootBase, tits: TitsCone | None = None):
        self.rb = rb
        self.g = rb.g
        self.tits = tits if tits is not None else TitsCone(rb)
        self.W = self.tits.W
        self.special = self.tits.special
        self._k: ex.PolyCone | None = None
        self._ktheta: dict[frozenset, KTheta] = {}

    @property
    def K(self) -> ex.PolyCone:
        if self._k is None:
            self._k = k_cone(self.rb)
        return self._k

    def k_theta(self, theta: Iterable[int]) -> KTheta:
        theta = frozenset(theta)
        if theta not in self._ktheta:
            self._ktheta[theta] = k_theta(self.rb, theta)
        return self._ktheta[theta]

    # -- handles ------------------------------------------------------------

    def face(self, theta: Iterable[int], sigma: CoxElem | None = None) -> ImagFace:
        t = self.tits.face(theta, sigma)
        return ImagFace(t.theta, t.sigma)

    def smallest(self) -> ImagFace:
        return self.face(())

    def whole(self) -> ImagFace:
        return self.face(self.tits.I_inf)

    def to_tits(self, f: ImagFace) -> TitsFace:
        return TitsFace(f.theta, f.sigma)

    def from_tits(self, f: TitsFace) -> ImagFace:
        return ImagFace(f.theta, f.sigma)

    def handles(self, depth: int) -> list[ImagFace]:
        return [self.from_tits(f) for f in self.tits.handles(depth)]

    # -- geometry -----------------------------------------------------------

    def hull_generators(self, theta: Iterable[int]) -> list[ex.Vec]:
        """Spanning set of the hull of ``F(theta)`` from the closed formula."""
        theta = frozenset(theta)
        cl = cartan.classify(self.g, theta)
        if cl.finite:
            raise NotSpecialFacial(_label(theta))
        vecs = []
        for comp, kind in cl.components:
            if kind == cartan.AFF:
                k = cartan.affine_kernel_vector(self.g, comp)
                idx = sorted(k)
                v = ex.lincomb([k[i] for i in idx], [self.rb.hvecs[i] for i in idx], self.rb.dim)
                vecs.append(ex.primitive(v))
        vecs += [self.rb.hvecs[i] for i in sorted(cl.indefinite)]
        return vecs

    def hull(self, f: ImagFace) -> ex.Subspace:
        vecs = [self.W.act_vector(f.sigma, v) for v in self.hull_generators(f.theta)]
        return ex.Subspace.span(vecs, self.rb.dim)

    def hull_exact(self, theta: Iterable[int]) -> ex.Subspace:
        """Hull of ``K(theta)-bar`` read off its double description."""
        return self.k_theta(theta).cone.hull()

    def dim(self, f: ImagFace) -> int:
        return self.hull(f).dim

    def pointwise_stabilizer(self, f: ImagFace) -> tuple[CoxElem, frozenset]:
        theta = f.theta
        return f.sigma, cartan.affine_part(self.g, theta) | cartan.perp(self.g, theta)

    def setwise_stabilizer(self, f: ImagFace) -> tuple[CoxElem, frozenset]:
        return f.sigma, self.tits.normalizer_indices(f.theta)

    # -- order --------------------------------------------------------------

    def leq(self, f1: ImagFace, f2: ImagFace) -> bool:
        """``f1`` is contained in ``f2``."""
        if not f2.theta >= f1.theta:
            return False
        rel = self.W.mul(self.W.inv(f1.sigma), f2.sigma)
        return self.W.in_product(rel, cartan.perp(self.g, f1.theta), f2.theta)

    def meet_join(self, f1: ImagFace, f2: ImagFace) -> tuple[ImagFace, ImagFace]:
        t1, t2 = self.to_tits(f1), self.to_tits(f2)
        base, tau = self.tits._reduce_pair(t1, t2)
        meet = self.face(self.tits.join_theta(f1.theta, f2.theta, tau), base)
        join = self.face(self.tits.meet_theta(f1.theta, f2.theta, tau), base)
        return meet, join

    def meet(self, f1: ImagFace, f2: ImagFace) -> ImagFace:
        return self.meet_join(f1, f2)[0]

    def join(self, f1: ImagFace, f2: ImagFace) -> ImagFace:
        return self.meet_join(f1, f2)[1]

    # -- points ---------------------------------------------------------------

    def membership_Z(self, h: Sequence[Fraction], depth: int) -> bool | None:
        """Whether ``h`` lies in ``Z``; None when the bounded search finds nothing."""
        h = ex.as_vec(h)
        if ex.is_zero(h):
            return True
        if not facial.coroot_cone(self.rb).contains(h):
            return False
        K = self.K
        if not K.generators and not K.lineality:
            return False
        for sigma in self.W.ball(None, depth):
            if K.contains(self.W.act_vector(self.W.inv(sigma), h)):
                return True
        return None

    def ri_point(self, f: ImagFace) -> ex.Vec:
        """A point of the relative interior of ``f``."""
        p = self.k_theta(f.theta).interior_point(self.rb)
        return self.W.act_vector(f.sigma, p)

    def samples(self, depth: int) -> list[tuple[ex.Vec, ImagFace]]:
        """Points ``sigma h`` of ``Z`` with the face whose relative interior holds them."""
        out = []
        seen = set()
        for sigma in self.W.ball(None, depth):
            for theta in self.special:
                f = self.face(theta, sigma)
                p = self.W.act_vector(sigma, self.k_theta(theta).interior_point(self.rb))
                if (p, f) not in seen:
                    seen.add((p, f))
                    out.append((p, f))
        return out

    def describe(self, f: ImagFace) -> dict:
        _, pointwise = self.pointwise_stabilizer(f)
        return {
            "theta": sorted(i + 1 for i in f.theta),
            "sigma": f.sigma.word1(),
            "dim": self.dim(f),
            "hull": [list(map(str, v)) for v in self.hull(f).basis],
            "pointwise_stabilizer": sorted(i + 1 for i in pointwise),
            "setwise_stabilizer": sorted(i + 1 for i in self.tits.normalizer_indices(f.theta)),
        }

    # -- structural checks; each returns a list of violation messages ------------

    def check_k_routes(self) -> list[str]:
        bad = []
        if k_cone(self.rb) != k_cone_direct(self.rb):
            bad.append("K differs between the coefficient route and the direct route")
        if dual_imaginary(self.rb) != dual_imaginary_direct(self.rb):
            bad.append("K^vee differs between the two routes")
        return bad

    def check_special_nonempty(self) -> list[str]:
        """``K(theta)`` is nonempty exactly for special ``theta``."""
        bad = []
        for theta in cartan.subsets(self.rb.n):
            if self.k_theta(theta).nonempty != cartan.is_special(self.g, theta):
                bad.append(f"K({_label(theta)}) nonemptiness disagrees with specialness")
        return bad

    def check_hulls(self) -> list[str]:
        bad = []
        for theta in self.special:
            formula = ex.Subspace.span(self.hull_generators(theta), self.rb.dim)
            if formula != self.hull_exact(theta):
                bad.append(f"hull formula fails for {_label(theta)}")
            p = self.k_theta(theta).interior_point(self.rb)
            if not formula.contains(p):
                bad.append(f"interior point of K({_label(theta)}) is outside the hull")
        return bad

    def check_free_facets(self) -> list[str]:
        """Position of ``K(theta)`` among the dual facets (free bases only)."""
        if not self.rb.is_free():
            return []
        g = self.g
        bad = []
        for theta in cartan.subsets(self.rb.n):
            if not theta or not cartan.is_special(g, theta):
                continue
            kt = self.k_theta(theta)
            aff = cartan.affine_part(g, theta)
            ind = cartan.indefinite_part(g, theta)
            perp = cartan.perp(g, theta)
            if cartan.is_connected(g, theta) and not ind:
                k = cartan.affine_kernel_vector(g, theta)
                idx = sorted(k)
                ray = ex.primitive(ex.lincomb([k[i] for i in idx], [self.rb.hvecs[i] for i in idx], self.rb.dim))
                if list(kt.cone.generators) != [ray] or not in_neg_dual_facet(self.rb, ray, theta | perp):
                    bad.append(f"affine {_label(theta)}: K(theta) is not the kernel ray in the expected facet")
            ri = kt.cone.interior_point()
            if not in_neg_dual_facet(self.rb, ri, aff | perp):
                bad.append(f"{_label(theta)}: relative interior point in the wrong dual facet")
            for sub in cartan.subsets(self.rb.n):
                if not sub or not sub <= ind or not cartan.is_finite_type(g, sub):
                    continue
                try:
                    M = self.W.mid_projector(sub)
                except InfiniteParabolic:  # pragma: no cover - sub is finite type
                    continue
                q = ex.matvec(M, ri)
                if not in_neg_dual_facet(self.rb, q, aff | sub | perp) or not kt.cone.contains(q):
                    bad.append(f"{_label(theta)}: averaging over {_label(sub)} misses its dual facet")
            for gen in kt.cone.generators:
                # points of K(theta) near each generator fall in some allowed facet
                q = ex.add(ri, gen)
                J = dual_facet_type(self.rb, q)
                allowed = J is not None and aff | perp <= J and J - (aff | perp) <= ind
                if not allowed or not cartan.is_finite_type(g, J - (aff | perp)):
                    bad.append(f"{_label(theta)}: point of K(theta) outside the facet partition")
        return bad

    def check_exposed(self, depth: int) -> list[str]:
        """Covectors of ``F_{theta u theta_f}`` expose ``F(theta)`` on bounded samples of ``Z``."""
        bad = []
        zs = self.samples(depth)
        for theta in self.special:
            target = self.face(theta)
            perp = cartan.perp(self.g, theta)
            for extra in cartan.subsets(self.rb.n):
                if not extra <= perp or not cartan.is_finite_type(self.g, extra):
                    continue
                for lam in points_in_facet(self.rb, theta | extra):
                    for p, f in zs:
                        v = ex.dot(lam, p)
                        if v < 0 or (v == 0) != self.leq(f, target):
                            bad.append(f"exposure of F({_label(theta)}) fails at {f.label()}")
        return bad

    def check_coroot_section(self, depth: int) -> list[str]:
        """``F(theta) = Z n sum_{theta} R+ h_i`` on bounded samples."""
        bad = []
        zs = self.samples(depth)
        for theta in self.special:
            target = self.face(theta)
            sub = ex.PolyCone.from_generators(self.rb.dim, [self.rb.hvecs[i] for i in sorted(theta)])
            for p, f in zs:
                if sub.contains(p) != self.leq(f, target):
                    bad.append(f"coroot section of {_label(theta)} fails at {f.label()}")
        return bad

    def check_semiduality(self, depth: int) -> list[str]:
        """``lam(h) >= 0`` with equality iff ``lam`` is in ``R(theta)``, for ``h`` in ``ri F(theta)``."""
        bad = []
        points = []
        for J in self.tits.family.all_facial:
            for mu in points_in_facet(self.rb, J):
                for sigma in self.W.ball(None, depth):
                    lam = self.W.act_covector(sigma, mu)
                    points.append((lam, self.tits.face(cartan.infinite_part(self.g, J), sigma)))
        for theta in self.special:
            h = self.ri_point(self.face(theta))
            R = self.tits.face(theta)
            for lam, face in points:
                v = ex.dot(lam, h)
                if v < 0 or (v == 0) != self.tits.leq(face, R):
                    bad.append(f"semiduality fails for {_label(theta)} at {face.label()}")
        return bad


def anti_isomorphism_check(tits: TitsCone, imag: ImaginaryCone, depth: int) -> list[str]:
    """``sigma R(theta) -> sigma F(theta)`` reverses inclusion on all handles of length <= depth."""
    bad = []
    H = tits.handles(depth)
    for a in H:
        for b in H:
            if tits.leq(a, b) != imag.leq(imag.from_tits(b), imag.from_tits(a)):
                bad.append(f"order not reversed on {a.label()} and {b.label()}")
    return bad
