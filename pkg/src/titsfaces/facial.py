"""Facial subsets of the index set.

``J`` is facial when the cone spanned by ``{h_j : j in J}`` is a face of the
cone spanned by all coroots.  Three independent decision routes are offered:
a feasibility test on the coroot relations (the default), a combinatorial
test over the sign vectors of the relations, and a geometric route through
the face lattice of the coroot cone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from . import cartan
from . import exactla as ex
from .coxeter import CoxeterGroup
from .realization import RootBase

SIGN_VECTOR_DIM_BOUND = 4
ENUMERATION_BOUND = 20


class DimensionBound(ValueError):
    """The relation space is too large for sign-vector enumeration."""


class NotFacial(ValueError):
    pass


class NotSpecial(ValueError):
    pass


def _relation_rows(rb: RootBase) -> list[ex.Vec]:
    """Row i expresses the i-th coordinate of a relation in basis coordinates."""
    B = rb.L_h.basis
    return [tuple(b[i] for b in B) for i in range(rb.n)]


def is_facial(rb: RootBase, J: Iterable[int]) -> bool:
    """No coroot relation is nonnegative off ``J`` without vanishing off ``J``.

    The per-index systems ``r >= 0 off J, r_i0 > 0`` are merged into a single
    one with ``sum_{i not in J} r_i > 0``; both are infeasible together.
    """
    J = frozenset(J)
    k = rb.L_h.dim
    if k == 0:
        return True
    rows = _relation_rows(rb)
    outside = [i for i in range(rb.n) if i not in J]
    if not outside:
        return True
    total = ex.lincomb([ex.ONE] * len(outside), [rows[i] for i in outside], k)
    return not ex.feasible([], [rows[i] for i in outside], [total], dim=k)


def forced_indices(rb: RootBase, J: Iterable[int]) -> frozenset:
    """Indices ``i0`` outside ``J`` with a relation ``r >= 0`` off ``J`` and ``r_i0 > 0``.

    Every facial superset of ``J`` contains these indices.
    """
    J = frozenset(J)
    k = rb.L_h.dim
    if k == 0:
        return frozenset()
    rows = _relation_rows(rb)
    outside = [i for i in range(rb.n) if i not in J]
    ge = [rows[i] for i in outside]
    return frozenset(i for i in outside if ex.feasible([], ge, [rows[i]], dim=k))


def facial_closure(rb: RootBase, L: Iterable[int]) -> frozenset:
    """Smallest facial set containing ``L``, by adding forced indices until stable."""
    J = frozenset(L)
    while True:
        extra = forced_indices(rb, J)
        if not extra:
            return J
        J |= extra


# ---------------------------------------------------------------------------
# sign vectors


SignVector = tuple[int, ...]


def positive_part(s: SignVector) -> frozenset:
    return frozenset(i for i, x in enumerate(s) if x > 0)


def negative_part(s: SignVector) -> frozenset:
    return frozenset(i for i, x in enumerate(s) if x < 0)


def sign_of(r) -> SignVector:
    return tuple((x > 0) - (x < 0) for x in r)


def sign_vectors(rb: RootBase, bound: int = SIGN_VECTOR_DIM_BOUND) -> frozenset:
    """Sign vectors of all nonzero coroot relations.

    The cells of the arrangement of the n coordinate hyperplanes, written in
    a basis of the relation space, are grown one hyperplane at a time; a
    partial sign pattern survives if it is realised by some point.
    """
    k = rb.L_h.dim
    if k > bound:
        raise DimensionBound(f"relation space has dimension {k} > {bound}")
    if k == 0:
        return frozenset()
    rows = _relation_rows(rb)
    partial: list[SignVector] = [()]
    for i in range(rb.n):
        nxt = []
        for s in partial:
            for x in (1, 0, -1):
                cand = s + (x,)
                eqs = [rows[t] for t, y in enumerate(cand) if y == 0]
                gt = [rows[t] if y > 0 else ex.neg(rows[t]) for t, y in enumerate(cand) if y != 0]
                if ex.feasible(eqs, [], gt, dim=k):
                    nxt.append(cand)
        partial = nxt
    return frozenset(s for s in partial if any(s))


def is_facial_by_signs(J: Iterable[int], signs: Iterable[SignVector]) -> bool:
    """``J`` is facial iff every relation positive only inside ``J`` is negative only inside ``J``."""
    J = frozenset(J)
    return all(negative_part(s) <= J for s in signs if positive_part(s) <= J)


# ---------------------------------------------------------------------------
# geometric route


def coroot_cone(rb: RootBase) -> ex.PolyCone:
    return ex.PolyCone.from_generators(rb.dim, rb.hvecs)


def chamber_cone(rb: RootBase) -> ex.PolyCone:
    """The closed fundamental chamber ``{lam : lam(h_i) >= 0}`` in coordinates of the dual."""
    return ex.PolyCone.from_inequalities(rb.dim, rb.hvecs)


def facial_sets_geometric(rb: RootBase) -> frozenset:
    """Facial sets read off the face lattice of the coroot cone."""
    K = coroot_cone(rb)
    lat = K.faces()
    out = set()
    for f in range(len(lat)):
        F = lat.face(f)
        out.add(frozenset(i for i, h in enumerate(rb.hvecs) if F.contains(h)))
    return frozenset(out)


def chamber_face_types(rb: RootBase) -> dict[frozenset, int]:
    """Map each face of the chamber to ``{i : lam(h_i) = 0 on it}``."""
    C = chamber_cone(rb)
    lat = C.faces()
    out = {}
    for f in range(len(lat)):
        x = lat.face(f).interior_point()
        out[frozenset(i for i, h in enumerate(rb.hvecs) if ex.dot(x, h) == 0)] = f
    return out


# ---------------------------------------------------------------------------
# the family of facial sets


@dataclass(frozen=True)
class FacialFamily:
    rb: RootBase
    all_facial: tuple[frozenset, ...]
    special_facial: tuple[frozenset, ...]
    _members: frozenset = field(repr=False, compare=False, default=frozenset())

    def __contains__(self, J) -> bool:
        return frozenset(J) in self._members

    def closure(self, L: Iterable[int]) -> frozenset:
        """Intersection of all facial supersets of ``L``."""
        L = frozenset(L)
        out = frozenset(range(self.rb.n))
        for J in self.all_facial:
            if L <= J:
                out &= J
        return out

    def meet(self, J1, J2) -> frozenset:
        return frozenset(J1) & frozenset(J2)

    def join(self, J1, J2) -> frozenset:
        return self.closure(frozenset(J1) | frozenset(J2))


def enumerate_facial(rb: RootBase, bound: int = ENUMERATION_BOUND) -> FacialFamily:
    """All facial sets, ordered by size then lexicographically.

    Only special sets are tested directly; any other set is facial exactly
    when its nonfinite part is.
    """
    n = rb.n
    if n > bound:
        raise DimensionBound(f"n = {n} exceeds the enumeration bound {bound}")
    g = rb.g
    everything = cartan.subsets(n)
    special_status: dict[frozenset, bool] = {}
    for J in everything:
        if cartan.is_special(g, J):
            special_status[J] = is_facial(rb, J)
    facial = tuple(J for J in everything if special_status[cartan.infinite_part(g, J)])
    special = tuple(J for J in everything if special_status.get(J, False))
    return FacialFamily(rb, facial, special, frozenset(facial))


def facial_meet_join(rb: RootBase, J1: Iterable[int], J2: Iterable[int]) -> tuple[frozenset, frozenset]:
    J1, J2 = frozenset(J1), frozenset(J2)
    for J in (J1, J2):
        if not is_facial(rb, J):
            raise NotFacial(sorted(i + 1 for i in J))
    return J1 & J2, facial_closure(rb, J1 | J2)


def aff_perp_face(rb: RootBase, theta: Iterable[int]) -> frozenset:
    """``theta_aff`` together with ``theta_perp``; always facial and containing ``I_fin`` and ``I_aff``."""
    g = rb.g
    theta = frozenset(theta)
    if not cartan.is_special(g, theta):
        raise NotSpecial(sorted(i + 1 for i in theta))
    out = cartan.affine_part(g, theta) | cartan.perp(g, theta)
    full = cartan.classify(g)
    assert is_facial(rb, out)
    assert full.finite | full.affine <= out
    return out


# ---------------------------------------------------------------------------
# structural checks; each returns a list of violation messages


def _fmt(J) -> str:
    return "{" + ",".join(str(i + 1) for i in sorted(J)) + "}"


def check_kernel_sign_lemmas(rb: RootBase, signs: Iterable[SignVector]) -> list[str]:
    g = rb.g
    bad = []
    for s in signs:
        P, N = positive_part(s), negative_part(s)
        tag = "".join("+" if x > 0 else "-" if x < 0 else "0" for x in s)
        PN = P | N
        # both parts nonempty and special; zero indices see both parts or neither
        for name, part in (("I+", P), ("I-", N)):
            if not part or not cartan.is_special(g, part):
                bad.append(f"{tag}: {name} is empty or not special")
        for j in range(rb.n):
            if j in PN:
                continue
            if any(g.A[j][i] for i in P) != any(g.A[j][i] for i in N):
                bad.append(f"{tag}: index {j + 1} is adjacent to only one part")
        if not cartan.is_special(g, PN):
            bad.append(f"{tag}: I+ u I- not special")
        perpP, perpN = cartan.perp(g, P), cartan.perp(g, N)
        for K, t in cartan.classify(g, PN).components:
            if t == cartan.AFF:
                ok_plus = K <= (P & perpN) and K in cartan.components(g, PN | perpN)
                ok_minus = K <= (N & perpP) and K in cartan.components(g, PN | perpP)
                if not (ok_plus or ok_minus):
                    bad.append(f"{tag}: affine component {_fmt(K)} of I+ u I- misplaced")
            elif t == cartan.IND:
                Kp, Km = K & P, K & N
                if not Kp or not Km:
                    bad.append(f"{tag}: indefinite component {_fmt(K)} lies on one side")
                    continue
                for side, other in ((Kp, Km), (Km, Kp)):
                    for C, ct in cartan.classify(g, side).components:
                        if ct != cartan.IND:
                            bad.append(f"{tag}: component {_fmt(C)} inside {_fmt(K)} not indefinite")
                        if cartan.separated(g, C, other):
                            bad.append(f"{tag}: component {_fmt(C)} not adjacent to the other side")
        for side, other, perp_other in ((P, N, perpN), (N, P, perpP)):
            cls_side = cartan.classify(g, side)
            ind_other = [C for C, t in cartan.classify(g, other).components if t == cartan.IND]
            for C, t in cls_side.components:
                if t == cartan.AFF:
                    if C not in cartan.components(g, PN) or C not in cartan.components(g, PN | perp_other):
                        bad.append(f"{tag}: affine component {_fmt(C)} is not a component of the union")
                    if not cartan.separated(g, C, other):
                        bad.append(f"{tag}: affine component {_fmt(C)} adjacent to the other part")
                elif t == cartan.IND:
                    if C in cartan.components(g, PN):
                        bad.append(f"{tag}: indefinite component {_fmt(C)} is a component of the union")
                    if not any(not cartan.separated(g, C, D) for D in ind_other):
                        bad.append(f"{tag}: indefinite component {_fmt(C)} sees no indefinite partner")
        cp, cn = cartan.classify(g, P), cartan.classify(g, N)
        if bool(cp.indefinite) != bool(cn.indefinite):
            bad.append(f"{tag}: indefinite parity fails")
        if (cp.affine == P) != (cn.affine == N):
            bad.append(f"{tag}: all-affine parity fails")
    return bad


def check_structural(rb: RootBase, fam: FacialFamily | None = None) -> list[str]:
    """Exhaustive checks of the structural facts about facial sets."""
    g = rb.g
    n = rb.n
    fam = fam or enumerate_facial(rb)
    bad = []
    members = set(fam.all_facial)
    full = cartan.classify(g)
    base = full.finite | full.affine
    for J in cartan.subsets(n):
        inf = cartan.infinite_part(g, J)
        if (J in members) != (inf in members):
            bad.append(f"{_fmt(J)}: facial status differs from its nonfinite part")
        Jfc = fam.closure(J)
        if not (J | cartan.perp(g, J)) <= (Jfc | cartan.perp(g, Jfc)):
            bad.append(f"{_fmt(J)}: J u J_perp escapes the closure and its perp")
        if cartan.is_special(g, J):
            out = cartan.affine_part(g, J) | cartan.perp(g, J)
            if out not in members or not base <= out:
                bad.append(f"{_fmt(J)}: affine part plus perp is not a facial superset of I_fin u I_aff")
    specials = [J for J in cartan.subsets(n) if cartan.is_special(g, J)]
    for J, J1 in combinations(specials, 2):
        for a, b in ((J, J1), (J1, J)):
            if a <= b:
                big = cartan.affine_part(g, a) | cartan.perp(g, a)
                small = cartan.affine_part(g, b) | cartan.perp(g, b)
                if not small <= big:
                    bad.append(f"{_fmt(a)} <= {_fmt(b)}: centralizer sets not antitone")
    for J in fam.all_facial:
        comps = cartan.classify(g, J).components
        aff = [K for K, t in comps if t == cartan.AFF]
        others = [K for K, t in comps if t != cartan.AFF]
        for k in range(len(others) + 1):
            for pick in combinations(others, k):
                U = frozenset().union(*aff, *pick)
                if U not in members:
                    bad.append(f"{_fmt(J)}: union {_fmt(U)} with all affine components not facial")
        hyp = [K for K, t in comps if t == cartan.IND and cartan.hyperbolic_class(g, K) != cartan.NEITHER]
        for k in range(1, len(hyp) + 1):
            for pick in combinations(hyp, k):
                U = frozenset().union(*pick)
                if U not in members:
                    bad.append(f"{_fmt(J)}: union of hyperbolic components {_fmt(U)} not facial")
    return bad


def check_double_coset_intersections(rb: RootBase, fam: FacialFamily | None = None, max_length: int = 5) -> list[str]:
    """``J1 n sigma J2`` is facial for facial ``J1, J2`` and minimal ``sigma`` in ``W_J1 sigma W_J2``.

    Only ``sigma`` with length at most ``max_length`` are visited.  The set
    ``sigma J2`` means the indices ``i`` with ``sigma h_j = h_i`` for some
    ``j`` in ``J2``.
    """
    fam = fam or enumerate_facial(rb)
    W = CoxeterGroup(rb)
    members = set(fam.all_facial)
    seen: set[tuple[frozenset, frozenset]] = set()
    for sigma in W.ball(None, max_length):
        ldesc, rdesc = W.left_descents(sigma), W.right_descents(sigma)
        for J2 in fam.all_facial:
            if J2 & rdesc:
                continue
            seen.add((W.cross_parabolic(range(rb.n), sigma, J2), ldesc))
    bad = []
    for image, ldesc in seen:
        for J1 in fam.all_facial:
            if not J1 & ldesc and J1 & image not in members:
                bad.append(f"{_fmt(J1)} n sigma J2 = {_fmt(J1 & image)} is not facial")
    return bad

