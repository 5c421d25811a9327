"""Invariant convex subcones of the Tits cone.

Two kinds of cone ``Y`` are supported.  ``BuiltinTits`` is the Tits cone
itself, described symbolically through special facial sets.
``FinitePolyhedral`` is ``cc(W S)`` for a finite Weyl group and a finite set
``S`` of chamber points, materialized with its full face lattice so that
every structural statement can be compared with direct polyhedral
computation.

Faces are handled through the cross-section ``Upsilon`` (faces whose
relative interior meets the chamber): a face is written ``sigma R`` with
``R`` in ``Upsilon`` and ``sigma`` minimal modulo ``W_{upsilon(R)}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Sequence

from . import cartan
from . import exactla as ex
from . import facial
from .coxeter import RIGHT, CoxElem, CoxeterGroup
from .realization import RootBase
from .titscone import NotSpecialFacial, TitsCone, normalize


class NotInChamber(ValueError):
    pass


class InfiniteGroup(ValueError):
    pass


class NotInCrossSection(ValueError):
    pass


class NotAChain(ValueError):
    pass


class NotComparable(ValueError):
    pass


def _label(J) -> str:
    return "{" + ",".join(str(i + 1) for i in sorted(J)) + "}"


@dataclass(frozen=True)
class TypeData:
    lower: frozenset  # indices fixing R pointwise
    upper: frozenset  # indices fixing R as a whole but not pointwise

    @property
    def full(self) -> frozenset:
        return self.lower | self.upper


@dataclass(frozen=True)
class SubFace:
    """The face ``sigma R`` with ``R`` in the cross-section."""

    R: Hashable
    sigma: CoxElem


@dataclass(frozen=True)
class RennerElem:
    """The class ``sigma[rho R]``, stored as ``(kappa, face)`` with ``kappa = sigma rho``.

    ``kappa`` is minimal in ``kappa W_{lower(R)}``; ``sigma`` is recovered as
    ``kappa rho^-1`` up to the pointwise stabilizer of the face.
    """

    kappa: CoxElem
    face: SubFace


class InvariantCone:
    """Operations shared by every kind of invariant subcone."""

    W: CoxeterGroup
    rb: RootBase

    # to be provided by subclasses
    def upsilon(self) -> list:
        raise NotImplementedError

    def types(self, R) -> TypeData:
        raise NotImplementedError

    def upsilon_leq(self, R1, R2) -> bool:
        raise NotImplementedError

    def dim_of(self, R) -> int:
        raise NotImplementedError

    def label_of(self, R) -> str:
        raise NotImplementedError

    # -- handles ------------------------------------------------------------

    def type_maps(self, R) -> tuple[frozenset, frozenset, frozenset]:
        t = self.types(R)
        return t.lower, t.upper, t.full

    def face(self, R, sigma: CoxElem | None = None) -> SubFace:
        sigma = self.W.identity if sigma is None else sigma
        return SubFace(R, self.W.min_coset_rep(sigma, self.types(R).full, RIGHT))

    def translate(self, tau: CoxElem, f: SubFace) -> SubFace:
        return self.face(f.R, self.W.mul(tau, f.sigma))

    def label(self, f: SubFace) -> str:
        return self.label_of(f.R) + "@" + ",".join(map(str, f.sigma.word1()))

    def face_leq(self, f1: SubFace, f2: SubFace) -> bool:
        """``sigma1 R1`` is contained in ``sigma2 R2``."""
        if not self.upsilon_leq(f1.R, f2.R):
            return False
        rel = self.W.mul(self.W.inv(f1.sigma), f2.sigma)
        return self.W.in_product(rel, self.types(f1.R).lower, self.types(f2.R).upper)

    def meet_join(self, f1: SubFace, f2: SubFace) -> tuple[SubFace, SubFace]:
        memo = self.__dict__.setdefault("_meet_join_memo", {})
        key = (f1, f2)
        if key not in memo:
            memo[key] = self._meet_join(f1, f2)
        return memo[key]

    def _meet_join(self, f1: SubFace, f2: SubFace) -> tuple[SubFace, SubFace]:
        t1, t2 = self.types(f1.R), self.types(f2.R)
        rel = self.W.mul(self.W.inv(f1.sigma), f2.sigma)
        u, tau, _ = self.W.double_decompose(rel, t1.full, t2.full)
        base = self.W.mul(f1.sigma, u)
        red = self.W.red_support(tau)
        below = [
            R
            for R in self.upsilon()
            if self.upsilon_leq(R, f1.R) and self.upsilon_leq(R, f2.R) and red <= self.types(R).lower
        ]
        above = [
            R
            for R in self.upsilon()
            if self.upsilon_leq(f1.R, R) and self.upsilon_leq(f2.R, R) and red <= self.types(R).upper
        ]
        meet = _extreme(below, self.upsilon_leq)
        join = _extreme(above, lambda a, b: self.upsilon_leq(b, a))
        return self.face(meet, base), self.face(join, base)

    def meet(self, f1: SubFace, f2: SubFace) -> SubFace:
        return self.meet_join(f1, f2)[0]

    def join(self, f1: SubFace, f2: SubFace) -> SubFace:
        return self.meet_join(f1, f2)[1]

    # -- chains -------------------------------------------------------------

    def chain_normalize(self, chain: Sequence[SubFace]) -> tuple[CoxElem, list]:
        """``(sigma, [S_1, ..., S_m])`` with ``S_k`` in ``Upsilon`` and ``chain[k] = sigma S_k``."""
        chain = list(chain)
        if not chain:
            raise NotAChain("empty chain")
        for a, b in zip(chain, chain[1:]):
            if not self.face_leq(a, b):
                raise NotAChain(f"{self.label(a)} is not contained in {self.label(b)}")
        S = [f.R for f in chain]
        sigma = chain[-1].sigma
        for k in range(len(chain) - 2, -1, -1):
            rel = self.W.mul(self.W.inv(chain[k].sigma), sigma)
            split = self.W.split_product(rel, self.types(S[k]).lower, self.types(S[k + 1]).upper)
            assert split is not None
            _, b = split
            sigma = self.W.mul(sigma, self.W.inv(b))
        return sigma, S

    # -- generalized Renner monoid -------------------------------------------

    def renner(self, sigma: CoxElem, f: SubFace) -> RennerElem:
        kappa = self.W.min_coset_rep(self.W.mul(sigma, f.sigma), self.types(f.R).lower, RIGHT)
        return RennerElem(kappa, f)

    def renner_sigma(self, x: RennerElem) -> CoxElem:
        return self.W.mul(x.kappa, self.W.inv(x.face.sigma))

    def renner_mul(self, x: RennerElem, y: RennerElem) -> RennerElem:
        """``(sigma, F)(tau, G) = (sigma tau, tau^-1 F n G)``."""
        sigma, tau = self.renner_sigma(x), self.renner_sigma(y)
        moved = self.translate(self.W.inv(tau), x.face)
        return self.renner(self.W.mul(sigma, tau), self.meet(moved, y.face))

    def renner_unit(self) -> RennerElem:
        return self.renner(self.W.identity, self.face(self.top()))

    def is_idempotent(self, x: RennerElem) -> bool:
        return self.renner_mul(x, x) == x

    def is_unit(self, x: RennerElem) -> bool:
        return x.face.R == self.top()

    def is_faithful(self) -> bool:
        return not self.types(self.top()).lower

    def top(self):
        ups = self.upsilon()
        return _extreme(ups, self.upsilon_leq)

    def bottom(self):
        ups = self.upsilon()
        return _extreme(ups, lambda a, b: self.upsilon_leq(b, a))

    # -- checks on the cross-section only --------------------------------------

    def check_type_axioms(self) -> list[str]:
        """Separation, disjointness, faciality and monotonicity of the type maps."""
        bad = []
        g = self.W.g
        ups = self.upsilon()
        for R in ups:
            t = self.types(R)
            if t.lower & t.upper:
                bad.append(f"{self.label_of(R)}: lower and upper types overlap")
            if not cartan.separated(g, t.lower, t.upper):
                bad.append(f"{self.label_of(R)}: lower and upper types not separated")
            if not facial.is_facial(self.rb, t.lower):
                bad.append(f"{self.label_of(R)}: lower type not facial")
        for R1 in ups:
            for R2 in ups:
                if self.upsilon_leq(R1, R2):
                    t1, t2 = self.types(R1), self.types(R2)
                    if not (t1.lower >= t2.lower and t1.upper <= t2.upper):
                        bad.append(f"type maps not monotone on {self.label_of(R1)} <= {self.label_of(R2)}")
        return bad

    def check_codim_one(self) -> list[str]:
        """The four equivalent type equations on every codimension-one pair."""
        bad = []
        ups = self.upsilon()
        for R1 in ups:
            for R2 in ups:
                if not self.upsilon_leq(R1, R2) or self.dim_of(R1) != self.dim_of(R2) - 1:
                    continue
                t1, t2 = self.types(R1), self.types(R2)
                conds = [
                    not (t1.lower & t2.upper),
                    t2.lower == t1.lower & t2.full,
                    t1.upper == t1.full & t2.upper,
                    t1.full & t2.full == t1.upper | t2.lower,
                ]
                if not all(conds):
                    bad.append(f"codimension-one equations fail on {self.label_of(R1)} < {self.label_of(R2)}")
        return bad

    def saturated_chains(self) -> list[list]:
        """All chains in ``Upsilon`` whose dimensions go up by one at each step (length >= 2)."""
        ups = self.upsilon()
        step = {
            R: [S for S in ups if self.upsilon_leq(R, S) and self.dim_of(S) == self.dim_of(R) + 1] for R in ups
        }
        out = []

        def grow(chain):
            if len(chain) >= 2:
                out.append(list(chain))
            for S in step[chain[-1]]:
                grow(chain + [S])

        for R in ups:
            grow([R])
        return out

    def check_saturated_chains(self) -> list[str]:
        bad = []
        g = self.W.g
        for chain in self.saturated_chains():
            common = frozenset(range(g.n))
            for R in chain:
                common &= self.types(R).full
            first, last = self.types(chain[0]), self.types(chain[-1])
            if common != first.upper | last.lower or not cartan.separated(g, first.upper, last.lower):
                bad.append("type intersection along " + " < ".join(self.label_of(R) for R in chain))
        return bad

    def blocks(self) -> dict[frozenset, list]:
        """``Upsilon`` split by the nonfinite part of the lower type."""
        out: dict[frozenset, list] = {}
        for R in self.upsilon():
            out.setdefault(cartan.infinite_part(self.W.g, self.types(R).lower), []).append(R)
        return out

    def check_block_types(self) -> list[str]:
        """Within a block, ``upper(R1) u lower(R2)`` is the intersection of types over ``[R1, R2]``."""
        bad = []
        for theta, members in self.blocks().items():
            for R1 in members:
                for R2 in members:
                    if not self.upsilon_leq(R1, R2):
                        continue
                    common = frozenset(range(self.W.g.n))
                    for R in members:
                        if self.upsilon_leq(R1, R) and self.upsilon_leq(R, R2):
                            common &= self.types(R).full
                    if common != self.types(R1).upper | self.types(R2).lower:
                        bad.append(f"block {_label(theta)}: type intersection fails on [{self.label_of(R1)}, {self.label_of(R2)}]")
        return bad

    def interval_index_set(self, R1, R2) -> frozenset:
        if not self.upsilon_leq(R1, R2):
            raise NotComparable(f"{self.label_of(R1)} is not below {self.label_of(R2)}")
        return self.types(R1).lower & self.types(R2).upper

    def interval_stabilizer_bounds(self, R1, R2) -> tuple[frozenset, frozenset, frozenset]:
        """``(lower bound, middle part, setwise stabilizer)`` index sets for the interval."""
        t1, t2 = self.types(R1), self.types(R2)
        return t1.upper | t2.lower, t1.lower & t2.upper, t1.full & t2.full


def _extreme(items: list, leq):
    """The element of ``items`` that is ``leq``-above all others."""
    for a in items:
        if all(leq(b, a) for b in items):
            return a
    raise AssertionError("no extreme element")


# ---------------------------------------------------------------------------
# the Tits cone as an invariant subcone of itself


class BuiltinTits(InvariantCone):
    """``Y = X``: the cross-section is ``{R(theta)}`` with ``lower = theta``, ``upper = theta-perp``."""

    def __init__(self, rb: RootBase, tits: TitsCone | None = None):
        self.rb = rb
        self.tits = tits if tits is not None else TitsCone(rb)
        self.W = self.tits.W
        self._ups = list(self.tits.special)

    def upsilon(self) -> list:
        return self._ups

    def types(self, R) -> TypeData:
        R = frozenset(R)
        if R not in self.tits._special_set:
            raise NotInCrossSection(_label(R))
        return TypeData(R, cartan.perp(self.W.g, R))

    def types_from_hull(self, R) -> TypeData:
        """Type maps recomputed from the hull of ``R(theta)`` (second route)."""
        hull = self.tits.hull(self.tits.face(R))
        return _types_from_hull(self.rb, hull)

    def upsilon_leq(self, R1, R2) -> bool:
        return frozenset(R1) >= frozenset(R2)

    def dim_of(self, R) -> int:
        return self.tits.dim(self.tits.face(R))

    def label_of(self, R) -> str:
        return "R" + _label(R)

    def handles(self, depth: int) -> list[SubFace]:
        return [SubFace(f.theta, f.sigma) for f in self.tits.handles(depth)]


def _types_from_hull(rb: RootBase, hull: ex.Subspace) -> TypeData:
    lower = frozenset(i for i, h in enumerate(rb.hvecs) if all(ex.dot(b, h) == 0 for b in hull.basis))
    upper = frozenset(i for i, a in enumerate(rb.avecs) if hull.contains(a))
    return TypeData(lower, upper)


# ---------------------------------------------------------------------------
# polyhedral subcones for finite Weyl groups


class FinitePolyhedral(InvariantCone):
    """``Y = cc(W S)`` for finite ``W``, with its face lattice computed by double description.

    Faces of ``Y`` are indices into ``self.lattice``; the cross-section is a
    list of such indices.
    """

    def __init__(self, rb: RootBase, generators: Iterable[Sequence] = ()):
        g = rb.g
        if not cartan.is_finite_type(g, g.indices):
            raise InfiniteGroup("the Weyl group must be finite")
        self.rb = rb
        self.W = CoxeterGroup(rb)
        S = [ex.as_vec(s) for s in generators]
        for s in S:
            if len(s) != rb.dim:
                raise ex.DimensionMismatch(f"generator has length {len(s)}, expected {rb.dim}")
            if any(v < 0 for v in rb.chamber_values(s)):
                raise NotInChamber("generator is not in the closed chamber")
        self.S = S
        self.elements = self.W.enum_parabolic(g.indices)
        orbit = sorted({self.W.act_covector(w, s) for w in self.elements for s in S})
        self.cone = ex.PolyCone.from_generators(rb.dim, orbit)
        self.lattice = self.cone.faces()
        self.chamber = facial.chamber_cone(rb)
        self._action: dict[tuple, int] = {}
        self._simple_action = [[self._act_direct(self.W.simple(i), f) for f in range(len(self.lattice))] for i in range(g.n)]
        self._ups = [f for f in range(len(self.lattice)) if self._meets_chamber(f)]
        self._types = {f: _types_from_hull(rb, self.lattice.hull(f)) for f in self._ups}

    # -- face lattice plumbing ------------------------------------------------

    @property
    def num_faces(self) -> int:
        return len(self.lattice)

    def ri_point(self, f: int) -> ex.Vec:
        return self.lattice.face(f).interior_point()

    def _act_direct(self, w: CoxElem, f: int) -> int:
        return self.lattice.face_of_point(self.W.act_covector(w, self.ri_point(f)))

    def act(self, w: CoxElem, f: int) -> int:
        """Index of the face ``w F``."""
        key = (w, f)
        if key not in self._action:
            out = f
            for k in reversed(w.word):
                out = self._simple_action[k][out]
            self._action[key] = out
        return self._action[key]

    def _meets_chamber(self, f: int) -> bool:
        F = self.lattice.face(f)
        point = ex.find_point(F.equations, list(self.rb.hvecs), F.inequalities, dim=self.rb.dim)
        return point is not None

    def face_index(self, h: SubFace) -> int:
        return self.act(h.sigma, h.R)

    def handle_of(self, f: int) -> SubFace:
        """``(sigma, R)`` with ``R`` in the cross-section and ``F = sigma R``."""
        sigma, mu = normalize(self.W, self.ri_point(f), cap=len(self.elements) + 1)
        R = self.lattice.face_of_point(mu)
        if R not in self._types:
            raise NotInCrossSection(str(R))
        return self.face(R, sigma)

    # -- InvariantCone interface --------------------------------------------

    def upsilon(self) -> list:
        return self._ups

    def types(self, R) -> TypeData:
        if R not in self._types:
            raise NotInCrossSection(str(R))
        return self._types[R]

    def upsilon_leq(self, R1, R2) -> bool:
        return self.lattice.leq(R1, R2)

    def dim_of(self, R) -> int:
        return self.lattice.dims[R]

    def label_of(self, R) -> str:
        return f"F{R}"

    # -- sub-cones attached to faces -------------------------------------------

    def chamber_part(self, f: int) -> ex.PolyCone:
        return self.lattice.face(f).intersect(self.chamber)

    def facet_part(self, f: int, J: Iterable[int]) -> ex.PolyCone:
        """``F n closure(F_J)``."""
        eqs = [self.rb.hvecs[i] for i in sorted(J)]
        return self.chamber_part(f).intersect(ex.PolyCone.from_inequalities(self.rb.dim, (), eqs))

    # -- interval data ------------------------------------------------------

    def interval(self, R1: int, R2: int) -> "IntervalData":
        J = self.interval_index_set(R1, R2)
        F1, F2 = self.lattice.face(R1), self.lattice.face(R2)
        diff = ex.PolyCone.from_generators(self.rb.dim, F2.generators, F2.lineality + F1.generators + F1.lineality)
        members = [f for f in range(self.num_faces) if self.lattice.leq(R1, f) and self.lattice.leq(f, R2)]
        return IntervalData(self, R1, R2, J, diff, members)

    # -- checks -------------------------------------------------------------

    def check_cross_section(self) -> list[str]:
        """Each face is a translate of exactly one cross-section face; the cross-section is a sublattice."""
        bad = []
        ups = set(self._ups)
        for f in range(self.num_faces):
            reps = {self.act(self.W.inv(w), f) for w in self.elements} & ups
            if len(reps) != 1:
                bad.append(f"face {f} meets {len(reps)} cross-section faces in its orbit")
        for a in self._ups:
            for b in self._ups:
                if self.lattice.meet(a, b) not in ups or self.lattice.join(a, b) not in ups:
                    bad.append(f"cross-section not closed under meet/join at {a}, {b}")
        return bad

    def check_regular_type_map(self) -> list[str]:
        """Handles ``(R, sigma W_upsilon(R))`` are in bijection with faces."""
        bad = []
        handles = {self.face(R, w) for R in self._ups for w in self.elements}
        images = {self.face_index(h) for h in handles}
        if len(handles) != self.num_faces or len(images) != self.num_faces:
            bad.append(f"{len(handles)} handles for {self.num_faces} faces")
        for f in range(self.num_faces):
            if self.face_index(self.handle_of(f)) != f:
                bad.append(f"handle of face {f} does not map back")
        return bad

    def check_stabilizers(self) -> list[str]:
        """Pointwise and setwise stabilizers of cross-section faces are the parabolics of the type maps."""
        bad = []
        for R in self._ups:
            t = self.types(R)
            gens = self.lattice.generators(R) + list(self.cone.lineality)
            pointwise = {w for w in self.elements if all(self.W.act_covector(w, v) == v for v in gens)}
            setwise = {w for w in self.elements if self.act(w, R) == R}
            if pointwise != set(self.W.enum_parabolic(t.lower)):
                bad.append(f"pointwise stabilizer of {R} is not W_lower")
            if setwise != set(self.W.enum_parabolic(t.full)):
                bad.append(f"setwise stabilizer of {R} is not W_upsilon")
        return bad

    def check_decomposition(self) -> list[str]:
        """``R n C = R n F_lower``, ``R = W_upper (R n C)``, hulls, and a point of ``ri(R) n F_lower``."""
        bad = []
        dim = self.rb.dim
        for R in self._ups:
            t = self.types(R)
            F = self.lattice.face(R)
            RC = self.chamber_part(R)
            if RC != self.facet_part(R, t.lower):
                bad.append(f"{R}: chamber part differs from the facet part")
            spread = [self.W.act_covector(w, v) for w in self.W.enum_parabolic(t.upper) for v in RC.generators]
            if ex.PolyCone.from_generators(dim, spread, RC.lineality) != F:
                bad.append(f"{R}: W_upper translates of the chamber part do not rebuild the face")
            if RC.hull() != F.hull():
                bad.append(f"{R}: hull of the chamber part differs from the hull of the face")
            eqs = list(F.equations) + [self.rb.hvecs[i] for i in sorted(t.lower)]
            strict = list(F.inequalities) + [self.rb.hvecs[i] for i in range(self.rb.n) if i not in t.lower]
            if ex.find_point(eqs, (), strict, dim=dim) is None:
                bad.append(f"{R}: relative interior misses the open facet of the lower type")
        return bad

    def check_midpoints(self) -> list[str]:
        """Averaging over finite ``W_{J_f}``, ``J_f`` inside the upper type, lands in ``ri(R) n F_{lower u J_f}``."""
        bad = []
        for R in self._ups:
            t = self.types(R)
            F = self.lattice.face(R)
            x = self.chamber_part(R).interior_point()
            L = frozenset(i for i, v in enumerate(self.rb.chamber_values(x)) if v == 0)
            if not (t.lower <= L and L - t.lower <= t.upper):
                bad.append(f"{R}: chamber point outside the facet partition")
            for Jf in cartan.subsets(self.rb.n):
                if not Jf <= t.upper:
                    continue
                M = self.W.mid_projector(Jf)
                y = ex.vecmat(x, M, self.rb.dim)
                facet = frozenset(i for i, v in enumerate(self.rb.chamber_values(y)) if v == 0)
                if not F.in_relative_interior(y) or facet != t.lower | Jf or any(v < 0 for v in self.rb.chamber_values(y)):
                    bad.append(f"{R}: averaging over {_label(Jf)} misses its facet")
        return bad

    def check_inclusion_criteria(self) -> list[str]:
        """Cross-section inclusion versus chamber parts, and translated inclusion versus the lattice."""
        bad = []
        for R1 in self._ups:
            for R2 in self._ups:
                direct = self.lattice.leq(R1, R2)
                if direct != self.chamber_part(R2).contains_cone(self.chamber_part(R1)):
                    bad.append(f"inclusion {R1} <= {R2} disagrees with chamber parts")
                for w1 in self.elements:
                    for w2 in self.elements:
                        h1, h2 = self.face(R1, w1), self.face(R2, w2)
                        truth = self.lattice.leq(self.face_index(h1), self.face_index(h2))
                        if truth != self.face_leq(h1, h2):
                            bad.append(f"translated inclusion fails for {self.label(h1)}, {self.label(h2)}")
        return bad

    def check_lattice_oracle(self) -> list[str]:
        """Handle-level inclusion, meet and join agree with the face lattice on every pair of faces."""
        bad = []
        L = self.lattice
        handles = [self.handle_of(f) for f in range(self.num_faces)]
        for a in range(self.num_faces):
            for b in range(self.num_faces):
                ha, hb = handles[a], handles[b]
                if self.face_leq(ha, hb) != L.leq(a, b):
                    bad.append(f"leq disagrees on faces {a}, {b}")
                m, j = self.meet_join(ha, hb)
                if self.face_index(m) != L.meet(a, b):
                    bad.append(f"meet disagrees on faces {a}, {b}")
                if self.face_index(j) != L.join(a, b):
                    bad.append(f"join disagrees on faces {a}, {b}")
        return bad

    def all_chains(self, length: int) -> list[list[int]]:
        """All weakly increasing chains of faces with the given length."""
        up = {f: [g for g in range(self.num_faces) if self.lattice.leq(f, g)] for f in range(self.num_faces)}
        chains = [[f] for f in range(self.num_faces)]
        for _ in range(length - 1):
            chains = [c + [g] for c in chains for g in up[c[-1]]]
        return chains

    def check_chain_normalize(self, max_length: int = 3) -> list[str]:
        """Existence and uniqueness of the cross-section chain, exhaustively over ``W``."""
        bad = []
        ups = set(self._ups)
        for length in range(1, max_length + 1):
            for chain in self.all_chains(length):
                sigma, S = self.chain_normalize([self.handle_of(f) for f in chain])
                if [self.act(sigma, R) for R in S] != chain:
                    bad.append(f"chain {chain}: translate does not reproduce it")
                found = set()
                for w in self.elements:
                    pulled = tuple(self.act(self.W.inv(w), f) for f in chain)
                    if all(p in ups for p in pulled):
                        found.add(pulled)
                if found != {tuple(S)}:
                    bad.append(f"chain {chain}: cross-section chain not unique")
        return bad

    def covers(self) -> list[tuple[int, int]]:
        """Cover relations computed from the order alone."""
        L = self.lattice
        n = self.num_faces
        out = []
        for a in range(n):
            for b in range(n):
                if a != b and L.leq(a, b):
                    if not any(c not in (a, b) and L.leq(a, c) and L.leq(c, b) for c in range(n)):
                        out.append((a, b))
        return out

    def check_chain_lengths(self) -> list[str]:
        """Every maximal chain between comparable faces of a block has length dim difference + 1."""
        bad = []
        L = self.lattice
        for a, b in self.covers():
            if L.dims[b] != L.dims[a] + 1:
                bad.append(f"cover {a} < {b} jumps {L.dims[b] - L.dims[a]} dimensions")
        block_of = {}
        for theta, members in self.blocks().items():
            for R in members:
                block_of[R] = theta
        for f in range(self.num_faces):
            h = self.handle_of(f)
            block_of[f] = block_of[h.R]
        up = {a: [b for (x, b) in self.covers() if x == a] for a in range(self.num_faces)}

        def lengths(a, b):
            if a == b:
                return {1}
            out = set()
            for c in up[a]:
                if L.leq(c, b):
                    out |= {k + 1 for k in lengths(c, b)}
            return out

        for a in range(self.num_faces):
            for b in range(self.num_faces):
                if L.leq(a, b) and block_of[a] == block_of[b]:
                    if lengths(a, b) != {L.dims[b] - L.dims[a] + 1}:
                        bad.append(f"maximal chains from {a} to {b} have lengths {sorted(lengths(a, b))}")
        return bad

    def check_reflections(self) -> list[str]:
        """Every reflection fixes a face pointwise, fixes it as a whole, or puts it strictly on one side."""
        bad = []
        coroots = {}
        for w in self.elements:
            for i in range(self.rb.n):
                h = self.W.act_vector(w, self.rb.hvecs[i])
                if h not in coroots:
                    refl = self.W.mul(self.W.mul(w, self.W.simple(i)), self.W.inv(w))
                    coroots[h] = (self.W.act_covector(w, self.rb.avecs[i]), refl)
        for f in range(self.num_faces):
            F = self.lattice.face(f)
            hull = F.hull()
            ri = F.interior_point()
            gens = list(F.generators) + list(F.lineality) + [ex.neg(v) for v in F.lineality]
            for h, (alpha, refl) in coroots.items():
                pointwise = all(ex.dot(b, h) == 0 for b in hull.basis)
                whole = hull.contains(alpha) and not pointwise
                pos = all(ex.dot(v, h) >= 0 for v in gens) and ex.dot(ri, h) > 0
                neg = all(ex.dot(v, h) <= 0 for v in gens) and ex.dot(ri, h) < 0
                if [pointwise, whole, pos, neg].count(True) != 1:
                    bad.append(f"face {f}: reflection trichotomy fails for coroot {list(map(str, h))}")
                if (self.act(refl, f) == f) != (pointwise or whole):
                    bad.append(f"face {f}: whole-face fixing disagrees with the type test")
        return bad

    def check_intervals(self) -> list[str]:
        bad = []
        for R1 in self._ups:
            for R2 in self._ups:
                if self.lattice.leq(R1, R2):
                    bad += self.interval(R1, R2).check()
        return bad

    def check_tits_interval_stabilizers(self) -> list[str]:
        """Pointwise interval stabilizers lie between the parabolic bounds and use whole components."""
        bad = []
        for R1 in self._ups:
            for R2 in self._ups:
                if self.lattice.leq(R1, R2):
                    data = self.interval(R1, R2)
                    if data.middle_components() is None:
                        bad.append(f"[{R1}, {R2}]: pointwise stabilizer is not a parabolic of the expected form")
        return bad

    def renner_elements(self) -> list[RennerElem]:
        out = {}
        for f in range(self.num_faces):
            h = self.handle_of(f)
            for w in self.elements:
                out.setdefault(self.renner(w, h), None)
        return list(out)

    def check_renner(self) -> list[str]:
        """Associativity on the full table, unit, idempotents and units."""
        bad = []
        elems = self.renner_elements()
        index = {x: k for k, x in enumerate(elems)}
        expected = sum(len(self.elements) // len(self.W.enum_parabolic(self.types(self.handle_of(f).R).lower)) for f in range(self.num_faces))
        if len(elems) != expected:
            bad.append(f"{len(elems)} monoid elements, expected {expected}")
        table = [[index[self.renner_mul(x, y)] for y in elems] for x in elems]
        n = len(elems)
        for a in range(n):
            row = table[a]
            for b in range(n):
                # (ab)c = a(bc) for every c at once
                if table[row[b]] != [row[bc] for bc in table[b]]:
                    bad.append(f"associativity fails at {a}, {b}")
                    return bad
        unit = index[self.renner_unit()]
        if any(table[unit][a] != a or table[a][unit] != a for a in range(n)):
            bad.append("(1, Y) is not a two-sided unit")
        idem = [a for a in range(n) if table[a][a] == a]
        if len(idem) != self.num_faces:
            bad.append(f"{len(idem)} idempotents for {self.num_faces} faces")
        units = [a for a in range(n) if self.is_unit(elems[a])]
        if len(units) != len(self.elements) // len(self.W.enum_parabolic(self.types(self.top()).lower)):
            bad.append("unit group has the wrong size")
        return bad

    def contains_dual_imaginary(self) -> bool:
        """Each generator of ``-K^vee`` lies in ``Y``."""
        from .imagcone import dual_imaginary

        Kv = dual_imaginary(self.rb)
        vecs = list(Kv.generators) + list(Kv.lineality) + [ex.neg(v) for v in Kv.lineality]
        return all(self.cone.contains(ex.neg(v)) for v in vecs)

    def check_orbit_hull(self, lam: Sequence[Fraction]) -> list[str]:
        """``co(W lam) n C = (lam - sum R+ alpha_i) n C``, compared after homogenizing."""
        lam = ex.as_vec(lam)
        if any(v < 0 for v in self.rb.chamber_values(lam)):
            raise NotInChamber("orbit point is not in the closed chamber")
        dim = self.rb.dim
        lift = lambda v, t: tuple(v) + (Fraction(t),)
        chamber = ex.PolyCone.from_inequalities(dim + 1, [lift(h, 0) for h in self.rb.hvecs] + [ex.unit_vec(dim + 1, dim)])
        orbit = {self.W.act_covector(w, lam) for w in self.elements}
        left = ex.PolyCone.from_generators(dim + 1, [lift(p, 1) for p in sorted(orbit)]).intersect(chamber)
        right = ex.PolyCone.from_generators(
            dim + 1, [lift(lam, 1)] + [lift(ex.neg(a), 0) for a in self.rb.avecs]
        ).intersect(chamber)
        return [] if left == right else [f"orbit hull identity fails for {list(map(str, lam))}"]

    def all_checks(self) -> dict[str, list[str]]:
        out = {
            "cross_section": self.check_cross_section(),
            "type_axioms": self.check_type_axioms(),
            "regular_type_map": self.check_regular_type_map(),
            "stabilizers": self.check_stabilizers(),
            "decomposition": self.check_decomposition(),
            "midpoints": self.check_midpoints(),
            "inclusion": self.check_inclusion_criteria(),
            "lattice_oracle": self.check_lattice_oracle(),
            "chains": self.check_chain_normalize(),
            "codim_one": self.check_codim_one(),
            "saturated_chains": self.check_saturated_chains(),
            "block_types": self.check_block_types(),
            "chain_lengths": self.check_chain_lengths(),
            "reflections": self.check_reflections(),
            "intervals": self.check_intervals(),
            "renner": self.check_renner(),
        }
        if self.is_faithful():
            out["dual_imaginary"] = [] if self.contains_dual_imaginary() else ["-K^vee not contained in Y"]
        for s in self.S:
            out.setdefault("orbit_hull", []).extend(self.check_orbit_hull(s))
        return out


@dataclass
class IntervalData:
    Y: FinitePolyhedral
    R1: int
    R2: int
    J: frozenset
    cone: ex.PolyCone
    members: list[int]

    def shifted(self, f: int) -> ex.PolyCone:
        F = self.Y.lattice.face(f)
        F1 = self.Y.lattice.face(self.R1)
        return ex.PolyCone.from_generators(F.ambient_dim, F.generators, F.lineality + F1.generators + F1.lineality)

    def stabilizers(self) -> tuple[set, set]:
        """``(pointwise, setwise)`` stabilizers of the interval, by brute force over ``W``."""
        Y = self.Y
        members = set(self.members)
        pointwise = {w for w in Y.elements if all(Y.act(w, f) == f for f in self.members)}
        setwise = {w for w in Y.elements if {Y.act(w, f) for f in self.members} == members}
        return pointwise, setwise

    def middle_components(self) -> frozenset | None:
        """The union ``L`` of components of the middle part with pointwise stabilizer ``W_{bound u L}``."""
        Y = self.Y
        W = Y.W
        lower, middle, _ = Y.interval_stabilizer_bounds(self.R1, self.R2)
        pointwise, _ = self.stabilizers()
        comps = cartan.components(W.g, middle)
        for k in range(len(comps) + 1):
            for pick in itertools.combinations(comps, k):
                Lset = frozenset().union(*pick) if pick else frozenset()
                if pointwise == set(W.enum_parabolic(lower | Lset)):
                    return Lset
        return None

    def check(self) -> list[str]:
        Y = self.Y
        rb = Y.rb
        W = Y.W
        dim = rb.dim
        tag = f"[{self.R1}, {self.R2}]"
        bad = []
        # invariance under W_J
        for j in self.J:
            moved = ex.PolyCone.from_generators(
                dim, [W.act_covector(W.simple(j), v) for v in self.cone.generators], self.cone.lineality
            )
            if moved != self.cone:
                bad.append(f"{tag}: difference cone not invariant under s_{j + 1}")
        # chamber part of the difference cone
        sub_chamber = ex.PolyCone.from_inequalities(dim, [rb.hvecs[j] for j in sorted(self.J)])
        C2 = Y.chamber_part(self.R2)
        C1 = Y.chamber_part(self.R1)
        F1 = Y.lattice.face(self.R1)
        first = ex.PolyCone.from_generators(dim, C2.generators, C2.lineality + F1.generators + F1.lineality)
        second = ex.PolyCone.from_generators(dim, C2.generators + tuple(ex.neg(v) for v in C1.generators), C2.lineality + C1.lineality)
        if self.cone.intersect(sub_chamber) != first or first != second:
            bad.append(f"{tag}: chamber part of the difference cone is wrong")
        # order isomorphism onto the faces of the difference cone
        target = self.cone.faces()
        images = [self.shifted(f) for f in self.members]
        try:
            idx = [target.index_of(c) for c in images]
        except ex.PreconditionError:
            return bad + [f"{tag}: some shifted face is not a face of the difference cone"]
        if sorted(idx) != list(range(len(target))):
            bad.append(f"{tag}: shift map is not a bijection onto the faces of the difference cone")
        for a, ia in zip(self.members, idx):
            if Y.lattice.dims[a] != target.dims[ia]:
                bad.append(f"{tag}: shift map changes the dimension of face {a}")
            for b, ib in zip(self.members, idx):
                if Y.lattice.leq(a, b) != target.leq(ia, ib):
                    bad.append(f"{tag}: shift map is not an order isomorphism")
        # stabilizers
        lower, middle, full = Y.interval_stabilizer_bounds(self.R1, self.R2)
        t1, t2 = Y.types(self.R1), Y.types(self.R2)
        parts = [t1.upper, t2.lower, middle]
        if any(parts[x] & parts[y] for x in range(3) for y in range(x + 1, 3)) or t1.upper | t2.lower | middle != full:
            bad.append(f"{tag}: the three-part decomposition of the common type fails")
        pointwise, setwise = self.stabilizers()
        if setwise != set(W.enum_parabolic(full)):
            bad.append(f"{tag}: setwise stabilizer is not W of the common type")
        if not set(W.enum_parabolic(lower)) <= pointwise <= setwise:
            bad.append(f"{tag}: pointwise stabilizer outside its bounds")
        return bad


def build_Y(rb: RootBase, kind: str = "tits", generators: Iterable[Sequence] = ()) -> InvariantCone:
    if kind == "tits":
        return BuiltinTits(rb)
    if kind == "polyhedral":
        return FinitePolyhedral(rb, generators)
    raise ValueError(f"unknown subcone kind {kind!r}")


__all__ = [
    "BuiltinTits",
    "FinitePolyhedral",
    "IntervalData",
    "InvariantCone",
    "InfiniteGroup",
    "NotAChain",
    "NotComparable",
    "NotInChamber",
    "NotInCrossSection",
    "NotSpecialFacial",
    "RennerElem",
    "SubFace",
    "TypeData",
    "build_Y",
]
