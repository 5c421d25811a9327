"""Realizations of a generalized Cartan matrix with a prescribed characteristic.

A realization lives in ``Q^dim``.  The coroots ``h_i`` are column vectors and
the roots ``alpha_i`` are row covectors, paired by the dot product, with
``alpha_j(h_i) = a_ij``.  The characteristic is ``(L_h, L_alpha, d)``: the
linear relations among the coroots, those among the roots, and the defect.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import exactla as ex
from .cartan import GCM


class RootBaseViolation(ValueError):
    """The coroot relations meet the nonnegative orthant."""


class CharacteristicError(ValueError):
    """Requested relation spaces are not contained in the right kernels."""


@dataclass(frozen=True)
class RootBase:
    g: GCM
    dim: int
    hvecs: ex.Mat
    avecs: ex.Mat
    L_h: ex.Subspace
    L_alpha: ex.Subspace
    d: int

    @property
    def n(self) -> int:
        return self.g.n

    def pair(self, covector: Sequence[Fraction], vector: Sequence[Fraction]) -> Fraction:
        return ex.dot(covector, vector)

    def coroot_matrix(self) -> ex.Mat:
        """dim x n matrix whose columns are the coroots."""
        return ex.transpose(self.hvecs, self.dim)

    def root_matrix(self) -> ex.Mat:
        """n x dim matrix whose rows are the roots."""
        return self.avecs

    def coroot_combination(self, r: Sequence[Fraction]) -> ex.Vec:
        return ex.lincomb(ex.as_vec(r), self.hvecs, self.dim)

    def root_combination(self, s: Sequence[Fraction]) -> ex.Vec:
        return ex.lincomb(ex.as_vec(s), self.avecs, self.dim)

    def chamber_values(self, lam: Sequence[Fraction]) -> ex.Vec:
        """``(lam(h_1), ..., lam(h_n))`` for a covector ``lam``."""
        return tuple(ex.dot(lam, h) for h in self.hvecs)

    def root_values(self, h: Sequence[Fraction]) -> ex.Vec:
        """``(alpha_1(h), ..., alpha_n(h))`` for a vector ``h``."""
        return tuple(ex.dot(a, h) for a in self.avecs)

    def is_free(self) -> bool:
        return self.L_h.dim == 0 and self.L_alpha.dim == 0


def _subspace(vectors, n: int) -> ex.Subspace:
    if isinstance(vectors, ex.Subspace):
        return vectors
    return ex.Subspace.span(list(vectors or ()), n)


def _right_inverse_on_rows(B: Sequence[ex.Vec], E: Sequence[ex.Vec], n: int) -> ex.Mat:
    """The solution Y of ``B Y = E`` whose columns lie in the row space of B."""
    if not B:
        return tuple(() for _ in range(n))
    gram = ex.matmul(B, ex.transpose(B))
    Z = ex.matmul(ex.inverse(gram), E)
    return ex.matmul(ex.transpose(B), Z)


def build(g: GCM, L_h=(), L_alpha=(), d: int = 0) -> RootBase:
    """Explicit realization with characteristic ``(L_h, L_alpha, d)``.

    Coordinates are assembled in three blocks: the coroots span the first
    block, a complement of ``L_alpha`` in ker(A) is dualised in the second,
    and the defect adds ``d`` zero coordinates.
    """
    n = g.n
    A = g.A
    At = ex.transpose(A)
    Lh = _subspace(L_h, n)
    La = _subspace(L_alpha, n)
    if d < 0:
        raise CharacteristicError("defect must be nonnegative")
    for r in Lh.basis:
        if not ex.is_zero(ex.matvec(At, r)):
            raise CharacteristicError("L_h is not contained in ker(A^T)")
    for s in La.basis:
        if not ex.is_zero(ex.matvec(A, s)):
            raise CharacteristicError("L_alpha is not contained in ker(A)")
    if Lh.dim and ex.feasible([], _orthant_rows(Lh), [_sum_row(Lh)], dim=Lh.dim):
        raise RootBaseViolation("L_h meets the nonnegative orthant")

    P = list(Lh.annihilator().basis)  # rows spanning the annihilator of L_h
    p = len(P)
    # X P = A^T, P has full row rank
    X = [ex.solve(ex.transpose(P, n), At[j], p) for j in range(n)]
    assert all(x is not None for x in X)

    kerA = ex.kernel_basis(A, n)
    comp = []
    span = ex.Subspace.span(La.basis, n)
    for v in kerA:
        if not span.contains(v):
            comp.append(v)
            span = ex.Subspace.span(list(span.basis) + [v], n)
    B = list(La.basis) + comp
    q = len(comp)
    E = [ex.zero_vec(q) for _ in La.basis] + [ex.unit_vec(q, u) for u in range(q)]
    Y = _right_inverse_on_rows(B, E, n)

    dim = p + q + d
    hvecs = tuple(tuple(P[k][i] for k in range(p)) + ex.zero_vec(q + d) for i in range(n))
    avecs = tuple(tuple(X[j]) + tuple(Y[j]) + ex.zero_vec(d) for j in range(n))
    rb = RootBase(g, dim, hvecs, avecs, Lh, La, d)
    for i in range(n):
        for j in range(n):
            assert ex.dot(avecs[j], hvecs[i]) == A[i][j]
    return rb


def _orthant_rows(Lh: ex.Subspace) -> list[ex.Vec]:
    # r = sum y_t b_t; rows expressing r_i >= 0 in the y coordinates
    return [tuple(b[i] for b in Lh.basis) for i in range(Lh.ambient_dim)]


def _sum_row(Lh: ex.Subspace) -> ex.Vec:
    return tuple(sum(b, Fraction(0)) for b in Lh.basis)


def free(g: GCM, d: int = 0) -> RootBase:
    return build(g, (), (), d)


def characteristic(rb: RootBase) -> tuple[ex.Subspace, ex.Subspace, int]:
    n = rb.n
    L_h = ex.Subspace.span(ex.kernel_basis(rb.coroot_matrix(), n), n)
    L_alpha = ex.Subspace.span(ex.left_kernel_basis(rb.avecs, n), n)
    rk = ex.rank(rb.g.A, n)
    k1 = n - rk
    k2 = n - rk
    d = rb.dim - rk - (k1 - L_h.dim) - (k2 - L_alpha.dim)
    return L_h, L_alpha, d


@dataclass(frozen=True)
class RealizationMorphism:
    """A linear map ``phi`` (target_dim x source_dim) with phi(h_i) = h'_i and phi*(alpha'_i) = alpha_i."""

    source: RootBase
    target: RootBase
    phi: ex.Mat

    def check(self) -> bool:
        n = self.source.n
        for i in range(n):
            if ex.matvec(self.phi, self.source.hvecs[i]) != self.target.hvecs[i]:
                return False
            if ex.vecmat(self.target.avecs[i], self.phi, self.source.dim) != self.source.avecs[i]:
                return False
        return True

    def kernel(self) -> ex.Subspace:
        return ex.Subspace.span(ex.kernel_basis(self.phi, self.source.dim), self.source.dim)

    def image(self) -> ex.Subspace:
        return ex.Subspace.span(ex.transpose(self.phi, self.source.dim), self.target.dim)

    def is_injective(self) -> bool:
        return self.kernel().dim == 0

    def is_surjective(self) -> bool:
        return self.image().dim == self.target.dim

    def map_vector(self, v: Sequence[Fraction]) -> ex.Vec:
        return ex.matvec(self.phi, v)

    def pull_covector(self, lam: Sequence[Fraction]) -> ex.Vec:
        return ex.vecmat(lam, self.phi, self.source.dim)


@dataclass(frozen=True)
class FreeCover:
    free: RootBase
    middle: RootBase
    base: RootBase
    phi: RealizationMorphism
    psi: RealizationMorphism


def free_cover(rb: RootBase) -> FreeCover:
    """Free realization mapping onto a middle realization that contains ``rb``.

    ``phi``: free -> middle is surjective with kernel spanned by the coroot
    relations; ``psi``: rb -> middle is injective with image the annihilator
    of the root relations.  The middle realization has characteristic
    ``(L_h, 0, d)``.
    """
    g, n, d = rb.g, rb.n, rb.d
    top = build(g, (), (), d)
    mid = build(g, rb.L_h, (), d)
    p_mid = mid.dim - (top.dim - n)  # coroot block of the middle realization
    q = top.dim - n - d
    P = [tuple(mid.hvecs[i][k] for i in range(n)) for k in range(p_mid)]
    phi_rows = [P[k] + ex.zero_vec(q + d) for k in range(p_mid)]
    for t in range(q + d):
        phi_rows.append(ex.zero_vec(n) + ex.unit_vec(q + d, t))
    phi = RealizationMorphism(top, mid, tuple(phi_rows))

    # psi: identity on the coroot and defect blocks, K Y on the root block
    kerA = ex.kernel_basis(g.A, n)
    q_rb = rb.dim - p_mid - d
    Y_rb = [rb.avecs[j][p_mid : p_mid + q_rb] for j in range(n)]
    T = ex.matmul(kerA, Y_rb, q_rb) if kerA else ()
    psi_rows = []
    for k in range(p_mid):
        psi_rows.append(ex.unit_vec(rb.dim, k))
    for u in range(q):
        psi_rows.append(ex.zero_vec(p_mid) + tuple(T[u]) + ex.zero_vec(d))
    for t in range(d):
        psi_rows.append(ex.unit_vec(rb.dim, p_mid + q_rb + t))
    psi = RealizationMorphism(rb, mid, tuple(psi_rows))
    return FreeCover(top, mid, rb, phi, psi)


def exceptional_indices(rb: RootBase) -> tuple[frozenset, frozenset]:
    """``(I_0, I_1)``: I_0 is the largest support of a nonnegative root relation."""
    n = rb.n
    La = rb.L_alpha
    if La.dim == 0:
        return frozenset(), frozenset(range(n))
    rows = _orthant_rows(La)
    I0 = frozenset(i for i in range(n) if ex.feasible([], rows, [rows[i]], dim=La.dim))
    return I0, frozenset(range(n)) - I0


def relation_vectors(rb: RootBase) -> list[ex.Vec]:
    """Basis of L_h as coefficient vectors."""
    return list(rb.L_h.basis)


def random_characteristic(g: GCM, rng, max_defect: int = 2) -> tuple[list[ex.Vec], list[ex.Vec], int]:
    """A random valid characteristic, used by tests and scripts.

    Subspaces are spanned by random integer combinations of kernel bases;
    ``L_h`` is redrawn until it avoids the nonnegative orthant.
    """
    n = g.n
    kT = ex.kernel_basis(ex.transpose(g.A), n)
    kA = ex.kernel_basis(g.A, n)

    def pick(basis):
        if not basis:
            return []
        k = rng.randint(0, len(basis))
        return [
            ex.lincomb([Fraction(rng.randint(-3, 3)) for _ in basis], basis, n) for _ in range(k)
        ]

    for _ in range(50):
        Lh = [v for v in pick(kT) if not ex.is_zero(v)]
        S = ex.Subspace.span(Lh, n)
        if S.dim == 0 or not ex.feasible([], _orthant_rows(S), [_sum_row(S)], dim=S.dim):
            break
    else:
        Lh = []
    La = [v for v in pick(kA) if not ex.is_zero(v)]
    return Lh, La, rng.randint(0, max_defect)
