"""Generalized Cartan matrices: validation, Coxeter labels, components and types."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from . import exactla as ex

FIN = "Fin"
AFF = "Aff"
IND = "Ind"

HYP0 = "hyp0"
HYP1 = "hyp1"
NEITHER = "neither"

# a_ij * a_ji -> m_ij for the products that are rational values of 4 cos^2(pi/m)
_LABELS = {Fraction(0): 2, Fraction(1): 3, Fraction(2): 4, Fraction(3): 6}


class NotGCM(ValueError):
    def __init__(self, i: int, j: int, reason: str):
        super().__init__(f"entry ({i + 1},{j + 1}): {reason}")
        self.i = i
        self.j = j
        self.reason = reason


class ClassificationError(RuntimeError):
    """The finite/affine/indefinite trichotomy failed, which means the input is not a GCM."""


Subset = frozenset


@dataclass(frozen=True)
class GCM:
    """A validated generalized Cartan matrix.

    ``m[i][j]`` is the Coxeter label, ``None`` standing for infinity.
    """

    A: ex.Mat
    m: tuple[tuple[int | None, ...], ...]

    @property
    def n(self) -> int:
        return len(self.A)

    @property
    def indices(self) -> frozenset:
        return frozenset(range(self.n))

    def adjacent(self, i: int, j: int) -> bool:
        return self.A[i][j] != 0

    def neighbours(self, i: int) -> frozenset:
        return frozenset(j for j in range(self.n) if j != i and self.A[i][j] != 0)

    def submatrix(self, J: Iterable[int]) -> ex.Mat:
        idx = sorted(J)
        return tuple(tuple(self.A[i][j] for j in idx) for i in idx)


def validate(A: Sequence[Sequence]) -> GCM:
    M = ex.as_mat(A)
    n = len(M)
    for i, row in enumerate(M):
        if len(row) != n:
            raise NotGCM(i, 0, "matrix is not square")
    m = [[1] * n for _ in range(n)]
    for i in range(n):
        if M[i][i] != 2:
            raise NotGCM(i, i, "diagonal entry is not 2")
        for j in range(i + 1, n):
            a, b = M[i][j], M[j][i]
            if (a == 0) != (b == 0):
                raise NotGCM(i, j, "a_ij and a_ji must be both zero or both negative")
            if a > 0 or b > 0:
                raise NotGCM(i, j, "off-diagonal entries must be nonpositive")
            p = a * b
            if p >= 4:
                label = None
            elif p in _LABELS:
                label = _LABELS[p]
            else:
                raise NotGCM(i, j, f"product a_ij*a_ji = {p} is not 4cos^2(pi/m) for a rational entry")
            m[i][j] = m[j][i] = label
    return GCM(M, tuple(tuple(r) for r in m))


def components(g: GCM, J: Iterable[int]) -> list[frozenset]:
    """Connected components of ``J`` under adjacency, ordered by smallest element."""
    rest = set(J)
    out = []
    while rest:
        start = min(rest)
        comp = {start}
        stack = [start]
        rest.discard(start)
        while stack:
            i = stack.pop()
            for j in list(rest):
                if g.A[i][j] != 0:
                    rest.discard(j)
                    comp.add(j)
                    stack.append(j)
        out.append(frozenset(comp))
    out.sort(key=min)
    return out


def is_connected(g: GCM, J: Iterable[int]) -> bool:
    return len(components(g, J)) == 1


@lru_cache(maxsize=None)
def _component_type(A: ex.Mat, K: frozenset) -> str:
    idx = sorted(K)
    sub = [[A[i][j] for j in idx] for i in idx]
    k = len(idx)
    pos = [ex.unit_vec(k, t) for t in range(k)]
    fin = ex.feasible([], [], pos + [tuple(r) for r in sub], dim=k)
    aff = ex.feasible([tuple(r) for r in sub], [], pos, dim=k)
    ind = ex.feasible([], [], pos + [ex.neg(tuple(r)) for r in sub], dim=k)
    if fin + aff + ind != 1:
        raise ClassificationError(f"trichotomy fails on {sorted(i + 1 for i in K)}")
    return FIN if fin else AFF if aff else IND


def component_type(g: GCM, K: Iterable[int]) -> str:
    """Type of a connected subset."""
    K = frozenset(K)
    if not K or not is_connected(g, K):
        raise ValueError("component_type needs a nonempty connected subset")
    return _component_type(g.A, K)


@dataclass(frozen=True)
class Classification:
    components: tuple[tuple[frozenset, str], ...]

    def _union(self, label: str) -> frozenset:
        return frozenset().union(*[K for K, t in self.components if t == label])

    @property
    def finite(self) -> frozenset:
        return self._union(FIN)

    @property
    def affine(self) -> frozenset:
        return self._union(AFF)

    @property
    def indefinite(self) -> frozenset:
        return self._union(IND)

    @property
    def infinite(self) -> frozenset:
        return self.affine | self.indefinite


def classify(g: GCM, J: Iterable[int] | None = None) -> Classification:
    J = g.indices if J is None else frozenset(J)
    return Classification(tuple((K, _component_type(g.A, K)) for K in components(g, J)))


def finite_part(g: GCM, J: Iterable[int]) -> frozenset:
    return classify(g, J).finite


def affine_part(g: GCM, J: Iterable[int]) -> frozenset:
    return classify(g, J).affine


def indefinite_part(g: GCM, J: Iterable[int]) -> frozenset:
    return classify(g, J).indefinite


def infinite_part(g: GCM, J: Iterable[int]) -> frozenset:
    return classify(g, J).infinite


def is_finite_type(g: GCM, J: Iterable[int]) -> bool:
    J = frozenset(J)
    return finite_part(g, J) == J


def is_special(g: GCM, J: Iterable[int]) -> bool:
    J = frozenset(J)
    return infinite_part(g, J) == J


def perp(g: GCM, J: Iterable[int]) -> frozenset:
    """Indices not adjacent to any element of ``J``."""
    J = frozenset(J)
    return frozenset(i for i in range(g.n) if all(g.A[i][j] == 0 for j in J))


def separated(g: GCM, J: Iterable[int], K: Iterable[int]) -> bool:
    K = frozenset(K)
    return all(g.A[j][k] == 0 for j in J for k in K)


def _only_fin_aff(g: GCM, J: frozenset) -> bool:
    return not classify(g, J).indefinite


def hyperbolic_class(g: GCM, J: Iterable[int]) -> str:
    J = frozenset(J)
    if not J or not is_connected(g, J) or _component_type(g.A, J) != IND:
        raise ValueError("hyperbolic_class needs a connected subset of indefinite type")
    if all(_only_fin_aff(g, J - {i}) for i in J):
        return HYP0
    if all(_only_fin_aff(g, J - {i, j}) for i, j in combinations(sorted(J), 2)):
        return HYP1
    return NEITHER


def affine_kernel_vector(g: GCM, K: Iterable[int]) -> dict[int, Fraction]:
    """The primitive positive vector k with ``A_K^T k = 0`` for an affine component."""
    K = frozenset(K)
    if component_type(g, K) != AFF:
        raise ValueError("not an affine component")
    idx = sorted(K)
    AT = ex.transpose(g.submatrix(K))
    basis = ex.kernel_basis(AT, len(idx))
    if len(basis) != 1 or not all(x > 0 for x in basis[0]):
        raise ClassificationError("affine component without a positive corank-one kernel")
    return dict(zip(idx, basis[0]))


def subsets(n: int) -> list[frozenset]:
    """All subsets of range(n), ordered by size then lexicographically."""
    out = []
    for k in range(n + 1):
        out.extend(frozenset(c) for c in combinations(range(n), k))
    return out
