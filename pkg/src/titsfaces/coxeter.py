"""Coxeter group elements as exact matrices.

Elements act on coroot coefficient space ``Q^n``: the simple reflection
``s_k`` sends ``h_i`` to ``h_i - a_ik h_k``.  This is the action on the span of
the coroots of a free realization, which is faithful, so matrix equality
decides group equality and coefficient signs decide descents.  Actions on
the vectors and covectors of a concrete root base are derived from words.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import cartan
from . import exactla as ex
from .cartan import GCM
from .realization import RootBase

LEFT = "left"
RIGHT = "right"


class InfiniteParabolic(ValueError):
    """A parabolic subgroup with a nonfinite component cannot be listed."""


@dataclass(frozen=True, eq=False)
class CoxElem:
    mat: ex.Mat
    word: tuple[int, ...]
    W: "CoxeterGroup" = field(repr=False)
    _hash: int = field(init=False, repr=False, default=0)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(self.mat))

    def __eq__(self, other) -> bool:
        return self is other or (isinstance(other, CoxElem) and self._hash == other._hash and self.mat == other.mat)

    def __hash__(self) -> int:
        return self._hash

    def __mul__(self, other: "CoxElem") -> "CoxElem":
        return self.W.mul(self, other)

    def inverse(self) -> "CoxElem":
        return self.W.inv(self)

    @property
    def length(self) -> int:
        return len(self.word)

    def is_identity(self) -> bool:
        return not self.word

    def word1(self) -> list[int]:
        """Reduced word with 1-based letters."""
        return [i + 1 for i in self.word]


class CoxeterGroup:
    """The Coxeter group of a GCM, optionally tied to a root base for geometric actions."""

    def __init__(self, base: RootBase | GCM):
        if isinstance(base, RootBase):
            self.rb: RootBase | None = base
            self.g = base.g
        else:
            self.rb = None
            self.g = base
        n = self.g.n
        self.n = n
        A = self.g.A
        self.simple_mats: list[ex.Mat] = []
        for k in range(n):
            rows = [list(r) for r in ex.identity(n)]
            for i in range(n):
                rows[k][i] -= A[i][k]
            self.simple_mats.append(tuple(tuple(r) for r in rows))
        self._id = CoxElem(ex.identity(n), (), self)
        self._memo: dict[ex.Mat, CoxElem] = {self._id.mat: self._id}
        # caches keyed by elements (memoized above, so hashing is cheap)
        self._inv_cache: dict[CoxElem, CoxElem] = {}
        self._mul_cache: dict[tuple, CoxElem] = {}
        self._ldesc_cache: dict[CoxElem, frozenset] = {}
        self._coset_cache: dict[tuple, tuple] = {}
        self._double_cache: dict[tuple, tuple] = {}
        self._h_mats: dict[int, ex.Mat] = {}
        if self.rb is not None:
            rb = self.rb
            for k in range(n):
                hk, ak = rb.hvecs[k], rb.avecs[k]
                self._h_mats[k] = tuple(
                    tuple((ex.ONE if r == c else ex.ZERO) - hk[r] * ak[c] for c in range(rb.dim))
                    for r in range(rb.dim)
                )

    # -- construction ------------------------------------------------------

    @property
    def identity(self) -> CoxElem:
        return self._id

    def simple(self, i: int) -> CoxElem:
        return self.from_word((i,))

    def _inverse_mat(self, word: Sequence[int]) -> ex.Mat:
        M = ex.identity(self.n)
        for k in word:
            M = ex.matmul(self.simple_mats[k], M)
        return M

    def _normal_form(self, mat: ex.Mat) -> tuple[int, ...]:
        """ShortLex reduced word: repeatedly peel the smallest left descent."""
        n = self.n
        word: list[int] = []
        inv = ex.inverse(mat)
        while True:
            k = next((i for i in range(n) if _col_nonpositive(inv, i)), None)
            if k is None:
                break
            word.append(k)
            inv = ex.matmul(inv, self.simple_mats[k])
        return tuple(word)

    def from_mat(self, mat: ex.Mat) -> CoxElem:
        hit = self._memo.get(mat)
        if hit is None:
            hit = self._memo[mat] = CoxElem(mat, self._normal_form(mat), self)
        return hit

    def from_word(self, word: Iterable[int]) -> CoxElem:
        M = ex.identity(self.n)
        for k in word:
            if not 0 <= k < self.n:
                raise ValueError(f"letter {k + 1} outside 1..{self.n}")
            M = ex.matmul(M, self.simple_mats[k])
        return self.from_mat(M)

    def from_word1(self, word: Iterable[int]) -> CoxElem:
        return self.from_word([i - 1 for i in word])

    def mul(self, a: CoxElem, b: CoxElem) -> CoxElem:
        if b.is_identity():
            return a
        if a.is_identity():
            return b
        key = (a, b)
        hit = self._mul_cache.get(key)
        if hit is None:
            hit = self._mul_cache[key] = self.from_mat(ex.matmul(a.mat, b.mat))
        return hit

    def inv(self, a: CoxElem) -> CoxElem:
        hit = self._inv_cache.get(a)
        if hit is None:
            hit = self.from_mat(self._inverse_mat(a.word))
            self._inv_cache[a] = hit
            self._inv_cache[hit] = a
        return hit

    def rmul_simple(self, a: CoxElem, i: int) -> CoxElem:
        return self.from_mat(ex.matmul(a.mat, self.simple_mats[i]))

    def lmul_simple(self, i: int, a: CoxElem) -> CoxElem:
        return self.from_mat(ex.matmul(self.simple_mats[i], a.mat))

    # -- descents ----------------------------------------------------------

    def right_descents(self, a: CoxElem) -> frozenset:
        return frozenset(i for i in range(self.n) if _col_nonpositive(a.mat, i))

    def left_descents(self, a: CoxElem) -> frozenset:
        hit = self._ldesc_cache.get(a)
        if hit is None:
            inv = self._inverse_mat(a.word)
            hit = self._ldesc_cache[a] = frozenset(i for i in range(self.n) if _col_nonpositive(inv, i))
        return hit

    def length_descents(self, a: CoxElem) -> tuple[int, frozenset, frozenset]:
        return a.length, self.left_descents(a), self.right_descents(a)

    def red_support(self, a: CoxElem) -> frozenset:
        return frozenset(a.word)

    # -- cosets ------------------------------------------------------------

    def coset_decompose(self, a: CoxElem, J: Iterable[int], side: str = LEFT) -> tuple[CoxElem, CoxElem]:
        """``(u, x)`` with x minimal in its coset.

        ``left``: a = u x with u in W_J and x minimal in W_J a.
        ``right``: a = x u with u in W_J and x minimal in a W_J.
        """
        J = frozenset(J)
        key = (a, J, side)
        hit = self._coset_cache.get(key)
        if hit is None:
            hit = self._coset_cache[key] = self._coset_decompose(a, J, side)
        return hit

    def _coset_decompose(self, a: CoxElem, J: frozenset, side: str) -> tuple[CoxElem, CoxElem]:
        x = a
        peeled: list[int] = []
        while True:
            desc = (self.left_descents(x) if side == LEFT else self.right_descents(x)) & J
            if not desc:
                break
            k = min(desc)
            peeled.append(k)
            x = self.lmul_simple(k, x) if side == LEFT else self.rmul_simple(x, k)
        u = self.from_word(peeled if side == LEFT else reversed(peeled))
        return u, x

    def min_coset_rep(self, a: CoxElem, J: Iterable[int], side: str = LEFT) -> CoxElem:
        return self.coset_decompose(a, J, side)[1]

    def double_decompose(self, a: CoxElem, J: Iterable[int], K: Iterable[int]) -> tuple[CoxElem, CoxElem, CoxElem]:
        """``(u, x, v)`` with a = u x v, u in W_J, v in W_K, x minimal in W_J a W_K."""
        J, K = frozenset(J), frozenset(K)
        key = (a, J, K)
        hit = self._double_cache.get(key)
        if hit is None:
            hit = self._double_cache[key] = self._double_decompose(a, J, K)
        return hit

    def _double_decompose(self, a: CoxElem, J: frozenset, K: frozenset) -> tuple[CoxElem, CoxElem, CoxElem]:
        left: list[int] = []
        right: list[int] = []
        x = a
        while True:
            dl = self.left_descents(x) & J
            if dl:
                k = min(dl)
                left.append(k)
                x = self.lmul_simple(k, x)
                continue
            dr = self.right_descents(x) & K
            if dr:
                k = min(dr)
                right.append(k)
                x = self.rmul_simple(x, k)
                continue
            break
        return self.from_word(left), x, self.from_word(reversed(right))

    def min_double_rep(self, a: CoxElem, J: Iterable[int], K: Iterable[int]) -> CoxElem:
        return self.double_decompose(a, J, K)[1]

    def in_product(self, a: CoxElem, J: Iterable[int], K: Iterable[int]) -> bool:
        """Whether ``a`` lies in ``W_J W_K``."""
        return self.min_double_rep(a, J, K).is_identity()

    def split_product(self, a: CoxElem, J: Iterable[int], K: Iterable[int]) -> tuple[CoxElem, CoxElem] | None:
        """``(u, v)`` with a = u v, u in W_J, v in W_K, or None."""
        u, x = self.coset_decompose(a, J, LEFT)
        if not set(x.word) <= set(K):
            return None
        return u, x

    def in_parabolic(self, a: CoxElem, J: Iterable[int]) -> bool:
        return set(a.word) <= set(J)

    # -- enumeration -------------------------------------------------------

    def enum_parabolic(self, J: Iterable[int]) -> list[CoxElem]:
        J = frozenset(J)
        if not cartan.is_finite_type(self.g, J):
            raise InfiniteParabolic(sorted(i + 1 for i in J))
        return self.ball(J, None)

    def ball(self, J: Iterable[int] | None = None, depth: int | None = None) -> list[CoxElem]:
        """Elements of ``W_J`` with length at most ``depth`` (all of them if None), by BFS."""
        gens = sorted(range(self.n) if J is None else J)
        seen = {self._id.mat: self._id}
        order = [self._id]
        frontier = [self._id]
        level = 0
        while frontier and (depth is None or level < depth):
            nxt = []
            for a in frontier:
                for k in gens:
                    m = ex.matmul(a.mat, self.simple_mats[k])
                    if m in seen:
                        continue
                    b = self.from_mat(m)
                    seen[m] = b
                    nxt.append(b)
            nxt.sort(key=lambda e: e.word)
            order.extend(nxt)
            frontier = nxt
            level += 1
        return order

    # -- geometric actions -------------------------------------------------

    def _need_rb(self) -> RootBase:
        if self.rb is None:
            raise ValueError("this group is not attached to a root base")
        return self.rb

    def h_matrix(self, a: CoxElem) -> ex.Mat:
        """Matrix of ``a`` acting on column vectors of the root base's space."""
        rb = self._need_rb()
        M = ex.identity(rb.dim)
        for k in a.word:
            M = ex.matmul(M, self._h_mats[k])
        return M

    def act_vector(self, a: CoxElem, v: Sequence[Fraction]) -> ex.Vec:
        rb = self._need_rb()
        v = ex.as_vec(v)
        for k in reversed(a.word):
            v = ex.sub(v, ex.scale(ex.dot(rb.avecs[k], v), rb.hvecs[k]))
        return v

    def act_covector(self, a: CoxElem, lam: Sequence[Fraction]) -> ex.Vec:
        """``a`` applied to a covector: ``s_k lam = lam - lam(h_k) alpha_k``."""
        rb = self._need_rb()
        lam = ex.as_vec(lam)
        for k in reversed(a.word):
            lam = ex.sub(lam, ex.scale(ex.dot(lam, rb.hvecs[k]), rb.avecs[k]))
        return lam

    def act_coefficients(self, a: CoxElem, c: Sequence[Fraction]) -> ex.Vec:
        return ex.matvec(a.mat, ex.as_vec(c))

    def mid_projector(self, J: Iterable[int]) -> ex.Mat:
        """Average of the matrices of ``W_J`` on the root base's space.

        ``v -> M v`` is the projector on vectors and ``lam -> lam M`` the one on
        covectors, since the average over a finite group is inverse-closed.
        """
        rb = self._need_rb()
        elems = self.enum_parabolic(J)
        dim = rb.dim
        acc = [[ex.ZERO] * dim for _ in range(dim)]
        for a in elems:
            M = self.h_matrix(a)
            for r in range(dim):
                for c in range(dim):
                    if M[r][c]:
                        acc[r][c] += M[r][c]
        size = Fraction(len(elems))
        return tuple(tuple(x / size for x in row) for row in acc)

    # -- parabolic intersections -------------------------------------------

    def cross_parabolic(self, J1: Iterable[int], a: CoxElem, J2: Iterable[int]) -> frozenset:
        """``{i in J1 : a maps the ray of h_j onto the ray of h_i for some j in J2}``."""
        J1, J2 = frozenset(J1), frozenset(J2)
        out = set()
        for j in J2:
            col = tuple(a.mat[r][j] for r in range(self.n))
            nz = [r for r, x in enumerate(col) if x]
            if len(nz) == 1 and col[nz[0]] > 0 and nz[0] in J1:
                out.add(nz[0])
        return frozenset(out)

    def cross_parabolic_by_reflections(self, J1: Iterable[int], a: CoxElem, J2: Iterable[int]) -> frozenset:
        """Same set via ``s_i = a s_j a^-1``, when ``a`` is minimal in ``W_J1 a W_J2``."""
        J1, J2 = frozenset(J1), frozenset(J2)
        ainv = self.inv(a)
        conj = {self.mul(self.mul(a, self.simple(j)), ainv) for j in J2}
        return frozenset(i for i in J1 if self.simple(i) in conj)


def _col_nonpositive(M: ex.Mat, i: int) -> bool:
    return all(row[i] <= 0 for row in M)

