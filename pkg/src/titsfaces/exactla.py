"""Exact rational linear algebra and finitely generated polyhedral cones.

Vectors are tuples of ``Fraction``; matrices are tuples of row vectors.
Everything is exact, there is no floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, gcd, lcm
from typing import Iterable, Sequence

Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


class DimensionMismatch(ValueError):
    """Constraint or vector lengths disagree with the ambient dimension."""


class PreconditionError(ValueError):
    """An operation was called outside its domain."""


# ---------------------------------------------------------------------------
# vectors and matrices


def as_vec(xs: Iterable) -> Vec:
    return tuple(x if isinstance(x, Fraction) else Fraction(x) for x in xs)


def as_mat(rows: Iterable[Iterable]) -> Mat:
    return tuple(as_vec(r) for r in rows)


def zero_vec(n: int) -> Vec:
    return (ZERO,) * n


def unit_vec(n: int, i: int) -> Vec:
    return tuple(ONE if k == i else ZERO for k in range(n))


def identity(n: int) -> Mat:
    return tuple(unit_vec(n, i) for i in range(n))


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    s = ZERO
    for a, b in zip(u, v):
        if a and b:
            s += a * b
    return s


def add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, u: Vec) -> Vec:
    return tuple(c * a for a in u)


def neg(u: Vec) -> Vec:
    return tuple(-a for a in u)


def is_zero(u: Sequence[Fraction]) -> bool:
    return not any(u)


def lincomb(coeffs: Sequence[Fraction], vectors: Sequence[Vec], n: int) -> Vec:
    out = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for k, x in enumerate(v):
                if x:
                    out[k] += c * x
    return tuple(out)


def transpose(M: Sequence[Sequence[Fraction]], ncols: int | None = None) -> Mat:
    if not M:
        return tuple(() for _ in range(ncols or 0))
    return tuple(tuple(row[j] for row in M) for j in range(len(M[0])))


def matvec(M: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vec:
    return tuple(dot(row, v) for row in M)


def vecmat(v: Sequence[Fraction], M: Sequence[Sequence[Fraction]], ncols: int | None = None) -> Vec:
    n = len(M[0]) if M else (ncols or 0)
    return lincomb(v, M, n)


def matmul(A: Sequence[Sequence[Fraction]], B: Sequence[Sequence[Fraction]], ncols: int | None = None) -> Mat:
    n = len(B[0]) if B else (ncols or 0)
    return tuple(lincomb(row, B, n) for row in A)


# ---------------------------------------------------------------------------
# row reduction


def rref(rows: Sequence[Sequence[Fraction]], ncols: int) -> tuple[list[Vec], list[int]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns."""
    M = [list(r) for r in rows]
    for r in M:
        if len(r) != ncols:
            raise DimensionMismatch(f"row of length {len(r)} in a {ncols}-column matrix")
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(M):
            break
        p = next((i for i in range(r, len(M)) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        pv = M[r][c]
        if pv != 1:
            M[r] = [x / pv for x in M[r]]
        Mr = M[r]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b if b else a for a, b in zip(M[i], Mr)]
        pivots.append(c)
        r += 1
    return [tuple(row) for row in M[:r]], pivots


def rank(rows: Sequence[Sequence[Fraction]], ncols: int | None = None) -> int:
    if not rows:
        return 0
    return len(rref(rows, ncols if ncols is not None else len(rows[0]))[1])


def primitive(v: Sequence[Fraction]) -> Vec:
    """Positive multiple of ``v`` with coprime integer coordinates."""
    den = 1
    for x in v:
        den = lcm(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ZERO for _ in v)
    return tuple(Fraction(x // g) for x in ints)


def canonical_line(v: Sequence[Fraction]) -> Vec:
    """Primitive integer spanning vector of the line through ``v``, leading entry positive."""
    p = primitive(v)
    lead = next((x for x in p if x), ZERO)
    return neg(p) if lead < 0 else p


def kernel_basis(M: Sequence[Sequence[Fraction]], ncols: int | None = None) -> list[Vec]:
    """Basis of ``{x : M x = 0}`` in canonical integer form."""
    if ncols is None:
        if not M:
            raise DimensionMismatch("ncols is required for an empty matrix")
        ncols = len(M[0])
    R, piv = rref(as_mat(M), ncols)
    pivset = set(piv)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        x = [ZERO] * ncols
        x[f] = ONE
        for row, p in zip(R, piv):
            x[p] = -row[f]
        basis.append(canonical_line(x))
    return basis


def left_kernel_basis(M: Sequence[Sequence[Fraction]], nrows: int | None = None) -> list[Vec]:
    """Basis of ``{y : y M = 0}``."""
    if nrows is None:
        nrows = len(M)
    return kernel_basis(transpose(M), nrows)


def solve(M: Sequence[Sequence[Fraction]], b: Sequence[Fraction], ncols: int | None = None) -> Vec | None:
    """Some solution of ``M x = b``, or None if inconsistent."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    aug = [tuple(row) + (Fraction(bi),) for row, bi in zip(M, b)]
    R, piv = rref(aug, ncols + 1)
    if piv and piv[-1] == ncols:
        return None
    x = [ZERO] * ncols
    for row, p in zip(R, piv):
        x[p] = row[-1]
    return tuple(x)


def inverse(M: Sequence[Sequence[Fraction]]) -> Mat:
    n = len(M)
    aug = [tuple(row) + unit_vec(n, i) for i, row in enumerate(M)]
    R, piv = rref(aug, 2 * n)
    if n and (len(piv) < n or piv[n - 1] != n - 1):
        raise PreconditionError("matrix is singular")
    return tuple(tuple(row[n:]) for row in R)


# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of Q^n kept in canonical (integer RREF) form."""

    ambient_dim: int
    basis: Mat
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, vectors: Iterable[Sequence], n: int) -> "Subspace":
        vs = [as_vec(v) for v in vectors]
        for v in vs:
            if len(v) != n:
                raise DimensionMismatch(f"vector of length {len(v)} in Q^{n}")
        R, piv = rref(vs, n)
        return cls(n, tuple(primitive(r) for r in R), tuple(piv))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, (), ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls.span(identity(n), n)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, v: Sequence[Fraction]) -> Vec:
        """Representative of ``v`` modulo the subspace, zero on pivot coordinates."""
        w = list(as_vec(v))
        for row, p in zip(self.basis, self.pivots):
            if w[p]:
                c = w[p] / row[p]
                w = [a - c * b if b else a for a, b in zip(w, row)]
        return tuple(w)

    def contains(self, v: Sequence[Fraction]) -> bool:
        return is_zero(self.reduce(v))

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(b) for b in other.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.basis + other.basis, self.ambient_dim)

    def annihilator(self) -> "Subspace":
        """Covectors vanishing on the subspace (coordinates in the dual basis)."""
        if not self.basis:
            return Subspace.full(self.ambient_dim)
        return Subspace.span(kernel_basis(self.basis, self.ambient_dim), self.ambient_dim)

    def intersect(self, other: "Subspace") -> "Subspace":
        return (self.annihilator() + other.annihilator()).annihilator()

    def complement_units(self) -> list[int]:
        """Coordinate indices whose unit vectors span a complement."""
        piv = set(self.pivots)
        return [i for i in range(self.ambient_dim) if i not in piv]


def span_contains(vectors: Sequence[Vec], v: Vec, n: int) -> bool:
    return Subspace.span(vectors, n).contains(v)


# ---------------------------------------------------------------------------
# exact feasibility by Fourier-Motzkin elimination


def _normalize_row(coeffs: Sequence[Fraction], const: Fraction) -> tuple[tuple[int, ...], Fraction] | None:
    """Scale ``coeffs.x + const`` positively so coeffs are coprime integers."""
    den = 1
    for x in coeffs:
        if x:
            den = lcm(den, x.denominator)
    ints = [int(x * den) for x in coeffs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return None
    return tuple(x // g for x in ints), const * den / g


class _FM:
    """Fourier-Motzkin elimination with parallel-row pruning and witness recovery."""

    def __init__(self, nvars: int):
        self.nvars = nvars
        # primitive integer coefficients -> (constant, strict)
        self.rows: dict[tuple[int, ...], tuple[Fraction, bool]] = {}
        self.steps: list[tuple[int, list, list]] = []
        self.infeasible = False

    def _insert(self, store: dict, coeffs, const: Fraction, strict: bool) -> None:
        norm = _normalize_row(coeffs, const)
        if norm is None:
            if const < 0 or (strict and const == 0):
                self.infeasible = True
            return
        key, c = norm
        old = store.get(key)
        # of two parallel rows only the tighter one matters
        if old is not None and (old[0] < c or (old[0] == c and (old[1] or not strict))):
            return
        store[key] = (c, strict)

    def add(self, coeffs, const, strict) -> None:
        self._insert(self.rows, coeffs, Fraction(const), strict)

    def run(self) -> Vec | None:
        while self.rows and not self.infeasible:
            best = None
            for k in range(self.nvars):
                p = sum(1 for key in self.rows if key[k] > 0)
                q = sum(1 for key in self.rows if key[k] < 0)
                if (p or q) and (best is None or p * q - p - q < best[0]):
                    best = (p * q - p - q, k)
            if best is None:
                break
            k = best[1]
            pos = [(key, v) for key, v in self.rows.items() if key[k] > 0]
            negs = [(key, v) for key, v in self.rows.items() if key[k] < 0]
            self.steps.append((k, pos, negs))
            new = {key: v for key, v in self.rows.items() if key[k] == 0}
            for pk, (pc, ps) in pos:
                for nk, (nc, ns) in negs:
                    a, b = pk[k], -nk[k]
                    coeffs = [Fraction(b * x + a * y) for x, y in zip(pk, nk)]
                    self._insert(new, coeffs, b * pc + a * nc, ps or ns)
                    if self.infeasible:
                        return None
            self.rows = new
        if self.infeasible:
            return None
        return self._back_substitute()

    def _back_substitute(self) -> Vec:
        y = [ZERO] * self.nvars
        for k, pos, negs in reversed(self.steps):
            lo = hi = None
            lo_s = hi_s = False
            for key, (c, s) in pos:
                r = c + sum((key[j] * y[j] for j in range(self.nvars) if j != k and key[j]), ZERO)
                b = -r / key[k]
                if lo is None or b > lo:
                    lo, lo_s = b, s
                elif b == lo:
                    lo_s = lo_s or s
            for key, (c, s) in negs:
                r = c + sum((key[j] * y[j] for j in range(self.nvars) if j != k and key[j]), ZERO)
                b = r / (-key[k])
                if hi is None or b < hi:
                    hi, hi_s = b, s
                elif b == hi:
                    hi_s = hi_s or s
            y[k] = _pick(lo, lo_s, hi, hi_s)
        return tuple(y)


def _pick(lo, lo_s, hi, hi_s) -> Fraction:
    def ok(x):
        if lo is not None and (x < lo or (x == lo and lo_s)):
            return False
        if hi is not None and (x > hi or (x == hi and hi_s)):
            return False
        return True

    if ok(ZERO):
        return ZERO
    if lo is not None:
        for cand in (Fraction(-floor(-lo)), Fraction(floor(lo) + 1)):
            if ok(cand):
                return cand
    if hi is not None:
        for cand in (Fraction(floor(hi)), Fraction(-floor(-hi) - 1)):
            if ok(cand):
                return cand
    if lo is not None and hi is not None:
        mid = (lo + hi) / 2
        if ok(mid):
            return mid
        if ok(lo):
            return lo
    raise AssertionError("inconsistent bounds during back substitution")


def _check_rows(rows, width, what):
    out = []
    for r in rows:
        v = as_vec(r)
        if len(v) != width:
            raise DimensionMismatch(f"{what} constraint of length {len(v)}, expected {width}")
        out.append(v)
    return out


def find_point(
    eqs: Iterable[Sequence] = (),
    ineqs_nonstrict: Iterable[Sequence] = (),
    ineqs_strict: Iterable[Sequence] = (),
    dim: int | None = None,
    affine: bool = False,
) -> Vec | None:
    """A rational point satisfying all constraints, or None.

    Homogeneous rows ``a`` mean ``a.x = 0``, ``a.x >= 0`` and ``a.x > 0``.  With
    ``affine=True`` each row carries a trailing constant ``c`` and means
    ``a.x + c`` compared with zero.
    """
    eqs, ge, gt = list(eqs), list(ineqs_nonstrict), list(ineqs_strict)
    if dim is None:
        first = next((r for r in eqs + ge + gt), None)
        if first is None:
            raise DimensionMismatch("dim is required when there are no constraints")
        dim = len(first) - (1 if affine else 0)
    width = dim + (1 if affine else 0)
    eqs = _check_rows(eqs, width, "equality")
    ge = _check_rows(ge, width, "nonstrict")
    gt = _check_rows(gt, width, "strict")
    if not affine:
        eqs = [r + (ZERO,) for r in eqs]
        ge = [r + (ZERO,) for r in ge]
        gt = [r + (ZERO,) for r in gt]

    # parametrize the solution set of the equalities: x = x0 + N y
    if eqs:
        x0 = solve([r[:dim] for r in eqs], [-r[dim] for r in eqs], dim)
        if x0 is None:
            return None
        N = kernel_basis([r[:dim] for r in eqs], dim)
    else:
        x0 = zero_vec(dim)
        N = [unit_vec(dim, i) for i in range(dim)]

    fm = _FM(len(N))
    for row, strict in [(r, False) for r in ge] + [(r, True) for r in gt]:
        a = row[:dim]
        coeffs = [dot(a, nv) for nv in N]
        fm.add(coeffs, dot(a, x0) + row[dim], strict)
        if fm.infeasible:
            return None
    y = fm.run()
    if y is None:
        return None
    x = add(x0, lincomb(y, N, dim))
    # exact certificate check
    for r in eqs:
        assert dot(r[:dim], x) + r[dim] == 0
    for r in ge:
        assert dot(r[:dim], x) + r[dim] >= 0
    for r in gt:
        assert dot(r[:dim], x) + r[dim] > 0
    return x


def feasible(eqs=(), ineqs_nonstrict=(), ineqs_strict=(), dim: int | None = None, affine: bool = False) -> bool:
    """True iff some rational point satisfies all constraints (see ``find_point``)."""
    return find_point(eqs, ineqs_nonstrict, ineqs_strict, dim=dim, affine=affine) is not None


# ---------------------------------------------------------------------------
# double description


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _double_description(n: int, ineqs: Sequence[Vec], eqs: Sequence[Vec]) -> tuple[list[Vec], list[Vec]]:
    """Extreme rays and a lineality basis of ``{x : eqs.x = 0, ineqs.x >= 0}``."""
    lin = kernel_basis(eqs, n) if eqs else [unit_vec(n, i) for i in range(n)]
    rays: list[Vec] = []
    zsets: list[int] = []
    for idx, a in enumerate(ineqs):
        bit = 1 << idx
        vals = [dot(a, l) for l in lin]
        j = next((i for i, v in enumerate(vals) if v), None)
        if j is not None:
            l0 = lin[j] if vals[j] > 0 else neg(lin[j])
            v0 = abs(vals[j])
            lin = [l if not vals[i] else sub(l, scale(vals[i] / v0, l0)) for i, l in enumerate(lin) if i != j]
            rays = [primitive(sub(r, scale(dot(a, r) / v0, l0))) for r in rays]
            zsets = [z | bit for z in zsets]
            rays.append(primitive(l0))
            zsets.append(bit - 1)
            continue
        pos, zer, negs = [], [], []
        for r, z in zip(rays, zsets):
            v = dot(a, r)
            (pos if v > 0 else negs if v < 0 else zer).append((r, z, v))
        if not negs:
            zsets = [z | bit if v == 0 else z for r, z, v in pos + zer]
            rays = [r for r, z, v in pos + zer]
            continue
        new_rays = [r for r, _, _ in pos] + [r for r, _, _ in zer]
        new_z = [z for _, z, _ in pos] + [z | bit for _, z, _ in zer]
        for pr, pz, pv in pos:
            for nr, nz, nv in negs:
                common = pz & nz
                adjacent = True
                for z in zsets:
                    if z & common == common and z != pz and z != nz:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                c = primitive(sub(scale(pv, nr), scale(nv, pr)))
                new_rays.append(c)
                new_z.append(common | bit)
        rays, zsets = new_rays, new_z
    L = Subspace.span(lin, n)
    out = sorted({primitive(L.reduce(r)) for r in rays})
    out = [r for r in out if not is_zero(r)]
    return out, list(L.basis)


# ---------------------------------------------------------------------------
# polyhedral cones


@dataclass(frozen=True)
class PolyCone:
    """A finitely generated convex cone held in both descriptions.

    ``generators`` are the extreme rays modulo ``lineality``;
    ``inequalities`` are facet normals (``a.x >= 0``) and ``equations`` span
    the annihilator of the linear hull.  All four lists are canonical, so
    equality of cones is equality of these records.
    """

    ambient_dim: int
    generators: Mat
    lineality: Mat
    inequalities: Mat
    equations: Mat

    @classmethod
    def from_inequalities(cls, n: int, inequalities: Iterable[Sequence] = (), equations: Iterable[Sequence] = ()) -> "PolyCone":
        ineqs = _check_rows(inequalities, n, "inequality")
        eqs = _check_rows(equations, n, "equation")
        rays, lin = _double_description(n, ineqs, eqs)
        facets, hull_eqs = _double_description(n, rays, lin)
        return cls(n, tuple(rays), tuple(lin), tuple(facets), tuple(hull_eqs))

    @classmethod
    def from_generators(cls, n: int, generators: Iterable[Sequence] = (), lineality: Iterable[Sequence] = ()) -> "PolyCone":
        gens = _check_rows(generators, n, "generator")
        lins = _check_rows(lineality, n, "lineality")
        facets, hull_eqs = _double_description(n, gens, lins)
        rays, lin = _double_description(n, facets, hull_eqs)
        return cls(n, tuple(rays), tuple(lin), tuple(facets), tuple(hull_eqs))

    @classmethod
    def zero(cls, n: int) -> "PolyCone":
        return cls.from_generators(n)

    @classmethod
    def space(cls, n: int) -> "PolyCone":
        return cls.from_inequalities(n)

    @classmethod
    def subspace(cls, U: Subspace) -> "PolyCone":
        return cls.from_generators(U.ambient_dim, (), U.basis)

    @property
    def dim(self) -> int:
        return self.hull().dim

    def hull(self) -> Subspace:
        return Subspace.span(self.generators + self.lineality, self.ambient_dim)

    def lineality_space(self) -> Subspace:
        return Subspace.span(self.lineality, self.ambient_dim)

    def is_pointed(self) -> bool:
        return not self.lineality

    def contains(self, x: Sequence) -> bool:
        x = as_vec(x)
        return all(dot(e, x) == 0 for e in self.equations) and all(dot(a, x) >= 0 for a in self.inequalities)

    def in_relative_interior(self, x: Sequence) -> bool:
        x = as_vec(x)
        return all(dot(e, x) == 0 for e in self.equations) and all(dot(a, x) > 0 for a in self.inequalities)

    def interior_point(self) -> Vec:
        """A point of the relative interior (sum of the extreme rays)."""
        return lincomb([ONE] * len(self.generators), self.generators, self.ambient_dim)

    def contains_cone(self, other: "PolyCone") -> bool:
        return all(self.contains(g) for g in other.generators) and all(
            self.contains(l) and self.contains(neg(l)) for l in other.lineality
        )

    def intersect(self, other: "PolyCone") -> "PolyCone":
        return PolyCone.from_inequalities(
            self.ambient_dim, self.inequalities + other.inequalities, self.equations + other.equations
        )

    def __add__(self, other: "PolyCone") -> "PolyCone":
        return PolyCone.from_generators(
            self.ambient_dim, self.generators + other.generators, self.lineality + other.lineality
        )

    def __neg__(self) -> "PolyCone":
        return PolyCone.from_generators(self.ambient_dim, [neg(g) for g in self.generators], self.lineality)

    def image(self, M: Sequence[Sequence[Fraction]]) -> "PolyCone":
        """Image under ``x -> M x``."""
        m = len(M)
        return PolyCone.from_generators(m, [matvec(M, g) for g in self.generators], [matvec(M, l) for l in self.lineality])

    def preimage(self, M: Sequence[Sequence[Fraction]], n: int | None = None) -> "PolyCone":
        """Preimage under ``x -> M x``."""
        if n is None:
            n = len(M[0])
        return PolyCone.from_inequalities(
            n, [vecmat(a, M, n) for a in self.inequalities], [vecmat(e, M, n) for e in self.equations]
        )

    def dual(self) -> "PolyCone":
        """``{a : a.x >= 0 for all x in the cone}``."""
        return PolyCone.from_generators(self.ambient_dim, self.inequalities, self.equations)

    def faces(self) -> "ConeFaceLattice":
        return ConeFaceLattice(self)


def cone_face_lattice(K: PolyCone) -> "ConeFaceLattice":
    return ConeFaceLattice(K)


class ConeFaceLattice:
    """All faces of a polyhedral cone, indexed by their sets of extreme rays."""

    def __init__(self, K: PolyCone):
        self.cone = K
        gens, ineqs = K.generators, K.inequalities
        self._zsets = [frozenset(i for i, a in enumerate(ineqs) if dot(a, g) == 0) for g in gens]
        all_facets = frozenset(range(len(ineqs)))
        top = frozenset(range(len(gens)))
        seen = {top: frozenset()}
        frontier = [top]
        while frontier:
            nxt = []
            for S in frontier:
                T = seen[S]
                for i in all_facets - T:
                    S2 = frozenset(r for r in S if i in self._zsets[r])
                    if S2 in seen:
                        continue
                    seen[S2] = self._tight(S2)
                    nxt.append(S2)
            frontier = nxt
        n = K.ambient_dim
        lin_rank = len(K.lineality)
        keyed = []
        for S, T in seen.items():
            d = rank([gens[r] for r in S] + list(K.lineality), n) if S else lin_rank
            keyed.append((d, tuple(sorted(S)), S, T))
        keyed.sort(key=lambda t: (t[0], t[1]))
        self.ray_sets: list[frozenset] = [k[2] for k in keyed]
        self.tight_sets: list[frozenset] = [k[3] for k in keyed]
        self.dims: list[int] = [k[0] for k in keyed]
        self._index = {S: i for i, S in enumerate(self.ray_sets)}
        self._cones: dict[int, PolyCone] = {}

    def _tight(self, S: frozenset) -> frozenset:
        T = frozenset(range(len(self.cone.inequalities)))
        for r in S:
            T &= self._zsets[r]
        return T

    def _closure(self, S: Iterable[int]) -> frozenset:
        T = self._tight(frozenset(S))
        return frozenset(r for r, z in enumerate(self._zsets) if T <= z)

    def __len__(self) -> int:
        return len(self.ray_sets)

    @property
    def faces(self) -> list[PolyCone]:
        return [self.face(i) for i in range(len(self))]

    def face(self, i: int) -> PolyCone:
        if i not in self._cones:
            K = self.cone
            self._cones[i] = PolyCone.from_generators(
                K.ambient_dim, [K.generators[r] for r in sorted(self.ray_sets[i])], K.lineality
            )
        return self._cones[i]

    def generators(self, i: int) -> list[Vec]:
        return [self.cone.generators[r] for r in sorted(self.ray_sets[i])]

    def hull(self, i: int) -> Subspace:
        return Subspace.span(self.generators(i) + list(self.cone.lineality), self.cone.ambient_dim)

    def leq(self, i: int, j: int) -> bool:
        return self.ray_sets[i] <= self.ray_sets[j]

    def meet(self, i: int, j: int) -> int:
        return self._index[self.ray_sets[i] & self.ray_sets[j]]

    def join(self, i: int, j: int) -> int:
        return self._index[self._closure(self.ray_sets[i] | self.ray_sets[j])]

    def index_of_rays(self, S: Iterable[int]) -> int:
        return self._index[frozenset(S)]

    def index_of(self, F: PolyCone) -> int:
        """Index of a face given as a cone (must be a face)."""
        S = frozenset(r for r, g in enumerate(self.cone.generators) if F.contains(g))
        i = self._index.get(S)
        if i is None or self.face(i) != F:
            raise PreconditionError("not a face of this cone")
        return i

    def face_of_point(self, x: Sequence) -> int:
        """The unique face whose relative interior contains ``x``."""
        x = as_vec(x)
        if not self.cone.contains(x):
            raise PreconditionError("point is not in the cone")
        T = frozenset(i for i, a in enumerate(self.cone.inequalities) if dot(a, x) == 0)
        return self._index[frozenset(r for r, z in enumerate(self._zsets) if T <= z)]

    def order(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(len(self)) for j in range(len(self)) if i != j and self.leq(i, j)]

    def covers(self) -> list[tuple[int, int]]:
        out = []
        for i, j in self.order():
            if self.dims[j] == self.dims[i] + 1:
                out.append((i, j))
        return out


# ---------------------------------------------------------------------------
# face transport


def transport_faces(phi: Sequence[Sequence], K: PolyCone, direction: str = "forward") -> PolyCone:
    """Image or preimage of ``K`` under ``phi``, where the two are lattice inverses.

    ``forward`` needs ``K + ker(phi) = K`` and returns ``phi(K)``;
    ``back`` needs ``K`` inside ``im(phi)`` and returns ``phi^-1(K)``.
    """
    phi = as_mat(phi)
    m = len(phi)
    n = len(phi[0]) if phi else 0
    if direction == "forward":
        if K.ambient_dim != n:
            raise DimensionMismatch("cone and map disagree on the source dimension")
        lin = K.lineality_space()
        ker = kernel_basis(phi, n) if m else [unit_vec(n, i) for i in range(n)]
        if not all(lin.contains(k) for k in ker):
            raise PreconditionError("K + ker(phi) is not contained in K")
        return K.image(phi)
    if direction == "back":
        if K.ambient_dim != m:
            raise DimensionMismatch("cone and map disagree on the target dimension")
        im = Subspace.span(transpose(phi, n), m) if n else Subspace.zero(m)
        if not all(im.contains(g) for g in K.generators + K.lineality):
            raise PreconditionError("K is not contained in im(phi)")
        return K.preimage(phi, n)
    raise ValueError(f"unknown direction {direction!r}")


@dataclass
class FaceCorrespondence:
    """Face maps between two lattices, given as index lists.

    ``forward[a]`` is the index in ``target`` of the image of face ``a`` of
    ``source``; ``section[b]`` is the chosen preimage of face ``b``.
    """

    source: ConeFaceLattice
    target: ConeFaceLattice
    forward: dict[int, int]
    section: dict[int, int]


def _as_subspace(U, n: int) -> Subspace:
    if isinstance(U, Subspace):
        return U
    return Subspace.span(U, n)


def faces_mod_subspace(K: PolyCone, U, mode: str) -> FaceCorrespondence:
    """Face correspondences between ``K`` and ``K + U`` or ``K`` and ``K cap U``.

    ``sum``: source is Fa(K+U), ``forward`` is G -> G cap K (injective) and
    ``section`` sends each face F in its image back to F + U.

    ``intersect``: source is Fa(K), ``forward`` is F -> F cap U (surjective),
    ``section`` picks the smallest face of K containing a given face of K cap U.
    """
    n = K.ambient_dim
    U = _as_subspace(U, n)
    faK = K.faces()
    if mode == "sum":
        KU = K + PolyCone.subspace(U)
        faKU = KU.faces()
        fwd = {}
        for g in range(len(faKU)):
            fwd[g] = faK.index_of(faKU.face(g).intersect(K))
        sec = {}
        Ucone = PolyCone.subspace(U)
        for f in range(len(faK)):
            F = faK.face(f)
            if (F + Ucone).intersect(K) == F:
                sec[f] = faKU.index_of(F + Ucone)
        return FaceCorrespondence(faKU, faK, fwd, sec)
    if mode == "intersect":
        KcU = K.intersect(PolyCone.subspace(U))
        faKcU = KcU.faces()
        fwd = {f: faKcU.index_of(faK.face(f).intersect(KcU)) for f in range(len(faK))}
        sec = {h: faK.face_of_point(faKcU.face(h).interior_point()) for h in range(len(faKcU))}
        return FaceCorrespondence(faK, faKcU, fwd, sec)
    raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# positive independence


def positively_independent(vectors: Sequence[Sequence]) -> bool:
    """No nontrivial nonnegative combination of the vectors vanishes."""
    vs = [as_vec(v) for v in vectors]
    if not vs:
        return True
    n = len(vs[0])
    m = len(vs)
    # r >= 0, sum r > 0, sum r_l v_l = 0
    eqs = [tuple(v[k] for v in vs) for k in range(n)]
    ge = [unit_vec(m, l) for l in range(m)]
    gt = [(ONE,) * m]
    return not feasible(eqs, ge, gt, dim=m)


def in_cone(v: Sequence, generators: Sequence[Sequence], n: int | None = None) -> bool:
    """Whether ``v`` is a nonnegative combination of ``generators``."""
    v = as_vec(v)
    gens = [as_vec(g) for g in generators]
    if not gens:
        return is_zero(v)
    m = len(gens)
    eqs = [tuple(g[k] for g in gens) + (-v[k],) for k in range(len(v))]
    return feasible(eqs, [unit_vec(m, l) + (ZERO,) for l in range(m)], dim=m, affine=True)


def is_chamber_base(hvecs: Sequence[Sequence]) -> bool:
    """Positively independent and no vector lies in the cone of the others."""
    vs = [as_vec(v) for v in hvecs]
    if not positively_independent(vs):
        return False
    return not any(in_cone(v, vs[:i] + vs[i + 1 :]) for i, v in enumerate(vs))
