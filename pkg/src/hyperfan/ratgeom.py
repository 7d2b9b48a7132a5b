"""Exact rational linear algebra and simplicial cone primitives.

Vectors are plain tuples of :class:`fractions.Fraction`.  Nothing in this
module touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Optional, Sequence

from .errors import DimensionMismatch, PreconditionError

RatVector = tuple  # tuple[Fraction, ...]


def to_rational(x) -> Fraction:
    """Convert an int, Fraction or "p/q" string to a Fraction; floats are refused."""
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"refusing inexact value {x!r}; use ints, Fractions or 'p/q' strings")


def vec(*coords) -> RatVector:
    """vec(1, "1/2") == (Fraction(1), Fraction(1, 2))"""
    return tuple(to_rational(c) for c in coords)


def as_vector(v: Iterable) -> RatVector:
    return tuple(to_rational(c) for c in v)


def _same_dim(vectors: Sequence[RatVector], n: Optional[int] = None) -> int:
    dims = {len(v) for v in vectors}
    if n is not None:
        dims.add(n)
    if len(dims) > 1:
        raise DimensionMismatch(f"vectors of mixed dimensions {sorted(dims)}")
    return dims.pop() if dims else 0


def fmt(v: RatVector) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def add(u: RatVector, v: RatVector) -> RatVector:
    _same_dim([u, v])
    return tuple(a + b for a, b in zip(u, v))


def sub(u: RatVector, v: RatVector) -> RatVector:
    _same_dim([u, v])
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v: RatVector) -> RatVector:
    c = to_rational(c)
    return tuple(c * a for a in v)


def neg(v: RatVector) -> RatVector:
    return tuple(-a for a in v)


def dot(u: RatVector, v: RatVector) -> Fraction:
    _same_dim([u, v])
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def combo(coeffs: Sequence, vectors: Sequence[RatVector], n: Optional[int] = None) -> RatVector:
    """Linear combination sum(c_i * v_i); n is needed when the list is empty."""
    n = _same_dim(vectors, n)
    out = [Fraction(0)] * n
    for c, v in zip(coeffs, vectors):
        for i, a in enumerate(v):
            out[i] += c * a
    return tuple(out)


def is_zero(v: RatVector) -> bool:
    return all(a == 0 for a in v)


def det2(u: RatVector, v: RatVector) -> Fraction:
    return u[0] * v[1] - u[1] * v[0]


def mat_vec(m: Sequence[Sequence], v: RatVector) -> RatVector:
    return tuple(sum((Fraction(a) * b for a, b in zip(row, v)), Fraction(0)) for row in m)


def determinant(m: Sequence[Sequence]) -> Fraction:
    a = [[Fraction(x) for x in row] for row in m]
    size = len(a)
    det = Fraction(1)
    for c in range(size):
        p = next((r for r in range(c, size) if a[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, size):
            f = a[r][c] / a[c][c]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns."""
    a = [[Fraction(x) for x in row] for row in rows]
    if not a:
        return [], []
    width = len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(width):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        a[r] = [x / piv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank(vectors: Sequence[RatVector]) -> int:
    """Dimension of the span of the given vectors."""
    _same_dim(vectors)
    return len(rref(vectors)[1])


def independent(vectors: Sequence[RatVector]) -> bool:
    return rank(vectors) == len(vectors)


def solve_linear(columns: Sequence[RatVector], b: RatVector) -> Optional[list[Fraction]]:
    """Some x with sum x_i columns_i = b, or None.  Free variables are set to 0."""
    n = _same_dim(list(columns) + [b])
    k = len(columns)
    aug = [[columns[j][i] for j in range(k)] + [b[i]] for i in range(n)]
    red, pivots = rref(aug)
    if k in pivots:
        return None
    x = [Fraction(0)] * k
    for row, p in zip(red, pivots):
        x[p] = row[k]
    return x


def nullspace(rows: Sequence[RatVector], n: Optional[int] = None) -> list[RatVector]:
    """Basis of {x : r . x = 0 for every row r}."""
    n = _same_dim(rows, n)
    red, pivots = rref(rows)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def in_span(vectors: Sequence[RatVector], v: RatVector) -> bool:
    if not vectors:
        return is_zero(v)
    return solve_linear(vectors, v) is not None


def positively_proportional(u: RatVector, v: RatVector) -> bool:
    """True iff v = c*u for some rational c > 0 (and both nonzero)."""
    if is_zero(u) or is_zero(v):
        return False
    i = next(i for i, a in enumerate(u) if a != 0)
    c = v[i] / u[i]
    return c > 0 and all(c * a == b for a, b in zip(u, v))


def find_nonneg_solution(a: Sequence[Sequence], b: Sequence) -> Optional[list[Fraction]]:
    """Exact phase-one simplex: some x >= 0 with A x = b, or None if infeasible.

    Bland's rule guarantees termination; every pivot is exact rational
    arithmetic.
    """
    m = len(a)
    k = len(a[0]) if m else 0
    if m == 0:
        return [Fraction(0)] * k
    rows = []
    for i in range(m):
        row = [Fraction(x) for x in a[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        rows.append(row + art + [rhs])
    basis = [k + i for i in range(m)]
    cost = [Fraction(0)] * k + [Fraction(1)] * m
    width = k + m
    while True:
        entering = None
        for j in range(width):
            if j in basis:
                continue
            reduced = cost[j] - sum(cost[basis[i]] * rows[i][j] for i in range(m))
            if reduced < 0:
                entering = j
                break
        if entering is None:
            break
        leave = None
        best = None
        for i in range(m):
            if rows[i][entering] > 0:
                ratio = rows[i][-1] / rows[i][entering]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:  # unbounded; cannot happen for phase one
            break
        piv = rows[leave][entering]
        rows[leave] = [x / piv for x in rows[leave]]
        for i in range(m):
            if i != leave and rows[i][entering] != 0:
                f = rows[i][entering]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[leave])]
        basis[leave] = entering
    if any(basis[i] >= k and rows[i][-1] != 0 for i in range(m)):
        return None
    x = [Fraction(0)] * k
    for i in range(m):
        if basis[i] < k:
            x[basis[i]] = rows[i][-1]
    return x


@dataclass(frozen=True)
class SimplicialCone:
    """Cone spanned by linearly independent nonzero rays.  No rays means the zero cone."""

    rays: tuple
    ambient_dim: int

    def __post_init__(self):
        rays = tuple(as_vector(r) for r in self.rays)
        object.__setattr__(self, "rays", rays)
        if self.ambient_dim < 1:
            raise PreconditionError("ambient dimension must be positive")
        _same_dim(rays, self.ambient_dim)
        if any(is_zero(r) for r in rays):
            raise PreconditionError("a ray is the zero vector")
        if not independent(rays):
            raise PreconditionError("rays are linearly dependent")

    @property
    def dim(self) -> int:
        return len(self.rays)


def solve_nonneg(rays: Sequence[RatVector], w: RatVector) -> Optional[list[Fraction]]:
    """The unique alpha >= 0 with w = sum alpha_i rays_i, if there is one."""
    rays = [as_vector(r) for r in rays]
    w = as_vector(w)
    _same_dim(rays + [w])
    if not independent(rays):
        raise PreconditionError("rays are linearly dependent")
    if not rays:
        return [] if is_zero(w) else None
    alpha = solve_linear(rays, w)
    if alpha is None or any(x < 0 for x in alpha):
        return None
    return alpha


def in_relative_interior(cone: SimplicialCone, w: RatVector) -> bool:
    w = as_vector(w)
    _same_dim([w], cone.ambient_dim)
    alpha = solve_nonneg(cone.rays, w)
    return alpha is not None and all(x > 0 for x in alpha)


def relint_disjoint(cone_a: SimplicialCone, cone_b: SimplicialCone) -> bool:
    """True iff the relative interiors of the two cones share no point.

    Looks for x = sum alpha_i a_i = sum beta_j b_j with every coefficient at
    least 1 (equivalent to strict positivity by homogeneity).
    """
    if cone_a.ambient_dim != cone_b.ambient_dim:
        raise DimensionMismatch("cones live in different dimensions")
    n = cone_a.ambient_dim
    ra, rb = cone_a.rays, cone_b.rays
    if not ra and not rb:
        return False
    # A a' - B b' = sum(b) - sum(a), with a', b' >= 0
    rhs = sub(combo([1] * len(rb), rb, n), combo([1] * len(ra), ra, n))
    mat = [[r[i] for r in ra] + [-r[i] for r in rb] for i in range(n)]
    return find_nonneg_solution(mat, rhs) is None
