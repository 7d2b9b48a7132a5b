"""Rational lattices Z^k inside Q^n and the quotient groups Q^n / L."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import ratgeom as rg
from .errors import DimensionMismatch, PreconditionError


def _lcm_denominators(vectors) -> int:
    d = 1
    for v in vectors:
        for x in v:
            d = math.lcm(d, Fraction(x).denominator)
    return d


def hermite_rows(rows: Sequence[Sequence[int]], columns: Optional[int] = None) -> list[list[int]]:
    """Row-style Hermite normal form of an integer matrix.

    Only the first ``columns`` entries of each row are used for pivoting;
    trailing entries ride along, which turns this into HNF-with-transform
    when an identity block is appended.  Rows whose pivot part vanishes are
    kept at the bottom.
    """
    a = [list(map(int, r)) for r in rows]
    if not a:
        return []
    width = len(a[0]) if columns is None else columns
    r = 0
    for c in range(width):
        while True:
            nz = [i for i in range(r, len(a)) if a[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[p] = a[p], a[r]
            clean = True
            for i in range(r + 1, len(a)):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    clean = clean and a[i][c] == 0
            if clean:
                break
        if r < len(a) and a[r][c] != 0:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
            for i in range(r):
                q = a[i][c] // a[r][c]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
            r += 1
            if r == len(a):
                break
    return a


def lattice_basis(generators: Sequence, n: int) -> list[tuple]:
    """A basis of the group generated by finitely many rational vectors."""
    gens = [rg.as_vector(g) for g in generators]
    if any(len(g) != n for g in gens):
        raise DimensionMismatch("generator of wrong dimension")
    d = _lcm_denominators(gens)
    ints = [[int(x * d) for x in g] for g in gens]
    h = hermite_rows(ints)
    return [tuple(Fraction(x, d) for x in row) for row in h if any(row)]


def _echelon_coords(basis: Sequence[tuple], v) -> Optional[list[Fraction]]:
    """Coordinates of v in an echelon basis (as produced by lattice_basis)."""
    v = list(v)
    coords = []
    for row in basis:
        p = next(i for i, x in enumerate(row) if x != 0)
        c = v[p] / row[p]
        coords.append(c)
        v = [a - c * b for a, b in zip(v, row)]
    if any(x != 0 for x in v):
        return None
    return coords


def in_generated_group(generators: Sequence, v, n: int) -> bool:
    """Membership of v in the additive group generated by rational vectors."""
    basis = lattice_basis(generators, n)
    coords = _echelon_coords(basis, rg.as_vector(v))
    return coords is not None and all(c.denominator == 1 for c in coords)


def integer_left_kernel(matrix: Sequence[Sequence]) -> list[list[int]]:
    """Basis of {c in Z^r : c . M = 0} for a rational r x s matrix M."""
    r = len(matrix)
    if r == 0:
        return []
    s = len(matrix[0])
    d = _lcm_denominators(matrix)
    aug = [[int(Fraction(x) * d) for x in matrix[i]] + [int(i == j) for j in range(r)] for i in range(r)]
    h = hermite_rows(aug, columns=s)
    return [row[s:] for row in h if all(x == 0 for x in row[:s])]


@dataclass(frozen=True)
class Lattice:
    """The group of integer combinations of independent rational vectors."""

    ambient_dim: int
    basis: tuple = ()

    def __post_init__(self):
        basis = tuple(rg.as_vector(b) for b in self.basis)
        object.__setattr__(self, "basis", basis)
        if any(len(b) != self.ambient_dim for b in basis):
            raise DimensionMismatch("lattice basis vector of wrong dimension")
        if not rg.independent(basis):
            raise PreconditionError("lattice basis is linearly dependent")

    @property
    def rank(self) -> int:
        return len(self.basis)

    def span_coords(self, v) -> Optional[list[Fraction]]:
        """Coordinates in the basis if v lies in the real span, else None."""
        v = rg.as_vector(v)
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector of wrong dimension")
        if not self.basis:
            return [] if rg.is_zero(v) else None
        return rg.solve_linear(self.basis, v)

    def in_span(self, v) -> bool:
        return self.span_coords(v) is not None

    def contains(self, v) -> bool:
        c = self.span_coords(v)
        return c is not None and all(x.denominator == 1 for x in c)

    def is_primitive(self, w) -> bool:
        """w in L with gcd of its integer coordinates equal to 1."""
        c = self.span_coords(w)
        if c is None or any(x.denominator != 1 for x in c):
            return False
        return math.gcd(*(int(x) for x in c)) == 1

    def normal_functionals(self) -> list[tuple]:
        """A basis of the linear functionals vanishing on span(L)."""
        return rg.nullspace(list(self.basis), self.ambient_dim)

    def _orthogonal_split(self, v):
        """v = sum a_i b_i + u with u orthogonal to span(L)."""
        if not self.basis:
            return [], v
        gram = [[rg.dot(b, c) for c in self.basis] for b in self.basis]
        rhs = tuple(rg.dot(b, v) for b in self.basis)
        a = rg.solve_linear([tuple(col) for col in zip(*gram)], rhs)
        u = rg.sub(v, rg.combo(a, self.basis, self.ambient_dim))
        return a, u

    def reduce(self, v) -> "QuotientElement":
        return reduce_mod_lattice(v, self)


@dataclass(frozen=True)
class QuotientElement:
    """A class in Q^n / L, stored by its canonical representative."""

    representative: tuple
    lattice: Lattice

    def __post_init__(self):
        v = rg.as_vector(self.representative)
        if len(v) != self.lattice.ambient_dim:
            raise DimensionMismatch("representative of wrong dimension")
        a, u = self.lattice._orthogonal_split(v)
        frac = [x - math.floor(x) for x in a]
        canon = rg.add(rg.combo(frac, self.lattice.basis, len(v)), u)
        object.__setattr__(self, "representative", canon)

    def __add__(self, other: "QuotientElement") -> "QuotientElement":
        self._check(other)
        return QuotientElement(rg.add(self.representative, other.representative), self.lattice)

    def __sub__(self, other: "QuotientElement") -> "QuotientElement":
        self._check(other)
        return QuotientElement(rg.sub(self.representative, other.representative), self.lattice)

    def __neg__(self) -> "QuotientElement":
        return QuotientElement(rg.neg(self.representative), self.lattice)

    def __mul__(self, k: int) -> "QuotientElement":
        return QuotientElement(rg.scale(k, self.representative), self.lattice)

    __rmul__ = __mul__

    def _check(self, other):
        if other.lattice != self.lattice:
            raise PreconditionError("quotient elements over different lattices")

    @property
    def is_zero(self) -> bool:
        return rg.is_zero(self.representative)

    def order(self) -> Optional[int]:
        """Order in the quotient group, or None when infinite."""
        c = self.lattice.span_coords(self.representative)
        if c is None:
            return None
        return math.lcm(1, *(x.denominator for x in c))


def reduce_mod_lattice(v, lattice: Lattice) -> QuotientElement:
    return QuotientElement(rg.as_vector(v), lattice)


def zero(lattice: Lattice) -> QuotientElement:
    return QuotientElement((0,) * lattice.ambient_dim, lattice)
