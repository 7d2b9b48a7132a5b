"""The closed domain dual to a complete fan, as a face poset."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import PreconditionError
from .fan import Fan


@dataclass(frozen=True, order=True)
class HERT:
    """Orbit invariant: h hyperbolic and e elbolic transversal components, orbit R^r x T^t."""

    h: int
    e: int
    r: int
    t: int

    def __post_init__(self):
        for name in ("h", "e", "r", "t"):
            if getattr(self, name) < 0:
                raise PreconditionError(f"HERT component {name} is negative")

    @property
    def ambient(self) -> int:
        return self.h + 2 * self.e + self.r + self.t

    @property
    def orbit_dim(self) -> int:
        return self.r + self.t

    def __str__(self) -> str:
        return f"({self.h},{self.e},{self.r},{self.t})"


@dataclass(frozen=True)
class DomainComplex:
    """One cell per derived cone S, of dimension n - |S|.

    cell(S) lies in the closure of cell(S') exactly when S' is a subset of S.
    """

    n: int
    cones: frozenset

    def dim(self, cell: frozenset) -> int:
        if cell not in self.cones:
            raise PreconditionError(f"{sorted(cell)} is not a cell of this domain")
        return self.n - len(cell)

    def in_closure(self, lower: frozenset, upper: frozenset) -> bool:
        return upper <= lower

    def cells_by_dim(self) -> list[int]:
        counts = [0] * (self.n + 1)
        for c in self.cones:
            counts[self.n - len(c)] += 1
        return counts

    def facets_of(self, cell: frozenset) -> list[frozenset]:
        """Codimension-one faces in the boundary of a cell."""
        return sorted((c for c in self.cones if c > cell and len(c) == len(cell) + 1), key=sorted)

    @property
    def top_cell(self) -> frozenset:
        return frozenset()

    @property
    def polytopal(self) -> Optional[bool]:
        """True when the domain is known to be a polytope combinatorially; None when unknown."""
        return True if self.n <= 3 else None


def domain_from_fan(f: Fan) -> DomainComplex:
    f.require_valid()
    return DomainComplex(f.ambient_dim, f.derived_cones)


def euler_domain(d: DomainComplex) -> int:
    return sum((-1) ** d.dim(c) for c in d.cones)


def hert_of_cell(d: DomainComplex, cell) -> HERT:
    cell = frozenset(cell)
    d.dim(cell)
    return HERT(len(cell), 0, d.n - len(cell), 0)
