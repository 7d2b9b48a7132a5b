"""Complete simplicial fans: validation, point location, dual complex.

A fan is given by its rays and its maximal cones (sets of n ray indices,
0-based).  Lower cones are all subsets of maximal cones, so closure under
faces holds by construction; the empty set is the zero cone.
"""

from __future__ import annotations

import functools
import itertools
import os
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import ratgeom as rg
from .errors import DimensionMismatch, PreconditionError
from .report import ValidationReport

DEFAULT_SEED = 1729
SAMPLE_COUNT = 64


def sampling_seed() -> int:
    raw = os.environ.get("HYPERFAN_SEED")
    return int(raw) if raw not in (None, "") else DEFAULT_SEED


@dataclass(frozen=True)
class Fan:
    ambient_dim: int
    rays: tuple
    maximal_cones: tuple

    def __post_init__(self):
        rays = tuple(rg.as_vector(r) for r in self.rays)
        cones = tuple(tuple(int(i) for i in c) for c in self.maximal_cones)
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "maximal_cones", cones)
        if self.ambient_dim < 1:
            raise PreconditionError("ambient dimension must be positive")
        for r in rays:
            if len(r) != self.ambient_dim:
                raise DimensionMismatch(f"ray {r} does not have dimension {self.ambient_dim}")
        for c in cones:
            for i in c:
                if not 0 <= i < len(rays):
                    raise PreconditionError(f"cone {c} refers to missing ray {i}")

    @property
    def m(self) -> int:
        return len(self.rays)

    @functools.cached_property
    def derived_cones(self) -> frozenset:
        out = {frozenset()}
        for c in self.maximal_cones:
            for k in range(1, len(c) + 1):
                out.update(frozenset(s) for s in itertools.combinations(c, k))
        return frozenset(out)

    @functools.cached_property
    def report(self) -> ValidationReport:
        return validate_fan(self)

    @property
    def valid(self) -> bool:
        return self.report.valid

    def require_valid(self) -> None:
        if not self.valid:
            raise PreconditionError("fan is not valid: " + "; ".join(self.report.lines()[1:]))

    def cone(self, indices) -> rg.SimplicialCone:
        return rg.SimplicialCone(tuple(self.rays[i] for i in sorted(indices)), self.ambient_dim)

    @functools.cached_property
    def _inverses(self) -> list:
        # inverse matrix of each maximal cone, for fast point location
        out = []
        n = self.ambient_dim
        for c in self.maximal_cones:
            cols = [self.rays[i] for i in c]
            aug = [[cols[j][i] for j in range(n)] + [int(i == k) for k in range(n)] for i in range(n)]
            red, _ = rg.rref(aug)
            out.append((c, [row[n:] for row in red]))
        return out


def _proper_intersection_witness(f: Fan, s: tuple, t: tuple):
    """None if the cones meet in their common face, else (F, G, x) with x in relint F and relint G."""
    n = f.ambient_dim
    common = set(s) & set(t)
    a = [f.rays[i] for i in s]
    b = [f.rays[j] for j in t]
    rows = [[v[k] for v in a] + [-v[k] for v in b] for k in range(n)]
    rows.append([0 if i in common else 1 for i in s] + [0] * len(t))
    sol = rg.find_nonneg_solution(rows, [0] * n + [1])
    if sol is None:
        return None
    alpha, beta = sol[: len(s)], sol[len(s):]
    x = rg.combo(alpha, a, n)
    face_s = frozenset(i for i, c in zip(s, alpha) if c > 0)
    face_t = frozenset(j for j, c in zip(t, beta) if c > 0)
    return face_s, face_t, x


def _random_direction(rng: random.Random, n: int) -> tuple:
    while True:
        v = tuple(Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 999)) for _ in range(n))
        if not rg.is_zero(v):
            return v


def _cones_containing(f: Fan, cones, w) -> set:
    found = set()
    for c in cones:
        alpha = rg.solve_linear([f.rays[i] for i in c], w)
        if alpha is not None and all(x >= 0 for x in alpha):
            found.add(frozenset(i for i, x in zip(c, alpha) if x > 0))
    return found


def validate_fan(f: Fan, seed: Optional[int] = None) -> ValidationReport:
    """Check the four fan conditions and completeness.

    Condition ids: "iv" rays, "ii" simpliciality, "i" proper intersection,
    "complete" ridge criterion, "complete-sampling" the random cross-check.
    """
    rep = ValidationReport()
    n = f.ambient_dim

    # (iv) one nonzero vector per ray, no repeated directions
    for i, r in enumerate(f.rays):
        if rg.is_zero(r):
            rep.add("iv", f"ray {i} is the zero vector", i)
    for i, j in itertools.combinations(range(f.m), 2):
        if rg.positively_proportional(f.rays[i], f.rays[j]):
            rep.add("iv", f"rays {i} and {j} point in the same direction", (i, j))
    used = {i for c in f.maximal_cones for i in c}
    for i in range(f.m):
        if i not in used:
            rep.add("iv", f"ray {i} belongs to no maximal cone", i)

    # (ii) simplicial full-dimensional maximal cones
    good = []
    for c in f.maximal_cones:
        if len(set(c)) != len(c) or len(c) != n:
            rep.add("ii", f"cone {sorted(c)} does not have {n} distinct rays", tuple(c))
        elif rg.rank([f.rays[i] for i in c]) != n:
            rep.add("ii", f"cone {sorted(c)} has dependent rays", tuple(c))
        else:
            good.append(c)
    if not f.maximal_cones:
        rep.add("ii", "no maximal cones")

    # (i) distinct derived cones have disjoint relative interiors
    seen = {}
    for c in good:
        key = frozenset(c)
        if key in seen:
            rep.add("i", f"cone {sorted(key)} listed twice", tuple(sorted(key)))
        seen[key] = c
    distinct = list(seen.values())
    for s, t in itertools.combinations(distinct, 2):
        w = _proper_intersection_witness(f, s, t)
        if w is not None:
            fs, ft, x = w
            rep.add("i", f"relative interiors of cones {sorted(fs)} and {sorted(ft)} overlap", (sorted(fs), sorted(ft), x))

    # completeness by the ridge criterion
    if distinct:
        ridges: dict = {}
        for idx, c in enumerate(distinct):
            for r in itertools.combinations(sorted(c), n - 1):
                ridges.setdefault(frozenset(r), []).append(idx)
        for r, owners in sorted(ridges.items(), key=lambda kv: sorted(kv[0])):
            if len(owners) != 2:
                rep.add("complete", f"ridge {sorted(r)} lies in {len(owners)} maximal cone(s), expected 2", tuple(sorted(r)))
        adj = {i: set() for i in range(len(distinct))}
        for owners in ridges.values():
            for a, b in itertools.combinations(owners, 2):
                adj[a].add(b)
                adj[b].add(a)
        reached, stack = {0}, [0]
        while stack:
            for b in adj[stack.pop()]:
                if b not in reached:
                    reached.add(b)
                    stack.append(b)
        if len(reached) != len(distinct):
            rep.add("complete", "maximal-cone adjacency graph is disconnected", len(reached))

        rng = random.Random(sampling_seed() if seed is None else seed)
        for _ in range(SAMPLE_COUNT):
            w = _random_direction(rng, n)
            hits = _cones_containing(f, distinct, w)
            if len(hits) != 1:
                rep.add("complete-sampling", f"direction lies in {len(hits)} cones", w)
                break
    return rep


def locate(f: Fan, w) -> frozenset:
    """The unique derived cone whose relative interior contains w."""
    w = rg.as_vector(w)
    if len(w) != f.ambient_dim:
        raise DimensionMismatch(f"expected a vector of dimension {f.ambient_dim}")
    f.require_valid()
    for c, inv in f._inverses:
        alpha = rg.mat_vec(inv, w)
        if all(x >= 0 for x in alpha):
            return frozenset(i for i, x in zip(c, alpha) if x > 0)
    raise AssertionError("valid fan failed to cover a point")


def dual_complex(f: Fan) -> frozenset:
    """Faces are the nonempty derived cones, as sets of ray indices."""
    f.require_valid()
    return frozenset(c for c in f.derived_cones if c)


def f_vector(f: Fan) -> list[int]:
    f.require_valid()
    counts = [0] * (f.ambient_dim + 1)
    for c in f.derived_cones:
        counts[len(c)] += 1
    return counts


# constructors for standard fans


def cross_fan(n: int) -> Fan:
    """Rays +-e_i, one maximal cone per orthant; n=1 is the line fan, n=2 the square fan."""
    rays = []
    for sign in (1, -1):
        for i in range(n):
            rays.append(tuple(sign if k == i else 0 for k in range(n)))
    cones = [tuple(i + n * s for i, s in enumerate(signs)) for signs in itertools.product((0, 1), repeat=n)]
    return Fan(n, tuple(rays), tuple(cones))


def triangle_fan() -> Fan:
    return Fan(2, ((1, 0), (0, 1), (-1, -1)), ((0, 1), (1, 2), (2, 0)))


def polygon_fan(m: int) -> Fan:
    """A complete 2D fan with m >= 3 rays listed counterclockwise."""
    if m < 3:
        raise PreconditionError("a complete fan of the plane needs at least 3 rays")
    rays = [(1, 0)] + [(m - 1 - 2 * k, 1) for k in range(1, m - 1)]
    rays.append((0, -1) if m > 3 else (-1, -1))
    return fan_from_cyclic_rays(rays)


def fan_from_cyclic_rays(rays: Sequence) -> Fan:
    m = len(rays)
    return Fan(2, tuple(rays), tuple((i, (i + 1) % m) for i in range(m)))


def _half(v) -> int:
    return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1


def angle_key(v):
    """Sort key ordering plane vectors by angle in [0, 2pi), exactly."""

    class _K:
        def __init__(self, v):
            self.v = v

        def __lt__(self, other):
            a, b = self.v, other.v
            if _half(a) != _half(b):
                return _half(a) < _half(b)
            return rg.det2(a, b) > 0

    return _K(v)


def random_fan_2d(rng: random.Random, m: int, bound: int = 50) -> Fan:
    """Random complete 2D fan with m rays.

    Directions are sorted by angle and consecutive pairs become cones.
    Draws where some gap reaches a half turn are rejected and redrawn.
    """
    if m < 3:
        raise PreconditionError("need at least 3 rays")
    while True:
        raw = set()
        while len(raw) < m:
            v = (Fraction(rng.randint(-bound, bound), rng.randint(1, 9)), Fraction(rng.randint(-bound, bound), rng.randint(1, 9)))
            if not rg.is_zero(v):
                raw.add(v)
        rays = sorted(raw, key=angle_key)
        if all(rg.det2(rays[i], rays[(i + 1) % m]) > 0 for i in range(m)):
            return fan_from_cyclic_rays(rays)
