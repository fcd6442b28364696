"""Geometric oracle for Gamma(P, Q) in exact arithmetic.

The vertex set comes straight from antichains; facets are found by brute
force over affinely independent point subsets (d <= 4) and compared with
the H-representation read off the signed chains (row ``sum_{i in sP} x_i -
sum_{j in sQ} x_j <= 1``).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Sequence

import numpy as np

from .chains import antichains
from .errors import DegenerateInput, DimensionMismatch, SizeError, UnvalidatedInput
from .exact import bareiss_rank, det_batch, in_convex_hull
from .poset import Poset
from .twinned import FacetFamily

BRUTE_FORCE_MAX_D = 4

LatticePoint = tuple


@dataclass(frozen=True, order=True)
class HalfSpace:
    """``normal . x <= rhs``."""

    normal: tuple[int, ...]
    rhs: int

    def __post_init__(self):
        if not any(self.normal):
            raise ValueError("half-space normal must be nonzero")

    def normalized(self) -> "HalfSpace":
        g = 0
        for a in self.normal:
            g = gcd(g, a)
        g = gcd(g, self.rhs)
        return HalfSpace(tuple(a // g for a in self.normal), self.rhs // g)

    def value(self, x) -> int:
        return sum(a * b for a, b in zip(self.normal, x))


@dataclass(frozen=True)
class HRep:
    d: int
    rows: tuple[HalfSpace, ...]
    validated: bool = False

    def __len__(self):
        return len(self.rows)

    def row_set(self) -> frozenset[HalfSpace]:
        return frozenset(r.normalized() for r in self.rows)


@dataclass
class ValidationReport:
    hrep: HRep
    valid: bool
    facet_support: bool | None = None
    complete: bool | None = None
    violations: list = field(default_factory=list)
    unsupported_rows: list = field(default_factory=list)
    hrep_vertices: int | None = None
    n_vertices: int | None = None

    @property
    def ok(self) -> bool:
        return self.valid and self.facet_support is not False and self.complete is not False


def point_cloud(P: Poset, Q: Poset) -> list[LatticePoint]:
    if P.d != Q.d:
        raise DimensionMismatch(f"|P| = {P.d} but |Q| = {Q.d}")
    d = P.d
    pts = set()
    for m in antichains(P).masks:
        pts.add(tuple((m >> i) & 1 for i in range(d)))
    for m in antichains(Q).masks:
        pts.add(tuple(-((m >> i) & 1) for i in range(d)))
    return sorted(pts)


def affine_rank(points: Sequence[Sequence[int]]) -> int:
    if not points:
        return -1
    base = points[0]
    return bareiss_rank([[a - b for a, b in zip(p, base)] for p in points[1:]])


def vertices(points: Sequence[Sequence[int]]) -> tuple[LatticePoint, ...]:
    """Extreme points, each decided by an exact hull-membership LP."""
    pts = sorted(set(tuple(p) for p in points))
    d = len(pts[0]) if pts else 0
    if affine_rank(pts) < d:
        raise DegenerateInput("points do not span the ambient space")
    out = []
    for k, p in enumerate(pts):
        if not in_convex_hull(p, pts[:k] + pts[k + 1:]):
            out.append(p)
    return tuple(out)


def brute_force_facets(points: Sequence[Sequence[int]]) -> HRep:
    pts = sorted(set(tuple(p) for p in points))
    d = len(pts[0])
    if d > BRUTE_FORCE_MAX_D:
        raise SizeError(f"brute-force facets limited to d <= {BRUTE_FORCE_MAX_D}, got {d}")
    if affine_rank(pts) < d:
        raise DegenerateInput("points do not span the ambient space")
    X = np.array(pts, dtype=np.int64)
    H = np.hstack([X, np.ones((len(pts), 1), dtype=np.int64)])
    combos = np.array(list(combinations(range(len(pts)), d)), dtype=np.int64)
    M = H[combos]  # (K, d, d+1)
    # null vector of each d x (d+1) block by signed maximal minors
    cols = list(range(d + 1))
    y = np.stack(
        [(-1) ** j * det_batch(M[:, :, cols[:j] + cols[j + 1:]]) for j in cols], axis=1
    )
    a, a0 = y[:, :d], y[:, d]
    keep = np.any(a != 0, axis=1)
    a, a0 = a[keep], a0[keep]
    s = X @ a.T + a0[None, :]  # (n, K): a.x - b with b = -a0
    below = np.all(s <= 0, axis=0)
    above = np.all(s >= 0, axis=0)
    rows = set()
    for k in np.nonzero(below | above)[0]:
        sign = 1 if below[k] else -1
        hs = HalfSpace(tuple(int(sign * v) for v in a[k]), int(-sign * a0[k])).normalized()
        rows.add(hs)
    out = []
    for hs in sorted(rows):
        tight = [p for p in pts if hs.value(p) == hs.rhs]
        if affine_rank(tight) == d - 1:
            out.append(hs)
    return HRep(d, tuple(out))


def hrep_from_chains(family: FacetFamily) -> HRep:
    rows = []
    for c in family:
        normal = [0] * family.d
        for i in c.sP:
            normal[i - 1] = 1
        for j in c.sQ:
            normal[j - 1] = -1
        rows.append(HalfSpace(tuple(normal), 1))
    return HRep(family.d, tuple(rows))


def _hrep_vertex_set(hrep: HRep) -> set[tuple[Fraction, ...]]:
    d = hrep.d
    A = np.array([r.normal for r in hrep.rows], dtype=np.int64)
    b = np.array([r.rhs for r in hrep.rows], dtype=np.int64)
    combos = np.array(list(combinations(range(len(hrep.rows)), d)), dtype=np.int64)
    if len(combos) == 0:
        return set()
    As = A[combos]  # (K, d, d)
    bs = b[combos]  # (K, d)
    det = det_batch(As)
    nz = det != 0
    As, bs, det = As[nz], bs[nz], det[nz]
    num = np.empty((len(det), d), dtype=np.int64)
    for j in range(d):
        Aj = As.copy()
        Aj[:, :, j] = bs
        num[:, j] = det_batch(Aj)  # Cramer: x_j = num_j / det
    sgn = np.sign(det)
    lhs = (num @ A.T) * sgn[:, None]
    feasible = np.all(lhs <= b[None, :] * np.abs(det)[:, None], axis=1)
    out = set()
    for k in np.nonzero(feasible)[0]:
        out.add(tuple(Fraction(int(num[k, j]), int(det[k])) for j in range(d)))
    return out


def validate_hrep(
    points: Sequence[Sequence[int]],
    hrep: HRep,
    validity: bool = True,
    facet_support: bool = True,
    completeness: bool | None = None,
) -> ValidationReport:
    """Check an H-representation against a point cloud.

    ``completeness`` defaults to on for d <= 4 and enumerates the vertices of
    the H-polytope from every d-subset of rows.
    """
    pts = sorted(set(tuple(p) for p in points))
    d = hrep.d
    if completeness is None:
        completeness = d <= BRUTE_FORCE_MAX_D
    if completeness and d > BRUTE_FORCE_MAX_D:
        raise SizeError(f"completeness check limited to d <= {BRUTE_FORCE_MAX_D}, got {d}")
    rep = ValidationReport(hrep=hrep, valid=True)
    if validity:
        for k, r in enumerate(hrep.rows):
            for p in pts:
                if r.value(p) > r.rhs:
                    rep.violations.append((k, p))
        rep.valid = not rep.violations
    if facet_support:
        for k, r in enumerate(hrep.rows):
            tight = [p for p in pts if r.value(p) == r.rhs]
            if not tight or affine_rank(tight) != d - 1:
                rep.unsupported_rows.append(k)
        rep.facet_support = not rep.unsupported_rows
    if completeness:
        hv = _hrep_vertex_set(hrep)
        vs = {tuple(Fraction(x) for x in v) for v in vertices(pts)}
        rep.hrep_vertices = len(hv)
        rep.n_vertices = len(vs)
        rep.complete = hv == vs
    if rep.ok and validity and facet_support:
        rep.hrep = replace(hrep, validated=True)
    return rep


def is_reflexive(hrep: HRep) -> bool:
    """Every facet has a primitive integer normal with right-hand side 1."""
    if not hrep.validated:
        raise UnvalidatedInput("run validate_hrep first")
    for r in hrep.rows:
        if r.rhs <= 0:
            return False
        g = 0
        for a in r.normal:
            g = gcd(g, a)
        if Fraction(r.rhs, g) != 1:
            return False
    return True


def format_hrep(hrep: HRep) -> str:
    return "".join(" ".join(str(a) for a in r.normal) + f" | {r.rhs}\n" for r in hrep.rows)


def format_vrep(points: Sequence[Sequence[int]]) -> str:
    return "".join(" ".join(str(x) for x in p) + "\n" for p in points)


def parse_hrep(text: str) -> HRep:
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        lhs, rhs = line.split("|")
        rows.append(HalfSpace(tuple(int(t) for t in lhs.split()), int(rhs)))
    d = len(rows[0].normal) if rows else 0
    return HRep(d, tuple(rows))


def parse_vrep(text: str) -> list[LatticePoint]:
    return [tuple(int(t) for t in line.split()) for line in text.splitlines() if line.strip()]
