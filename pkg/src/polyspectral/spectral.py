"""Orthogonality checks and non-spectrality / non-tiling certificates.

A finite window of a candidate frequency set is orthogonal for a polytope
exactly when the indicator transform vanishes on all pairwise differences.
A single nonzero invariant certifies that the polytope is not spectral and
not a translational tile; the all-zero condition is necessary but not
sufficient, so an empty scan is inconclusive.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import linalg
from .geometry import Flag, GeometryError, Polytope
from .fourier import Frequency, ft_indicator
from .hadwiger import HadwigerValue, hadwiger_invariant, invariant_profile

DEFAULT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class SpectrumCandidate:
    """A finite window of a candidate spectrum (pairwise distinct points)."""

    points: tuple[Frequency, ...]

    def __post_init__(self):
        dims = {p.dim for p in self.points}
        if len(dims) > 1:
            raise GeometryError("candidate points have inconsistent dimensions")
        if len({p.coords for p in self.points}) != len(self.points):
            raise GeometryError("candidate points must be pairwise distinct")

    @classmethod
    def from_dict(cls, obj: dict) -> "SpectrumCandidate":
        if not isinstance(obj, dict) or "points" not in obj:
            raise GeometryError('spectrum document must have a "points" key')
        pts = tuple(Frequency.exact_mode(tuple(Fraction(c) for c in p)) for p in obj["points"])
        return cls(pts)


@dataclass(frozen=True)
class OrthogonalityReport:
    violations: tuple[tuple[Frequency, Frequency, float], ...]
    min_separation: float | None
    checked_pairs: int
    tol: float


@dataclass(frozen=True)
class Certificate:
    """A witness flag with a provably nonzero invariant."""

    flag: Flag
    value: HadwigerValue
    statement: str  # "not_spectral" or "not_translational_tile"

    def __post_init__(self):
        if self.value.rational_part == 0:
            raise ValueError("a certificate needs a nonzero invariant")
        if self.statement not in ("not_spectral", "not_translational_tile"):
            raise ValueError(f"unknown certificate statement {self.statement!r}")


@dataclass(frozen=True)
class CentralSymmetryReport:
    body_symmetric: bool
    center: tuple[Fraction, ...] | None
    facets_symmetric: bool | None  # None when not computed (dimension > 3)


def orthogonality_report(
    a: Polytope,
    candidate: SpectrumCandidate,
    tol: float = DEFAULT_TOLERANCE,
    precision: int = 53,
) -> OrthogonalityReport:
    """Check |1_A transform| on all pairwise differences of candidate points.

    Pairs whose modulus reaches `tol` are reported as violations, in
    lexicographic pair order. The minimum pairwise distance is included as
    context for uniform discreteness.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    pts = sorted(candidate.points, key=lambda p: p.coords)
    violations = []
    min_sep: float | None = None
    count = 0
    for lam, lam2 in combinations(pts, 2):
        count += 1
        diff = lam2.minus(lam)
        sep = diff.norm()
        if min_sep is None or sep < min_sep:
            min_sep = sep
        modulus = abs(ft_indicator(a, diff, precision))
        if modulus >= tol:
            violations.append((lam, lam2, modulus))
    return OrthogonalityReport(tuple(violations), min_sep, count, tol)


def non_spectrality_certificate(a: Polytope) -> Certificate | None:
    """First nonzero invariant over the enumerated flags, as a certificate.

    A nonzero value proves that the polytope is not spectral; because a
    polytope with all-zero invariants is translationally equidecomposable to
    a cube, the same witness also rules out tiling by translations. Returns
    None when every invariant vanishes (inconclusive).
    """
    for flag, value in invariant_profile(a).items():
        if not value.is_zero:
            return Certificate(flag, value, "not_spectral")
    return None


def _is_extreme(p, others, d: int) -> bool:
    """Exact extremality via small-subset convex combinations."""
    for size in range(1, d + 2):
        for subset in combinations(others, size):
            if linalg.affine_dim(subset) != size - 1:
                continue
            a = tuple(tuple(q[i] for q in subset) for i in range(d)) + (
                (Fraction(1),) * size,
            )
            lam = _solve_rect(a, tuple(p) + (Fraction(1),))
            if lam is not None and all(x >= 0 for x in lam):
                return False
    return True


def _solve_rect(a, b):
    """One exact solution of a (possibly rectangular) consistent system."""
    rows = [list(linalg.to_vec(r)) + [Fraction(bv)] for r, bv in zip(a, b, strict=True)]
    ncols = len(rows[0]) - 1
    reduced, pivots = linalg.rref(rows)
    sol = [Fraction(0)] * ncols
    for row, pc in zip(reduced, pivots):
        if pc == ncols:  # inconsistent: pivot in the augmented column
            return None
        sol[pc] = row[-1]
    return tuple(sol)


def _assert_convex_position(points, d: int) -> None:
    for i, p in enumerate(points):
        others = points[:i] + points[i + 1 :]
        if not _is_extreme(p, others, d):
            raise GeometryError(f"vertex {i} is not extreme: input is not in convex position")


def _hull_facets(points, d: int) -> list[tuple]:
    facets: dict = {}
    for subset in combinations(points, d):
        if linalg.affine_dim(subset) != d - 1:
            continue
        base = subset[0]
        dirs, _ = linalg.rref([linalg.vsub(q, base) for q in subset[1:]])
        n = linalg.complement_normal(linalg.identity(d), dirs)
        c = linalg.dot(n, base)
        sides = [linalg.dot(n, q) - c for q in points]
        if all(s <= 0 for s in sides):
            pass
        elif all(s >= 0 for s in sides):
            n = tuple(-x for x in n)
            c = -c
            sides = [-s for s in sides]
        else:
            continue
        members = tuple(q for q, s in zip(points, sides) if s == 0)
        facets[(n, c)] = members
    return list(facets.values())


def _point_set_symmetric(points) -> tuple[bool, tuple[Fraction, ...]]:
    n = len(points)
    center = tuple(sum(col, Fraction(0)) / n for col in zip(*points))
    reflected = {tuple(2 * c - x for c, x in zip(center, p)) for p in points}
    return reflected == set(points), center


def central_symmetry_report(vertices, d: int) -> CentralSymmetryReport:
    """Exact central-symmetry check of a convex vertex set, and of its facets.

    The candidate center is the vertex average; the body is symmetric exactly
    when the vertex set is invariant under reflection through it. Facets are
    enumerated by supporting-hyperplane grouping for d <= 3 only (convex
    position is also verified exactly in that range; in higher dimensions it
    is the caller's responsibility).
    """
    pts = tuple(linalg.to_vec(v) for v in vertices)
    if len(pts) < d + 1:
        raise GeometryError(f"need at least {d + 1} vertices in dimension {d}")
    if any(len(p) != d for p in pts):
        raise GeometryError("vertex dimension mismatch")
    if len(set(pts)) != len(pts):
        raise GeometryError("vertices must be distinct")
    if d <= 3:
        _assert_convex_position(pts, d)
    body_symmetric, center = _point_set_symmetric(pts)
    facets_symmetric: bool | None = None
    if d <= 3:
        facets_symmetric = all(
            _point_set_symmetric(facet)[0] for facet in _hull_facets(pts, d)
        )
    return CentralSymmetryReport(
        body_symmetric=body_symmetric,
        center=center if body_symmetric else None,
        facets_symmetric=facets_symmetric,
    )
