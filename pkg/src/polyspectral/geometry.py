"""Exact rational geometry: simplices, polytopes, subspaces, and flags.

A polytope is stored as a simplicial decomposition (a list of full-dimensional
simplices with pairwise disjoint interiors); all higher-level quantities in
this package are computed per simplex and summed. Coordinates are restricted
to rationals so that every degeneracy and incidence test is decidable.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from . import linalg
from .linalg import Mat, Vec

Rational = Fraction

#: number of random points used per simplex pair when the exact
#: interior-disjointness test is unavailable (ambient dimension > 3)
OVERLAP_SAMPLES = 1000


class GeometryError(ValueError):
    """Invalid geometric input: bad schema, degeneracy, or interior overlap."""


def parse_rational(value) -> Fraction:
    """Parse a rational given as "p/q", "p", a decimal string, or an int."""
    if isinstance(value, bool):
        raise GeometryError(f"expected a rational, got boolean {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise GeometryError(
            "floating-point coordinates are unsupported; pass exact strings like '1/3'"
        )
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise GeometryError(f"malformed rational {value!r}: {exc}") from None
    raise GeometryError(f"expected a rational, got {type(value).__name__}")


def point(*coords) -> Vec:
    """Build an exact point/vector from rationals."""
    return tuple(parse_rational(c) if not isinstance(c, Fraction) else c for c in coords)


@dataclass(frozen=True)
class FaceSimplex:
    """A j-dimensional simplex face embedded in d-space (j+1 vertices)."""

    vertices: tuple[Vec, ...]

    def __post_init__(self):
        verts = tuple(linalg.to_vec(v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        self._validate()

    def _validate(self):
        if not self.vertices:
            raise GeometryError("a simplex needs at least one vertex")
        d = len(self.vertices[0])
        if any(len(v) != d for v in self.vertices):
            raise GeometryError("vertices have inconsistent dimensions")
        r = len(self.vertices) - 1
        if r > d:
            raise GeometryError(f"{r}-face cannot live in dimension {d}")
        if linalg.affine_dim(self.vertices) != r:
            raise GeometryError(
                f"degenerate simplex: {r + 1} vertices span an affine hull of "
                f"dimension {linalg.affine_dim(self.vertices)}"
            )

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    @property
    def ambient(self) -> int:
        return len(self.vertices[0])

    def edge_vectors(self) -> Mat:
        v0 = self.vertices[0]
        return tuple(linalg.vsub(v, v0) for v in self.vertices[1:])

    def centroid(self) -> Vec:
        n = len(self.vertices)
        acc = [Fraction(0)] * self.ambient
        for v in self.vertices:
            acc = [a + x for a, x in zip(acc, v)]
        return tuple(a / n for a in acc)

    def translate(self, tau) -> "FaceSimplex":
        tau = linalg.to_vec(tau)
        return type(self)(tuple(linalg.vadd(v, tau) for v in self.vertices))


@dataclass(frozen=True)
class Simplex(FaceSimplex):
    """A full-dimensional simplex: d+1 affinely independent points in d-space."""

    def _validate(self):
        super()._validate()
        if self.dim != self.ambient:
            raise GeometryError(
                f"full simplex in dimension {self.ambient} needs "
                f"{self.ambient + 1} vertices, got {len(self.vertices)}"
            )


@dataclass(frozen=True)
class Subspace:
    """A linear subspace with a canonical RREF basis.

    The RREF representation is unique for a given subspace, so equality of
    `Subspace` values is equality of subspaces and they hash consistently.
    """

    ambient: int
    basis: Mat

    def __post_init__(self):
        rows, _ = linalg.rref(self.basis)
        if any(len(r) != self.ambient for r in rows):
            raise GeometryError("basis width does not match ambient dimension")
        object.__setattr__(self, "basis", rows)

    @classmethod
    def span(cls, vectors, ambient: int) -> "Subspace":
        return cls(ambient, tuple(linalg.to_vec(v) for v in vectors))

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        return cls(ambient, linalg.identity(ambient))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def pivot_columns(self) -> tuple[int, ...]:
        return tuple(next(i for i, x in enumerate(row) if x != 0) for row in self.basis)

    def contains_vector(self, v) -> bool:
        return linalg.in_rowspace(self.basis, self.pivot_columns(), v)

    def contains(self, other: "Subspace") -> bool:
        return all(self.contains_vector(row) for row in other.basis)


@dataclass(frozen=True)
class Flag:
    """A nested chain of subspaces V_r ⊂ ... ⊂ V_{d-1} with oriented normals.

    `normals[i]` is a primitive integer vector u_{r+i} that lies in V_{r+i+1}
    (V_d being all of d-space), is orthogonal to V_{r+i}, and points into the
    half-space of V_{r+i+1} designated as negative. A flag with r == d has no
    subspaces or normals and denotes plain d-volume.
    """

    ambient: int
    r: int
    subspaces: tuple[Subspace, ...]
    normals: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        d, r = self.ambient, self.r
        if not 0 <= r <= d:
            raise GeometryError(f"flag level {r} out of range for dimension {d}")
        if len(self.subspaces) != d - r or len(self.normals) != d - r:
            raise GeometryError("flag needs one subspace and one normal per level r..d-1")
        norms = []
        for u in self.normals:
            if len(u) != d:
                raise GeometryError("normal has wrong dimension")
            if any(not isinstance(x, int) or isinstance(x, bool) for x in u):
                raise GeometryError("normals must be integer vectors")
            if all(x == 0 for x in u):
                raise GeometryError("zero normal")
            g = 0
            for x in u:
                g = math.gcd(g, abs(x))
            norms.append(tuple(x // g for x in u))
        object.__setattr__(self, "normals", tuple(norms))
        for i, sub in enumerate(self.subspaces):
            if sub.ambient != d:
                raise GeometryError("subspace ambient dimension mismatch")
            if sub.dim != r + i:
                raise GeometryError(f"subspace at level {r + i} has dimension {sub.dim}")
        for i in range(len(self.subspaces)):
            upper = self.subspaces[i + 1] if i + 1 < len(self.subspaces) else Subspace.full(d)
            if not upper.contains(self.subspaces[i]):
                raise GeometryError("flag subspaces are not nested")
            u = self.normals[i]
            if not upper.contains_vector(u):
                raise GeometryError("normal does not lie in the next subspace")
            if any(linalg.dot(u, row) != 0 for row in self.subspaces[i].basis):
                raise GeometryError("normal is not orthogonal to its subspace")

    @classmethod
    def standard(cls, ambient: int, r: int) -> "Flag":
        """The flag whose V_j is the span of the first j coordinate axes.

        Normals are +e_{j+1}: the half-space x_{j+1} > 0 of V_{j+1} is the
        negative one, matching the convention used by the cone-domain
        approximation.
        """
        subs = tuple(
            Subspace.span(linalg.identity(ambient)[:j], ambient) for j in range(r, ambient)
        )
        normals = tuple(
            tuple(1 if i == j else 0 for i in range(ambient)) for j in range(r, ambient)
        )
        return cls(ambient, r, subs, normals)

    @classmethod
    def from_normals(cls, normals_desc, ambient: int | None = None) -> "Flag":
        """Build a flag from normals listed top-down (u_{d-1}, ..., u_r).

        Subspaces are reconstructed as successive orthogonal complements, so
        the normals must be pairwise orthogonal integer vectors.
        """
        normals_desc = [tuple(int(x) for x in u) for u in normals_desc]
        if ambient is None:
            if not normals_desc:
                raise GeometryError("ambient dimension required for a flag with no normals")
            ambient = len(normals_desc[0])
        r = ambient - len(normals_desc)
        if r < 0:
            raise GeometryError("more normals than ambient dimension")
        subs = []
        for j in range(r, ambient):
            stacked = tuple(linalg.to_vec(u) for u in normals_desc[: ambient - j])
            basis = linalg.nullspace(stacked, ambient)
            subs.append(Subspace.span(basis, ambient))
        normals_asc = tuple(reversed(normals_desc))
        return cls(ambient, r, tuple(subs), normals_asc)

    def to_dict(self) -> dict:
        return {"r": self.r, "normals": [list(u) for u in reversed(self.normals)]}

    @classmethod
    def from_dict(cls, obj: dict, ambient: int | None = None) -> "Flag":
        if not isinstance(obj, dict) or "r" not in obj or "normals" not in obj:
            raise GeometryError('flag document must have keys "r" and "normals"')
        flag = cls.from_normals(obj["normals"], ambient)
        if flag.r != obj["r"]:
            raise GeometryError(
                f'flag level mismatch: "r" is {obj["r"]} but {len(obj["normals"])} '
                f"normals in dimension {flag.ambient} give level {flag.r}"
            )
        return flag

    def is_standard(self) -> bool:
        return self == Flag.standard(self.ambient, self.r)

    def flip_normal(self, j: int) -> "Flag":
        """Return the flag with the orientation at level j reversed."""
        i = j - self.r
        normals = list(self.normals)
        normals[i] = tuple(-x for x in normals[i])
        return Flag(self.ambient, self.r, self.subspaces, tuple(normals))


@dataclass(frozen=True)
class LinearMap:
    """An invertible linear map given by an exact d x d matrix."""

    matrix: Mat

    def __post_init__(self):
        m = tuple(linalg.to_vec(row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        n = len(m)
        if any(len(row) != n for row in m):
            raise GeometryError("matrix is not square")
        if linalg.det(m) == 0:
            raise GeometryError("singular matrix")

    @classmethod
    def identity(cls, n: int) -> "LinearMap":
        return cls(linalg.identity(n))

    def determinant(self) -> Fraction:
        return linalg.det(self.matrix)

    def apply(self, v) -> Vec:
        return linalg.matvec(self.matrix, v)

    def inverse_map(self) -> "LinearMap":
        return LinearMap(linalg.inverse(self.matrix))


@dataclass(frozen=True)
class Polytope:
    """A union of finitely many full-dimensional simplices with disjoint interiors."""

    dim: int
    simplices: tuple[Simplex, ...]

    def __post_init__(self):
        if not self.simplices:
            raise GeometryError("polytope needs at least one simplex")
        for s in self.simplices:
            if s.ambient != self.dim:
                raise GeometryError("simplex dimension does not match polytope dimension")

    def translate(self, tau) -> "Polytope":
        return Polytope(self.dim, tuple(s.translate(tau) for s in self.simplices))


def make_polytope(simplices, *, check_disjoint: bool = True, seed: int = 0) -> Polytope:
    """Assemble a polytope, optionally verifying pairwise interior disjointness."""
    simplices = tuple(s if isinstance(s, Simplex) else Simplex(tuple(s)) for s in simplices)
    poly = Polytope(simplices[0].ambient, simplices)
    if check_disjoint:
        check_interior_disjoint(poly, seed=seed)
    return poly


@lru_cache(maxsize=None)
def simplex_volume(s: FaceSimplex) -> Fraction:
    """Exact d-volume of a full-dimensional simplex."""
    d = s.ambient
    if s.dim != d:
        raise GeometryError("volume of a lower-dimensional face is irrational in general")
    return abs(linalg.det(s.edge_vectors())) / math.factorial(d)


@lru_cache(maxsize=None)
def polytope_volume(a: Polytope) -> Fraction:
    return sum((simplex_volume(s) for s in a.simplices), Fraction(0))


def simplex_faces(s: FaceSimplex, j: int) -> list[FaceSimplex]:
    """All j-dimensional faces of a simplex: the (j+1)-subsets of its vertices."""
    if not 0 <= j <= s.dim:
        raise ValueError(f"face dimension {j} out of range 0..{s.dim}")
    return [FaceSimplex(subset) for subset in combinations(s.vertices, j + 1)]


@lru_cache(maxsize=None)
def face_volume(f: FaceSimplex) -> tuple[Fraction, float]:
    """(exact squared j-volume, floating-point j-volume) of a face.

    The squared volume is det(Gram)/ (j!)^2 for the Gram matrix of the edge
    vectors, which is rational; the volume itself is its square root.
    """
    r = f.dim
    sq = linalg.gram_det(f.edge_vectors()) / Fraction(math.factorial(r)) ** 2
    return sq, math.sqrt(sq)


@lru_cache(maxsize=None)
def direction_subspace(f: FaceSimplex) -> Subspace:
    """Canonical subspace parallel to a face (span of its edge vectors)."""
    return Subspace.span(f.edge_vectors(), f.ambient)


def apply_linear(a: Polytope, m: LinearMap) -> Polytope:
    """Image of a polytope under an invertible linear map."""
    if len(m.matrix) != a.dim:
        raise GeometryError("map dimension does not match polytope dimension")
    new = tuple(Simplex(tuple(m.apply(v) for v in s.vertices)) for s in a.simplices)
    out = Polytope(a.dim, new)
    # invertible maps preserve interior disjointness; volumes scale by |det|
    assert polytope_volume(out) == abs(m.determinant()) * polytope_volume(a)
    return out


# ---------------------------------------------------------------------------
# interior disjointness


def _halfspaces(s: Simplex) -> list[tuple[tuple[int, ...], Fraction]]:
    """Facet half-spaces (n, c) with <n, x> <= c for all x in the simplex."""
    out = []
    for i in range(len(s.vertices)):
        rest = s.vertices[:i] + s.vertices[i + 1 :]
        base = rest[0]
        dirs, _ = linalg.rref([linalg.vsub(p, base) for p in rest[1:]])
        n = linalg.complement_normal(linalg.identity(s.ambient), dirs)
        c = linalg.dot(n, base)
        if linalg.dot(n, s.vertices[i]) > c:
            n = tuple(-x for x in n)
            c = -c
        out.append((n, c))
    return out


def _interiors_intersect_exact(s1: Simplex, s2: Simplex) -> bool:
    """Exact test: the intersection polytope has full affine dimension.

    Every vertex of the intersection is the meeting point of d facet
    hyperplanes chosen among the 2(d+1) half-space boundaries, so the full
    vertex set is recovered by enumeration and an exact rank test decides
    whether the intersection has nonempty interior.
    """
    d = s1.ambient
    planes = _halfspaces(s1) + _halfspaces(s2)
    points: set[Vec] = set()
    for combo in combinations(range(len(planes)), d):
        a = tuple(linalg.to_vec(planes[i][0]) for i in combo)
        b = tuple(planes[i][1] for i in combo)
        x = linalg.solve_square(a, b)
        if x is None:
            continue
        if all(linalg.dot(n, x) <= c for n, c in planes):
            points.add(x)
    return linalg.affine_dim(points) == d


def _barycentric(s: Simplex, x: Vec) -> Vec | None:
    d = s.ambient
    a = tuple(
        tuple(s.vertices[j][i] for j in range(d + 1)) for i in range(d)
    ) + ((Fraction(1),) * (d + 1),)
    b = tuple(x) + (Fraction(1),)
    return linalg.solve_square(a, b)


def _interiors_intersect_sampled(s1: Simplex, s2: Simplex, rng: random.Random) -> bool:
    """Heuristic overlap test by exact membership of random interior points."""
    for a, b in ((s1, s2), (s2, s1)):
        n = len(a.vertices)
        for _ in range(OVERLAP_SAMPLES // 2):
            weights = [Fraction(rng.randint(1, 997)) for _ in range(n)]
            total = sum(weights)
            x = [Fraction(0)] * a.ambient
            for w, v in zip(weights, a.vertices):
                x = [xi + w * vi for xi, vi in zip(x, v)]
            x = tuple(xi / total for xi in x)
            lam = _barycentric(b, x)
            if lam is not None and all(l > 0 for l in lam):
                return True
    return False


def _bounding_boxes_disjoint(s1: Simplex, s2: Simplex) -> bool:
    for i in range(s1.ambient):
        lo1 = min(v[i] for v in s1.vertices)
        hi1 = max(v[i] for v in s1.vertices)
        lo2 = min(v[i] for v in s2.vertices)
        hi2 = max(v[i] for v in s2.vertices)
        if hi1 <= lo2 or hi2 <= lo1:
            return True
    return False


def check_interior_disjoint(a: Polytope, *, seed: int = 0) -> None:
    """Verify pairwise disjoint simplex interiors.

    Exact for ambient dimension <= 3. In higher dimensions the test samples
    random interior points and checks membership exactly; this is a
    documented heuristic that can miss thin overlaps.
    """
    rng = random.Random(seed)
    for i, j in combinations(range(len(a.simplices)), 2):
        s1, s2 = a.simplices[i], a.simplices[j]
        if _bounding_boxes_disjoint(s1, s2):
            continue
        if a.dim <= 3:
            overlap = _interiors_intersect_exact(s1, s2)
        else:
            overlap = _interiors_intersect_sampled(s1, s2, rng)
        if overlap:
            raise GeometryError(f"simplices {i} and {j} have overlapping interiors")


# ---------------------------------------------------------------------------
# parsing


def parse_polytope(document, *, seed: int = 0) -> Polytope:
    """Parse and fully validate a polytope document.

    The document is JSON (text or an already-decoded dict) of the form
    ``{"dim": d, "vertices": [["p/q", ...], ...], "simplices": [[i0, ..., id], ...]}``
    with 0-based vertex indices. Decimal strings are read exactly as
    rationals. Duplicate entries in the vertex table are allowed; repeated
    indices within one simplex are not.
    """
    if isinstance(document, (str, bytes)):
        try:
            obj = json.loads(document, parse_float=Fraction)
        except json.JSONDecodeError as exc:
            raise GeometryError(f"invalid JSON: {exc}") from None
    else:
        obj = document
    if not isinstance(obj, dict):
        raise GeometryError("polytope document must be a JSON object")
    for key in ("dim", "vertices", "simplices"):
        if key not in obj:
            raise GeometryError(f'missing key "{key}"')
    dim = obj["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise GeometryError('"dim" must be a positive integer')
    raw_vertices = obj["vertices"]
    if not isinstance(raw_vertices, list) or not raw_vertices:
        raise GeometryError('"vertices" must be a nonempty list')
    vertices = []
    for k, rv in enumerate(raw_vertices):
        if not isinstance(rv, list) or len(rv) != dim:
            raise GeometryError(f"vertex {k} must be a list of {dim} coordinates")
        vertices.append(tuple(parse_rational(c) for c in rv))
    raw_simplices = obj["simplices"]
    if not isinstance(raw_simplices, list) or not raw_simplices:
        raise GeometryError('"simplices" must be a nonempty list')
    simplices = []
    for k, idx in enumerate(raw_simplices):
        if not isinstance(idx, list) or len(idx) != dim + 1:
            raise GeometryError(f"simplex {k} must list {dim + 1} vertex indices")
        if any(not isinstance(i, int) or isinstance(i, bool) for i in idx):
            raise GeometryError(f"simplex {k} has a non-integer index")
        if any(i < 0 or i >= len(vertices) for i in idx):
            raise GeometryError(f"simplex {k} has an out-of-range vertex index")
        if len(set(idx)) != len(idx):
            raise GeometryError(f"simplex {k} repeats a vertex index")
        try:
            simplices.append(Simplex(tuple(vertices[i] for i in idx)))
        except GeometryError as exc:
            raise GeometryError(f"simplex {k}: {exc}") from None
    poly = Polytope(dim, tuple(simplices))
    check_interior_disjoint(poly, seed=seed)
    return poly
