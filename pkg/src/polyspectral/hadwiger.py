"""Hadwiger invariants over flags, and the signed face measures behind them.

For a flag with bottom level r, chains of faces F_r ⊂ ... ⊂ F_d parallel to
the flag's subspaces are enumerated per simplex of the decomposition; faces
interior to the polytope cancel in the signed sums, so the per-simplex
computation agrees with the face-of-the-polytope formulation by additivity.

Zero testing is exact: all bottom faces parallel to V_r share one r-volume
distortion factor under the coordinate projection onto the RREF pivot columns
of V_r, so each invariant splits into an exact rational part and a positive
direction-dependent scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .geometry import (
    FaceSimplex,
    Flag,
    GeometryError,
    Polytope,
    Simplex,
    Subspace,
    direction_subspace,
    face_volume,
    polytope_volume,
    simplex_faces,
)


@dataclass(frozen=True)
class FaceChain:
    """A chain of faces F_r ⊂ ... ⊂ F_d with adjacency signs ε_r..ε_{d-1}."""

    faces: tuple[FaceSimplex, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        if len(self.signs) != len(self.faces) - 1:
            raise GeometryError("need one sign per consecutive face pair")
        for low, high in zip(self.faces, self.faces[1:]):
            if low.dim + 1 != high.dim:
                raise GeometryError("chain faces must increase in dimension by one")
            if not set(low.vertices) <= set(high.vertices):
                raise GeometryError("each chain face must be a face of the next")

    @property
    def weight(self) -> int:
        return math.prod(self.signs)


@dataclass(frozen=True)
class HadwigerValue:
    """An invariant split as scale * rational_part with exact zero testing."""

    rational_part: Fraction
    scale: float

    @property
    def float_value(self) -> float:
        return 0.0 if self.rational_part == 0 else self.scale * float(self.rational_part)

    @property
    def is_zero(self) -> bool:
        return self.rational_part == 0


@dataclass(frozen=True)
class FlagMeasure:
    """Signed r-dimensional volume measure on the bottom faces of flag chains.

    Terms are kept one per chain per simplex (uncombined) in a fixed order:
    simplex index, then lexicographic on face vertices.
    """

    r: int
    terms: tuple[tuple[FaceSimplex, int], ...]

    def total_mass(self) -> float:
        return math.fsum(sign * face_volume(face)[1] for face, sign in self.terms)

    def combined(self) -> dict[tuple, int]:
        """Net integer weight per distinct face support (sorted vertex key)."""
        acc: dict[tuple, int] = {}
        for face, sign in self.terms:
            key = tuple(sorted(face.vertices))
            acc[key] = acc.get(key, 0) + sign
        return acc

    def is_zero(self) -> bool:
        """Exact vanishing after combining terms with identical support.

        Terms supported on faces that overlap only partially are not merged
        (no face-merging across simplices), so for non-conforming
        decompositions this is a sound but conservative test.
        """
        return all(w == 0 for w in self.combined().values())


def _adjoin_sign(normal: tuple[int, ...], lower: FaceSimplex, upper: FaceSimplex) -> int:
    """+1 when `upper` adjoins `lower` on the positive side of the flag level.

    The normal points into the negative half-space, so the positive side is
    where the inner product with the normal is negative. The centroid of the
    upper face is never on the lower face's hull, so the sign is well defined.
    """
    s = linalg.dot(normal, linalg.vsub(upper.centroid(), lower.vertices[0]))
    return 1 if s < 0 else -1


@lru_cache(maxsize=None)
def face_chains(s: Simplex, flag: Flag) -> tuple[FaceChain, ...]:
    """All chains of faces of one simplex parallel to the flag, with signs.

    Returns an empty tuple when the simplex has no parallel chain.
    """
    d = s.ambient
    if flag.ambient != d:
        raise GeometryError("flag and simplex dimensions differ")
    r = flag.r
    descending: list[tuple[FaceSimplex, ...]] = [(s,)]
    for j in range(d - 1, r - 1, -1):
        v_j = flag.subspaces[j - r]
        nxt = []
        for chain in descending:
            for sub in simplex_faces(chain[-1], j):
                if direction_subspace(sub) == v_j:
                    nxt.append(chain + (sub,))
        descending = nxt
        if not descending:
            return ()
    chains = []
    for chain in descending:
        faces = tuple(reversed(chain))
        signs = tuple(
            _adjoin_sign(flag.normals[i], faces[i], faces[i + 1])
            for i in range(d - r)
        )
        chains.append(FaceChain(faces, signs))
    chains.sort(key=lambda ch: tuple(ch.faces[0].vertices))
    return tuple(chains)


@lru_cache(maxsize=None)
def flag_measure(a: Polytope, flag: Flag) -> FlagMeasure:
    """The signed bottom-face measure of a polytope with respect to a flag.

    For a flag at the top level (r = d) the terms are the simplices of the
    decomposition themselves with weight +1. For r = 0 the faces are single
    vertices carrying unit Dirac masses; their total signed mass is zero.
    """
    if flag.ambient != a.dim:
        raise GeometryError("flag and polytope dimensions differ")
    terms = []
    for s in a.simplices:
        for chain in face_chains(s, flag):
            terms.append((chain.faces[0], chain.weight))
    return FlagMeasure(flag.r, tuple(terms))


def canonical_flag(a_dim: int, subspaces: tuple[Subspace, ...], r: int) -> Flag:
    """The canonically oriented flag over a nested subspace sequence.

    Each normal is the primitive integer generator of the orthogonal
    complement of V_j inside V_{j+1}, with its first nonzero entry positive.
    """
    d = a_dim
    normals = []
    for i in range(len(subspaces)):
        upper = subspaces[i + 1].basis if i + 1 < len(subspaces) else linalg.identity(d)
        u = linalg.complement_normal(upper, subspaces[i].basis)
        normals.append(linalg.sign_canonical(u))
    return Flag(d, r, subspaces, tuple(normals))


def enumerate_flags(a: Polytope, r: int) -> tuple[Flag, ...]:
    """The finite set of canonical flags at level r with nonzero face measure.

    Candidate subspace sequences are read off the face chains of the
    simplices; sequences whose combined measure cancels exactly are dropped.
    Every flag whose invariant or measure is nonzero appears in the list (its
    opposite-orientation partner is represented implicitly by the canonical
    orientation).
    """
    d = a.dim
    if not 0 <= r <= d - 1:
        raise ValueError(f"flag level {r} out of range 1..{d - 1}")
    sequences: set[tuple[Subspace, ...]] = set()

    def descend(face: FaceSimplex, j: int, acc: tuple[Subspace, ...]) -> None:
        if j < r:
            sequences.add(tuple(reversed(acc)))
            return
        for sub in simplex_faces(face, j):
            descend(sub, j - 1, acc + (direction_subspace(sub),))

    for s in a.simplices:
        descend(s, d - 1, ())

    flags = []
    for seq in sequences:
        flag = canonical_flag(d, seq, r)
        if not flag_measure(a, flag).is_zero():
            flags.append(flag)
    flags.sort(key=lambda f: f.normals)
    return tuple(flags)


@lru_cache(maxsize=None)
def hadwiger_invariant(a: Polytope, flag: Flag) -> HadwigerValue:
    """Signed sum of bottom-face r-volumes over all chains parallel to the flag.

    The rational part is the sum of projected volumes on the pivot columns of
    V_r; the scale is the common distortion factor sqrt(det(B Bᵀ)) of the RREF
    basis B. A flag with no parallel chains yields an exact zero. For a flag
    at level d the value is the d-volume of the polytope.
    """
    d = a.dim
    r = flag.r
    if not 1 <= r <= d:
        raise ValueError(f"invariant level {r} out of range 1..{d}")
    if flag.ambient != d:
        raise GeometryError("flag and polytope dimensions differ")
    if r == d:
        return HadwigerValue(polytope_volume(a), 1.0)
    v_r = flag.subspaces[0]
    pivots = v_r.pivot_columns()
    scale_sq = linalg.gram_det(v_r.basis)
    total = Fraction(0)
    for s in a.simplices:
        for chain in face_chains(s, flag):
            edges = chain.faces[0].edge_vectors()
            proj = tuple(tuple(e[p] for p in pivots) for e in edges)
            total += chain.weight * abs(linalg.det(proj))
    rational = total / math.factorial(r)
    return HadwigerValue(rational, math.sqrt(scale_sq))


def invariant_profile(a: Polytope) -> dict[Flag, HadwigerValue]:
    """All invariants of a polytope over its enumerated flags, levels 1..d-1.

    Zero-valued entries are kept: the profile has no nonzero entry exactly
    when the necessary condition for spectrality (and for tiling by
    translations) holds.
    """
    profile: dict[Flag, HadwigerValue] = {}
    for r in range(1, a.dim):
        for flag in enumerate_flags(a, r):
            profile[flag] = hadwiger_invariant(a, flag)
    return profile
