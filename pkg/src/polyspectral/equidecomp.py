"""Decision oracle for equidecomposability by translations.

Two polytopes of equal volume are equidecomposable by translations exactly
when all their flag invariants agree (completeness of this invariant system
is a classical theorem, used here as an axiom; no dissection is produced).
Invariants over the same flag share the same direction-dependent scale, so
comparisons are made on exact rational parts only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .geometry import Flag, GeometryError, Polytope, polytope_volume
from .hadwiger import HadwigerValue, enumerate_flags, hadwiger_invariant, invariant_profile


@dataclass(frozen=True)
class EquidecompVerdict:
    equidecomposable: bool
    volume_a: Fraction
    volume_b: Fraction
    witnesses: tuple[tuple[Flag, HadwigerValue, HadwigerValue], ...]


def translation_equidecomposable(a: Polytope, b: Polytope) -> EquidecompVerdict:
    """Compare volume and every invariant over the union of enumerated flags."""
    if a.dim != b.dim:
        raise GeometryError("polytopes live in different dimensions")
    vol_a = polytope_volume(a)
    vol_b = polytope_volume(b)
    witnesses = []
    for r in range(1, a.dim):
        flags = sorted(
            set(enumerate_flags(a, r)) | set(enumerate_flags(b, r)),
            key=lambda f: f.normals,
        )
        for flag in flags:
            va = hadwiger_invariant(a, flag)
            vb = hadwiger_invariant(b, flag)
            if va.rational_part != vb.rational_part:
                witnesses.append((flag, va, vb))
    verdict = vol_a == vol_b and not witnesses
    return EquidecompVerdict(verdict, vol_a, vol_b, tuple(witnesses))


def equidecomposable_to_cube(a: Polytope) -> EquidecompVerdict:
    """True exactly when every invariant vanishes.

    A cube of volume Vol_d(A) always exists abstractly and has all invariants
    zero, so no cube coordinates are constructed (the matching cube need not
    have rational vertices).
    """
    vol = polytope_volume(a)
    witnesses = tuple(
        (flag, value, HadwigerValue(Fraction(0), value.scale))
        for flag, value in invariant_profile(a).items()
        if not value.is_zero
    )
    return EquidecompVerdict(not witnesses, vol, vol, witnesses)
