"""Fourier transforms of polytope indicators and flag measures.

Face transforms are evaluated by the divergence-theorem recursion that lowers
a k-face integral to its (k-1)-dimensional boundary facets, bottoming out at
vertex exponentials. Two accuracy measures keep the evaluation trustworthy:

* every phase argument <xi, x> is reduced modulo 1 in exact rational
  arithmetic before any floating-point rounding, so accuracy does not degrade
  at large frequencies;
* orthogonality of xi to a face (which switches the recursion to a different
  closed form) is decided exactly; a nearly-orthogonal direction triggers
  re-evaluation at higher working precision instead of a silent branch switch.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import NamedTuple

import mpmath
import numpy as np

from . import linalg
from .geometry import (
    FaceSimplex,
    Flag,
    GeometryError,
    Polytope,
    direction_subspace,
    simplex_volume,
)
from .hadwiger import face_chains, flag_measure

#: relative projection size below which the evaluation escalates precision
DEGENERACY_THRESHOLD = Fraction(1, 10**12)

#: hard ceiling on escalated working precision; beyond it escalation is
#: exhausted (a float-mode error, a clamped best effort in exact mode)
PRECISION_CAP_BITS = 1024


class PrecisionError(ArithmeticError):
    """A frequency is too close to a face direction for reliable evaluation."""


@dataclass(frozen=True)
class Frequency:
    """A frequency vector, exact or floating-point.

    Coordinates are stored as exact rationals either way (binary floats
    convert exactly), so incidence tests never misclassify; the mode flag
    only controls the error policy near degeneracies.
    """

    coords: tuple[Fraction, ...]
    exact: bool = True

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    @classmethod
    def exact_mode(cls, coords) -> "Frequency":
        return cls(tuple(Fraction(c) for c in coords), True)

    @classmethod
    def float_mode(cls, coords) -> "Frequency":
        return cls(tuple(Fraction(c) for c in coords), False)

    @property
    def dim(self) -> int:
        return len(self.coords)

    def floats(self) -> tuple[float, ...]:
        return tuple(float(c) for c in self.coords)

    def sq_norm(self) -> Fraction:
        return sum((c * c for c in self.coords), Fraction(0))

    def norm(self) -> float:
        return math.sqrt(self.sq_norm())

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def minus(self, other: "Frequency") -> "Frequency":
        return Frequency(linalg.vsub(self.coords, other.coords), self.exact and other.exact)

    def negated(self) -> "Frequency":
        return Frequency(tuple(-c for c in self.coords), self.exact)


@dataclass(frozen=True)
class ComplexValue:
    """A complex result carrying the working precision that produced it."""

    re: object
    im: object
    precision_bits: int = 53

    def __post_init__(self):
        if not (math.isfinite(float(self.re)) and math.isfinite(float(self.im))):
            raise ArithmeticError("non-finite transform value")

    def as_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __abs__(self) -> float:
        return abs(self.as_complex())

    def re_str(self) -> str:
        return _num_str(self.re, self.precision_bits)

    def im_str(self) -> str:
        return _num_str(self.im, self.precision_bits)


def _num_str(x, bits: int) -> str:
    if bits <= 53:
        return repr(float(x))
    return mpmath.nstr(x, int(bits * 0.3010) + 2)


class _NeedsPrecision(Exception):
    def __init__(self, bits: int):
        self.bits = bits


class _FloatCtx:
    bits = 53
    minus_two_pi_i = complex(0.0, -2.0 * math.pi)

    @staticmethod
    def phase(frac: Fraction) -> complex:
        # frac is an exact phase in [0, 1); e^{-2 pi i frac}
        return cmath.exp(-2j * math.pi * float(frac))

    @staticmethod
    def real(q: Fraction) -> float:
        return float(q)

    @staticmethod
    def sqrt(q: Fraction) -> float:
        return math.sqrt(q)


class _MPCtx:
    def __init__(self, bits: int):
        self.bits = bits
        with mpmath.workprec(bits):
            self.minus_two_pi_i = mpmath.mpc(0, -2) * mpmath.pi

    def phase(self, frac: Fraction):
        with mpmath.workprec(self.bits):
            t = mpmath.mpf(frac.numerator) / frac.denominator
            return mpmath.expjpi(-2 * t)

    def real(self, q: Fraction):
        with mpmath.workprec(self.bits):
            return mpmath.mpf(q.numerator) / q.denominator

    def sqrt(self, q: Fraction):
        with mpmath.workprec(self.bits):
            return mpmath.sqrt(self.real(q))


class _FaceGeo(NamedTuple):
    proj: linalg.Mat | None
    sq_vol: Fraction
    facets: tuple[tuple[tuple[linalg.Vec, ...], tuple[int, ...], Fraction], ...]


@lru_cache(maxsize=None)
def _face_geometry(vertices: tuple[linalg.Vec, ...]) -> _FaceGeo:
    """Frequency-independent data of one face: projector, volume, facet normals."""
    k = len(vertices) - 1
    if k == 0:
        return _FaceGeo(None, Fraction(1), ())
    base = vertices[0]
    edges = tuple(linalg.vsub(v, base) for v in vertices[1:])
    basis, _ = linalg.rref(edges)
    proj = linalg.projection_matrix(basis, len(base))
    sq_vol = linalg.gram_det(edges) / Fraction(math.factorial(k)) ** 2
    facets = []
    for i in range(len(vertices)):
        fverts = vertices[:i] + vertices[i + 1 :]
        fbase = fverts[0]
        fdirs, _ = linalg.rref([linalg.vsub(v, fbase) for v in fverts[1:]])
        n = linalg.complement_normal(basis, fdirs)
        # outward: away from the dropped vertex
        if linalg.dot(n, linalg.vsub(vertices[i], fbase)) > 0:
            n = tuple(-x for x in n)
        facets.append((fverts, n, linalg.dot(n, n)))
    return _FaceGeo(proj, sq_vol, tuple(facets))


def _frac_mod_1(q: Fraction) -> Fraction:
    return q - (q.numerator // q.denominator)


def _eval_face(vertices, xi: tuple[Fraction, ...], xi_sq: Fraction, ctx, guard: bool, memo: dict):
    val = memo.get(vertices)
    if val is not None:
        return val
    geo = _face_geometry(vertices)
    if len(vertices) == 1:
        val = ctx.phase(_frac_mod_1(linalg.dot(xi, vertices[0])))
    else:
        v = linalg.matvec(geo.proj, xi)
        if linalg.is_zero(v):
            val = ctx.sqrt(geo.sq_vol) * ctx.phase(_frac_mod_1(linalg.dot(xi, vertices[0])))
        else:
            den = linalg.dot(xi, v)  # equals |v|^2 > 0
            if guard:
                rel = den / xi_sq
                if rel < DEGENERACY_THRESHOLD**2:
                    deficit = rel.denominator.bit_length() - rel.numerator.bit_length()
                    if ctx.bits < 50 + deficit:
                        raise _NeedsPrecision(50 + deficit)
            acc = _Kahan()
            for fverts, n, n_sq in geo.facets:
                cn = linalg.dot(n, v)
                if cn == 0:
                    continue
                coeff = ctx.real(cn) / ctx.sqrt(n_sq)
                acc.add(coeff * _eval_face(fverts, xi, xi_sq, ctx, guard, memo))
            val = acc.total / (ctx.minus_two_pi_i * ctx.real(den))
    memo[vertices] = val
    return val


class _Kahan:
    """Compensated summation; works for both complex and mpmath values."""

    def __init__(self):
        self.total = 0
        self._c = 0

    def add(self, x):
        y = x - self._c
        t = self.total + y
        self._c = (t - self.total) - y
        self.total = t


def _sum_terms(terms, xi: Frequency, xi_sq: Fraction, ctx, guard: bool):
    memo: dict = {}
    acc = _Kahan()
    for sign, face in terms:
        acc.add(sign * _eval_face(face.vertices, xi.coords, xi_sq, ctx, guard, memo))
    return acc.total


def _evaluate_terms(terms, xi: Frequency, precision: int) -> ComplexValue:
    """Sum of sign * transform(face) over terms, with precision escalation.

    Terms are visited in their given (deterministic) order with compensated
    summation. If a nearly-degenerate direction is met, the whole sum is
    re-evaluated at escalated precision; in float mode, running out of
    precision raises :class:`PrecisionError`, while exact-mode inputs are
    evaluated at the precision ceiling as a best effort.
    """
    xi_sq = xi.sq_norm()
    bits = max(53, int(precision))
    guard = xi_sq != 0
    while True:
        try:
            if bits <= 53:
                z = _sum_terms(terms, xi, xi_sq, _FloatCtx(), guard)
                z = complex(z)
                return ComplexValue(z.real, z.imag, 53)
            with mpmath.workprec(bits):
                z = mpmath.mpc(_sum_terms(terms, xi, xi_sq, _MPCtx(bits), guard))
                return ComplexValue(z.real, z.imag, bits)
        except _NeedsPrecision as esc:
            needed = max(113, esc.bits, 2 * bits)
            if needed > PRECISION_CAP_BITS:
                if not xi.exact:
                    raise PrecisionError(
                        "frequency is too close to a face direction; escalation "
                        f"beyond {PRECISION_CAP_BITS} bits required"
                    ) from None
                bits = PRECISION_CAP_BITS
                guard = False
            else:
                bits = needed


def ft_face_measure(f: FaceSimplex, xi: Frequency, precision: int = 53) -> ComplexValue:
    """The transform of the k-volume measure on one face at frequency xi.

    If xi is orthogonal to the face's direction subspace (decided exactly)
    the value is Vol_k(f) times the constant phase on the face; otherwise the
    boundary recursion applies with v chosen as the orthogonal projection of
    xi onto the direction subspace, which maximizes the denominator <xi, v>
    among unit-scaled choices.
    """
    if xi.dim != f.ambient:
        raise GeometryError("frequency and face dimensions differ")
    return _evaluate_terms(((1, f),), xi, precision)


@lru_cache(maxsize=None)
def ft_flag_measure(a: Polytope, flag: Flag, xi: Frequency, precision: int = 53) -> ComplexValue:
    """Transform of the signed flag measure: sum of sign * face transforms."""
    if xi.dim != a.dim:
        raise GeometryError("frequency and polytope dimensions differ")
    fm = flag_measure(a, flag)
    terms = tuple((sign, face) for face, sign in fm.terms)
    return _evaluate_terms(terms, xi, precision)


@lru_cache(maxsize=None)
def ft_indicator(a: Polytope, xi: Frequency, precision: int = 53) -> ComplexValue:
    """Transform of the indicator function: the flag measure at the top level."""
    if xi.dim != a.dim:
        raise GeometryError("frequency and polytope dimensions differ")
    terms = tuple((1, s) for s in a.simplices)
    return _evaluate_terms(terms, xi, precision)


def stokes_residual(
    a: Polytope, flag: Flag, v, xi: Frequency, precision: int = 53
) -> float:
    """Absolute defect of the boundary identity lowering a k-flag measure.

    For v in V_k the identity -2 pi i <xi, v> mu_hat_k(xi) equals the sum over
    direction classes of boundary facets of <sigma_l, v> mu_hat_{k-1}^l(xi),
    where sigma_l is the unit normal of class l inside V_k oriented toward
    its negative half-space. Both sides are evaluated independently; the
    residual is used for property testing.
    """
    k = flag.r
    if k < 1:
        raise ValueError("need a flag of level at least 1")
    d = a.dim
    v = linalg.to_vec(v)
    v_k = flag.subspaces[0] if k < d else None
    if v_k is not None and not v_k.contains_vector(v):
        raise GeometryError("vector does not lie in the flag's bottom subspace")

    lhs_factor = complex(0.0, -2.0 * math.pi * float(linalg.dot(xi.coords, v)))
    lhs = lhs_factor * ft_flag_measure(a, flag, xi, precision).as_complex()

    classes: dict = {}
    for s in a.simplices:
        for chain in face_chains(s, flag):
            f_k = chain.faces[0]
            for fverts, _, _ in _face_geometry(f_k.vertices).facets:
                sub = FaceSimplex(fverts)
                w = direction_subspace(sub)
                classes.setdefault(w, None)
    bottom_basis = v_k.basis if v_k is not None else linalg.identity(d)
    rhs = complex(0.0, 0.0)
    for w in sorted(classes, key=lambda sp: sp.basis):
        sigma = linalg.sign_canonical(linalg.complement_normal(bottom_basis, w.basis))
        coeff = float(linalg.dot(sigma, v)) / math.sqrt(linalg.dot(sigma, sigma))
        lower = Flag(d, k - 1, (w,) + flag.subspaces, (sigma,) + flag.normals)
        rhs += coeff * ft_flag_measure(a, lower, xi, precision).as_complex()
    return abs(lhs - rhs)


# ---------------------------------------------------------------------------
# midpoint quadrature over barycentric subdivisions (independent oracle)


@lru_cache(maxsize=4)
def _quadrature_cells(a: Polytope, depth: int):
    d = a.dim
    perms = list(permutations(range(d + 1)))
    n_children = len(perms)
    cells_per_simplex = n_children**depth
    if cells_per_simplex * len(a.simplices) > 6_000_000:
        raise ValueError("subdivision too deep for this polytope")
    pieces = []
    vol_diam_sum = 0.0
    total_vol = 0.0
    scale = np.arange(1, d + 2, dtype=float)[None, :, None]
    for s in a.simplices:
        cells = np.array([[float(x) for x in vtx] for vtx in s.vertices])[None, :, :]
        for _ in range(depth):
            children = [np.cumsum(cells[:, perm, :], axis=1) / scale for perm in perms]
            cells = np.concatenate(children, axis=0)
        centroids = cells.mean(axis=1)
        diam = np.zeros(cells.shape[0])
        for i in range(d + 1):
            for j in range(i + 1, d + 1):
                np.maximum(diam, np.linalg.norm(cells[:, i] - cells[:, j], axis=1), out=diam)
        vol = float(simplex_volume(s))
        leaf_vol = vol / cells_per_simplex
        pieces.append((centroids, leaf_vol))
        vol_diam_sum += leaf_vol * float(diam.sum())
        total_vol += vol
    return tuple(pieces), vol_diam_sum, total_vol


def quadrature_oracle(
    a: Polytope, xi: Frequency, subdivisions: int
) -> tuple[ComplexValue, float]:
    """Midpoint-rule estimate of the indicator transform with a rigorous bound.

    Each simplex is barycentrically subdivided `subdivisions` times and the
    integrand is sampled at cell centroids. The returned bound is the standard
    midpoint bound sum(vol_cell * L * diam_cell) with Lipschitz constant
    L = 2 pi |xi|, plus a small allowance for floating-point summation.
    """
    if subdivisions < 1:
        raise ValueError("subdivisions must be at least 1")
    if xi.dim != a.dim:
        raise GeometryError("frequency and polytope dimensions differ")
    pieces, vol_diam_sum, total_vol = _quadrature_cells(a, subdivisions)
    xf = np.array(xi.floats())
    est = 0.0 + 0.0j
    for centroids, leaf_vol in pieces:
        phases = np.exp(-2j * np.pi * (centroids @ xf))
        est += leaf_vol * complex(phases.sum())
    bound = 2.0 * math.pi * xi.norm() * vol_diam_sum + 1e-12 * total_vol
    return ComplexValue(est.real, est.imag, 53), bound
