"""Cone-domain main-term verification and almost-period machinery.

In a cone of frequencies where the last d-r coordinates dominate each other
in a controlled geometric fashion, the indicator transform times the product
of (-2 pi i xi_j) factors approaches the transform of the level-r flag
measure. This module verifies that approximation numerically over sampled
cone frequencies, restricted along rays it degenerates to one-variable
trigonometric polynomials, whose integer almost-periods are searched by
simultaneous diophantine approximation.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .geometry import Flag, GeometryError, LinearMap, Polytope, apply_linear, face_volume
from .fourier import Frequency, ft_flag_measure, ft_indicator
from .hadwiger import flag_measure

#: parameter search used by verify_main_term: c halves from 1 down to 2^-20,
#: and the cone opening alpha halves alongside it starting from 1/4
DEFAULT_SCHEDULE = tuple((0.5**i, 0.25 * 0.5**i) for i in range(21))

DEFAULT_SAMPLES = 1000
MAGNITUDE_DECADES = 3


@dataclass(frozen=True)
class ConeDomain:
    """Frequencies whose coordinates r+1..d grow geometrically.

    Membership requires |xi_j| <= alpha |xi_{r+1}| for j <= r, L <= |xi_{r+1}|,
    and |xi_j| <= 2 delta |xi_{j+1}| for r+1 <= j <= d-1.
    """

    dim: int
    r: int
    alpha: float
    L: float
    delta: float

    def __post_init__(self):
        if not 0 <= self.r <= self.dim - 1:
            raise GeometryError(f"cone level {self.r} out of range for dimension {self.dim}")
        if not (0 < 2 * self.delta < self.alpha < 1):
            raise GeometryError("cone parameters must satisfy 0 < 2*delta < alpha < 1")
        if self.L <= 0:
            raise GeometryError("cone threshold L must be positive")


@dataclass(frozen=True)
class TrigPoly:
    """A finite exponential sum p(t) = sum c_k exp(2 pi i tau_k t)."""

    terms: tuple[tuple[complex, float], ...]

    def eval(self, t: float) -> complex:
        return sum(
            (c * cmath.exp(2j * math.pi * tau * t) for c, tau in self.terms),
            complex(0.0),
        )

    def sum_abs_coeffs(self) -> float:
        return math.fsum(abs(c) for c, _ in self.terms)


@dataclass(frozen=True)
class MainTermReport:
    eta: float
    delta_used: float
    L_used: float
    alpha_used: float
    samples: int
    max_residual: float
    passed: bool
    empirical_c: float | None
    witness_xi: tuple[float, ...] | None


def cone_contains(k: ConeDomain, xi: Frequency) -> bool:
    """Pure conjunction of the three cone inequalities."""
    if xi.dim != k.dim:
        raise GeometryError("frequency dimension does not match the cone's")
    x = xi.floats()
    r = k.r
    pivot = abs(x[r])
    if any(abs(x[j]) > k.alpha * pivot for j in range(r)):
        return False
    if pivot < k.L:
        return False
    for j in range(r, k.dim - 1):
        if abs(x[j]) > 2.0 * k.delta * abs(x[j + 1]):
            return False
    return True


def sample_cone(
    k: ConeDomain,
    count: int,
    magnitude_range: tuple[float, float],
    seed: int = 0,
) -> list[Frequency]:
    """Deterministic cone members: |xi_{r+1}| drawn log-uniformly over the
    magnitude range (covering every decade evenly), then each constrained
    coordinate uniform in its allowed interval.

    The upward coordinates r+2..d have a one-sided constraint; their
    magnitudes are drawn within one octave above the minimum allowed.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    lo, hi = magnitude_range
    lo = max(lo, k.L)
    if hi < lo:
        raise ValueError(f"empty feasible range: upper bound {hi} below {lo}")
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        x = [0.0] * k.dim
        pivot = math.exp(rng.uniform(math.log(lo), math.log(hi)))
        pivot = min(max(pivot, lo), hi)
        x[k.r] = pivot if rng.random() < 0.5 else -pivot
        for j in range(k.r):
            x[j] = rng.uniform(-k.alpha * pivot, k.alpha * pivot)
        for j in range(k.r + 1, k.dim):
            floor_mag = abs(x[j - 1]) / (2.0 * k.delta)
            mag = rng.uniform(floor_mag, 2.0 * floor_mag)
            x[j] = mag if rng.random() < 0.5 else -mag
        xi = Frequency.float_mode(tuple(x))
        if cone_contains(k, xi):  # guards the rare boundary rounding
            out.append(xi)
    return out


def standardize_flag(a: Polytope, flag: Flag) -> tuple[LinearMap, Polytope, Flag]:
    """Map a flag onto the standard coordinate flag, carrying the polytope along.

    The map sends V_j onto the span of the first j axes and each normal onto
    +e_{j+1}, so the half-space orientations match the standard convention.
    """
    d = flag.ambient
    if a.dim != d:
        raise GeometryError("flag and polytope dimensions differ")
    if flag.r == d:
        ident = LinearMap.identity(d)
        return ident, a, flag
    cols = list(flag.subspaces[0].basis) + [linalg.to_vec(u) for u in flag.normals]
    basis_matrix = linalg.transpose(tuple(cols))
    m = LinearMap(linalg.inverse(basis_matrix))
    return m, apply_linear(a, m), Flag.standard(d, flag.r)


def main_term_residual(
    a: Polytope, flag: Flag, xi: Frequency, precision: int = 53
) -> float:
    """| indicator transform * prod_{j>r} (-2 pi i xi_j) - flag-measure transform |."""
    if not flag.is_standard():
        raise GeometryError("flag must be in standard position")
    x = xi.floats()
    factor = complex(1.0)
    for j in range(flag.r, a.dim):
        factor *= complex(0.0, -2.0 * math.pi * x[j])
    lhs = ft_indicator(a, xi, precision).as_complex() * factor
    rhs = ft_flag_measure(a, flag, xi, precision).as_complex()
    return abs(lhs - rhs)


def verify_main_term(
    a: Polytope,
    flag: Flag,
    eta: float,
    schedule=None,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    precision: int = 53,
) -> MainTermReport:
    """Search cone parameters until the main-term residual stays below eta.

    The flag is standardized first. Each schedule entry (c, alpha) is tried
    with delta = c*eta and L = 1/(c*eta) over `samples` sampled frequencies
    spanning three magnitude decades above L; the first passing entry is
    reported with its c. On failure the report carries the best entry's
    residual and the witness frequency attaining it.
    """
    if eta <= 0:
        raise ValueError("eta must be positive")
    _, a2, flag2 = standardize_flag(a, flag)
    d, r = flag2.ambient, flag2.r
    entries = DEFAULT_SCHEDULE if schedule is None else tuple(schedule)
    best: tuple[float, float, ConeDomain, tuple[float, ...]] | None = None
    for c, alpha in entries:
        delta = c * eta
        big_l = 1.0 / (c * eta)
        if not (0 < 2 * delta < alpha < 1):
            continue
        cone = ConeDomain(d, r, alpha, big_l, delta)
        points = sample_cone(cone, samples, (big_l, big_l * 10.0**MAGNITUDE_DECADES), seed)
        max_residual = -1.0
        witness = points[0]
        for xi in points:
            res = main_term_residual(a2, flag2, xi, precision)
            if res > max_residual:
                max_residual = res
                witness = xi
        if max_residual < eta:
            return MainTermReport(
                eta=eta,
                delta_used=delta,
                L_used=big_l,
                alpha_used=alpha,
                samples=len(points),
                max_residual=max_residual,
                passed=True,
                empirical_c=c,
                witness_xi=None,
            )
        if best is None or max_residual < best[0]:
            best = (max_residual, c, cone, witness.floats())
    if best is None:
        raise ValueError("schedule contained no valid cone parameters")
    max_residual, c, cone, witness = best
    return MainTermReport(
        eta=eta,
        delta_used=cone.delta,
        L_used=cone.L,
        alpha_used=cone.alpha,
        samples=samples,
        max_residual=max_residual,
        passed=False,
        empirical_c=None,
        witness_xi=witness,
    )


def trig_poly(a: Polytope, flag: Flag, delta: float) -> TrigPoly:
    """Restrict the flag-measure transform to the ray t * (sum delta^{d-j} e_j).

    Along that ray the first r frequency coordinates vanish, so each measure
    term contributes a constant coefficient (its signed r-volume) times one
    exponential whose rate is determined by the face's fixed offsets in the
    last d-r coordinates. Terms with exactly equal rates are combined.
    """
    if not flag.is_standard():
        raise GeometryError("flag must be in standard position")
    d, r = flag.ambient, flag.r
    if not 1 <= r <= d - 1:
        raise ValueError(f"level {r} out of range 1..{d - 1}")
    if delta <= 0:
        raise ValueError("delta must be positive")
    fm = flag_measure(a, flag)
    combined: dict[float, complex] = {}
    for face, sign in fm.terms:
        offsets = face.vertices[0][r:]
        tau = -math.fsum(float(off) * delta ** (d - j) for off, j in zip(offsets, range(r + 1, d + 1)))
        c = complex(sign * face_volume(face)[1])
        combined[tau] = combined.get(tau, complex(0.0)) + c
    terms = tuple(sorted(((c, tau) for tau, c in combined.items()), key=lambda t: t[1]))
    return TrigPoly(terms)


def ray_vector(d: int, r: int, delta: float) -> tuple[float, ...]:
    """The direction sum_{j=r+1}^{d} delta^{d-j} e_j used by trig_poly."""
    return tuple(0.0 if j <= r else delta ** (d - j) for j in range(1, d + 1))


def almost_periods(p: TrigPoly, eta: float, t_max: int) -> list[int]:
    """Integers t in [0, t_max] with dist(tau_k t, Z) < eta / (4 pi sum|c_k|).

    Any two returned integers t, t' satisfy |p(t'-t) - p(0)| < eta, since each
    exponential moves by at most 2 pi times its rate's distance from the
    integers. For the zero polynomial every integer qualifies.
    """
    if eta <= 0:
        raise ValueError("eta must be positive")
    if t_max < 1:
        raise ValueError("t_max must be at least 1")
    total = p.sum_abs_coeffs()
    if total == 0:
        return list(range(t_max + 1))
    bound = eta / (4.0 * math.pi * total)
    rates = [tau for _, tau in p.terms]
    out = []
    for t in range(t_max + 1):
        if all(abs(tau * t - round(tau * t)) < bound for tau in rates):
            out.append(t)
    return out
