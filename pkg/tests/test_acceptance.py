"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest -s tests/test_acceptance.py` to see the lines as they pass.
Tolerances and runtime caps are pinned in each test.
"""

import math
import random
import time
from contextlib import contextmanager
from fractions import Fraction
from itertools import product

import pytest

from polyspectral import (
    Flag,
    Frequency,
    enumerate_flags,
    equidecomposable_to_cube,
    flag_measure,
    ft_flag_measure,
    ft_indicator,
    hadwiger_invariant,
    invariant_profile,
    non_spectrality_certificate,
    orthogonality_report,
    quadrature_oracle,
    ray_vector,
    stokes_residual,
    translation_equidecomposable,
    trig_poly,
    verify_main_term,
    SpectrumCandidate,
    TrigPoly,
    almost_periods,
)
from polyspectral.cli import main as cli_main
from conftest import (
    cube_closed_form,
    cube_polytope,
    poly_from_triangles,
    random_polytope,
)


@contextmanager
def criterion(number, name, runtime_cap):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {number:02d} {name}: FAIL")
        raise
    elapsed = time.perf_counter() - start
    print(f"ACCEPTANCE {number:02d} {name}: PASS ({elapsed:.2f}s, cap {runtime_cap}s)")
    assert elapsed < runtime_cap


def bounded_frequency(rng, d, max_norm):
    while True:
        coords = tuple(
            Fraction(rng.randint(-5 * max_norm, 5 * max_norm), 5) for _ in range(d)
        )
        sq = sum((c * c for c in coords), Fraction(0))
        if 0 < sq <= max_norm**2:
            return Frequency.exact_mode(coords)


def test_c01_cube_invariants():
    with criterion(1, "cube-invariants-vanish", 1.0):
        for d in (2, 3):
            profile = invariant_profile(cube_polytope(d))
            assert profile
            for value in profile.values():
                assert value.rational_part == 0


def test_c02_triangle_certificate(triangle, tmp_path):
    with criterion(2, "triangle-certificate", 1.0):
        profile = invariant_profile(triangle)
        nonzero = [v for v in profile.values() if not v.is_zero]
        assert len(nonzero) == 3
        assert sorted(abs(v.rational_part) for v in nonzero) == [1, 1, 1]
        doc = tmp_path / "triangle.json"
        doc.write_text(
            '{"dim": 2, "vertices": [["0","0"],["1","0"],["0","1"]], "simplices": [[0,1,2]]}'
        )
        assert cli_main(["certify", str(doc)]) == 2


def test_c03_mass_identity():
    with criterion(3, "flag-measure-mass-identity", 30.0):
        rng = random.Random(2024)
        for i in range(20):
            d = 2 if i % 2 == 0 else 3
            poly = random_polytope(rng, d, 4)
            zero = Frequency.exact_mode((Fraction(0),) * d)
            for r in range(1, d):
                for flag in enumerate_flags(poly, r):
                    v = ft_flag_measure(poly, flag, zero).as_complex()
                    h = hadwiger_invariant(poly, flag).float_value
                    assert abs(v - h) < 1e-12


def test_c04_stokes_identity():
    with criterion(4, "boundary-identity-residual", 60.0):
        rng = random.Random(777)
        cases = 0
        while cases < 200:
            d = 2 if cases % 2 == 0 else 3
            poly = random_polytope(rng, d, 3)
            for _ in range(5):
                k = rng.randint(1, d)
                if k == d:
                    flag = Flag(d, d, (), ())
                    v = tuple(Fraction(rng.randint(-4, 4)) for _ in range(d))
                else:
                    flags = enumerate_flags(poly, k)
                    if not flags:
                        continue
                    flag = rng.choice(flags)
                    basis = flag.subspaces[0].basis
                    coeffs = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in basis]
                    v = tuple(
                        sum((c * row[i] for c, row in zip(coeffs, basis)), Fraction(0))
                        for i in range(d)
                    )
                xi = bounded_frequency(rng, d, 10)
                assert stokes_residual(poly, flag, v, xi) < 1e-10
                cases += 1
                if cases == 200:
                    break


def test_c05_fourier_oracle_equivalence(triangle, tromino, cube3):
    with criterion(5, "quadrature-oracle-equivalence", 120.0):
        rng = random.Random(55)
        for poly, depth in ((cube3, 3), (triangle, 6), (tromino, 5)):
            for _ in range(50):
                xi = bounded_frequency(rng, poly.dim, 5)
                est, bound = quadrature_oracle(poly, xi, depth)
                v = ft_indicator(poly, xi).as_complex()
                assert abs(est.as_complex() - v) <= bound
        # separable closed form on the cube, including degenerate directions
        cases = [bounded_frequency(rng, 3, 5).coords for _ in range(20)]
        cases += [
            (Fraction(0), Fraction(0), Fraction(0)),
            (Fraction(1, 2), Fraction(0), Fraction(0)),
            (Fraction(0), Fraction(3), Fraction(-2, 3)),
            (Fraction(1), Fraction(2), Fraction(0)),
        ]
        for coords in cases:
            v = ft_indicator(cube3, Frequency.exact_mode(coords)).as_complex()
            assert abs(v - cube_closed_form(coords)) < 1e-12


def test_c06_spectrum_check():
    with criterion(6, "cube-lattice-spectrum-check", 30.0):
        for d in (2, 3):
            poly = cube_polytope(d)
            pts = tuple(
                Frequency.exact_mode(tuple(Fraction(c) for c in coords))
                for coords in product(range(4), repeat=d)
            )
            report = orthogonality_report(poly, SpectrumCandidate(pts), tol=1e-9)
            assert report.checked_pairs == math.comb(4**d, 2)
            assert report.violations == ()
            shift = (Fraction(1, 2),) + (Fraction(0),) * (d - 1)
            moved = pts[:-1] + (
                Frequency.exact_mode(
                    tuple(c + s for c, s in zip(pts[-1].coords, shift))
                ),
            )
            perturbed = orthogonality_report(poly, SpectrumCandidate(moved), tol=1e-9)
            assert len(perturbed.violations) >= 1


def test_c07_main_term_verification(square, triangle, cube3):
    with criterion(7, "cone-domain-main-term", 120.0):
        eta = 0.05
        report = verify_main_term(square, Flag.standard(2, 1), eta, seed=1)
        assert report.passed and report.max_residual < 1e-12
        for flag in enumerate_flags(triangle, 1):
            report = verify_main_term(triangle, flag, eta, seed=2)
            assert report.passed, (flag, report.max_residual)
        for r in (1, 2):
            report = verify_main_term(cube3, Flag.standard(3, r), eta, seed=3)
            assert report.passed, (r, report.max_residual)


def test_c08_trig_poly_identities(square, triangle):
    with criterion(8, "ray-restriction-identities", 30.0):
        rng = random.Random(88)
        delta = 0.29
        for poly in (square, triangle):
            flag = Flag.standard(2, 1)
            p = trig_poly(poly, flag, delta)
            h = hadwiger_invariant(poly, flag).float_value
            assert abs(p.eval(0) - h) < 1e-12
            ray = ray_vector(2, 1, delta)
            for _ in range(50):
                t = rng.uniform(-100, 100)
                xi = Frequency.float_mode(tuple(t * c for c in ray))
                assert abs(p.eval(t) - ft_flag_measure(poly, flag, xi).as_complex()) < 1e-10
        eta = 0.1
        for p in (
            trig_poly(square, Flag.standard(2, 1), delta),
            trig_poly(triangle, Flag.standard(2, 1), delta),
            TrigPoly(((complex(0.7), math.sqrt(2)), (complex(-0.3), 1 / math.e))),
        ):
            periods = almost_periods(p, eta, 5000)
            assert periods
            sample = periods[: min(len(periods), 32)]
            for t in sample:
                for t2 in sample:
                    assert abs(p.eval(t2 - t) - p.eval(0)) < eta


def test_c09_equidecomposability_verdicts(tromino, rect31, triangle, half_square):
    with criterion(9, "translational-equidecomposability", 10.0):
        assert translation_equidecomposable(tromino, rect31).equidecomposable
        verdict = translation_equidecomposable(triangle, half_square)
        assert not verdict.equidecomposable
        assert verdict.witnesses
        rng = random.Random(99)
        for d in (2, 3):
            poly = random_polytope(rng, d, 3)
            tau = tuple(Fraction(rng.randint(-30, 30), 11) for _ in range(d))
            assert translation_equidecomposable(poly, poly.translate(tau)).equidecomposable
        assert equidecomposable_to_cube(tromino).equidecomposable
        assert non_spectrality_certificate(tromino) is None


def test_c10_decomposition_independence(square, square_alt):
    with criterion(10, "triangulation-independence", 5.0):
        pa = invariant_profile(square)
        pb = invariant_profile(square_alt)
        assert set(pa) == set(pb)
        for flag in pa:
            assert pa[flag].rational_part == pb[flag].rational_part
        rng = random.Random(10)
        for _ in range(20):
            xi = bounded_frequency(rng, 2, 8)
            va = ft_indicator(square, xi).as_complex()
            vb = ft_indicator(square_alt, xi).as_complex()
            assert abs(va - vb) < 1e-12
