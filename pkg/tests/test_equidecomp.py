import random
from fractions import Fraction

import pytest

from polyspectral import (
    GeometryError,
    equidecomposable_to_cube,
    make_polytope,
    non_spectrality_certificate,
    translation_equidecomposable,
)
from conftest import poly_from_triangles, random_polytope


class TestTranslationEquidecomposable:
    def test_translate_is_equivalent(self, square):
        moved = square.translate((Fraction(5), Fraction(7)))
        verdict = translation_equidecomposable(square, moved)
        assert verdict.equidecomposable
        assert verdict.witnesses == ()
        assert verdict.volume_a == verdict.volume_b == 1

    def test_triangle_vs_square_of_equal_area(self, triangle, half_square):
        verdict = translation_equidecomposable(triangle, half_square)
        assert not verdict.equidecomposable
        assert verdict.volume_a == verdict.volume_b == Fraction(1, 2)
        assert len(verdict.witnesses) == 3
        edge_dirs = {flag.subspaces[0].basis for flag, _, _ in verdict.witnesses}
        assert len(edge_dirs) == 3

    def test_tromino_vs_rectangle(self, tromino, rect31):
        verdict = translation_equidecomposable(tromino, rect31)
        assert verdict.equidecomposable
        assert verdict.volume_a == verdict.volume_b == 3

    def test_volume_mismatch(self, square, rect31):
        verdict = translation_equidecomposable(square, rect31)
        assert not verdict.equidecomposable

    def test_dimension_mismatch(self, square, cube3):
        with pytest.raises(GeometryError):
            translation_equidecomposable(square, cube3)

    def test_reflexive_and_symmetric(self, triangle, half_square):
        assert translation_equidecomposable(triangle, triangle).equidecomposable
        ab = translation_equidecomposable(triangle, half_square)
        ba = translation_equidecomposable(half_square, triangle)
        assert ab.equidecomposable == ba.equidecomposable
        swapped = {
            (flag, vb.rational_part, va.rational_part) for flag, va, vb in ab.witnesses
        }
        assert swapped == {
            (flag, va.rational_part, vb.rational_part) for flag, va, vb in ba.witnesses
        }

    def test_random_translates(self):
        rng = random.Random(19)
        for d in (2, 3):
            poly = random_polytope(rng, d, 3)
            tau = tuple(Fraction(rng.randint(-40, 40), 7) for _ in range(d))
            verdict = translation_equidecomposable(poly, poly.translate(tau))
            assert verdict.equidecomposable

    def test_two_halves_make_a_box(self):
        left = poly_from_triangles([(0, 0), (1, 0), (1, 1)], [(0, 0), (1, 1), (0, 1)])
        right = left.translate((Fraction(1), Fraction(0)))
        union = make_polytope(left.simplices + right.simplices)
        box = poly_from_triangles([(0, 0), (2, 0), (2, 1)], [(0, 0), (2, 1), (0, 1)])
        assert translation_equidecomposable(union, box).equidecomposable


class TestEquidecomposableToCube:
    def test_cube_to_cube(self, square, cube3):
        assert equidecomposable_to_cube(square).equidecomposable
        assert equidecomposable_to_cube(cube3).equidecomposable

    def test_tromino_is_cubable(self, tromino):
        verdict = equidecomposable_to_cube(tromino)
        assert verdict.equidecomposable
        assert verdict.volume_a == 3  # the target cube is abstract, volume only

    def test_triangle_is_not(self, triangle):
        verdict = equidecomposable_to_cube(triangle)
        assert not verdict.equidecomposable
        assert len(verdict.witnesses) == 3
        assert all(vb.rational_part == 0 for _, _, vb in verdict.witnesses)

    def test_agrees_with_certificates(self, triangle, square, tromino, hexagon):
        for poly in (triangle, square, tromino, hexagon):
            cert = non_spectrality_certificate(poly)
            verdict = equidecomposable_to_cube(poly)
            assert (cert is not None) == (not verdict.equidecomposable)
