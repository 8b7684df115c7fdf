import random
from fractions import Fraction

import pytest

from nokpoly.errors import InvalidMultiplicity, OutOfRange
from nokpoly.exactnum import QuadraticNumber, qn_compare, sqrt_exact
from nokpoly.lattice import CurveClass, lattice_new
from nokpoly.models import elliptic_square_model
from nokpoly.polygon import (
    LAMBDA,
    NOKPolygon,
    area,
    build_generic_polygon,
    contains_inverted_simplex,
    envelope_check,
    lambda_interior_meets,
    largest_inverted_simplex,
    slice,
    triangle_containment_check,
)
from nokpoly.verify import sample_models
from nokpoly.zariski import ray_chambers
from oracles import dense_vertices, exe_beta, exe_mu, shoelace

Z = Fraction(0)


def _poly(model, scale=1):
    return build_generic_polygon(model.L * Fraction(scale), model.catalog)


def test_exe_polygon_against_dense_oracle(exe432):
    poly = _poly(exe432)
    mu = exe_mu(4, 3, 2)
    oracle = dense_vertices(lambda t: exe_beta(4, 3, 2, t), Z, mu, 900)
    want = set(oracle) | {(mu, Z)}
    assert set(poly.vertices) == want
    assert poly.vertices[0] == (Z, Z)
    assert area(poly) == shoelace(oracle + [(mu, Z)]) == 26
    assert poly.slopes() == [1, 0, -1, -2]


def test_rho1_polygon_is_inverted_simplex():
    lat = lattice_new([[46]])
    poly = build_generic_polygon(lat.cls([1]), [])
    r = sqrt_exact(46)
    assert set(poly.vertices) == {(Z, Z), (r, Z), (r, r)}
    assert area(poly) == 23
    assert largest_inverted_simplex(poly) == r
    assert slice(poly, r) == (0, r)  # vertical right edge


def test_homogeneity_and_slices(exe432):
    poly = _poly(exe432)
    third = _poly(exe432, Fraction(1, 3))
    assert third.same_shape(poly.scaled(Fraction(1, 3)))
    assert _poly(exe432, Fraction(1, 2)).same_shape(poly.scaled(Fraction(1, 2)))
    assert slice(poly, 2) == (0, 2)
    assert slice(third, 2) == (0, Fraction(5, 3))
    assert slice(poly, 9) == (0, 0)
    with pytest.raises(OutOfRange):
        slice(poly, Fraction(91, 10))
    with pytest.raises(OutOfRange):
        slice(poly, -1)


def test_degenerate_point_polygon():
    p = NOKPolygon.from_points([(Z, Z)])
    assert area(p) == 0
    assert contains_inverted_simplex(p, 0)
    assert largest_inverted_simplex(p) == 0


def test_inverted_simplex(exe432):
    poly = _poly(exe432)
    assert largest_inverted_simplex(poly) == 5
    assert contains_inverted_simplex(poly, 5)
    assert not contains_inverted_simplex(poly, Fraction(501, 100))
    assert contains_inverted_simplex(poly, 0)
    xi = Fraction(7, 3)
    tri = NOKPolygon.from_points([(Z, Z), (xi, Z), (xi, xi)])
    assert largest_inverted_simplex(tri) == xi


def test_lambda(exe432):
    meets, w = lambda_interior_meets(_poly(exe432, Fraction(1, 2)))
    assert meets and LAMBDA.contains(w, strict=True)
    assert _poly(exe432, Fraction(1, 2)).contains(w, strict=True)
    lat = lattice_new([[2]])
    assert lambda_interior_meets(build_generic_polygon(lat.cls([1]), [])) == (False, None)
    # raw polygons touching Lambda only along its boundary
    above = NOKPolygon.from_points([(Z, Z), (Fraction(4), Fraction(2)), (Fraction(4), Fraction(4))])
    assert lambda_interior_meets(above) == (False, None)
    wall = NOKPolygon.from_points([(Z, Z), (Fraction(2), Z), (Fraction(2), Fraction(2))])
    assert lambda_interior_meets(wall) == (False, None)
    segment = NOKPolygon.from_points([(Z, Z), (Fraction(6), Fraction(1))])
    assert lambda_interior_meets(segment) == (False, None)
    # irrational clip still yields a rational witness
    lat = lattice_new([[46]])
    meets, w = lambda_interior_meets(build_generic_polygon(lat.cls([1]), []))
    assert meets and all(isinstance(c, Fraction) for c in w) and LAMBDA.contains(w, strict=True)


def test_generic_polygons_meet_lambda_iff_long_enough():
    for m in sample_models(21, 60, "Mixed"):
        for k in (1, 2, 3, 4, 6):
            poly = _poly(m, Fraction(1, k))
            long_enough = qn_compare(poly.mu_prime, 2) > 0
            assert lambda_interior_meets(poly)[0] == long_enough


def test_envelope_exe(exe432):
    rc = ray_chambers(exe432.L, exe432.catalog)
    rep = envelope_check(_poly(exe432), rc)
    assert rep.ok
    l1, l2, l3 = rep.lines
    assert (l1.slope, l1.intercept, l1.start, l1.end) == (0, 5, 5, 6)
    assert (l2.slope, l2.intercept) == (-1, 11)
    assert (l3.slope, l3.intercept) == (-2, 18)
    assert rep.slice_equal == (True, True, True)
    assert rep.nested == (True, True)


def test_envelope_empty_and_ties():
    lat = lattice_new([[46]])
    rc = ray_chambers(lat.cls([1]), [])
    rep = envelope_check(NOKPolygon.from_chambers(rc), rc)
    assert rep.ok and rep.lines == ()
    m = elliptic_square_model(3, 3, 3)
    rc = ray_chambers(m.L, m.catalog)
    rep = envelope_check(NOKPolygon.from_chambers(rc), rc)
    assert rep.ok
    assert [ln.slope for ln in rep.lines] == [0, -1, -2]
    assert [ln.start for ln in rep.lines] == [6, 6, 6]
    # with both equal curves in, slope 1 - 2 = -1 from the common wall (first two lines)
    assert rep.lines[1](Fraction(6)) == 6


def test_envelope_reports_failure_for_slow_coefficient():
    lat = lattice_new([[25, 3], [3, -1]])
    C = CurveClass("C", lat.basis_vector(1), 1)
    B = lat.basis_vector(0)
    rc = ray_chambers(B, [C])
    rep = envelope_check(NOKPolygon.from_chambers(rc), rc)
    # Cbar^2 = -2: coefficient (t - 3)/2 grows slower than t - 3, so the slice rises above l_1
    assert not rep.ok and rep.slice_ok == (False,)
    assert rep.failures()


def test_triangles(exe432):
    assert triangle_containment_check(_poly(exe432), 5, 1)
    assert not triangle_containment_check(_poly(exe432), 4, 1)
    lat = lattice_new([[10, 5], [5, 2]])
    C = CurveClass("C", lat.basis_vector(1), 2)
    poly = build_generic_polygon(lat.basis_vector(0), [C])
    mu = QuadraticNumber(5, Fraction(-1, 2), 10)
    assert poly.mu_prime == mu
    assert triangle_containment_check(poly, 5, 2)
    assert not triangle_containment_check(poly, 4, 2)
    assert area(poly) == 5
    with pytest.raises(InvalidMultiplicity):
        triangle_containment_check(poly, 5, 0)
    eps = Fraction(3)
    simplex = NOKPolygon.from_points([(Z, Z), (eps, Z), (eps, eps)])
    assert triangle_containment_check(simplex, 6, 2)


def test_invariants_on_samples():
    rng = random.Random(4)
    for m in sample_models(17, 80, "Mixed"):
        B = m.L / rng.randint(1, 4)
        poly = build_generic_polygon(B, m.catalog)
        assert area(poly) == B.square() / 2
        slopes = poly.slopes()
        assert all(qn_compare(a, b) > 0 for a, b in zip(slopes, slopes[1:]))
        assert all(qn_compare(y, x) <= 0 and y >= 0 for x, y in poly.vertices)
        lower = poly.lower_boundary
        assert len(lower) == 1 and lower[0].slope == 0 and lower[0].intercept == 0
