import itertools
import random
from fractions import Fraction

import pytest
import sympy

from nokpoly.errors import DegenerateRay, LatticeMismatch, NotPseudoeffective
from nokpoly.exactnum import QuadraticNumber, sqrt_exact
from nokpoly.lattice import CurveClass, lattice_new
from nokpoly.models import elliptic_square_model
from nokpoly.verify import oracle_zariski, sample_models
from nokpoly.zariski import ray_chambers, zariski_decompose
from oracles import exe_beta, zariski_brute


def _D(model, t, scale=1):
    bl, _ = model.blown_up
    return bl.pullback(model.L * scale) - Fraction(t) * bl.exceptional


def test_decompose_at_six(exe432):
    bl, (F1, F2, Dl) = exe432.blown_up
    z = zariski_decompose(_D(exe432, 6), exe432.catalog)
    assert z.negative_coeffs == {"F1": 1}
    E = bl.exceptional
    assert z.positive.dot(E) == 5
    assert z.positive.dot(F2) == 0
    assert z.positive.dot(Dl) == 1
    # sympy brute force on the same intersection data (F1, F2, Delta, E)
    curves = [F1, F2, Dl, E]
    gram = [[u.dot(v) for v in curves] for u in curves]
    hits = zariski_brute(gram, [_D(exe432, 6).dot(c) for c in curves])
    assert hits == [((0,), [sympy.Integer(1)])]


def test_decompose_trivial_cases(exe432):
    for t in (0, 3):
        z = zariski_decompose(_D(exe432, t), exe432.catalog)
        assert z.negative_coeffs == {}
        assert z.positive == z.input


def test_decompose_invariants(exe432):
    bl, transforms = exe432.blown_up
    for t in [Fraction(k, 4) for k in range(0, 36)]:
        z = zariski_decompose(_D(exe432, t), exe432.catalog)
        N = z.input - z.positive
        assert z.positive.dot(N) == 0
        for c, tr in zip(exe432.catalog, transforms):
            assert z.positive.dot(tr) >= 0
            if c.name in z.negative_coeffs:
                assert z.positive.dot(tr) == 0
                assert z.negative_coeffs[c.name] > 0
        assert z.positive.dot(bl.exceptional) >= 0


def test_decompose_order_independent():
    for m in sample_models(5, 30, "Mixed"):
        rc = ray_chambers(m.L, m.catalog)
        t = rc.chambers[-1].start + Fraction(1, 7) * (rc.chambers[-1].end - rc.chambers[-1].start) \
            if isinstance(rc.chambers[-1].end, Fraction) else rc.chambers[-1].start
        D = _D(m, t)
        ref = zariski_decompose(D, m.catalog)
        for perm in itertools.permutations(m.catalog):
            assert zariski_decompose(D, perm) == ref


def test_not_pseudoeffective(exe432):
    with pytest.raises(NotPseudoeffective):
        zariski_decompose(_D(exe432, 10), exe432.catalog)
    with pytest.raises(LatticeMismatch):
        zariski_decompose(exe432.L, exe432.catalog)


def test_chambers_exe(exe432):
    rc = ray_chambers(exe432.L, exe432.catalog)
    assert rc.breakpoints == ((5, ("F1",)), (6, ("F2",)), (7, ("Delta",)))
    assert rc.mu_prime == 9
    for k in range(0, 91):
        t = Fraction(k, 10)
        coeffs = rc.coefficients_at(t)
        for name, d in zip(("F1", "F2", "Delta"), (5, 6, 7)):
            assert coeffs.get(name, 0) == max(0, t - d)
        assert rc.slice_length(t) == exe_beta(4, 3, 2, t)
    # P_t^2 = 2(t - 9)^2 on the last chamber
    for t in (Fraction(7), Fraction(8), Fraction(17, 2)):
        assert rc.volume(t) == 2 * (t - 9) ** 2


def test_chambers_empty_catalog():
    lat = lattice_new([[46]])
    rc = ray_chambers(lat.cls([1]), [])
    assert rc.breakpoints == ()
    assert rc.mu_prime == sqrt_exact(46)
    assert isinstance(rc.mu_prime, QuadraticNumber)


def test_single_curve_slice_is_constant():
    # B.C = 3, mult 1, B^2 = 46: P_t.E stays at 3 after the breakpoint
    lat = lattice_new([[46, 3], [3, 0]])
    C = CurveClass("C", lat.basis_vector(1), 1, True)
    rc = ray_chambers(lat.basis_vector(0), [C])
    assert rc.breakpoints == ((3, ("C",)),)
    assert rc.chambers[1].coefficients["C"].c0 == -3 and rc.chambers[1].coefficients["C"].c1 == 1
    for t in (3, 4, 5, 9):
        assert rc.slice_length(Fraction(t)) == 3
    # P_t^2 = 46 - t^2 + (t-3)^2 = 55 - 6t
    assert rc.mu_prime == Fraction(55, 6)


def test_quadratic_mu_prime():
    lat = lattice_new([[10, 5], [5, 2]])
    C = CurveClass("C", lat.basis_vector(1), 2)
    rc = ray_chambers(lat.basis_vector(0), [C])
    assert rc.breakpoints == ((Fraction(5, 2), ("C",)),)
    assert rc.mu_prime == QuadraticNumber(5, Fraction(-1, 2), 10)


def test_ray_errors():
    lat = lattice_new([[0, 1], [1, 0]])
    with pytest.raises(DegenerateRay):
        ray_chambers(lat.cls([1, 0]), [])
    with pytest.raises(DegenerateRay):
        ray_chambers(lat.cls([2, -1]), [])


def test_continuity_monotonicity_slice_formula():
    for m in sample_models(9, 60, "Mixed"):
        rc = ray_chambers(m.L, m.catalog)
        for prev, nxt in zip(rc.chambers, rc.chambers[1:]):
            w = nxt.start
            for name, f in prev.coefficients.items():
                assert f(w) == nxt.coefficients[name](w)
            for name, f in nxt.coefficients.items():
                if name not in prev.coefficients:
                    assert f(w) == 0
            assert prev.slice_fn(w) == nxt.slice_fn(w)
        for ch in rc.chambers:
            for f in ch.coefficients.values():
                assert f.c1 >= 0
            t = ch.start
            mults = {c.name: c.mult_at_point for c in m.catalog}
            assert ch.slice_fn(t) == t - sum(f(t) * mults[n] for n, f in ch.coefficients.items())
        assert all(rc.breakpoints[i][0] <= rc.breakpoints[i + 1][0] for i in range(len(rc.breakpoints) - 1))
        if rc.breakpoints:
            assert rc.breakpoints[-1][0] < rc.mu_prime


def test_simultaneous_walls():
    # all three curves have degree 6 and enter at the same wall
    model = elliptic_square_model(3, 3, 3)
    rc = ray_chambers(model.L, model.catalog)
    assert rc.breakpoints == ((6, ("Delta", "F1", "F2")),)
    assert rc.mu_prime == 9


def test_oracle_examples(exe432):
    z = oracle_zariski(_D(exe432, 6), exe432.catalog)
    assert z.negative_coeffs == {"F1": 1}
    assert oracle_zariski(_D(exe432, 0), exe432.catalog).negative_coeffs == {}
    z8 = oracle_zariski(_D(exe432, 8), exe432.catalog)
    assert z8.negative_coeffs == {"F1": 3, "F2": 2, "Delta": 1}


def test_oracle_equivalence_random_t():
    rng = random.Random(2)
    for m in sample_models(13, 40, "Mixed"):
        rc = ray_chambers(m.L, m.catalog)
        t = Fraction(rng.randrange(100), 100) * min(rc.chambers[-1].start + 1, Fraction(int(float(rc.mu_prime))))
        if not t < rc.mu_prime:
            continue
        D = _D(m, t)
        assert zariski_decompose(D, m.catalog) == oracle_zariski(D, m.catalog)
        assert rc.decomposition_at(t) == oracle_zariski(D, m.catalog)
