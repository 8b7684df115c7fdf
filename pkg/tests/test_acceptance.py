"""Acceptance checks; each test carries a ``criterion`` label summarized at the end of the run."""
import time
from fractions import Fraction

import pytest

from nokpoly.criteria import (
    CertificateKind,
    Outcome,
    gross_popescu_check,
    koszul_check,
    np_check,
    projective_normality_counts,
    singular_divisor_certificate,
)
from nokpoly.exactnum import QuadraticNumber
from nokpoly.models import elliptic_square_model, product_elliptic_model, rho_one_abelian_model
from nokpoly.polygon import build_generic_polygon, largest_inverted_simplex
from nokpoly.verify import run_suite, sample_models
from oracles import exe_degrees

F = Fraction


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


@pytest.mark.criterion("1 exact E x E(4,3,2) polygon and area 26")
def test_exe_polygon():
    model = elliptic_square_model(4, 3, 2)
    with Timer() as t:
        poly = build_generic_polygon(model.L, model.catalog)
        area = poly.area()
    assert set(poly.vertices) == {(F(0), F(0)), (F(5), F(5)), (F(6), F(5)), (F(7), F(4)), (F(9), F(0))}
    assert len(poly.vertices) == 5
    assert area == 26 == model.L.square() / 2
    assert t.elapsed < 0.010


@pytest.mark.criterion("2 Seshadri constant equals inverted simplex on 200 E x E models")
def test_seshadri_coherence():
    models = sample_models(2024, 200, "EllipticSquare")
    with Timer() as t:
        got = [largest_inverted_simplex(build_generic_polygon(m.L, m.catalog)) for m in models]
    want = [min(exe_degrees(*m.L.coeffs)) for m in models]
    assert got == want
    assert t.elapsed < 5


@pytest.mark.criterion("3 chamber walk equals subset oracle on 100 pairs")
def test_oracle_equivalence():
    with Timer() as t:
        rep = run_suite("zariski-oracle", 3, 100)
    assert rep.cases == 100
    assert rep.ok, rep.failures[:3]
    assert t.elapsed < 10


@pytest.mark.criterion("4 no Lambda interior and B^2 >= 5 bound epsilon by (5 - sqrt5)/2")
def test_nopolygon_bound():
    with Timer() as t:
        rep = run_suite("nopolygon-ii", 4, 3000)
    assert rep.filtered >= 500
    assert rep.ok, rep.failures[:3]
    assert t.elapsed < 30


@pytest.mark.criterion("5 criterion table")
def test_criterion_table():
    with Timer() as t:
        np1 = np_check(elliptic_square_model(4, 3, 2), 1)
        kos = [koszul_check(elliptic_square_model(a1, 3, 2)) for a1 in range(4, 101)]
        prod = [np_check(product_elliptic_model(d), p) for d in (1, 3, 40, 100) for p in range(6)]
        gp23 = gross_popescu_check(rho_one_abelian_model(1, 23), 23)
        gp9 = gross_popescu_check(rho_one_abelian_model(1, 9), 9)
    assert np1.outcome is Outcome.Holds
    assert all(v.outcome is Outcome.Holds for v in kos)
    assert all(v.outcome is Outcome.Fails and v.witness.name == "A" for v in prod)
    assert gp23.outcome is Outcome.Holds
    assert gp9.outcome is Outcome.Inconclusive
    assert t.elapsed < 1


@pytest.mark.criterion("6 (1,6) normality count is (21, 24)")
def test_normality_numerology():
    with Timer() as t:
        counts = projective_normality_counts(1, 6)
    assert (counts.sym2_dim, counts.h0_of_2L) == (21, 24)
    assert counts.obstructed
    assert t.elapsed < 0.001


@pytest.mark.criterion("7 envelope bound and nested regions")
def test_envelope_suite():
    with Timer() as t:
        rep = run_suite("envelope", 7, 600)
    assert rep.cases == 600
    assert rep.ok, rep.failures[:3]
    assert t.elapsed < 30


@pytest.mark.criterion("8 case (a) Holds implies a singular divisor certificate")
def test_implication_chain():
    with Timer() as t:
        rep = run_suite("ladder", 8, 300)
        direct = 0
        for m in sample_models(8, 100, "EllipticSquare") + sample_models(8, 50, "RhoOneAbelian"):
            for p in range(4):
                if m.L.square() >= 5 * (p + 2) ** 2 and np_check(m, p).holds:
                    direct += 1
                    assert singular_divisor_certificate(m, p).kind is not CertificateKind.NONE
    assert rep.ok, rep.failures[:3]
    assert rep.filtered > 0 and direct > 0
    assert t.elapsed < 30


def test_threshold_value_is_exact():
    # the number compared against in criterion 4, kept exact
    q = QuadraticNumber(F(5, 2), F(-1, 2), 5)
    assert q * q - 5 * q + 5 == 0
