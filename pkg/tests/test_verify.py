import random

import pytest

from nokpoly.errors import NoValidSubset, NotPseudoeffective, UnknownSuite
from nokpoly.exactnum import qn_compare
from nokpoly.polygon import lambda_interior_meets
from nokpoly.verify import (
    FAMILIES,
    SUITES,
    oracle_zariski,
    random_lambda_free_polygon,
    run_suite,
    sample_models,
)


def test_sampling_is_deterministic():
    a = sample_models(7, 3, "EllipticSquare")
    assert a == sample_models(7, 3, "EllipticSquare")
    assert len(a) == 3 and all(m.name.startswith("exe:") for m in a)
    for fam in FAMILIES + ("Mixed",):
        ms = sample_models(1, 20, fam)
        assert len(ms) == 20
        for m in ms:
            assert m.lattice.signature() == (1, m.lattice.rank - 1)
    for m in sample_models(2, 30, "RhoOneAbelian"):
        assert m.L.square() <= 400
    with pytest.raises(ValueError):
        sample_models(0, 1, "Nope")


def test_oracle_rejects_non_pseudoeffective(exe432):
    bl, _ = exe432.blown_up
    with pytest.raises(NoValidSubset):
        oracle_zariski(bl.pullback(exe432.L) - 10 * bl.exceptional, exe432.catalog)
    assert issubclass(NoValidSubset, NotPseudoeffective)


def test_lambda_free_polygons():
    rng = random.Random(0)
    for _ in range(200):
        poly, _ = random_lambda_free_polygon(rng)
        assert not lambda_interior_meets(poly)[0]


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suites_green_and_deterministic(name):
    r1 = run_suite(name, 3, 25)
    r2 = run_suite(name, 3, 25)
    assert r1.ok, r1.failures[:3]
    assert r1.cases == 25
    assert r1.to_dict() | {"wall_time": 0} == r2.to_dict() | {"wall_time": 0}


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("nope")


def test_nopolygon_suite_hits_threshold():
    rep = run_suite("nopolygon-ii", 11, 400)
    assert rep.ok and rep.filtered > 30
