"""Brute-force oracles and randomized property suites.

The Zariski oracle deliberately shares no code with :mod:`nokpoly.zariski`:
it enumerates every support, tests definiteness with leading minors and solves
with Cramer's rule.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence

from .criteria import (
    EGG_THRESHOLD,
    Outcome,
    k_very_ample_check,
    np_check,
    seshadri,
    singular_divisor_certificate,
)
from .errors import NOKError, NoValidSubset, NotPseudoeffective, UnknownSuite, WrongSignature
from .exactnum import Exact, format_exact, qn_compare, to_decimal
from .lattice import BlownUpLattice, CurveClass, DivisorClass, SurfaceModel, lattice_new
from .models import elliptic_square_model, product_elliptic_model, rho_one_abelian_model
from .polygon import (
    NOKPolygon,
    build_generic_polygon,
    envelope_check,
    lambda_interior_meets,
    largest_inverted_simplex,
)
from .zariski import ZariskiDecomposition, ray_chambers, zariski_decompose

__all__ = [
    "FAMILIES",
    "SUITES",
    "SuiteReport",
    "oracle_zariski",
    "random_lambda_free_polygon",
    "run_suite",
    "sample_models",
]


# -- oracle ----------------------------------------------------------------
def _det(m: list[list[Fraction]]) -> Fraction:
    """Bareiss fraction-free elimination (exact on rationals)."""
    n = len(m)
    if n == 0:
        return Fraction(1)
    a = [row[:] for row in m]
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _sylvester_negative_definite(g: list[list[Fraction]]) -> bool:
    return all((-1) ** k * _det([row[:k] for row in g[:k]]) > 0 for k in range(1, len(g) + 1))


def _cramer(g: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    d = _det(g)
    out = []
    for c in range(len(g)):
        m = [row[:c] + [rhs[r]] + row[c + 1:] for r, row in enumerate(g)]
        out.append(_det(m) / d)
    return out


def oracle_zariski(D: DivisorClass, catalog: Sequence[CurveClass]) -> ZariskiDecomposition:
    """Zariski decomposition by trying every support (``len(catalog) <= 12``)."""
    if len(catalog) > 12:
        raise ValueError("oracle limited to 12 catalog curves")
    bl = D.lattice
    if not isinstance(bl, BlownUpLattice):
        raise TypeError("D must live on a blown-up lattice")
    names = [c.name for c in catalog] + ["E"]
    curves = [bl.pullback(c.cls) - c.mult_at_point * bl.exceptional for c in catalog] + [bl.exceptional]
    n = len(curves)
    gram = [[u.dot(v) for v in curves] for u in curves]
    dv = [D.dot(c) for c in curves]
    found = []
    for size in range(n + 1):
        for S in combinations(range(n), size):
            sub = [[gram[i][j] for j in S] for i in S]
            if size and not _sylvester_negative_definite(sub):
                continue
            a = _cramer(sub, [dv[i] for i in S]) if size else []
            if any(x <= 0 for x in a):
                continue
            pv = [dv[j] - sum(a[k] * gram[i][j] for k, i in enumerate(S)) for j in range(n)]
            if any(x < 0 for x in pv):
                continue
            found.append((S, a))
    if not found:
        raise NoValidSubset("no support gives a nef positive part")
    if len(found) > 1:
        raise NotPseudoeffective(f"{len(found)} supports satisfy the conditions")
    S, a = found[0]
    P = D
    for k, i in enumerate(S):
        P = P - a[k] * curves[i]
    return ZariskiDecomposition(D, P, {names[i]: a[k] for k, i in enumerate(S)})


# -- sampling --------------------------------------------------------------
FAMILIES = ("EllipticSquare", "RhoOneAbelian", "EllipticProduct", "Synthetic")


def _synthetic_model(rng: random.Random) -> SurfaceModel | None:
    """Random lattice with a few negative or elliptic curves; ``None`` if rejected."""
    rank = rng.choice((2, 3))
    h = rng.randint(1, 6)
    gram = [[0] * rank for _ in range(rank)]
    gram[0][0] = h
    for i in range(1, rank):
        gram[i][i] = rng.randint(-3, 0)
        gram[0][i] = gram[i][0] = rng.randint(0, 2)
        for j in range(1, i):
            gram[i][j] = gram[j][i] = rng.randint(0, 1)
    try:
        lat = lattice_new(gram, [f"e{i}" for i in range(rank)])
    except WrongSignature:
        return None
    curves = []
    for i in range(1, rank):
        mult = rng.randint(0, 2)
        c2 = gram[i][i]
        curves.append(CurveClass(f"C{i}", lat.basis_vector(i), mult, c2 == 0 and rng.random() < 0.5))
    coeffs = [rng.randint(1, 8)] + [rng.randint(0, 3) for _ in range(rank - 1)]
    L = lat.cls(coeffs)
    try:
        model = SurfaceModel(lat, L, tuple(curves), abelian=False, origin_very_general=False,
                             name=f"synthetic{gram}:{coeffs}")
        ray_chambers(L, model.catalog)
    except (NOKError, ValueError):
        return None
    return model


def sample_models(seed: int, count: int, family: str = "EllipticSquare") -> list[SurfaceModel]:
    """Reproducible stream of models from one family (or ``"Mixed"``)."""
    rng = random.Random(f"{seed}:{family}")
    out: list[SurfaceModel] = []
    while len(out) < count:
        fam = rng.choice(FAMILIES) if family == "Mixed" else family
        if fam == "EllipticSquare":
            out.append(elliptic_square_model(*(rng.randint(1, 50) for _ in range(3))))
        elif fam == "RhoOneAbelian":
            d1 = rng.randint(1, 10)
            k = rng.randint(1, max(1, 200 // (d1 * d1)))
            if d1 * d1 * k > 200:
                continue
            out.append(rho_one_abelian_model(d1, d1 * k))
        elif fam == "EllipticProduct":
            out.append(product_elliptic_model(rng.randint(1, 100)))
        elif fam == "Synthetic":
            m = _synthetic_model(rng)
            if m is not None:
                out.append(m)
        else:
            raise ValueError(f"unknown family {fam!r}")
    return out


def _rational_below(x: Exact, rng: random.Random, steps: int = 1000) -> Fraction:
    """Random rational in ``[0, x)``."""
    for _ in range(100):
        t = Fraction(rng.randrange(steps), steps) * Fraction(str(to_decimal(x, 20)))
        if qn_compare(t, x) < 0:
            return t
    return Fraction(0)


def random_lambda_free_polygon(rng: random.Random) -> tuple[NOKPolygon, Fraction]:
    """Convex polygon avoiding the interior of Lambda, and the width of its separating triangle.

    Points are drawn from the triangle cut out of ``{0 <= y <= t}`` by a line
    through ``(2, 1)`` meeting the axis at ``delta`` in ``(1, 2)``; the
    polygon always contains ``(0,0), (e,0), (e,e)`` for some ``e <= delta``.
    """
    delta = Fraction(rng.randint(1001, 1999), 1000)
    apex = delta / (delta - 1)
    tri = [(Fraction(0), Fraction(0)), (delta, Fraction(0)), (apex, apex)]
    e = delta * Fraction(rng.randint(1, 100), 100)
    pts = [tri[0], (e, Fraction(0)), (e, e)]
    if rng.random() < 0.5:
        pts += tri[1:]
    for _ in range(rng.randint(0, 6)):
        u, v = sorted(Fraction(rng.randint(0, 1000), 1000) for _ in range(2))
        # barycentric sample in the triangle
        a, b, c = u, v - u, 1 - v
        pts.append((a * tri[0][0] + b * tri[1][0] + c * tri[2][0], a * tri[0][1] + b * tri[1][1] + c * tri[2][1]))
    return NOKPolygon.from_points(pts), delta


# -- suites ----------------------------------------------------------------
@dataclass
class SuiteReport:
    name: str
    seed: int
    cases: int = 0
    failures: list[dict] = field(default_factory=list)
    wall_time: float = 0.0
    filtered: int = 0  # cases that passed the suite's filter, where one applies

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, inputs: str, expected, got) -> None:
        self.failures.append({"input": inputs, "expected": _s(expected), "got": _s(got)})

    def to_dict(self) -> dict:
        return {
            "suite": self.name,
            "seed": self.seed,
            "cases": self.cases,
            "filtered": self.filtered,
            "failures": self.failures,
            "wall_time": round(self.wall_time, 3),
        }

    def summary(self) -> str:
        status = "ok" if self.ok else f"{len(self.failures)} failures"
        extra = f", {self.filtered} past filter" if self.filtered else ""
        return f"{self.name}: {self.cases} cases{extra}, {status}"


def _s(v) -> str:
    if isinstance(v, (Fraction,)) or hasattr(v, "radicand"):
        return format_exact(v)
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_s(x)}" for k, x in sorted(v.items())) + "}"
    return str(v)


def _decomp_key(z: ZariskiDecomposition):
    return z.positive.coeffs, dict(z.negative_coeffs)


def _suite_zariski_oracle(rep: SuiteReport, rng: random.Random, cases: int) -> None:
    models = sample_models(rng.randrange(1 << 30), cases, "Mixed")
    for m in models:
        rc = ray_chambers(m.L, m.catalog)
        t = _rational_below(rc.mu_prime, rng)
        bl = rc.blown_up
        D = bl.pullback(m.L) - t * bl.exceptional
        got = zariski_decompose(D, m.catalog)
        walk = rc.decomposition_at(t)
        want = oracle_zariski(D, m.catalog)
        rep.cases += 1
        if _decomp_key(got) != _decomp_key(want) or _decomp_key(walk) != _decomp_key(want):
            rep.fail(f"{m.name} t={t}", want.negative_coeffs, got.negative_coeffs)


def _suite_area(rep: SuiteReport, rng: random.Random, cases: int) -> None:
    for m in sample_models(rng.randrange(1 << 30), cases, "Mixed"):
        B = m.L / rng.randint(1, 5)
        poly = build_generic_polygon(B, m.catalog)
        rep.cases += 1
        if poly.area() != B.square() / 2:
            rep.fail(f"{m.name} B={B}", B.square() / 2, poly.area())


def _suite_homogeneity(rep: SuiteReport, rng: random.Random, cases: int) -> None:
    models = sample_models(rng.randrange(1 << 30), max(1, cases // 4), "Mixed")
    for k in range(cases):
        m = models[k % len(models)]
        lam = Fraction(rng.randint(1, 40), rng.randint(1, 40))
        a = build_generic_polygon(m.L * lam, m.catalog)
        b = build_generic_polygon(m.L, m.catalog).scaled(lam)
        rep.cases += 1
        if not a.same_shape(b):
            rep.fail(f"{m.name} lambda={lam}", b.vertices, a.vertices)


class _ExactKey:
    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return qn_compare(self.v, other.v) < 0


def _beta(rc, t) -> Exact:
    if qn_compare(t, rc.mu_prime) > 0:
        return Fraction(0)
    return rc.slice_length(t)


def _suite_monotonicity(rep: SuiteReport, rng: random.Random, cases: int) -> None:
    seed = rng.randrange(1 << 30)
    models = [m for m in sample_models(seed, 2 * cases + 10, "Mixed") if m.catalog][:cases]
    for m in models:
        drop = rng.randrange(len(m.catalog))
        sub = tuple(c for i, c in enumerate(m.catalog) if i != drop)
        full = ray_chambers(m.L, m.catalog)
        part = ray_chambers(m.L, sub)
        # compare on the common base; past the smaller mu' the extra curve
        # makes the polygon longer (the area is fixed), so no bound holds there
        end = min(full.mu_prime, part.mu_prime, key=_ExactKey)
        ts = {ch.start for ch in full.chambers} | {ch.start for ch in part.chambers} | {end}
        ts = [t for t in ts if qn_compare(t, end) <= 0]
        rep.cases += 1
        bad = [t for t in ts if qn_compare(_beta(full, t), _beta(part, t)) > 0]
        if bad:
            rep.fail(f"{m.name} drop={m.catalog[drop].name}", "full <= reduced", f"violations at {[_s(t) for t in bad]}")


def _very_general_models(rng: random.Random, count: int) -> list[SurfaceModel]:
    fams = ("EllipticSquare", "RhoOneAbelian", "EllipticProduct")
    seed = rng.randrange(1 << 30)
    per = -(-count // len(fams))
    out = []
    for f in fams:
        out += sample_models(seed, per, f)
    return out[:count]


def _suite_envelope(rep: SuiteReport, rng: random.Random, cases: int) -> None:
    for m in _very_general_models(rng, cases):
        B = m.L / rng.randint(1, 5)
        rc = ray_chambers(B, m.catalog)
        report = envelope_check(NOKPolygon.from_chambers(rc), rc)
        rep.cases += 1
        if not report.ok:
            rep.fail(f"{m.name} B={B}", "envelope holds", "; ".join(report.failures()))


def _suite_nopolygon(rep: SuiteReport, rng: random.Random, cases: int) -> None:
    """Area >= 5/2 with no interior point in Lambda forces the inverted simplex below (5-sqrt5)/2."""
    def check(label: str, poly: NOKPolygon) -> None:
        rep.cases += 1
        if poly.area() * 2 < 5 or lambda_interior_meets(poly)[0]:
            return
        rep.filtered += 1
        xi = largest_inverted_simplex(poly)
        if qn_compare(xi, EGG_THRESHOLD) > 0:
            rep.fail(label, f"<= {format_exact(EGG_THRESHOLD)}", xi)

    n_models = max(1, cases // 10)
    for m in sample_models(rng.randrange(1 << 30), n_models, "Mixed"):
        B = m.L / rng.randint(1, 6)
        check(f"{m.name} B={B}", build_generic_polygon(B, m.catalog))
    for k in range(cases - n_models):
        poly, delta = random_lambda_free_polygon(rng)
        check(f"raw polygon #{k} delta={delta}", poly)


def _suite_seshadri(rep: SuiteReport, rng: random.Random, cases: int) -> None:
    for m in sample_models(rng.randrange(1 << 30), cases, "EllipticSquare"):
        a1, a2, a3 = m.L.coeffs
        want = min(a1 + a2, a1 + a3, a2 + a3)
        got = largest_inverted_simplex(build_generic_polygon(m.L, m.catalog))
        s = seshadri(m)
        rep.cases += 1
        if got != want:
            rep.fail(m.name, want, got)
        elif not s.coherent or s.value != want:
            rep.fail(m.name, s.value, s.polygon_value)


def _suite_ladder(rep: SuiteReport, rng: random.Random, cases: int) -> None:
    for m in _very_general_models(rng, cases):
        rep.cases += 1
        for p in range(4):
            v = np_check(m, p)
            if v != np_check(m, p):
                rep.fail(f"{m.name} p={p}", "deterministic verdict", "verdict changed")
            if v.holds:
                kva = k_very_ample_check(m, p + 1)
                if not kva.holds:
                    rep.fail(f"{m.name} p={p}", "k-very ample Holds", kva.outcome.value)
            if v.holds and m.L.square() >= 5 * (p + 2) ** 2:
                rep.filtered += 1
                if not singular_divisor_certificate(m, p):
                    rep.fail(f"{m.name} p={p}", "certificate", "None")
            if m.L.square() >= 5 and all(m.degree(c) > 0 for c in m.catalog):
                big = np_check(m.with_polarization(m.L * (p + 3)), p)
                if big.outcome is Outcome.Fails:
                    rep.fail(f"{m.name} p={p}", f"{p + 3}L not Fails", big.summary())


SUITES: dict[str, Callable[[SuiteReport, random.Random, int], None]] = {
    "zariski-oracle": _suite_zariski_oracle,
    "area": _suite_area,
    "homogeneity": _suite_homogeneity,
    "monotonicity": _suite_monotonicity,
    "envelope": _suite_envelope,
    "nopolygon-ii": _suite_nopolygon,
    "seshadri-coherence": _suite_seshadri,
    "ladder": _suite_ladder,
}


def run_suite(name: str, seed: int = 0, cases: int = 100) -> SuiteReport:
    if name not in SUITES:
        raise UnknownSuite(name)
    rep = SuiteReport(name, seed)
    start = time.perf_counter()
    SUITES[name](rep, random.Random(f"{name}:{seed}"), cases)
    rep.wall_time = time.perf_counter() - start
    return rep
