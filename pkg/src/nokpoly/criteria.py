"""Decision procedures for syzygy and positivity properties of polarized surfaces.

Every check returns a three-valued :class:`Verdict`.  Outside the numerical
regimes where a definite answer is known the verdict is ``Inconclusive`` and
the justification names the bound that was missed.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, NamedTuple

from .errors import (
    NotAbelian,
    NotPolarizationType,
    NotType1d,
    NotVeryAmple,
    SelfIntersectionTooSmall,
)
from .exactnum import Exact, QuadraticNumber, format_exact, qn_compare, sqrt_exact
from .lattice import CurveClass, DivisorClass, SurfaceModel
from .models import scaled_model
from .polygon import build_generic_polygon, lambda_interior_meets, largest_inverted_simplex

__all__ = [
    "Certificate",
    "CertificateKind",
    "EGG_THRESHOLD",
    "NormalityCounts",
    "Outcome",
    "SeshadriResult",
    "Verdict",
    "effective_global_generation_check",
    "effective_global_generation_from",
    "gross_popescu_check",
    "k_very_ample_check",
    "koszul_check",
    "low_degree_elliptic",
    "np_check",
    "power_np_check",
    "projective_normality_check",
    "projective_normality_counts",
    "reider_global_generation",
    "reider_very_ample",
    "seshadri",
    "singular_divisor_certificate",
]

# (5 - sqrt(5))/2
EGG_THRESHOLD = QuadraticNumber(Fraction(5, 2), Fraction(-1, 2), 5)


class Outcome(Enum):
    Holds = "Holds"
    Fails = "Fails"
    Inconclusive = "Inconclusive"

    @property
    def exit_code(self) -> int:
        return {"Holds": 0, "Fails": 1, "Inconclusive": 2}[self.value]


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    justification: str
    witness: Any = None
    trace: tuple[tuple[str, Exact], ...] = ()
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if self.outcome is Outcome.Fails and self.witness is None:
            raise ValueError("a failing verdict needs a witness")

    @property
    def holds(self) -> bool:
        return self.outcome is Outcome.Holds

    def to_dict(self) -> dict:
        w = self.witness
        if isinstance(w, CurveClass):
            w = w.name
        elif isinstance(w, tuple):
            w = [format_exact(x) for x in w]
        return {
            "outcome": self.outcome.value,
            "witness": w,
            "justification": self.justification,
            "trace": [[k, format_exact(v)] for k, v in self.trace],
            "notes": list(self.notes),
        }

    def summary(self) -> str:
        s = self.outcome.value
        if isinstance(self.witness, CurveClass):
            s += f" (witness: {self.witness.name})"
        return f"{s} [{self.justification}]"


def _require_abelian(model: SurfaceModel) -> None:
    if not model.abelian:
        raise NotAbelian("this criterion applies to abelian surfaces only")


def low_degree_elliptic(model: SurfaceModel, bound) -> CurveClass | None:
    """Elliptic catalog curve of smallest degree in ``[1, bound]`` (ties by catalog order)."""
    best = None
    for c in model.catalog:
        if not c.is_elliptic or c.self_intersection != 0:
            continue
        deg = model.degree(c)
        if 1 <= deg <= bound and (best is None or deg < model.degree(best)):
            best = c
    return best


def _min_elliptic_degree(model: SurfaceModel) -> Fraction | None:
    degs = [model.degree(c) for c in model.catalog if c.is_elliptic and c.self_intersection == 0]
    return min(degs) if degs else None


def _base_trace(model: SurfaceModel, **extra) -> tuple:
    out = [("L^2", model.L.square())]
    m = _min_elliptic_degree(model)
    if m is not None:
        out.append(("min elliptic degree", m))
    out.extend((k, Fraction(v)) for k, v in extra.items())
    return tuple(out)


# -- Seshadri constants ----------------------------------------------------
@dataclass(frozen=True)
class SeshadriResult:
    value: Exact
    achieved_by: CurveClass | str
    polygon_value: Exact

    curve_data: tuple[Fraction, int] | None = None  # (L.C, mult) of the computing curve

    @property
    def coherent(self) -> bool:
        return qn_compare(self.value, self.polygon_value) == 0


def seshadri(model: SurfaceModel) -> SeshadriResult:
    """Catalog-relative Seshadri constant at the model's point, cross-checked on the polygon."""
    L = model.L
    cap = sqrt_exact(L.square())
    value, by, data = cap, "sqrt-cap", None
    for c in model.catalog:
        if c.mult_at_point < 1:
            continue
        r = model.degree(c) / c.mult_at_point
        if qn_compare(r, value) < 0 or (by == "sqrt-cap" and qn_compare(r, value) == 0):
            value, by, data = r, c, (model.degree(c), c.mult_at_point)
    poly_value = largest_inverted_simplex(build_generic_polygon(L, model.catalog))
    return SeshadriResult(value, by, poly_value, data)


# -- syzygies --------------------------------------------------------------
def np_check(model: SurfaceModel, p: int) -> Verdict:
    """Property (N_p) for an ample line bundle on an abelian surface."""
    _require_abelian(model)
    if p < 0:
        raise ValueError("p must be nonnegative")
    L2 = model.L.square()
    bound = 5 * (p + 2) ** 2
    ell = low_degree_elliptic(model, p + 2)
    trace = _base_trace(model, p=p, bound=bound)
    if L2 >= bound:
        if ell is not None:
            return Verdict(Outcome.Fails, "low-degree-elliptic", ell, trace)
        return Verdict(Outcome.Holds, "no-low-degree-elliptic", None, trace)
    va = reider_very_ample(model)
    if va.outcome is Outcome.Fails:
        return Verdict(Outcome.Fails, "not-very-ample", va.witness, trace)
    if ell is not None and L2 >= 4 * p + 5 and va.holds:
        return Verdict(Outcome.Fails, "restricted-syzygy-obstruction", ell,
                       trace + (("syzygy bound", Fraction(4 * p + 5)),))
    notes = ()
    if ell is not None:
        notes = ("very ampleness undecided; failure not certified",)
    return Verdict(Outcome.Inconclusive, "below-degree-bound", None, trace, notes)


def projective_normality_check(model: SurfaceModel) -> Verdict:
    return np_check(model, 0)


class NormalityCounts(NamedTuple):
    sym2_dim: int
    h0_of_2L: int

    @property
    def obstructed(self) -> bool:
        """``Sym^2 H^0(L) -> H^0(2L)`` cannot be onto."""
        return self.sym2_dim < self.h0_of_2L


def projective_normality_counts(d1: int, d2: int) -> NormalityCounts:
    if d1 < 1 or d2 < 1 or d2 % d1:
        raise NotPolarizationType(f"({d1},{d2}) is not a polarization type")
    h0 = d1 * d2
    return NormalityCounts(h0 * (h0 + 1) // 2, 4 * d1 * d2)


def koszul_check(model: SurfaceModel) -> Verdict:
    """Koszulness of the section ring; a sufficient condition only, so never ``Fails``."""
    _require_abelian(model)
    L2 = model.L.square()
    trace = _base_trace(model, bound=45)
    if L2 < 45:
        return Verdict(Outcome.Inconclusive, "below-degree-bound", None, trace)
    ell = low_degree_elliptic(model, 3)
    if ell is not None:
        return Verdict(Outcome.Inconclusive, "low-degree-elliptic", ell, trace)
    return Verdict(Outcome.Holds, "no-low-degree-elliptic", None, trace)


def power_np_check(model: SurfaceModel, p: int) -> tuple[Verdict, Verdict]:
    """``(N_p)`` for ``(p+3)L`` and for ``(p+2)L``."""
    _require_abelian(model)
    if model.L.square() < 5:
        raise SelfIntersectionTooSmall("needs L^2 >= 5")
    hi = np_check(scaled_model(model, p + 3), p)
    lo = np_check(scaled_model(model, p + 2), p)
    deg1 = low_degree_elliptic(model, 1)
    note = "fails exactly because of an elliptic curve of degree 1" if deg1 is not None else "no elliptic curve of degree 1"
    lo = Verdict(lo.outcome, lo.justification, lo.witness, lo.trace, lo.notes + (note,))
    return hi, lo


def k_very_ample_check(model: SurfaceModel, k: int) -> Verdict:
    _require_abelian(model)
    if k < 1:
        raise ValueError("k must be at least 1")
    p = k - 1
    L2 = model.L.square()
    bound = 5 * (p + 2) ** 2
    ell = low_degree_elliptic(model, k + 1)
    trace = _base_trace(model, k=k, bound=bound)
    if ell is not None:
        # a line bundle of degree <= k+1 on an elliptic curve is not k-very ample
        return Verdict(Outcome.Fails, "low-degree-elliptic", ell, trace)
    if L2 >= bound:
        return Verdict(Outcome.Holds, "no-low-degree-elliptic", None, trace)
    return Verdict(Outcome.Inconclusive, "below-degree-bound", None, trace)


def reider_very_ample(model: SurfaceModel) -> Verdict:
    _require_abelian(model)
    trace = _base_trace(model, bound=10)
    ell = low_degree_elliptic(model, 2)
    if ell is not None:
        return Verdict(Outcome.Fails, "low-degree-elliptic", ell, trace)
    if model.L.square() >= 10:
        return Verdict(Outcome.Holds, "no-low-degree-elliptic", None, trace)
    notes = ("type (1,2) is not covered",) if model.L.square() == 4 else ()
    return Verdict(Outcome.Inconclusive, "below-degree-bound", None, trace, notes)


def reider_global_generation(model: SurfaceModel) -> Verdict:
    _require_abelian(model)
    trace = _base_trace(model, bound=5)
    ell = low_degree_elliptic(model, 1)
    if ell is not None:
        return Verdict(Outcome.Fails, "low-degree-elliptic", ell, trace)
    if model.L.square() >= 5:
        return Verdict(Outcome.Holds, "no-low-degree-elliptic", None, trace)
    return Verdict(Outcome.Inconclusive, "below-degree-bound", None, trace)


def effective_global_generation_from(L2, eps) -> Verdict:
    """Adjoint base-point freeness from ``L^2`` and the Seshadri constant alone."""
    trace = (("L^2", Fraction(L2)), ("seshadri", eps), ("threshold", EGG_THRESHOLD))
    if L2 < 5:
        return Verdict(Outcome.Inconclusive, "below-degree-bound", None, trace)
    if qn_compare(eps, EGG_THRESHOLD) < 0:
        return Verdict(Outcome.Inconclusive, "seshadri-too-small", None, trace)
    return Verdict(Outcome.Holds, "seshadri-large", None, trace)


def effective_global_generation_check(model: SurfaceModel) -> Verdict:
    return effective_global_generation_from(model.L.square(), seshadri(model).value)


# -- singular divisors -----------------------------------------------------
class CertificateKind(Enum):
    LocalSingularDivisor = "LocalSingularDivisor"
    GlobalSingularDivisor = "GlobalSingularDivisor"
    NONE = "None"


@dataclass(frozen=True)
class Certificate:
    kind: CertificateKind
    slice_at_2: Exact
    lambda_witness: tuple | None
    B: DivisorClass

    def __bool__(self) -> bool:
        return self.kind is not CertificateKind.NONE

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "slice_at_2": format_exact(self.slice_at_2),
            "lambda_witness": None if self.lambda_witness is None else [format_exact(x) for x in self.lambda_witness],
            "B": [format_exact(x) for x in self.B.coeffs],
        }


def singular_divisor_certificate(model: SurfaceModel, p: int) -> Certificate:
    """Look for a divisor in ``|L/(p+2)|`` singular enough at the point, via the polygon."""
    B = model.L / (p + 2)
    poly = build_generic_polygon(B, model.catalog)
    two = Fraction(2)
    height = poly.slice(two)[1] if qn_compare(poly.mu_prime, two) >= 0 else Fraction(0)
    meets, witness = lambda_interior_meets(poly)
    if height > 1 and B.square() > 4:
        return Certificate(CertificateKind.GlobalSingularDivisor, height, witness, B)
    if meets:
        return Certificate(CertificateKind.LocalSingularDivisor, height, witness, B)
    return Certificate(CertificateKind.NONE, height, None, B)


def gross_popescu_check(model: SurfaceModel, d: int) -> Verdict:
    """Generation of the ideal by quadrics and cubics for type ``(1, d)``."""
    _require_abelian(model)
    L2 = model.L.square()
    if L2 != 2 * d:
        raise NotType1d(f"L^2 = {L2} does not match type (1,{d})")
    if not reider_very_ample(model).holds:
        raise NotVeryAmple("the polarization is not known to be very ample")
    trace = _base_trace(model, d=d, bound=23)
    if d < 23:
        return Verdict(Outcome.Inconclusive, "below-degree-bound", None, trace)
    exc = low_degree_elliptic(model, 3)
    if exc is None:
        n1 = np_check(model, 1)
        notes = ("ideal generated by quadrics", f"N_1 {n1.outcome.value}")
        return Verdict(Outcome.Holds, "quadrics-suffice", None, trace, notes)
    poly = build_generic_polygon(model.L / 3, model.catalog)
    height = poly.slice(Fraction(2))[1]
    on_polygon = height >= 1
    notes = ("cubics needed; N_1 fails", f"(2,1) in polygon of L/3: {on_polygon}")
    return Verdict(Outcome.Holds, "cubics-needed", exc,
                   trace + (("slice(2) of L/3", height),), notes)
