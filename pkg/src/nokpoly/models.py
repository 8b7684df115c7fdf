"""Example surfaces and the JSON model format."""
from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any

from .errors import (
    NOKError,
    NonPositiveCoefficient,
    NotPolarizationType,
    ParseError,
    ValidationError,
)
from .lattice import CurveClass, SurfaceModel, lattice_new

__all__ = [
    "FamilyTag",
    "ModelFamily",
    "elliptic_square_model",
    "load_model",
    "model_from_dict",
    "model_to_dict",
    "parse_family",
    "product_elliptic_model",
    "resolve_model",
    "rho_one_abelian_model",
    "save_model",
    "scaled_model",
]

ExE_GRAM = ((0, 1, 1), (1, 0, 1), (1, 1, 0))


def elliptic_square_model(a1: int, a2: int, a3: int) -> SurfaceModel:
    """``E x E`` for ``E`` without CM, with ``L = a1*F1 + a2*F2 + a3*Delta``."""
    coeffs = (a1, a2, a3)
    if any(int(a) != a or a < 1 for a in coeffs):
        raise NonPositiveCoefficient(f"coefficients must be positive integers, got {coeffs}")
    lat = lattice_new(ExE_GRAM, ("F1", "F2", "Delta"))
    catalog = tuple(CurveClass(n, lat.basis_vector(i), 1, True) for i, n in enumerate(lat.basis_names))
    return SurfaceModel(lat, lat.cls(coeffs), catalog, abelian=True, origin_very_general=True,
                        name=f"exe:{a1},{a2},{a3}")


def rho_one_abelian_model(d1: int, d2: int) -> SurfaceModel:
    """Abelian surface with Picard number one and a polarization of type ``(d1, d2)``."""
    if d1 < 1 or d2 < 1 or d2 % d1:
        raise NotPolarizationType(f"({d1},{d2}) is not a polarization type")
    lat = lattice_new([[2 * d1 * d2]], ("L",))
    return SurfaceModel(lat, lat.cls([1]), (), abelian=True, origin_very_general=True,
                        name=f"rho1:{d1},{d2}")


def product_elliptic_model(d: int) -> SurfaceModel:
    """``C1 x C2`` with ``L.A = 1`` and ``L.B = d`` for ``A = C1 x pt``, ``B = pt x C2``."""
    if d < 1:
        raise NonPositiveCoefficient("d must be positive")
    lat = lattice_new([[0, 1], [1, 0]], ("A", "B"))
    catalog = (CurveClass("A", lat.basis_vector(0), 1, True), CurveClass("B", lat.basis_vector(1), 1, True))
    return SurfaceModel(lat, lat.cls([d, 1]), catalog, abelian=True, origin_very_general=True,
                        name=f"prod:{d}")


def scaled_model(model: SurfaceModel, k) -> SurfaceModel:
    """Same surface with polarization ``k*L``."""
    k = Fraction(k)
    label = f"{k}*({model.name})" if model.name else ""
    return model.with_polarization(model.polarization * k, label)


class FamilyTag(Enum):
    EllipticSquare = "exe"
    RhoOneAbelian = "rho1"
    EllipticProduct = "prod"
    Custom = "custom"


@dataclass(frozen=True)
class ModelFamily:
    tag: FamilyTag
    params: tuple[int, ...]

    def __post_init__(self):
        expected = {FamilyTag.EllipticSquare: 3, FamilyTag.RhoOneAbelian: 2, FamilyTag.EllipticProduct: 1}
        n = expected.get(self.tag)
        if n is not None and len(self.params) != n:
            raise ParseError(f"family {self.tag.value} takes {n} parameters, got {len(self.params)}")

    def build(self) -> SurfaceModel:
        if self.tag is FamilyTag.EllipticSquare:
            return elliptic_square_model(*self.params)
        if self.tag is FamilyTag.RhoOneAbelian:
            return rho_one_abelian_model(*self.params)
        if self.tag is FamilyTag.EllipticProduct:
            return product_elliptic_model(*self.params)
        raise ValueError("custom models are loaded from files")


def parse_family(text: str) -> ModelFamily:
    """Parse shorthand such as ``exe:4,3,2``, ``rho1:1,23`` or ``prod:40``."""
    tag, sep, rest = text.partition(":")
    if not sep:
        raise ParseError(f"not a family shorthand: {text!r}")
    try:
        family = FamilyTag(tag.strip().lower())
    except ValueError:
        raise ParseError(f"unknown family {tag!r}") from None
    if family is FamilyTag.Custom:
        raise ParseError("custom models are loaded from files")
    try:
        params = tuple(int(p) for p in rest.split(","))
    except ValueError:
        raise ParseError(f"bad parameters in {text!r}") from None
    return ModelFamily(family, params)


def resolve_model(source: str) -> SurfaceModel:
    """Family shorthand if it parses as one, otherwise a JSON file path."""
    tag = source.partition(":")[0].lower()
    if ":" in source and tag in {f.value for f in FamilyTag} and not Path(source).exists():
        return parse_family(source).build()
    return load_model(source)


# -- JSON ------------------------------------------------------------------
def _rat_out(q: Fraction) -> int | str:
    q = Fraction(q)
    return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _rat_in(v: Any, path: str) -> Fraction:
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise ValidationError("expected an integer or a 'p/q' string", path)
    try:
        return Fraction(v)
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"bad rational {v!r}", path) from None


def model_to_dict(model: SurfaceModel) -> dict:
    lat = model.lattice
    out = {
        "rank": lat.rank,
        "gram": [list(r) for r in lat.gram],
        "basis": list(lat.basis_names),
        "polarization": [_rat_out(c) for c in model.polarization.coeffs],
        "curves": [
            {
                "name": c.name,
                "class": [_rat_out(x) for x in c.cls.coeffs],
                "mult": c.mult_at_point,
                "elliptic": c.is_elliptic,
            }
            for c in model.catalog
        ],
        "abelian": model.abelian,
        "origin_very_general": model.origin_very_general,
    }
    if model.name:
        out["name"] = model.name
    return out


def _need(d: dict, key: str, path: str = ""):
    if key not in d:
        raise ValidationError("missing field", f"{path}{key}")
    return d[key]


def model_from_dict(data: Any) -> SurfaceModel:
    if not isinstance(data, dict):
        raise ValidationError("model must be a JSON object", "$")
    gram = _need(data, "gram")
    if not isinstance(gram, list) or not all(isinstance(r, list) for r in gram):
        raise ValidationError("gram must be a list of rows", "gram")
    for i, row in enumerate(gram):
        for j, x in enumerate(row):
            if isinstance(x, bool) or not isinstance(x, int):
                raise ValidationError("gram entries must be integers", f"gram[{i}][{j}]")
    rank = data.get("rank", len(gram))
    if rank != len(gram) or any(len(r) != rank for r in gram):
        raise ValidationError(f"gram must be {rank}x{rank}", "gram")
    basis = data.get("basis") or [f"e{i}" for i in range(rank)]
    if len(basis) != rank:
        raise ValidationError("basis length differs from rank", "basis")
    try:
        lat = lattice_new(gram, basis)
    except ValidationError:
        raise
    except NOKError as exc:
        raise ValidationError(str(exc), "gram") from exc

    def cls(v, path):
        if not isinstance(v, list) or len(v) != rank:
            raise ValidationError(f"expected {rank} coefficients", path)
        return lat.cls([_rat_in(x, f"{path}[{k}]") for k, x in enumerate(v)])

    L = cls(_need(data, "polarization"), "polarization")
    curves = []
    for i, c in enumerate(data.get("curves", [])):
        path = f"curves[{i}]"
        if not isinstance(c, dict):
            raise ValidationError("curve must be an object", path)
        mult = c.get("mult", 0)
        if isinstance(mult, bool) or not isinstance(mult, int):
            raise ValidationError("multiplicity must be an integer", f"{path}.mult")
        try:
            curves.append(CurveClass(str(_need(c, "name", path + ".")), cls(_need(c, "class", path + "."), f"{path}.class"),
                                     mult, bool(c.get("elliptic", False))))
        except ValidationError as exc:
            if exc.path.startswith("curves"):
                raise
            raise ValidationError(str(exc).split(": ", 1)[-1], f"{path}.{exc.path}") from exc
    abelian = bool(data.get("abelian", False))
    return SurfaceModel(lat, L, tuple(curves), abelian, bool(data.get("origin_very_general", abelian)),
                        str(data.get("name", "")))


def save_model(model: SurfaceModel, path) -> None:
    Path(path).write_text(json.dumps(model_to_dict(model), indent=2) + "\n")


def load_model(path) -> SurfaceModel:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    return model_from_dict(data)
