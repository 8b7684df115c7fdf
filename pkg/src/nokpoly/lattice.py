"""Intersection lattices, divisor classes, and the blow-up at a point.

Everything is exact: Gram matrices are integral, coefficients are
``Fraction``.  Signatures are computed by symmetric Gaussian elimination
(Sylvester's law of inertia), never by a floating eigen-solver.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import LatticeMismatch, NotSymmetric, ValidationError, WrongSignature

__all__ = [
    "BlownUpLattice",
    "CurveClass",
    "DivisorClass",
    "IntersectionLattice",
    "SurfaceModel",
    "blowup",
    "blowup_extend",
    "inertia",
    "inverse",
    "is_negative_definite",
    "lattice_new",
    "pair",
]


def inertia(matrix: Sequence[Sequence]) -> tuple[int, int, int]:
    """Return ``(n_pos, n_neg, n_zero)`` of a symmetric rational matrix."""
    a = [[Fraction(x) for x in row] for row in matrix]
    idx = list(range(len(a)))
    pos = neg = 0
    while idx:
        piv = next((i for i in idx if a[i][i] != 0), None)
        if piv is None:
            pair_ij = next(((i, j) for i in idx for j in idx if i < j and a[i][j] != 0), None)
            if pair_ij is None:
                break
            i, j = pair_ij
            # congruence e_i -> e_i + e_j makes the diagonal entry 2*a_ij
            for k in range(len(a)):
                a[i][k] += a[j][k]
            for k in range(len(a)):
                a[k][i] += a[k][j]
            piv = i
        p = a[piv][piv]
        if p > 0:
            pos += 1
        else:
            neg += 1
        idx.remove(piv)
        for r in idx:
            f = a[r][piv] / p
            if f:
                for c in idx:
                    a[r][c] -= f * a[piv][c]
    return pos, neg, len(a) - pos - neg


def is_negative_definite(matrix: Sequence[Sequence]) -> bool:
    n = len(matrix)
    return inertia(matrix) == (0, n, 0)


def inverse(matrix: Sequence[Sequence]) -> list[list[Fraction]]:
    """Exact inverse by Gauss-Jordan elimination; raises ``ZeroDivisionError`` if singular."""
    n = len(matrix)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


@dataclass(frozen=True)
class IntersectionLattice:
    """Integral symmetric form of signature ``(1, rank-1)``."""

    gram: tuple[tuple[int, ...], ...]
    basis_names: tuple[str, ...] = ()

    def __post_init__(self):
        gram = tuple(tuple(row) for row in self.gram)
        n = len(gram)
        if n == 0 or any(len(row) != n for row in gram):
            raise ValidationError("Gram matrix must be square and nonempty", "gram")
        for i, row in enumerate(gram):
            for j, x in enumerate(row):
                if isinstance(x, bool) or int(x) != x:
                    raise ValidationError("entries must be integers", f"gram[{i}][{j}]")
        gram = tuple(tuple(int(x) for x in row) for row in gram)
        for i in range(n):
            for j in range(i):
                if gram[i][j] != gram[j][i]:
                    raise NotSymmetric(f"gram[{i}][{j}] != gram[{j}][{i}]")
        names = tuple(self.basis_names) or tuple(f"e{i + 1}" for i in range(n))
        if len(names) != n:
            raise ValidationError("basis names do not match rank", "basis")
        if len(set(names)) != n:
            raise ValidationError("basis names must be distinct", "basis")
        sig = inertia(gram)
        if sig != (1, n - 1, 0):
            raise WrongSignature(f"signature {sig[:2]} with {sig[2]} null directions; need (1, {n - 1})")
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "basis_names", names)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def signature(self) -> tuple[int, int]:
        pos, neg, _ = inertia(self.gram)
        return pos, neg

    def dot(self, u: Sequence, v: Sequence) -> Fraction:
        g = self.gram
        total = Fraction(0)
        for i, ui in enumerate(u):
            if ui:
                row = g[i]
                for j, vj in enumerate(v):
                    if vj and row[j]:
                        total += ui * row[j] * vj
        return total

    def cls(self, coeffs: Iterable) -> DivisorClass:
        return DivisorClass(self, tuple(Fraction(c) for c in coeffs))

    def zero(self) -> DivisorClass:
        return self.cls([0] * self.rank)

    def basis_vector(self, i: int) -> DivisorClass:
        return self.cls([int(i == j) for j in range(self.rank)])


def lattice_new(gram, basis_names: Sequence[str] = ()) -> IntersectionLattice:
    return IntersectionLattice(tuple(tuple(row) for row in gram), tuple(basis_names))


@dataclass(frozen=True)
class DivisorClass:
    lattice: IntersectionLattice
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        if len(coeffs) != self.lattice.rank:
            raise ValidationError(
                f"expected {self.lattice.rank} coefficients, got {len(coeffs)}", "coeffs"
            )
        object.__setattr__(self, "coeffs", coeffs)

    def _check(self, other: DivisorClass):
        if not isinstance(other, DivisorClass):
            raise TypeError("expected a DivisorClass")
        if other.lattice is not self.lattice and other.lattice != self.lattice:
            raise LatticeMismatch("classes live on different lattices")

    def __add__(self, other: DivisorClass) -> DivisorClass:
        self._check(other)
        return DivisorClass(self.lattice, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: DivisorClass) -> DivisorClass:
        self._check(other)
        return DivisorClass(self.lattice, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> DivisorClass:
        return DivisorClass(self.lattice, tuple(-a for a in self.coeffs))

    def __mul__(self, k) -> DivisorClass:
        k = Fraction(k)
        return DivisorClass(self.lattice, tuple(k * a for a in self.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, k) -> DivisorClass:
        return self * (1 / Fraction(k))

    def dot(self, other: DivisorClass) -> Fraction:
        self._check(other)
        return self.lattice.dot(self.coeffs, other.coeffs)

    def square(self) -> Fraction:
        return self.lattice.dot(self.coeffs, self.coeffs)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __str__(self):
        from .exactnum import format_exact

        out = ""
        for c, n in zip(self.coeffs, self.lattice.basis_names):
            if not c:
                continue
            mag = "" if abs(c) == 1 else f"{format_exact(abs(c))}*"
            if out:
                out += f" {'-' if c < 0 else '+'} {mag}{n}"
            else:
                out = f"{'-' if c < 0 else ''}{mag}{n}"
        return out or "0"


def pair(u: DivisorClass, v: DivisorClass) -> Fraction:
    """Intersection number ``u . v``."""
    return u.dot(v)


@dataclass(frozen=True)
class BlownUpLattice(IntersectionLattice):
    """``base`` extended by the exceptional class ``E`` (``E^2 = -1``, orthogonal to pullbacks)."""

    base: IntersectionLattice | None = None
    exceptional_index: int = -1

    @property
    def exceptional(self) -> DivisorClass:
        return self.basis_vector(self.exceptional_index)

    def pullback(self, v: DivisorClass) -> DivisorClass:
        if v.lattice is not self.base and v.lattice != self.base:
            raise LatticeMismatch("class is not on the base lattice")
        out = list(v.coeffs)
        out.insert(self.exceptional_index, Fraction(0))
        return self.cls(out)

    def proper_transform(self, curve: CurveClass) -> DivisorClass:
        return self.pullback(curve.cls) - curve.mult_at_point * self.exceptional


def blowup(base: IntersectionLattice, exceptional_name: str = "E") -> BlownUpLattice:
    n = base.rank
    gram = [list(row) + [0] for row in base.gram] + [[0] * n + [-1]]
    names = base.basis_names + (exceptional_name,)
    if exceptional_name in base.basis_names:
        names = base.basis_names + (exceptional_name + "'",)
    return BlownUpLattice(tuple(tuple(r) for r in gram), names, base, n)


@dataclass(frozen=True)
class CurveClass:
    name: str
    cls: DivisorClass
    mult_at_point: int = 0
    is_elliptic: bool = False

    def __post_init__(self):
        if not self.name or self.name == "E":
            raise ValidationError("curve names must be nonempty and differ from 'E'", "name")
        if not self.cls.is_integral():
            raise ValidationError("curve classes must be integral", "class")
        if isinstance(self.mult_at_point, bool) or int(self.mult_at_point) != self.mult_at_point:
            raise ValidationError("multiplicity must be an integer", "mult")
        if self.mult_at_point < 0:
            raise ValidationError("multiplicity must be nonnegative", "mult")
        object.__setattr__(self, "mult_at_point", int(self.mult_at_point))
        object.__setattr__(self, "is_elliptic", bool(self.is_elliptic))

    @property
    def self_intersection(self) -> Fraction:
        return self.cls.square()


@dataclass(frozen=True)
class SurfaceModel:
    """Lattice data standing in for a polarized surface and a point on it.

    ``catalog`` is the declared list of irreducible curves; every result is
    relative to it.
    """

    lattice: IntersectionLattice
    polarization: DivisorClass
    catalog: tuple[CurveClass, ...] = ()
    abelian: bool = False
    origin_very_general: bool = False
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "catalog", tuple(self.catalog))
        L = self.polarization
        if L.lattice != self.lattice:
            raise ValidationError("polarization is not on the model lattice", "polarization")
        if L.square() <= 0:
            raise ValidationError("polarization must have positive self-intersection", "polarization")
        seen = set()
        for i, c in enumerate(self.catalog):
            path = f"curves[{i}]"
            if c.name in seen:
                raise ValidationError(f"duplicate curve name {c.name!r}", f"{path}.name")
            seen.add(c.name)
            if c.cls.lattice != self.lattice:
                raise ValidationError("curve is not on the model lattice", f"{path}.class")
            if L.dot(c.cls) <= 0:
                raise ValidationError("polarization must be positive on every curve", f"{path}.class")
            if self.abelian:
                c2 = c.self_intersection
                if c2 < 0:
                    raise ValidationError("abelian surfaces carry no negative curves", f"{path}.class")
                if c.is_elliptic and c2 != 0:
                    raise ValidationError("elliptic curves on abelian surfaces have C^2 = 0", f"{path}.elliptic")
        object.__setattr__(self, "abelian", bool(self.abelian))
        object.__setattr__(self, "origin_very_general", bool(self.origin_very_general))

    @property
    def L(self) -> DivisorClass:
        return self.polarization

    def degree(self, curve: CurveClass) -> Fraction:
        return self.polarization.dot(curve.cls)

    def curve(self, name: str) -> CurveClass:
        for c in self.catalog:
            if c.name == name:
                return c
        raise KeyError(name)

    @cached_property
    def blown_up(self) -> tuple[BlownUpLattice, tuple[DivisorClass, ...]]:
        bl = blowup(self.lattice)
        return bl, tuple(bl.proper_transform(c) for c in self.catalog)

    def with_polarization(self, L: DivisorClass, name: str = "") -> SurfaceModel:
        return SurfaceModel(self.lattice, L, self.catalog, self.abelian,
                            self.origin_very_general, name or self.name)

    def with_catalog(self, catalog: Iterable[CurveClass]) -> SurfaceModel:
        return SurfaceModel(self.lattice, self.polarization, tuple(catalog), self.abelian,
                            self.origin_very_general, self.name)


def blowup_extend(model: SurfaceModel) -> tuple[BlownUpLattice, list[DivisorClass]]:
    """Blow up the model's point: the extended lattice and the catalog's proper transforms."""
    bl, transforms = model.blown_up
    return bl, list(transforms)
