"""Catalog-relative Zariski decompositions and the chamber structure of ``pi^*B - tE``.

The decomposition uses the usual support-growing iteration: put every curve
that meets the current positive part negatively into the support, solve
``P . C = 0`` on the support, repeat.  Along the ray all intersection numbers are
affine in ``t``, so the iteration is run on affine functions and evaluated just
to the right of the current wall; that gives each chamber's support and its
coefficient functions ``a(t) = alpha + beta*t`` in one pass.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import DegenerateRay, LatticeMismatch, NotPseudoeffective
from .exactnum import Exact, QuadraticNumber, canonical, qn_compare, sqrt_exact
from .lattice import (
    BlownUpLattice,
    CurveClass,
    DivisorClass,
    blowup,
    inverse,
    is_negative_definite,
)

__all__ = [
    "Affine",
    "Chamber",
    "RayChambers",
    "ZariskiDecomposition",
    "ray_chambers",
    "zariski_decompose",
]

E_NAME = "E"


@dataclass(frozen=True)
class Affine:
    """``c0 + c1*t`` with rational coefficients."""

    c0: Fraction
    c1: Fraction = Fraction(0)

    def __add__(self, other: Affine) -> Affine:
        return Affine(self.c0 + other.c0, self.c1 + other.c1)

    def __sub__(self, other: Affine) -> Affine:
        return Affine(self.c0 - other.c0, self.c1 - other.c1)

    def scale(self, k: Fraction) -> Affine:
        return Affine(k * self.c0, k * self.c1)

    def __call__(self, t):
        return canonical(self.c1 * t + self.c0) if self.c1 else self.c0

    def root(self) -> Fraction | None:
        return None if self.c1 == 0 else -self.c0 / self.c1


ZERO = Affine(Fraction(0))


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def _right_sign_at(t0: Fraction) -> Callable[[Affine], int]:
    """Sign of an affine function at ``t0 + delta`` for infinitesimal ``delta > 0``."""

    def sign(f: Affine) -> int:
        return _sgn(f.c0 + f.c1 * t0) or _sgn(f.c1)

    return sign


def _const_sign(f: Affine) -> int:
    return _sgn(f.c0)


def _iterate(gram: list[list[Fraction]], dvals: Sequence[Affine], sign) -> tuple[list[int], dict[int, Affine], list[Affine]]:
    """Grow the support until the positive part is nef against every candidate curve.

    Returns ``(support, coefficients, p)`` where ``p[j]`` is ``P . C_j``.
    """
    n = len(dvals)
    support: list[int] = []
    coeffs: dict[int, Affine] = {}
    while True:
        p = []
        for j in range(n):
            v = dvals[j]
            for i, a in coeffs.items():
                g = gram[i][j]
                if g:
                    v = v - a.scale(g)
            p.append(v)
        new = [j for j in range(n) if j not in coeffs and sign(p[j]) < 0]
        if not new:
            break
        support = sorted(support + new)
        sub = [[gram[i][j] for j in support] for i in support]
        if not is_negative_definite(sub):
            raise NotPseudoeffective(
                "not pseudoeffective: the support curves are not negative definite"
            )
        inv = inverse(sub)
        coeffs = {}
        for r, i in enumerate(support):
            acc = ZERO
            for c, j in enumerate(support):
                if inv[r][c]:
                    acc = acc + dvals[j].scale(inv[r][c])
            coeffs[i] = acc
    for i, a in coeffs.items():
        if sign(a) < 0:
            raise NotPseudoeffective("not pseudoeffective: a negative coefficient is forced in the negative part")
    return support, coeffs, p


@dataclass(frozen=True)
class ZariskiDecomposition:
    """``input = positive + sum(a_C * C)`` with ``a_C > 0`` on a negative-definite support."""

    input: DivisorClass
    positive: DivisorClass
    negative_coeffs: dict[str, Fraction] = field(default_factory=dict)

    @property
    def support(self) -> tuple[str, ...]:
        return tuple(sorted(self.negative_coeffs))

    def key(self) -> tuple:
        return (self.positive.coeffs, tuple(sorted(self.negative_coeffs.items())))

    def __eq__(self, other):
        if not isinstance(other, ZariskiDecomposition):
            return NotImplemented
        return self.input == other.input and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def _curve_data(bl: BlownUpLattice, catalog: Sequence[CurveClass]):
    names = [c.name for c in catalog] + [E_NAME]
    classes = [bl.proper_transform(c) for c in catalog] + [bl.exceptional]
    gram = [[u.dot(v) for v in classes] for u in classes]
    return names, classes, gram


def _ensure_blown_up(D: DivisorClass) -> BlownUpLattice:
    if not isinstance(D.lattice, BlownUpLattice):
        raise LatticeMismatch("expected a class on a blown-up lattice")
    return D.lattice


def zariski_decompose(D: DivisorClass, catalog: Sequence[CurveClass]) -> ZariskiDecomposition:
    """Zariski decomposition of ``D`` relative to the catalog's proper transforms and ``E``."""
    bl = _ensure_blown_up(D)
    for c in catalog:
        if c.cls.lattice != bl.base:
            raise LatticeMismatch(f"curve {c.name} is not on the base lattice")
    names, classes, gram = _curve_data(bl, catalog)
    dvals = [Affine(D.dot(c)) for c in classes]
    _, coeffs, _ = _iterate(gram, dvals, _const_sign)
    neg = {names[i]: a.c0 for i, a in coeffs.items() if a.c0 != 0}
    P = D
    for i, a in coeffs.items():
        if a.c0:
            P = P - a.c0 * classes[i]
    return ZariskiDecomposition(D, P, neg)


@dataclass(frozen=True)
class Chamber:
    """One interval of constant support along the ray."""

    start: Fraction
    end: Exact
    support: tuple[str, ...]
    coefficients: dict[str, Affine]
    slice_fn: Affine  # t -> P_t . E

    def coefficients_at(self, t) -> dict[str, Exact]:
        return {n: f(t) for n, f in self.coefficients.items()}


@dataclass(frozen=True)
class RayChambers:
    B: DivisorClass
    catalog: tuple[CurveClass, ...]
    breakpoints: tuple[tuple[Fraction, tuple[str, ...]], ...]
    chambers: tuple[Chamber, ...]
    mu_prime: Exact
    blown_up: BlownUpLattice = field(repr=False, compare=False, default=None)

    @property
    def t_validity(self) -> tuple[Fraction, Exact]:
        return Fraction(0), self.mu_prime

    @property
    def epsilons(self) -> tuple[Fraction, ...]:
        return tuple(t for t, _ in self.breakpoints)

    @property
    def coefficient_functions(self) -> tuple[dict[str, Affine], ...]:
        return tuple(c.coefficients for c in self.chambers)

    def entry_order(self) -> list[tuple[Fraction, str]]:
        """Curves in order of first appearance, ties broken by name."""
        return [(t, n) for t, names in self.breakpoints for n in sorted(names)]

    def mult(self, name: str) -> int:
        for c in self.catalog:
            if c.name == name:
                return c.mult_at_point
        raise KeyError(name)

    def chamber_at(self, t) -> Chamber:
        if t < 0 or qn_compare(t, self.mu_prime) > 0:
            raise DegenerateRay(f"t = {t} outside [0, mu']")
        for ch in self.chambers:
            if t < ch.end:
                return ch
        return self.chambers[-1]

    def coefficients_at(self, t) -> dict[str, Exact]:
        return {n: v for n, v in self.chamber_at(t).coefficients_at(t).items() if v != 0}

    def slice_length(self, t) -> Exact:
        return self.chamber_at(t).slice_fn(t)

    def volume(self, t) -> Exact:
        """``(P_t)^2``."""
        P = self.positive_part_at(Fraction(t))
        return P.square()

    def positive_part_at(self, t: Fraction) -> DivisorClass:
        bl = self.blown_up
        D = bl.pullback(self.B) - Fraction(t) * bl.exceptional
        for c in self.catalog:
            a = self.coefficients_at(t).get(c.name)
            if a:
                D = D - a * bl.proper_transform(c)
        return D

    def decomposition_at(self, t: Fraction) -> ZariskiDecomposition:
        t = Fraction(t)
        bl = self.blown_up
        D = bl.pullback(self.B) - t * bl.exceptional
        return ZariskiDecomposition(D, self.positive_part_at(t), dict(self.coefficients_at(t)))


def _smallest_root_at_least(q0: Fraction, q1: Fraction, q2: Fraction, t0: Fraction) -> Exact | None:
    if q2 == 0:
        if q1 == 0:
            return None
        r = -q0 / q1
        return r if r >= t0 else None
    disc = q1 * q1 - 4 * q2 * q0
    if disc < 0:
        return None
    s = QuadraticNumber._coerce(sqrt_exact(disc))
    roots = sorted((canonical((sg * s - q1) / (2 * q2)) for sg in (-1, 1)), key=_SortKey)
    for r in roots:
        if qn_compare(r, t0) >= 0:
            return r
    return None


class _SortKey:
    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return qn_compare(self.v, other.v) < 0


def ray_chambers(B: DivisorClass, catalog: Sequence[CurveClass]) -> RayChambers:
    """Walk ``pi^*B - tE`` from ``t = 0`` until the positive part stops being big.

    Each wall is where some ``P_t . C`` reaches zero; ``mu_prime`` is the first
    root of ``(P_t)^2`` after the last wall, exact in a quadratic field.
    """
    catalog = tuple(catalog)
    base = B.lattice
    for c in catalog:
        if c.cls.lattice != base:
            raise LatticeMismatch(f"curve {c.name} is not on the lattice of B")
    B2 = B.square()
    if B2 <= 0:
        raise DegenerateRay("B must have positive self-intersection")
    for c in catalog:
        if B.dot(c.cls) <= 0:
            raise DegenerateRay(f"B is not positive on curve {c.name}")
    bl = blowup(base)
    names, classes, gram = _curve_data(bl, catalog)
    e_idx = len(names) - 1
    mults = [Fraction(c.mult_at_point) for c in catalog]
    # (pi^*B - tE) . C_bar = B.C - t*m ;  (pi^*B - tE) . E = t
    dvals = [Affine(B.dot(c.cls), -m) for c, m in zip(catalog, mults)] + [Affine(Fraction(0), Fraction(1))]

    t0 = Fraction(0)
    prev: set[int] = set()
    chambers: list[Chamber] = []
    breakpoints: list[tuple[Fraction, tuple[str, ...]]] = []
    while True:
        support, coeffs, p = _iterate(gram, dvals, _right_sign_at(t0))
        if e_idx in coeffs:
            raise DegenerateRay("E entered the negative part before the class stopped being big")
        for i, a in coeffs.items():
            if a.c1 < 0:
                raise NotPseudoeffective(f"coefficient of {names[i]} decreases along the ray")
        entering = tuple(sorted(names[i] for i in set(support) - prev))
        if chambers:
            breakpoints.append((t0, entering))
        elif entering:
            raise DegenerateRay("negative part is nonzero at t = 0")

        # (P_t)^2 = (pi^*B - tE)^2 - sum a_i(t) * (D_t . C_i) since P_t . C_i = 0
        q0, q1, q2 = B2, Fraction(0), Fraction(-1)
        for i, a in coeffs.items():
            d = dvals[i]
            q0 -= a.c0 * d.c0
            q1 -= a.c0 * d.c1 + a.c1 * d.c0
            q2 -= a.c1 * d.c1
        root = _smallest_root_at_least(q0, q1, q2, t0)
        if root is None:
            raise DegenerateRay("positive part never stops being big along the ray")

        wall = None
        for j in range(len(names)):
            if j in coeffs or j == e_idx:
                continue
            if p[j].c1 < 0:
                r = p[j].root()
                if wall is None or r < wall:
                    wall = r
        slice_fn = p[e_idx]
        if slice_fn.c1 < 0:
            r = slice_fn.root()
            if qn_compare(r, root) < 0 and (wall is None or r <= wall):
                raise DegenerateRay("slice length reaches zero while the class is still big")

        done = wall is None or qn_compare(root, wall) <= 0
        end = root if done else wall
        chambers.append(Chamber(
            t0, end, tuple(sorted(names[i] for i in coeffs)),
            {names[i]: a for i, a in coeffs.items()}, slice_fn,
        ))
        if done:
            return RayChambers(B, catalog, tuple(breakpoints), tuple(chambers), root, bl)
        t0 = wall
        prev = set(support)
