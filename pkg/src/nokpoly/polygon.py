"""Generic infinitesimal Newton-Okounkov polygons and the convex tests run on them.

Coordinates are ``(t, y)``: ``t`` along the exceptional direction, ``y`` the
height of the vertical slice.  All geometry is exact; coordinates are
``Fraction`` or :class:`QuadraticNumber` sharing one radicand per polygon.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidMultiplicity, OutOfRange
from .exactnum import Exact, QuadraticNumber, canonical, qn_compare, to_decimal
from .lattice import CurveClass, DivisorClass
from .zariski import RayChambers, ray_chambers

__all__ = [
    "EnvelopeReport",
    "LAMBDA",
    "NOKPolygon",
    "Piece",
    "RegionLambda",
    "area",
    "build_generic_polygon",
    "contains_inverted_simplex",
    "convex_hull",
    "envelope_check",
    "lambda_interior_meets",
    "largest_inverted_simplex",
    "slice",
    "triangle_containment_check",
]

Point = tuple  # (t, y), exact coordinates


def _c(x) -> Exact:
    return canonical(x)


def _cross(o: Point, a: Point, b: Point) -> Exact:
    return _c((a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]))


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


class _Key:
    """Sort key for exact points (lexicographic, mixed fields allowed)."""

    __slots__ = ("p",)

    def __init__(self, p):
        self.p = p

    def __lt__(self, other):
        c = qn_compare(self.p[0], other.p[0])
        return c < 0 if c else qn_compare(self.p[1], other.p[1]) < 0


def convex_hull(points: Iterable[Point]) -> list[Point]:
    """Counterclockwise hull without collinear points (monotone chain)."""
    pts = []
    for p in sorted({(_c(x), _c(y)) for x, y in points}, key=_Key):
        pts.append(p)
    if len(pts) <= 2:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


@dataclass(frozen=True)
class Piece:
    """Linear piece ``y = slope*t + intercept`` on ``[lo, hi]``."""

    slope: Exact
    intercept: Exact
    lo: Exact
    hi: Exact

    def __call__(self, t) -> Exact:
        return _c(self.slope * t + self.intercept)


def _piece(a: Point, b: Point) -> Piece:
    slope = _c((b[1] - a[1]) / (b[0] - a[0]))
    return Piece(slope, _c(a[1] - slope * a[0]), a[0], b[0])


@dataclass(frozen=True)
class NOKPolygon:
    """Convex polygon with counterclockwise exact vertices, origin first when present."""

    vertices: tuple[Point, ...]
    chambers: RayChambers | None = field(default=None, compare=False, repr=False)

    @classmethod
    def from_points(cls, points: Iterable[Point], chambers: RayChambers | None = None) -> NOKPolygon:
        hull = convex_hull(points)
        origin = (Fraction(0), Fraction(0))
        if origin in hull:
            k = hull.index(origin)
            hull = hull[k:] + hull[:k]
        return cls(tuple(hull), chambers)

    @classmethod
    def from_chambers(cls, rc: RayChambers) -> NOKPolygon:
        mu = rc.mu_prime
        pts = [(Fraction(0), Fraction(0)), (mu, Fraction(0))]
        for ch in rc.chambers:
            pts.append((ch.start, ch.slice_fn(ch.start)))
            pts.append((ch.end, ch.slice_fn(ch.end)))
        return cls.from_points(pts, rc)

    # -- basic geometry -------------------------------------------------
    @property
    def mu_prime(self) -> Exact:
        return max((v[0] for v in self.vertices), key=_Scalar) if self.vertices else Fraction(0)

    @property
    def base_interval(self) -> tuple[Exact, Exact]:
        return Fraction(0), self.mu_prime

    def edges(self) -> list[tuple[Point, Point]]:
        v = self.vertices
        if len(v) < 2:
            return []
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]

    @property
    def upper_boundary(self) -> list[Piece]:
        """Non-vertical upper edges, left to right."""
        return [_piece(b, a) for a, b in reversed(self.edges()) if qn_compare(b[0], a[0]) < 0]

    @property
    def lower_boundary(self) -> list[Piece]:
        return [_piece(a, b) for a, b in self.edges() if qn_compare(b[0], a[0]) > 0]

    def slopes(self) -> list[Exact]:
        return [p.slope for p in self.upper_boundary]

    def area(self) -> Exact:
        s = Fraction(0)
        for a, b in self.edges():
            s = s + (a[0] * b[1] - b[0] * a[1])
        return _c(s / 2)

    def max_height(self) -> Exact:
        return max((v[1] for v in self.vertices), key=_Scalar)

    def contains(self, p: Point, strict: bool = False) -> bool:
        v = self.vertices
        if not v:
            return False
        if len(v) == 1:
            return not strict and tuple(map(_c, p)) == v[0]
        if len(v) == 2:
            if strict or _cross(v[0], v[1], p) != 0:
                return False
            return all(
                qn_compare(min(v[0][k], v[1][k], key=_Scalar), p[k]) <= 0 <= qn_compare(max(v[0][k], v[1][k], key=_Scalar), p[k])
                for k in (0, 1)
            )
        for a, b in self.edges():
            s = _sgn(_cross(a, b, p))
            if s < 0 or (strict and s == 0):
                return False
        return True

    def slice(self, t) -> tuple[Exact, Exact]:
        """Vertical slice ``{t} x [lo, hi]``."""
        t = _c(t)
        xs = [v[0] for v in self.vertices]
        if not xs or qn_compare(t, min(xs, key=_Scalar)) < 0 or qn_compare(t, max(xs, key=_Scalar)) > 0:
            raise OutOfRange(f"t = {t} outside the polygon's base")
        ys = [v[1] for v in self.vertices if v[0] == t]
        for a, b in self.edges():
            lo, hi = (a, b) if qn_compare(a[0], b[0]) <= 0 else (b, a)
            if qn_compare(lo[0], t) < 0 < qn_compare(hi[0], t):
                ys.append(_c(lo[1] + (hi[1] - lo[1]) * (t - lo[0]) / (hi[0] - lo[0])))
        return min(ys, key=_Scalar), max(ys, key=_Scalar)

    def scaled(self, k) -> NOKPolygon:
        k = Fraction(k)
        if k <= 0:
            raise ValueError("scale must be positive")
        return NOKPolygon(tuple((_c(k * x), _c(k * y)) for x, y in self.vertices))

    def same_shape(self, other: NOKPolygon) -> bool:
        return set(self.vertices) == set(other.vertices)

    def float_vertices(self) -> list[tuple[float, float]]:
        return [(float(to_decimal(x)), float(to_decimal(y))) for x, y in self.vertices]


class _Scalar:
    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return qn_compare(self.v, other.v) < 0


def build_generic_polygon(B: DivisorClass, catalog: Sequence[CurveClass]) -> NOKPolygon:
    """Polygon whose slice over ``t`` is ``[0, P_t . E]`` for ``t`` in ``[0, mu']``."""
    return NOKPolygon.from_chambers(ray_chambers(B, catalog))


def area(poly: NOKPolygon) -> Exact:
    return poly.area()


def slice(poly: NOKPolygon, t) -> tuple[Exact, Exact]:  # noqa: A001 - mirrors the geometric name
    return poly.slice(t)


def _ray_extent(poly: NOKPolygon, direction: Point) -> Exact:
    """Largest ``s >= 0`` with ``s*direction`` in the polygon (which must contain the origin)."""
    origin = (Fraction(0), Fraction(0))
    if not poly.contains(origin):
        return Fraction(0)
    v = poly.vertices
    if len(v) < 3:
        best = Fraction(0)
        for p in v:
            if _cross(origin, direction, p) == 0 and qn_compare(p[0] * direction[0] + p[1] * direction[1], 0) > 0:
                s = _c(p[0] / direction[0]) if direction[0] else _c(p[1] / direction[1])
                best = max(best, s, key=_Scalar)
        return best
    best = None
    for a, b in poly.edges():
        # cross(a, b, s*d) = cross(a, b, 0) + s * ((b-a) x d) >= 0
        c0 = _cross(a, b, origin)
        c1 = _c((b[0] - a[0]) * direction[1] - (b[1] - a[1]) * direction[0])
        if c1 < 0:
            s = _c(-c0 / c1)
            if best is None or qn_compare(s, best) < 0:
                best = s
    if best is None:
        raise ValueError("polygon is unbounded along the direction")
    return best


def largest_inverted_simplex(poly: NOKPolygon) -> Exact:
    """Largest ``xi`` with the triangle ``(0,0), (xi,0), (xi,xi)`` inside the polygon."""
    along_axis = _ray_extent(poly, (Fraction(1), Fraction(0)))
    along_diag = _ray_extent(poly, (Fraction(1), Fraction(1)))
    return min(along_axis, along_diag, key=_Scalar)


def contains_inverted_simplex(poly: NOKPolygon, xi) -> bool:
    xi = _c(xi)
    if xi < 0:
        raise ValueError("xi must be nonnegative")
    z = Fraction(0)
    return all(poly.contains(p) for p in ((z, z), (xi, z), (xi, xi)))


@dataclass(frozen=True)
class RegionLambda:
    """``{(t, y) : t >= 2, y >= 0, t >= 2y}``; each half-plane is ``a*t + b*y + c >= 0``."""

    half_planes: tuple[tuple[int, int, int], ...] = ((1, 0, -2), (0, 1, 0), (1, -2, 0))

    def value(self, h, p: Point) -> Exact:
        return _c(h[0] * p[0] + h[1] * p[1] + h[2])

    def contains(self, p: Point, strict: bool = False) -> bool:
        return all((self.value(h, p) > 0) if strict else (self.value(h, p) >= 0) for h in self.half_planes)

    def clip(self, poly: NOKPolygon) -> NOKPolygon:
        """Exact Sutherland-Hodgman clip of the polygon against the region."""
        pts = list(poly.vertices)
        for h in self.half_planes:
            if not pts:
                break
            out = []
            n = len(pts)
            for i in range(n):
                cur, nxt = pts[i], pts[(i + 1) % n]
                vc, vn = self.value(h, cur), self.value(h, nxt)
                if vc >= 0:
                    out.append(cur)
                if (vc > 0 and vn < 0) or (vc < 0 and vn > 0):
                    r = _c(vc / (vc - vn))
                    out.append((_c(cur[0] + r * (nxt[0] - cur[0])), _c(cur[1] + r * (nxt[1] - cur[1]))))
            pts = out
        return NOKPolygon.from_points(pts)


LAMBDA = RegionLambda()


def _rational_interior_point(poly: NOKPolygon) -> Point:
    """A rational point strictly inside a polygon of positive area."""
    v = poly.vertices
    n = len(v)
    cx = _c(sum((p[0] for p in v), Fraction(0)) / n)
    cy = _c(sum((p[1] for p in v), Fraction(0)) / n)
    if isinstance(cx, Fraction) and isinstance(cy, Fraction):
        return cx, cy
    for bits in range(4, 400, 4):
        den = 1 << bits
        cand = (_round(cx, den), _round(cy, den))
        if poly.contains(cand, strict=True):
            return cand
    raise ArithmeticError("could not find a rational interior point")


def _round(x, den: int) -> Fraction:
    if isinstance(x, Fraction):
        return x
    # floor(x*den) via exact comparison, starting from a decimal guess
    guess = int(to_decimal(x * den, 60).to_integral_value())
    while qn_compare(Fraction(guess), x * den) > 0:
        guess -= 1
    while qn_compare(Fraction(guess + 1), x * den) <= 0:
        guess += 1
    return Fraction(guess, den)


def lambda_interior_meets(poly: NOKPolygon) -> tuple[bool, Point | None]:
    """Does the polygon's interior meet the interior of Lambda?  Returns a rational witness if so."""
    clip = LAMBDA.clip(poly)
    if len(clip.vertices) < 3 or clip.area() <= 0:
        return False, None
    return True, _rational_interior_point(clip)


# -- envelope lines --------------------------------------------------------
@dataclass(frozen=True)
class EnvelopeLine:
    index: int
    curve: str
    start: Fraction
    end: Exact
    slope: Fraction
    intercept: Fraction

    def __call__(self, t) -> Exact:
        return _c(self.slope * t + self.intercept)


@dataclass(frozen=True)
class EnvelopeReport:
    lines: tuple[EnvelopeLine, ...] = ()
    regions: tuple[tuple[Point, ...], ...] = ()  # T_i vertices; unbounded ones end with a direction
    unbounded: tuple[bool, ...] = ()
    slice_ok: tuple[bool, ...] = ()
    slice_equal: tuple[bool, ...] = ()
    polygon_inside: tuple[bool, ...] = ()
    nested: tuple[bool, ...] = ()  # nested[i]: T_i contains T_{i+1}

    @property
    def ok(self) -> bool:
        return all(self.slice_ok) and all(self.nested) and all(self.polygon_inside)

    def failures(self) -> list[str]:
        out = []
        for k, line in enumerate(self.lines):
            if not self.slice_ok[k]:
                out.append(f"slice exceeds l_{line.index} on [{line.start}, {line.end}]")
            if not self.polygon_inside[k]:
                out.append(f"polygon not inside T_{line.index}")
        for k, good in enumerate(self.nested):
            if not good:
                out.append(f"T_{k + 1} does not contain T_{k + 2}")
        return out


def _region(lines: Sequence[EnvelopeLine], i: int) -> tuple[list[Point], Fraction | None]:
    """Vertices of T_i, plus its recession slope when unbounded."""
    verts = [(Fraction(0), Fraction(0))]
    for line in lines[: i + 1]:
        verts.append((line.start, line(line.start)))
    last = lines[i]
    if last.slope < 0:
        verts.append((-last.intercept / last.slope, Fraction(0)))
        return verts, None
    return verts, last.slope


def _in_region(verts: list[Point], rec: Fraction | None, p: Point) -> bool:
    if qn_compare(p[1], 0) < 0:
        return False
    # the chain O, A_1, ..., F_i runs clockwise, so inside means right of every edge
    for a, b in zip(verts, verts[1:]):
        if a == b:
            continue
        if qn_compare(_cross(a, b, p), 0) > 0:
            return False
    if rec is not None:
        a = verts[-1]
        b = (a[0] + 1, a[1] + rec)
        if qn_compare(_cross(a, b, p), 0) > 0:
            return False
    return True


def _region_nested(outer, inner) -> bool:
    (vo, ro), (vi, ri) = outer, inner
    if not all(_in_region(vo, ro, p) for p in vi):
        return False
    if ri is not None:
        return ro is not None and ri <= ro
    return True


def envelope_check(poly: NOKPolygon, chambers: RayChambers) -> EnvelopeReport:
    """Compare slices with the lines ``l_i`` and check the regions ``T_i`` nest."""
    order = chambers.entry_order()
    if not order:
        return EnvelopeReport()
    lines = []
    msum = Fraction(0)
    esum = Fraction(0)
    for k, (eps, name) in enumerate(order):
        m = Fraction(chambers.mult(name))
        msum += m
        esum += eps * m
        end = order[k + 1][0] if k + 1 < len(order) else chambers.mu_prime
        lines.append(EnvelopeLine(k + 1, name, eps, end, 1 - msum, esum))

    breaks = [ch.start for ch in chambers.chambers] + [chambers.mu_prime]
    slice_ok, slice_eq, inside = [], [], []
    regions, unbounded = [], []
    region_data = []
    for k, line in enumerate(lines):
        pts = [line.start, line.end] + [b for b in breaks if qn_compare(line.start, b) < 0 < qn_compare(line.end, b)]
        diffs = [_c(line(t) - chambers.slice_length(t)) for t in pts]
        slice_ok.append(all(d >= 0 for d in diffs))
        slice_eq.append(all(d == 0 for d in diffs))
        verts, rec = _region(lines, k)
        region_data.append((verts, rec))
        inside.append(all(_in_region(verts, rec, p) for p in poly.vertices))
        regions.append(tuple(verts) + (((Fraction(1), rec),) if rec is not None else ()))
        unbounded.append(rec is not None)
    nested = [_region_nested(region_data[k], region_data[k + 1]) for k in range(len(lines) - 1)]
    return EnvelopeReport(tuple(lines), tuple(regions), tuple(unbounded), tuple(slice_ok),
                          tuple(slice_eq), tuple(inside), tuple(nested))


def triangle_containment_check(poly: NOKPolygon, p_deg: int, q_mult: int) -> bool:
    """Containment in the triangle cut out by a curve of degree ``p`` and multiplicity ``q``."""
    if q_mult < 1:
        raise InvalidMultiplicity("multiplicity must be at least 1")
    p = Fraction(p_deg)
    if q_mult == 1:
        return qn_compare(poly.max_height(), p) <= 0
    q = Fraction(q_mult)
    tri = NOKPolygon.from_points([(Fraction(0), Fraction(0)), (p / q, p / q), (p / (q - 1), Fraction(0))])
    return all(tri.contains(v) for v in poly.vertices)
