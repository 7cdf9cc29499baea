"""Closed polygonal curves in R^3: linking numbers, pushoffs, framing parity.

Coordinates are Fractions and every predicate (segment intersection,
genericity of a projection, crossing sign) is decided exactly.  Floating
point only appears in :func:`gauss_linking`, which evaluates the Gauss
double integral segment pair by segment pair and serves as an independent
check on the crossing count.

Normal fields are only required to be nowhere zero and transverse to the
curve, not unit length: the framing depends on the homotopy class of the
field only, and unit vectors would force irrational coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .exactalg import ParseError

Vec = tuple[Fraction, Fraction, Fraction]


class GeometryError(ValueError):
    pass


def vec(x, y, z) -> Vec:
    return (Fraction(x), Fraction(y), Fraction(z))


def _sub(a: Vec, b: Vec) -> Vec:
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def _add(a: Vec, b: Vec) -> Vec:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def _scale(k, a: Vec) -> Vec:
    return (k * a[0], k * a[1], k * a[2])


def _dot(a: Vec, b: Vec):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _cross(a: Vec, b: Vec) -> Vec:
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _is_zero(a: Vec) -> bool:
    return not (a[0] or a[1] or a[2])


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _box(*pts) -> tuple[tuple[float, ...], tuple[float, ...]]:
    fl = [[float(c) for c in p] for p in pts]
    return tuple(map(min, zip(*fl))), tuple(map(max, zip(*fl)))


def _apart(b1, b2) -> bool:
    """True only if two float boxes are separated by a margin far above rounding error."""
    for lo1, hi1, lo2, hi2 in zip(b1[0], b1[1], b2[0], b2[1]):
        tol = 1e-9 * (1.0 + abs(lo1) + abs(hi1) + abs(lo2) + abs(hi2))
        if lo2 > hi1 + tol or lo1 > hi2 + tol:
            return True
    return False


def segments_intersect(p0: Vec, p1: Vec, q0: Vec, q1: Vec) -> bool:
    """Exact test whether closed segments [p0, p1] and [q0, q1] share a point."""
    d1, d2, r = _sub(p1, p0), _sub(q1, q0), _sub(q0, p0)
    n = _cross(d1, d2)
    if not _is_zero(n):
        if _dot(r, n):
            return False
        nn = _dot(n, n)
        s = _dot(_cross(r, d2), n) / nn
        t = _dot(_cross(r, d1), n) / nn
        return 0 <= s <= 1 and 0 <= t <= 1
    if not _is_zero(_cross(r, d1)):
        return False
    dd = _dot(d1, d1)
    t0, t1 = _dot(r, d1) / dd, _dot(_sub(q1, p0), d1) / dd
    return max(min(t0, t1), 0) <= min(max(t0, t1), 1)


@dataclass(frozen=True)
class PolyCurve3:
    """Closed embedded polygon; the last vertex connects back to the first."""

    vertices: tuple[Vec, ...]
    name: str = "K"

    def __post_init__(self):
        vs = tuple(vec(*v) for v in self.vertices)
        object.__setattr__(self, "vertices", vs)
        n = len(vs)
        if n < 3:
            raise GeometryError("a closed curve needs at least 3 vertices")
        for i in range(n):
            if vs[i] == vs[(i + 1) % n]:
                raise GeometryError(f"consecutive vertices {i} and {(i + 1) % n} coincide")
        boxes = [_box(vs[i], vs[(i + 1) % n]) for i in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                a0, a1 = vs[i], vs[(i + 1) % n]
                b0, b1 = vs[j], vs[(j + 1) % n]
                if j == i + 1 or (i == 0 and j == n - 1):
                    # adjacent edges share one vertex; they must not fold back onto each other
                    v = a1 if j == i + 1 else a0
                    x = a0 if j == i + 1 else a1
                    y = b1 if j == i + 1 else b0
                    u, w = _sub(x, v), _sub(y, v)
                    if _is_zero(_cross(u, w)) and _dot(u, w) > 0:
                        raise GeometryError(f"edges {i} and {j} overlap")
                elif not _apart(boxes[i], boxes[j]) and segments_intersect(a0, a1, b0, b1):
                    raise GeometryError(f"curve {self.name} self-intersects (edges {i} and {j})")

    def __len__(self):
        return len(self.vertices)

    def segments(self) -> Iterator[tuple[Vec, Vec]]:
        vs = self.vertices
        for i in range(len(vs)):
            yield vs[i], vs[(i + 1) % len(vs)]

    def reversed(self) -> "PolyCurve3":
        return PolyCurve3(tuple(reversed(self.vertices)), self.name)

    def translated(self, t: Sequence) -> "PolyCurve3":
        return PolyCurve3(tuple(_add(v, vec(*t)) for v in self.vertices), self.name)

    def to_text(self) -> str:
        lines = [f"curve {self.name} {len(self)}"]
        lines += [" ".join(str(c) for c in v) for v in self.vertices]
        return "\n".join(lines) + "\n"

    def as_array(self) -> np.ndarray:
        return np.array([[float(c) for c in v] for v in self.vertices])


@dataclass(frozen=True)
class NormalField:
    """One nonzero vector per vertex of ``curve``, never parallel to the chord v[i+1] - v[i-1]."""

    curve: PolyCurve3
    vectors: tuple[Vec, ...]

    def __post_init__(self):
        vs = tuple(vec(*v) for v in self.vectors)
        object.__setattr__(self, "vectors", vs)
        pts = self.curve.vertices
        n = len(pts)
        if len(vs) != n:
            raise GeometryError(f"field has {len(vs)} vectors for a curve with {n} vertices")
        for i, v in enumerate(vs):
            if _is_zero(v):
                raise GeometryError(f"normal field vanishes at vertex {i}")
            chord = _sub(pts[(i + 1) % n], pts[i - 1])
            if _is_zero(_cross(v, chord)):
                raise GeometryError(f"normal field is tangent to the curve at vertex {i}")

    def to_text(self) -> str:
        lines = [f"normal {self.curve.name}"]
        lines += [" ".join(str(c) for c in v) for v in self.vectors]
        return "\n".join(lines) + "\n"


def curves_disjoint(k1: PolyCurve3, k2: PolyCurve3) -> bool:
    s1 = [(a, b, _box(a, b)) for a, b in k1.segments()]
    s2 = [(a, b, _box(a, b)) for a, b in k2.segments()]
    return not any(not _apart(x, y) and segments_intersect(a0, a1, b0, b1)
                   for a0, a1, x in s1 for b0, b1, y in s2)


def _require_disjoint(k1: PolyCurve3, k2: PolyCurve3) -> None:
    if not curves_disjoint(k1, k2):
        raise GeometryError(f"curves {k1.name} and {k2.name} intersect")


# ---------------------------------------------------------------------------
# projections and crossings

MAX_DIRECTIONS = 64


def projection_directions(count: int = MAX_DIRECTIONS) -> list[Vec]:
    """Fixed sequence of rational view directions on the moment curve (1, t, t^2).

    Any three of them are linearly independent.
    """
    out = []
    for k in range(count):
        t = Fraction(10 + 3 * k, 7)
        out.append((Fraction(1), t, t * t))
    return out


class NonGenericProjection(GeometryError):
    pass


def _plane_basis(d: Vec) -> tuple[Vec, Vec]:
    e = vec(0, 0, 1)
    u = _cross(d, e)
    if _is_zero(u):
        u = _cross(d, vec(0, 1, 0))
    return u, _cross(d, u)


def _orient2(a, b, c):
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _on_segment2(a, b, p) -> bool:
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


@dataclass(frozen=True)
class Crossing:
    edge1: int
    edge2: int
    sign: int
    first_over: bool


def signed_crossings(k1: PolyCurve3, k2: PolyCurve3, direction: Vec) -> list[Crossing]:
    """Crossings of k1 with k2 seen from ``direction``.

    Heights increase towards the viewer.  Sign +1 when
    (t_over x t_under) . direction > 0 (a right-handed crossing).
    Raises NonGenericProjection if some vertex projects onto the other
    curve or two edges project onto overlapping lines.
    """
    d = vec(*direction)
    u, w = _plane_basis(d)

    def proj(p):
        return (_dot(p, u), _dot(p, w))

    segs1 = [(a, b, proj(a), proj(b)) for a, b in k1.segments()]
    segs2 = [(a, b, proj(a), proj(b)) for a, b in k2.segments()]
    boxes1 = [_box(P0, P1) for _, _, P0, P1 in segs1]
    boxes2 = [_box(Q0, Q1) for _, _, Q0, Q1 in segs2]
    out = []
    for i, (a0, a1, P0, P1) in enumerate(segs1):
        for j, (b0, b1, Q0, Q1) in enumerate(segs2):
            if _apart(boxes1[i], boxes2[j]):
                continue
            o1, o2 = _orient2(P0, P1, Q0), _orient2(P0, P1, Q1)
            o3, o4 = _orient2(Q0, Q1, P0), _orient2(Q0, Q1, P1)
            if (o1 == 0 and _on_segment2(P0, P1, Q0)) or (o2 == 0 and _on_segment2(P0, P1, Q1)) \
                    or (o3 == 0 and _on_segment2(Q0, Q1, P0)) or (o4 == 0 and _on_segment2(Q0, Q1, P1)):
                raise NonGenericProjection(f"edges {i} and {j} meet non-transversally in projection")
            if not (_sign(o1) * _sign(o2) < 0 and _sign(o3) * _sign(o4) < 0):
                continue
            da = (P1[0] - P0[0], P1[1] - P0[1])
            db = (Q1[0] - Q0[0], Q1[1] - Q0[1])
            r = (Q0[0] - P0[0], Q0[1] - P0[1])
            den = da[0] * db[1] - da[1] * db[0]
            s = (r[0] * db[1] - r[1] * db[0]) / den
            t = (r[0] * da[1] - r[1] * da[0]) / den
            ha = _dot(_add(a0, _scale(s, _sub(a1, a0))), d)
            hb = _dot(_add(b0, _scale(t, _sub(b1, b0))), d)
            if ha == hb:
                raise GeometryError(f"curves meet at edges {i} and {j}")
            ta, tb = _sub(a1, a0), _sub(b1, b0)
            over, under = (ta, tb) if ha > hb else (tb, ta)
            out.append(Crossing(i, j, _sign(_dot(_cross(over, under), d)), ha > hb))
    return out


def crossing_linking(k1: PolyCurve3, k2: PolyCurve3, direction: Vec) -> int:
    """Half the signed count of all crossings between k1 and k2 in one projection."""
    total = sum(c.sign for c in signed_crossings(k1, k2, direction))
    if total % 2:
        raise GeometryError("odd signed crossing count between closed curves")
    return total // 2


def generic_directions(k1: PolyCurve3, k2: PolyCurve3, count: int = 1,
                       attempts: int = MAX_DIRECTIONS) -> list[Vec]:
    """The first ``count`` directions of the fixed sequence that project the pair generically."""
    found = []
    for d in projection_directions(attempts):
        try:
            signed_crossings(k1, k2, d)
        except NonGenericProjection:
            continue
        found.append(d)
        if len(found) == count:
            return found
    raise GeometryError(f"no generic projection among {attempts} directions; input is degenerate")


def linking_number(k1: PolyCurve3, k2: PolyCurve3) -> int:
    _require_disjoint(k1, k2)
    (d,) = generic_directions(k1, k2)
    return crossing_linking(k1, k2, d)


def gauss_linking(k1: PolyCurve3, k2: PolyCurve3) -> float:
    """Gauss linking integral, summed exactly over pairs of straight segments.

    Each segment pair contributes the signed solid angle of the quadrilateral
    it spans, divided by 4 pi.
    """
    _require_disjoint(k1, k2)
    a = k1.as_array()
    b = k2.as_array()
    p1 = a[:, None, :]
    p2 = np.roll(a, -1, axis=0)[:, None, :]
    p3 = b[None, :, :]
    p4 = np.roll(b, -1, axis=0)[None, :, :]
    r13, r14, r23, r24 = p3 - p1, p4 - p1, p3 - p2, p4 - p2
    r12, r34 = p2 - p1, p4 - p3

    def unit(v):
        norm = np.linalg.norm(v, axis=-1, keepdims=True)
        with np.errstate(invalid="ignore", divide="ignore"):
            return np.where(norm > 0, v / norm, 0.0)

    n1 = unit(np.cross(r13, r14))
    n2 = unit(np.cross(r14, r24))
    n3 = unit(np.cross(r24, r23))
    n4 = unit(np.cross(r23, r13))

    def asin_dot(x, y):
        return np.arcsin(np.clip(np.sum(x * y, axis=-1), -1.0, 1.0))

    omega = asin_dot(n1, n2) + asin_dot(n2, n3) + asin_dot(n3, n4) + asin_dot(n4, n1)
    sign = np.sign(np.sum(np.cross(r34, r12) * r13, axis=-1))
    return float(np.sum(omega * sign) / (4 * math.pi))


# ---------------------------------------------------------------------------
# framings


def _max_norm(v: Vec):
    return max(abs(c) for c in v)


def default_eps(field: NormalField) -> Fraction:
    edges = min(_max_norm(_sub(b, a)) for a, b in field.curve.segments())
    return Fraction(edges) / (4 * max(_max_norm(v) for v in field.vectors))


MAX_HALVINGS = 20


def _shift(field: NormalField, eps: Fraction) -> PolyCurve3 | None:
    k = field.curve
    try:
        p = PolyCurve3(tuple(_add(v, _scale(eps, n)) for v, n in zip(k.vertices, field.vectors)),
                       k.name + "'")
    except GeometryError:
        return None
    return p if curves_disjoint(k, p) else None


def pushoff(field: NormalField, eps: Fraction | None = None) -> PolyCurve3:
    """Vertexwise K + eps * n, halving eps (at most 20 times) until embedded and disjoint from K."""
    eps = Fraction(eps) if eps is not None else default_eps(field)
    if eps <= 0:
        raise ValueError("eps must be positive")
    for _ in range(MAX_HALVINGS + 1):
        p = _shift(field, eps)
        if p is not None:
            return p
        eps /= 2
    raise GeometryError("no valid pushoff scale found")


def self_linking(field: NormalField, eps: Fraction | None = None) -> int:
    """Linking number of K with its pushoff along the field.

    The value is accepted once two consecutive valid scales agree.
    """
    eps = Fraction(eps) if eps is not None else default_eps(field)
    k = field.curve
    previous = None
    for _ in range(MAX_HALVINGS + 1):
        p = _shift(field, eps)
        if p is not None:
            lk = linking_number(k, p)
            if lk == previous:
                return lk
            previous = lk
        else:
            previous = None
        eps /= 2
    raise GeometryError("pushoff linking number did not stabilize")


def extends_over_seifert(field: NormalField, eps: Fraction | None = None) -> bool:
    """Whether the framing (tangent, n, binormal) extends over a Seifert surface: iff self-linking is odd."""
    return self_linking(field, eps) % 2 == 1


def so3_loop_class(chi_F: int, deg_phi: int) -> int:
    """Class in H_1(SO(3); Z/2) of the framing loop along the boundary of F.

    chi_F is the Euler characteristic of a connected surface with one
    boundary circle, i.e. 1 - 2 genus.  Zero means the framing extends over F.
    """
    if chi_F % 2 == 0 or chi_F > 1:
        raise ValueError(f"chi_F={chi_F} is not 1 - 2g for a surface with one boundary circle")
    return (chi_F + deg_phi) % 2


# ---------------------------------------------------------------------------
# sample curves


def _rat(x: float, den: int = 10_000) -> Fraction:
    return Fraction(round(x * den), den)


def regular_polygon(n: int, radius=1, center=(0, 0, 0), name: str = "K") -> PolyCurve3:
    """Rationally rounded regular n-gon in a horizontal plane."""
    cx, cy, cz = (Fraction(c) for c in center)
    pts = [(cx + radius * _rat(math.cos(2 * math.pi * i / n)),
            cy + radius * _rat(math.sin(2 * math.pi * i / n)), cz) for i in range(n)]
    return PolyCurve3(tuple(pts), name)


def twisted_unknot(twists: int, vertices: int | None = None) -> NormalField:
    """Round planar unknot with a field turning ``twists`` times about the curve.

    Positive twists are right-handed, so the self-linking equals ``twists``.
    """
    n = vertices or max(12, 8 * abs(twists) + 8)
    k = regular_polygon(n)
    field = []
    for i in range(n):
        phi = 2 * math.pi * i / n
        theta = -twists * phi
        radial = (math.cos(phi), math.sin(phi), 0.0)
        field.append(tuple(_rat(math.cos(theta) * r + math.sin(theta) * z)
                           for r, z in zip(radial, (0.0, 0.0, 1.0))))
    return NormalField(k, tuple(field))


def hopf_link() -> tuple[PolyCurve3, PolyCurve3]:
    """Square in the xy-plane around the origin, and a square in the xz-plane threading it."""
    a = PolyCurve3((vec(-1, -1, 0), vec(1, -1, 0), vec(1, 1, 0), vec(-1, 1, 0)), "A")
    b = PolyCurve3((vec(0, 0, -1), vec(2, 0, -1), vec(2, 0, 1), vec(0, 0, 1)), "B")
    return a, b


# ---------------------------------------------------------------------------
# file format


def parse_curve_file(text: str, source: str | None = None):
    """Read 'curve <name> <k>' blocks and 'normal <name>' blocks.

    Returns (curves, fields): a list of PolyCurve3 and a dict from curve
    name to NormalField.
    """
    lines = [(k + 1, raw.strip()) for k, raw in enumerate(text.splitlines())]
    lines = [(k, l) for k, l in lines if l and not l.startswith("#")]
    curves: list[PolyCurve3] = []
    fields: dict[str, NormalField] = {}
    pos = 0

    def read_vectors(count, start_line):
        nonlocal pos
        out = []
        for _ in range(count):
            if pos >= len(lines):
                raise ParseError(f"expected {count} vector lines", start_line, source)
            k, l = lines[pos]
            tok = l.split()
            if len(tok) != 3:
                raise ParseError("vector lines need three rationals", k, source)
            try:
                out.append(tuple(Fraction(t) for t in tok))
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"not a rational triple: {l!r}", k, source) from None
            pos += 1
        return out

    while pos < len(lines):
        k, l = lines[pos]
        tok = l.split()
        pos += 1
        try:
            if tok[0] == "curve" and len(tok) == 3:
                pts = read_vectors(int(tok[2]), k)
                curves.append(PolyCurve3(tuple(pts), tok[1]))
            elif tok[0] == "normal" and len(tok) == 2:
                target = next((c for c in curves if c.name == tok[1]), None)
                if target is None:
                    raise ParseError(f"normal field for unknown curve {tok[1]!r}", k, source)
                fields[tok[1]] = NormalField(target, tuple(read_vectors(len(target), k)))
            else:
                raise ParseError(f"unrecognized line {l!r}", k, source)
        except GeometryError as exc:
            raise ParseError(str(exc), k, source) from None
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(str(exc), k, source) from None
    return curves, fields
