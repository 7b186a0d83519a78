"""Spin numbers of homologically trivial products of reflections.

Given spheres ``S_1, ..., S_N`` whose reflections compose to the identity
and an orthogonal positive frame ``(a, b)``, the running vector

    e_k = R_{S_k} ... R_{S_1} a

is projected to the plane via ``v -> (<v,a>/<a,a>, <v,b>/<b,b>)``.  The
projections ``v_0 = (1, 0), v_1, ..., v_N = (1, 0)`` joined by straight
segments form a closed loop in the punctured plane; its winding number
about the origin is the spin number when ``b+ = 2``.  For ``b+ > 2`` only
its parity is meaningful.

Note the sign: the winding is reported as computed, with no correction for
the framing-difference convention (which flips the sign but not the parity).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .dynkin_catalog import Frame, FrameError, check_frame
from .exact_lattice import Lattice, inner_product, vec_add, vec_scale
from .picard_lefschetz import SphereSeq, _reflect_int, compose, is_homologically_trivial


class DegenerateLoopError(ValueError):
    pass


class NotTrivialError(ValueError):
    pass


class PlanePoint(NamedTuple):
    x: Fraction
    y: Fraction


ORIGIN = PlanePoint(Fraction(0), Fraction(0))
BASEPOINT = PlanePoint(Fraction(1), Fraction(0))


@dataclass(frozen=True)
class LoopPolyline:
    vertices: tuple

    @property
    def segments(self):
        return list(zip(self.vertices, self.vertices[1:]))

    def is_constant(self) -> bool:
        return len(self.vertices) == 1


@dataclass(frozen=True)
class SpinResult:
    winding: int
    b_plus: int

    @property
    def delta_mod2(self) -> int:
        return self.winding % 2

    @property
    def verdict(self) -> str:
        if self.b_plus == 2:
            if abs(self.winding) == 1:
                return "generator"
            return "trivial" if self.winding == 0 else "non-trivial"
        return "generator" if self.delta_mod2 else "trivial"


def orthogonalize_frame(L: Lattice, a, b) -> Frame:
    """Gram-Schmidt ``b`` against ``a``; both must span a positive plane."""
    a = tuple(Fraction(x) for x in a)
    b = tuple(Fraction(x) for x in b)
    aa = inner_product(L, a, a)
    if aa <= 0:
        raise FrameError("non-positive frame vector")
    ab = inner_product(L, a, b)
    if ab:
        b = vec_add(b, vec_scale(-ab / aa, a))
    if inner_product(L, b, b) <= 0:
        raise FrameError("frame does not span a positive 2-plane")
    return Frame(a, b)


def _integral_covector(L: Lattice, v) -> tuple[tuple, int]:
    """``(D * G v, D)`` with ``D`` the least common denominator of ``G v``."""
    gv = L.dual(v)
    den = 1
    for x in gv:
        den = math.lcm(den, Fraction(x).denominator)
    return tuple(int(x * den) for x in gv), den


class _Projector:
    def __init__(self, L: Lattice, frame: Frame):
        self.ga, da = _integral_covector(L, frame.a)
        self.gb, db = _integral_covector(L, frame.b)
        self.xden = da * inner_product(L, frame.a, frame.a)
        self.yden = db * inner_product(L, frame.b, frame.b)

    def __call__(self, v) -> PlanePoint:
        x = sum(vi * gi for vi, gi in zip(v, self.ga) if vi and gi)
        y = sum(vi * gi for vi, gi in zip(v, self.gb) if vi and gi)
        return PlanePoint(Fraction(x) / self.xden, Fraction(y) / self.yden)


def project(L: Lattice, f: Frame, v) -> PlanePoint:
    """Coordinates of ``v`` along the frame: ``(<v,a>/<a,a>, <v,b>/<b,b>)``."""
    return _Projector(L, f)(v)


def _cross(P, Q):
    return P.x * Q.y - P.y * Q.x


def _passes_through_origin(P: PlanePoint, Q: PlanePoint) -> bool:
    # collinear with the origin and on opposite sides of it
    return _cross(P, Q) == 0 and P.x * Q.x + P.y * Q.y < 0


def _collapse(points):
    out = [points[0]]
    for P in points[1:]:
        if P != out[-1]:
            out.append(P)
    return out


def orbit_points(seq: SphereSeq, f: Frame) -> list:
    """Raw projected orbit ``v_0 .. v_N`` (no duplicate collapse, no checks)."""
    L = seq.lattice
    proj = _Projector(L, f)
    v = list(f.a)
    if all(x.denominator == 1 for x in v):
        v = [int(x) for x in v]
    points = [proj(v)]
    cache: dict = {}
    for s in seq.walk():
        _reflect_int(L, s.vec, v, cache)
        points.append(proj(v))
    return points


def loop_vertices(seq: SphereSeq, f: Frame, check_trivial: bool = True) -> LoopPolyline:
    """Closed polyline of the projected reflection orbit of ``a``."""
    check_frame(seq.lattice, f)
    if check_trivial and not is_homologically_trivial(seq):
        raise NotTrivialError("sequence not homologically trivial")
    points = orbit_points(seq, f)
    if points[-1] != BASEPOINT:
        raise NotTrivialError("sequence not homologically trivial")
    for k, P in enumerate(points):
        if P == ORIGIN:
            raise DegenerateLoopError(f"degenerate projection: vertex at origin (step {k})")
    vertices = _collapse(points)
    for k, (P, Q) in enumerate(zip(vertices, vertices[1:])):
        if _passes_through_origin(P, Q):
            raise DegenerateLoopError(f"degenerate projection: segment through origin (segment {k + 1})")
    return LoopPolyline(tuple(vertices))


def winding_number(loop: LoopPolyline) -> int:
    """Signed crossings of the ray ``{x > 0, y = 0}``, exact.

    Points with ``y == 0`` count as lying in the upper half plane.
    """
    w = 0
    for P, Q in loop.segments:
        up_p = P.y >= 0
        up_q = Q.y >= 0
        if up_p == up_q:
            continue
        x_cross = (P.x * Q.y - Q.x * P.y) / (Q.y - P.y)
        if x_cross == 0:
            raise DegenerateLoopError("degenerate projection: segment through origin")
        if x_cross > 0:
            w += 1 if up_q else -1
    return w


def winding_number_float(loop: LoopPolyline) -> float:
    """Total turning angle about the origin divided by 2 pi, in floating point.

    Independent of :func:`winding_number`; used as a cross-check.
    """
    total = 0.0
    for P, Q in loop.segments:
        px, py, qx, qy = float(P.x), float(P.y), float(Q.x), float(Q.y)
        total += math.atan2(px * qy - py * qx, px * qx + py * qy)
    return total / (2 * math.pi)


def spin_number(seq: SphereSeq, f: Frame) -> SpinResult:
    loop = loop_vertices(seq, f)
    return SpinResult(winding_number(loop), seq.lattice.b_plus)


def rotate_basepoint(seq: SphereSeq, f: Frame, k: int) -> tuple[SphereSeq, Frame]:
    """Move the basepoint ``k`` steps along the expanded configuration.

    Returns the cyclically rotated configuration ``S_{k+1}, ..., S_N,
    S_1, ..., S_k`` and the frame transported by ``R_{S_k} ... R_{S_1}``.
    """
    flat = seq.expanded()
    k %= max(len(flat.classes), 1)
    prefix = compose(SphereSeq(flat.lattice, flat.classes[:k]))
    rotated = SphereSeq(flat.lattice, flat.classes[k:] + flat.classes[:k])
    return rotated, Frame(prefix(f.a), prefix(f.b))


def scale_frame(f: Frame, la, mu) -> Frame:
    return Frame(vec_scale(Fraction(la), f.a), vec_scale(Fraction(mu), f.b))
