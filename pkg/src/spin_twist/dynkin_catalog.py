"""Gabrielov diagrams of the 14 exceptional unimodal singularities.

Vertices are numbered 1..n in the docstrings below and 0..n-1 in code.
With ``n = p + q + r`` the diagram has three arms

    1 .. p-1,   p .. p+q-2,   p+q-1 .. n-3

(consecutive vertices joined by weight-1 edges), and three extra vertices
``n-2, n-1, n``.  Vertices ``n-2`` and ``n-1`` are both joined to the last
vertex of every arm, they are joined to each other with weight -2, and
``n-1`` is joined to ``n``.  Every vertex has self-intersection -2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact_lattice import Lattice, LatticeError, RatVector, inner_product


@dataclass(frozen=True)
class GabrielovDiagram:
    p: int
    q: int
    r: int

    @property
    def n(self) -> int:
        return self.p + self.q + self.r

    def __str__(self) -> str:
        return f"({self.p},{self.q},{self.r})"


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    diagram: GabrielovDiagram
    monodromy_order: int

    @property
    def milnor_number(self) -> int:
        return self.diagram.n


@dataclass(frozen=True)
class Frame:
    """An ordered orthogonal pair ``(a, b)`` spanning a positive 2-plane."""

    a: RatVector
    b: RatVector

    @property
    def lattice_rank(self) -> int:
        return len(self.a)

    def swapped(self) -> "Frame":
        return Frame(self.b, self.a)


class FrameError(ValueError):
    pass


def check_frame(L: Lattice, frame: Frame) -> Frame:
    """Raise :class:`FrameError` unless ``a.a > 0``, ``b.b > 0`` and ``a.b = 0``."""
    if len(frame.a) != L.rank or len(frame.b) != L.rank:
        raise FrameError("degenerate frame: rank mismatch")
    if inner_product(L, frame.a, frame.a) <= 0 or inner_product(L, frame.b, frame.b) <= 0:
        raise FrameError("degenerate frame: frame vector with non-positive square")
    if inner_product(L, frame.a, frame.b) != 0:
        raise FrameError("degenerate frame: frame vectors are not orthogonal")
    return frame


def _validate(d: GabrielovDiagram) -> None:
    if min(d.p, d.q, d.r) < 2:
        raise LatticeError(f"invalid Gabrielov triple {d}")


def build_gabrielov(d: GabrielovDiagram) -> Lattice:
    """Intersection matrix of the Gabrielov diagram with numbers ``(p, q, r)``."""
    _validate(d)
    p, q, r = d.p, d.q, d.r
    n = d.n
    M = [[0] * n for _ in range(n)]

    def link(i, j, w=1):  # 1-based vertices
        M[i - 1][j - 1] = M[j - 1][i - 1] = w

    for i in range(1, n + 1):
        M[i - 1][i - 1] = -2
    for i in range(1, n - 2):
        if i < p - 1 or p - 1 < i < p + q - 2 or p + q - 2 < i < p + q + r - 3:
            link(i, i + 1)
    for end in (p - 1, p + q - 2, p + q + r - 3):
        link(n - 2, end)
        link(n - 1, end)
    link(n - 2, n - 1, -2)
    link(n - 1, n)
    return Lattice(M)


def frame_vectors(d: GabrielovDiagram) -> Frame:
    """The positive frame ``(a, b)`` used for the unimodal loops.

    ``a = 2 e_{n-2} - 2 e_{n-1} - e_n`` and ``b`` puts weight ``i/p``,
    ``i/q``, ``i/r`` on the i-th vertex of each arm plus 1 on ``e_{n-2}``.
    """
    _validate(d)
    p, q, r = d.p, d.q, d.r
    n = d.n
    a = [Fraction(0)] * n
    a[n - 3], a[n - 2], a[n - 1] = Fraction(2), Fraction(-2), Fraction(-1)
    b = [Fraction(0)] * n
    for i in range(1, p):
        b[i - 1] += Fraction(i, p)
    for i in range(1, q):
        b[p - 2 + i] += Fraction(i, q)
    for i in range(1, r):
        b[p + q - 3 + i] += Fraction(i, r)
    b[n - 3] += 1
    return check_frame(build_gabrielov(d), Frame(tuple(a), tuple(b)))


_TABLE = (
    ("E12", 2, 3, 7, 42),
    ("E13", 2, 3, 8, 30),
    ("E14", 2, 3, 9, 24),
    ("Z11", 2, 4, 5, 30),
    ("Z12", 2, 4, 6, 22),
    ("Z13", 2, 4, 7, 18),
    ("Q10", 3, 3, 4, 24),
    ("Q11", 3, 3, 5, 18),
    ("Q12", 3, 3, 6, 15),
    ("W12", 2, 5, 5, 20),
    ("W13", 2, 5, 6, 16),
    ("S11", 3, 4, 4, 16),
    ("S12", 3, 4, 5, 13),
    ("U12", 4, 4, 4, 12),
)

CATALOG = tuple(CatalogEntry(name, GabrielovDiagram(p, q, r), h) for name, p, q, r, h in _TABLE)


def catalog() -> list[CatalogEntry]:
    """The exceptional unimodal singularities, in their standard table order."""
    return list(CATALOG)


def lookup(name: str, entries=CATALOG) -> CatalogEntry:
    for e in entries:
        if e.name.lower() == name.lower():
            return e
    raise KeyError(f"unknown catalog entry {name!r}")


def find_by_triple(d: GabrielovDiagram, entries=CATALOG) -> CatalogEntry | None:
    for e in entries:
        if e.diagram == d:
            return e
    return None


def find_by_lattice(L: Lattice, entries=CATALOG) -> CatalogEntry | None:
    """Catalog entry whose Gabrielov matrix is exactly ``L.gram``, if any."""
    for e in entries:
        if e.milnor_number == L.rank and build_gabrielov(e.diagram) == L:
            return e
    return None
