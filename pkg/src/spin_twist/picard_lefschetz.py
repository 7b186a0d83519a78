"""Picard-Lefschetz reflections and their products.

A Dehn twist on a (-2)-sphere ``S`` acts on cohomology by

    v  |->  v + <v, S> S,

the reflection in the hyperplane orthogonal to ``S``.

Ordering convention: :func:`compose` applies the reflection of the *first*
sphere in the list first, i.e. it returns ``R_{S_n} ... R_{S_1}`` (to the
power ``repeat``).  The loop construction in :mod:`spin_twist.spin_number`
walks the same order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact_lattice import Lattice, LatticeError, RatVector, _check_rank, inner_product

DEFAULT_ORDER_CAP = 10000


class SphereError(ValueError):
    pass


@dataclass(frozen=True)
class SphereClass:
    """Integer homology class of square -2 (in the basis of the ambient lattice)."""

    vec: tuple

    def __init__(self, L: Lattice, vec):
        coords = []
        for x in vec:
            x = Fraction(x)
            if x.denominator != 1:
                raise SphereError(f"sphere class must be integral, got entry {x}")
            coords.append(int(x))
        coords = tuple(coords)
        _check_rank(L, coords)
        sq = inner_product(L, coords, coords)
        if sq != -2:
            raise SphereError(f"sphere class has square {sq}, expected -2")
        object.__setattr__(self, "vec", coords)


@dataclass(frozen=True)
class SphereSeq:
    """Ordered (-2)-classes in a lattice, traversed ``repeat`` times."""

    lattice: Lattice
    classes: tuple
    repeat: int = 1

    def __post_init__(self):
        classes = tuple(
            c if isinstance(c, SphereClass) else SphereClass(self.lattice, c) for c in self.classes
        )
        n = self.lattice.rank
        for c in classes:
            if len(c.vec) != n:
                raise LatticeError(f"rank mismatch: sphere class of length {len(c.vec)} in rank {n} lattice")
        if self.repeat < 1:
            raise SphereError(f"repeat must be positive, got {self.repeat}")
        object.__setattr__(self, "classes", classes)

    @classmethod
    def basis(cls, L: Lattice, repeat: int = 1) -> "SphereSeq":
        n = L.rank
        return cls(L, tuple(tuple(int(i == k) for k in range(n)) for i in range(n)), repeat)

    def expanded(self) -> "SphereSeq":
        """Same configuration with ``repeat`` folded into the class list."""
        if self.repeat == 1:
            return self
        return SphereSeq(self.lattice, self.classes * self.repeat, 1)

    def walk(self):
        """Yield the classes in application order, ``repeat`` times over."""
        for _ in range(self.repeat):
            yield from self.classes

    def __len__(self) -> int:
        return len(self.classes) * self.repeat


def reflect(L: Lattice, s: SphereClass, v: Sequence) -> RatVector:
    """Apply the Picard-Lefschetz reflection in ``s`` to ``v``."""
    _check_rank(L, v, s.vec)
    c = inner_product(L, v, s.vec)
    if not c:
        return tuple(Fraction(x) for x in v)
    return tuple(Fraction(x) + c * y for x, y in zip(v, s.vec))


def _covector(L: Lattice, s: tuple, cache: dict) -> tuple:
    gs = cache.get(s)
    if gs is None:
        gs = cache[s] = L.dual(s)
    return gs


def _reflect_int(L: Lattice, s: tuple, v: list, cache: dict | None = None) -> list:
    """In-place fast path used by the loop walkers: ``v += <v,s> s``."""
    gs = L.dual(s) if cache is None else _covector(L, s, cache)
    c = 0
    for gi, vi in zip(gs, v):
        if gi and vi:
            c += gi * vi
    if c:
        for i, si in enumerate(s):
            if si:
                v[i] += c * si
    return v


def _normalize(x):
    # integral entries stay plain ints so integer products avoid Fraction overhead
    if isinstance(x, int):
        return x
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


class LatticeMap:
    """A linear map on ``Q^n`` given by its matrix (acting on column vectors)."""

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        object.__setattr__(self, "matrix", tuple(tuple(_normalize(x) for x in row) for row in matrix))

    def __setattr__(self, name, value):
        raise AttributeError("LatticeMap is immutable")

    @classmethod
    def identity(cls, n: int) -> "LatticeMap":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def size(self) -> int:
        return len(self.matrix)

    def __call__(self, v: Sequence) -> RatVector:
        if len(v) != self.size:
            raise LatticeError(f"rank mismatch: vector of length {len(v)} for {self.size}x{self.size} map")
        return tuple(sum(m * x for m, x in zip(row, v) if m) for row in self.matrix)

    def __matmul__(self, other: "LatticeMap") -> "LatticeMap":
        """Composition: ``(self @ other)(v) == self(other(v))``."""
        cols = list(zip(*other.matrix))
        return LatticeMap([[sum(a * b for a, b in zip(row, col) if a) for col in cols] for row in self.matrix])

    def __pow__(self, k: int) -> "LatticeMap":
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = LatticeMap.identity(self.size)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, LatticeMap) and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    def __repr__(self) -> str:
        return f"LatticeMap({[[str(x) for x in row] for row in self.matrix]})"

    def is_identity(self) -> bool:
        return all(x == (i == j) for i, row in enumerate(self.matrix) for j, x in enumerate(row))

    def is_isometry(self, L: Lattice) -> bool:
        """Check ``M^T G M == G``."""
        if self.size != L.rank:
            return False
        cols = list(zip(*self.matrix))
        gcols = [L.dual(c) for c in cols]
        return all(
            sum(x * y for x, y in zip(cols[i], gcols[j]) if x) == L.gram[i][j]
            for i in range(L.rank)
            for j in range(i, L.rank)
        )


def reflection_matrix(L: Lattice, s: SphereClass) -> LatticeMap:
    """Matrix ``I + s (G s)^T`` of the reflection in ``s``."""
    _check_rank(L, s.vec)
    gs = L.dual(s.vec)
    n = L.rank
    return LatticeMap([[int(i == j) + s.vec[i] * gs[j] for j in range(n)] for i in range(n)])


def compose(seq: SphereSeq) -> LatticeMap:
    """``(R_{S_n} ... R_{S_1})^repeat``, with ``R_{S_1}`` applied first."""
    L = seq.lattice
    n = L.rank
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    cache: dict = {}
    for s in seq.classes:
        # M <- M + s (G s)^T M
        gs = _covector(L, s.vec, cache)
        c = [0] * n
        for i, gi in enumerate(gs):
            if gi:
                row = M[i]
                for j in range(n):
                    c[j] += gi * row[j]
        for i, si in enumerate(s.vec):
            if si:
                row = M[i]
                for j in range(n):
                    row[j] += si * c[j]
    single = LatticeMap(M)
    if not single.is_isometry(L):
        raise AssertionError("reflection product failed to preserve the form")
    return single ** seq.repeat


def monodromy_order(m: LatticeMap, cap: int = DEFAULT_ORDER_CAP) -> int | None:
    """Least ``k >= 1`` with ``m**k == Id``, or ``None`` if no such ``k <= cap``."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    power = m
    for k in range(1, cap + 1):
        if power.is_identity():
            return k
        power = power @ m
    return None


def is_homologically_trivial(seq: SphereSeq) -> bool:
    return compose(seq).is_identity()


def coxeter_element(L: Lattice) -> LatticeMap:
    """Product of the reflections in the basis classes ``e_1, ..., e_n``."""
    return compose(SphereSeq.basis(L))
