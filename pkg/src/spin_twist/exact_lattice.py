"""Exact integral lattices: Gram matrices, inner products and signatures.

Scalars are :class:`fractions.Fraction` (aliased as ``Rational``) and vectors
are plain tuples of them.  Nothing in this module touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple, Sequence

Rational = Fraction
RatVector = tuple  # tuple[Fraction | int, ...]


class LatticeError(ValueError):
    pass


class Signature(NamedTuple):
    b_plus: int
    b_minus: int
    b_zero: int


def rat_vector(entries) -> RatVector:
    """Coerce an iterable of ints / Fractions / ``"p/q"`` strings to a RatVector."""
    return tuple(Fraction(x) for x in entries)


def zero_vector(n: int) -> RatVector:
    return (Fraction(0),) * n


def unit_vector(n: int, i: int) -> RatVector:
    """The i-th standard basis vector (0-based index)."""
    return tuple(Fraction(1 if k == i else 0) for k in range(n))


def vec_add(v: Sequence, w: Sequence) -> RatVector:
    return tuple(x + y for x, y in zip(v, w))


def vec_scale(c, v: Sequence) -> RatVector:
    return tuple(c * x for x in v)


@dataclass(frozen=True)
class Lattice:
    """A free abelian group with a symmetric integer bilinear form.

    ``gram`` is stored as a tuple of integer tuples.  The signature is
    computed on first access and cached; recomputation is idempotent, so
    concurrent first access is harmless.
    """

    gram: tuple

    def __init__(self, gram):
        rows = tuple(tuple(int(x) for x in row) for row in gram)
        n = len(rows)
        if n == 0:
            raise LatticeError("lattice must have positive rank")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise LatticeError(f"gram row {i + 1} has length {len(row)}, expected {n}")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise LatticeError(
                        f"asymmetric matrix: entry ({i + 1},{j + 1}) = {rows[i][j]} "
                        f"but ({j + 1},{i + 1}) = {rows[j][i]}"
                    )
        object.__setattr__(self, "gram", rows)

    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def signature(self) -> Signature:
        return signature(self)

    @property
    def b_plus(self) -> int:
        return self.signature.b_plus

    def pair_row(self, i: int, v: Sequence):
        """``<e_i, v>``; cheaper than a full inner product."""
        row = self.gram[i]
        return sum(row[j] * v[j] for j in range(len(row)) if row[j])

    def dual(self, v: Sequence) -> tuple:
        """Return ``gram @ v``, the covector ``<., v>`` in coordinates."""
        return tuple(self.pair_row(i, v) for i in range(self.rank))


def _check_rank(L: Lattice, *vectors) -> None:
    for v in vectors:
        if len(v) != L.rank:
            raise LatticeError(f"rank mismatch: vector of length {len(v)} in rank {L.rank} lattice")


def inner_product(L: Lattice, v: Sequence, w: Sequence):
    """Return ``v^T G w`` exactly."""
    _check_rank(L, v, w)
    total = 0
    for i, vi in enumerate(v):
        if vi:
            total += vi * L.pair_row(i, w)
    return Fraction(total)


def signature(L: Lattice) -> Signature:
    """Signature by exact symmetric Gaussian (Lagrange) reduction over Q.

    At each step the pivot ``A[k][k]`` is made nonzero by congruence: first
    by swapping in a later row/column with nonzero diagonal, and failing
    that by adding a row/column ``j`` with ``A[k][j] != 0`` (all remaining
    diagonal entries are then zero, so the new pivot is ``2 A[k][j]``).
    A row that is entirely zero contributes to ``b_zero``.
    """
    n = L.rank
    A = [[Fraction(x) for x in row] for row in L.gram]
    pos = neg = zero = 0
    for k in range(n):
        if A[k][k] == 0:
            j = next((j for j in range(k + 1, n) if A[j][j] != 0), None)
            if j is not None:
                A[k], A[j] = A[j], A[k]
                for row in A:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, n) if A[k][j] != 0), None)
                if j is not None:
                    for c in range(n):
                        A[k][c] += A[j][c]
                    for r in range(n):
                        A[r][k] += A[r][j]
        pivot = A[k][k]
        if pivot == 0:
            zero += 1
            continue
        if pivot > 0:
            pos += 1
        else:
            neg += 1
        for r in range(k + 1, n):
            f = A[r][k] / pivot
            if f:
                for c in range(k, n):
                    A[r][c] -= f * A[k][c]
        for r in range(k + 1, n):
            A[k][r] = Fraction(0)
            A[r][k] = Fraction(0)
    return Signature(pos, neg, zero)


def determinant(matrix: Sequence[Sequence]) -> Fraction:
    """Exact determinant by fraction-valued Gaussian elimination."""
    A = [[Fraction(x) for x in row] for row in matrix]
    n = len(A)
    det = Fraction(1)
    for k in range(n):
        p = next((r for r in range(k, n) if A[r][k] != 0), None)
        if p is None:
            return Fraction(0)
        if p != k:
            A[k], A[p] = A[p], A[k]
            det = -det
        det *= A[k][k]
        for r in range(k + 1, n):
            f = A[r][k] / A[k][k]
            if f:
                for c in range(k, n):
                    A[r][c] -= f * A[k][c]
    return det
