"""Braid group action on ordered sphere configurations (mutations).

``alpha_j`` replaces the adjacent pair ``(S_j, S_{j+1})`` by
``(R_{S_j} S_{j+1}, S_j)`` and ``beta_j`` by ``(S_{j+1}, R_{S_{j+1}} S_j)``;
at the level of homology classes the inverse twist acts by the same
reflection, so ``beta_j`` inverts ``alpha_j``.  Indices ``j`` are 1-based
throughout this module, as in braid-word strings like ``"a3 b1 a2"``.

Only homology classes are modelled; mutations act on the expanded word
(``repeat`` folded in).
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass

from .picard_lefschetz import SphereClass, SphereSeq, reflect


class BraidWordError(ValueError):
    pass


@dataclass(frozen=True)
class BraidWord:
    """Letters ``(j, sign)``: sign +1 is ``alpha_j``, -1 is ``beta_j``."""

    letters: tuple = ()

    def __str__(self) -> str:
        return " ".join(("a" if s > 0 else "b") + str(j) for j, s in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __add__(self, other: "BraidWord") -> "BraidWord":
        return BraidWord(self.letters + other.letters)


_LETTER = re.compile(r"([ab])(\d+)\Z")


def parse_braid_word(text: str) -> BraidWord:
    letters = []
    for token in text.split():
        m = _LETTER.match(token)
        if not m:
            raise BraidWordError(f"bad braid letter {token!r} (expected aJ or bJ)")
        j = int(m.group(2))
        if j < 1:
            raise BraidWordError(f"braid index must be >= 1, got {token!r}")
        letters.append((j, 1 if m.group(1) == "a" else -1))
    return BraidWord(tuple(letters))


def _check_index(seq: SphereSeq, j: int) -> None:
    if seq.repeat != 1:
        raise BraidWordError("mutations act on expanded configurations (repeat must be 1)")
    n = len(seq.classes)
    if not 1 <= j < n:
        raise BraidWordError(f"braid index {j} out of range for {n} spheres (need 1 <= j < {n})")


def _replace(seq: SphereSeq, j: int, first, second) -> SphereSeq:
    L = seq.lattice
    classes = list(seq.classes)
    classes[j - 1] = first if isinstance(first, SphereClass) else SphereClass(L, first)
    classes[j] = second if isinstance(second, SphereClass) else SphereClass(L, second)
    return SphereSeq(L, tuple(classes), 1)


def mutate_alpha(seq: SphereSeq, j: int) -> SphereSeq:
    _check_index(seq, j)
    s, t = seq.classes[j - 1], seq.classes[j]
    return _replace(seq, j, reflect(seq.lattice, s, t.vec), s)


def mutate_beta(seq: SphereSeq, j: int) -> SphereSeq:
    _check_index(seq, j)
    s, t = seq.classes[j - 1], seq.classes[j]
    return _replace(seq, j, t, reflect(seq.lattice, t, s.vec))


def apply_braid_word(seq: SphereSeq, w: BraidWord) -> SphereSeq:
    """Apply the letters of ``w`` left to right."""
    for j, sign in w.letters:
        seq = mutate_alpha(seq, j) if sign > 0 else mutate_beta(seq, j)
    return seq


def random_braid_word(rng: random.Random, n_strands: int, max_length: int) -> BraidWord:
    """Uniform length in ``[0, max_length]``, uniform letters on ``n_strands``."""
    if n_strands < 2:
        return BraidWord()
    length = rng.randint(0, max_length)
    return BraidWord(tuple((rng.randint(1, n_strands - 1), rng.choice((1, -1))) for _ in range(length)))
