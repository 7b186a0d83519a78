"""Arithmetic side of the isotopy obstructions.

Two checks are made executable here from user-supplied characteristic
numbers; nothing is computed from an actual manifold.

4-dimensional obstruction.  For a closed simply connected spin-c
4-manifold ``(X, s)`` with

* ``c_1(s)`` and ``sigma(X)`` both divisible by 32,
* ``d(s) = (c_1(s)^2 - 2 chi(X) - 3 sigma(X)) / 4 = 0``,
* ``SW(X, s)`` odd,
* every sphere pairing trivially with ``c_1(s)``,

a product of Dehn twists that is smoothly isotopic to the identity must
have even spin number.  So an odd spin number under these hypotheses shows
the product is *not* smoothly isotopic to the identity.

6-dimensional congruence.  For a Lefschetz fibration ``E -> Sigma`` with
suitable fiber, ``ind D+(E, s_E) == w_2(H+(f)).[Sigma] (mod 2)``, where the
index is ``(p_1(E).c_1 - c_1^3)[E] / 48``.  Over the sphere the right-hand
side is the spin number of the vanishing cycles mod 2.  For K3 fibres with
``c_1(s_E) = f^*(a)`` the index is ``a`` mod 2, so ``E`` is spin iff the
spin number is even.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction


class InconsistentCharacteristicNumbers(ValueError):
    pass


@dataclass(frozen=True)
class CharNumbers4:
    c1_sq: int
    chi: int
    sigma: int
    c1_divisibility: int
    sw_parity: int
    c1_pairs_trivially: bool = True

    def __post_init__(self):
        if self.sw_parity not in (0, 1):
            raise ValueError(f"sw_parity must be 0 or 1, got {self.sw_parity}")
        if (self.chi + self.sigma) % 4:
            warnings.warn(
                f"chi + sigma = {self.chi + self.sigma} is not divisible by 4; "
                "no almost complex structure has these numbers",
                stacklevel=2,
            )


@dataclass(frozen=True)
class CharNumbers6:
    p1_c1: int
    c1_cubed: int


class Verdict(str, Enum):
    HYPOTHESES_NOT_MET = "hypotheses-not-met"
    CONSISTENT = "consistent-with-isotopy"
    OBSTRUCTED = "OBSTRUCTED"


def d_invariant(c: CharNumbers4) -> tuple[Fraction, bool]:
    """Expected dimension of the moduli space and whether it is an integer."""
    d = Fraction(c.c1_sq - 2 * c.chi - 3 * c.sigma, 4)
    return d, d.denominator == 1


def dirac_index6(c: CharNumbers6) -> int:
    num = c.p1_c1 - c.c1_cubed
    if num % 48:
        raise InconsistentCharacteristicNumbers(
            f"inconsistent 6-manifold characteristic numbers: p1.c1 - c1^3 = {num} is not divisible by 48"
        )
    return num // 48


def hypothesis_checklist(c: CharNumbers4) -> dict[str, bool]:
    """Named hypotheses of the 4-dimensional obstruction, in display order."""
    d, _ = d_invariant(c)
    return {
        "c1 divisible by 32": c.c1_divisibility % 32 == 0,
        "sigma divisible by 32": c.sigma % 32 == 0,
        "d = 0": d == 0,
        "SW parity odd": c.sw_parity == 1,
        "spheres pair trivially with c1": bool(c.c1_pairs_trivially),
    }


def check_theorem_1_4(c: CharNumbers4, delta_mod2: int) -> Verdict:
    """Verdict of the 4-dimensional obstruction.

    ``OBSTRUCTED`` means the composite Dehn twist cannot be smoothly isotopic
    to the identity.  With the hypotheses met but ``delta_mod2 == 0`` there
    is no obstruction.
    """
    if not all(hypothesis_checklist(c).values()):
        return Verdict.HYPOTHESES_NOT_MET
    return Verdict.OBSTRUCTED if delta_mod2 % 2 else Verdict.CONSISTENT


def check_theorem_1_6(ind: int, w2_dot_sigma: int) -> bool:
    """Does ``ind == w2_dot_sigma (mod 2)`` hold?

    K3 fibrations over the sphere: ``ind`` may be replaced by ``a`` from
    ``c_1(s_E) = f^*(a)`` and ``w2_dot_sigma`` by the spin number mod 2.
    """
    return (ind - w2_dot_sigma) % 2 == 0
