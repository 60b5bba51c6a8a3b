"""Sections of aC_e + bf on F_e and the usual condition counts.

Chart convention used for interpolation: we work in the affine chart of F_e
with C_e and one fibre removed.  ``u`` is the fibre coordinate and ``v`` the
base coordinate, and the basis element ``(k, j)`` of level ``k`` evaluates as
``u**k * v**j`` with ``0 <= j <= b - k*e``.  A section vanishes on C_e exactly
when all of its level-``a`` coefficients vanish.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InvariantError
from .lattice import DivClass, SurfaceModel, k_degree, self_intersection


def h0_fe(a: int, b: int, e: int) -> int:
    """dim H^0(F_e, aC_e + bf)."""
    if a < 0:
        return 0
    return sum(max(0, b - k * e + 1) for k in range(a + 1))


def rr_lower_bound(D: DivClass, S: SurfaceModel) -> int:
    """(D^2 - K.D)/2.

    For classes with h^2 = 0 (every effective use here: b >= 0 on a rational
    surface) this is chi - 1, hence h^0 >= this + 1.
    """
    twice = self_intersection(D, S) - k_degree(D, S)
    if twice % 2:
        raise InvariantError(f"D^2 - K.D is odd for {D}")
    return twice // 2


def conditions_count(mults: Sequence[int]) -> int:
    total = 0
    for m in mults:
        if m < 0:
            raise ValueError(f"negative multiplicity {m}")
        total += m * (m + 1) // 2
    return total


@dataclass(frozen=True)
class SectionBasis:
    e: int
    a: int
    b: int
    elements: tuple  # of (k, j)

    def __len__(self) -> int:
        return len(self.elements)

    def evaluate(self, u, v) -> list:
        return [u ** k * v ** j for k, j in self.elements]

    def level_indices(self, k: int) -> list[int]:
        return [i for i, (kk, _) in enumerate(self.elements) if kk == k]


def section_basis(a: int, b: int, e: int) -> SectionBasis:
    if a < 0:
        raise ValueError("section_basis needs a >= 0")
    elems = tuple((k, j) for k in range(a + 1) for j in range(b - k * e + 1))
    return SectionBasis(e, a, b, elems)
