"""Lattice solutions of the (-1)/(-2) systems and the filters applied to them.

A class D is a (-1)-class when D^2 = K.D = -1 and a (-2)-class when D^2 = -2,
K.D = 0.  Enumeration is exact inside a coefficient box; when K^2 > 0 the box
is derived so that it provably contains every solution (Hodge index: the
K-orthogonal part of D lives in a negative definite lattice, so its norm is
fixed by D^2 and K.D, and Cauchy-Schwarz bounds each coordinate).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from . import _kernels
from .cohomology import conditions_count, h0_fe
from .errors import BoundsError, UnsupportedRangeError
from .lattice import (DivClass, PointConfig, SurfaceModel, canonical_class, intersect,
                      k_degree, self_intersection)


class Kind(Enum):
    MINUS_ONE = -1
    MINUS_TWO = -2

    @property
    def order(self) -> int:
        return 0 if self is Kind.MINUS_ONE else 1

    @property
    def k_degree(self) -> int:
        return -1 if self is Kind.MINUS_ONE else 0


@dataclass(frozen=True)
class EnumBounds:
    a_max: int
    b_max: int
    m_max: int
    derivation: str = "manual"  # "auto" | "manual"

    def __post_init__(self):
        if min(self.a_max, self.b_max, self.m_max) < 0:
            raise ValueError("enumeration bounds must be non-negative")
        if self.derivation not in ("auto", "manual"):
            raise ValueError(f"unknown derivation {self.derivation!r}")

    @property
    def certified(self) -> bool:
        return self.derivation == "auto"

    def to_json(self) -> dict:
        return {"a_max": self.a_max, "b_max": self.b_max, "m_max": self.m_max,
                "derivation": self.derivation}

    @classmethod
    def parse(cls, text: str) -> "EnumBounds":
        """``auto`` or ``a_max,b_max,m_max``."""
        text = text.strip()
        if text == "auto":
            return AUTO
        a, b, m = (int(v) for v in text.split(","))
        return cls(a, b, m, "manual")


# sentinel: ask enumerate_neg_classes to derive the box itself
AUTO = EnumBounds(0, 0, 0, "auto")


@dataclass(frozen=True)
class NegCurveClass:
    cls: DivClass
    kind: Kind
    passes_irreducibility: bool
    passes_very_general: bool
    passes_xu: bool

    def sort_key(self):
        return (self.kind.order, self.cls.a, self.cls.b, self.cls.mults)

    def to_json(self) -> dict:
        return {"class": self.cls.to_json(), "text": self.cls.pretty(), "kind": self.kind.value,
                "passes_irreducibility": self.passes_irreducibility,
                "passes_very_general": self.passes_very_general,
                "passes_xu": self.passes_xu}


def _coordinate_range(S: SurfaceModel, K2: int, d2: int, kd: int, v: DivClass) -> tuple[int, int]:
    """Integer range of D.v over all D with D^2 = d2, K.D = kd."""
    K = canonical_class(S)
    kv = intersect(K, v, S)
    vv = intersect(v, v, S)
    centre = Fraction(kd * kv, K2)
    norm = Fraction(kd * kd, K2) - d2            # -(D_perp)^2 >= 0
    vnorm = Fraction(kv * kv, K2) - vv           # -(v_perp)^2 >= 0
    if norm < 0:
        return (1, 0)
    prod = norm * vnorm
    radius = math.isqrt(math.ceil(prod)) + 1     # over-estimate keeps the box complete
    return (math.floor(centre - radius), math.ceil(centre + radius))


def auto_bounds(S: SurfaceModel) -> EnumBounds:
    K2 = self_intersection(canonical_class(S), S)
    if K2 <= 0:
        raise BoundsError(
            f"K^2 = {K2} <= 0 on F_({S.e},{S.r}){' with x' if S.with_x else ''}: the (-1)/(-2) "
            "solution set is not finite; pass manual bounds (a_max,b_max,m_max)"
        )
    a_max = b_max = m_max = 0
    probes_a = S.F                                   # D.F = a
    probes_b = S.H + S.e * S.F                       # D.(H + eF) = b
    probes_m = [S.E(i) for i in range(1, S.r + 1)] + ([S.Ex] if S.with_x else [])
    for kind in Kind:
        d2, kd = kind.value, kind.k_degree
        lo, hi = _coordinate_range(S, K2, d2, kd, probes_a)
        a_max = max(a_max, abs(lo), abs(hi))
        lo, hi = _coordinate_range(S, K2, d2, kd, probes_b)
        b_max = max(b_max, abs(lo), abs(hi))
        for E in probes_m:
            # D.E_i = m_i
            lo, hi = _coordinate_range(S, K2, d2, kd, E)
            m_max = max(m_max, abs(lo), abs(hi))
    return EnumBounds(a_max, b_max, m_max, "auto")


def resolve_bounds(S: SurfaceModel, bounds: EnumBounds) -> EnumBounds:
    return auto_bounds(S) if bounds.derivation == "auto" else bounds


# -- filters ----------------------------------------------------------------

def _exceptional_pattern(c: DivClass) -> bool:
    """a = b = 0 with one -1 entry and at most one +1 entry (E_i, E_i - E_j, E_i - E_x, ...)."""
    if c.a or c.b:
        return False
    ms = c.mults
    neg = [v for v in ms if v < 0]
    pos = [v for v in ms if v > 0]
    return neg == [-1] and pos in ([], [1])


def structural_filter(c: NegCurveClass | DivClass, S: SurfaceModel) -> bool:
    """Necessary conditions for the class to be a reduced irreducible curve."""
    d = c.cls if isinstance(c, NegCurveClass) else c
    a, b, ms = d.a, d.b, d.mults
    if a < 0:
        return False
    if a == 0 and b not in (0, 1):
        return False
    if a >= 1 and not (b == 0 or b >= a * S.e):
        return False
    if a >= 1 and b >= a * S.e and any(v > a for v in ms):
        return False
    if any(v < 0 for v in ms):
        return _exceptional_pattern(d)
    if a == 0 and b == 0:
        # zero class or positive multiplicities on nothing
        return False
    return True


def xu_filter(c: NegCurveClass | DivClass, S: SurfaceModel) -> bool:
    """Multi-point Ein-Lazarsfeld/Xu bound for a curve through very general points.

    The bound is stated for the image curve on F_e: with C the image,
    C^2 >= sum(m_i^2) - min{m_j > 0}.  Classes without positive multiplicities
    (and the exceptional patterns, which are not images of curves) pass.
    """
    d = c.cls if isinstance(c, NegCurveClass) else c
    ms = d.mults
    pos = [v for v in ms if v > 0]
    if not pos or any(v < 0 for v in ms):
        return True
    image_sq = 2 * d.a * d.b - S.e * d.a * d.a
    return image_sq >= sum(v * v for v in ms) - min(pos)


def _configured_table(d: DivClass, S: SurfaceModel):
    """Effectivity of low-degree classes decided by the point positions, or None."""
    cfg = S.config
    if cfg.very_general:
        return None
    through = [i for i, v in enumerate(d.m) if v]
    if any(v not in (0, 1) for v in d.mults):
        return None
    if d.a == 0 and d.b == 1 and len(through) >= 2:
        if d.mx:
            return False
        return len({cfg.fibers[i] for i in through}) == 1
    if d.a == 1 and d.b == 0 and through:
        if d.mx:
            return False
        return all(cfg.on_ce[i] for i in through)
    return None


def effectivity_heuristic(c: NegCurveClass | DivClass, S: SurfaceModel) -> bool:
    """Does the class carry an effective divisor through the (very general) points?

    Counts conditions: h^0(aC_e + bf) > sum C(m_i + 1, 2) guarantees a member
    with the imposed multiplicities.  Exceptional patterns are decided by table:
    E_i and E_x are curves; differences like E_i - E_x are not effective since
    no point is infinitely near another.
    """
    d = c.cls if isinstance(c, NegCurveClass) else c
    ms = d.mults
    if d.a == 0 and d.b == 0:
        return sorted(ms)[:1] == [-1] and all(v == 0 for v in sorted(ms)[1:])
    if any(v < 0 for v in ms):
        return False
    table = _configured_table(d, S)
    if table is not None:
        return table
    return h0_fe(d.a, d.b, S.e) > conditions_count(ms)


def classify_kind(d: DivClass, S: SurfaceModel):
    sq = self_intersection(d, S)
    kd = k_degree(d, S)
    if sq == -1 and kd == -1:
        return Kind.MINUS_ONE
    if sq == -2 and kd == 0:
        return Kind.MINUS_TWO
    return None


def make_neg_class(d: DivClass, S: SurfaceModel, kind=None) -> NegCurveClass:
    kind = kind or classify_kind(d, S)
    if kind is None:
        raise ValueError(f"{d} solves neither the (-1) nor the (-2) system")
    return NegCurveClass(d, kind, structural_filter(d, S), effectivity_heuristic(d, S),
                         xu_filter(d, S))


# -- enumeration ------------------------------------------------------------

def _solutions_for(e: int, k: int, with_x: bool, r: int, kind: Kind, a: int, b: int, m_max: int):
    d2, kd = kind.value, kind.k_degree
    sumsq = -e * a * a + 2 * a * b - d2
    total = kd - (e - 2) * a + 2 * b
    if sumsq < 0:
        return []
    out = []
    for vec in _kernels.signed_vectors(k, total, sumsq, m_max):
        if with_x:
            out.append(DivClass(a, b, vec[:r], vec[r]))
        else:
            out.append(DivClass(a, b, vec, None))
    return out


@lru_cache(maxsize=64)
def _enumerate_raw(e: int, r: int, with_x: bool, a_max: int, b_max: int, m_max: int):
    k = r + int(with_x)
    found = []
    for kind in Kind:
        for a in range(-a_max, a_max + 1):
            for b in range(-b_max, b_max + 1):
                for d in _solutions_for(e, k, with_x, r, kind, a, b, m_max):
                    found.append((kind, d))
    return tuple(found)


def enumerate_neg_classes(S: SurfaceModel, bounds: EnumBounds = AUTO) -> list[NegCurveClass]:
    """Every (-1)/(-2) solution inside the bounds, sorted by (kind, a, b, multiplicities)."""
    bx = resolve_bounds(S, bounds)
    raw = _enumerate_raw(S.e, S.r, S.with_x, bx.a_max, bx.b_max, bx.m_max)
    out = [make_neg_class(d, S, kind) for kind, d in raw]
    out.sort(key=NegCurveClass.sort_key)
    return out


# -- the F~_{3,6} example -----------------------------------------------------

# (a, b, multiplicities of E_1..E_6 sorted descending, m_x) -> family number
_FAMILY_SIGNATURES = {
    (0, 0, (0, 0, 0, 0, 0, -1), 1): 1,     # E_i - E_x
    (0, 1, (0, 0, 0, 0, 0, 0), 1): 2,      # F - E_x
    (0, 1, (1, 0, 0, 0, 0, 0), 1): 3,      # F - E_i - E_x
    (1, 3, (1, 1, 1, 0, 0, 0), 1): 4,      # H + 3F - E_i - E_j - E_k - E_x
    (1, 3, (1, 1, 1, 1, 0, 0), 1): 5,      # H + 3F - E + E_i + E_j - E_x
    (1, 4, (1, 1, 1, 1, 1, 0), 1): 6,      # H + 4F - E + E_i - E_x
    (1, 4, (1, 1, 1, 1, 1, 1), 1): 7,      # H + 4F - E - E_x
    (2, 6, (2, 2, 1, 1, 1, 1), 1): 8,      # 2H + 6F - E - E_i - E_j - E_x
    (2, 6, (2, 1, 1, 1, 1, 1), 2): 9,      # 2H + 6F - E - E_i - 2E_x
    (3, 9, (2, 2, 2, 2, 2, 2), 2): 10,     # 3H + 9F - 2E - 2E_x
}

FAMILY_LABELS = {
    1: "E_i - E_x",
    2: "F - E_x",
    3: "F - E_i - E_x",
    4: "H + 3F - E_i - E_j - E_k - E_x",
    5: "H + 3F - E + E_i + E_j - E_x",
    6: "H + 4F - E + E_i - E_x",
    7: "H + 4F - E - E_x",
    8: "2H + 6F - E - E_i - E_j - E_x",
    9: "2H + 6F - E - E_i - 2E_x",
    10: "3H + 9F - 2E - 2E_x",
}

EXAMPLE_SURFACE = SurfaceModel(3, 6, PointConfig(), True)


def family_of(d: DivClass):
    sig = (d.a, d.b, tuple(sorted(d.m, reverse=True)), d.mx)
    return _FAMILY_SIGNATURES.get(sig)


def candidate_filter(c: NegCurveClass, e: int) -> bool:
    """a >= 0, b >= e*a and m_x >= 1: the classes that can pass through x."""
    d = c.cls
    return d.a >= 0 and d.b >= e * d.a and d.mx is not None and d.mx >= 1


def seventy_seven_list(S: SurfaceModel = EXAMPLE_SURFACE,
                       bounds: EnumBounds = AUTO) -> dict[int, list[NegCurveClass]]:
    """The through-x candidates on F~_{3,6}, grouped by family (1..10)."""
    if (S.e, S.r, S.with_x) != (3, 6, True):
        raise UnsupportedRangeError("the family table is specific to F_3 blown up at 6 points and x")
    cands = [c for c in enumerate_neg_classes(S, bounds) if candidate_filter(c, S.e)]
    groups: dict[int, list[NegCurveClass]] = {k: [] for k in FAMILY_LABELS}
    stray = []
    for c in cands:
        fam = family_of(c.cls)
        if fam is None:
            stray.append(c)
        else:
            groups[fam].append(c)
    if stray or len(cands) != 77:
        raise BoundsError(f"expected 77 candidates in ten families, got {len(cands)} "
                          f"({len(stray)} outside the families); enlarge the bounds")
    return groups
