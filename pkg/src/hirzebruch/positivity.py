"""Nefness and ampleness against a finite list of cone generators.

On an anticanonical rational surface of Picard rank >= 3 the closed cone of
curves is spanned by -K and the negative curves, and every negative curve is a
(-1)-curve, a (-2)-curve or a fixed component of |-K|.  Nef/ample tests
therefore reduce to finitely many pairings once those curves are listed.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .errors import StructuralError, UnsupportedRangeError
from .lattice import DivClass, SurfaceModel, canonical_class, check_member, intersect, self_intersection
from .negcurves import AUTO, EnumBounds, NegCurveClass, enumerate_neg_classes, resolve_bounds


@dataclass(frozen=True)
class FixedComponent:
    cls: DivClass
    label: str
    definite: bool


@dataclass(frozen=True)
class ConeGenerators:
    negatives: tuple          # of NegCurveClass
    fixed_components: tuple   # of FixedComponent
    anticanonical: DivClass
    bounds: EnumBounds

    def curves(self):
        """(label, class) for every generator, negatives first."""
        for c in self.negatives:
            yield c.cls.pretty(), c.cls
        for f in self.fixed_components:
            yield f.label, f.cls
        yield "-K", self.anticanonical


def anticanonical_range(S: SurfaceModel) -> bool:
    return S.n_points <= S.e + 5


def _require_anticanonical(S: SurfaceModel):
    if not anticanonical_range(S):
        raise UnsupportedRangeError(
            f"{S.n_points} blown-up points > e + 5 = {S.e + 5}: the surface is not known to be "
            "anticanonical, so finitely many generators do not describe the cone")


def strict_transform_ce(S: SurfaceModel) -> DivClass:
    m = [0] * S.r
    if not S.config.very_general:
        m = [1 if on else 0 for on in S.config.on_ce]
    return S.cls(1, 0, m)


def fiber_strict_transforms(S: SurfaceModel) -> list[tuple[tuple[int, ...], DivClass]]:
    """One (point indices, class) entry per fibre that carries blown-up points."""
    groups = S.config.fiber_groups() if not S.config.very_general else [(i,) for i in range(S.r)]
    out = []
    for g in groups:
        m = [0] * S.r
        for i in g:
            m[i] = 1
        out.append((g, S.cls(0, 1, m)))
    return out


def fixed_components(S: SurfaceModel) -> list[FixedComponent]:
    """Curves that can be fixed components of |-K|; ``definite`` marks the certain ones.

    C~_e is certain when -K.C~_e < 0 (e >= 3 for points off C_e); a fibre with k
    points is certain when -K.f~ = 2 - k < 0, or when C~_e is certain and
    (-K - C~_e).f~ = 1 - k < 0.
    """
    if S.r > S.e + 1:
        warnings.warn(f"r = {S.r} > e + 1: fixed-component list is only a candidate superset",
                      stacklevel=2)
    minus_k = -canonical_class(S)
    ce = strict_transform_ce(S)
    ce_definite = intersect(minus_k, ce, S) < 0
    out = [FixedComponent(ce, "C~e", ce_definite)]
    for g, f in fiber_strict_transforms(S):
        definite = intersect(minus_k, f, S) < 0
        if ce_definite and intersect(minus_k - ce, f, S) < 0:
            definite = True
        out.append(FixedComponent(f, "f~" + "".join(str(i + 1) for i in g), definite))
    for i in range(1, S.r + 1):
        out.append(FixedComponent(S.E(i), f"E{i}", False))
    if S.with_x:
        out.append(FixedComponent(S.Ex, "Ex", False))
    return out


def cone_generators(S: SurfaceModel, bounds: EnumBounds = AUTO) -> ConeGenerators:
    return _cone_generators(S, resolve_bounds(S, bounds))


@lru_cache(maxsize=256)
def _cone_generators(S: SurfaceModel, bounds: EnumBounds) -> ConeGenerators:
    negs = tuple(c for c in enumerate_neg_classes(S, bounds)
                 if c.passes_irreducibility and c.passes_very_general)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        fixed = tuple(fixed_components(S))
    return ConeGenerators(negs, fixed, -canonical_class(S), bounds)


@dataclass(frozen=True)
class PositivityVerdict:
    holds: bool
    self_intersection: int
    min_pairing: int
    witness: str
    witness_class: DivClass

    def to_json(self) -> dict:
        return {"verdict": self.holds, "self_intersection": self.self_intersection,
                "min_pairing": self.min_pairing, "witness": self.witness,
                "witness_class": self.witness_class.to_json()}


def _min_pairing(D: DivClass, S: SurfaceModel, G: ConeGenerators):
    best = None
    for label, c in G.curves():
        val = intersect(D, c, S)
        if best is None or val < best[0]:
            best = (val, label, c)
    return best


def nef_verdict(D: DivClass, S: SurfaceModel, G: Optional[ConeGenerators] = None) -> PositivityVerdict:
    _require_anticanonical(S)
    check_member(D, S)
    G = G or cone_generators(S)
    val, label, c = _min_pairing(D, S, G)
    return PositivityVerdict(val >= 0, self_intersection(D, S), val, label, c)


def ample_verdict(L: DivClass, S: SurfaceModel, G: Optional[ConeGenerators] = None) -> PositivityVerdict:
    _require_anticanonical(S)
    check_member(L, S)
    G = G or cone_generators(S)
    val, label, c = _min_pairing(L, S, G)
    sq = self_intersection(L, S)
    return PositivityVerdict(sq > 0 and val > 0, sq, val, label, c)


def is_nef(D: DivClass, S: SurfaceModel, G: Optional[ConeGenerators] = None) -> bool:
    return nef_verdict(D, S, G).holds


def nakai_check(L: DivClass, S: SurfaceModel, G: Optional[ConeGenerators] = None) -> bool:
    """Nakai-Moishezon against the generator list: L^2 > 0 and L.C > 0 for every C."""
    return ample_verdict(L, S, G).holds


def is_ample_closed_form(L: DivClass, S: SurfaceModel) -> bool:
    """a > m_i > 0, b > ae and b > sum(m_i); valid for e > 0, r <= e+1, points off C_e on distinct fibres."""
    if S.with_x:
        raise StructuralError("closed-form ampleness is stated on F_{e,r} without x")
    if S.e <= 0 or S.r > S.e + 1 or not S.config.is_generic():
        raise UnsupportedRangeError(
            "closed form needs e > 0, r <= e + 1 and points off C_e on distinct fibres; "
            "use nakai_check instead")
    check_member(L, S)
    a, b, m = L.a, L.b, L.m
    # a > 0 is implied by a > m_i > 0 once r >= 1; with no points it must be asked for
    return a > 0 and all(a > mi > 0 for mi in m) and b > a * S.e and b > sum(m)
