"""Seshadri constants on F_e and its blow-ups.

Closed forms cover F_e itself, r <= e-1 (any point, six positional cases) and
r in {e, e+1} (very general point).  Everything else goes through the
enumerative engine: blow up x as well, list the (-1)/(-2) classes through x,
keep those that can be effective, and minimise (L.C)/mult_x(C).

All values are exact ``Fraction``s.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .cohomology import conditions_count, h0_fe
from .errors import BoundsError, UnsupportedRangeError
from .lattice import DivClass, SurfaceModel, canonical_class, check_member, intersect, self_intersection
from .negcurves import (AUTO, EnumBounds, effectivity_heuristic, enumerate_neg_classes,
                        resolve_bounds, structural_filter)
from .positivity import (ConeGenerators, anticanonical_range, cone_generators, is_ample_closed_form,
                         nakai_check)

ExactRational = Fraction

_POSITIONS = ("generic", "on_fiber", "on_ce", "on_ce_and_fiber", "on_fiber_and_exc", "on_exc")


@dataclass(frozen=True)
class XPosition:
    """Where x sits relative to C~_e, the fibres f~_i and the exceptional curves E_i."""

    kind: str = "generic"
    index: Optional[int] = None  # 1-based point index for the fibre/exceptional cases

    def __post_init__(self):
        if self.kind not in _POSITIONS:
            raise ValueError(f"unknown x position {self.kind!r}")
        needs = self.kind not in ("generic", "on_ce")
        if needs and (self.index is None or self.index < 1):
            raise ValueError(f"x position {self.kind} needs a point index >= 1")
        if not needs and self.index is not None:
            raise ValueError(f"x position {self.kind} takes no index")

    @property
    def on_ce(self) -> bool:
        return self.kind in ("on_ce", "on_ce_and_fiber")

    @property
    def fiber(self) -> Optional[int]:
        return self.index if self.kind in ("on_fiber", "on_ce_and_fiber", "on_fiber_and_exc") else None

    @property
    def exc(self) -> Optional[int]:
        return self.index if self.kind in ("on_fiber_and_exc", "on_exc") else None

    @classmethod
    def parse(cls, text: str) -> "XPosition":
        """``generic``, ``ce``, ``fiber:i``, ``ce+fiber:i``, ``fiber+exc:i``, ``exc:i``."""
        name, _, idx = text.strip().partition(":")
        kind = {"generic": "generic", "ce": "on_ce", "fiber": "on_fiber",
                "ce+fiber": "on_ce_and_fiber", "fiber+exc": "on_fiber_and_exc",
                "exc": "on_exc"}.get(name, name)
        return cls(kind, int(idx) if idx else None)

    def __str__(self) -> str:
        return self.kind if self.index is None else f"{self.kind}({self.index})"


GENERIC = XPosition()


@dataclass(frozen=True)
class SeshadriResult:
    value: Fraction
    witness: DivClass
    witness_mult: int
    method: str
    certified: bool = True
    bounds: Optional[EnumBounds] = None
    n_candidates: int = field(default=0, compare=False)

    def to_json(self) -> dict:
        v = self.value
        return {
            "value": str(v),
            "approx": f"≈{float(v):.6g}",
            "witness": self.witness.to_csv(),
            "witness_text": self.witness.pretty(),
            "mult_x": self.witness_mult,
            "method": self.method,
            "certified": self.certified,
            "bounds": None if self.bounds is None else self.bounds.to_json(),
        }


def _pick(cands, S: SurfaceModel, L: DivClass):
    """Minimise (L.D)/n with the deterministic tie-break (value, witness, n)."""
    best = None
    for D, n in cands:
        key = (Fraction(intersect(L, D, S), n), D.key(), n)
        if best is None or key < best:
            best = key
    return best


# -- closed forms -------------------------------------------------------------

def seshadri_fe(a: int, b: int, e: int, on_ce: bool = False) -> SeshadriResult:
    """L = aC_e + bf on F_e; for e = 0 the position of x is irrelevant."""
    ample = a > 0 and (b > 0 if e == 0 else b > a * e)
    if not ample:
        raise ValueError(f"{a}C_{e} + {b}f is not ample on F_{e}")
    S = SurfaceModel(e, 0)
    L = S.cls(a, b)
    cands = [(S.F, 1)]
    if e == 0 or on_ce:
        cands.append((S.H, 1))
    val, _, _ = best = _pick(cands, S, L)
    wit = DivClass(best[1][0], best[1][1], ())
    return SeshadriResult(val, wit, 1, "closed_form_fe")


def _require_generic_points(S: SurfaceModel):
    if not S.config.is_generic():
        raise UnsupportedRangeError("closed forms need points off C_e on pairwise distinct fibres")


def seshadri_small_r(L: DivClass, S: SurfaceModel, x: XPosition = GENERIC) -> SeshadriResult:
    """r <= e - 1: exact value at any point, by the position of x."""
    if S.with_x or S.e <= 0 or S.r > S.e - 1:
        raise UnsupportedRangeError("closed form for small r needs e > 0, r <= e - 1 (no extra x)")
    _require_generic_points(S)
    if not is_ample_closed_form(L, S):
        raise ValueError(f"{L} is not ample")
    if x.index is not None and x.index > S.r:
        raise ValueError(f"x position refers to point {x.index} but r = {S.r}")
    i = x.index
    cands = []
    if x.kind in ("generic", "on_ce"):
        cands.append((S.F, 1))
    if x.fiber:
        cands.append((S.cls(0, 1, _unit(S.r, i)), 1))
    if x.on_ce:
        cands.append((S.H, 1))
    if x.exc:
        cands.append((S.E(i), 1))
    val, key, n = _pick(cands, S, L)
    return SeshadriResult(val, _from_key(key, S), n, "closed_form_small_r")


def _unit(r: int, i: int) -> tuple:
    m = [0] * r
    m[i - 1] = 1
    return tuple(m)


def _from_key(key: tuple, S: SurfaceModel) -> DivClass:
    return DivClass(key[0], key[1], tuple(key[2:2 + S.r]), key[2 + S.r] if S.with_x else None)


def largest_e_subset(m: tuple, e: int) -> tuple:
    """0/1 vector choosing e indices of largest multiplicity (lexicographically smallest choice)."""
    order = sorted(range(len(m)), key=lambda i: (-m[i], -i))
    chosen = set(order[:e])
    return tuple(1 if i in chosen else 0 for i in range(len(m)))


def seshadri_r_e(L: DivClass, S: SurfaceModel) -> SeshadriResult:
    """r in {e, e+1}, very general points and x: min(a, b - sum of the e largest m_i)."""
    if S.with_x or S.e <= 0 or S.r not in (S.e, S.e + 1):
        raise UnsupportedRangeError("closed form needs e > 0 and r in {e, e+1} (no extra x)")
    if not S.config.very_general:
        raise UnsupportedRangeError("closed form for r in {e, e+1} needs very general points")
    if not is_ample_closed_form(L, S):
        raise ValueError(f"{L} is not ample")
    through = largest_e_subset(L.m, S.e)
    cands = [(S.F, 1), (S.cls(1, S.e, through), 1)]
    val, key, n = _pick(cands, S, L)
    return SeshadriResult(val, _from_key(key, S), n, "closed_form_r_e")


# -- enumerative engine ---------------------------------------------------------

def _incidence(d: DivClass, x: XPosition):
    """Is the low-degree class d (on F~ with n_x = 1) a curve through the special point x?

    Returns None when the class is not one of the positional curves.
    """
    ms, mx = d.m, d.mx
    if mx != 1:
        return None
    nz = [(i + 1, v) for i, v in enumerate(ms) if v]
    if d.a == 0 and d.b == 0:
        return len(nz) == 1 and nz[0][1] == -1 and x.exc == nz[0][0]
    if d.a == 0 and d.b == 1:
        if not nz:
            return x.fiber is None and x.exc is None
        return len(nz) == 1 and nz[0][1] == 1 and x.fiber == nz[0][0]
    if d.a == 1 and d.b == 0:
        return not nz and x.on_ce
    return None


def _through_x(d: DivClass, St: SurfaceModel, x: XPosition) -> bool:
    if x.kind == "generic":
        return effectivity_heuristic(d, St)
    inc = _incidence(d, x)
    if inc is not None:
        return inc
    if x.exc is not None or any(v < 0 for v in d.mults):
        return False
    return h0_fe(d.a, d.b, St.e) > conditions_count(d.mults)


def _count_through(D: DivClass, n: int, e: int, x: XPosition) -> bool:
    if x.exc is not None or D.a < 0 or any(v < 0 for v in D.m):
        return False
    return h0_fe(D.a, D.b, e) > conditions_count(D.m + (n,))


def _fixed_through_x(S0: SurfaceModel, x: XPosition):
    """Positional fixed components of |-K| that contain x (none for a very general x)."""
    out = []
    if x.on_ce:
        out.append(S0.H)
    if x.fiber:
        out.append(S0.cls(0, 1, _unit(S0.r, x.fiber)))
    if x.exc:
        out.append(S0.E(x.exc))
    return out


def seshadri_candidates(L: DivClass, S: SurfaceModel, bounds: EnumBounds = AUTO,
                        x: XPosition = GENERIC):
    """(x-free class, mult at x) pairs that carry an effective curve through x."""
    S0 = S.without_extra_point()
    St = S0.with_extra_point()
    e = S0.e
    seen = set()
    out = []

    def add(D, n):
        if (D, n) not in seen:
            seen.add((D, n))
            out.append((D, n))

    for c in enumerate_neg_classes(St, bounds):
        d = c.cls
        if d.mx < 1 or not c.passes_irreducibility:
            continue
        D = d.drop_x()
        if _through_x(d, St, x):
            add(D, d.mx)
        # multiplicity sweep: any effective divisor through x bounds epsilon from above
        for n in range(1, max(D.a, 0) + 2):
            if n != d.mx and _count_through(D, n, e, x):
                add(D, n)
    minus_k = -canonical_class(S0)
    for n in (1, 2):
        if _count_through(minus_k, n, e, x):
            add(minus_k, n)
    for D in _fixed_through_x(S0, x):
        add(D, 1)
    return out


def seshadri_enumerative(L: DivClass, S: SurfaceModel, bounds: EnumBounds = AUTO,
                         x: XPosition = GENERIC, G: Optional[ConeGenerators] = None) -> SeshadriResult:
    """Infimum of (L.C)/mult_x(C) over the candidate curves through x."""
    S0 = S.without_extra_point()
    check_member(L.drop_x() if L.mx is not None else L, S0)
    L = L.drop_x() if L.mx is not None else L
    St = S0.with_extra_point()
    if not anticanonical_range(St):
        raise UnsupportedRangeError(f"r + 1 = {S0.r + 1} > e + 5: outside the anticanonical range")
    if x.kind != "generic":
        _require_generic_points(S0)
        if x.index is not None and x.index > S0.r:
            raise ValueError(f"x position refers to point {x.index} but r = {S0.r}")
    if G is None:
        G = cone_generators(S0, bounds)
    if not nakai_check(L, S0, G):
        raise ValueError(f"{L} is not ample on F_({S0.e},{S0.r})")
    bx = resolve_bounds(St, bounds)
    cands = seshadri_candidates(L, S0, bx, x)
    if not cands:
        raise BoundsError("no candidate curve through x inside the bounds; enlarge them")
    val, key, n = _pick(cands, S0, L)
    certified = bx.certified and S0.r <= S0.e + 1
    return SeshadriResult(val, _from_key(key, S0), n, "enumerative", certified, bx, len(cands))


def seshadri(L: DivClass, S: SurfaceModel, x: XPosition = GENERIC, bounds: EnumBounds = AUTO,
             method: str = "auto") -> SeshadriResult:
    """Pick the closed form when one applies, else the enumerative engine."""
    S0 = S.without_extra_point()
    if method == "auto":
        if S0.r == 0:
            method = "closed_form_fe"
        elif S0.e > 0 and S0.r <= S0.e - 1 and S0.config.is_generic():
            method = "closed_form_small_r"
        elif (S0.e > 0 and S0.r in (S0.e, S0.e + 1) and S0.config.very_general
              and x.kind == "generic"):
            method = "closed_form_r_e"
        else:
            method = "enumerative"
    if method == "closed_form_fe":
        if S0.r:
            raise UnsupportedRangeError("F_e closed form needs r = 0")
        if x.kind not in ("generic", "on_ce"):
            raise UnsupportedRangeError("no blown-up points to sit on")
        res = seshadri_fe(L.a, L.b, S0.e, x.on_ce)
        return res
    if method == "closed_form_small_r":
        return seshadri_small_r(L, S0, x)
    if method == "closed_form_r_e":
        if x.kind != "generic":
            raise UnsupportedRangeError("closed form for r in {e, e+1} is for a very general x")
        return seshadri_r_e(L, S0)
    if method == "enumerative":
        return seshadri_enumerative(L, S0, bounds, x)
    raise ValueError(f"unknown method {method!r}")
