"""Linear systems L(a, b; m_1..m_r) on F_e: dimensions, the (-1)-reduction and the scanner.

``actual_dim`` interpolates at random integer points of the chart described in
:mod:`hirzebruch.cohomology`.  Ranks are taken modulo a large prime first; a
full modular rank is already the rational rank, anything lower is recomputed
exactly with fraction-free elimination.
"""
from __future__ import annotations

import json
import logging
import os
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import _kernels
from .cohomology import conditions_count, h0_fe, rr_lower_bound, section_basis
from .errors import BoundsError, HirzebruchError, InvariantError
from .lattice import DivClass, SurfaceModel, intersect
from .negcurves import (AUTO, EnumBounds, Kind, NegCurveClass, effectivity_heuristic,
                        enumerate_neg_classes, resolve_bounds, structural_filter)

log = logging.getLogger(__name__)

COORD_BOX = 10 ** 6
MAX_RESAMPLES = 20


@dataclass(frozen=True)
class LinSysSpec:
    e: int
    a: int
    b: int
    mults: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "mults", tuple(int(m) for m in self.mults))
        if self.e < 0:
            raise ValueError("e must be >= 0")
        if self.a < 0:
            raise ValueError("a must be >= 0")
        if any(m < 0 for m in self.mults):
            raise ValueError("multiplicities must be >= 0")

    @property
    def r(self) -> int:
        return len(self.mults)

    def surface(self) -> SurfaceModel:
        return SurfaceModel(self.e, self.r)

    def divisor(self) -> DivClass:
        return DivClass(self.a, self.b, self.mults)

    def label(self) -> str:
        return f"L({self.a},{self.b};{','.join(map(str, self.mults))}) on F_{self.e}"

    @classmethod
    def parse(cls, e: int, text: str) -> "LinSysSpec":
        vals = [int(t) for t in text.split(",") if t.strip()]
        if len(vals) < 2:
            raise ValueError("spec needs at least a,b")
        return cls(e, vals[0], vals[1], tuple(vals[2:]))


def virtual_dim(spec: LinSysSpec) -> int:
    v = h0_fe(spec.a, spec.b, spec.e) - 1 - conditions_count(spec.mults)
    if spec.b >= spec.a * spec.e >= 0:
        lattice_v = rr_lower_bound(spec.divisor(), spec.surface())
        if lattice_v != v:
            raise InvariantError(f"virtual dimension {v} != (L^2 - K.L)/2 = {lattice_v} for {spec.label()}")
    return v


def expected_dim(spec: LinSysSpec) -> int:
    return max(virtual_dim(spec), -1)


def class_virtual_dim(D: DivClass, S: SurfaceModel) -> int:
    """(D^2 - K.D)/2 for any class."""
    return rr_lower_bound(D, S)


# -- exact rank -----------------------------------------------------------------

def bareiss_rank(rows: Sequence[Sequence[int]], ncols: int) -> int:
    """Rank over Q of an integer matrix by fraction-free elimination."""
    mat = [list(r) for r in rows if any(r)]
    rank, prev = 0, 1
    for col in range(ncols):
        piv = next((i for i in range(rank, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        p = mat[rank][col]
        for i in range(rank + 1, len(mat)):
            f = mat[i][col]
            row = mat[i]
            prow = mat[rank]
            mat[i] = [(p * x - f * y) // prev for x, y in zip(row, prow)]
        prev = p
        rank += 1
        if rank == len(mat):
            break
    return rank


def _falling(n: int, k: int) -> int:
    out = 1
    for q in range(k):
        out *= n - q
    return out


def condition_rows(points, mults, elements) -> list[list[int]]:
    """Integer rows d^s/du^s d^t/dv^t (u^k v^j) at each point, s + t < m."""
    rows = []
    for (u0, v0), m in zip(points, mults):
        for s in range(m):
            for t in range(m - s):
                rows.append([_falling(k, s) * _falling(j, t) * u0 ** (k - s) * v0 ** (j - t)
                             if k >= s and j >= t else 0 for k, j in elements])
    return rows


def interpolation_rank(points, mults, elements) -> int:
    if not elements or not any(mults):
        return 0
    us = [p[0] for p in points]
    vs = [p[1] for p in points]
    ks = [k for k, _ in elements]
    js = [j for _, j in elements]
    rk = _kernels.interpolation_rank_mod_p(us, vs, list(mults), ks, js, _kernels.PRIME)
    if rk == min(conditions_count(mults), len(elements)):
        return rk
    # a rank drop mod p might be an artefact of the prime
    return bareiss_rank(condition_rows(points, mults, elements), len(elements))


def sample_points(r: int, seed: int, box: int = COORD_BOX) -> list[tuple[int, int]]:
    """r points with distinct base coordinates (so distinct points on distinct fibres)."""
    rng = random.Random(seed)
    for _ in range(MAX_RESAMPLES):
        pts = [(rng.randint(-box, box), rng.randint(-box, box)) for _ in range(r)]
        if len({v for _, v in pts}) == r:
            return pts
        log.debug("resampling: two points share a fibre (seed %s)", seed)
    raise HirzebruchError(f"could not sample {r} points on distinct fibres after {MAX_RESAMPLES} tries")


def actual_dim(spec: LinSysSpec, seed: int = 0) -> int:
    basis = section_basis(spec.a, spec.b, spec.e)
    pts = sample_points(spec.r, seed)
    return len(basis) - 1 - interpolation_rank(pts, spec.mults, basis.elements)


def ce_fixed_component(spec: LinSysSpec, seed: int = 0) -> bool:
    """Is C_e in the base locus of the (non-empty) interpolated system?

    True when every section in the kernel has zero level-a coefficients, i.e.
    restricting to levels < a does not shrink the kernel.
    """
    basis = section_basis(spec.a, spec.b, spec.e)
    pts = sample_points(spec.r, seed)
    full = len(basis) - interpolation_rank(pts, spec.mults, basis.elements)
    if full <= 0:
        return False
    low = [el for el in basis.elements if el[0] < spec.a]
    return len(low) - interpolation_rank(pts, spec.mults, low) == full


# -- Algorithm: (-1)-reduction ------------------------------------------------------

@dataclass(frozen=True)
class ReductionStep:
    kind: str            # "minus_one" or "ce"
    curve: DivClass
    t: int               # multiplicity subtracted
    v_before: int
    v_after: int

    def to_json(self) -> dict:
        return {"kind": self.kind, "curve": self.curve.to_csv(), "t": self.t,
                "v_before": self.v_before, "v_after": self.v_after}


def minus_one_curves(S: SurfaceModel, bounds: EnumBounds = AUTO) -> list[NegCurveClass]:
    """(-1)-classes on S that survive the structural and effectivity filters."""
    return [c for c in enumerate_neg_classes(S, bounds)
            if c.kind is Kind.MINUS_ONE and structural_filter(c, S) and effectivity_heuristic(c, S)]


def _evidently_empty(D: DivClass, e: int) -> bool:
    return D.a < 0 or h0_fe(D.a, D.b, e) == 0


def minus_one_reduction(spec: LinSysSpec, negs: Sequence[NegCurveClass], reverse: bool = False,
                        budget: Optional[int] = None):
    """Subtract (-1)-curves and C~_e while they meet L negatively.

    Stops when L is non-negative on all of them, or once L has no sections at
    all (further subtraction would only walk off to infinity).  Returns
    ``(M, steps, stop_reason)``.
    """
    S = spec.surface()
    L = spec.divisor()
    ce = S.H
    curves = sorted((c.cls for c in negs if c.kind is Kind.MINUS_ONE), key=DivClass.key, reverse=reverse)
    if budget is None:
        budget = 4 * (spec.a + abs(spec.b) + sum(spec.mults)) + 50
    steps = []
    v = class_virtual_dim(L, S)
    for _ in range(budget):
        if _evidently_empty(L, S.e):
            return L, steps, "empty"
        hit = None
        for E in curves:
            t = -intersect(L, E, S)
            if t > 0:
                hit = ("minus_one", E, t)
                break
        if hit is None and intersect(L, ce, S) < 0:
            hit = ("ce", ce, 1)
        if hit is None:
            return L, steps, "nef"
        kind, C, t = hit
        L = L - C * t
        v_new = class_virtual_dim(L, S)
        steps.append(ReductionStep(kind, C, t, v, v_new))
        v = v_new
    raise BoundsError(f"reduction of {spec.label()} did not stop within {budget} steps; "
                      "the (-1)-curve list is probably incomplete, enlarge the bounds")


def is_minus_one_special(spec: LinSysSpec, negs: Sequence[NegCurveClass]) -> bool:
    S = spec.surface()
    M, _, _ = minus_one_reduction(spec, negs)
    return class_virtual_dim(M, S) > class_virtual_dim(spec.divisor(), S)


# -- report --------------------------------------------------------------------------

@dataclass
class LinSysReport:
    spec: LinSysSpec
    virtual_dim: int
    expected_dim: int
    actual_dim: int
    special: bool
    minus_one_special: bool
    reduction_log: list
    reduced_class: DivClass
    stop_reason: str
    seeds: tuple = ()
    seed_dims: tuple = ()
    ce_fixed: bool = False
    reduced_proxy: bool = True

    @property
    def seed_stable(self) -> bool:
        return len(set(self.seed_dims)) <= 1

    def to_json(self) -> dict:
        return {
            "e": self.spec.e, "a": self.spec.a, "b": self.spec.b, "mults": list(self.spec.mults),
            "virtual_dim": self.virtual_dim, "expected_dim": self.expected_dim,
            "actual_dim": self.actual_dim, "special": self.special,
            "minus_one_special": self.minus_one_special,
            "reduction_log": [s.to_json() for s in self.reduction_log],
            "reduced_class": self.reduced_class.to_csv(), "stop_reason": self.stop_reason,
            "seeds": list(self.seeds), "seed_dims": list(self.seed_dims),
            "seed_stable": self.seed_stable, "ce_fixed_component": self.ce_fixed,
            "reduced_proxy": self.reduced_proxy,
        }


def analyse(spec: LinSysSpec, seeds: Sequence[int] = (0, 1, 2), negs=None,
            bounds: EnumBounds = AUTO) -> LinSysReport:
    if not seeds:
        raise ValueError("at least one seed is needed for interpolation")
    S = spec.surface()
    if negs is None:
        negs = minus_one_curves(S, scan_bounds(S) if bounds == AUTO else bounds)
    vd = virtual_dim(spec)
    ed = max(vd, -1)
    dims = tuple(actual_dim(spec, s) for s in seeds)
    ad = max(dims)  # a lower value means that sample was not general enough
    if ad < ed:
        raise InvariantError(f"actual dimension {ad} below expected {ed} for {spec.label()}")
    M, steps, reason = minus_one_reduction(spec, negs)
    mos = class_virtual_dim(M, S) > class_virtual_dim(spec.divisor(), S)
    used = Counter(s.curve for s in steps)
    reduced = all(s.t == 1 for s in steps) and all(n == 1 for n in used.values())
    return LinSysReport(spec, vd, ed, ad, ad > ed, mos, steps, M, reason, tuple(seeds), dims,
                        ce_fixed_component(spec, seeds[dims.index(ad)]) if ad >= 0 else False, reduced)


# -- scanner -------------------------------------------------------------------------

def scan_bounds(S: SurfaceModel) -> EnumBounds:
    """Auto bounds when K^2 > 0, else a fixed box big enough for a <= 4 systems."""
    if 8 - S.n_points > 0:
        return AUTO
    return EnumBounds(4, 4 * S.e + 4, 4, "manual")


@dataclass(frozen=True)
class ScanGrid:
    e: tuple = (0, 5)
    r: tuple = (0, 8)
    a: tuple = (0, 4)
    b: tuple = (0, 24)
    m: tuple = (1, 3)
    r_offset: Optional[int] = 3          # r <= e + r_offset
    b_slope: Optional[tuple] = (4, 4)    # b <= b_slope[0] * e + b_slope[1]
    seeds: tuple = (0, 1, 2)

    @classmethod
    def from_json(cls, d: dict) -> "ScanGrid":
        kw = {}
        for k in ("e", "r", "a", "b", "m"):
            if k in d:
                lo, hi = d[k]
                kw[k] = (int(lo), int(hi))
        if "r_offset" in d:
            kw["r_offset"] = None if d["r_offset"] is None else int(d["r_offset"])
        if "b_slope" in d:
            kw["b_slope"] = None if d["b_slope"] is None else tuple(int(x) for x in d["b_slope"])
        if "seeds" in d:
            kw["seeds"] = tuple(int(s) for s in d["seeds"])
        unknown = set(d) - {"e", "r", "a", "b", "m", "r_offset", "b_slope", "seeds"}
        if unknown:
            raise ValueError(f"unknown grid keys {sorted(unknown)}")
        return cls(**kw)

    def surfaces(self):
        for e in range(self.e[0], self.e[1] + 1):
            rhi = self.r[1] if self.r_offset is None else min(self.r[1], e + self.r_offset)
            for r in range(self.r[0], rhi + 1):
                yield e, r

    def specs(self, e: int, r: int):
        bhi = self.b[1] if self.b_slope is None else min(self.b[1], self.b_slope[0] * e + self.b_slope[1])
        mlo = max(self.m[0], 0)
        for a in range(self.a[0], self.a[1] + 1):
            for b in range(self.b[0], bhi + 1):
                for m in range(mlo, self.m[1] + 1):
                    if r == 0 and m != mlo:
                        continue
                    yield LinSysSpec(e, a, b, (m,) * r)


def default_grid() -> ScanGrid:
    path = os.path.join(os.path.dirname(__file__), "data", "scan_grid.json")
    with open(path) as fh:
        return ScanGrid.from_json(json.load(fh))


def negative_class_exceptions(S: SurfaceModel, bounds: EnumBounds = AUTO) -> list[NegCurveClass]:
    """Enumerated negative classes passing the filters that are neither (-1) nor C~_e."""
    ce = S.H
    return [c for c in enumerate_neg_classes(S, bounds)
            if structural_filter(c, S) and effectivity_heuristic(c, S)
            and c.kind is not Kind.MINUS_ONE and c.cls != ce]


@dataclass
class CellResult:
    e: int
    r: int
    reports: list
    exceptions: list
    bounds: EnumBounds


def scan_cell(grid: ScanGrid, e: int, r: int) -> CellResult:
    S = SurfaceModel(e, r)
    bounds = scan_bounds(S)
    negs = minus_one_curves(S, bounds)
    reports = [analyse(spec, grid.seeds, negs) for spec in grid.specs(e, r)]
    return CellResult(e, r, reports, negative_class_exceptions(S, bounds), resolve_bounds(S, bounds))


def _scan_cell_args(args):
    return scan_cell(*args)


@dataclass
class ScanReport:
    cells: list = field(default_factory=list)

    def reports(self):
        for c in self.cells:
            yield from c.reports

    def summary(self) -> dict:
        reps = list(self.reports())
        table = Counter()
        table_nonempty = Counter()
        table_regular = Counter()
        c43 = Counter()
        for rep in reps:
            key = f"special={rep.special},minus_one_special={rep.minus_one_special}"
            table[key] += 1
            if rep.actual_dim >= 0:
                table_nonempty[key] += 1
                # below b = ae the class-level v no longer matches h0 - 1 - conditions
                if rep.spec.b >= rep.spec.a * rep.spec.e:
                    table_regular[key] += 1
            if rep.reduced_proxy and not rep.ce_fixed and rep.actual_dim >= 0:
                c43["non_special" if not rep.special else "special"] += 1
        exc = {f"{c.e},{c.r}": [x.cls.to_csv() for x in c.exceptions] for c in self.cells if c.exceptions}
        exc_small = {k: v for k, v in exc.items()
                     if int(k.split(",")[1]) <= int(k.split(",")[0]) + 2}
        return {
            "n_specs": len(reps),
            "n_surfaces": len(self.cells),
            "special_vs_minus_one_special": dict(sorted(table.items())),
            "special_vs_minus_one_special_nonempty": dict(sorted(table_nonempty.items())),
            "special_vs_minus_one_special_nonempty_b_ge_ae": dict(sorted(table_regular.items())),
            "reduced_without_ce_fixed": dict(sorted(c43.items())),
            "seed_unstable": [r.spec.label() for r in reps if not r.seed_stable],
            "lemma_shadow_violations": [r.spec.label() for r in reps if r.minus_one_special
                                        and not any(s.kind == "ce" or s.t >= 2 for s in r.reduction_log)],
            "negative_class_exceptions": exc,
            "negative_class_exceptions_r_le_e_plus_2": exc_small,
            "note": ("conjectural statements are reported as evidence only; reduced_proxy is a heuristic "
                     "(t = 1 steps, no (-1)-class used twice)"),
        }

    def csv_rows(self):
        yield ["e", "r", "a", "b", "m", "virtual", "expected", "actual", "special",
               "minus_one_special", "ce_fixed", "reduced_proxy", "steps", "stop", "seed_stable"]
        for rep in self.reports():
            s = rep.spec
            yield [s.e, s.r, s.a, s.b, s.mults[0] if s.mults else 0, rep.virtual_dim, rep.expected_dim,
                   rep.actual_dim, int(rep.special), int(rep.minus_one_special), int(rep.ce_fixed),
                   int(rep.reduced_proxy), len(rep.reduction_log), rep.stop_reason, int(rep.seed_stable)]


def default_jobs() -> int:
    env = os.environ.get("HIRZEBRUCH_JOBS")
    if env:
        return max(1, int(env))
    return 1


def conjecture_scan(grid: ScanGrid, jobs: Optional[int] = None) -> ScanReport:
    """Run every grid cell (one surface each); the merge order is the grid order."""
    jobs = default_jobs() if jobs is None else jobs
    cells = list(grid.surfaces())
    if jobs <= 1 or len(cells) <= 1:
        results = [scan_cell(grid, e, r) for e, r in cells]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_scan_cell_args, [(grid, e, r) for e, r in cells]))
    return ScanReport(results)
