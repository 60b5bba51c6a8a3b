"""Divisor classes and the intersection pairing on blow-ups of F_e.

A class is stored as ``(a, b, m_1..m_r[, m_x])`` and stands for

    a*H + b*F - sum(m_i * E_i) [- m_x * E_x]

so the exceptional entries carry the *multiplicity* sign: a positive ``m_i``
means the class is subtracted.  The raw coefficient of ``E_i`` is ``-m_i``;
:meth:`DivClass.exceptional_coefficients` is the only place that flips it.

``H`` is the pull-back of the negative section C_e and ``F`` the pull-back of a
fibre, so ``H^2 = -e``, ``F^2 = 0``, ``H.F = 1`` and ``E_i^2 = -1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import InvariantError, StructuralError


@dataclass(frozen=True)
class PointConfig:
    """Position data for the blown-up points.

    ``on_ce[i]`` says whether p_i lies on C_e and ``fibers[i]`` is an arbitrary
    hashable label of the fibre through p_i (equal labels = same fibre).
    Both are empty for the very-general configuration.
    """

    very_general: bool = True
    on_ce: tuple = ()
    fibers: tuple = ()

    @classmethod
    def configured(cls, on_ce: Sequence[bool], fibers: Sequence) -> "PointConfig":
        if len(on_ce) != len(fibers):
            raise StructuralError("on_ce and fibers must have the same length")
        return cls(False, tuple(bool(x) for x in on_ce), tuple(fibers))

    @classmethod
    def generic(cls, r: int) -> "PointConfig":
        """Configured points off C_e on pairwise distinct fibres."""
        return cls.configured([False] * r, list(range(r)))

    def is_generic(self) -> bool:
        if self.very_general:
            return True
        return not any(self.on_ce) and len(set(self.fibers)) == len(self.fibers)

    def fiber_groups(self) -> list[tuple[int, ...]]:
        """Indices of points grouped by shared fibre, in first-seen order."""
        if self.very_general:
            return []
        groups: dict = {}
        for i, f in enumerate(self.fibers):
            groups.setdefault(f, []).append(i)
        return [tuple(g) for g in groups.values()]

    def to_json(self):
        if self.very_general:
            return "very_general"
        return {"on_ce": list(self.on_ce), "fibers": list(self.fibers)}

    @classmethod
    def from_json(cls, obj) -> "PointConfig":
        if obj is None or obj == "very_general":
            return cls()
        if obj == "generic":
            raise StructuralError("'generic' needs r; use SurfaceModel.from_json")
        return cls.configured(obj["on_ce"], obj["fibers"])


@dataclass(frozen=True)
class SurfaceModel:
    """F_e blown up at r points, optionally at one more very general point x."""

    e: int
    r: int
    config: PointConfig = field(default_factory=PointConfig)
    with_x: bool = False

    def __post_init__(self):
        if self.e < 0 or self.r < 0:
            raise StructuralError(f"need e >= 0 and r >= 0, got e={self.e}, r={self.r}")
        if not self.config.very_general and len(self.config.on_ce) != self.r:
            raise StructuralError(
                f"configured point data lists {len(self.config.on_ce)} points, surface has r={self.r}"
            )

    @property
    def rank(self) -> int:
        """Picard rank."""
        return 2 + self.r + int(self.with_x)

    @property
    def n_points(self) -> int:
        return self.r + int(self.with_x)

    def with_extra_point(self) -> "SurfaceModel":
        return SurfaceModel(self.e, self.r, self.config, True)

    def without_extra_point(self) -> "SurfaceModel":
        return SurfaceModel(self.e, self.r, self.config, False)

    # class constructors
    def cls(self, a: int, b: int, m: Sequence[int] = (), mx: Optional[int] = None) -> "DivClass":
        m = tuple(m) if m else (0,) * self.r
        if self.with_x and mx is None:
            mx = 0
        c = DivClass(a, b, m, mx)
        check_member(c, self)
        return c

    @property
    def H(self) -> "DivClass":
        return self.cls(1, 0)

    @property
    def F(self) -> "DivClass":
        return self.cls(0, 1)

    def E(self, i: int) -> "DivClass":
        """Exceptional curve E_i, 1-based like the literature."""
        m = [0] * self.r
        m[i - 1] = -1
        return self.cls(0, 0, m)

    @property
    def Ex(self) -> "DivClass":
        if not self.with_x:
            raise StructuralError("surface has no extra point x")
        return self.cls(0, 0, (0,) * self.r, -1)

    def zero(self) -> "DivClass":
        return self.cls(0, 0)

    def to_json(self) -> dict:
        return {"e": self.e, "r": self.r, "with_x": self.with_x, "config": self.config.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> "SurfaceModel":
        r = int(obj["r"])
        cfg = obj.get("config", "very_general")
        config = PointConfig.generic(r) if cfg == "generic" else PointConfig.from_json(cfg)
        return cls(int(obj["e"]), r, config, bool(obj.get("with_x", False)))


@dataclass(frozen=True, order=True)
class DivClass:
    a: int
    b: int
    m: tuple = ()
    mx: Optional[int] = None

    def __post_init__(self):
        if not isinstance(self.m, tuple):
            object.__setattr__(self, "m", tuple(self.m))

    # arithmetic --------------------------------------------------------
    def _same_shape(self, other: "DivClass"):
        if len(self.m) != len(other.m) or (self.mx is None) != (other.mx is None):
            raise StructuralError(f"classes live on different surfaces: {self} vs {other}")

    def __add__(self, other: "DivClass") -> "DivClass":
        self._same_shape(other)
        mx = None if self.mx is None else self.mx + other.mx
        return DivClass(self.a + other.a, self.b + other.b,
                        tuple(x + y for x, y in zip(self.m, other.m)), mx)

    def __neg__(self) -> "DivClass":
        return DivClass(-self.a, -self.b, tuple(-x for x in self.m),
                        None if self.mx is None else -self.mx)

    def __sub__(self, other: "DivClass") -> "DivClass":
        return self + (-other)

    def __mul__(self, k: int) -> "DivClass":
        if not isinstance(k, int):
            return NotImplemented
        return DivClass(k * self.a, k * self.b, tuple(k * x for x in self.m),
                        None if self.mx is None else k * self.mx)

    __rmul__ = __mul__

    # accessors ---------------------------------------------------------
    @property
    def mults(self) -> tuple:
        """All exceptional multiplicities, m_x last when present."""
        return self.m if self.mx is None else self.m + (self.mx,)

    def exceptional_coefficients(self) -> tuple:
        """Raw coefficients of E_1..E_r[, E_x] (the negated multiplicities)."""
        return tuple(-x for x in self.mults)

    def drop_x(self) -> "DivClass":
        return DivClass(self.a, self.b, self.m, None)

    def add_x(self, mx: int) -> "DivClass":
        return DivClass(self.a, self.b, self.m, mx)

    def key(self) -> tuple:
        return (self.a, self.b) + self.mults

    # text encodings ----------------------------------------------------
    def to_csv(self) -> str:
        s = ",".join(str(v) for v in (self.a, self.b) + self.m)
        if self.mx is not None:
            s += f";{self.mx}"
        return s

    @classmethod
    def from_csv(cls, text: str, with_x: bool = False) -> "DivClass":
        body, _, xpart = text.partition(";")
        try:
            vals = [int(v) for v in body.replace(" ", "").split(",") if v != ""]
        except ValueError as exc:
            raise StructuralError(f"bad class literal {text!r}") from exc
        if len(vals) < 2:
            raise StructuralError(f"class literal needs at least a,b: {text!r}")
        mx = int(xpart) if xpart else (0 if with_x else None)
        return cls(vals[0], vals[1], tuple(vals[2:]), mx)

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "m": list(self.m), "mx": self.mx}

    @classmethod
    def from_json(cls, obj: dict) -> "DivClass":
        return cls(int(obj["a"]), int(obj["b"]), tuple(int(v) for v in obj.get("m", [])),
                   None if obj.get("mx") is None else int(obj["mx"]))

    def pretty(self) -> str:
        parts = []
        for coef, name in ((self.a, "H"), (self.b, "F")):
            if coef:
                parts.append(f"{coef}{name}" if coef != 1 else name)
        names = [f"E{i + 1}" for i in range(len(self.m))] + (["Ex"] if self.mx is not None else [])
        for coef, name in zip(self.exceptional_coefficients(), names):
            if coef:
                parts.append((f"{coef}" if abs(coef) != 1 else ("-" if coef < 0 else "")) + name)
        if not parts:
            return "0"
        s = parts[0]
        for p in parts[1:]:
            s += p if p.startswith("-") else "+" + p
        return s

    def __str__(self) -> str:
        return self.pretty()


def check_member(c: DivClass, S: SurfaceModel) -> None:
    if len(c.m) != S.r:
        raise StructuralError(f"class has {len(c.m)} exceptional entries, surface has r={S.r}")
    if (c.mx is not None) != S.with_x:
        raise StructuralError("E_x coefficient present iff the surface blows up x")


def intersect(d1: DivClass, d2: DivClass, S: SurfaceModel) -> int:
    check_member(d1, S)
    check_member(d2, S)
    val = -S.e * d1.a * d2.a + d1.a * d2.b + d2.a * d1.b
    val -= sum(x * y for x, y in zip(d1.m, d2.m))
    if S.with_x:
        val -= d1.mx * d2.mx
    return val


def self_intersection(d: DivClass, S: SurfaceModel) -> int:
    return intersect(d, d, S)


def canonical_class(S: SurfaceModel) -> DivClass:
    # K = -2H - (e+2)F + sum E_i, i.e. multiplicity -1 on every exceptional curve
    return DivClass(-2, -(S.e + 2), (-1,) * S.r, -1 if S.with_x else None)


def k_degree(d: DivClass, S: SurfaceModel) -> int:
    """K . d without building K."""
    check_member(d, S)
    return (S.e - 2) * d.a - 2 * d.b + sum(d.mults)


def arithmetic_genus(d: DivClass, S: SurfaceModel) -> int:
    twice = self_intersection(d, S) + k_degree(d, S)
    if twice % 2:
        raise InvariantError(f"D^2 + K.D is odd for {d}; lattice is malformed")
    return 1 + twice // 2


def gram_matrix(S: SurfaceModel) -> list[list[int]]:
    """Pairing matrix on the basis H, F, E_1..E_r[, E_x]."""
    basis = [S.H, S.F] + [S.E(i) for i in range(1, S.r + 1)] + ([S.Ex] if S.with_x else [])
    return [[intersect(u, v, S) for v in basis] for u in basis]


def sum_classes(classes: Iterable[DivClass], S: SurfaceModel) -> DivClass:
    total = S.zero()
    for c in classes:
        total = total + c
    return total
