"""Problem and configuration types for Schubert intersection solves."""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from fractions import Fraction

from ..exact import is_infinity
from ..osculating import format_point, parse_point
from ..partitions import Partition, StrictPartition, weight


class ProblemError(ValueError):
    """Malformed problem: bad shape, repeated point, or codimension budget violated."""


class NonSquareSystem(ProblemError):
    """The local equations do not form a square system."""


@dataclass(frozen=True)
class SchubertCondition:
    point: object
    shape: tuple[int, ...]

    def to_json(self) -> dict:
        return {"point": format_point(self.point), "shape": list(self.shape)}


@dataclass(frozen=True)
class SchubertProblem:
    """Either ``Gr(d, m)`` with ordinary partitions or ``OG(n)`` with strict ones."""

    space: str
    d: int
    m: int
    conditions: tuple[SchubertCondition, ...]

    @classmethod
    def grassmannian(cls, d: int, m: int, conditions) -> "SchubertProblem":
        return cls._build("Gr", d, m, conditions)

    @classmethod
    def orthogonal(cls, n: int, conditions) -> "SchubertProblem":
        return cls._build("OG", n, 2 * n + 1, conditions)

    @classmethod
    def _build(cls, space, d, m, conditions) -> "SchubertProblem":
        conds = []
        for c in conditions:
            if isinstance(c, SchubertCondition):
                conds.append(SchubertCondition(parse_point(c.point), tuple(c.shape)))
            elif isinstance(c, dict):
                conds.append(SchubertCondition(parse_point(c["point"]), tuple(int(v) for v in c["shape"])))
            else:
                a, shape = c
                conds.append(SchubertCondition(parse_point(a), tuple(int(v) for v in shape)))
        p = cls(space, d, m, tuple(conds))
        p.validate()
        return p

    @property
    def n(self) -> int:
        if self.space != "OG":
            raise AttributeError("only OG problems have a rank n")
        return self.d

    @property
    def dimension(self) -> int:
        if self.space == "OG":
            return self.d * (self.d + 1) // 2
        return self.d * (self.m - self.d)

    def shape(self, c: SchubertCondition) -> Partition | StrictPartition:
        if self.space == "OG":
            return StrictPartition(c.shape, self.d)
        return Partition(c.shape, self.d, self.m - self.d)

    def validate(self) -> None:
        if self.space not in ("Gr", "OG"):
            raise ProblemError(f"unknown space {self.space!r}")
        if self.space == "Gr" and not 1 <= self.d < self.m:
            raise ProblemError(f"Gr({self.d}, {self.m}) needs 1 <= d < m")
        if self.space == "OG" and (self.d < 1 or self.m != 2 * self.d + 1):
            raise ProblemError("OG(n) lives in C_2n[z] with n >= 1")
        total = 0
        for c in self.conditions:
            try:
                total += weight(self.shape(c))
            except ValueError as exc:
                raise ProblemError(f"bad shape {list(c.shape)}: {exc}") from None
        seen = []
        for c in self.conditions:
            key = "inf" if is_infinity(c.point) else c.point
            if key in seen:
                raise ProblemError(f"flag point {format_point(c.point)} repeated")
            seen.append(key)
        if total != self.dimension:
            what = "d(m-d)" if self.space == "Gr" else "n(n+1)/2"
            raise ProblemError(f"codimensions sum to {total} but the dimension {what} is "
                               f"{self.dimension}; a zero-dimensional intersection needs equality")

    @property
    def all_single_box(self) -> bool:
        return all(weight(self.shape(c)) == 1 for c in self.conditions if weight(self.shape(c)))

    @property
    def real_points(self) -> bool:
        return all(is_infinity(c.point) or isinstance(c.point, Fraction) for c in self.conditions)

    def to_json(self) -> dict:
        out = {"space": self.space}
        if self.space == "OG":
            out["n"] = self.d
        else:
            out["d"], out["m"] = self.d, self.m
        out["conditions"] = [c.to_json() for c in self.conditions]
        return out


@dataclass(frozen=True)
class SolverConfig:
    """Numerical settings.  Every tolerance must be positive."""

    step_min: float = 1e-8
    step_max: float = 0.05
    step_init: float = 0.01
    corrector_tol: float = 1e-10
    max_newton: int = 3
    endgame_radius: float = 1e-2
    endgame_tol: float = 1e-11
    refine_tol: float = 1e-12
    dedup: float = 1e-6
    tau_j: float = 1e-8
    tau_r: float = 1e-6
    membership_tol: float = 1e-9
    loose_membership_tol: float = 1e-5
    divergence: float = 1e8
    escape_norm: float = 1e3
    max_steps: int = 20000
    max_paths: int = 100000
    denominator_bound: int = 10 ** 6
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        for f in dataclasses.fields(self):
            v = getattr(self, f.name)
            if f.name in ("seed",):
                continue
            if v <= 0:
                raise ValueError(f"{f.name} must be positive, got {v}")
        if self.step_min > self.step_max or self.step_init > self.step_max:
            raise ValueError("step bounds out of order")

    def replace(self, **changes) -> "SolverConfig":
        return dataclasses.replace(self, **changes)

    @classmethod
    def from_dict(cls, data: dict | None) -> "SolverConfig":
        data = dict(data or {})
        names = {f.name: f for f in dataclasses.fields(cls)}
        unknown = set(data) - set(names)
        if unknown:
            raise ValueError(f"unknown config keys {sorted(unknown)}")
        conv = {k: (int(v) if names[k].type in ("int", int) else float(v)) for k, v in data.items()}
        return cls(**conv)

    def to_json(self) -> dict:
        return dataclasses.asdict(self)
