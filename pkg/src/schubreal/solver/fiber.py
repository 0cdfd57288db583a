"""Fibers of the Wronski map and of its square root P."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..exact import INFINITY, Poly, canonical_projective, format_rational
from ..geometry import numeric_poly_sqrt, numeric_wronskian, projective_distance, wronskian_raw
from ..osculating import format_point
from ..partitions import enumerate_box, enumerate_strict, rect_syt_count, shifted_syt_count
from .problem import SchubertProblem, SolverConfig
from .solve import SolutionCertificate, SolveResult, solve


class UnsupportedTarget(ValueError):
    """The target polynomial does not split into rational linear factors."""


def rational_roots(h: Poly) -> list[tuple[Fraction, int]]:
    """``[(a, k)]`` with ``h = c * prod (z + a)^k``; raises if a factor is not linear."""
    import sympy

    if h.is_zero():
        raise UnsupportedTarget("the zero polynomial has no fiber")
    if not h.exact:
        raise UnsupportedTarget("target coefficients must be rational")
    z = sympy.Symbol("z")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * z ** k for k, c in enumerate(h.coeffs))
    _, factors = sympy.factor_list(sympy.Poly(expr, z, domain="QQ"))
    out = []
    for f, k in factors:
        if f.degree() != 1:
            raise UnsupportedTarget(f"irreducible factor {f.as_expr()} of degree {f.degree()}")
        c1, c0 = (Fraction(int(v.p), int(v.q)) for v in f.all_coeffs())
        out.append((c0 / c1, int(k)))
    return sorted(out)


def _truncate(W: np.ndarray, degree: int) -> tuple[np.ndarray, float]:
    """Coefficients up to ``degree`` and the relative size of what is dropped."""
    scale = float(np.max(np.abs(W)))
    tail = float(np.max(np.abs(W[degree + 1:]))) / scale if len(W) > degree + 1 else 0.0
    return W[:degree + 1], tail


def numeric_p(rows: np.ndarray, degree: int) -> tuple[np.ndarray, float]:
    """``P`` of a complex isotropic basis, knowing ``deg P``; also the discarded tail."""
    W, tail = _truncate(numeric_wronskian(rows), 2 * degree)
    return numeric_poly_sqrt(W), tail


def solution_wronskian(run: SolveResult, cert: SolutionCertificate) -> np.ndarray:
    """Wronskian coefficients of a solution.

    For a real solution of a rational problem the basis is rebuilt exactly from
    the real coordinates and the determinant is taken in exact arithmetic, so
    the only rounding is in the coordinates themselves.
    """
    if cert.real and cert.real_coordinates is not None:
        try:
            rows = run.system.exact_point_rows([Fraction(float(v)) for v in cert.real_coordinates])
        except TypeError:
            rows = None
        if rows is not None:
            m = len(rows[0])
            W = wronskian_raw([Poly(r, m - 1) for r in rows])
            out = np.zeros(len(rows) * (m - len(rows)) + 1, dtype=complex)
            out[:len(W.coeffs)] = [complex(c) for c in W.coeffs]
            return out
    return numeric_wronskian(cert.rows)


@dataclass
class FiberPoint:
    certificate: SolutionCertificate
    conditions: list
    distance: float

    def to_json(self) -> dict:
        return {"conditions": [{"point": format_point(a), "shape": list(s)} for a, s in self.conditions],
                "target_distance": self.distance,
                "certificate": self.certificate.to_json()}


@dataclass
class FiberResult:
    space: str
    d: int
    m: int
    target: Poly
    roots: list
    infinity_deficiency: int
    runs: list[SolveResult] = field(default_factory=list)
    points: list[FiberPoint] = field(default_factory=list)
    expected_degree: int | None = None

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    @property
    def complete(self) -> bool:
        return all(r.complete for r in self.runs)

    @property
    def max_distance(self) -> float:
        return max((p.distance for p in self.points), default=0.0)

    @property
    def generic(self) -> bool:
        return all(k == 1 for _, k in self.roots) and self.infinity_deficiency <= 1

    def to_json(self) -> dict:
        return {
            "space": self.space,
            "n" if self.space == "OG" else "d": self.d,
            **({} if self.space == "OG" else {"m": self.m}),
            "target": [format_rational(c) for c in self.target.coeffs],
            "roots": [{"point": format_rational(a), "multiplicity": k} for a, k in self.roots],
            "infinity_deficiency": self.infinity_deficiency,
            "combinations": [[c.to_json() for c in r.problem.conditions] for r in self.runs],
            "count": len(self.points),
            "expected_generic_count": self.expected_degree if self.generic else None,
            "complete": self.complete,
            "max_target_distance": self.max_distance,
            "points": [p.to_json() for p in self.points],
        }


def _same(a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    return projective_distance(a.ravel(), b.ravel()) <= tol if a.shape == b.shape else False


def _fiber(space, d, m, h, shapes_of, total, cfg, backend) -> FiberResult:
    cfg = cfg or SolverConfig()
    h = canonical_projective(h if isinstance(h, Poly) else Poly(h))
    roots = rational_roots(h)
    if h.degree > total:
        raise UnsupportedTarget(f"degree {h.degree} exceeds {total}")
    deficiency = total - h.degree
    points = [(a, k) for a, k in roots] + ([(INFINITY, deficiency)] if deficiency else [])
    choices = [[(a, tuple(s.parts)) for s in shapes_of(k)] for a, k in points]
    result = FiberResult(space, d, m, h, roots, deficiency)
    target = np.array([complex(c) for c in h.coeffs])
    for combo in itertools.product(*choices):
        conds = [(a, list(s)) for a, s in combo]
        problem = (SchubertProblem.orthogonal(d, conds) if space == "OG"
                   else SchubertProblem.grassmannian(d, m, conds))
        run = solve(problem, cfg, backend)
        result.runs.append(run)
        for cert in run.solutions:
            W = solution_wronskian(run, cert)
            if space == "OG":
                W, tail = _truncate(W, 2 * h.degree)
                image = numeric_poly_sqrt(W)
            else:
                image, tail = _truncate(W, h.degree)
            dist = max(projective_distance(image, target), tail)
            if any(_same(cert.rows, p.certificate.rows, cfg.dedup) for p in result.points):
                continue
            result.points.append(FiberPoint(cert, list(combo), dist))
    return result


def fiber_of_p(h: Poly, n: int, cfg: SolverConfig | None = None, backend: str | None = None) -> FiberResult:
    """All isotropic ``n``-planes with ``P(y) = h`` up to scale.

    Each root of order ``k`` (and the deficiency at infinity) is distributed
    over the strict partitions of ``k``; every combination is solved.
    """
    N = n * (n + 1) // 2
    res = _fiber("OG", n, 2 * n + 1, h, lambda k: enumerate_strict(n, k), N, cfg, backend)
    res.expected_degree = shifted_syt_count(tuple(range(n, 0, -1)))
    return res


def fiber_of_wronskian(h: Poly, d: int, m: int, cfg: SolverConfig | None = None,
                       backend: str | None = None) -> FiberResult:
    """All ``d``-planes in ``C_{m-1}[z]`` whose Wronskian is ``h`` up to scale."""
    res = _fiber("Gr", d, m, h, lambda k: enumerate_box(d, m - d, k), d * (m - d), cfg, backend)
    res.expected_degree = rect_syt_count(d, m - d)
    return res
