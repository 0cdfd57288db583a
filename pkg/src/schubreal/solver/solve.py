"""Homotopy solve of a Schubert problem and certification of its solutions."""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ..exact import format_rational, is_infinity
from ..geometry import (
    float_isotropy_residual,
    float_x_membership,
    isotropy_check,
    x_membership,
    y_membership,
)
from ..osculating import format_point
from ..partitions import (
    rect_syt_count,
    shifted_syt_count,
    skew_rect_count,
    skew_shifted_count,
    tilde_partition,
    weight,
)
from .problem import ProblemError, SchubertProblem, SolverConfig
from .system import SquareSystem, build_square_system
from .tracking import STATUS_NAMES, resolve_backend, tracker_class

_OK, _DIVERGED, _FAILED, _SINGULAR, _MAXSTEPS = 0, 1, 2, 3, 4


def _cjson(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


@dataclass
class MembershipCheck:
    point: object
    shape: tuple[int, ...]
    worst_sine: float
    passed: bool

    def to_json(self) -> dict:
        return {"point": format_point(self.point), "shape": list(self.shape),
                "worst_sine": self.worst_sine, "passed": self.passed}


@dataclass
class RationalCheck:
    """Exact re-verification of a rounded real solution."""

    coordinates: list[Fraction]
    point: object
    exact_residual: float | None
    isotropic: bool | None
    pivot_condition: bool
    all_conditions: bool | None

    def to_json(self) -> dict:
        return {
            "coordinates": [format_rational(q) for q in self.coordinates],
            "rows": self.point.to_json()["rows"],
            "exact_residual": self.exact_residual,
            "isotropic": self.isotropic,
            "pivot_condition": self.pivot_condition,
            "all_conditions": self.all_conditions,
        }


@dataclass
class SolutionCertificate:
    coordinates: np.ndarray
    rows: np.ndarray
    residual: float
    paths: list[int]
    sigma_min: float | None = None
    sigma_max: float | None = None
    transverse: bool | None = None
    suspect_multiple: bool = False
    imag_norm: float | None = None
    real: bool | None = None
    real_coordinates: np.ndarray | None = None
    real_residual: float | None = None
    real_rows: np.ndarray | None = None
    membership: list[MembershipCheck] = field(default_factory=list)
    isotropy_residual: float | None = None
    rational: RationalCheck | None = None

    @property
    def multiplicity(self) -> int:
        return len(self.paths)

    @property
    def sigma_min_relative(self) -> float | None:
        if self.sigma_min is None:
            return None
        return self.sigma_min / self.sigma_max if self.sigma_max else 0.0

    @property
    def membership_passed(self) -> bool:
        return all(m.passed for m in self.membership)

    def to_json(self) -> dict:
        return {
            "coordinates": [_cjson(v) for v in self.coordinates],
            "rows": [[_cjson(v) for v in r] for r in self.rows],
            "residual": self.residual,
            "sigma_min": self.sigma_min,
            "sigma_min_relative": self.sigma_min_relative,
            "transverse": self.transverse,
            "multiplicity": self.multiplicity,
            "suspect_multiple": self.suspect_multiple,
            "imag_norm": self.imag_norm,
            "real": self.real,
            "real_residual": self.real_residual,
            "real_coordinates": None if self.real_coordinates is None
            else [float(v) for v in self.real_coordinates],
            "membership": [m.to_json() for m in self.membership],
            "isotropy_residual": self.isotropy_residual,
            "rational": None if self.rational is None else self.rational.to_json(),
        }


@dataclass
class SolveResult:
    problem: SchubertProblem
    config: SolverConfig
    system: SquareSystem
    backend: str
    statuses: list[int]
    solutions: list[SolutionCertificate]
    filtered: list[SolutionCertificate]
    unresolved: int
    retracked: int
    expected: int | None

    def __iter__(self):
        return iter(self.solutions)

    def __len__(self) -> int:
        return len(self.solutions)

    def __getitem__(self, i):
        return self.solutions[i]

    @property
    def path_failures(self) -> int:
        return sum(1 for s in self.statuses if s in (_FAILED, _MAXSTEPS)) + self.unresolved

    @property
    def complete(self) -> bool:
        return self.path_failures == 0

    @property
    def count_matches(self) -> bool | None:
        return None if self.expected is None else len(self.solutions) == self.expected

    @property
    def all_transverse(self) -> bool:
        return all(s.transverse for s in self.solutions)

    @property
    def all_real(self) -> bool:
        return all(s.real for s in self.solutions)

    @property
    def certified(self) -> bool:
        """Complete, oracle count matched (when known), and every certificate passes."""
        return (self.complete and self.count_matches is not False and self.all_transverse
                and self.all_real and all(s.membership_passed for s in self.solutions))

    def to_json(self) -> dict:
        counts = {name: 0 for name in STATUS_NAMES.values()}
        for s in self.statuses:
            counts[STATUS_NAMES[s]] += 1
        return {
            "problem": self.problem.to_json(),
            "unknowns": self.system.nvars,
            "paths": len(self.statuses),
            "path_status": counts,
            "pivot": self.system.pivot,
            "count": len(self.solutions),
            "expected_count": self.expected,
            "count_matches": self.count_matches,
            "complete": self.complete,
            "path_failures": self.path_failures,
            "retracked": self.retracked,
            "filtered": len(self.filtered),
            "all_transverse": self.all_transverse,
            "all_real": self.all_real,
            "certified": self.certified,
            "solutions": [s.to_json() for s in self.solutions],
        }


# ---------------------------------------------------------------------------
# oracles

def expected_count(problem: SchubertProblem) -> int | None:
    """Solution count from tableaux when at most one condition has weight above 1."""
    heavy = [c for c in problem.conditions if weight(problem.shape(c)) > 1]
    if len(heavy) > 1:
        return None
    if problem.space == "Gr":
        d, w = problem.d, problem.m - problem.d
        if not heavy:
            return rect_syt_count(d, w)
        return skew_rect_count(d, w, heavy[0].shape)
    n = problem.d
    if not heavy:
        return shifted_syt_count(tuple(range(n, 0, -1)))
    return skew_shifted_count(n, heavy[0].shape)


# ---------------------------------------------------------------------------
# tracking

def _tracker_params(cfg: SolverConfig) -> tuple:
    return (cfg.step_min, cfg.step_max, cfg.step_init, cfg.corrector_tol, cfg.endgame_radius,
            cfg.endgame_tol, cfg.divergence, cfg.max_newton, cfg.max_steps)


def _make_tracker(system: SquareSystem, gamma: complex, params: tuple, backend: str | None):
    return tracker_class(backend)(system.coeffs, system.exps, system.term_eq, system.degrees,
                                  gamma, params)


def _track_chunk(args):
    coeffs, exps, term_eq, degrees, gamma, params, backend, jobs = args
    tr = tracker_class(backend)(coeffs, exps, term_eq, degrees, gamma, params)
    return [(i, *tr.track(x0)) for i, x0 in jobs]


def start_points(degrees) -> list[np.ndarray]:
    """Roots of ``x_i^(d_i) = 1`` in lexicographic order of the root indices."""
    degrees = [int(d) for d in degrees]
    return [np.exp(2j * np.pi * np.array(k, dtype=float) / np.array(degrees, dtype=float))
            for k in itertools.product(*[range(d) for d in degrees])]


def _track_all(system, gamma, params, backend, starts, workers):
    jobs = list(enumerate(starts))
    if workers > 1 and len(jobs) > 1:
        chunks = [jobs[k::workers] for k in range(workers)]
        args = [(system.coeffs, system.exps, system.term_eq, system.degrees, gamma, params, backend, c)
                for c in chunks if c]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            out = [r for part in pool.map(_track_chunk, args) for r in part]
    else:
        tr = _make_tracker(system, gamma, params, backend)
        out = [(i, *tr.track(x0)) for i, x0 in jobs]
    out.sort(key=lambda r: r[0])
    return out


def _refine(tracker, system: SquareSystem, x, cfg: SolverConfig):
    x, _, _ = tracker.refine(x, cfg.refine_tol * 1e-2, 12)
    return x, system.relative_residual(x)


def _escaping(system: SquareSystem, x, cfg: SolverConfig) -> bool:
    """A stalled endpoint that is large and nowhere near solving the target.

    Paths to infinity can stall inside the endgame radius before reaching the
    divergence bound; a relative residual of order one there means the path is
    not approaching a (possibly singular) finite solution.
    """
    return float(np.max(np.abs(x))) > cfg.escape_norm and system.relative_residual(x) > 1e-3


def _close(a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    return float(np.max(np.abs(a - b))) <= tol * (1.0 + float(np.max(np.abs(a))))


def _cluster(points: list[np.ndarray], tol: float) -> list[list[int]]:
    clusters: list[list[int]] = []
    for i, x in enumerate(points):
        for c in clusters:
            if _close(points[c[0]], x, tol):
                c.append(i)
                break
        else:
            clusters.append([i])
    return clusters


# ---------------------------------------------------------------------------
# certification

@lru_cache(maxsize=256)
def _system_for(problem: SchubertProblem) -> SquareSystem:
    return build_square_system(problem)


def _singular_values(system: SquareSystem, x) -> tuple[float, float]:
    s = np.linalg.svd(system.jacobian(x), compute_uv=False)
    return float(s[-1]), float(s[0])


def check_membership(rows: np.ndarray, problem: SchubertProblem, tol: float) -> list[MembershipCheck]:
    out = []
    for c in problem.conditions:
        shape = problem.shape(c)
        lam = tilde_partition(shape) if problem.space == "OG" else shape
        _, worst = float_x_membership(rows, lam, c.point, tol)
        out.append(MembershipCheck(c.point, tuple(shape.parts), worst, worst <= tol))
    return out


def certify_transverse(s: SolutionCertificate, problem: SchubertProblem, cfg: SolverConfig) -> bool:
    """Relative smallest singular value of the local Jacobian above ``tau_j``."""
    system = _system_for(problem)
    if system.nvars == 0:
        s.sigma_min = s.sigma_max = None
        s.transverse = not s.suspect_multiple
        return s.transverse
    s.sigma_min, s.sigma_max = _singular_values(system, s.coordinates)
    s.transverse = bool(s.sigma_max > 0 and s.sigma_min / s.sigma_max > cfg.tau_j
                        and not s.suspect_multiple)
    return s.transverse


def _real_newton(system: SquareSystem, x: np.ndarray, cfg: SolverConfig, iters: int = 20):
    x = np.array(x, dtype=float)
    if np.any(np.abs(system.coeffs.imag) > 0):
        return x, math.inf
    for _ in range(iters):
        F = system.evaluate(x).real
        J = system.jacobian(x).real
        try:
            dx = np.linalg.solve(J, F)
        except np.linalg.LinAlgError:
            break
        x = x - dx
        if np.max(np.abs(dx)) <= 1e-3 * cfg.refine_tol * (1.0 + np.max(np.abs(x))):
            break
    return x, system.relative_residual(x)


def certify_real(s: SolutionCertificate, problem: SchubertProblem, cfg: SolverConfig) -> bool:
    """Project to real coordinates, run real Newton and re-check every condition."""
    system = _system_for(problem)
    x = s.coordinates
    scale = 1.0 + (float(np.max(np.abs(x))) if len(x) else 0.0)
    s.imag_norm = float(np.max(np.abs(x.imag))) / scale if len(x) else 0.0
    if s.imag_norm >= cfg.tau_r:
        s.real = False
        return False
    xr, res = _real_newton(system, x.real, cfg) if len(x) else (np.zeros(0), 0.0)
    s.real_coordinates, s.real_residual = xr, res
    if not res <= cfg.refine_tol:
        s.real = False
        return False
    rows = system.original_rows(xr)
    s.real_rows = rows
    if np.max(np.abs(rows.imag)) > 0 and problem.real_points:
        s.real = False
        return False
    checks = check_membership(rows.real.astype(complex), problem, cfg.membership_tol)
    iso_ok = True
    if problem.space == "OG":
        iso_ok = float_isotropy_residual(rows.real, problem.d) <= cfg.membership_tol
    s.real = bool(all(c.passed for c in checks) and iso_ok)
    if s.real and problem.real_points:
        s.rational = rational_check(system, xr, cfg)
    return s.real


def rational_check(system: SquareSystem, xr: np.ndarray, cfg: SolverConfig) -> RationalCheck:
    """Round real coordinates to nearby rationals and verify what is exactly checkable.

    The pivot condition and (for OG) isotropy hold exactly by construction of
    the chart.  The remaining conditions hold exactly only if the rounded
    point solves the system exactly; otherwise its exact relative residual is
    reported.
    """
    problem = system.problem
    q = [Fraction(float(v)).limit_denominator(cfg.denominator_bound) for v in xr]
    point = system.exact_point(q)
    pivot = problem.conditions[system.pivot]
    member = y_membership if problem.space == "OG" else x_membership
    pivot_ok = member(point, problem.shape(pivot), pivot.point)
    iso = isotropy_check(point, problem.d) if problem.space == "OG" else None
    residual = system.exact_residual(q)
    all_ok = None
    if residual == 0:
        all_ok = all(member(point, problem.shape(c), c.point) for c in problem.conditions)
    return RationalCheck(q, point, residual, iso, pivot_ok, all_ok)


def _canonical_key(x: np.ndarray) -> tuple:
    return tuple(v for z in x for v in (round(float(z.real), 8), round(float(z.imag), 8))) + \
        tuple(v for z in x for v in (float(z.real), float(z.imag)))


# ---------------------------------------------------------------------------

def solve(problem: SchubertProblem, cfg: SolverConfig | None = None, backend: str | None = None) -> SolveResult:
    """All points of a zero-dimensional Schubert intersection, certified.

    Paths whose endpoints coincide at a nonsingular point are re-tracked with
    smaller steps; persistent merges are flagged as suspect multiple points.
    """
    cfg = cfg or SolverConfig()
    system = _system_for(problem)
    expected = expected_count(problem)
    name = resolve_backend(backend)

    if system.nvars == 0:
        cert = SolutionCertificate(np.zeros(0, dtype=complex), system.original_rows(np.zeros(0)),
                                   0.0, [0])
        result = SolveResult(problem, cfg, system, name, [_OK], [cert], [], 0, 0, expected)
        _finish(cert, problem, cfg)
        return result

    if system.bezout > cfg.max_paths:
        raise ProblemError(f"{system.bezout} start paths exceed max_paths={cfg.max_paths}")
    rng = np.random.default_rng(cfg.seed)
    gamma = complex(np.exp(2j * np.pi * rng.random()))
    params = _tracker_params(cfg)
    starts = start_points(system.degrees)
    records = _track_all(system, gamma, params, backend, starts, cfg.workers)
    statuses = [r[1] for r in records]
    tracker = _make_tracker(system, gamma, params, backend)

    finite, unresolved = [], 0
    for i, status, x, *_ in records:
        if status in (_OK, _SINGULAR):
            xr, res = _refine(tracker, system, x, cfg)
            if res <= cfg.refine_tol:
                finite.append((i, xr, res))
            elif status == _SINGULAR and _escaping(system, x, cfg):
                statuses[i] = _DIVERGED
            else:
                unresolved += 1

    # nonsingular clusters mean two paths jumped together: re-track with smaller steps
    retracked = 0
    for attempt in range(2):
        clusters = _cluster([x for _, x, _ in finite], cfg.dedup)
        suspicious = [c for c in clusters if len(c) > 1 and
                      _relative_sigma(system, finite[c[0]][1]) > cfg.tau_j]
        if not suspicious:
            break
        fine = cfg.replace(step_max=cfg.step_max / 8, step_init=cfg.step_init / 8,
                           corrector_tol=cfg.corrector_tol / 10)
        tr_fine = _make_tracker(system, gamma, _tracker_params(fine), backend)
        for c in suspicious:
            for k in c:
                i = finite[k][0]
                status, x, *_ = tr_fine.track(starts[i])
                retracked += 1
                statuses[i] = status
                if status in (_OK, _SINGULAR):
                    xr, res = _refine(tracker, system, x, cfg)
                    finite[k] = (i, xr, res)
        finite = [f for f in finite if statuses[f[0]] in (_OK, _SINGULAR)]

    clusters = _cluster([x for _, x, _ in finite], cfg.dedup)
    solutions, filtered = [], []
    for c in clusters:
        i0, x, res = finite[c[0]]
        cert = SolutionCertificate(x, system.original_rows(x), res, sorted(finite[k][0] for k in c))
        cert.suspect_multiple = len(c) > 1
        loose = check_membership(cert.rows, problem, cfg.loose_membership_tol)
        if not all(m.passed for m in loose):
            filtered.append(cert)
            continue
        solutions.append(cert)
    solutions.sort(key=lambda s: _canonical_key(s.coordinates))
    for cert in solutions:
        _finish(cert, problem, cfg)
    return SolveResult(problem, cfg, system, name, statuses, solutions, filtered, unresolved,
                       retracked, expected)


def _relative_sigma(system: SquareSystem, x) -> float:
    lo, hi = _singular_values(system, x)
    return lo / hi if hi else 0.0


def _finish(cert: SolutionCertificate, problem: SchubertProblem, cfg: SolverConfig) -> None:
    tol = cfg.loose_membership_tol if cert.suspect_multiple else cfg.membership_tol
    cert.membership = check_membership(cert.rows, problem, tol)
    if problem.space == "OG":
        cert.isotropy_residual = float_isotropy_residual(cert.rows, problem.d)
    certify_transverse(cert, problem, cfg)
    certify_real(cert, problem, cfg)


__all__ = [
    "SolutionCertificate",
    "SolveResult",
    "MembershipCheck",
    "RationalCheck",
    "solve",
    "certify_transverse",
    "certify_real",
    "expected_count",
    "check_membership",
    "rational_check",
    "start_points",
]
