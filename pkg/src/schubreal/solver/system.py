"""Local polynomial systems for Schubert problems.

The heaviest condition is moved to infinity by shifting its point to 0 and
reversing coefficients.  On flag points this is ``a -> oo``, ``b -> 1/(b-a)``,
``oo -> 0``, and the cell of the moved condition has affine coordinates.  On that cell the Wronskian
(for OG, its square root ``P``) is monic of fixed degree ``D`` equal to the
number of coordinates, and every other condition only fixes its roots.  The
system is therefore ``q_j(x) = c_j`` for ``j < D``, where ``q`` is the monic
Wronskian / ``P`` and ``c`` the coefficients of ``prod (z + b')^(k_b)``.

The finite moved points are then centred and scaled into ``[-1, 1]`` by an
affine change ``z -> s z - c``; it fixes infinity and maps osculating flags to
osculating flags, and keeps the target coefficients of moderate size.

For single-box conditions this is exactly the intersection.  A condition of
weight ``k > 1`` at ``b`` becomes "root of order ``k`` at ``b``", which is the
union over all shapes of weight ``k``; the solver filters by membership.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

import numpy as np

from ..cells import CellChart, gr_chart, og_chart
from ..exact import is_infinity
from ..geometry import SubspacePoint, transform_rows
from ..partitions import weight
from .problem import NonSquareSystem, SchubertProblem

Monomial = tuple[int, ...]


def _vandermonde(S) -> int:
    v = 1
    for i in range(len(S)):
        for j in range(i + 1, len(S)):
            v *= S[j] - S[i]
    return v


def _maximal_minors(rows, m: int):
    """All ``d x d`` minors of a ``d x m`` matrix, keyed by column tuple.

    Builds minors of the leading ``k`` rows from those of ``k - 1`` rows by
    expansion along row ``k``.
    """
    minors = {(): 1}
    for k, row in enumerate(rows):
        nxt = {}
        for S in combinations(range(m), k + 1):
            acc = 0
            for pos, col in enumerate(S):
                entry = row[col]
                if entry == 0:
                    continue
                sub = minors.get(S[:pos] + S[pos + 1:])
                if sub is None or sub == 0:
                    continue
                term = entry * sub
                acc = acc + term if (k - pos) % 2 == 0 else acc - term
            if acc != 0:
                nxt[S] = acc
        minors = nxt
    return minors


@lru_cache(maxsize=64)
def chart_polynomial(space: str, d: int, m: int, shape: tuple[int, ...]):
    """Coefficients of the monic Wronskian (Gr) or ``P`` (OG) on a cell at infinity.

    Returns ``(chart, coeffs)`` with ``coeffs[j]`` a dict ``{exponent: Fraction}``
    in the chart coordinates, for ``j = 0..D`` (``coeffs[D] == {0: 1}``).
    """
    from sympy.polys.domains import QQ
    from sympy.polys.rings import ring

    chart = og_chart(shape, d) if space == "OG" else gr_chart(shape, d, m)
    D = chart.dim
    if D == 0:
        return chart, (({(): Fraction(1)}),)
    names = ",".join(f"x{i}" for i in range(D))
    R, *gens = ring(names, QQ)
    const = lambda q: R.ground_new(QQ(q.numerator, q.denominator))  # noqa: E731
    rows = chart.rows(gens, R.one, R.zero, const)
    base = d * (d - 1) // 2
    top = sum(chart.pivots) - base
    W = [R.zero] * (top + 1)
    for S, minor in _maximal_minors(rows, m).items():
        W[sum(S) - base] += minor * _vandermonde(S)
    lead = W[top]
    if lead != R.ground_new(QQ(_vandermonde(chart.pivots))):
        raise AssertionError("Wronskian leading coefficient is not constant on the cell")
    W = [w * QQ(1, _vandermonde(chart.pivots)) for w in W]
    if space == "OG":
        half = top // 2
        P = [R.zero] * (half + 1)
        P[half] = R.one
        for k in range(1, half + 1):
            s = W[top - k]
            for i in range(half - k + 1, half):
                s -= P[i] * P[top - k - i]
            P[half - k] = s * QQ(1, 2)
        for k in range(top + 1):
            prod = R.zero
            for i in range(max(0, k - half), min(k, half) + 1):
                prod += P[i] * P[k - i]
            if prod != W[k]:
                raise AssertionError("the Wronskian is not a square on this isotropic cell")
        Q = P
    else:
        Q = W
    if len(Q) - 1 != D:
        raise NonSquareSystem(f"degree {len(Q) - 1} differs from cell dimension {D}")
    out = tuple({tuple(e): Fraction(int(c.numerator), int(c.denominator)) for e, c in q.terms()}
                for q in Q)
    return chart, out


def move_point(b, a):
    """Image of flag point ``b`` when ``a`` is sent to infinity."""
    if is_infinity(a):
        return b
    if is_infinity(b):
        return Fraction(0)
    if b == a:
        from ..exact import INFINITY

        return INFINITY
    return 1 / (b - a)


def _normalisation(points: list):
    """Centre ``c`` and scale ``s`` sending the finite points into ``[-1, 1]``."""
    finite = [b for b in points if not is_infinity(b)]
    if not finite:
        return Fraction(0), Fraction(1)
    if all(isinstance(b, Fraction) for b in finite):
        lo, hi = min(finite), max(finite)
        c, s = (lo + hi) / 2, (hi - lo) / 2
        return c, (s if s else Fraction(1))
    vals = [complex(b) for b in finite]
    c = sum(vals) / len(vals)
    s = max(abs(v - c) for v in vals)
    return c, (s if s > 0 else 1.0)


def _denormalise(rows: list[list], c, s) -> list[list]:
    """Rows of ``g`` to rows of ``f(w) = g((w + c) / s)``."""
    rows = transform_rows(rows, c / s) if c else [list(r) for r in rows]
    inv = 1 / s
    out = []
    for r in rows:
        p = inv ** 0
        new = []
        for v in r:
            new.append(v * p)
            p = p * inv
        out.append(new)
    return out


def _target_coefficients(roots: list[tuple[object, int]], D: int) -> list:
    """Coefficients (ascending) of ``prod (z + b)^k``."""
    exact = all(isinstance(b, Fraction) for b, _ in roots)
    poly = [Fraction(1) if exact else 1 + 0j]
    for b, k in roots:
        for _ in range(k):
            nxt = [poly[0] * 0] * (len(poly) + 1)
            for i, c in enumerate(poly):
                nxt[i] += c * b
                nxt[i + 1] += c
            poly = nxt
    if len(poly) != D + 1:
        raise NonSquareSystem(f"target degree {len(poly) - 1} differs from cell dimension {D}")
    return poly


@dataclass
class SquareSystem:
    """``F_j(x) = (q_j(x) - c_j) / s_j`` in the coordinates of the pivot cell."""

    problem: SchubertProblem
    pivot: int
    chart: CellChart
    moved_points: list
    equations: list[dict]
    exact_equations: list[dict] | None
    scales: list[float]
    coeffs: np.ndarray = field(repr=False)
    exps: np.ndarray = field(repr=False)
    term_eq: np.ndarray = field(repr=False)
    degrees: np.ndarray = field(repr=False)
    center: object = Fraction(0)
    scale: object = Fraction(1)

    @property
    def nvars(self) -> int:
        return self.chart.dim

    @property
    def pivot_point(self):
        return self.problem.conditions[self.pivot].point

    @property
    def bezout(self) -> int:
        return int(np.prod(self.degrees)) if self.nvars else 1

    @property
    def dense(self) -> np.ndarray:
        C = np.zeros((self.nvars, len(self.coeffs)), dtype=complex)
        C[self.term_eq, np.arange(len(self.coeffs))] = self.coeffs
        return C

    def _eval(self, x):
        from ._pytrack import eval_terms

        maxdeg = int(self.exps.max()) if self.exps.size else 0
        return eval_terms(x, self.dense, self.exps, maxdeg)

    def evaluate(self, x) -> np.ndarray:
        return self._eval(x)[0]

    def jacobian(self, x) -> np.ndarray:
        return self._eval(x)[1]

    def term_magnitudes(self, x) -> np.ndarray:
        """``sum |c_t x^e_t|`` per equation; denominators for relative residuals."""
        x = np.abs(np.asarray(x, dtype=complex))
        mon = np.prod(x[None, :] ** self.exps, axis=1)
        return np.abs(self.dense) @ mon

    def relative_residual(self, x) -> float:
        """Backward error: ``max_j |F_j(x)| / (1 + sum_t |c_t x^e_t|)``."""
        if not self.nvars:
            return 0.0
        F = np.abs(self.evaluate(x))
        return float(np.max(F / (1.0 + self.term_magnitudes(x))))

    def exact_residual(self, values) -> float | None:
        """Relative residual of the unscaled equations at exact rational values."""
        if self.exact_equations is None:
            return None
        worst = 0.0
        for eq in self.exact_equations:
            total = Fraction(0)
            mag = Fraction(0)
            for e, c in eq.items():
                term = c
                for v, k in zip(values, e):
                    if k:
                        term *= v ** k
                total += term
                mag += abs(term)
            worst = max(worst, float(abs(total) / (1 + mag)))
        return worst

    def chart_rows(self, x) -> np.ndarray:
        return self.chart.complex_rows(list(x))

    def original_rows(self, x) -> np.ndarray:
        """Basis of the solution in the problem's own flag coordinates (complex)."""
        x = np.asarray(x)
        a = self.pivot_point
        frame = (self.center, self.scale) + (() if is_infinity(a) else (a,))
        rational = all(isinstance(v, Fraction) for v in frame)
        if rational and not np.any(np.imag(x)):
            # real coordinates: exact chart and exact change of frame, one rounding at the end
            rows = self.exact_point_rows([Fraction(float(v)) for v in np.real(x)])
            return np.array([[float(v) for v in r] for r in rows], dtype=complex)
        chart = self.chart_rows(x)
        if rational:
            # the change of frame is rational and linear: apply it exactly to both parts
            parts = []
            for part in (chart.real, chart.imag):
                rows = _denormalise([[Fraction(float(v)) for v in r] for r in part], self.center, self.scale)
                if not is_infinity(a):
                    rows = transform_rows(rows, a, True)
                parts.append(np.array(rows, dtype=float))
            return parts[0] + 1j * parts[1]
        rows = _denormalise(chart.tolist(), complex(self.center), complex(self.scale))
        if not is_infinity(a):
            rows = transform_rows(rows, complex(a), True)
        return np.array(rows, dtype=complex)

    def exact_point(self, values) -> SubspacePoint:
        """The exact subspace for rational chart coordinates, in the original frame."""
        return SubspacePoint.from_rows(self.exact_point_rows(values), self.chart.m)

    def exact_point_rows(self, values) -> list[list[Fraction]]:
        rows = self.chart.exact_rows([Fraction(v) for v in values])
        if not (isinstance(self.center, Fraction) and isinstance(self.scale, Fraction)):
            raise TypeError("exact points need rational flag points")
        rows = _denormalise(rows, self.center, self.scale)
        a = self.pivot_point
        if not is_infinity(a):
            if not isinstance(a, Fraction):
                raise TypeError("exact points need a rational pivot")
            rows = transform_rows(rows, a, True)
        return rows


def _spread(problem: SchubertProblem, a) -> float:
    """Smallest gap between moved finite points over their range (larger is better)."""
    pts = []
    for c in problem.conditions:
        b = move_point(c.point, a)
        if not is_infinity(b):
            pts.append(complex(b))
    if len(pts) < 2:
        return 1.0
    gaps = min(abs(p - q) for i, p in enumerate(pts) for q in pts[i + 1:])
    span = max(abs(p - q) for i, p in enumerate(pts) for q in pts[i + 1:])
    return gaps / span


def choose_pivot(problem: SchubertProblem) -> int:
    """Heaviest condition; ties go to the best-spread image of the other points, then list order."""
    best, key = 0, None
    for i, c in enumerate(problem.conditions):
        k = (weight(problem.shape(c)), round(_spread(problem, c.point), 12), -i)
        if key is None or k > key:
            best, key = i, k
    return best


def build_square_system(problem: SchubertProblem) -> SquareSystem:
    problem.validate()
    if not problem.conditions:
        raise NonSquareSystem("no conditions")
    pivot = choose_pivot(problem)
    a = problem.conditions[pivot].point
    shape = problem.shape(problem.conditions[pivot])
    chart, qs = chart_polynomial(problem.space, problem.d, problem.m, tuple(shape.parts))
    D = chart.dim
    moved = [move_point(c.point, a) for c in problem.conditions]
    center, scale = _normalisation([b for i, b in enumerate(moved) if i != pivot])
    moved = [b if is_infinity(b) else (b - center) / scale for b in moved]
    roots = []
    for i, (c, b) in enumerate(zip(problem.conditions, moved)):
        k = weight(problem.shape(c))
        if i != pivot and k:
            if is_infinity(b):
                raise NonSquareSystem("two conditions at infinity")
            roots.append((b, k))
    target = _target_coefficients(roots, D)
    exact = all(isinstance(v, Fraction) for v in target)

    equations, exact_eqs, scales = [], [] if exact else None, []
    for j in range(D):
        eq = dict(qs[j])
        zero = tuple([0] * D)
        eq[zero] = eq.get(zero, Fraction(0)) - target[j]
        eq = {e: c for e, c in eq.items() if c != 0}
        if not any(any(e) for e in eq):
            raise NonSquareSystem(f"equation {j} does not involve the coordinates")
        if exact_eqs is not None:
            exact_eqs.append(eq)
        s = max(abs(complex(c)) for c in eq.values())
        scales.append(s)
        equations.append({e: complex(c) / s for e, c in sorted(eq.items())})

    terms = [(j, e, c) for j, eq in enumerate(equations) for e, c in eq.items()]
    coeffs = np.array([c for _, _, c in terms], dtype=complex)
    exps = np.array([e for _, e, _ in terms], dtype=np.int64).reshape(len(terms), D)
    term_eq = np.array([j for j, _, _ in terms], dtype=np.int64)
    degrees = np.array([max(sum(e) for e in eq) for eq in equations], dtype=np.int64)
    return SquareSystem(problem, pivot, chart, moved, equations, exact_eqs, scales,
                        coeffs, exps, term_eq, degrees, center, scale)
