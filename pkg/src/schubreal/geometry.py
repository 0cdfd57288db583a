"""Points of Gr(d, C_{m-1}[z]) and OG(n, C_2n[z]); Schubert conditions, Wronskian and P map."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from .cells import CellChart, gr_chart, og_chart
from .exact import (
    INFINITY,
    Mat,
    NotAPerfectSquare,
    Poly,
    canonical_projective,
    det_exact,
    format_rational,
    is_infinity,
    parse_rational,
    poly_derivative,
    poly_exact_div,
    poly_exact_sqrt,
    poly_root_multiplicity,
    rank,
    rref,
)
from .osculating import bilinear_form, flag_basis, flag_basis_numeric, format_point, parse_point
from .partitions import (
    Partition,
    StrictPartition,
    bar_sequence,
    tilde_partition,
    untilde,
    weight,
)


class NotIsotropic(ValueError):
    """The subspace is not isotropic for the form on C_2n[z]."""


class MembershipDisagreement(AssertionError):
    """Direct Y-membership and membership via the doubled partition differ."""


# ---------------------------------------------------------------------------
# subspace points

def _degree_echelon(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced echelon form keyed on leading degree, rows sorted by degree."""
    m = len(rows[0])
    rev = [list(reversed(r)) for r in rows]
    red, piv = rref(rev)
    out = [list(reversed(r)) for r in reversed(red)]
    return out, [m - 1 - p for p in reversed(piv)]


@dataclass(frozen=True)
class SubspacePoint:
    """A d-dimensional subspace of ``C_{m-1}[z]`` given by exact basis rows.

    The stored basis is canonical: reduced echelon form keyed on leading
    degree, with leading coefficients 1 and rows ordered by degree.
    """

    d: int
    m: int
    basis: Mat

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], m: int | None = None) -> "SubspacePoint":
        rows = [r.padded(m) if isinstance(r, Poly) else list(r) for r in rows]
        if m is None:
            m = len(rows[0])
        rows = [[Fraction(v) if not isinstance(v, str) else parse_rational(v) for v in r] for r in rows]
        if any(len(r) != m for r in rows):
            raise ValueError("ragged basis")
        d = len(rows)
        if d == 0:
            return cls(0, m, Mat(0, m, ()))
        red, piv = _degree_echelon(rows)
        if len(piv) != d:
            raise ValueError(f"basis rows are dependent (rank {len(piv)} < {d})")
        return cls(d, m, Mat.from_rows(red, m))

    @classmethod
    def from_polys(cls, polys: Sequence[Poly], m: int) -> "SubspacePoint":
        return cls.from_rows([p.padded(m) for p in polys], m)

    def rows(self) -> list[list[Fraction]]:
        return self.basis.to_rows()

    def polys(self) -> list[Poly]:
        return [Poly(r, self.m - 1) for r in self.rows()]

    @property
    def leading_degrees(self) -> tuple[int, ...]:
        return tuple(max(c for c, v in enumerate(r) if v != 0) for r in self.rows())

    def to_json(self) -> dict:
        return {"d": self.d, "m": self.m,
                "rows": [[format_rational(v) for v in r] for r in self.rows()]}

    @classmethod
    def from_json(cls, data: dict) -> "SubspacePoint":
        rows = [[parse_rational(str(v)) for v in r] for r in data["rows"]]
        pt = cls.from_rows(rows, int(data["m"]))
        if pt.d != int(data["d"]):
            raise ValueError("row count does not match d")
        return pt

    def to_numpy(self) -> np.ndarray:
        return self.basis.to_numpy()


def transform_rows(rows: Sequence[Sequence], shift=None, reverse: bool = False) -> list[list]:
    """Apply ``f(z) -> z^(m-1) f(1/z)`` (if ``reverse``) and then ``f(z) -> f(z+shift)``."""
    out = [list(r) for r in rows]
    if reverse:
        out = [r[::-1] for r in out]
    if shift is not None and shift != 0:
        shifted = []
        for r in out:
            m = len(r)
            zero = r[0] * 0
            new = [zero] * m
            for k, c in enumerate(r):
                if c == 0:
                    continue
                apow = shift ** 0
                for j in range(k, -1, -1):
                    new[j] += c * math.comb(k, j) * apow
                    apow = apow * shift
            shifted.append(new)
        out = shifted
    return out


def move_from_infinity(point: SubspacePoint, a) -> SubspacePoint:
    """Carry structure at infinity to the finite point ``a`` (reverse, then shift by ``a``).

    The map is orthogonal for the form on ``C_2n[z]`` and sends ``F_i(oo)`` to ``F_i(a)``.
    """
    return SubspacePoint.from_rows(transform_rows(point.rows(), Fraction(a), True), point.m)


# ---------------------------------------------------------------------------
# Schubert conditions

def intersection_dims(x: SubspacePoint, a) -> tuple[int, ...]:
    """``dim(x ∩ F_k(a))`` for ``k = 0..m`` by exact rank."""
    a = parse_point(a)
    dims = []
    for k in range(x.m + 1):
        stacked = x.basis.vstack(flag_basis(a, k, x.m))
        dims.append(x.d + k - rank(stacked))
    return tuple(dims)


def _as_partition(lam, d: int, m: int) -> Partition:
    return lam if isinstance(lam, Partition) else Partition(lam, d, m - d)


def _as_strict(sigma, n: int) -> StrictPartition:
    return sigma if isinstance(sigma, StrictPartition) else StrictPartition(sigma, n)


def x_membership(x: SubspacePoint, lam, a, dims: Sequence[int] | None = None) -> bool:
    lam = _as_partition(lam, x.d, x.m)
    if dims is None:
        dims = intersection_dims(x, a)
    return all(dims[x.m - x.d + i - lam[i]] >= i for i in range(1, x.d + 1))


def cell_identify(x: SubspacePoint, a, dims: Sequence[int] | None = None) -> Partition:
    """The partition ``lam`` with ``x`` in the open cell ``X°_lam(a)``."""
    if dims is None:
        dims = intersection_dims(x, a)
    jumps = [k for k in range(1, x.m + 1) if dims[k] > dims[k - 1]]
    if len(jumps) != x.d:
        raise AssertionError(f"intersection dimensions {dims} do not jump {x.d} times")
    lam = Partition([x.m - x.d + i - k for i, k in enumerate(jumps, start=1)], x.d, x.m - x.d)
    if not x_membership(x, lam, a, dims):
        raise AssertionError("identified cell fails its own membership test")
    return lam


def gram_matrix(y: SubspacePoint, n: int) -> list[list[Fraction]]:
    rows = y.rows()
    return [[bilinear_form(u, v, n) for v in rows] for u in rows]


def isotropy_check(y: SubspacePoint, n: int) -> bool:
    if y.m != 2 * n + 1 or y.d != n:
        raise ValueError(f"expected an {n}-plane in C_{2 * n}[z], got d={y.d}, m={y.m}")
    return all(v == 0 for row in gram_matrix(y, n) for v in row)


def y_membership(y: SubspacePoint, sigma, a, dims: Sequence[int] | None = None) -> bool:
    """Membership in ``Y_sigma(a)``, computed directly and through ``X_{tilde sigma}(a)``."""
    n = y.d
    if not isotropy_check(y, n):
        raise NotIsotropic("y_membership needs an isotropic subspace")
    sigma = _as_strict(sigma, n)
    if dims is None:
        dims = intersection_dims(y, a)
    bar = bar_sequence(sigma).values
    direct = all(dims[1 + n - bar[i - 1]] >= i for i in range(1, n + 1))
    via_x = x_membership(y, tilde_partition(sigma), a, dims)
    if direct != via_x:
        raise MembershipDisagreement(f"Y-membership {direct} but X-membership {via_x} for {sigma.parts}")
    return direct


def strict_cell_identify(y: SubspacePoint, a, dims: Sequence[int] | None = None) -> StrictPartition:
    lam = cell_identify(y, a, dims)
    sigma = untilde(lam, y.d)
    if sigma is None:
        raise AssertionError(f"cell {lam.parts} of an isotropic point is not a doubled strict partition")
    return sigma


# ---------------------------------------------------------------------------
# Wronskian and P

def _poly_det(M: list[list[Poly]]) -> Poly:
    """Bareiss elimination over Q[z]."""
    n = len(M)
    M = [r[:] for r in M]
    sign = 1
    prev = Poly([1])
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if not M[i][k].is_zero()), None)
        if piv is None:
            return Poly([])
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = poly_exact_div(M[i][j] * M[k][k] - M[i][k] * M[k][j], prev)
        prev = M[k][k]
    return M[n - 1][n - 1] * sign


def wronskian_raw(polys: Sequence[Poly]) -> Poly:
    """Determinant of the matrix of derivatives (no normalisation)."""
    d = len(polys)
    if d == 0:
        return Poly([1])
    M = []
    row = list(polys)
    for _ in range(d):
        M.append(row)
        row = [poly_derivative(p) for p in row]
    return _poly_det(M)


def wronskian(x: SubspacePoint) -> Poly:
    """The Wronskian of ``x``, scaled so its lowest nonzero coefficient is 1."""
    w = wronskian_raw(x.polys())
    if w.is_zero():
        raise AssertionError("Wronskian of an independent basis vanished")
    return canonical_projective(w).with_bound(x.d * (x.m - x.d))


def wronskian_plucker(rows: Sequence[Sequence]) -> list:
    """Wronskian coefficients from maximal minors: ``sum_S det(A_S) V(S) z^(|S|-d(d-1)/2)``.

    Works for any scalar type supporting ``+``/``*`` (used for exact cross-checks).
    """
    d = len(rows)
    m = len(rows[0])
    base = d * (d - 1) // 2
    out = [Fraction(0)] * (d * (m - d) + 1)
    for S in combinations(range(m), d):
        vand = 1
        for i in range(d):
            for j in range(i + 1, d):
                vand *= S[j] - S[i]
        minor = det_exact([[r[c] for c in S] for r in rows])
        if minor:
            out[sum(S) - base] += vand * minor
    return out


def p_map(y: SubspacePoint, n: int | None = None) -> Poly:
    """The polynomial ``P(y; z)`` with ``Wr(y; z) = P(y; z)^2``, lowest coefficient 1."""
    n = y.d if n is None else n
    if not isotropy_check(y, n):
        raise NotIsotropic("P is defined on isotropic subspaces only")
    w = wronskian(y)
    p = poly_exact_sqrt(w)
    return canonical_projective(p).with_bound(n * (n + 1) // 2)


@dataclass
class VanishingReport:
    point: object
    wr_multiplicity: int
    cell: Partition
    p_multiplicity: int | None = None
    strict_cell: StrictPartition | None = None

    @property
    def passed(self) -> bool:
        ok = self.wr_multiplicity == weight(self.cell)
        if self.strict_cell is not None:
            ok = ok and self.p_multiplicity == weight(self.strict_cell)
            ok = ok and self.wr_multiplicity == 2 * self.p_multiplicity
        return ok

    def to_json(self) -> dict:
        out = {"point": format_point(self.point), "wr_multiplicity": self.wr_multiplicity,
               "cell": self.cell.to_json(), "passed": self.passed}
        if self.strict_cell is not None:
            out["p_multiplicity"] = self.p_multiplicity
            out["strict_cell"] = self.strict_cell.to_json()
        return out


def vanishing_order_matches_membership(x: SubspacePoint, a, orthogonal: bool = False) -> VanishingReport:
    """Compare the order of vanishing of Wr (and P) at ``a`` with the cell containing ``x``."""
    a = parse_point(a)
    dims = intersection_dims(x, a)
    cell = cell_identify(x, a, dims)
    w = wronskian(x)
    mult = poly_root_multiplicity(w, a, x.d * (x.m - x.d))
    report = VanishingReport(a, mult, cell)
    if orthogonal:
        n = x.d
        p = p_map(x, n)
        report.p_multiplicity = poly_root_multiplicity(p, a, n * (n + 1) // 2)
        report.strict_cell = strict_cell_identify(x, a, dims)
    return report


# ---------------------------------------------------------------------------
# samplers

def _rand_rational(rng: random.Random, span: int = 5, den: int = 4) -> Fraction:
    return Fraction(rng.randint(-span * den, span * den), rng.randint(1, den))


def random_rational_point(rng: random.Random, exclude=(), span: int = 5, den: int = 4) -> Fraction:
    while True:
        a = _rand_rational(rng, span, den)
        if a not in exclude:
            return a


def point_in_cell(chart: CellChart, values: Sequence[Fraction], a) -> SubspacePoint:
    """The point of the cell at infinity with these coordinates, carried to ``a``."""
    pt = SubspacePoint.from_rows(chart.exact_rows(values), chart.m)
    a = parse_point(a)
    return pt if is_infinity(a) else move_from_infinity(pt, a)


def sample_isotropic(n: int, count: int, seed: int = 0, sigma=(), point=None) -> list[SubspacePoint]:
    """Exact random points of ``Y°_sigma(a)`` (default: the open cell at a random rational ``a``).

    Coordinates on the cell are random small rationals; the Gram equations are
    solved in echelon form and the result is moved to ``a`` by an orthogonal map.
    """
    rng = random.Random(seed)
    chart = og_chart(sigma, n)
    out = []
    for _ in range(count):
        values = [_rand_rational(rng, 3, 3) for _ in range(chart.dim)]
        a = random_rational_point(rng) if point is None else point
        y = point_in_cell(chart, values, a)
        if not isotropy_check(y, n):
            raise AssertionError("sampler produced a non-isotropic point")
        out.append(y)
    return out


def sample_grassmannian(d: int, m: int, count: int, seed: int = 0, lam=(), point=None) -> list[SubspacePoint]:
    rng = random.Random(seed)
    chart = gr_chart(lam, d, m)
    out = []
    for _ in range(count):
        values = [_rand_rational(rng, 3, 3) for _ in range(chart.dim)]
        a = random_rational_point(rng) if point is None else point
        out.append(point_in_cell(chart, values, a))
    return out


# ---------------------------------------------------------------------------
# floating-point counterparts (solution verification)

def _orthonormal_rows(A: np.ndarray) -> np.ndarray:
    if A.shape[0] == 0:
        return A
    q, _ = np.linalg.qr(A.conj().T)
    return q.conj().T


def intersection_sines(X: np.ndarray, a, k: int) -> np.ndarray:
    """Sines of the principal angles between ``x`` and ``F_k(a)``, ascending."""
    d, m = X.shape
    Qx = _orthonormal_rows(X)
    if k == 0:
        return np.ones(d)
    F = flag_basis_numeric(a, k, m)
    F = F / np.linalg.norm(F, axis=1, keepdims=True)
    Qf = _orthonormal_rows(F)
    # rows of Qx minus their projection on span(F)
    resid = Qx - (Qx @ Qf.conj().T) @ Qf
    s = np.linalg.svd(resid, compute_uv=False)
    return np.sort(s)


def float_x_membership(X: np.ndarray, lam, a, tol: float = 1e-9) -> tuple[bool, float]:
    """Numeric ``X_lam(a)`` membership; returns (verdict, worst required sine)."""
    d, m = X.shape
    lam = _as_partition(lam, d, m)
    worst = 0.0
    for i in range(1, d + 1):
        if lam[i] == 0:
            continue
        k = m - d + i - lam[i]
        s = intersection_sines(X, a, k)
        worst = max(worst, float(s[i - 1]))
    return worst <= tol, worst


def float_isotropy_residual(X: np.ndarray, n: int) -> float:
    N = 2 * n
    weights = np.array([(-1) ** k * math.factorial(k) * math.factorial(N - k) for k in range(N + 1)], dtype=float)
    scaled = X * weights[None, :]
    gram = scaled @ X[:, ::-1].T
    norms = (np.abs(X) * np.abs(weights)[None, :]) @ np.abs(X[:, ::-1]).T
    return float(np.max(np.abs(gram) / np.maximum(norms, 1e-300)))


def numeric_wronskian(X: np.ndarray) -> np.ndarray:
    """Wronskian coefficients of a complex basis via maximal minors."""
    d, m = X.shape
    base = d * (d - 1) // 2
    out = np.zeros(d * (m - d) + 1, dtype=complex)
    for S in combinations(range(m), d):
        vand = 1
        for i in range(d):
            for j in range(i + 1, d):
                vand *= S[j] - S[i]
        out[sum(S) - base] += vand * np.linalg.det(X[:, S])
    return out


def numeric_poly_sqrt(w: np.ndarray) -> np.ndarray:
    """Square root of a complex polynomial, matching coefficients from the top."""
    nz = np.nonzero(np.abs(w) > 1e-300)[0]
    D = int(nz[-1])
    if D % 2:
        raise NotAPerfectSquare("odd degree")
    half = D // 2
    p = np.zeros(half + 1, dtype=complex)
    p[half] = np.sqrt(w[D])
    for k in range(1, half + 1):
        s = w[D - k]
        for i in range(half - k + 1, half):
            s -= p[i] * p[D - k - i]
        p[half - k] = s / (2 * p[half])
    return p


def projective_distance(f: np.ndarray, g: np.ndarray) -> float:
    """Sine of the angle between two coefficient vectors (0 when proportional)."""
    n = max(len(f), len(g))
    f = np.pad(np.asarray(f, dtype=complex), (0, n - len(f)))
    g = np.pad(np.asarray(g, dtype=complex), (0, n - len(g)))
    g = g / np.linalg.norm(g)
    r = f - (g.conj() @ f) * g
    return float(np.linalg.norm(r) / np.linalg.norm(f))
