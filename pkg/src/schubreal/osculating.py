"""Osculating flags of the rational normal curve and the symmetric form on C_2n[z]."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .exact import (
    INFINITY,
    Mat,
    Poly,
    format_rational,
    is_infinity,
    parse_rational,
    poly_derivative,
    poly_shift,
    rank,
    scalar,
)

__all__ = [
    "INFINITY",
    "is_infinity",
    "parse_point",
    "format_point",
    "flag_basis",
    "flag_basis_from_curve",
    "bilinear_form",
    "form_gram",
    "check_orthogonal_flag",
    "check_skew_derivative",
    "check_translation_invariance",
]


def parse_point(value):
    """A flag point: ``"infinity"``, a rational string ``"p/q"``, an int or a Fraction."""
    if is_infinity(value):
        return INFINITY
    if isinstance(value, str):
        text = value.strip().lower()
        if text in ("infinity", "inf", "oo", "∞"):
            return INFINITY
        return parse_rational(text)
    if isinstance(value, (complex, float)):
        return complex(value)
    return scalar(value, exact=True)


def format_point(a) -> str:
    if is_infinity(a):
        return "infinity"
    if isinstance(a, Fraction):
        return format_rational(a)
    return repr(complex(a))


@lru_cache(maxsize=4096)
def _flag_rows(a, i: int, m: int) -> tuple:
    if is_infinity(a):
        return tuple(tuple(Fraction(int(j == k)) for j in range(m)) for k in range(i))
    rows = []
    for e in range(m - i, m):
        rows.append(tuple(Fraction(math.comb(e, k)) * a ** (e - k) if k <= e else Fraction(0)
                          for k in range(m)))
    return tuple(rows)


def flag_basis(a, i: int, m: int) -> Mat:
    """Rows spanning ``F_i(a)`` inside ``C_{m-1}[z]``.

    For finite ``a`` the rows are ``(z+a)^(m-i), ..., (z+a)^(m-1)``; at infinity
    they are ``1, z, ..., z^(i-1)``.
    """
    if not 0 <= i <= m:
        raise ValueError(f"flag index {i} outside 0..{m}")
    a = parse_point(a)
    if not is_infinity(a) and not isinstance(a, Fraction):
        raise TypeError("exact flags need a rational point or infinity")
    rows = _flag_rows(a, i, m)
    return Mat(i, m, tuple(v for r in rows for v in r))


def flag_basis_numeric(a, i: int, m: int):
    """Complex version of :func:`flag_basis` accepting complex points."""
    import numpy as np

    if is_infinity(a):
        return np.eye(m, dtype=complex)[:i]
    a = complex(a)
    out = np.zeros((i, m), dtype=complex)
    for r, e in enumerate(range(m - i, m)):
        for k in range(e + 1):
            out[r, k] = math.comb(e, k) * a ** (e - k)
    return out


def flag_basis_from_curve(a, i: int, m: int) -> Mat:
    """``F_i(a)`` as the span of ``gamma(a), gamma'(a), ..., gamma^(i-1)(a)``.

    ``gamma(t) = (z+t)^(m-1)``; derivatives are taken in ``t`` coefficient by
    coefficient.  Kept as an independent construction for cross-checks.
    """
    a = parse_point(a)
    if is_infinity(a):
        raise ValueError("the curve description needs a finite point")
    N = m - 1
    rows = []
    for j in range(i):
        row = []
        for k in range(m):
            # coefficient of z^k in gamma(t) is binom(N,k) t^(N-k); j-th t-derivative
            e = N - k
            if e < j:
                row.append(Fraction(0))
            else:
                row.append(Fraction(math.comb(N, k) * math.perm(e, j)) * a ** (e - j))
        rows.append(row)
    return Mat.from_rows(rows, m) if rows else Mat(0, m, ())


# ---------------------------------------------------------------------------
# the symmetric form

def _pair_weight(k: int, N: int) -> int:
    """<z^k, z^(N-k)> for the form on C_N[z], N = 2n."""
    return (-1) ** k * math.factorial(k) * math.factorial(N - k)


def bilinear_form(f: Poly | list, g: Poly | list, n: int):
    """The form on ``C_2n[z]`` evaluated on plain coefficient vectors.

    With ``f = sum a_k z^k/k!`` and ``g = sum b_l z^l/l!`` the value is
    ``sum (-1)^k a_k b_(2n-k)``; the factorial rescaling happens here.
    """
    N = 2 * n
    fc = f.coeffs if isinstance(f, Poly) else tuple(f)
    gc = g.coeffs if isinstance(g, Poly) else tuple(g)
    if len(fc) > N + 1 or len(gc) > N + 1:
        raise ValueError(f"degree exceeds {N}")
    exact = all(isinstance(v, (Fraction, int)) for v in (*fc, *gc))
    total = Fraction(0) if exact else 0j
    for k in range(N + 1):
        l = N - k
        if k < len(fc) and l < len(gc) and fc[k] != 0 and gc[l] != 0:
            total += _pair_weight(k, N) * fc[k] * gc[l]
    return total


def form_gram(n: int) -> Mat:
    """Gram matrix of the monomial basis ``1, z, ..., z^2n``."""
    N = 2 * n
    return Mat.from_rows([[_pair_weight(k, N) if k + l == N else 0 for l in range(N + 1)]
                          for k in range(N + 1)], N + 1)


# ---------------------------------------------------------------------------
# exact verifications

@dataclass
class FlagCheck:
    i: int
    orthogonal: bool
    perp_dimension: int
    expected_dimension: int

    @property
    def passed(self) -> bool:
        return self.orthogonal and self.perp_dimension == self.expected_dimension


@dataclass
class OrthogonalFlagReport:
    point: object
    n: int
    checks: list[FlagCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "point": format_point(self.point),
            "n": self.n,
            "passed": self.passed,
            "checks": [{"i": c.i, "orthogonal": c.orthogonal, "perp_dim": c.perp_dimension,
                        "passed": c.passed} for c in self.checks],
        }


def check_orthogonal_flag(a, n: int) -> OrthogonalFlagReport:
    """Exact check that ``F_i(a)`` and ``F_{2n+1-i}(a)`` are orthogonal complements."""
    a = parse_point(a)
    m = 2 * n + 1
    report = OrthogonalFlagReport(a, n)
    gram = form_gram(n)
    for i in range(m + 1):
        Fi = flag_basis(a, i, m)
        Fc = flag_basis(a, m - i, m)
        ortho = all(bilinear_form(list(u), list(v), n) == 0
                    for u in (Fi.row(r) for r in range(Fi.rows))
                    for v in (Fc.row(r) for r in range(Fc.rows)))
        # dim F_i^perp = m - rank(F_i * Gram); F_{m-i} inside it with full rank gives equality
        if i:
            pairing = [[sum(Fi[r, k] * gram[k, c] for k in range(m)) for c in range(m)]
                       for r in range(i)]
            perp_dim = m - rank(pairing)
        else:
            perp_dim = m
        ok_rank = rank(Fc) == m - i if m - i else True
        report.checks.append(FlagCheck(i, ortho and ok_rank, perp_dim, m - i))
    return report


def _random_poly(rng: random.Random, N: int) -> Poly:
    return Poly([Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(N + 1)], N)


@dataclass
class IdentityReport:
    name: str
    trials: int
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"name": self.name, "trials": self.trials, "passed": self.passed,
                "failures": [[p.to_json() for p in f] for f in self.failures]}


def check_skew_derivative(n: int, trials: int = 100, seed: int = 42) -> IdentityReport:
    """``<f', g> == -<f, g'>`` on random exact pairs."""
    rng = random.Random(seed)
    report = IdentityReport("skew_derivative", trials)
    for _ in range(trials):
        f, g = _random_poly(rng, 2 * n), _random_poly(rng, 2 * n)
        if bilinear_form(poly_derivative(f), g, n) != -bilinear_form(f, poly_derivative(g), n):
            report.failures.append((f, g))
    return report


def check_translation_invariance(a, n: int, trials: int = 100, seed: int = 7) -> IdentityReport:
    """``<f(z+a), g(z+a)> == <f, g>`` on random exact pairs."""
    a = scalar(a, exact=True)
    rng = random.Random(seed)
    report = IdentityReport(f"translation_invariance({format_rational(a)})", trials)
    for _ in range(trials):
        f, g = _random_poly(rng, 2 * n), _random_poly(rng, 2 * n)
        if bilinear_form(poly_shift(f, a), poly_shift(g, a), n) != bilinear_form(f, g, n):
            report.failures.append((f, g))
    return report
