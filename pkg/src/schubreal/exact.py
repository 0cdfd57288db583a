"""Exact rational / complex scalars, dense univariate polynomials and small matrices.

Scalars are either :class:`fractions.Fraction` (exact mode) or Python ``complex``
(numeric mode).  Integers are promoted to ``Fraction`` and floats to ``complex``;
mixing the two kinds inside one object raises ``TypeError``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

import numpy as np

NEG_INF = float("-inf")


class NotAPerfectSquare(ArithmeticError):
    """Raised when a polynomial has no exact square root over the rationals."""


class RankAmbiguous(ArithmeticError):
    """Raised when a singular value sits too close to the numeric rank threshold."""


# ---------------------------------------------------------------------------
# scalars

def scalar(value, exact: bool | None = None):
    """Coerce ``value`` to a Fraction or complex; ``exact`` forces the kind."""
    if isinstance(value, bool):
        value = int(value)
    if isinstance(value, Fraction):
        out = value
    elif isinstance(value, Rational):
        out = Fraction(int(value.numerator), int(value.denominator))
    elif isinstance(value, str):
        out = parse_rational(value)
    elif isinstance(value, (float, complex, np.floating, np.complexfloating)):
        out = complex(value)
    elif hasattr(value, "numerator") and hasattr(value, "denominator"):
        # gmpy2.mpq and friends
        out = Fraction(int(value.numerator), int(value.denominator))
    else:
        raise TypeError(f"unsupported scalar {value!r}")
    if exact is True and not isinstance(out, Fraction):
        raise TypeError(f"expected an exact rational, got {value!r}")
    if exact is False:
        out = complex(out)
    if isinstance(out, complex) and not (math.isfinite(out.real) and math.isfinite(out.imag)):
        raise ArithmeticError("non-finite complex scalar")
    return out


def is_exact(value) -> bool:
    return isinstance(value, Fraction) or (isinstance(value, int) and not isinstance(value, bool))


class _Infinity:
    """The point at infinity of the projective line (a singleton)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()


def is_infinity(a) -> bool:
    return a is INFINITY


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or an integer string into a Fraction (no floats accepted)."""
    text = text.strip()
    if not text:
        raise ValueError("empty rational")
    num, _, den = text.partition("/")
    try:
        p = int(num)
        q = int(den) if den else 1
    except ValueError:
        raise ValueError(f"malformed rational {text!r}") from None
    if q == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _kind_of(values: Iterable) -> bool | None:
    """True for exact, False for complex, None if empty."""
    kind = None
    for v in values:
        k = isinstance(v, Fraction)
        if kind is None:
            kind = k
        elif kind != k:
            raise TypeError("mixed exact and complex scalars")
    return kind


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a non-negative rational, or None."""
    if q < 0:
        return None
    p, r = q.numerator, q.denominator
    sp, sr = math.isqrt(p), math.isqrt(r)
    if sp * sp == p and sr * sr == r:
        return Fraction(sp, sr)
    return None


# ---------------------------------------------------------------------------
# polynomials

@dataclass(frozen=True, eq=False)
class Poly:
    """Dense polynomial; ``coeffs[k]`` multiplies ``z**k``.

    Stored in canonical form (no trailing zeros).  ``degree_bound`` is the
    ambient cap (``None`` for unbounded).
    """

    coeffs: tuple
    degree_bound: int | None = None
    exact: bool = True

    def __init__(self, coeffs: Sequence = (), degree_bound: int | None = None, exact: bool | None = None):
        cs = [scalar(c) for c in coeffs]
        kind = _kind_of(cs)
        if kind is None:
            kind = True if exact is None else exact
        elif exact is not None and exact != kind:
            if exact:
                raise TypeError("complex coefficients given to an exact polynomial")
            cs = [complex(c) for c in cs]
            kind = False
        while cs and cs[-1] == 0:
            cs.pop()
        if degree_bound is not None and len(cs) > degree_bound + 1:
            raise ValueError(f"degree {len(cs) - 1} exceeds bound {degree_bound}")
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "degree_bound", degree_bound)
        object.__setattr__(self, "exact", kind)

    @classmethod
    def monomial(cls, k: int, coeff=1, degree_bound: int | None = None) -> "Poly":
        return cls([0] * k + [coeff], degree_bound)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0) if self.exact else 0j

    def padded(self, length: int) -> list:
        zero = Fraction(0) if self.exact else 0j
        if len(self.coeffs) > length:
            raise ValueError("polynomial longer than requested padding")
        return list(self.coeffs) + [zero] * (length - len(self.coeffs))

    def _check(self, other: "Poly"):
        if self.exact != other.exact and not (self.is_zero() or other.is_zero()):
            raise TypeError("mixed exact and complex polynomials")

    def _bound(self, other: "Poly"):
        if self.degree_bound is None or other.degree_bound is None:
            return None
        return max(self.degree_bound, other.degree_bound)

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self.coeff(k) + other.coeff(k) for k in range(n)], self._bound(other),
                    self.exact and other.exact)

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs], self.degree_bound, self.exact)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = scalar(other)
            if isinstance(c, Fraction) != self.exact and self.coeffs:
                raise TypeError("mixed exact and complex scalars")
            return Poly([a * c for a in self.coeffs], self.degree_bound, self.exact)
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Poly([], None, self.exact and other.exact)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out, None, self.exact)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        out = Poly([1] if self.exact else [1.0], None, self.exact)
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, z):
        acc = Fraction(0) if self.exact else 0j
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "Poly(0)"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            c_txt = format_rational(c) if isinstance(c, Fraction) else repr(c)
            terms.append(c_txt if k == 0 else f"{c_txt}*z^{k}")
        return "Poly(" + " + ".join(terms) + ")"

    def with_bound(self, degree_bound: int | None) -> "Poly":
        return Poly(self.coeffs, degree_bound, self.exact)

    def to_json(self) -> list:
        if self.exact:
            return [format_rational(c) for c in self.coeffs]
        return [[c.real, c.imag] for c in self.coeffs]


def poly_derivative(f: Poly) -> Poly:
    return Poly([k * f.coeffs[k] for k in range(1, len(f.coeffs))], f.degree_bound, f.exact)


_BINOM_CACHE: dict[int, list[int]] = {}


def _binomials(n: int) -> list[int]:
    row = _BINOM_CACHE.get(n)
    if row is None:
        row = [math.comb(n, k) for k in range(n + 1)]
        _BINOM_CACHE[n] = row
    return row


def poly_shift(f: Poly, a) -> Poly:
    """Return ``f(z + a)`` by binomial expansion."""
    a = scalar(a, exact=True if f.exact else None)
    if f.exact and not isinstance(a, Fraction):
        raise TypeError("exact polynomial needs an exact shift")
    if not f.exact:
        a = complex(a)
    n = len(f.coeffs)
    out = [Fraction(0) if f.exact else 0j] * n
    for k, c in enumerate(f.coeffs):
        if c == 0:
            continue
        binom = _binomials(k)
        apow = Fraction(1) if f.exact else 1 + 0j
        # c*(z+a)^k = sum_j c*binom(k,j)*a^(k-j) z^j
        for j in range(k, -1, -1):
            out[j] += c * binom[j] * apow
            apow *= a
    return Poly(out, f.degree_bound, f.exact)


def poly_divmod(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    f._check(g)
    rem = list(f.coeffs)
    dg = len(g.coeffs) - 1
    lead = g.coeffs[-1]
    if len(rem) <= dg:
        return Poly([], None, f.exact), f
    quo = [0] * (len(rem) - dg)
    for k in range(len(rem) - 1 - dg, -1, -1):
        c = rem[k + dg] / lead
        quo[k] = c
        if c != 0:
            for j, b in enumerate(g.coeffs):
                rem[k + j] -= c * b
    return Poly(quo, None, f.exact), Poly(rem[:dg], None, f.exact)


def poly_exact_div(f: Poly, g: Poly) -> Poly:
    q, r = poly_divmod(f, g)
    if not r.is_zero():
        raise ArithmeticError("inexact polynomial division")
    return q


def canonical_projective(f: Poly) -> Poly:
    """Scale so the lowest-degree nonzero coefficient is 1."""
    for c in f.coeffs:
        if c != 0:
            return f * (1 / c) if f.exact else Poly([x / c for x in f.coeffs], f.degree_bound, False)
    return f


def poly_exact_sqrt(h: Poly) -> Poly:
    """Exact square root of a rational polynomial.

    Coefficients are matched from the top degree down, then ``p*p == h`` is
    verified.  The sign is fixed so the lowest nonzero coefficient is positive.
    """
    if not h.exact:
        raise TypeError("poly_exact_sqrt needs exact coefficients")
    if h.is_zero():
        raise ValueError("square root of the zero polynomial")
    D = h.degree
    if D % 2:
        raise NotAPerfectSquare(f"odd degree {D}")
    half = D // 2
    lead = rational_sqrt(h.coeffs[-1])
    if lead is None:
        raise NotAPerfectSquare(f"leading coefficient {h.coeffs[-1]} is not a rational square")
    p = [Fraction(0)] * (half + 1)
    p[half] = lead
    for k in range(1, half + 1):
        # coefficient of z^(D-k) in p^2
        s = h.coeffs[D - k]
        for i in range(half - k + 1, half):
            j = D - k - i
            if half - k < j <= half:
                s -= p[i] * p[j]
        p[half - k] = s / (2 * lead)
    root = Poly(p, None, True)
    if root * root != h:
        raise NotAPerfectSquare("coefficient matching does not square back to the input")
    low = next(c for c in root.coeffs if c != 0)
    if low < 0:
        root = -root
    return root.with_bound(h.degree_bound // 2 if h.degree_bound is not None else None)


def poly_root_multiplicity(h: Poly, a, ambient_degree: int | None = None) -> int:
    """Largest k with ``(z+a)^k | h``; for ``a`` infinite, ``ambient - deg h``."""
    if h.is_zero():
        raise ValueError("multiplicity of the zero polynomial")
    if is_infinity(a):
        amb = ambient_degree if ambient_degree is not None else h.degree_bound
        if amb is None:
            raise ValueError("ambient degree needed for the point at infinity")
        return amb - h.degree
    root = -scalar(a, exact=True if h.exact else None)
    k = 0
    cs = list(h.coeffs)
    while len(cs) > 1:
        # synthetic division by (z - root)
        acc = 0
        quo = [0] * (len(cs) - 1)
        for i in range(len(cs) - 1, 0, -1):
            acc = acc * root + cs[i]
            quo[i - 1] = acc
        rem = acc * root + cs[0]
        if (rem != 0) if h.exact else abs(rem) > 0:
            break
        cs = quo
        k += 1
    return k


# ---------------------------------------------------------------------------
# matrices

@dataclass(frozen=True)
class Mat:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length must equal rows*cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Mat":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        entries = tuple(scalar(v) for r in rows for v in r)
        _kind_of(entries)
        return cls(len(rows), cols, entries)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Mat":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def exact(self) -> bool:
        kind = _kind_of(self.entries)
        return True if kind is None else kind

    def transpose(self) -> "Mat":
        return Mat(self.cols, self.rows,
                   tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def vstack(self, other: "Mat") -> "Mat":
        if self.cols != other.cols:
            raise ValueError("column mismatch")
        return Mat(self.rows + other.rows, self.cols, self.entries + other.entries)

    def to_numpy(self) -> np.ndarray:
        return np.array([complex(v) for v in self.entries], dtype=complex).reshape(self.rows, self.cols)


def _integer_rows(rows: list[list[Fraction]]) -> list[list[int]]:
    out = []
    for r in rows:
        lcm = 1
        for v in r:
            lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
        out.append([int(v * lcm) for v in r])
    return out


def _bareiss_rank(rows: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination on an integer matrix."""
    a = [r[:] for r in rows]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if a[r][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        for r in range(rank + 1, nrows):
            arc = a[r][col]
            row_r, row_p = a[r], a[rank]
            for c in range(col, ncols):
                row_r[c] = (row_r[c] * p - arc * row_p[c]) // prev
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def rank(M: Mat | Sequence[Sequence], threshold: float = 1e-8, margin: float = 100.0) -> int:
    """Exact rank for rational input; numeric rank via SVD for complex input.

    ``threshold`` is relative to the largest singular value.  In numeric mode a
    singular value inside ``(threshold/margin, threshold*margin)`` makes the
    rank ambiguous and raises :class:`RankAmbiguous`.
    """
    if not isinstance(M, Mat):
        M = Mat.from_rows(M) if len(M) else Mat(0, 0, ())
    if M.rows == 0 or M.cols == 0:
        return 0
    if M.exact:
        return _bareiss_rank(_integer_rows([[Fraction(v) for v in r] for r in M.to_rows()]))
    s = np.linalg.svd(M.to_numpy(), compute_uv=False)
    if s[0] == 0:
        return 0
    rel = s / s[0]
    lo, hi = threshold / margin, threshold * margin
    if np.any((rel > lo) & (rel < hi)):
        raise RankAmbiguous(f"singular values too close to threshold {threshold}: {rel}")
    return int(np.sum(rel > threshold))


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Exact reduced row echelon form scanning columns left to right."""
    a = [[Fraction(v) for v in r] for r in rows]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][col]
        a[r] = [v * inv for v in a[r]]
        for i in range(nrows):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return a[:r], pivots


def det_exact(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    a = [[Fraction(v) for v in r] for r in rows]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        p = a[col][col]
        det *= p
        for i in range(col + 1, n):
            if a[i][col] != 0:
                f = a[i][col] / p
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return det


def nullspace_exact(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of the right nullspace ``{v : rows @ v = 0}``."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][f]
        basis.append(v)
    return basis

