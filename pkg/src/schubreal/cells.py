"""Affine coordinates on Schubert cells relative to the flag at infinity.

A point of the cell ``X°_lam(oo)`` has a unique basis in degree-echelon form:
row ``i`` has leading term ``z^{p_i}`` (``p_i = m-d+i-lam^i-1``), and zero
coefficients in the other rows' leading columns.  The remaining lower
coefficients are free.

For the orthogonal Grassmannian the cell ``Y°_sigma(oo)`` sits inside
``X°_{tilde sigma}(oo)``.  In echelon form the Gram equations are triangular:
pairing the rows with leading degrees ``j >= k`` (``j + k > 2n``) reads::

    G_{2n-k} x[j, 2n-k] + G_j x[k, 2n-j] + G_n x[j, n] x[k, n] = 0

with ``G_a = <z^a, z^(2n-a)>``, so ``x[j, 2n-k]`` is determined by free
coordinates and every such cell is an affine space of dimension ``N - |sigma|``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .partitions import Partition, StrictPartition, tilde_partition


def gr_pivots(lam: Partition, d: int, m: int) -> tuple[int, ...]:
    """Leading degrees of the echelon basis of a point in ``X°_lam(oo)``."""
    return tuple(m - d + i - lam[i] - 1 for i in range(1, d + 1))


def _G(a: int, N: int) -> int:
    return (-1) ** a * math.factorial(a) * math.factorial(N - a)


@dataclass(frozen=True)
class CellChart:
    """Coordinates on one Schubert cell at infinity.

    ``free`` lists the ``(row, column)`` positions of the coordinates, in order.
    ``dependent`` maps OG positions to the pair ``(j, k)`` of leading degrees
    whose Gram equation determines them.
    """

    d: int
    m: int
    pivots: tuple[int, ...]
    free: tuple[tuple[int, int], ...]
    dependent: tuple[tuple[tuple[int, int], tuple[int, int]], ...] = ()
    orthogonal: bool = False

    @property
    def dim(self) -> int:
        return len(self.free)

    @property
    def n(self) -> int:
        return self.d

    def rows(self, values: Sequence, one, zero, const: Callable[[Fraction], object] | None = None) -> list[list]:
        """Basis rows for the given free values.

        ``one``/``zero`` are the domain's units and ``const`` embeds rational
        constants, so the same code serves Fractions, complex numbers and
        polynomial-ring elements.
        """
        if len(values) != len(self.free):
            raise ValueError(f"expected {len(self.free)} coordinates, got {len(values)}")
        if const is None:
            const = lambda q: q  # noqa: E731
        row_of = {p: r for r, p in enumerate(self.pivots)}
        M = [[zero] * self.m for _ in range(self.d)]
        for r, p in enumerate(self.pivots):
            M[r][p] = one
        for (r, c), v in zip(self.free, values):
            M[r][c] = v
        if self.orthogonal:
            N = self.m - 1
            n = self.d
            for (r, c), (j, k) in self.dependent:
                rj, rk = row_of[j], row_of[k]
                xjn = M[rj][n] if n < j else zero
                xkn = M[rk][n] if n < k else zero
                if j == k:
                    M[r][c] = xjn * xjn * const(Fraction(-_G(n, N), 2 * _G(N - j, N)))
                else:
                    M[r][c] = (M[rk][N - j] * const(Fraction(-_G(j, N), _G(N - k, N)))
                               + xjn * xkn * const(Fraction(-_G(n, N), _G(N - k, N))))
        return M

    def exact_rows(self, values: Sequence[Fraction]) -> list[list[Fraction]]:
        return self.rows([Fraction(v) for v in values], Fraction(1), Fraction(0))

    def complex_rows(self, values: Sequence[complex]):
        import numpy as np

        M = self.rows([complex(v) for v in values], 1 + 0j, 0j, lambda q: float(q))
        return np.array(M, dtype=complex)

    def coordinates_of(self, rows: Sequence[Sequence]) -> list:
        """Free coordinates of a basis already in this chart's echelon form."""
        return [rows[r][c] for (r, c) in self.free]


def gr_chart(lam: Partition | Sequence[int], d: int, m: int) -> CellChart:
    if not isinstance(lam, Partition):
        lam = Partition(lam, d, m - d)
    piv = gr_pivots(lam, d, m)
    pset = set(piv)
    free = tuple((r, c) for r, p in enumerate(piv) for c in range(p) if c not in pset)
    return CellChart(d, m, piv, free)


def og_chart(sigma: StrictPartition | Sequence[int], n: int) -> CellChart:
    if not isinstance(sigma, StrictPartition):
        sigma = StrictPartition(sigma, n)
    m = 2 * n + 1
    N = 2 * n
    piv = gr_pivots(tilde_partition(sigma), n, m)
    pset = set(piv)
    if n in pset or any(N - p in pset for p in piv):
        raise AssertionError(f"pivots {piv} are not those of an isotropic cell")
    dep = {}
    for j in piv:
        for k in piv:
            if k <= j and j + k > N:
                dep[(piv.index(j), N - k)] = (j, k)
    free = tuple((r, c) for r, p in enumerate(piv) for c in range(p)
                 if c not in pset and (r, c) not in dep)
    dependent = tuple(sorted(dep.items()))
    chart = CellChart(n, m, piv, free, dependent, True)
    if chart.dim != n * (n + 1) // 2 - sum(sigma.parts):
        raise AssertionError(f"cell dimension {chart.dim} for {sigma.parts} is wrong")
    return chart
