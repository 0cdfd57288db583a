"""Partitions in a d x (m-d) box, strict partitions, and tableaux counts.

A strict partition ``sigma`` of rank ``n`` gets a signed completion (the bar
sequence) and its shift by ``(1, ..., n)``, an ordinary partition in the
``n x (n+1)`` box of weight ``2|sigma|``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Sequence


def _strip(parts: Sequence[int]) -> tuple[int, ...]:
    out = list(int(p) for p in parts)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing parts, at most ``d`` of them, each at most ``cap``.

    Trailing zeros are dropped, so ``Partition((2, 1, 0), 3, 4) == Partition((2, 1), 3, 4)``.
    """

    parts: tuple[int, ...]
    d: int
    cap: int

    def __init__(self, parts: Sequence[int], d: int, cap: int):
        parts = _strip(parts)
        if len(parts) > d:
            raise ValueError(f"{parts} has more than {d} nonzero parts")
        if any(p < 0 for p in parts):
            raise ValueError("negative part")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"{parts} is not weakly decreasing")
        if parts and parts[0] > cap:
            raise ValueError(f"part {parts[0]} exceeds cap {cap}")
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "cap", cap)

    def __getitem__(self, i: int) -> int:
        """1-based part lookup; parts beyond the length are 0."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    def full(self) -> tuple[int, ...]:
        return tuple(self[i] for i in range(1, self.d + 1))

    def to_json(self) -> list[int]:
        return list(self.parts)


@dataclass(frozen=True)
class StrictPartition:
    """Strictly decreasing positive parts with ``sigma^1 <= n``."""

    parts: tuple[int, ...]
    n: int

    def __init__(self, parts: Sequence[int], n: int):
        parts = _strip(parts)
        if any(p <= 0 for p in parts):
            raise ValueError("strict partitions have positive parts")
        if any(parts[i] <= parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"{parts} is not strictly decreasing")
        if len(parts) > n or (parts and parts[0] > n):
            raise ValueError(f"{parts} does not fit rank {n}")
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "n", n)

    def __getitem__(self, i: int) -> int:
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    def to_json(self) -> list[int]:
        return list(self.parts)


@dataclass(frozen=True)
class BarSequence:
    values: tuple[int, ...]

    def __post_init__(self):
        v = self.values
        if any(v[i] <= v[i + 1] for i in range(len(v) - 1)):
            raise ValueError(f"{v} is not strictly decreasing")
        if sorted(abs(x) for x in v) != list(range(1, len(v) + 1)):
            raise ValueError(f"|{v}| is not a permutation of 1..{len(v)}")


def weight(p: Partition | StrictPartition | Sequence[int]) -> int:
    parts = p.parts if hasattr(p, "parts") else p
    return sum(parts)


def bar_sequence(sigma: StrictPartition) -> BarSequence:
    n = sigma.n
    values = []
    for i in range(1, n + 1):
        count = sum(1 for j in range(1, i + 1) if i < j + sigma[j])
        values.append(sigma[i] - i + count)
    bar = BarSequence(tuple(values))
    for i in range(1, n + 1):
        if sigma[i] > 0 and bar.values[i - 1] != sigma[i]:
            raise AssertionError(f"bar sequence disagrees with {sigma} at {i}")
    return bar


def tilde_partition(sigma: StrictPartition) -> Partition:
    """The partition ``bar(sigma) + (1, ..., n)`` in the ``n x (n+1)`` box."""
    n = sigma.n
    bar = bar_sequence(sigma).values
    lam = Partition([b + i for i, b in enumerate(bar, start=1)], n, n + 1)
    if weight(lam) != 2 * weight(sigma):
        raise AssertionError(f"weight of {lam} is not twice that of {sigma}")
    return lam


def untilde(lam: Partition, n: int) -> StrictPartition | None:
    """Inverse of :func:`tilde_partition`, or None when ``lam`` is not in its image."""
    bar = [lam[i] - i for i in range(1, n + 1)]
    if sorted(abs(b) for b in bar) != list(range(1, n + 1)):
        return None
    if any(bar[i] <= bar[i + 1] for i in range(n - 1)):
        return None
    sigma = StrictPartition([b for b in bar if b > 0], n)
    return sigma if tilde_partition(sigma).parts == lam.parts else None


def enumerate_strict(n: int, k: int) -> list[StrictPartition]:
    """All strict partitions of ``k`` with parts at most ``n``.

    Ordered with larger parts first, e.g. ``[(3), (2, 1)]`` for ``n = k = 3``.
    """
    if not 0 <= k <= n * (n + 1) // 2:
        raise ValueError(f"k={k} outside 0..{n * (n + 1) // 2}")
    out: list[tuple[int, ...]] = []

    def rec(remaining: int, max_part: int, acc: list[int]):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for p in range(min(max_part, remaining), 0, -1):
            acc.append(p)
            rec(remaining - p, p - 1, acc)
            acc.pop()

    rec(k, n, [])
    return [StrictPartition(p, n) for p in out]


def enumerate_box(d: int, w: int, k: int) -> list[Partition]:
    """All partitions of ``k`` inside the ``d x w`` box, larger parts first."""
    out: list[tuple[int, ...]] = []

    def rec(remaining: int, max_part: int, slots: int, acc: list[int]):
        if remaining == 0:
            out.append(tuple(acc))
            return
        if slots == 0:
            return
        for p in range(min(max_part, remaining), 0, -1):
            acc.append(p)
            rec(remaining - p, p, slots - 1, acc)
            acc.pop()

    rec(k, w, d, [])
    return [Partition(p, d, w) for p in out]


def all_strict(n: int) -> Iterator[StrictPartition]:
    for size in range(n + 1):
        for parts in combinations(range(n, 0, -1), size):
            yield StrictPartition(parts, n)


# ---------------------------------------------------------------------------
# tableaux counts

ENUMERATION_LIMIT = 12


class OracleDisagreement(AssertionError):
    """The closed formula and the brute-force count differ."""


def _count_fillings(cells: frozenset) -> int:
    """Count standard fillings of a diagram (row/column increasing).

    Places the largest entry in every removable corner in turn; each complete
    filling is visited exactly once.  No memoisation.
    """
    if not cells:
        return 1
    total = 0
    for (r, c) in cells:
        if (r, c + 1) not in cells and (r + 1, c) not in cells:
            total += _count_fillings(cells - {(r, c)})
    return total


def shifted_diagram(parts: Sequence[int]) -> frozenset:
    return frozenset((i, i + j) for i, p in enumerate(parts) for j in range(p))


def young_diagram(parts: Sequence[int]) -> frozenset:
    return frozenset((i, j) for i, p in enumerate(parts) for j in range(p))


def shifted_syt_formula(parts: Sequence[int]) -> int:
    parts = list(parts)
    size = sum(parts)
    num = math.factorial(size)
    den = 1
    for p in parts:
        den *= math.factorial(p)
    from fractions import Fraction

    value = Fraction(num, den)
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            value *= Fraction(parts[i] - parts[j], parts[i] + parts[j])
    if value.denominator != 1:
        raise OracleDisagreement(f"non-integral product formula value {value}")
    return int(value)


def hook_length_count(parts: Sequence[int]) -> int:
    parts = list(parts)
    cols = [sum(1 for p in parts if p > j) for j in range(parts[0])] if parts else []
    prod = 1
    for i, p in enumerate(parts):
        for j in range(p):
            prod *= (p - j - 1) + (cols[j] - i - 1) + 1
    return math.factorial(sum(parts)) // prod


def shifted_syt_count(sigma: StrictPartition | Sequence[int]) -> int:
    """Standard shifted tableaux of shape ``sigma``; formula and enumeration must agree."""
    parts = sigma.parts if isinstance(sigma, StrictPartition) else tuple(sigma)
    formula = shifted_syt_formula(parts)
    if sum(parts) <= ENUMERATION_LIMIT:
        brute = _count_fillings(shifted_diagram(parts))
        if brute != formula:
            raise OracleDisagreement(f"shifted {parts}: formula {formula} != enumeration {brute}")
    return formula


def rect_syt_count(d: int, w: int) -> int:
    """Standard Young tableaux of the ``d x w`` rectangle."""
    if d < 1 or w < 1:
        raise ValueError("rectangle sides must be positive")
    formula = hook_length_count([w] * d)
    if d * w <= ENUMERATION_LIMIT:
        brute = _count_fillings(young_diagram([w] * d))
        if brute != formula:
            raise OracleDisagreement(f"{d}x{w}: hook formula {formula} != enumeration {brute}")
    return formula


@lru_cache(maxsize=None)
def _count_fillings_cached(cells: frozenset) -> int:
    if not cells:
        return 1
    return sum(_count_fillings_cached(cells - {cell}) for cell in cells
               if (cell[0], cell[1] + 1) not in cells and (cell[0] + 1, cell[1]) not in cells)


def skew_rect_count(d: int, w: int, inner: Sequence[int]) -> int:
    """Standard fillings of the ``d x w`` rectangle minus the partition ``inner``.

    Counts the solutions of a Grassmannian problem with one condition ``inner``
    and single boxes elsewhere.
    """
    inner = list(inner) + [0] * (d - len(inner))
    # the complement of inner, rotated by 180 degrees, is a straight shape
    comp = sorted((w - inner[d - 1 - i] for i in range(d)), reverse=True)
    return _count_fillings_cached(young_diagram([p for p in comp if p > 0]))


def skew_shifted_count(n: int, inner: Sequence[int]) -> int:
    """Standard fillings of the shifted staircase ``(n, ..., 1)`` minus shifted ``inner``."""
    outer = shifted_diagram(range(n, 0, -1))
    cells = outer - shifted_diagram(inner)
    return _count_fillings_cached(frozenset(cells))
