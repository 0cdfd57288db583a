import itertools

import pytest
from hypothesis import given, strategies as st

from schubreal.partitions import (
    BarSequence, Partition, StrictPartition, all_strict, bar_sequence, enumerate_box,
    enumerate_strict, rect_syt_count, shifted_diagram, shifted_syt_count, skew_rect_count,
    skew_shifted_count, tilde_partition, untilde, weight, young_diagram,
)


def brute_fillings(cells):
    """Count increasing fillings by trying every permutation."""
    cells = sorted(cells)
    count = 0
    for perm in itertools.permutations(range(len(cells))):
        val = dict(zip(cells, perm))
        if all(val[(r, c)] < val.get((r, c + 1), len(cells)) and val[(r, c)] < val.get((r + 1, c), len(cells))
               for r, c in cells):
            count += 1
    return count


def S(parts, n):
    return StrictPartition(parts, n)


class TestTypes:
    def test_weight(self):
        assert weight(Partition((2, 1), 2, 2)) == 3
        assert weight(()) == 0
        assert weight(S((3, 2, 1), 3)) == 6

    def test_trailing_zeros(self):
        assert Partition((2, 1, 0), 3, 4) == Partition((2, 1), 3, 4)

    @pytest.mark.parametrize("parts,d,cap", [((1, 2), 2, 3), ((4,), 2, 3), ((1, 1, 1), 2, 3), ((-1,), 2, 3)])
    def test_bad_partitions(self, parts, d, cap):
        with pytest.raises(ValueError):
            Partition(parts, d, cap)

    @pytest.mark.parametrize("parts,n", [((2, 2), 3), ((4,), 3), ((0, 1), 3), ((3, 2, 1), 2)])
    def test_bad_strict(self, parts, n):
        with pytest.raises(ValueError):
            StrictPartition(parts, n)

    def test_bar_sequence_type(self):
        with pytest.raises(ValueError):
            BarSequence((1, 1))
        with pytest.raises(ValueError):
            BarSequence((3, -1))


class TestBarTilde:
    def test_bar_examples(self):
        assert bar_sequence(S((2,), 3)).values == (2, -1, -3)
        assert bar_sequence(S((), 3)).values == (-1, -2, -3)
        assert bar_sequence(S((3, 2, 1), 3)).values == (3, 2, 1)

    def test_tilde_examples(self):
        assert tilde_partition(S((2,), 3)).full() == (3, 1, 0)
        assert tilde_partition(S((), 3)).full() == (0, 0, 0)
        assert tilde_partition(S((3, 2, 1), 3)).full() == (4, 4, 4)
        assert tilde_partition(S((1,), 2)).full() == (2, 0)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_doubling_exhaustive(self, n):
        seen = set()
        for sigma in all_strict(n):
            lam = tilde_partition(sigma)
            assert weight(lam) == 2 * weight(sigma)
            assert lam.d == n and lam.cap == n + 1
            assert lam.parts not in seen
            seen.add(lam.parts)
            assert untilde(lam, n) == sigma
        assert len(seen) == 2 ** n

    def test_untilde_rejects(self):
        assert untilde(Partition((1,), 2, 3), 2) is None


class TestEnumeration:
    def test_strict_examples(self):
        assert [s.parts for s in enumerate_strict(2, 1)] == [(1,)]
        assert [s.parts for s in enumerate_strict(2, 3)] == [(2, 1)]
        assert [s.parts for s in enumerate_strict(3, 3)] == [(3,), (2, 1)]

    def test_strict_range(self):
        with pytest.raises(ValueError):
            enumerate_strict(2, 4)

    @pytest.mark.parametrize("n", range(1, 6))
    def test_strict_partitions_all_weights(self, n):
        listed = [s for k in range(n * (n + 1) // 2 + 1) for s in enumerate_strict(n, k)]
        assert sorted(s.parts for s in listed) == sorted(s.parts for s in all_strict(n))

    @given(st.integers(1, 4), st.integers(1, 4), st.data())
    def test_box(self, d, w, data):
        k = data.draw(st.integers(0, d * w))
        got = enumerate_box(d, w, k)
        brute = [p for p in itertools.product(range(w + 1), repeat=d)
                 if sum(p) == k and all(p[i] >= p[i + 1] for i in range(d - 1))]
        assert sorted(p.full() for p in got) == sorted(brute)


class TestCounts:
    def test_shifted_examples(self):
        assert shifted_syt_count((2, 1)) == 1
        assert shifted_syt_count((3, 2, 1)) == 2
        assert shifted_syt_count((1,)) == 1
        assert shifted_syt_count((4, 3, 2, 1)) == 12

    def test_rect_examples(self):
        assert rect_syt_count(2, 2) == 2
        assert rect_syt_count(2, 3) == 5
        assert rect_syt_count(1, 5) == 1
        assert rect_syt_count(3, 3) == 42

    @pytest.mark.parametrize("parts", [(1,), (2,), (2, 1), (3, 1), (3, 2), (3, 2, 1), (4, 2, 1)])
    def test_shifted_vs_permutations(self, parts):
        assert shifted_syt_count(parts) == brute_fillings(shifted_diagram(parts))

    @pytest.mark.parametrize("d,w", [(1, 3), (2, 2), (2, 3), (3, 2), (2, 4)])
    def test_rect_vs_permutations(self, d, w):
        assert rect_syt_count(d, w) == brute_fillings(young_diagram([w] * d))

    def test_skew(self):
        assert skew_rect_count(2, 2, ()) == 2
        assert skew_rect_count(2, 2, (1,)) == 2
        assert skew_rect_count(2, 2, (2,)) == 1
        assert skew_rect_count(2, 3, (2, 1)) == brute_fillings(
            young_diagram([3, 3]) - young_diagram([2, 1]))
        assert skew_shifted_count(3, ()) == 2
        assert skew_shifted_count(3, (2,)) == brute_fillings(
            shifted_diagram([3, 2, 1]) - shifted_diagram([2]))
