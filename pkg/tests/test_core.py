import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gridneighbors import LabeledPoint, Neighbor, NeighborBuffer, distance


class TestDistance:
    def test_euclidean_345(self):
        assert distance((0, 0), (3, 4), "euclidean") == 5.0

    def test_identity(self):
        for metric in ("euclidean", "manhattan", "chebyshev"):
            assert distance((1, 1), (1, 1), metric) == 0.0

    def test_manhattan(self):
        assert distance((0, 0), (3, 4), "manhattan") == 7.0

    def test_chebyshev(self):
        assert distance((0, 0), (3, 4), "chebyshev") == 4.0

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            distance((0, 0), (1, 2, 3))

    def test_unknown_metric(self):
        with pytest.raises(ValueError):
            distance((0,), (1,), "cosine")

    @given(
        st.lists(st.floats(-1e6, 1e6), min_size=1, max_size=6),
        st.data(),
        st.sampled_from(["euclidean", "manhattan", "chebyshev"]),
    )
    def test_symmetry_and_identity(self, a, data, metric):
        b = data.draw(st.lists(st.floats(-1e6, 1e6), min_size=len(a), max_size=len(a)))
        assert distance(a, b, metric) == distance(b, a, metric)
        assert distance(a, a, metric) == 0.0


class TestLabeledPoint:
    def test_rejects_nan(self):
        with pytest.raises(ValueError):
            LabeledPoint([1.0, float("nan")], 0, 0)

    def test_rejects_inf(self):
        with pytest.raises(ValueError):
            LabeledPoint([math.inf], 0, 0)


def _oracle_topk(pushes, k):
    return sorted(pushes)[:k]


class TestNeighborBuffer:
    def test_fills_then_replaces(self):
        buf = NeighborBuffer(3)
        for i, d in enumerate([5.0, 2.0, 9.0]):
            assert buf.push(Neighbor(d, i))
        assert buf.push(Neighbor(4.0, 3))
        assert [n.distance for n in buf.neighbors()] == [2.0, 4.0, 5.0]

    def test_rejects_worse(self):
        buf = NeighborBuffer(3)
        for i, d in enumerate([2.0, 4.0, 5.0]):
            buf.push(Neighbor(d, i))
        assert not buf.push(Neighbor(7.0, 3))
        assert [n.distance for n in buf.neighbors()] == [2.0, 4.0, 5.0]

    def test_ties_keep_lowest_indices(self):
        buf = NeighborBuffer(2)
        for i in (3, 1, 2):
            buf.push(Neighbor(1.0, i))
        assert [n.point_index for n in buf.neighbors()] == [1, 2]

    def test_capacity_validation(self):
        with pytest.raises(ValueError):
            NeighborBuffer(0)

    @settings(max_examples=300)
    @given(
        st.lists(
            st.tuples(st.floats(0, 100), st.integers(0, 50)),
            min_size=1,
            max_size=40,
        ),
        st.integers(1, 8),
    )
    def test_matches_sort_and_truncate_oracle(self, pushes, k):
        # Distinct indices: a real push stream never repeats a point.
        pushes = [(d, i) for i, (d, _) in enumerate(pushes)]
        buf = NeighborBuffer(k)
        for d, i in pushes:
            buf.push(Neighbor(d, i))
        got = [(n.distance, n.point_index) for n in buf.neighbors()]
        assert got == _oracle_topk(pushes, k)

    @settings(max_examples=300)
    @given(
        st.lists(st.floats(0, 100), min_size=1, max_size=40),
        st.integers(1, 8),
    )
    def test_accepted_iff_contents_change(self, dists, k):
        buf = NeighborBuffer(k)
        for i, d in enumerate(dists):
            before = [(n.distance, n.point_index) for n in buf.neighbors()]
            accepted = buf.push(Neighbor(d, i))
            after = [(n.distance, n.point_index) for n in buf.neighbors()]
            assert accepted == (before != after)
