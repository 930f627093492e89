import numpy as np
import pytest

from gridneighbors import Neighbor, classify, regress


def _nbrs(labels, dists=None):
    dists = dists or list(range(1, len(labels) + 1))
    return [Neighbor(float(d), i, lab) for i, (d, lab) in enumerate(zip(dists, labels))]


class TestClassify:
    def test_majority(self):
        pred = classify(_nbrs(["A", "A", "B"]))
        assert pred.value == "A"
        assert pred.confidence == pytest.approx(2 / 3)

    def test_single_neighbor(self):
        pred = classify(_nbrs(["B"]))
        assert pred.value == "B"
        assert pred.confidence == 1.0

    def test_tie_goes_to_nearest_member(self):
        pred = classify([Neighbor(1.0, 0, "A"), Neighbor(2.0, 1, "B")])
        assert pred.value == "A"
        # reversed distances flip the winner
        pred = classify([Neighbor(2.0, 0, "A"), Neighbor(1.0, 1, "B")])
        assert pred.value == "B"

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            classify([])

    def test_permutation_invariant(self, rng):
        nbrs = [Neighbor(float(d), i, int(l)) for i, (d, l) in
                enumerate(zip(rng.uniform(0, 10, 9), rng.integers(0, 3, 9)))]
        base = classify(nbrs).value
        for _ in range(5):
            shuffled = [nbrs[i] for i in rng.permutation(len(nbrs))]
            assert classify(shuffled).value == base

    def test_winner_appears_in_input(self, rng):
        for _ in range(50):
            labels = rng.integers(0, 4, int(rng.integers(1, 8)))
            nbrs = _nbrs(list(labels), list(rng.uniform(0, 5, len(labels))))
            assert classify(nbrs).value in set(labels)


class TestRegress:
    def test_mean(self):
        assert regress(_nbrs([1, 2, 3]), "mean").value == 2.0

    def test_even_median_is_midpoint(self):
        assert regress(_nbrs([1, 2, 3, 10]), "median").value == 2.5

    def test_mean_matches_reference_sum(self, rng):
        targets = list(rng.uniform(-5, 5, 11))
        got = regress(_nbrs(targets), "mean").value
        assert got == pytest.approx(sum(targets) / len(targets))

    def test_translation_equivariance(self, rng):
        targets = list(rng.uniform(-5, 5, 7))
        base = regress(_nbrs(targets), "mean").value
        shifted = regress(_nbrs([t + 3.5 for t in targets]), "mean").value
        assert shifted == pytest.approx(base + 3.5)

    def test_empty_and_bad_agg(self):
        with pytest.raises(ValueError):
            regress([], "mean")
        with pytest.raises(ValueError):
            regress(_nbrs([1.0]), "mode")
