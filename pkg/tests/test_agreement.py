import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sigkit import (
    IA,
    KAPPA,
    ConfusionMatrix,
    ProbabilityMatrix,
    UnknownMeasure,
    ZeroTests,
    cohen_kappa,
    information_agreement,
    lookup_measure,
    to_probability,
)

from oracles import kappa_rational, mutual_information_ratio

EXAMPLE = ConfusionMatrix([[8, 3], [0, 9]])


def confusion_matrices(max_n=4, max_entry=30):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(0, max_entry), min_size=n, max_size=n), min_size=n, max_size=n
        ).filter(lambda rows: sum(map(sum, rows)) > 0)
    ).map(ConfusionMatrix)


class TestToProbability:
    def test_example(self):
        P = to_probability(EXAMPLE)
        assert P.entries == ((0.40, 0.15), (0.00, 0.45))

    @pytest.mark.parametrize(
        "rows, expected",
        [
            ([[5, 0], [0, 0]], ((1.0, 0.0), (0.0, 0.0))),
            ([[1, 1], [1, 1]], ((0.25, 0.25), (0.25, 0.25))),
        ],
    )
    def test_trivial(self, rows, expected):
        assert to_probability(ConfusionMatrix(rows)).entries == expected

    def test_zero_tests(self):
        M = ConfusionMatrix([[0, 0], [0, 0]])
        assert M.m == 0
        with pytest.raises(ZeroTests):
            to_probability(M)
        with pytest.raises(ZeroTests):
            KAPPA(M)

    @given(confusion_matrices())
    def test_normalization(self, M):
        assert abs(math.fsum(to_probability(M).flat) - 1.0) <= 1e-12

    @given(confusion_matrices(max_n=3), st.integers(1, 1000))
    def test_scale_invariance(self, M, s):
        P, Q = to_probability(M), to_probability(M.scaled(s))
        assert P == Q
        assert cohen_kappa(P) == cohen_kappa(Q)
        assert information_agreement(P) == information_agreement(Q)


class TestMatrixTypes:
    def test_confusion_rejects_negative_and_fractional(self):
        with pytest.raises(ValueError):
            ConfusionMatrix([[1, -1], [0, 0]])
        with pytest.raises(ValueError):
            ConfusionMatrix([[1.5, 0], [0, 0]])

    def test_confusion_must_be_square(self):
        with pytest.raises(ValueError):
            ConfusionMatrix([[1, 2, 3], [4, 5, 6]])

    def test_probability_tolerance_then_renormalized(self):
        P = ProbabilityMatrix([[0.5, 0.0], [0.0, 0.5 + 5e-10]])
        assert math.fsum(P.flat) == pytest.approx(1.0, abs=1e-15)
        with pytest.raises(ValueError):
            ProbabilityMatrix([[0.5, 0.0], [0.0, 0.5 + 1e-6]])
        with pytest.raises(ValueError):
            ProbabilityMatrix([[1.1, -0.1], [0.0, 0.0]])

    def test_immutable(self):
        with pytest.raises(AttributeError):
            EXAMPLE.entries = ((1,),)


class TestKappa:
    def test_example_anchor(self):
        assert cohen_kappa(to_probability(EXAMPLE)) == pytest.approx(0.70588, abs=1e-5)
        assert cohen_kappa(to_probability(EXAMPLE)) == pytest.approx(12 / 17, abs=1e-15)

    def test_perfect_and_independent(self):
        assert cohen_kappa(ProbabilityMatrix([[0.5, 0], [0, 0.5]])) == 1.0
        assert cohen_kappa(ProbabilityMatrix([[0.25, 0.25], [0.25, 0.25]])) == 0.0

    def test_degenerate_single_cell_is_one(self):
        assert cohen_kappa(ProbabilityMatrix([[0, 0], [0, 1]])) == 1.0

    @given(confusion_matrices(max_n=3, max_entry=12))
    def test_matches_rational_oracle(self, M):
        assert cohen_kappa(to_probability(M)) == pytest.approx(float(kappa_rational(M.flat, M.n)), abs=1e-12)

    @settings(max_examples=50)
    @given(confusion_matrices(max_n=4), st.randoms(use_true_random=False))
    def test_permutation_symmetry(self, M, rnd):
        n = M.n
        perm = list(range(n))
        rnd.shuffle(perm)
        permuted = ConfusionMatrix([[M.entries[perm[i]][perm[j]] for j in range(n)] for i in range(n)])
        assert KAPPA(permuted) == pytest.approx(KAPPA(M), abs=1e-12)


class TestInformationAgreement:
    def test_example_anchor(self):
        assert information_agreement(to_probability(EXAMPLE)) == pytest.approx(0.52115, abs=1e-5)

    def test_independent_is_zero(self):
        assert information_agreement(ProbabilityMatrix([[0.25, 0.25], [0.25, 0.25]])) == 0.0

    def test_diagonal_is_one(self):
        # I = ln 2 and both entropies are ln 2
        p = [0.5, 0.0, 0.0, 0.5]
        info = 0.5 * math.log(0.5 / 0.25) * 2
        assert info / math.log(2) == pytest.approx(1.0, abs=1e-15)
        assert information_agreement(ProbabilityMatrix([p[:2], p[2:]])) == pytest.approx(1.0, abs=1e-15)

    def test_zero_entropy_marginal_is_zero(self):
        assert information_agreement(ProbabilityMatrix([[0.3, 0.7], [0, 0]])) == 0.0

    @given(confusion_matrices(max_n=4))
    def test_matches_entropy_identity(self, M):
        P = to_probability(M)
        expected = min(1.0, max(0.0, mutual_information_ratio(P.flat, P.n)))
        assert information_agreement(P) == pytest.approx(expected, abs=1e-12)


def test_range_containment_random_matrices():
    rng = np.random.default_rng(20240601)
    for _ in range(10_000):
        n = int(rng.integers(1, 5))
        if rng.random() < 0.5:
            counts = rng.integers(0, 6, size=(n, n))
            if counts.sum() == 0:
                counts[0, 0] = 1
            P = to_probability(ConfusionMatrix(counts.tolist()))
        else:
            x = rng.exponential(size=n * n)
            x /= x.sum()
            P = ProbabilityMatrix(x.reshape(n, n).tolist())
        assert -1 - 1e-12 <= cohen_kappa(P) <= 1 + 1e-12
        assert -1e-12 <= information_agreement(P) <= 1 + 1e-12


class TestLookup:
    def test_known(self):
        assert (lookup_measure("kappa").range_min, lookup_measure("kappa").range_max) == (-1.0, 1.0)
        assert (lookup_measure("ia").range_min, lookup_measure("ia").range_max) == (0.0, 1.0)

    @pytest.mark.parametrize("name", ["fleiss", "Kappa", ""])
    def test_unknown(self, name):
        with pytest.raises(UnknownMeasure, match="UnknownMeasure"):
            lookup_measure(name)

    def test_measure_call_routes_confusion_through_probability(self):
        assert KAPPA(EXAMPLE) == cohen_kappa(to_probability(EXAMPLE))
        assert IA(EXAMPLE) == information_agreement(to_probability(EXAMPLE))


def test_all_single_class_matrices():
    for v in range(1, 5):
        M = ConfusionMatrix([[v]])
        assert KAPPA(M) == 1.0
        assert IA(M) == 0.0


def test_every_small_confusion_matrix_in_range():
    for x in itertools.product(range(4), repeat=4):
        if sum(x):
            M = ConfusionMatrix([x[:2], x[2:]])
            assert -1 <= KAPPA(M) <= 1 and 0 <= IA(M) <= 1
