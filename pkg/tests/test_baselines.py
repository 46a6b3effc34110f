import numpy as np
import pytest
from scipy import stats

from bgsa.baselines import (
    SetStatistic,
    class_tstats,
    draw_random_subsets,
    gene_zscores,
    ks_signed,
    maxmean,
    mean_abs_z,
    mean_z,
    permutation_pvalues,
    restandardize,
    set_statistics,
)
from bgsa.exceptions import InputError, ParameterDomainError
from bgsa.model import ExpressionDataset, GeneSetCollection
from bgsa.simgen import gen_all_shifted, gen_illustrative


def _noise_dataset(rng, n_genes=200, n_per_class=5):
    n = 2 * n_per_class
    return ExpressionDataset(
        rng.standard_normal((n_genes, n)),
        [f"g{i}" for i in range(n_genes)],
        [f"s{i}" for i in range(n)],
        [0] * n_per_class + [1] * n_per_class,
    )


def _blocks(n_genes, size):
    return GeneSetCollection([np.arange(i, i + size) for i in range(0, n_genes, size)])


class TestGeneScores:
    def test_hand_computed_pooled_t(self):
        t, degenerate = class_tstats(np.array([[0.0, 2.0, 1.0, 3.0]]), [0, 0, 1, 1])
        assert t[0] == pytest.approx(1 / np.sqrt(2))
        assert not degenerate[0]

    def test_zero_pooled_variance_is_flagged(self):
        t, degenerate = class_tstats(np.array([[0.0, 0.0, 1.0, 1.0], [5.0, 5.0, 5.0, 5.0]]), [0, 0, 1, 1])
        np.testing.assert_array_equal(t, [0.0, 0.0])
        np.testing.assert_array_equal(degenerate, [True, True])

    def test_label_swap_negates(self, toy_dataset):
        z = gene_zscores(toy_dataset).z
        swapped = gene_zscores(toy_dataset.with_labels(1 - toy_dataset.class_labels)).z
        np.testing.assert_allclose(swapped, -z)

    def test_matches_scipy(self, rng):
        data = _noise_dataset(rng, n_genes=20)
        expected = stats.ttest_ind(data.values[:, 5:], data.values[:, :5], axis=1).statistic
        np.testing.assert_allclose(gene_zscores(data).z, expected, rtol=1e-10)

    def test_batch_of_labellings(self, rng):
        data = _noise_dataset(rng, n_genes=7)
        labellings = np.array([rng.permutation(data.class_labels) for _ in range(4)])
        batch, _ = class_tstats(data.values, labellings)
        assert batch.shape == (4, 7)
        single, _ = class_tstats(data.values, labellings[2])
        np.testing.assert_allclose(batch[2], single)

    def test_empty_class_rejected(self):
        with pytest.raises(InputError):
            class_tstats(np.zeros((1, 4)), [1, 1, 1, 1])


class TestSetStatistics:
    @pytest.mark.parametrize('z', [
        np.r_[np.full(50, -2.0), np.zeros(50)],
        np.r_[np.full(50, -2.0), np.full(50, 1.5)],
    ])
    def test_maxmean_worked_examples(self, z):
        assert maxmean(z) == 1.0

    def test_maxmean_of_zeros(self):
        assert maxmean(np.zeros(10)) == 0.0

    def test_means(self):
        assert mean_z([1.0, -1.0]) == 0.0
        assert mean_abs_z([1.0, -1.0]) == 1.0
        assert mean_z([2.0, 2.0, 2.0]) == 2.0

    def test_triangle_inequality(self, rng):
        z = rng.standard_normal((100, 15))
        assert np.all(mean_abs_z(z) >= np.abs(mean_z(z)))

    def test_order_invariance_and_negation(self, rng):
        z = rng.standard_normal(30)
        shuffled = rng.permutation(z)
        assert maxmean(shuffled) == pytest.approx(maxmean(z))
        assert maxmean(-z) == pytest.approx(maxmean(z))
        assert mean_abs_z(-z) == pytest.approx(mean_abs_z(z))
        assert mean_z(-z) == pytest.approx(-mean_z(z))
        complement = rng.standard_normal(40)
        assert ks_signed(-z, -complement) == pytest.approx(-ks_signed(z, complement))

    def test_empty_input_rejected(self):
        with pytest.raises(ParameterDomainError):
            maxmean([])

    @pytest.mark.parametrize('z_set, z_comp, expected', [
        ((0.0, 1.0, 2.0), (0.0, 1.0, 2.0), 0.0),
        ((10.0, 11.0, 12.0), (0.0, 1.0, 2.0), 1.0),
        ((-10.0, -11.0), (0.0, 1.0, 2.0), -1.0),
    ])
    def test_ks_examples(self, z_set, z_comp, expected):
        assert ks_signed(z_set, z_comp) == expected

    def test_ks_empty_complement_rejected(self):
        with pytest.raises(ParameterDomainError):
            ks_signed([1.0, 2.0], [])

    def test_ks_magnitude_matches_brute_force(self, rng):
        for _ in range(25):
            a = np.round(rng.standard_normal(rng.integers(1, 25)), 1)
            b = np.round(rng.standard_normal(rng.integers(1, 25)), 1)
            expected = 0.0
            for point in np.concatenate([a, b]):
                fa = sum(1 for value in a if value <= point) / len(a)
                fb = sum(1 for value in b if value <= point) / len(b)
                expected = max(expected, abs(fa - fb))
            assert abs(ks_signed(a, b)) == pytest.approx(expected)

    def test_set_statistics_per_method(self, toy_sets):
        z = np.array([1.0, -1.0, 2.0, 0.0, 3.0, -3.0])
        np.testing.assert_allclose(set_statistics(z, toy_sets, SetStatistic.MEAN_Z), [2 / 3, 1.0, 0.0])
        np.testing.assert_allclose(set_statistics(z, toy_sets, SetStatistic.MAXMEAN), [1.0, 1.0, 1.0])
        ks = set_statistics(z, toy_sets, SetStatistic.KS_SIGNED)
        assert ks[1] == pytest.approx(ks_signed([2.0, 0.0], [1.0, -1.0, 3.0, -3.0]))

    @pytest.mark.parametrize('name, expected', [
        ('maxmean', SetStatistic.MAXMEAN),
        ('mean-z', SetStatistic.MEAN_Z),
        ('ks', SetStatistic.KS_SIGNED),
        ('Mean.abs.z', SetStatistic.MEAN_ABS_Z),
    ])
    def test_parse(self, name, expected):
        assert SetStatistic.parse(name) is expected

    def test_parse_unknown(self):
        with pytest.raises(ParameterDomainError):
            SetStatistic.parse('wilcoxon')


class TestRestandardize:
    def test_constant_scores_are_flagged(self, rng, toy_sets):
        z = np.full(6, 1.5)
        raw = set_statistics(z, toy_sets, SetStatistic.MAXMEAN)
        result = restandardize(raw, z, toy_sets, SetStatistic.MAXMEAN, 100, rng)
        assert result.degenerate.all()
        np.testing.assert_allclose(result.values, 0.0)

    def test_random_sets_center_near_zero(self, rng):
        z = rng.standard_normal(500)
        sets = GeneSetCollection([rng.choice(500, 10, replace=False) for _ in range(300)])
        raw = set_statistics(z, sets, SetStatistic.MAXMEAN)
        result = restandardize(raw, z, sets, SetStatistic.MAXMEAN, 2000, rng)
        assert result.values.mean() == pytest.approx(0.0, abs=0.2)

    def test_equally_shifted_sets_are_unremarkable(self, rng):
        simulated = gen_all_shifted(rng)
        z = gene_zscores(simulated.dataset).z
        raw = set_statistics(z, simulated.sets, SetStatistic.MAXMEAN)
        result = restandardize(raw, z, simulated.sets, SetStatistic.MAXMEAN, 500, rng)
        assert abs(result.values.mean()) < 1.0

    def test_ks_set_covering_every_gene(self, rng):
        z = rng.standard_normal(30)
        sets = GeneSetCollection([np.arange(30), np.arange(5)])
        raw = set_statistics(z, sets, SetStatistic.KS_SIGNED)
        assert raw[0] == 0.0
        result = restandardize(raw, z, sets, SetStatistic.KS_SIGNED, 100, rng)
        np.testing.assert_array_equal(result.degenerate, [True, False])
        assert result.values[0] == 0.0

    def test_set_larger_than_gene_count(self, rng):
        with pytest.raises(ParameterDomainError):
            draw_random_subsets(5, [6], 100, rng)

    def test_too_few_randomizations(self, rng):
        with pytest.raises(ParameterDomainError):
            draw_random_subsets(50, [5], 99, rng)

    def test_subsets_are_distinct_genes(self, rng):
        subsets = draw_random_subsets(30, [4, 30], 100, rng).subsets
        assert subsets[4].shape == (100, 4)
        assert all(len(set(row)) == 4 for row in subsets[4])
        assert all(sorted(row) == list(range(30)) for row in subsets[30])


class TestPermutationPvalues:
    def test_add_one_rule_boundary(self, rng):
        data = ExpressionDataset(np.full((4, 4), 2.0), list('abcd'), list('wxyz'), [0, 0, 1, 1])
        sets = GeneSetCollection([[0, 1], [2, 3]])
        result = permutation_pvalues(data, sets, SetStatistic.MAXMEAN, 1, False, rng)
        np.testing.assert_array_equal(result.perm_pvalue, [1.0, 1.0])

    def test_too_few_distinct_labellings(self, toy_dataset, toy_sets, rng):
        with pytest.raises(ParameterDomainError, match='exhaustive'):
            permutation_pvalues(toy_dataset, toy_sets, SetStatistic.MAXMEAN, 100, False, rng)

    def test_exhaustive_counts_observed_labelling(self, toy_dataset, toy_sets, rng):
        result = permutation_pvalues(toy_dataset, toy_sets, SetStatistic.MEAN_Z, 0, False, rng, exhaustive=True)
        assert result.exhaustive
        assert result.n_permutations == 6
        counts = result.perm_pvalue * 6
        np.testing.assert_allclose(counts, np.round(counts))
        # the observed labelling and its mirror image are always as extreme
        assert np.all(result.perm_pvalue >= 2 / 6)

    def test_exhaustive_limited_to_small_samples(self, rng):
        data = _noise_dataset(rng, n_genes=10, n_per_class=7)
        with pytest.raises(ParameterDomainError):
            permutation_pvalues(data, _blocks(10, 5), SetStatistic.MAXMEAN, 0, False, rng, exhaustive=True)

    def test_deterministic_and_thread_independent(self):
        data = _noise_dataset(np.random.default_rng(1))
        sets = _blocks(200, 20)
        a = permutation_pvalues(data, sets, SetStatistic.MAXMEAN, 150, True, np.random.default_rng(5))
        b = permutation_pvalues(data, sets, SetStatistic.MAXMEAN, 150, True, np.random.default_rng(5), threads=3)
        np.testing.assert_array_equal(a.perm_pvalue, b.perm_pvalue)
        np.testing.assert_array_equal(a.restd_stat, b.restd_stat)

    def test_result_frame(self, rng):
        data = _noise_dataset(rng)
        result = permutation_pvalues(data, _blocks(200, 20), SetStatistic.MEAN_ABS_Z, 100, False, rng)
        frame = result.to_frame()
        assert list(frame.columns) == ['set_name', 'n_genes', 'raw_stat', 'perm_pvalue']
        assert not result.restandardized
        assert frame['perm_pvalue'].between(1 / 101, 1).all()
        np.testing.assert_array_equal(result.effective_stat, result.raw_stat)

    @pytest.mark.slow
    def test_null_calibration(self):
        data = _noise_dataset(np.random.default_rng(2), n_genes=1000, n_per_class=10)
        result = permutation_pvalues(data, _blocks(1000, 20), SetStatistic.MEAN_Z, 500, False, np.random.default_rng(3))
        assert stats.kstest(result.perm_pvalue, 'uniform').pvalue > 1e-3

    @pytest.mark.slow
    def test_shifted_set_is_detected(self):
        hits = 0
        for seed in range(10):
            simulated = gen_illustrative(np.random.default_rng(seed))
            result = permutation_pvalues(
                simulated.dataset, simulated.sets, SetStatistic.MAXMEAN, 1000, True, np.random.default_rng(seed),
            )
            hits += result.perm_pvalue[0] <= 0.01
        assert hits >= 9
