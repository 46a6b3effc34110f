import numpy as np
import pytest
from scipy import stats

from bgsa.exceptions import ParameterDomainError
from bgsa.simgen import (
    Scenario,
    SimulationTruth,
    gen_all_shifted,
    gen_efron_shifted,
    gen_illustrative,
    gen_prior_correlation_demo,
    gen_simulation,
    generate,
    random_partition,
)


class TestIllustrative:
    def test_shape_and_counts(self, illustrative):
        data, sets, truth = illustrative
        assert data.values.shape == (1000, 30)
        assert data.class_sizes == (15, 15)
        assert len(sets) == 50
        assert set(sets.set_sizes) == {20}
        assert truth.n_shifted() == 37
        assert [len(truth.shifted_genes[s]) for s in range(4)] == [20, 10, 5, 2]
        assert truth.positive_sets == (0, 1, 2, 3)

    def test_shifted_genes_move(self, illustrative):
        data, _, truth = illustrative
        genes = [g for g, _ in truth.shifted_genes[0]]
        diff = data.values[genes][:, 15:].mean(axis=1) - data.values[genes][:, :15].mean(axis=1)
        assert diff.mean() == pytest.approx(1.0, abs=0.3)

    def test_unshifted_matrix_is_the_raw_draw(self):
        data, _, truth = gen_illustrative(np.random.default_rng(4), shift=1.7)
        raw = np.random.default_rng(4).standard_normal((1000, 30))
        np.testing.assert_allclose(truth.unshifted_values(data), raw, rtol=0, atol=1e-12)

    def test_zero_shift_keeps_truth(self):
        data, _, truth = gen_illustrative(np.random.default_rng(4), shift=0.0)
        np.testing.assert_array_equal(data.values, np.random.default_rng(4).standard_normal((1000, 30)))
        assert truth.positive_sets == (0, 1, 2, 3)


def test_all_shifted_has_no_special_set():
    _, sets, truth = gen_all_shifted(np.random.default_rng(0))
    assert truth.n_shifted() == 500
    assert all(len(truth.shifted_genes[s]) == 10 for s in range(50))
    assert truth.positive_sets == ()
    assert not truth.set_labels(len(sets)).any()


def test_efron_shifted_design():
    data, _, truth = gen_efron_shifted(np.random.default_rng(0))
    assert data.class_sizes == (25, 25)
    assert {shift for entries in truth.shifted_genes.values() for _, shift in entries} == {2.5}


class TestSimulations:
    @pytest.mark.parametrize('k', range(1, 7))
    def test_common_frame(self, k):
        data, sets, truth = gen_simulation(k, np.random.default_rng(k))
        assert data.values.shape == (1000, 10)
        assert data.class_sizes == (5, 5)
        assert len(sets) == 50
        assert np.all(sets.membership_counts(1000) >= 1)
        assert truth.positive_sets == (0, 1, 2, 3, 4)
        assert truth.scenario is Scenario(f"sim{k}")
        assert all(len(truth.shifted_genes[s]) >= 1 for s in range(5))

    @pytest.mark.parametrize('k', [2, 3, 5])
    def test_gamma_margins_are_positive(self, k):
        data, _, truth = gen_simulation(k, np.random.default_rng(10 + k))
        assert np.all(truth.unshifted_values(data) > 0)

    def test_sim2_without_shifts_is_positive(self):
        data, _, _ = gen_simulation(2, np.random.default_rng(3), n_positive=0)
        assert np.all(data.values > 0)

    def test_partition_sizes(self, rng):
        parts = random_partition(1000, 50, rng)
        sizes = [len(p) for p in parts]
        assert sum(sizes) == 1000
        assert min(sizes) >= 5
        np.testing.assert_array_equal(np.sort(np.concatenate(parts)), np.arange(1000))

    def test_partition_needs_room(self, rng):
        with pytest.raises(ParameterDomainError):
            random_partition(20, 5, rng)

    def test_sim4_shifts_one_gene_in_a_third_of_null_sets(self):
        _, sets, truth = gen_simulation(4, np.random.default_rng(8))
        null_shifted = {s: entries for s, entries in truth.shifted_genes.items() if s >= 5}
        assert len(null_shifted) == 15
        for s, entries in null_shifted.items():
            assert len(entries) == 1
            gene, shift = entries[0]
            assert shift == 2.0
            assert gene in sets.sets[s]
        assert not truth.set_labels(50)[list(null_shifted)].any()

    def test_sim5_pairs_recorded(self):
        _, _, truth = gen_simulation(5, np.random.default_rng(9))
        assert len(truth.correlated_pairs) == 100
        assert all(-1 <= rho <= 1 and i != j for i, j, rho in truth.correlated_pairs)

    def test_sim5_coupled_pairs_follow_drawn_coefficient(self):
        data, _, truth = gen_simulation(5, np.random.default_rng(12), n_samples=2000)
        base = truth.unshifted_values(data)
        genes = [g for i, j, _ in truth.correlated_pairs for g in (i, j)]
        counts = np.bincount(genes, minlength=data.n_genes)
        checked = 0
        for i, j, rho in truth.correlated_pairs:
            if counts[i] > 1 or counts[j] > 1:
                continue
            expected = 6 / np.pi * np.arcsin(rho / 2)
            assert stats.spearmanr(base[i], base[j]).statistic == pytest.approx(expected, abs=0.12)
            checked += 1
        assert checked > 0

    @pytest.mark.parametrize('k', [1, 2, 3, 4])
    def test_genes_are_uncorrelated_without_coupling(self, k):
        data, _, truth = gen_simulation(k, np.random.default_rng(40 + k))
        corr = np.corrcoef(truth.unshifted_values(data))
        off_diagonal = corr[~np.eye(len(corr), dtype=bool)]
        assert off_diagonal.mean() == pytest.approx(0.0, abs=0.01)

    def test_coupled_pairs_follow_the_sign_of_their_coefficient(self):
        data, _, truth = gen_simulation(5, np.random.default_rng(45))
        base = truth.unshifted_values(data)
        aligned = [np.sign(rho) * np.corrcoef(base[i], base[j])[0, 1] for i, j, rho in truth.correlated_pairs]
        assert np.mean(aligned) > 0.2

    @pytest.mark.parametrize('seed', range(5))
    def test_sim6_copies_genes(self, seed):
        _, sets, truth = gen_simulation(6, np.random.default_rng(seed))
        assert 10 <= len(truth.copied_genes) <= 100
        assert sets.membership_counts(1000).max() >= 2
        for gene, targets in truth.copied_genes:
            assert 1 <= len(targets) <= 4
            assert all(gene in sets.sets[s] for s in targets)

    def test_invalid_arguments(self, rng):
        with pytest.raises(ParameterDomainError):
            gen_simulation(7, rng)
        with pytest.raises(ParameterDomainError):
            gen_simulation(1, rng, n_samples=7)


class TestGenerate:
    @pytest.mark.parametrize('scenario', list(Scenario))
    def test_deterministic(self, scenario):
        a = generate(scenario, 21)
        b = generate(scenario, 21)
        np.testing.assert_array_equal(a.dataset.values, b.dataset.values)
        assert [list(m) for m in a.sets.sets] == [list(m) for m in b.sets.sets]
        assert a.truth.to_dict() == b.truth.to_dict()
        assert a.truth.seed == 21

    def test_hyphenated_name_and_options(self):
        simulated = generate('all-shifted', 1)
        assert simulated.truth.scenario is Scenario.ALL_SHIFTED
        assert generate('illustrative', 1, shift=2.0).truth.shifted_genes[0][0][1] == 2.0
        assert generate('sim1', 1, n_samples=20).dataset.n_samples == 20

    def test_unknown_scenario(self):
        with pytest.raises(ParameterDomainError):
            generate('sim9', 1)

    def test_truth_dict_round_trip(self):
        truth = generate('sim6', 5).truth
        assert SimulationTruth.from_dict(truth.to_dict()) == truth


class TestPriorDemo:
    def test_within_set_correlation_exceeds_between(self):
        demo = gen_prior_correlation_demo(np.random.default_rng(0))
        assert len(demo.r_within) == len(demo.r_between) == 1000
        assert demo.r_within.mean() - demo.r_between.mean() > 0.05
        assert abs(demo.r_between.mean()) < 0.05
        assert np.all(np.abs(demo.r_within) <= 1) and np.all(np.abs(demo.r_between) <= 1)

    def test_invalid_sizes(self, rng):
        with pytest.raises(ParameterDomainError):
            gen_prior_correlation_demo(rng, n_reps=0)
