import json
from pathlib import Path

import pytest

from bgsa.baselines import SetStatistic
from bgsa.config import Config, merge
from bgsa.config import thread_specs
from bgsa.exceptions import ConfigError
from bgsa.model import ModelVariant
from bgsa.simgen import Scenario


def test_defaults():
    config = Config.from_overrides({}).data
    assert (config.mcmc.iterations, config.mcmc.burn_in) == (2000, 500)
    assert config.mcmc.variant is ModelVariant.MIXTURE
    assert config.report.cutoff == 0.1
    assert config.baseline.methods == [SetStatistic.MAXMEAN]
    assert config.baseline.restandardized(SetStatistic.MAXMEAN)
    assert not config.baseline.restandardized(SetStatistic.MEAN_Z)
    assert config.benchmark.n_replicates == 20
    assert config.benchmark.scenarios == [Scenario.SIM1, Scenario.SIM2]
    assert config.simulate.scenario is Scenario.ILLUSTRATIVE


def test_missing_seed_is_generated_and_recorded():
    config = Config.from_overrides({})
    seed = config.data.mcmc.seed
    assert config.data.raw['mcmc']['seed'] == seed
    assert 0 <= seed < 2**63


def test_full_scale_defaults():
    benchmark = Config.from_overrides(dict(benchmark=dict(full_scale=True))).data.benchmark
    assert benchmark.n_replicates == 100
    assert len(benchmark.scenarios) == 6
    assert benchmark.mcmc.iterations == 4000
    assert benchmark.mcmc.burn_in == 500


def test_mcmc_section_builds_sampler_config():
    raw = dict(mcmc=dict(
        iterations=300, burn_in=100, seed=5, variant='simple', rao_blackwell=True,
        beta_prior=[2, 3], slice=dict(width=0.5, max_steps=10),
        hyperpriors=dict(nu=[4, 1]), fixed=dict(phi0_sq=0.3),
    ))
    cfg = Config(raw).data.mcmc.config
    assert (cfg.n_iterations, cfg.burn_in, cfg.seed) == (300, 100, 5)
    assert cfg.model_variant is ModelVariant.SIMPLE
    assert cfg.rao_blackwell
    assert (cfg.beta_prior_a, cfg.beta_prior_b) == (2.0, 3.0)
    assert (cfg.slice.initial_width, cfg.slice.max_step_out) == (0.5, 10)
    assert (cfg.nu_prior.shape, cfg.nu_prior.rate) == (4.0, 1.0)
    assert cfg.fixed_phi0_sq == 0.3
    assert cfg.fixed_nu is None


@pytest.mark.parametrize('section, values', [
    ('mcmc', dict(iterations=500, burn_in=500)),
    ('mcmc', dict(variant='hierarchical')),
    ('mcmc', dict(seed=-1)),
    ('mcmc', dict(seed='abc')),
    ('mcmc', dict(hyperpriors=dict(kappa=[1, 1]))),
    ('mcmc', dict(fixed=dict(nu=0))),
    ('mcmc', dict(beta_prior=[1])),
    ('report', dict(cutoff=1.0)),
    ('report', dict(cutoff=0)),
    ('baseline', dict(methods=['wilcoxon'])),
    ('baseline', dict(n_permutations=50)),
    ('baseline', dict(n_randomizations=10)),
    ('baseline', dict(restandardize='yes')),
    ('benchmark', dict(replicates=1)),
    ('benchmark', dict(scenarios=['sim8'])),
    ('computation', dict(threads=0)),
    ('computation', dict(threads='many')),
    ('simulate', dict(scenario='nope')),
    ('demo', dict(scales_sq=[1.0, -2.0])),
])
def test_invalid_values(section, values):
    config = Config.from_overrides({section: values})
    with pytest.raises(ConfigError):
        config.data.parse(section)


def test_exhaustive_relaxes_permutation_minimum():
    baseline = Config.from_overrides(dict(baseline=dict(exhaustive=True, n_permutations=1))).data.baseline
    assert baseline.exhaustive


def test_comma_separated_lists():
    baseline = Config.from_overrides(dict(baseline=dict(methods='maxmean, ks'))).data.baseline
    assert baseline.methods == [SetStatistic.MAXMEAN, SetStatistic.KS_SIGNED]


def test_required_paths():
    paths = Config.from_overrides(dict(paths=dict(matrix='m.tsv'))).data.paths
    with pytest.raises(ConfigError, match='labels, gmt'):
        paths.require('matrix', 'labels', 'gmt')


class TestThreads:
    def test_default(self, monkeypatch):
        monkeypatch.delenv('BGSA_THREADS', raising=False)
        assert Config.from_overrides({}).data.computation.n_threads == 1

    def test_environment(self, monkeypatch):
        monkeypatch.setenv('BGSA_THREADS', '3')
        assert Config.from_overrides({}).data.computation.n_threads == 3

    def test_explicit_value_wins(self, monkeypatch):
        monkeypatch.setenv('BGSA_THREADS', '3')
        assert Config.from_overrides(dict(computation=dict(threads=2))).data.computation.n_threads == 2

    def test_auto(self):
        threads = Config.from_overrides(dict(computation=dict(threads='auto'))).data.computation.threads
        assert isinstance(threads, thread_specs.Auto)


class TestFiles:
    def test_toml(self, tmp_path):
        path = tmp_path / 'run.toml'
        path.write_text('[mcmc]\niterations = 100\nburn_in = 10\nseed = 3\n\n[report]\ncutoff = 0.2\n')
        config = Config.load(path).data
        assert config.mcmc.config.n_iterations == 100
        assert config.report.cutoff == 0.2

    def test_overrides_replace_file_values(self, tmp_path):
        path = tmp_path / 'run.toml'
        path.write_text('[mcmc]\niterations = 100\nburn_in = 10\nseed = 3\n')
        config = Config.load(path, dict(mcmc=dict(iterations=50, seed=None))).data
        assert config.mcmc.iterations == 50
        assert config.mcmc.seed == 3

    def test_run_record_reloads(self, tmp_path):
        config = Config.from_overrides(dict(mcmc=dict(iterations=100, burn_in=10)))
        config.data.parse('mcmc', 'report')
        record = tmp_path / 'run.json'
        record.write_text(json.dumps({**config.data.raw, 'meta': dict(command='fit')}))
        again = Config.load(record).data
        assert again.mcmc.config == config.data.mcmc.config
        assert 'meta' not in again.raw

    @pytest.mark.parametrize('name, content, message', [
        ('config', '', 'no suffix'),
        ('config.yaml', '', 'Unknown file suffix'),
        ('config.toml', 'iterations = = 3', 'Could not parse'),
        ('config.json', '[1, 2]', 'top level'),
    ])
    def test_bad_files(self, tmp_path, name, content, message):
        path = tmp_path / name
        path.write_text(content)
        with pytest.raises(ConfigError, match=message):
            Config.load(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match='not found'):
            Config.load(tmp_path / 'absent.toml')


def test_merge_does_not_touch_input():
    raw = dict(mcmc=dict(iterations=10))
    merged = merge(raw, dict(mcmc=dict(iterations=20, burn_in=None), report=dict(cutoff=0.3)))
    assert raw == dict(mcmc=dict(iterations=10))
    assert merged == dict(mcmc=dict(iterations=20), report=dict(cutoff=0.3))


def test_example_config_parses():
    path = Path(__file__).parents[1] / 'example_config.toml'
    config = Config.load(path).data
    config.parse('mcmc', 'report', 'baseline', 'benchmark', 'simulate', 'computation')
    assert config.mcmc.seed == 7
    assert config.baseline.methods == [SetStatistic.MAXMEAN, SetStatistic.MEAN_Z]
