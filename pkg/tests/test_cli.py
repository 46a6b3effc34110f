import json

import pandas as pd
import pytest
from click.testing import CliRunner

from bgsa.cli import cli
from bgsa.io import GENE_TABLE, METADATA, SET_TABLE


@pytest.fixture
def runner():
    return CliRunner()


def _fit_args(files, out, *extra):
    return [
        'fit',
        '--matrix', str(files['matrix']),
        '--labels', str(files['labels']),
        '--gmt', str(files['gmt']),
        '--out', str(out),
        '--iters', '60', '--burnin', '20', '--seed', '3',
        *extra,
    ]


class TestFit:
    def test_writes_tables(self, runner, toy_files, tmp_path):
        out = tmp_path / 'fit'
        result = runner.invoke(cli, _fit_args(toy_files, out))
        assert result.exit_code == 0, result.output
        for name in (SET_TABLE, GENE_TABLE, METADATA):
            assert (out / name).is_file()
        sets = pd.read_csv(out / SET_TABLE, sep='\t')
        assert sorted(sets['set_name']) == ['setA', 'setB', 'setC']
        assert sets['prob_null'].between(0, 1).all()

    def test_run_record_reproduces(self, runner, toy_files, tmp_path):
        first = tmp_path / 'first'
        assert runner.invoke(cli, _fit_args(toy_files, first)).exit_code == 0
        record = json.loads((first / METADATA).read_text())
        assert record['mcmc']['seed'] == 3
        assert record['meta']['command'] == 'fit'

        second = tmp_path / 'second'
        result = runner.invoke(cli, ['fit', '-c', str(first / METADATA), '--out', str(second)])
        assert result.exit_code == 0, result.output
        assert (second / SET_TABLE).read_bytes() == (first / SET_TABLE).read_bytes()
        assert (second / GENE_TABLE).read_bytes() == (first / GENE_TABLE).read_bytes()

    def test_missing_labels_is_usage_error(self, runner, toy_files, tmp_path):
        args = _fit_args(toy_files, tmp_path / 'out')
        i = args.index('--labels')
        del args[i:i + 2]
        result = runner.invoke(cli, args)
        assert result.exit_code == 2
        assert 'labels' in result.output

    def test_burn_in_must_be_below_iterations(self, runner, toy_files, tmp_path):
        args = _fit_args(toy_files, tmp_path / 'out')
        args[args.index('--iters') + 1] = '500'
        args[args.index('--burnin') + 1] = '500'
        assert runner.invoke(cli, args).exit_code == 2

    def test_bad_input_file_is_usage_error(self, runner, toy_files, tmp_path):
        toy_files['labels'].write_text('c1\t0\nc2\t0\nt1\t1\n')
        result = runner.invoke(cli, _fit_args(toy_files, tmp_path / 'out'))
        assert result.exit_code == 2
        assert "'t2'" in result.output

    def test_simple_variant_and_flags(self, runner, toy_files, tmp_path):
        out = tmp_path / 'fit'
        result = runner.invoke(cli, _fit_args(toy_files, out, '--variant', 'simple', '--only-flagged', '--cutoff', '0.5'))
        assert result.exit_code == 0, result.output
        assert json.loads((out / METADATA).read_text())['mcmc']['variant'] == 'simple'


class TestSimulate:
    def test_same_seed_gives_identical_files(self, runner, tmp_path):
        outputs = []
        for name in ('a', 'b'):
            out = tmp_path / name
            result = runner.invoke(cli, ['simulate', '--scenario', 'illustrative', '--seed', '7', '--out', str(out)])
            assert result.exit_code == 0, result.output
            outputs.append(out)
        for name in ('matrix.tsv', 'labels.tsv', 'sets.gmt', 'truth.json'):
            assert (outputs[0] / name).read_bytes() == (outputs[1] / name).read_bytes()

    def test_hyphenated_scenario(self, runner, tmp_path):
        out = tmp_path / 'sim'
        result = runner.invoke(cli, ['simulate', '--scenario', 'all-shifted', '--seed', '1', '--out', str(out)])
        assert result.exit_code == 0, result.output
        assert json.loads((out / 'truth.json').read_text())['scenario'] == 'all_shifted'

    def test_unknown_scenario(self, runner, tmp_path):
        result = runner.invoke(cli, ['simulate', '--scenario', 'sim9', '--out', str(tmp_path)])
        assert result.exit_code == 2


class TestBaseline:
    def test_illustrative_first_set_ranks_first(self, runner, tmp_path):
        data = tmp_path / 'data'
        assert runner.invoke(cli, ['simulate', '--seed', '7', '--out', str(data)]).exit_code == 0
        out = tmp_path / 'baseline'
        result = runner.invoke(cli, [
            'baseline',
            '--matrix', str(data / 'matrix.tsv'),
            '--labels', str(data / 'labels.tsv'),
            '--gmt', str(data / 'sets.gmt'),
            '--out', str(out),
            '-m', 'maxmean', '--perms', '200', '--seed', '5',
        ])
        assert result.exit_code == 0, result.output
        table = pd.read_csv(out / 'baseline_maxmean_restd.tsv', sep='\t')
        assert table['set_name'].iloc[0] == 'set01'
        assert table['perm_pvalue'].iloc[0] == pytest.approx(1 / 201)

    def test_exhaustive_on_tiny_design(self, runner, toy_files, tmp_path):
        out = tmp_path / 'baseline'
        result = runner.invoke(cli, [
            'baseline',
            '--matrix', str(toy_files['matrix']),
            '--labels', str(toy_files['labels']),
            '--gmt', str(toy_files['gmt']),
            '--out', str(out),
            '-m', 'mean-z,ks', '--exhaustive', '--seed', '1',
        ])
        assert result.exit_code == 0, result.output
        assert (out / 'baseline_mean_z.tsv').is_file()
        assert (out / 'baseline_ks_signed.tsv').is_file()
        methods = json.loads((out / METADATA).read_text())['meta']['methods']
        assert all(m['exhaustive'] and m['n_permutations'] == 6 for m in methods)

    def test_too_few_permutations(self, runner, toy_files, tmp_path):
        result = runner.invoke(cli, [
            'baseline',
            '--matrix', str(toy_files['matrix']),
            '--labels', str(toy_files['labels']),
            '--gmt', str(toy_files['gmt']),
            '--out', str(tmp_path),
            '--perms', '10',
        ])
        assert result.exit_code == 2


def test_benchmark(runner, tmp_path):
    out = tmp_path / 'bench'
    result = runner.invoke(cli, [
        'benchmark',
        '--scenarios', 'sim1', '--methods', 'bgsa,maxmean', '--replicates', '3',
        '--iters', '40', '--burnin', '10', '--perms', '100', '--seed', '4', '--out', str(out),
    ])
    assert result.exit_code == 0, result.output
    summary = pd.read_csv(out / 'benchmark.tsv', sep='\t')
    assert sorted(summary['method']) == ['bgsa-mixture', 'maxmean-restd']
    assert summary['n_replicates'].tolist() == [3, 3]
    assert (out / 'roc_points.tsv').is_file()
    assert json.loads((out / METADATA).read_text())['meta']['seed'] == 4


def test_demo_prior(runner, tmp_path):
    result = runner.invoke(cli, ['demo-prior', '--reps', '20', '--draws', '30', '--seed', '2', '--out', str(tmp_path)])
    assert result.exit_code == 0, result.output
    frame = pd.read_csv(tmp_path / 'prior_correlation.tsv', sep='\t')
    assert list(frame.columns) == ['rep', 'r_within', 'r_between']
    assert len(frame) == 20


def test_demo_density(runner, tmp_path):
    result = runner.invoke(cli, ['demo-density', '--scales', '1', '--scales', '4', '--grid-points', '50', '--out', str(tmp_path)])
    assert result.exit_code == 0, result.output
    frame = pd.read_csv(tmp_path / 'density.tsv', sep='\t')
    assert list(frame.columns) == ['x', 's2=1', 's2=4']
    assert len(frame) == 50
    assert (frame[['s2=1', 's2=4']] >= 0).all().all()


@pytest.mark.parametrize('command', [[], ['fit'], ['baseline'], ['simulate'], ['benchmark'], ['demo-prior'], ['demo-density']])
def test_help(runner, command):
    assert runner.invoke(cli, [*command, '--help']).exit_code == 0


def test_verbose_and_quiet_conflict(runner):
    assert runner.invoke(cli, ['-v', '-q', 'demo-density', '--help']).exit_code != 0
