import pytest
from click.testing import CliRunner
from e36verify.cli import cli
from e36verify.characters import ModuleLabel, SizeRow
from e36verify.suite_runner import SuiteConfig
from e36verify.utils.report import Check, Report
import json
from fractions import Fraction
from unittest.mock import patch
from pathlib import Path

@pytest.fixture
def runner():
    return CliRunner()

@pytest.fixture
def mock_config_file(tmp_path):
    config = {
        "_comment": "test configuration",
        "trunc": 5,
        "pbw_deg": 3,
        "range": 2,
        "format": "md",
        "cache_dir": None,
        "jobs": 1,
        "scan_trunc": 2
    }
    config_file = tmp_path / "test_config.json"
    with open(config_file, "w") as f:
        json.dump(config, f)
    return str(config_file)

def passing_report(name='characters'):
    return Report(name, SuiteConfig().as_dict(), [Check('characters/size/A/1,1', 'size I(1,0;1;-1/3)', 'pass', '16', '16')])

def failing_report(name='characters'):
    return Report(name, SuiteConfig().as_dict(), [
        Check('characters/size/A/1,1', 'size I(1,0;1;-1/3)', 'pass', '16', '16'),
        Check('characters/size/D/1,1', 'size I(0,1;1;1/3)', 'fail', '74', '79', 'expected 74, computed 79'),
    ])

def test_cli_help(runner):
    result = runner.invoke(cli, ['--help'])
    assert result.exit_code == 0
    assert 'e36verify: exact verification' in result.output
    assert 'Usage:' in result.output
    for command in ('brackets', 'operators', 'singular', 'homology', 'spectral', 'characters', 'multiplets',
                    'all', 'init', 'sizes', 'plot'):
        assert command in result.output

def test_init_command(runner):
    with runner.isolated_filesystem():
        result = runner.invoke(cli, ['init'])
        assert result.exit_code == 0
        assert "Configuration file created: config.json" in result.output
        with open('config.json') as f:
            config = json.load(f)
    assert config['trunc'] == 8
    assert (config['pbw_deg'], config['range'], config['scan_trunc']) == (6, 4, 10)
    assert config['format'] == 'md'
    assert config['cache_dir'] is None

def test_init_command_declines_overwrite(runner):
    with runner.isolated_filesystem():
        Path('config.json').write_text('{"trunc": 2}')
        result = runner.invoke(cli, ['init'], input='n\n')
        assert result.exit_code != 0
        assert Path('config.json').read_text() == '{"trunc": 2}'

@patch('e36verify.cli.run_suite')
def test_suite_command_with_config(mock_run, runner, mock_config_file):
    mock_run.return_value = passing_report()
    result = runner.invoke(cli, ['characters', '--config', mock_config_file])
    assert result.exit_code == 0, f"Command failed with error: {result.output}"
    mock_run.assert_called_once_with('characters', SuiteConfig(trunc=5, pbw_deg=3, range=2, scan_trunc=2))
    assert 'All 1 checks passed' in result.output
    assert '| characters/size/A/1,1 |' in result.output

@patch('e36verify.cli.run_suite')
def test_flags_override_config(mock_run, runner, mock_config_file):
    mock_run.return_value = passing_report('homology')
    result = runner.invoke(cli, ['homology', '--config', mock_config_file, '--trunc', '3', '--jobs', '2'])
    assert result.exit_code == 0
    cfg = mock_run.call_args[0][1]
    assert cfg.trunc == 3
    assert cfg.jobs == 2
    assert cfg.pbw_deg == 3

@patch('e36verify.cli.run_suite')
def test_cache_dir_from_environment(mock_run, runner):
    mock_run.return_value = passing_report()
    result = runner.invoke(cli, ['characters'], env={'E36VERIFY_CACHE_DIR': 'from-env'})
    assert result.exit_code == 0
    assert mock_run.call_args[0][1].cache_dir == 'from-env'

    result = runner.invoke(cli, ['characters', '--cache-dir', 'from-flag'], env={'E36VERIFY_CACHE_DIR': 'from-env'})
    assert mock_run.call_args[0][1].cache_dir == 'from-flag'

@patch('e36verify.cli.run_suite')
def test_failing_check_exits_nonzero(mock_run, runner):
    mock_run.return_value = failing_report()
    result = runner.invoke(cli, ['characters'])
    assert result.exit_code == 1
    assert '1 of 2 checks failed' in result.output
    assert 'expected 74, computed 79' in result.output

@patch('e36verify.cli.run_suite')
def test_json_report_to_file(mock_run, runner):
    mock_run.return_value = passing_report()
    with runner.isolated_filesystem():
        result = runner.invoke(cli, ['characters', '--format', 'json', '--output', 'report.json'])
        assert result.exit_code == 0
        assert "Report written to report.json" in result.output
        with open('report.json') as f:
            document = json.load(f)
    assert document['suite'] == 'characters'
    assert document['summary']['pass'] == 1
    assert document['checks'][0]['computed'] == '16'

@patch('e36verify.cli.run_suite')
def test_yaml_config(mock_run, runner, tmp_path):
    mock_run.return_value = passing_report()
    config_file = tmp_path / "config.yaml"
    config_file.write_text("trunc: 4\nrange: 1\nformat: json\n")
    result = runner.invoke(cli, ['characters', '--config', str(config_file)])
    assert result.exit_code == 0
    assert mock_run.call_args[0][1] == SuiteConfig(trunc=4, range=1, format='json')

def test_unknown_config_key(runner, tmp_path):
    config_file = tmp_path / "config.json"
    config_file.write_text('{"trunc": 4, "truncation": 5}')
    result = runner.invoke(cli, ['characters', '--config', str(config_file)])
    assert result.exit_code != 0
    assert "unknown configuration keys: truncation" in result.output

def test_negative_bound_rejected(runner):
    result = runner.invoke(cli, ['characters', '--range', '-1'])
    assert result.exit_code != 0
    assert "range must be a non-negative integer" in result.output

def test_unsupported_config_type(runner, tmp_path):
    config_file = tmp_path / "config.toml"
    config_file.write_text('trunc = 4')
    result = runner.invoke(cli, ['characters', '--config', str(config_file)])
    assert result.exit_code != 0
    assert "unsupported configuration file type" in result.output

def test_invalid_format_choice(runner):
    result = runner.invoke(cli, ['characters', '--format', 'xml'])
    assert result.exit_code != 0
    assert "Invalid value for '--format'" in result.output

@patch('e36verify.cli.verify_sizes')
def test_sizes_command(mock_sizes, runner):
    mock_sizes.return_value = [
        SizeRow(ModuleLabel('A', 1, 1), Fraction(16), 16, Fraction(8), Fraction(8)),
        SizeRow(ModuleLabel('B', 0, 0), Fraction(5), 5, Fraction(5, 2), Fraction(5, 2)),
    ]
    result = runner.invoke(cli, ['sizes', '--series', 'A', '--range', '1'])
    assert result.exit_code == 0
    mock_sizes.assert_called_once_with(1)
    assert 'formula' in result.output
    assert '16' in result.output
    assert 'I(0,0;0;2)' not in result.output

def test_sizes_command_requires_series(runner):
    result = runner.invoke(cli, ['sizes'])
    assert result.exit_code != 0
    assert "Missing option '--series'" in result.output

def test_plot_command_without_report(runner):
    result = runner.invoke(cli, ['plot'])
    assert result.exit_code != 0
    assert 'Error: Missing option \'--report\'' in result.output

@patch('e36verify.cli.plot_report')
def test_plot_command_with_report(mock_plot, runner, tmp_path):
    report = tmp_path / "report.json"
    report.write_text('{"suite": "characters", "checks": []}')
    mock_plot.return_value = [tmp_path / "checks.csv"]

    result = runner.invoke(cli, ['plot', '--report', str(report)])

    assert result.exit_code == 0
    mock_plot.assert_called_once_with(report, None)
    assert f"Plots have been generated and saved in {tmp_path}" in result.output

def test_plot_command_with_missing_report(runner):
    result = runner.invoke(cli, ['plot', '--report', '/non/existent/report.json'])
    assert result.exit_code != 0
    assert 'Error: Invalid value for \'--report\'' in result.output
