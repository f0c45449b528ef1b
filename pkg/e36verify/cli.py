import click
import json
import sys
import yaml
from pathlib import Path
from e36verify.characters import SERIES, verify_sizes
from e36verify.exceptions import E36Error, InvalidConfig
from e36verify.suite_runner import SUITES, SuiteConfig, run_suite
from e36verify.utils.plot_results import plot_report
from e36verify.utils.report import FORMATS, emit_report
import logging
from tabulate import tabulate
import pandas as pd

logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')

CONTEXT_SETTINGS = dict(help_option_names=['-h', '--help'])

def load_config(config_file):
    path = Path(config_file)
    try:
        with open(path, 'r') as f:
            if path.suffix == '.json':
                values = json.load(f)
            elif path.suffix in ('.yaml', '.yml'):
                values = yaml.safe_load(f) or {}
            else:
                raise InvalidConfig(f"unsupported configuration file type {path.suffix!r}, use .json, .yaml or .yml")
    except (json.JSONDecodeError, yaml.YAMLError) as e:
        raise InvalidConfig(f"could not parse {path}: {e}") from e
    if not isinstance(values, dict):
        raise InvalidConfig(f"{path} must hold a mapping of settings")
    return values

@click.group(context_settings=CONTEXT_SETTINGS)
def cli():
    """
    e36verify: exact verification of the E(3,6) representation results

    \b
    Usage:
    1. Run 'e36verify init' to create config.json
    2. Run 'e36verify <suite> --config config.json' to run one suite, or 'e36verify all'
    3. Run 'e36verify plot --report report.json' to plot a saved JSON report

    \b
    Suites: brackets, operators, singular, homology, spectral, characters, multiplets
    """
    pass

def create_config(output='config.json'):
    config = {
        "_comment": "e36verify Configuration",
        "trunc": 8,
        "pbw_deg": 6,
        "range": 4,
        "format": "md",
        "cache_dir": None,
        "jobs": 1,
        "scan_trunc": 10
    }

    output_path = Path(output)
    if output_path.exists():
        click.confirm(f"The file {output} already exists. Do you want to overwrite it?", abort=True)

    with open(output_path, 'w') as f:
        json.dump(config, f, indent=2)

    click.echo(f"Configuration file created: {output_path}")
    click.echo("Please review and modify this file before running the suites.")

def suite_options(command):
    options = [
        click.option('--config', type=click.Path(exists=True), help='Path to a JSON or YAML configuration file'),
        click.option('--trunc', type=int, help='Truncation in U-degree for Verma-module complexes'),
        click.option('--pbw-deg', type=int, help='PBW degree bound for operator and singular-vector checks'),
        click.option('--range', 'range_', type=int, help='Bound on the parameters p, q, r'),
        click.option('--format', 'fmt', type=click.Choice(FORMATS), help='Report format'),
        click.option('--cache-dir', envvar='E36VERIFY_CACHE_DIR', type=click.Path(file_okay=False),
                     help='Directory for cached results (env: E36VERIFY_CACHE_DIR)'),
        click.option('--jobs', type=int, help='Number of worker processes'),
        click.option('--output', type=click.Path(dir_okay=False), help='Write the report to this file'),
        click.option('--verbose', is_flag=True, help='Log per-matrix details'),
    ]
    for option in reversed(options):
        command = option(command)
    return command

def build_config(config, **flags):
    values = load_config(config) if config else {}
    values.update({k: v for k, v in flags.items() if v is not None})
    return SuiteConfig.from_mapping(values)

def run_and_report(name, config, trunc, pbw_deg, range_, fmt, cache_dir, jobs, output, verbose):
    if verbose:
        logging.getLogger().setLevel(logging.DEBUG)

    try:
        cfg = build_config(config, trunc=trunc, pbw_deg=pbw_deg, range=range_, format=fmt,
                           cache_dir=cache_dir, jobs=jobs)
        report = run_suite(name, cfg)
    except E36Error as e:
        error_msg = f"An error occurred while running the {name} suite: {str(e)}"
        logging.error(error_msg)
        click.echo(error_msg, err=True)
        raise click.Abort()

    document = emit_report(report, cfg.format)
    if output:
        Path(output).write_bytes(document)
        click.echo(f"Report written to {output}")
    else:
        click.echo(document.decode(), nl=False)

    summary = report.summary
    if summary['fail']:
        click.echo(f"{summary['fail']} of {summary['total']} checks failed", err=True)
        sys.exit(1)
    click.echo(f"All {summary['total']} checks passed ({summary['window-limited']} window-limited)")

def add_suite_command(name, help_text):
    @suite_options
    def command(**kwargs):
        run_and_report(name, **kwargs)
    command.__doc__ = help_text
    cli.command(name=name)(command)

SUITE_HELP = {
    'brackets': 'Check the E(5,10) bracket: relations, super-Jacobi identity, generator catalog',
    'operators': 'Check that the grid operators square to zero and are equivariant',
    'singular': 'Verify the catalog of singular vectors and scan for missing ones',
    'homology': 'Compute homology of the G- and M-type complexes against closed forms',
    'spectral': 'Run spectral sequences of filtered complexes to convergence',
    'characters': 'Compare characters and sizes of degenerate irreducibles with closed forms',
    'multiplets': 'Enumerate fundamental multiplets and scan the degenerate modules for them',
    'all': 'Run every suite',
}

for _name in list(SUITES) + ['all']:
    add_suite_command(_name, SUITE_HELP[_name])

@cli.command()
@click.option('--config', default='config.json', help='Name of the output configuration file')
def init(config):
    """Create a default config.json"""
    create_config(config)

@cli.command()
@click.option('--series', type=click.Choice(SERIES), required=True, help='Series of degenerate modules')
@click.option('--range', 'range_', type=int, default=3, show_default=True, help='Bound on the parameters')
def sizes(series, range_):
    """Print the size table of one series"""
    try:
        rows = [row for row in verify_sizes(range_) if row.label.series == series]
    except E36Error as e:
        error_msg = f"An error occurred while computing sizes: {str(e)}"
        logging.error(error_msg)
        click.echo(error_msg, err=True)
        raise click.Abort()

    df = pd.DataFrame([{
        'Module': str(row.label),
        'p or q': row.label.a,
        'r': row.label.r,
        'size': str(row.computed),
        'formula': row.expected,
        'even': str(row.even),
        'odd': str(row.odd),
        'match': row.passed,
    } for row in rows])
    click.echo(tabulate(df, headers='keys', tablefmt='pretty', showindex=False))

@cli.command()
@click.option('--report', required=True, type=click.Path(exists=True), help='JSON report written with --format json')
@click.option('--out-dir', type=click.Path(file_okay=False), help='Directory for the plots (default: next to the report)')
def plot(report, out_dir):
    """Plot status counts, size tables and character series from a report"""
    report_path = Path(report)
    if not report_path.is_file():
        raise click.BadParameter("The specified report is not a file.")

    try:
        written = plot_report(report_path, out_dir)
        click.echo(f"Plots have been generated and saved in {written[0].parent}")
    except Exception as e:
        click.echo(f"An error occurred while plotting results: {e}", err=True)
        raise click.Abort()

if __name__ == '__main__':
    cli()
