from pathlib import Path
from typing import List, Optional, Union

import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt
import numpy as np
import pandas as pd

from e36verify.characters import ModuleLabel, ch_irreducible, label_of, series_coefficients
from e36verify.standard_model import DEGENERATE_SUM
from e36verify.utils.report import STATUSES, load_report, report_frame


def load_checks(report_path: Union[str, Path]) -> pd.DataFrame:
    df = report_frame(load_report(report_path))
    df['suite'] = df['id'].str.split('/').str[0]
    return df


def size_rows(df: pd.DataFrame) -> pd.DataFrame:
    """Rows of characters/size/<series>/<a>,<r> checks with numeric columns."""
    sizes = df[df['id'].str.startswith('characters/size/')].copy()
    if sizes.empty:
        return pd.DataFrame(columns=['series', 'a', 'r', 'computed', 'expected'])
    parts = sizes['id'].str.split('/')
    sizes['series'] = parts.str[2]
    params = parts.str[3].str.split(',')
    sizes['a'] = params.str[0].astype(int)
    sizes['r'] = params.str[1].astype(int)
    for column in ('computed', 'expected'):
        sizes[column] = sizes[column].map(lambda s: float(eval_fraction(s)))
    return sizes[['series', 'a', 'r', 'computed', 'expected']]


def eval_fraction(text: str) -> float:
    num, _, den = text.partition('/')
    return int(num) / int(den or 1)


def plot_status_summary(df: pd.DataFrame, output_file: Path):
    counts = df.groupby(['suite', 'status']).size().unstack(fill_value=0)
    counts = counts.reindex(columns=list(STATUSES), fill_value=0)
    suites = list(counts.index)
    x = np.arange(len(suites))
    width = 0.25

    plt.figure(figsize=(10, 6))
    for k, status in enumerate(STATUSES):
        plt.bar(x + (k - 1) * width, counts[status].values, width, label=status)
    plt.xticks(x, suites)
    plt.xlabel('Suite')
    plt.ylabel('Checks')
    plt.title('Check status per suite')
    plt.legend()
    plt.tight_layout()
    plt.savefig(output_file)
    plt.close()


def plot_size_table(sizes: pd.DataFrame, series: str, output_file: Path):
    table = sizes[sizes['series'] == series]
    plt.figure(figsize=(10, 6))
    for a, group in table.groupby('a'):
        group = group.sort_values('r')
        plt.plot(group['r'], group['computed'], marker='o', label=f"{'p' if series in 'AB' else 'q'} = {a}")
        for r, value in zip(group['r'], group['computed']):
            plt.annotate(f'{value:.0f}', xy=(r, value), ha='center', va='bottom')
    plt.xlabel('r')
    plt.ylabel('size')
    plt.title(f'Sizes of the series {series} irreducibles')
    plt.legend()
    plt.grid(False)
    plt.tight_layout()
    plt.savefig(output_file)
    plt.close()


def plot_character_series(label: ModuleLabel, order: int, output_file: Path):
    rf = ch_irreducible(label)
    coefficients = series_coefficients(rf, rf.shift + order)
    exponents = list(coefficients)
    values = [float(v) for v in coefficients.values()]

    plt.figure(figsize=(10, 6))
    positions = np.arange(len(exponents))
    plt.bar(positions, values)
    for i, value in enumerate(values):
        plt.annotate(f'{value:.0f}', xy=(positions[i], value), ha='center', va='bottom')
    plt.xticks(positions, [str(k) for k in exponents])
    plt.xlabel('exponent of t')
    plt.ylabel('dimension')
    plt.title(f'ch {label}')
    plt.tight_layout()
    plt.savefig(output_file)
    plt.close()


def plot_report(report_path: Union[str, Path], out_dir: Optional[Union[str, Path]] = None,
                order: int = 10) -> List[Path]:
    report_path = Path(report_path)
    base_directory = Path(out_dir) if out_dir else report_path.parent
    base_directory.mkdir(parents=True, exist_ok=True)
    written = []

    df = load_checks(report_path)
    output_file = base_directory / 'checks.csv'
    df.to_csv(output_file, index=False)
    written.append(output_file)

    if not df.empty:
        written.append(base_directory / 'status_plot.png')
        plot_status_summary(df, written[-1])

    sizes = size_rows(df)
    for series in sorted(sizes['series'].unique()):
        written.append(base_directory / f'sizes_{series}_plot.png')
        plot_size_table(sizes, series, written[-1])

    if df['suite'].isin(['characters', 'multiplets']).any():
        for node in DEGENERATE_SUM:
            label = label_of(node)
            written.append(base_directory / f'character_{label.series}{label.a}{label.r}_plot.png')
            plot_character_series(label, order, written[-1])
    return written
