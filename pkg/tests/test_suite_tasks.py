from fractions import Fraction

import pytest

from e36verify import suite_runner
from e36verify.exceptions import CompositionNotZero
from e36verify.nabla_operators import Node
from e36verify.singular_vectors import module_label
from e36verify.standard_model import OUT_OF_REACH_MULTIPLETS
from e36verify.suite_runner import (RANDOM_SEEDS, SuiteConfig, catalog_index, first_page_task, identities_task,
                                    random_dimension, random_spectral_task, representative_y_task,
                                    representatives_task, scan_sum_task, scan_task, square_complex_task)


def by_id(rows):
    return {row.id: row for row in rows}


def test_default_bounds():
    config = SuiteConfig()
    assert (config.range, config.pbw_deg, config.scan_trunc) == (4, 6, 10)


def test_catalog_index_is_keyed_by_module():
    index = catalog_index(2)
    trivial = module_label(Node('A', 0, 0))
    assert module_label(Node('D', 0, 0)) == trivial
    assert index[trivial] == (1,)


def test_scan_at_shared_module_agrees_with_catalog():
    row, = scan_task(Node('D', 0, 0), 2, 2)
    assert row.status == 'pass', row
    assert row.computed == '1'


def test_square_complex_task_passes():
    row, = square_complex_task('G', 'A', 1, 2)
    assert row.status == 'pass'


def test_square_complex_task_reports_failure(monkeypatch):
    def broken(spec, bound, check_layers=None):
        raise CompositionNotZero("nabla . nabla from ('A', 2, 2) is not zero")
    monkeypatch.setattr(suite_runner, 'build', broken)
    row, = square_complex_task('G', 'A', 1, 2)
    assert row.status == 'fail'
    assert 'is not zero' in row.computed
    assert row.expected == 'd d = 0'


def test_identities_task():
    rows = identities_task()
    assert len(rows) > 50
    failed = [row.id for row in rows if row.status != 'pass' and row.id != 'singular/identities/curl-congruence']
    assert failed == []
    assert rows[-1].expected == '4'


def test_representatives_task():
    rows = representatives_task(Node('D', -1, -1))
    assert [row.status for row in rows] == ['pass', 'pass']
    assert representative_y_task()[0].status == 'pass'


def test_random_dimensions_cover_the_range():
    dims = [random_dimension(seed) for seed in range(RANDOM_SEEDS)]
    assert min(dims) == 10
    assert max(dims) == 40
    assert dims == sorted(dims)


@pytest.mark.parametrize("seed", [0, 7, RANDOM_SEEDS - 1])
def test_random_spectral_task(seed):
    rows = random_spectral_task(seed)
    assert len(rows) == 3
    assert all(row.status == 'pass' for row in rows), rows


def test_first_page_task():
    row, = first_page_task(Node('A', 0, 1), 3)
    assert row.status == 'pass', row


def test_scan_sum_reports_out_of_reach_multiplet():
    rows = by_id(scan_sum_task(4))
    for m in OUT_OF_REACH_MULTIPLETS:
        row = rows[f"multiplets/scan/{m}"]
        assert row.status == 'pass'
        assert row.computed == '0'
    statuses = {row.status for key, row in rows.items() if key.startswith('multiplets/scan/(')}
    assert statuses == {'pass'}
    assert Fraction(rows['multiplets/scan/(01,1,1/3)'].residual.split()[-1]) >= 1
