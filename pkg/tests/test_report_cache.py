import json
import logging
from fractions import Fraction

import pytest

from e36verify import suite_runner
from e36verify.exceptions import CacheCorrupt, InvalidConfig, UnknownSuite
from e36verify.suite_runner import SuiteConfig, SuiteRunner, Task, run_suite
from e36verify.utils.cache import ResultCache, content_key
from e36verify.utils.report import Check, Report, check, emit_report, exact, load_report

CALLS = []


def counting_task(trunc):
    CALLS.append(trunc)
    return [check(f"fake/{trunc}", "a fake check", Fraction(trunc, 2), Fraction(2 * trunc, 4))]


def failing_task():
    return [check('fake/fail', "a fake failure", 1, 2)]


@pytest.fixture
def fake_suite(monkeypatch):
    CALLS.clear()
    monkeypatch.setitem(suite_runner.SUITES, 'brackets', lambda cfg: [Task(f"fake/{cfg.trunc}", counting_task, (cfg.trunc,))])


def test_exact_strings():
    assert exact(Fraction(3, 4)) == '3/4'
    assert exact(Fraction(8, 2)) == '4'
    assert exact(-7) == '-7'
    assert exact(True) == 'true'
    assert exact({2: Fraction(1, 3), 1: 0}) == '{1: 0, 2: 1/3}'
    assert exact((1, [Fraction(-1, 2)])) == '[1, [-1/2]]'


def test_check_status():
    assert check('a', 'c', 16, Fraction(16)).status == 'pass'
    failed = check('a', 'c', 74, 79)
    assert failed.status == 'fail'
    assert failed.residual == 'expected 74, computed 79'
    assert check('a', 'c', True, False, window_limited=True).status == 'window-limited'


def test_empty_report_is_valid():
    document = json.loads(emit_report(Report('brackets'), 'json'))
    assert document['checks'] == []
    assert document['summary']['total'] == 0
    assert b'No checks were run.' in emit_report(Report('brackets'), 'md')


def test_unknown_format():
    with pytest.raises(ValueError):
        emit_report(Report('brackets'), 'xml')


def test_json_round_trip(tmp_path):
    report = Report('characters', {'trunc': 8, 'cache_dir': None},
                    [check('characters/size/D/1,1', 'size I(0,1;1;1/3)', 79, Fraction(79)),
                     check('characters/dual/2', 'size', 7, Fraction(15, 2))])
    path = tmp_path / 'report.json'
    path.write_bytes(emit_report(report, 'json'))
    loaded = load_report(path)
    assert loaded.suite == 'characters'
    assert loaded.checks == report.checks
    assert loaded.checks[1].computed == '15/2'
    assert emit_report(loaded, 'json') == emit_report(Report('characters', {'trunc': '8', 'cache_dir': None},
                                                             report.checks), 'json')


def test_markdown_prints_residual():
    text = emit_report(Report('characters', {}, [check('x', 'claim', 1, 2)]), 'md').decode()
    assert '## x' in text
    assert 'expected 1, computed 2' in text
    assert '0 passed, 1 failed' in text


def test_cache_round_trip(tmp_path):
    cache = ResultCache(tmp_path)
    key = content_key(('homology', 8))
    assert cache.load(key) is None
    rows = [Check('a', 'claim', 'pass', '1', '1')._asdict()]
    cache.store(key, rows)
    assert cache.load(key) == rows


def test_content_key_depends_on_truncation():
    assert content_key(('homology', 8)) != content_key(('homology', 6))
    assert content_key(('homology', 8)) == content_key(('homology', 8))


def test_tampered_cache_entry(tmp_path):
    cache = ResultCache(tmp_path)
    key = content_key('entry')
    path = cache.store(key, [Check('a', 'claim', 'pass', '16', '16')._asdict()])
    path.write_bytes(path.read_bytes().replace(b'"computed":"16"', b'"computed":"17"'))
    with pytest.raises(CacheCorrupt):
        cache.load(key)


def test_suite_config_validation():
    with pytest.raises(InvalidConfig):
        SuiteConfig(trunc=-1)
    with pytest.raises(InvalidConfig):
        SuiteConfig(format='xml')
    with pytest.raises(InvalidConfig):
        SuiteConfig(jobs=0)
    with pytest.raises(InvalidConfig):
        SuiteConfig.from_mapping({'trunk': 3})
    assert SuiteConfig.from_mapping({'_comment': 'x', 'trunc': 3, 'cache_dir': None}) == SuiteConfig(trunc=3)


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite('nonsense')


def test_runner_uses_cache(fake_suite, tmp_path):
    config = SuiteConfig(trunc=6, cache_dir=str(tmp_path))
    first = run_suite('brackets', config)
    second = run_suite('brackets', config)
    assert CALLS == [6]
    assert first.checks == second.checks
    assert emit_report(first, 'json') == emit_report(second, 'json')

    run_suite('brackets', SuiteConfig(trunc=4, cache_dir=str(tmp_path)))
    assert CALLS == [6, 4]


def test_runner_recomputes_corrupt_entry(fake_suite, tmp_path, caplog):
    config = SuiteConfig(trunc=6, cache_dir=str(tmp_path))
    runner = SuiteRunner('brackets', config)
    runner.run()
    task = runner.tasks()[0]
    runner.cache.path_for(task.cache_key).write_text('{"rows": [], "digest": "0"}')
    with caplog.at_level(logging.WARNING):
        report = runner.run()
    assert CALLS == [6, 6]
    assert report.checks[0].status == 'pass'
    assert 'recomputing' in caplog.text


def test_parallel_matches_serial(monkeypatch):
    monkeypatch.setitem(suite_runner.SUITES, 'brackets',
                        lambda cfg: [Task(f"fake/{k}", counting_task, (k,)) for k in range(6)])
    serial = run_suite('brackets', SuiteConfig(jobs=1))
    parallel = run_suite('brackets', SuiteConfig(jobs=3))
    assert [c.id for c in parallel.checks] == [f"fake/{k}" for k in range(6)]
    assert serial.checks == parallel.checks


def test_all_runs_every_suite(monkeypatch):
    for name in list(suite_runner.SUITES):
        monkeypatch.setitem(suite_runner.SUITES, name, lambda cfg, name=name: [Task(name, failing_task)])
    report = run_suite('all', SuiteConfig())
    assert len(report.checks) == len(suite_runner.SUITES)
    assert report.summary['fail'] == len(suite_runner.SUITES)
