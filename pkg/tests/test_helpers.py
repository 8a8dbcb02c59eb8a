import logging

import numpy as np
import pytest

from lib.errors import CapExceededError, ConfigParseError
from lib.helpers.config_helper import DEFAULT_OPTIONS, dict2str, load_options, merge_options
from lib.helpers.report_helper import RunReport, digest
from lib.helpers.target_helper import parse_coefficients, parse_partition, parse_target
from lib.helpers.utils_helper import LOGGER_NAME, create_logger
from lib.states.dicke import dicke_state
from lib.states.qstate import dump_state, fidelity


class TestOptions:

    def test_defaults_file(self):
        opt = load_options()
        assert opt['state']['max_modes'] == 14
        assert opt['oracle']['max_sources'] == 8
        assert opt['tolerance']['agreement'] == 1e-10
        assert isinstance(opt['design']['degree_tol'], float)

    def test_overrides_win(self, tmp_path):
        path = tmp_path / 'options.yaml'
        path.write_text('state:\n  max_modes: 10\nextra:\n  key: 1\n')
        opt = load_options(str(path), {'state': {'max_modes': 6}})
        assert opt['state']['max_modes'] == 6
        assert opt['extra'] == {'key': 1}
        assert opt['oracle'] == DEFAULT_OPTIONS['oracle']

    def test_merge_does_not_touch_inputs(self):
        base = {'a': {'b': 1, 'c': 2}}
        merged = merge_options(base, {'a': {'b': 3}})
        assert merged == {'a': {'b': 3, 'c': 2}}
        assert base == {'a': {'b': 1, 'c': 2}}

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigParseError):
            load_options(str(tmp_path / 'nope.yaml'))

    def test_dict2str(self):
        text = dict2str({'state': {'max_modes': 14}})
        assert 'state:[' in text
        assert 'max_modes: 14' in text


def test_create_logger_is_idempotent(tmp_path):
    log = str(tmp_path / 'run.log')
    first = create_logger(log, level='DEBUG')
    count = len(first.handlers)
    second = create_logger(log, level='INFO')
    assert first is second
    assert len(second.handlers) == count
    assert second.level == logging.INFO
    logging.getLogger(LOGGER_NAME + '.states.qstate').warning('from a child logger')
    for handler in second.handlers:
        handler.flush()
    with open(log, 'r') as f:
        assert 'from a child logger' in f.read()


class TestTargets:

    def test_coefficients(self):
        np.testing.assert_allclose(parse_coefficients('0.5, 0.5j,1'), [0.5, 0.5j, 1])
        with pytest.raises(ConfigParseError):
            parse_coefficients('1')
        with pytest.raises(ConfigParseError):
            parse_coefficients('1,x')

    def test_partition(self):
        assert parse_partition('1,3') == (3, 1)
        assert parse_partition('4') == (4,)
        for text in ['2,0', '2,x', '']:
            with pytest.raises(ConfigParseError):
                parse_partition(text)

    def test_forms(self, tmp_path):
        assert fidelity(parse_target('dicke:0,1,0'), dicke_state(2, 1)) == pytest.approx(1.0)
        assert fidelity(parse_target('path:1/2,1;m=0'), dicke_state(2, 1)) == pytest.approx(1.0)
        assert parse_target('ghz', n=4).n_modes == 4
        assert fidelity(parse_target('w', n=3), dicke_state(3, 1)) == pytest.approx(1.0)

        dump = tmp_path / 'state.txt'
        dump.write_text('\n'.join(dump_state(dicke_state(3, 2))))
        assert fidelity(parse_target(str(dump)), dicke_state(3, 2)) == pytest.approx(1.0)

    def test_unknown(self):
        with pytest.raises(ConfigParseError):
            parse_target('bell')
        with pytest.raises(ConfigParseError):
            parse_target('w')

    def test_size_cap(self, tmp_path):
        dump = tmp_path / 'wide.txt'
        dump.write_text('1' * 40 + ' 1 0\n')
        for literal, n in [(str(dump), None), ('dicke:' + ','.join(['1'] * 41), None),
                           ('ghz', 5), ('path:1/2,1,3/2,2,5/2;m=1/2', None)]:
            with pytest.raises(CapExceededError):
                parse_target(literal, n=n, max_modes=4)


def test_report_dict():
    report = RunReport('simulate', digest('a', b'b'))
    report.set_state(dicke_state(2, 1))
    out = report.to_dict()
    assert list(out)[:4] == ['command', 'input_digest', 'destructive_interference', 'state']
    assert len(out['state']) == 2
    assert 'fidelity' not in out
    assert digest('a', 'b') != digest('ab')
