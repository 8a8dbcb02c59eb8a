import math

import numpy as np
import pytest

from lib.designers.angmom import (CouplingPath, angmom_basis, angmom_decompose, compile_protocol, enumerate_paths,
                                  format_path, parse_path, reference_state, validate_path)
from lib.errors import CapExceededError, ConfigParseError, SetupValidationError
from lib.setups.setup_model import FiberNetwork, SetupConfig, validate
from lib.simulators.emission import generate_state
from lib.states.dicke import dicke_state
from lib.states.qstate import StateVector, fidelity


def _state(n, terms):
    """Sum of coefficient * basis state, basis states given as '+'/'-' strings."""
    out = StateVector.zeros(n)
    for pols, coeff in terms:
        out = out + StateVector.basis(list(pols)).scaled(coeff)
    return out


class TestPathLiterals:

    def test_parse_and_format(self):
        path = parse_path('1/2,1,3/2;m=+1/2')
        assert path == CouplingPath((1, 2, 3), 1)
        assert format_path(path) == '1/2,1,3/2;m=+1/2'
        assert format_path(parse_path(' 1/2 , 0 ; m = 0 ')) == '1/2,0;m=0'
        assert format_path(CouplingPath((1,), -1)) == '1/2;m=-1/2'

    def test_enumerated_paths_survive_formatting(self):
        for path in enumerate_paths(4):
            assert parse_path(format_path(path)) == path

    @pytest.mark.parametrize('literal', ['1/2,1', '1/2,1;s=0', ';m=0', '1/2,x;m=0', '1/3;m=0', '1/2;m=1/4'])
    def test_parse_errors(self, literal):
        with pytest.raises(ConfigParseError):
            parse_path(literal)


class TestValidatePath:

    def test_triplet_is_valid(self):
        assert validate_path(parse_path('1/2,1;m=0')) == []

    def test_step_too_large(self):
        assert [v.kind for v in validate_path(parse_path('1/2,3/2;m=1'))] == ['step']
        assert 'step' in [v.kind for v in validate_path(parse_path('1/2,3/2;m=1/2'))]

    def test_projection_too_large(self):
        assert [v.kind for v in validate_path(parse_path('1/2,0,1/2;m=3/2'))] == ['projection']

    def test_other_violations(self):
        assert 'first_spin' in [v.kind for v in validate_path(parse_path('3/2,1;m=0'))]
        assert 'parity' in [v.kind for v in validate_path(parse_path('1/2,1;m=1/2'))]
        assert 'step' in [v.kind for v in validate_path(parse_path('1/2,1/2;m=0'))]

    def test_reference_state_rejects_invalid_path(self):
        with pytest.raises(SetupValidationError):
            reference_state(parse_path('1/2,3/2;m=1/2'))


class TestReferenceState:

    def test_singlet(self):
        expected = _state(2, [('-+', 1 / math.sqrt(2)), ('+-', -1 / math.sqrt(2))])
        np.testing.assert_allclose(reference_state(parse_path('1/2,0;m=0')).amplitudes, expected.amplitudes,
                                   atol=1e-15)

    def test_stretched_states(self):
        assert fidelity(reference_state(parse_path('1/2,1;m=1')), StateVector.basis(['-', '-'])) == 1.0
        assert fidelity(reference_state(parse_path('1/2,1,3/2;m=3/2')), StateVector.basis(['-'] * 3)) == 1.0

    def test_maximal_spin_is_dicke(self):
        state = reference_state(parse_path('1/2,1,3/2;m=1/2'))
        assert fidelity(state, dicke_state(3, 2)) == pytest.approx(1.0, abs=1e-15)
        for n in range(1, 6):
            spins = tuple(range(1, n + 1))
            for m2 in range(n, -n - 1, -2):
                state = reference_state(CouplingPath(spins, m2))
                assert fidelity(state, dicke_state(n, (n + m2) // 2)) == pytest.approx(1.0, abs=1e-12)

    def test_cap(self):
        with pytest.raises(CapExceededError):
            reference_state(CouplingPath(tuple(range(1, 6)), 5), max_modes=4)


class TestBasis:

    def test_single_spin(self):
        basis = angmom_basis(1)
        assert [format_path(p) for p, _ in basis] == ['1/2;m=+1/2', '1/2;m=-1/2']
        assert basis[0][1].amplitudes.tolist() == [0, 1]
        assert basis[1][1].amplitudes.tolist() == [1, 0]

    @pytest.mark.parametrize('n', [1, 2, 3, 4])
    def test_orthonormal_and_complete(self, n):
        basis = angmom_basis(n)
        assert len(basis) == 2 ** n
        mat = np.array([state.amplitudes for _, state in basis])
        np.testing.assert_allclose(mat.conj() @ mat.T, np.eye(2 ** n), atol=1e-10)

    def test_two_spins(self):
        literals = [format_path(p) for p in enumerate_paths(2)]
        assert literals == ['1/2,0;m=0', '1/2,1;m=+1', '1/2,1;m=0', '1/2,1;m=-1']

    def test_decompose_preserves_norm(self, rng):
        v = StateVector(3, rng.normal(size=8) + 1j * rng.normal(size=8))
        projections = angmom_decompose(v)
        assert len(projections) == 8
        total = sum(abs(amp) ** 2 for _, amp in projections)
        assert total == pytest.approx(v.squared_norm(), rel=1e-12)


class TestCompileProtocol:

    def test_singlet_wiring(self, singlet_config):
        config = compile_protocol(parse_path('1/2,0;m=0'))
        np.testing.assert_array_equal(config.network.couplings, singlet_config.network.couplings)
        assert config.settings == singlet_config.settings
        state = generate_state(config).normalized()
        assert fidelity(state, reference_state(parse_path('1/2,0;m=0'))) == pytest.approx(1.0, abs=1e-15)
        np.testing.assert_allclose(state.permuted([1, 0]).amplitudes, -state.amplitudes, atol=1e-12)

    def test_triplet_is_fully_connected(self):
        config = compile_protocol(parse_path('1/2,1;m=0'))
        np.testing.assert_array_equal(config.network.couplings, np.ones((2, 2)))
        state = generate_state(config).normalized()
        assert fidelity(state, dicke_state(2, 1)) == pytest.approx(1.0, abs=1e-15)

    def test_maximal_path_is_dicke_setup(self):
        config = compile_protocol(parse_path('1/2,1,3/2,2;m=0'))
        np.testing.assert_array_equal(config.network.couplings, np.ones((4, 4)))
        assert sum(abs(s.beta) == 1.0 for s in config.settings) == 2

    @pytest.mark.parametrize('n', [2, 3, 4])
    def test_all_paths_reach_their_reference(self, n):
        """Every valid (path, m_s) up to four spins: 4 + 8 + 16 states."""
        paths = enumerate_paths(n)
        assert len(paths) == 2 ** n
        for path in paths:
            config = compile_protocol(path)
            assert validate(config) == []
            state = generate_state(config).normalized()
            assert fidelity(state, reference_state(path)) >= 1 - 1e-9, format_path(path)

    def test_consumed_sources_stay_off_later_detectors(self):
        path = parse_path('1/2,0,1/2,1;m=0')
        t = compile_protocol(path).network.couplings
        # detector 2 pairs a sigma- source with a sigma+ source
        linked = np.flatnonzero(t[:, 1])
        assert len(linked) == 2
        assert sorted(t[linked, 1].real.tolist()) == [-1.0, 1.0]
        for later in (2, 3):
            assert not np.any(t[linked, later])
            assert np.all(t[np.setdiff1d(np.arange(4), linked), later] == 1.0)

    def test_growing_step_keeps_future_pair_sources(self):
        """Detector j with a growing spin also sees sources that a later shrinking step pairs up."""
        path = parse_path('1/2,1,1/2;m=1/2')
        config = compile_protocol(path)
        assert np.all(config.network.couplings[:, 1] == 1.0)

        # the same wiring with the later pair cut off from detector 2 misses the target
        t = np.array(config.network.couplings)
        paired = np.flatnonzero(t[:, 2])
        t[paired, 1] = 0.0
        pruned = SetupConfig(3, config.settings, FiberNetwork(3, t))
        state = generate_state(pruned).normalized()
        assert fidelity(state, reference_state(path)) == pytest.approx(0.75, abs=1e-12)

    def test_invalid_path(self):
        with pytest.raises(SetupValidationError):
            compile_protocol(parse_path('1/2,3/2;m=1/2'))
