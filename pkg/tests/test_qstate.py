import itertools
import math

import numpy as np
import pytest

from lib.errors import CapExceededError, ConfigParseError, ZeroNormError
from lib.states.qstate import (Polarization, StateVector, basis_index, basis_polarizations, bitstring,
                               canonical_phase, dump_state, fidelity, load_state, normalize, parse_bitstring)


def test_basis_index_examples():
    assert basis_index(['plus', 'plus']) == 0
    assert basis_index([Polarization.PLUS, Polarization.MINUS]) == 2
    assert basis_index(['-', '-', '-']) == 7


def test_basis_index_is_a_bijection():
    """Every polarization tuple up to six modes maps to a distinct index and back."""
    for n in range(1, 7):
        seen = set()
        for pols in itertools.product([Polarization.PLUS, Polarization.MINUS], repeat=n):
            index = basis_index(list(pols))
            assert 0 <= index < 2 ** n
            assert basis_polarizations(index, n) == list(pols)
            seen.add(index)
        assert len(seen) == 2 ** n


def test_basis_index_rejects_empty():
    with pytest.raises(ValueError):
        basis_index([])


def test_polarization_parse_rejects_garbage():
    with pytest.raises(ValueError):
        Polarization.parse('horizontal')


def test_bitstring_puts_mode_zero_first():
    assert bitstring(2, 2) == '01'
    assert bitstring(1, 3) == '100'
    assert parse_bitstring('01') == 2
    with pytest.raises(ValueError):
        parse_bitstring('012')


def test_state_vector_checks_size():
    with pytest.raises(ValueError):
        StateVector(2, np.zeros(3))
    v = StateVector.zeros(3)
    assert v.dim == 8
    with pytest.raises(ValueError):
        v.amplitudes[0] = 1.0


def test_normalize_examples():
    v = normalize(StateVector(2, [2, 0, 0, 0]))
    np.testing.assert_allclose(v.amplitudes, [1, 0, 0, 0])

    w = normalize(StateVector(1, [1j, 1j]))
    np.testing.assert_allclose(w.amplitudes, [1 / math.sqrt(2), 1 / math.sqrt(2)], atol=1e-15)

    with pytest.raises(ZeroNormError):
        normalize(StateVector(1, [0, 0]))


def test_normalize_properties(rng):
    for _ in range(20):
        n = int(rng.integers(1, 6))
        amps = rng.normal(size=2 ** n) + 1j * rng.normal(size=2 ** n)
        v = normalize(StateVector(n, amps))
        assert v.is_normalized(1e-12)
        first = np.flatnonzero(np.abs(v.amplitudes) > 0)[0]
        assert v.amplitudes[first].imag == 0.0
        assert v.amplitudes[first].real > 0.0
        # already normalized input only has its phase fixed
        np.testing.assert_allclose(normalize(v).amplitudes, v.amplitudes, atol=1e-15)


def test_canonical_phase_ignores_tiny_leading_amplitudes():
    v = canonical_phase(StateVector(1, [1e-20j, -1.0]))
    assert v.amplitudes[1] == 1.0


def test_fidelity_examples():
    a = StateVector(2, [0.3, 0.1j, -0.2, 0.5])
    assert fidelity(a, a) == pytest.approx(1.0, abs=1e-15)
    assert fidelity(StateVector.basis(['+', '+']), StateVector.basis(['-', '-'])) == 0.0
    d21 = StateVector(2, [0, 1 / math.sqrt(2), 1 / math.sqrt(2), 0])
    assert fidelity(d21, StateVector.basis(['+', '-'])) == pytest.approx(0.5, abs=1e-15)


def test_fidelity_is_phase_and_norm_invariant(rng):
    for _ in range(20):
        a = StateVector(3, rng.normal(size=8) + 1j * rng.normal(size=8))
        b = StateVector(3, rng.normal(size=8) + 1j * rng.normal(size=8))
        f = fidelity(a, b)
        assert 0.0 <= f <= 1.0
        assert fidelity(b, a) == pytest.approx(f, abs=1e-12)
        assert fidelity(a.scaled(3.0 * np.exp(0.7j)), b) == pytest.approx(f, abs=1e-12)


def test_fidelity_errors():
    with pytest.raises(ValueError):
        fidelity(StateVector.zeros(1), StateVector.zeros(2))
    with pytest.raises(ZeroNormError):
        fidelity(StateVector.zeros(1), StateVector.basis(['+']))


def test_permuted_swaps_modes():
    v = StateVector.basis(['-', '+', '+'])
    assert np.flatnonzero(v.permuted([1, 0, 2]).amplitudes).tolist() == [basis_index(['+', '-', '+'])]
    with pytest.raises(ValueError):
        v.permuted([0, 0, 1])


def test_dump_and_load_state(rng):
    amps = rng.normal(size=8) + 1j * rng.normal(size=8)
    amps[3] = 0.0
    v = StateVector(3, amps)
    lines = dump_state(v)
    assert len(lines) == 7
    assert lines[0].split()[0] == '000'
    w = load_state('# comment\n' + '\n'.join(lines) + '\n\n')
    assert np.array_equal(w.amplitudes, v.amplitudes)


def test_load_state_errors():
    with pytest.raises(ConfigParseError):
        load_state('')
    with pytest.raises(ConfigParseError):
        load_state('01 1.0')
    with pytest.raises(ConfigParseError):
        load_state('01 1.0 0.0\n011 1.0 0.0')
    with pytest.raises(ConfigParseError):
        load_state('0x 1.0 0.0')


def test_load_state_refuses_oversized_dumps():
    with pytest.raises(CapExceededError):
        load_state('1' * 40 + ' 1.0 0.0')
    with pytest.raises(CapExceededError):
        load_state('0101 1.0 0.0', max_modes=3)
    assert load_state('0101 1.0 0.0', max_modes=4).n_modes == 4
