''' total angular momentum eigenstates: coupling paths, reference states, wiring protocol '''
import math
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from lib.errors import CapExceededError, ConfigParseError, SetupValidationError, Violation
from lib.setups.setup_model import FiberNetwork, PolarizerSetting, SetupConfig
from lib.states.qstate import MAX_MODES, StateVector, normalize


@dataclass(frozen=True)
class CouplingPath:
    """Intermediate total spins S_1..S_N and the projection m_s, all doubled.

    (1/2, 1, 1/2; m = +1/2) is stored as spins2=(1, 2, 1), m2=1.
    """
    spins2: tuple
    m2: int

    def __post_init__(self):
        object.__setattr__(self, 'spins2', tuple(int(s) for s in self.spins2))
        object.__setattr__(self, 'm2', int(self.m2))

    @property
    def n(self):
        return len(self.spins2)

    def n_minus(self):
        """Number of sigma- photons, N/2 + m_s."""
        return (self.n + self.m2) // 2

    def __str__(self):
        return format_path(self)


def _half(value2):
    return str(Fraction(value2, 2))


def format_path(path):
    m = Fraction(path.m2, 2)
    sign = '+' if m > 0 else ''
    return '%s;m=%s%s' % (','.join(_half(s) for s in path.spins2), sign, m)


_M_RE = re.compile(r'^\s*m\s*=\s*([+-]?[0-9/]+)\s*$')


def _doubled(text, what):
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ConfigParseError('%s: %r is not a number' % (what, text))
    if (2 * value).denominator != 1:
        raise ConfigParseError('%s: %s is not a multiple of 1/2' % (what, text))
    return int(2 * value)


def parse_path(literal):
    """Parse '1/2,1,3/2;m=+1/2'."""
    if ';' not in literal:
        raise ConfigParseError('path literal %r lacks ";m=<m_s>"' % literal)
    spins_text, m_text = literal.split(';', 1)
    match = _M_RE.match(m_text)
    if not match:
        raise ConfigParseError('path literal %r: expected "m=<m_s>" after ";"' % literal)
    if not spins_text.strip():
        raise ConfigParseError('path literal %r has no spins' % literal)
    spins2 = [_doubled(s, 'spin %d' % (i + 1)) for i, s in enumerate(spins_text.split(','))]
    return CouplingPath(tuple(spins2), _doubled(match.group(1), 'm'))


def validate_path(path):
    violations = []
    spins = path.spins2
    if not spins:
        return [Violation('empty', 'coupling path has no spins')]
    if spins[0] != 1:
        violations.append(Violation('first_spin', 'S_1 must be 1/2, got %s' % _half(spins[0])))
    for j in range(1, len(spins)):
        if spins[j] < 0:
            violations.append(Violation('negative_spin', 'S_%d = %s is negative' % (j + 1, _half(spins[j]))))
        if abs(spins[j] - spins[j - 1]) != 1:
            violations.append(Violation('step', 'S_%d = %s differs from S_%d = %s by more than 1/2 or not at all'
                                        % (j + 1, _half(spins[j]), j, _half(spins[j - 1]))))
    if abs(path.m2) > spins[-1]:
        violations.append(Violation('projection', '|m_s| = %s exceeds S_N = %s'
                                    % (_half(abs(path.m2)), _half(spins[-1]))))
    if (path.m2 - len(spins)) % 2 != 0:
        violations.append(Violation('parity', 'm_s = %s is not congruent to N/2 = %s mod 1'
                                    % (_half(path.m2), _half(len(spins)))))
    return violations


def _require_valid(path):
    violations = validate_path(path)
    if violations:
        raise SetupValidationError('Invalid coupling path %s' % format_path(path), violations)


def enumerate_paths(n):
    """Every valid (path, m_s) for n spins: paths in lexicographic order, m_s descending."""
    if n < 1:
        raise ValueError('n must be positive, got %d' % n)
    sequences = [(1,)]
    for _ in range(n - 1):
        grown = []
        for seq in sequences:
            for step in (-1, 1):
                if seq[-1] + step >= 0:
                    grown.append(seq + (seq[-1] + step,))
        sequences = grown
    paths = []
    for seq in sorted(sequences):
        for m2 in range(seq[-1], -seq[-1] - 1, -2):
            paths.append(CouplingPath(seq, m2))
    return paths


def _coupled_amplitudes(spins2, m2, cache):
    """Real amplitudes of |S_1..S_j; m> over 2^j basis states, j = len(spins2).

    Adding spin-1/2 number j to spin j1 = S_{j-1}, with J = 2 j1:
      S_j = j1 + 1/2:  up = sqrt((J + m2 + 1) / 2(J + 1)),  down = sqrt((J - m2 + 1) / 2(J + 1))
      S_j = j1 - 1/2:  up = -sqrt((J - m2 + 1) / 2(J + 1)), down = sqrt((J + m2 + 1) / 2(J + 1))
    where up pairs |j1, m - 1/2> with |+> and down pairs |j1, m + 1/2> with |->.
    The new spin is the highest mode; |+> is sigma- (bit 1).
    """
    key = (spins2, m2)
    if key in cache:
        return cache[key]
    j = len(spins2)
    if j == 1:
        amps = np.array([0.0, 1.0]) if m2 == 1 else np.array([1.0, 0.0])
        cache[key] = amps
        return amps
    prev = spins2[:-1]
    big_j = prev[-1]
    denom = 2.0 * (big_j + 1)
    if spins2[-1] == big_j + 1:
        c_up = math.sqrt((big_j + m2 + 1) / denom)
        c_down = math.sqrt((big_j - m2 + 1) / denom)
    else:
        c_up = -math.sqrt((big_j - m2 + 1) / denom)
        c_down = math.sqrt((big_j + m2 + 1) / denom)
    size = 1 << (j - 1)
    lower = np.zeros(size)
    upper = np.zeros(size)
    if abs(m2 + 1) <= big_j and c_down != 0.0:
        lower = c_down * _coupled_amplitudes(prev, m2 + 1, cache)
    if abs(m2 - 1) <= big_j and c_up != 0.0:
        upper = c_up * _coupled_amplitudes(prev, m2 - 1, cache)
    amps = np.concatenate([lower, upper])
    cache[key] = amps
    return amps


def reference_state(path, max_modes=MAX_MODES):
    """The eigenstate |S_1..S_N; m_s> in the photonic basis, canonical phase."""
    _require_valid(path)
    if path.n > max_modes:
        raise CapExceededError('%d spins exceed the state cap of %d modes' % (path.n, max_modes))
    amps = _coupled_amplitudes(path.spins2, path.m2, {})
    return normalize(StateVector(path.n, amps.astype(np.complex128)))


def angmom_basis(n, max_modes=MAX_MODES):
    """All 2^n (path, state) pairs, orthonormal, in enumerate_paths order."""
    if n > max_modes:
        raise CapExceededError('%d spins exceed the state cap of %d modes' % (n, max_modes))
    cache = {}
    basis = []
    for path in enumerate_paths(n):
        amps = _coupled_amplitudes(path.spins2, path.m2, cache)
        basis.append((path, normalize(StateVector(n, amps.astype(np.complex128)))))
    return basis


def angmom_decompose(v, max_modes=MAX_MODES):
    """Projections <path|v> on the full angular momentum basis."""
    return [(path, ref.inner(v)) for path, ref in angmom_basis(v.n_modes, max_modes=max_modes)]


def compile_protocol(path):
    """Wire the switch-board for |S_1..S_N; m_s>.

    Sources 1..N/2-m_s carry sigma+ devices, the rest sigma-. Detector 1 sees
    every source. For j >= 2: if S_j grows, detector j sees every source not
    yet consumed; if S_j shrinks, detector j sees the lowest unconsumed sigma-
    source through a fiber with phase pi and the lowest unconsumed sigma+
    source with phase 0, and both sources are consumed.
    """
    _require_valid(path)
    n = path.n
    n_minus = path.n_minus()
    n_plus = n - n_minus
    settings = [PolarizerSetting.sigma_plus()] * n_plus + [PolarizerSetting.sigma_minus()] * n_minus
    plus_sources = list(range(n_plus))
    minus_sources = list(range(n_plus, n))

    t = np.zeros((n, n), dtype=np.complex128)
    t[:, 0] = 1.0
    consumed = set()
    for j in range(1, n):
        if path.spins2[j] > path.spins2[j - 1]:
            for source in range(n):
                if source not in consumed:
                    t[source, j] = 1.0
            continue
        minus = next((s for s in minus_sources if s not in consumed), None)
        plus = next((s for s in plus_sources if s not in consumed), None)
        assert minus is not None and plus is not None, \
            'no unconsumed sigma-/sigma+ pair left at detector %d for %s' % (j + 1, format_path(path))
        t[minus, j] = -1.0    # e^{i pi}
        t[plus, j] = 1.0
        consumed.update((minus, plus))
    return SetupConfig(n, settings, FiberNetwork(n, t), name='angmom_' + format_path(path))
