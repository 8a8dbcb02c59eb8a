''' dense state vectors of N polarization qubits '''
import enum
from dataclasses import dataclass

import numpy as np

from lib.errors import CapExceededError, ConfigParseError, ZeroNormError

MAX_MODES = 14
# amplitudes below this fraction of the largest one do not fix the global phase
PHASE_REF_TOL = 1e-12


class Polarization(enum.IntEnum):
    PLUS = 0    # sigma+
    MINUS = 1   # sigma-

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        if key in ('plus', '+', 'sigma+', '0'):
            return cls.PLUS
        if key in ('minus', '-', 'sigma-', '1'):
            return cls.MINUS
        raise ValueError('Unknown polarization %r' % (value,))


@dataclass(frozen=True, eq=False)
class StateVector:
    """Amplitudes over the 2^n_modes polarization basis.

    Bit m of a basis index is 1 iff mode m carries sigma-, so the number of
    sigma- excitations of a basis state is the popcount of its index.
    """
    n_modes: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.n_modes < 1:
            raise ValueError('n_modes must be positive, got %d' % self.n_modes)
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.shape[0] != 1 << self.n_modes:
            raise ValueError('Expected %d amplitudes for %d modes, got %d'
                             % (1 << self.n_modes, self.n_modes, amps.shape[0]))
        amps.flags.writeable = False
        object.__setattr__(self, 'amplitudes', amps)

    @classmethod
    def zeros(cls, n_modes):
        return cls(n_modes, np.zeros(1 << n_modes, dtype=np.complex128))

    @classmethod
    def basis(cls, polarizations):
        n = len(polarizations)
        amps = np.zeros(1 << n, dtype=np.complex128)
        amps[basis_index(polarizations)] = 1.0
        return cls(n, amps)

    @property
    def dim(self):
        return self.amplitudes.shape[0]

    def squared_norm(self):
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def norm(self):
        return float(np.sqrt(self.squared_norm()))

    def is_normalized(self, tol=1e-12):
        return abs(self.squared_norm() - 1.0) <= tol

    def inner(self, other):
        """<self|other>."""
        _check_same_modes(self, other)
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def scaled(self, factor):
        return StateVector(self.n_modes, self.amplitudes * factor)

    def __add__(self, other):
        _check_same_modes(self, other)
        return StateVector(self.n_modes, self.amplitudes + other.amplitudes)

    def __sub__(self, other):
        _check_same_modes(self, other)
        return StateVector(self.n_modes, self.amplitudes - other.amplitudes)

    def permuted(self, perm):
        """Relabel modes: mode m of the result is mode perm[m] of self."""
        if sorted(perm) != list(range(self.n_modes)):
            raise ValueError('%r is not a permutation of the modes' % (perm,))
        out = np.zeros_like(self.amplitudes)
        for index in range(self.dim):
            target = 0
            for m, src in enumerate(perm):
                target |= ((index >> src) & 1) << m
            out[target] = self.amplitudes[index]
        return StateVector(self.n_modes, out)

    def __repr__(self):
        return 'StateVector(n_modes=%d, nnz=%d)' % (
            self.n_modes, int(np.count_nonzero(self.amplitudes)))


def check_mode_cap(n_modes, max_modes=MAX_MODES):
    if n_modes > max_modes:
        raise CapExceededError('%d modes exceed the state cap of %d modes' % (n_modes, max_modes))


def _check_same_modes(a, b):
    if a.n_modes != b.n_modes:
        raise ValueError('Mode count mismatch: %d vs %d' % (a.n_modes, b.n_modes))


def basis_index(polarizations):
    """Index of the product basis state with the given per-mode polarizations.

    Args:
        polarizations (list): One entry per mode, mode 0 first. Entries are
            Polarization members or anything Polarization.parse accepts.

    Returns:
        int: Index in [0, 2^N).
    """
    if len(polarizations) == 0:
        raise ValueError('At least one mode is required')
    index = 0
    for m, pol in enumerate(polarizations):
        if Polarization.parse(pol) == Polarization.MINUS:
            index |= 1 << m
    return index


def basis_polarizations(index, n_modes):
    if not 0 <= index < (1 << n_modes):
        raise ValueError('Index %d out of range for %d modes' % (index, n_modes))
    return [Polarization((index >> m) & 1) for m in range(n_modes)]


def bitstring(index, n_modes):
    """Mode 0 leftmost, '1' for sigma-."""
    return ''.join(str((index >> m) & 1) for m in range(n_modes))


def parse_bitstring(bits):
    if not bits or set(bits) - {'0', '1'}:
        raise ValueError('Invalid bitstring %r' % (bits,))
    return sum(1 << m for m, b in enumerate(bits) if b == '1')


def canonical_phase(v):
    """Rotate the global phase so the first significant amplitude is real positive."""
    amps = v.amplitudes
    scale = np.max(np.abs(amps)) if amps.size else 0.0
    if scale == 0.0:
        return v
    significant = np.flatnonzero(np.abs(amps) > PHASE_REF_TOL * scale)
    ref = amps[significant[0]]
    out = amps * (abs(ref) / ref)
    out[significant[0]] = abs(ref)
    return StateVector(v.n_modes, out)


def normalize(v):
    """Unit-norm, canonical-phase copy of v.

    Raises:
        ZeroNormError: v has zero norm.
    """
    norm = v.norm()
    if norm == 0.0 or not np.isfinite(norm):
        raise ZeroNormError('Cannot normalize a state of norm %r' % norm)
    return canonical_phase(StateVector(v.n_modes, v.amplitudes / norm))


def fidelity(a, b):
    """|<a|b>|^2 / (|a|^2 |b|^2), insensitive to norms and global phases."""
    _check_same_modes(a, b)
    na, nb = a.squared_norm(), b.squared_norm()
    if na == 0.0 or nb == 0.0:
        raise ZeroNormError('Fidelity is undefined for a zero vector')
    overlap = abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2
    return float(min(max(overlap / (na * nb), 0.0), 1.0))


def max_deviation(a, b):
    _check_same_modes(a, b)
    return float(np.max(np.abs(a.amplitudes - b.amplitudes)))


def dump_state(v):
    """One line per nonzero amplitude: '<bitstring> <re> <im>' at 17 significant digits."""
    lines = []
    for index in np.flatnonzero(v.amplitudes):
        amp = v.amplitudes[index]
        lines.append('%s %.17g %.17g' % (bitstring(int(index), v.n_modes), amp.real, amp.imag))
    return lines


def load_state(text, n_modes=None, max_modes=MAX_MODES):
    """Inverse of dump_state; blank lines and '#' comments are skipped.

    Raises:
        ConfigParseError: Malformed line or empty dump.
        CapExceededError: The bitstrings are longer than max_modes.
    """
    if n_modes is not None:
        check_mode_cap(n_modes, max_modes)
    entries = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 3:
            raise ConfigParseError('line %d: expected "<bitstring> <re> <im>", got %r' % (lineno, raw))
        try:
            index = parse_bitstring(fields[0])
            amp = complex(float(fields[1]), float(fields[2]))
        except ValueError as e:
            raise ConfigParseError('line %d: %s' % (lineno, e))
        if n_modes is None:
            n_modes = len(fields[0])
            check_mode_cap(n_modes, max_modes)
        elif len(fields[0]) != n_modes:
            raise ConfigParseError('line %d: bitstring length %d, expected %d'
                                   % (lineno, len(fields[0]), n_modes))
        entries.append((index, amp))
    if n_modes is None:
        raise ConfigParseError('State dump is empty')
    amps = np.zeros(1 << n_modes, dtype=np.complex128)
    for index, amp in entries:
        amps[index] += amp
    return StateVector(n_modes, amps)
