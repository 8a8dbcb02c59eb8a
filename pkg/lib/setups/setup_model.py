''' data model of the switch-board: polarizer settings, fiber network, full setup '''
import math
from dataclasses import dataclass, field

import mpmath as mp
import numpy as np

from lib.errors import Violation

TWO_PI = 2.0 * math.pi
# working precision (decimal digits) for reducing k*R
PHASE_DPS = 50


def phase_from_length(wavenumber, path_length):
    """Optical phase k*R accumulated along a fiber, reduced to [0, 2*pi).

    The product of the two doubles is reduced against 2*pi in mpmath at
    PHASE_DPS digits, so long fibers (k*R ~ 1e7 rad) keep full precision.
    """
    if not wavenumber > 0:
        raise ValueError('wavenumber must be positive, got %r' % (wavenumber,))
    if not path_length >= 0:
        raise ValueError('path_length must be non-negative, got %r' % (path_length,))
    with mp.workdps(PHASE_DPS):
        phase = mp.fmod(mp.mpf(float(wavenumber)) * mp.mpf(float(path_length)), 2 * mp.pi)
    return reduce_phase(float(phase))


def reduce_phase(phase):
    phase = math.fmod(phase, TWO_PI)
    if phase < 0:
        phase += TWO_PI
    # fmod can land on 2*pi after the correction above
    return 0.0 if phase >= TWO_PI else phase


@dataclass(frozen=True)
class PolarizerSetting:
    """epsilon_n = alpha * sigma+ + beta * sigma-."""
    alpha: complex
    beta: complex

    def __post_init__(self):
        object.__setattr__(self, 'alpha', complex(self.alpha))
        object.__setattr__(self, 'beta', complex(self.beta))

    @classmethod
    def sigma_plus(cls):
        return cls(1.0, 0.0)

    @classmethod
    def sigma_minus(cls):
        return cls(0.0, 1.0)

    @classmethod
    def from_angles(cls, theta, phi=0.0):
        """Wave-plate style parametrization (cos theta, e^{i phi} sin theta)."""
        return cls(math.cos(theta), complex(math.cos(phi), math.sin(phi)) * math.sin(theta))

    @classmethod
    def from_ratio(cls, ratio):
        """Setting with alpha / beta = ratio."""
        scale = math.hypot(1.0, abs(ratio))
        return cls(complex(ratio) / scale, 1.0 / scale)

    def to_angles(self):
        """(theta, phi) with theta in [0, pi/2]; inverse of from_angles up to a global phase."""
        norm = math.hypot(abs(self.alpha), abs(self.beta))
        theta = math.atan2(abs(self.beta), abs(self.alpha))
        if abs(self.alpha) == 0.0 or abs(self.beta) == 0.0 or norm == 0.0:
            return theta, 0.0
        phi = math.atan2(self.beta.imag, self.beta.real) - math.atan2(self.alpha.imag, self.alpha.real)
        return theta, reduce_phase(phi)

    def squared_norm(self):
        return abs(self.alpha) ** 2 + abs(self.beta) ** 2

    def is_normalized(self, tol=1e-12):
        return abs(self.squared_norm() - 1.0) <= tol

    def as_vector(self):
        """Single-mode amplitudes (sigma+, sigma-)."""
        return np.array([self.alpha, self.beta], dtype=np.complex128)


@dataclass(frozen=True, eq=False)
class FiberNetwork:
    """Couplings t[n, m] from source n to detector m (0-based here).

    t = 0 is a removed fiber; a present fiber with phase phi has t = e^{i phi}.
    """
    n: int
    couplings: np.ndarray

    def __post_init__(self):
        t = np.array(self.couplings, dtype=np.complex128)
        if t.ndim != 2:
            raise ValueError('couplings must be a matrix, got shape %r' % (t.shape,))
        t.flags.writeable = False
        object.__setattr__(self, 'couplings', t)

    @classmethod
    def fully_connected(cls, n, phases=None):
        if phases is None:
            return cls(n, np.ones((n, n), dtype=np.complex128))
        phases = np.asarray(phases, dtype=np.float64)
        return cls(n, np.exp(1j * phases))

    @classmethod
    def from_links(cls, n, links):
        """Build from (source, detector, coupling) triples, 1-based indices."""
        t = np.zeros((n, n), dtype=np.complex128)
        for source, detector, coupling in links:
            t[source - 1, detector - 1] = coupling
        return cls(n, t)

    def present(self):
        return self.couplings != 0

    def phases(self):
        """Reduced phase of every present fiber, NaN where the fiber is removed."""
        angles = np.mod(np.angle(self.couplings), TWO_PI)
        angles[angles >= TWO_PI] = 0.0
        return np.where(self.present(), angles, np.nan)

    def links(self):
        """Present fibers as (source, detector, coupling), 1-based, row-major."""
        rows, cols = np.nonzero(self.present())
        return [(int(r) + 1, int(c) + 1, complex(self.couplings[r, c])) for r, c in zip(rows, cols)]


@dataclass(frozen=True, eq=False)
class SetupConfig:
    n_sources: int
    settings: tuple
    network: FiberNetwork
    lossy: bool = False
    name: str = field(default='', compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'settings', tuple(self.settings))

    def with_lossy(self, lossy=True):
        return SetupConfig(self.n_sources, self.settings, self.network, lossy, self.name)


def validate(config, tol=1e-12):
    """All findings about a setup; only 'error' findings block simulation.

    Returns:
        list[Violation]: Empty for a valid setup. With config.lossy set,
            non-unimodular couplings are reported with severity 'warning'.
    """
    violations = []
    n = config.n_sources
    if n < 1:
        violations.append(Violation('dimension', 'n_sources must be positive, got %d' % n))
        return violations
    if len(config.settings) != n:
        violations.append(Violation('dimension', '%d settings for %d sources' % (len(config.settings), n)))
    if config.network.n != n or config.network.couplings.shape != (n, n):
        violations.append(Violation('dimension', 'network is %dx%d, expected %dx%d'
                                    % (config.network.couplings.shape + (n, n))))

    for i, setting in enumerate(config.settings, 1):
        if not (np.isfinite(setting.alpha) and np.isfinite(setting.beta)):
            violations.append(Violation('nonfinite', 'setting %d has non-finite amplitudes' % i))
        elif not setting.is_normalized(tol):
            violations.append(Violation('normalization', 'setting %d has |alpha|^2+|beta|^2 = %.17g'
                                        % (i, setting.squared_norm())))

    t = config.network.couplings
    if not np.all(np.isfinite(t)):
        violations.append(Violation('nonfinite', 'network has non-finite couplings'))
        return violations
    for i, row in enumerate(t, 1):
        if not np.any(row != 0):
            violations.append(Violation('reachability', 'source %d is not linked to any detector' % i))

    moduli = np.abs(t)
    for r, c in zip(*np.nonzero(t)):
        if abs(moduli[r, c] - 1.0) <= tol:
            continue
        where = 'link source %d -> detector %d has |t| = %.17g' % (r + 1, c + 1, moduli[r, c])
        if not config.lossy:
            violations.append(Violation('unimodular', where))
        elif moduli[r, c] > 1.0 + tol:
            violations.append(Violation('gain', where + ' (> 1)'))
        else:
            violations.append(Violation('unimodular', where, severity='warning'))
    return violations


def errors_only(violations):
    return [v for v in violations if v.is_error()]


def dicke_setup(n, k):
    """k sigma- sources followed by n - k sigma+ sources, all fibers present, phase 0."""
    if not 0 <= k <= n:
        raise ValueError('k=%d out of range [0, %d]' % (k, n))
    settings = [PolarizerSetting.sigma_minus()] * k + [PolarizerSetting.sigma_plus()] * (n - k)
    return SetupConfig(n, settings, FiberNetwork.fully_connected(n), name='dicke_%d_%d' % (n, k))


def random_setting(rng):
    amps = rng.normal(size=2) + 1j * rng.normal(size=2)
    amps /= np.linalg.norm(amps)
    return PolarizerSetting(amps[0], amps[1])


def random_setup(n, rng, removal_prob=0.2, lossy=False):
    """Random settings and phases; each fiber is removed with probability removal_prob.

    Rows left without any fiber are redrawn so every source reaches a detector.
    """
    settings = [random_setting(rng) for _ in range(n)]
    t = np.exp(1j * rng.uniform(0.0, TWO_PI, size=(n, n)))
    if lossy:
        t *= rng.uniform(0.2, 1.0, size=(n, n))
    for row in range(n):
        while True:
            keep = rng.random(n) >= removal_prob
            if keep.any():
                break
        t[row, ~keep] = 0.0
    return SetupConfig(n, settings, FiberNetwork(n, t), lossy=lossy)
