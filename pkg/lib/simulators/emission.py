''' forward model: single-occupancy emission operators applied source by source '''
import logging
from dataclasses import dataclass, field

import numpy as np

from lib.errors import CapExceededError, SetupValidationError, ZeroNormError
from lib.setups.setup_model import errors_only, validate
from lib.states.qstate import MAX_MODES, StateVector, normalize

logger = logging.getLogger(__name__)

# squared norms below this fraction of the cancellation-free norm count as destructive interference
ZERO_NORM_RTOL = 1e-24


@dataclass(frozen=True, eq=False)
class PartialState:
    """Amplitudes keyed by (occupied-mode mask, sigma- mask on the occupied modes).

    Keys only ever carry single occupation: the emission step skips occupied
    modes, so every key reached after j emissions has exactly j bits set in
    its occupation mask.
    """
    n_modes: int
    amplitudes: dict
    applied: frozenset = field(default_factory=frozenset)

    @classmethod
    def vacuum(cls, n_modes):
        return cls(n_modes, {(0, 0): 1.0 + 0.0j})

    def n_photons(self):
        return len(self.applied)

    def is_empty(self):
        return not self.amplitudes


@dataclass(frozen=True, eq=False)
class RawState:
    """Post-selected state before normalization."""
    vector: StateVector
    squared_norm: float
    destructive_interference: bool
    unnormalized: bool = True

    def normalized(self):
        if self.destructive_interference:
            raise ZeroNormError('Setup interferes destructively; no coincidence state to normalize')
        return normalize(self.vector)


def apply_emission(state, source_index, config, magnitudes=False):
    """Apply the emission operator of one source (1-based) to a partial state.

    For every empty mode m linked to the source, amplitude t[n, m] * alpha_n
    goes to (m, sigma+) and t[n, m] * beta_n to (m, sigma-); terms that would
    put a second photon into an occupied mode are dropped. With magnitudes
    set, |t|, |alpha| and |beta| are used instead, so no two terms can cancel.
    """
    n = config.n_sources
    if not 1 <= source_index <= n:
        raise ValueError('source index %d outside 1..%d' % (source_index, n))
    if source_index in state.applied:
        raise ValueError('source %d was already applied' % source_index)
    if state.n_photons() >= state.n_modes:
        raise ValueError('all %d modes are already populated' % state.n_modes)

    setting = config.settings[source_index - 1]
    row = config.network.couplings[source_index - 1]
    links = [(m, complex(row[m])) for m in range(n) if row[m] != 0]
    alpha, beta = setting.alpha, setting.beta
    if magnitudes:
        links = [(m, abs(t)) for m, t in links]
        alpha, beta = abs(alpha), abs(beta)

    out = {}
    for (occupied, minus), amp in state.amplitudes.items():
        for m, t in links:
            bit = 1 << m
            if occupied & bit:
                continue
            key_occupied = occupied | bit
            if alpha != 0:
                key = (key_occupied, minus)
                out[key] = out.get(key, 0.0) + t * alpha * amp
            if beta != 0:
                key = (key_occupied, minus | bit)
                out[key] = out.get(key, 0.0) + t * beta * amp
    return PartialState(state.n_modes, out, state.applied | {source_index})


def check_config(config, max_modes=MAX_MODES, tol=1e-12):
    """Raise unless the setup can be simulated; warnings are only logged."""
    if config.n_sources > max_modes:
        raise CapExceededError('%d sources exceed the state cap of %d modes' % (config.n_sources, max_modes))
    violations = validate(config, tol=tol)
    errors = errors_only(violations)
    if errors:
        raise SetupValidationError('Invalid setup %s' % (config.name or ''), errors)
    for v in violations:
        logger.warning(str(v))


def to_raw_state(n, amplitudes, scale_amplitudes):
    """Wrap coincidence amplitudes; scale_amplitudes is the same sum taken over magnitudes.

    The state counts as destructive when its squared norm falls below
    ZERO_NORM_RTOL times the squared norm of scale_amplitudes.
    """
    vector = StateVector(n, amplitudes)
    squared_norm = vector.squared_norm()
    scale = float(np.vdot(scale_amplitudes, scale_amplitudes).real)
    destructive = squared_norm <= ZERO_NORM_RTOL * scale
    if destructive:
        logger.warning('Coincidence amplitude vanishes (|psi|^2 = %.3g): destructive interference', squared_norm)
    return RawState(vector=vector, squared_norm=squared_norm, destructive_interference=destructive)


def generate_state(config, order=None, max_modes=MAX_MODES, tol=1e-12):
    """|psi_f> = P_N ... P_1 |0...0>, restricted to one photon in every mode.

    Args:
        config (SetupConfig): The setup.
        order (list[int] | None): Source application order (1-based);
            default 1..N. The emission operators commute, so the order only
            matters for testing.
        max_modes (int): State size cap.
        tol (float): Normalization / unimodularity tolerance for validation.

    Returns:
        RawState: Unnormalized amplitudes and their squared norm.
    """
    check_config(config, max_modes=max_modes, tol=tol)
    n = config.n_sources
    if order is None:
        order = range(1, n + 1)
    elif sorted(order) != list(range(1, n + 1)):
        raise ValueError('order %r is not a permutation of 1..%d' % (list(order), n))

    amplitudes = _coincidences(config, order)
    return to_raw_state(n, amplitudes, _coincidences(config, order, magnitudes=True))


def _coincidences(config, order, magnitudes=False):
    n = config.n_sources
    state = PartialState.vacuum(n)
    for source_index in order:
        state = apply_emission(state, source_index, config, magnitudes=magnitudes)
        if state.is_empty():
            break

    full = (1 << n) - 1
    amplitudes = np.zeros(1 << n, dtype=np.complex128)
    for (occupied, minus), amp in state.amplitudes.items():
        if occupied == full:
            amplitudes[minus] += amp
    return amplitudes


def success_weight(raw, n):
    """|psi_f|^2 / N^N, the N-fold coincidence weight of the setup.

    Exact for fully connected unit-modulus networks; with removed or lossy
    fibers it is a relative figure of merit.
    """
    if n < 1:
        raise ValueError('n must be positive, got %d' % n)
    if raw.destructive_interference:
        return 0.0
    return raw.squared_norm / float(n) ** n
