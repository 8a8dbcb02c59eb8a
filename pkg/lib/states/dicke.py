''' symmetric Dicke basis: states, expansion coefficients and decomposition '''
import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import comb

from lib.errors import ZeroNormError
from lib.states.qstate import MAX_MODES, StateVector, check_mode_cap


@dataclass(frozen=True, eq=False)
class DickeExpansion:
    n: int
    coefficients: np.ndarray    # d_0 ... d_N
    residual_norm: float

    def symmetric_weight(self):
        return float(np.sum(np.abs(self.coefficients) ** 2))


def popcounts(n):
    index = np.arange(1 << n)
    counts = np.zeros_like(index)
    for m in range(n):
        counts += (index >> m) & 1
    return counts


def dicke_state(n, k, max_modes=MAX_MODES):
    """Normalized |D_n(k)>: equal superposition of the basis states with k sigma- photons."""
    if n < 1:
        raise ValueError('n must be positive, got %d' % n)
    check_mode_cap(n, max_modes)
    if not 0 <= k <= n:
        raise ValueError('k=%d out of range [0, %d]' % (k, n))
    amps = np.where(popcounts(n) == k, 1.0 / math.sqrt(comb(n, k, exact=True)), 0.0)
    return StateVector(n, amps.astype(np.complex128))


def symmetric_state(d, max_modes=MAX_MODES):
    """sum_k d_k |D_N(k)>, not renormalized.

    Raises:
        CapExceededError: N = len(d) - 1 exceeds max_modes.
    """
    d = np.asarray(d, dtype=np.complex128)
    n = d.shape[0] - 1
    if n < 1:
        raise ValueError('Need at least two coefficients d_0, d_1')
    check_mode_cap(n, max_modes)
    counts = popcounts(n)
    scale = np.array([1.0 / math.sqrt(comb(n, k, exact=True)) for k in range(n + 1)])
    return StateVector(n, (d * scale)[counts])


def ghz_coefficients(n):
    d = np.zeros(n + 1, dtype=np.complex128)
    d[0] = d[n] = 1.0 / math.sqrt(2.0)
    return d


def w_coefficients(n):
    d = np.zeros(n + 1, dtype=np.complex128)
    d[1] = 1.0
    return d


def _pairs(settings):
    return [(complex(s.alpha), complex(s.beta)) for s in settings]


def product_expansion(settings):
    """Coefficients E_k of x^(N-k) y^k in prod_n (alpha_n x + beta_n y).

    Works on the (alpha, beta) pairs directly so settings at the poles
    (alpha = 0 or beta = 0) need no special casing.
    """
    esp = np.zeros(len(settings) + 1, dtype=np.complex128)
    esp[0] = 1.0
    for i, (alpha, beta) in enumerate(_pairs(settings)):
        # descending so esp[k - 1] is still the previous row
        for k in range(i + 1, 0, -1):
            esp[k] = alpha * esp[k] + beta * esp[k - 1]
        esp[0] = alpha * esp[0]
    return esp


def dicke_coefficients(settings):
    """c_0 ... c_N of the phase-free, fully connected setup.

    The sum over ordered tuples of distinct sources equals k!(N-k)! E_k,
    with E_k from product_expansion.
    """
    if len(settings) == 0:
        raise ValueError('At least one polarizer setting is required')
    n = len(settings)
    esp = product_expansion(settings)
    c = np.empty(n + 1, dtype=np.complex128)
    for k in range(n + 1):
        c[k] = math.sqrt(comb(n, k, exact=True)) * math.factorial(k) * math.factorial(n - k) * esp[k]
    return c


def brute_force_coefficients(settings):
    """Direct evaluation over all ordered tuples of distinct sources; O(N! N^2)."""
    if len(settings) == 0:
        raise ValueError('At least one polarizer setting is required')
    pairs = _pairs(settings)
    n = len(pairs)
    c = np.zeros(n + 1, dtype=np.complex128)
    for order in itertools.permutations(range(n)):
        for k in range(n + 1):
            term = 1.0 + 0.0j
            for i in order[:k]:
                term *= pairs[i][1]
            for i in order[k:]:
                term *= pairs[i][0]
            c[k] += term
    for k in range(n + 1):
        c[k] *= math.sqrt(comb(n, k, exact=True))
    return c


def decompose(v):
    """Split v into its Dicke coefficients d_k = <D_N(k)|v> and the residual norm."""
    if v.squared_norm() == 0.0:
        raise ZeroNormError('Cannot decompose a zero vector')
    n = v.n_modes
    counts = popcounts(n)
    sums = (np.bincount(counts, weights=v.amplitudes.real, minlength=n + 1)
            + 1j * np.bincount(counts, weights=v.amplitudes.imag, minlength=n + 1))
    d = np.array([sums[k] / math.sqrt(comb(n, k, exact=True)) for k in range(n + 1)])
    residual = v.amplitudes - symmetric_state(d, max_modes=n).amplitudes
    return DickeExpansion(n=n, coefficients=d, residual_norm=float(np.linalg.norm(residual)))
