''' independent reference for the emission engine: explicit sum over source->detector bijections '''
import itertools
import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from lib.errors import CapExceededError
from lib.simulators.emission import check_config, to_raw_state

logger = logging.getLogger(__name__)

MAX_ORACLE_SOURCES = 8


def product_state(vectors):
    """Tensor product with vectors[m] in mode m (mode 0 is the lowest bit)."""
    out = np.ones(1, dtype=np.complex128)
    for vec in vectors:
        out = np.kron(vec, out)
    return out


def _partial_sum(first_detector, config):
    """Sum over all bijections sending source 1 to first_detector, with its magnitude sum."""
    n = config.n_sources
    t = config.network.couplings
    eps = [s.as_vector() for s in config.settings]
    acc = np.zeros(1 << n, dtype=np.complex128)
    scale = np.zeros(1 << n)
    weight0 = t[0, first_detector]
    if weight0 == 0:
        return acc, scale
    rest = [d for d in range(n) if d != first_detector]
    for tail in itertools.permutations(rest):
        assignment = (first_detector,) + tail    # assignment[source] = detector
        weight = weight0
        for source in range(1, n):
            weight = weight * t[source, assignment[source]]
            if weight == 0:
                break
        if weight == 0:
            continue
        modes = [None] * n
        for source, detector in enumerate(assignment):
            modes[detector] = eps[source]
        acc += weight * product_state(modes)
        scale += abs(weight) * np.abs(product_state(modes))
    return acc, scale


def permutation_oracle(config, max_sources=MAX_ORACLE_SOURCES, workers=1, tol=1e-12):
    """Post-selected state as sum_pi prod_n t[n, pi(n)] (x)_n eps_n placed in mode pi(n).

    The N! bijections are split by the detector of source 1; the N partial
    sums are added in detector order whatever the number of workers, so
    serial and threaded runs give bit-identical results.
    """
    if config.n_sources > max_sources:
        raise CapExceededError('%d sources exceed the oracle cap of %d' % (config.n_sources, max_sources))
    check_config(config, max_modes=max(max_sources, config.n_sources), tol=tol)
    n = config.n_sources
    if workers > 1:
        logger.debug('permutation sum for n=%d on %d threads', n, workers)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(lambda d: _partial_sum(d, config), range(n)))
    else:
        partials = [_partial_sum(d, config) for d in range(n)]
    total = np.zeros(1 << n, dtype=np.complex128)
    scale = np.zeros(1 << n)
    for part, part_scale in partials:
        total += part
        scale += part_scale
    return to_raw_state(n, total, scale)
