''' inverse design of arbitrary symmetric targets '''
import logging

import numpy as np

from lib.designers.polynomial_roots import DEGREE_TOL, build_polynomial, find_roots
from lib.setups.setup_model import FiberNetwork, PolarizerSetting, SetupConfig

logger = logging.getLogger(__name__)


def settings_from_roots(roots, n):
    """Sources 1..K get alpha/beta = r_i, the remaining ones sigma+."""
    if len(roots) > n:
        raise ValueError('%d roots do not fit %d sources' % (len(roots), n))
    settings = [PolarizerSetting.from_ratio(r) for r in roots]
    settings += [PolarizerSetting.sigma_plus()] * (n - len(roots))
    return settings


def normalize_target(d, tol=1e-12):
    d = np.asarray(d, dtype=np.complex128)
    norm = np.linalg.norm(d)
    if norm == 0.0:
        raise ValueError('target coefficients are all zero')
    if abs(norm - 1.0) > tol:
        logger.warning('Target coefficients have norm %.17g; normalizing', norm)
        d = d / norm
    return d


def design_symmetric(d, n, degree_tol=DEGREE_TOL, newton_steps=8):
    """Setup producing sum_k d_k |D_n(k)> on a fully connected, phase-free network.

    Args:
        d (array-like): Target Dicke coefficients d_0 ... d_n.
        n (int): Number of sources.

    Returns:
        SetupConfig: The designed setup.
    """
    d = np.asarray(d, dtype=np.complex128)
    if d.shape != (n + 1,):
        raise ValueError('expected %d coefficients for n=%d, got %d' % (n + 1, n, d.size))
    d = normalize_target(d)
    poly = build_polynomial(d, degree_tol=degree_tol)
    roots = find_roots(poly, newton_steps=newton_steps)
    logger.debug('design polynomial degree %d, roots %s', poly.degree, roots)
    settings = settings_from_roots(roots, n)
    return SetupConfig(n, settings, FiberNetwork.fully_connected(n), name='symmetric_%d' % n)
