''' design polynomial and its roots (companion matrix eigenvalues + Newton polishing) '''
import logging
import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy import linalg
from scipy.special import comb

logger = logging.getLogger(__name__)

DEGREE_TOL = 1e-12
ROOT_RESIDUAL_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class DesignPolynomial:
    """p_0 + p_1 z + ... + p_K z^K with p_K != 0."""
    degree: int
    coefficients: np.ndarray    # ascending, length degree + 1

    def __post_init__(self):
        p = np.asarray(self.coefficients, dtype=np.complex128)
        if p.shape != (self.degree + 1,):
            raise ValueError('degree %d needs %d coefficients, got %d' % (self.degree, self.degree + 1, p.size))
        if p[-1] == 0:
            raise ValueError('leading coefficient must be nonzero')
        object.__setattr__(self, 'coefficients', p)

    def __call__(self, z):
        return npoly.polyval(z, self.coefficients)

    def scale(self):
        return float(np.max(np.abs(self.coefficients)))


def build_polynomial(d, degree_tol=DEGREE_TOL):
    """P(z) = sum_k (-1)^(K-k) sqrt(C(N,k) / C(N,K)) d_k z^k.

    K is the largest k with |d_k| > degree_tol * max|d|, so numerically zero
    trailing targets do not produce spurious huge roots.
    """
    d = np.asarray(d, dtype=np.complex128)
    n = d.shape[0] - 1
    scale = np.max(np.abs(d)) if d.size else 0.0
    if scale == 0.0:
        raise ValueError('target coefficients are all zero')
    significant = np.flatnonzero(np.abs(d) > degree_tol * scale)
    degree = int(significant[-1])
    binom_k = comb(n, degree, exact=True)
    p = np.array([(-1) ** (degree - k) * math.sqrt(comb(n, k, exact=True) / binom_k) * d[k]
                  for k in range(degree + 1)], dtype=np.complex128)
    return DesignPolynomial(degree, p)


def companion_matrix(p):
    """Companion matrix of the monic polynomial p / p_K (ascending coefficients)."""
    monic = p.coefficients[:-1] / p.coefficients[-1]
    k = p.degree
    mat = np.zeros((k, k), dtype=np.complex128)
    if k > 1:
        mat[1:, :-1] = np.eye(k - 1)
    mat[:, -1] = -monic
    return mat


def polish(p, root, steps=8):
    """Newton iterations on a single root, keeping the best residual seen."""
    deriv = npoly.polyder(p.coefficients)
    best, best_res = root, abs(p(root))
    z = root
    for _ in range(steps):
        slope = npoly.polyval(z, deriv)
        if slope == 0:
            break
        z = z - p(z) / slope
        res = abs(p(z))
        if not np.isfinite(res):
            break
        if res < best_res:
            best, best_res = z, res
        if best_res == 0:
            break
    return complex(best)


def find_roots(p, newton_steps=8, residual_tol=ROOT_RESIDUAL_TOL):
    """All K roots of p, repeated according to multiplicity.

    Returns:
        list[complex]: Roots sorted by (real, imag); empty for K = 0.
    """
    if p.degree == 0:
        return []
    eig = linalg.eigvals(companion_matrix(p))
    roots = [polish(p, complex(r), steps=newton_steps) for r in eig]
    limit = residual_tol * p.scale()
    for r in roots:
        if abs(p(r)) > limit:
            logger.warning('root %r has residual %.3g above %.3g', r, abs(p(r)), limit)
    return sorted(roots, key=lambda z: (round(z.real, 12), round(z.imag, 12)))


def reconstruct(p, roots):
    """p_K * prod (z - r_i), ascending coefficients."""
    coeffs = np.array([1.0 + 0.0j])
    for r in roots:
        coeffs = npoly.polymul(coeffs, np.array([-r, 1.0]))
    return p.coefficients[-1] * coeffs
