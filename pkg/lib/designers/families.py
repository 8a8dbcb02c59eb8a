''' entanglement families of symmetric states: degeneracy configuration of the Majorana points '''
import logging
from dataclasses import dataclass

import numpy as np

from lib.designers.polynomial_roots import DEGREE_TOL, build_polynomial, find_roots
from lib.setups.setup_model import FiberNetwork, PolarizerSetting, SetupConfig
from lib.states.dicke import dicke_coefficients

logger = logging.getLogger(__name__)

# chordal distance below which two Majorana points count as one degenerate point
FAMILY_TOL = 1e-3


@dataclass(frozen=True, eq=False)
class MajoranaPoints:
    """Roots alpha/beta of the N polarizer factors; n_infinite factors are sigma+."""
    roots: tuple
    n_infinite: int

    @property
    def n(self):
        return len(self.roots) + self.n_infinite


def majorana_points(d, degree_tol=DEGREE_TOL, newton_steps=8):
    """Majorana points of sum_k d_k |D_N(k)>, roots at infinity counted N - K times."""
    d = np.asarray(d, dtype=np.complex128)
    poly = build_polynomial(d, degree_tol=degree_tol)
    roots = find_roots(poly, newton_steps=newton_steps)
    return MajoranaPoints(tuple(roots), d.shape[0] - 1 - poly.degree)


def chordal_distance(z, w):
    """Distance of the images of z and w on the unit sphere; None stands for infinity."""
    if z is None and w is None:
        return 0.0
    if z is None or w is None:
        finite = w if z is None else z
        return 2.0 / np.sqrt(1.0 + abs(finite) ** 2)
    return 2.0 * abs(z - w) / np.sqrt((1.0 + abs(z) ** 2) * (1.0 + abs(w) ** 2))


def cluster_points(points, tol=FAMILY_TOL):
    """Single-linkage groups of points closer than tol; returns the group sizes."""
    nodes = list(points.roots) + [None] * points.n_infinite
    parent = list(range(len(nodes)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(nodes)):
        for j in range(i + 1, len(nodes)):
            if chordal_distance(nodes[i], nodes[j]) < tol:
                parent[find(i)] = find(j)
    sizes = {}
    for i in range(len(nodes)):
        root = find(i)
        sizes[root] = sizes.get(root, 0) + 1
    return sorted(sizes.values(), reverse=True)


def degeneracy_configuration(d, tol=FAMILY_TOL, degree_tol=DEGREE_TOL, newton_steps=8):
    """SLOCC family of sum_k d_k |D_N(k)> as a partition of N.

    The same invertible local map on every qubit moves the Majorana points by a
    Moebius transformation, which keeps coinciding points together and distinct
    points apart, so the multiplicity pattern labels the family.

    Returns:
        tuple[int]: Multiplicities in non-increasing order, summing to N.
    """
    points = majorana_points(d, degree_tol=degree_tol, newton_steps=newton_steps)
    partition = tuple(cluster_points(points, tol=tol))
    logger.debug('Majorana points %s + %d at infinity -> %s', points.roots, points.n_infinite, partition)
    return partition


def partitions(n, largest=None):
    """All partitions of n, parts non-increasing, in reverse lexicographic order."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def families(n):
    """Every SLOCC family of N-qubit symmetric states, one partition each."""
    if n < 1:
        raise ValueError('n must be positive, got %d' % n)
    return list(partitions(n))


def check_partition(partition):
    partition = tuple(sorted((int(p) for p in partition), reverse=True))
    if not partition or partition[-1] < 1:
        raise ValueError('a family needs positive multiplicities, got %r' % (partition,))
    return partition


def family_points(partition, points=None):
    """Majorana point of every group: infinity, 0, then the free points.

    Without explicit points the third and later groups sit on the roots of
    unity of order (number of groups - 2).
    """
    partition = check_partition(partition)
    n_free = max(len(partition) - 2, 0)
    if points is None:
        points = [complex(np.exp(2j * np.pi * j / n_free)) for j in range(n_free)]
    points = [complex(p) for p in points]
    if len(points) != n_free:
        raise ValueError('family %r needs %d free points, got %d' % (partition, n_free, len(points)))
    located = ([None, 0j] + points)[:len(partition)]
    for i in range(len(located)):
        for j in range(i + 1, len(located)):
            if chordal_distance(located[i], located[j]) == 0.0:
                raise ValueError('points of family %r must be distinct' % (partition,))
    return list(zip(partition, located))


def family_settings(partition, points=None):
    settings = []
    for multiplicity, point in family_points(partition, points):
        setting = PolarizerSetting.sigma_plus() if point is None else PolarizerSetting.from_ratio(point)
        settings += [setting] * multiplicity
    return settings


def family_state(partition, points=None):
    """Normalized Dicke coefficients of the canonical state of a family.

    (N,) is the product state |D_N(0)>, (N-K, K) the Dicke state |D_N(K)>,
    (N-1, 1) in particular the W state.
    """
    c = dicke_coefficients(family_settings(partition, points))
    return c / np.linalg.norm(c)


def family_setup(partition, points=None):
    """Fully connected, phase-free setup emitting the canonical state of a family."""
    settings = family_settings(partition, points)
    n = len(settings)
    name = 'family_' + '_'.join(str(p) for p in check_partition(partition))
    return SetupConfig(n, settings, FiberNetwork.fully_connected(n), name=name)
