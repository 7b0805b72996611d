"""Random generators and independent reference evaluations shared by the tests."""
import numpy as np
from scipy.special import eval_chebyt, eval_gegenbauer

from dimwalk.gegenbauer import GegenbauerBasis
from dimwalk.series import PowerSeries, SpatialSeries, SpatioTemporalSeries
from dimwalk.temporal import Atom, TemporalPD

FAMILY_PARAMS = {
    "constant": lambda rng: 0.0,
    "exponential": lambda rng: rng.uniform(0.2, 3.0),
    "gaussian": lambda rng: rng.uniform(0.1, 2.0),
    "cosine": lambda rng: rng.uniform(0.0, 3.0),
    "triangular": lambda rng: rng.uniform(0.5, 6.0),
}


def w_ref(lam, n, x):
    """Normalised Gegenbauer polynomial from scipy, independent of dimwalk."""
    if lam == 0:
        return eval_chebyt(n, x)
    return eval_gegenbauer(n, lam, x) / eval_gegenbauer(n, lam, 1.0)


def random_temporal(rng, max_atoms=3):
    fams = list(FAMILY_PARAMS)
    k = rng.integers(1, max_atoms + 1)
    atoms = []
    for _ in range(k):
        fam = fams[rng.integers(len(fams))]
        atoms.append(Atom(rng.uniform(0.05, 1.0), fam, FAMILY_PARAMS[fam](rng)))
    return TemporalPD(tuple(atoms))


def random_spatial(rng, basis, order=None):
    order = int(rng.integers(1, 13)) if order is None else order
    return SpatialSeries(basis, rng.dirichlet(np.ones(order + 1)))


def random_spatiotemporal(rng, basis, order=None, normalized=True):
    order = int(rng.integers(1, 10)) if order is None else order
    coeffs = [random_temporal(rng) for _ in range(order + 1)]
    if normalized:
        mass = sum(c.at_zero() for c in coeffs)
        coeffs = [c / mass for c in coeffs]
    return SpatioTemporalSeries(basis, coeffs, rng.uniform(0.5, 2.0))


def random_power(rng, temporal=False, order=None):
    order = int(rng.integers(1, 12)) if order is None else order
    if temporal:
        coeffs = [random_temporal(rng) for _ in range(order + 1)]
        mass = sum(c.at_zero() for c in coeffs)
        return PowerSeries(tuple(c / mass for c in coeffs), True)
    return PowerSeries(rng.dirichlet(np.ones(order + 1)))


def random_series(rng, kind, dimension):
    basis = GegenbauerBasis.for_sphere(dimension)
    if kind == "spatial":
        return random_spatial(rng, basis)
    return random_spatiotemporal(rng, basis)


def random_document_series(rng):
    kind = rng.integers(4)
    if kind == 3:
        return random_power(rng, temporal=bool(rng.integers(2)))
    d = int(rng.integers(1, 7))
    basis = GegenbauerBasis.for_sphere(d) if rng.integers(2) else GegenbauerBasis(rng.uniform(0, 3))
    if kind == 0:
        return random_spatial(rng, basis)
    # unnormalised, to exercise arbitrary floats
    return random_spatiotemporal(rng, basis, normalized=bool(kind == 1))


def chebyshev_points(count):
    k = np.arange(count)
    return np.cos((2 * k + 1) * np.pi / (2 * count))
