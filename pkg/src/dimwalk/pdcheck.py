"""Empirical positive definiteness: Gram matrices on random sphere configurations.

For points ``theta_i`` on S^d (and optional times ``t_i``) the Gram matrix is
``M_ij = f(<theta_i, theta_j>)`` or ``f(<theta_i, theta_j>, t_i - t_j)``. A
configuration passes when ``min eig(M) >= -eps * trace(M)``; the trace
scaling makes the verdict invariant under positive rescaling of ``f``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

import numpy as np
from scipy.linalg import eigvalsh

from .series import AnySeries, PowerSeries, evaluate, is_temporal

DEFAULT_EPS = 1e-9
DEFAULT_TMAX = 5.0


@dataclass(frozen=True, eq=False)
class SphereConfig:
    dimension: int
    points: np.ndarray = field(repr=False)
    times: Optional[np.ndarray] = field(default=None, repr=False)
    seed: Optional[int] = None

    @property
    def size(self) -> int:
        return self.points.shape[0]

    def inner_products(self) -> np.ndarray:
        G = self.points @ self.points.T
        np.clip(G, -1.0, 1.0, out=G)
        np.fill_diagonal(G, 1.0)
        return G

    def lags(self) -> Optional[np.ndarray]:
        if self.times is None:
            return None
        return self.times[:, None] - self.times[None, :]


@dataclass(frozen=True)
class PDReport:
    min_eigenvalue: float
    matrix_size: int
    tolerance: float
    verdict: str  # pass | fail
    seed: Optional[int] = None
    trials: int = 1
    failures: int = 0

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "min_eigenvalue": self.min_eigenvalue,
            "tolerance": self.tolerance,
            "matrix_size": self.matrix_size,
            "seed": self.seed,
            "trials": self.trials,
            "failures": self.failures,
        }


def sample_sphere(d: int, count: int, seed: int, times: bool = False,
                  tmax: float = DEFAULT_TMAX) -> SphereConfig:
    """``count`` uniform points on S^d (normalised Gaussians), reproducible from ``seed``."""
    if d < 1 or count < 2:
        raise ValueError("need d >= 1 and at least two points")
    rng = np.random.default_rng(seed)
    pts = rng.standard_normal((count, d + 1))
    norms = np.linalg.norm(pts, axis=1)
    for _ in range(100):
        bad = norms < 1e-300
        if not bad.any():
            break
        pts[bad] = rng.standard_normal((int(bad.sum()), d + 1))
        norms = np.linalg.norm(pts, axis=1)
    else:  # pragma: no cover - probability zero
        raise RuntimeError("could not draw nondegenerate Gaussian vectors")
    pts /= norms[:, None]
    t = rng.uniform(-tmax, tmax, count) if times else None
    return SphereConfig(d, pts, t, seed)


def gram_matrix(f: Callable, config: SphereConfig) -> np.ndarray:
    """Symmetrised Gram matrix of ``f`` on ``config``."""
    X = config.inner_products()
    T = config.lags()
    try:
        M = np.asarray(f(X) if T is None else f(X, T), dtype=np.float64)
    except Exception as exc:
        raise RuntimeError(f"covariance evaluation failed on a {X.shape} configuration: {exc}") from exc
    if M.shape != X.shape:
        raise ValueError(f"covariance returned shape {M.shape}, expected {X.shape}")
    if not np.all(np.isfinite(M)):
        i, j = np.argwhere(~np.isfinite(M))[0]
        raise ValueError(f"covariance is not finite at pair ({i}, {j})")
    return 0.5 * (M + M.T)


def gram_min_eig(f: Callable, config: SphereConfig, eps: float = DEFAULT_EPS) -> PDReport:
    M = gram_matrix(f, config)
    lo = float(eigvalsh(M, subset_by_index=[0, 0])[0])
    tol = eps * abs(float(np.trace(M)))
    return PDReport(lo, M.shape[0], tol, "pass" if lo >= -tol else "fail", config.seed)


def series_kernel(s: AnySeries) -> Callable:
    """Vectorised covariance callable for a series."""
    if is_temporal(s):
        return lambda x, t: evaluate(s, x, t)
    return lambda x: evaluate(s, x)


def default_dimension(s: AnySeries) -> int:
    """Sphere dimension implied by the basis; Hilbert-sphere series default to S^3."""
    if isinstance(s, PowerSeries):
        return 3
    if s.basis.dimension is not None:
        return s.basis.dimension
    d = 2 * s.basis.lam + 1
    if d != int(d):
        raise ValueError(f"order {s.basis.lam} is not attached to an integer sphere dimension")
    return int(d)


def certify(s: AnySeries, trials: int = 20, points: int = 60, seed: int = 0,
            seeds: Optional[Iterable[int]] = None, eps: float = DEFAULT_EPS,
            dimension: Optional[int] = None, tmax: float = DEFAULT_TMAX) -> PDReport:
    """Run ``gram_min_eig`` over seeded configurations; pass iff every trial passes.

    Seeds default to ``seed, seed + 1, ..., seed + trials - 1``. Temporal
    series get random times on ``[-tmax, tmax]``. The returned report carries
    the worst minimum eigenvalue and its seed.
    """
    seed_list = list(seeds) if seeds is not None else list(range(seed, seed + trials))
    if not seed_list:
        raise ValueError("need at least one trial")
    d = dimension if dimension is not None else default_dimension(s)
    f = series_kernel(s)
    temporal = is_temporal(s)
    worst: Optional[PDReport] = None
    failures = 0
    for sd in seed_list:
        rep = gram_min_eig(f, sample_sphere(d, points, sd, times=temporal, tmax=tmax), eps)
        failures += not rep.passed
        # rank trials by how close they come to failing
        if worst is None or rep.min_eigenvalue + rep.tolerance < worst.min_eigenvalue + worst.tolerance:
            worst = rep
    return PDReport(
        worst.min_eigenvalue, points, worst.tolerance,
        "pass" if failures == 0 else "fail", worst.seed, len(seed_list), failures,
    )
