"""Normalised Gegenbauer polynomials, their weights and Gauss quadrature.

``W^lam_n = C^lam_n / C^lam_n(1)`` so every basis function equals one at
``x = 1``. The probability measure ``G_lam`` has density proportional to
``(1 - x^2)^(lam - 1/2)`` on [-1, 1]. ``lam = 0`` is the Chebyshev limit
(``W^0_n = T_n``), ``lam = 1/2`` is Legendre.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.linalg import eigh_tridiagonal

from . import _kernels
from .errors import DomainError

__all__ = [
    "GegenbauerBasis",
    "QuadratureRule",
    "eval_poly",
    "poly_table",
    "weight_omega",
    "omega_vector",
    "quadrature",
    "default_nodes",
    "fg_coefficient",
]


@dataclass(frozen=True)
class GegenbauerBasis:
    """Order ``lam`` of the basis, optionally tied to a sphere ``S^dimension``."""

    lam: float
    dimension: Optional[int] = None

    def __post_init__(self):
        lam = float(self.lam)
        if not math.isfinite(lam) or lam < 0:
            raise DomainError(f"Gegenbauer order must be >= 0, got {self.lam}")
        object.__setattr__(self, "lam", lam)
        if self.dimension is not None:
            d = int(self.dimension)
            if d < 1 or d != self.dimension:
                raise DomainError(f"sphere dimension must be a positive integer, got {self.dimension}")
            if (d - 1) / 2 != lam:
                raise DomainError(f"S^{d} requires lambda = {(d - 1) / 2}, got {lam}")
            object.__setattr__(self, "dimension", d)

    @classmethod
    def for_sphere(cls, d: int) -> "GegenbauerBasis":
        return cls((d - 1) / 2, d)

    def shifted(self, delta: float) -> "GegenbauerBasis":
        """Basis of order ``lam + delta``; the sphere dimension moves by ``2 * delta``."""
        lam = self.lam + delta
        if lam < 0:
            raise DomainError(f"order {lam} < 0")
        dim = None
        if self.dimension is not None:
            dim = self.dimension + int(round(2 * delta))
        return GegenbauerBasis(lam, dim)


def _check_x(x) -> np.ndarray:
    arr = np.asarray(x, dtype=np.float64)
    if np.any(np.abs(arr) > 1.0) or np.any(np.isnan(arr)):
        raise DomainError("Gegenbauer polynomials are evaluated on [-1, 1] only")
    return arr


def poly_table(basis: GegenbauerBasis, nmax: int, x) -> np.ndarray:
    """``W_0 .. W_nmax`` at ``x``; shape ``(nmax + 1,) + x.shape``."""
    arr = _check_x(x)
    table = _kernels.gegenbauer_table(basis.lam, nmax, arr)
    return table.reshape((nmax + 1,) + arr.shape)


def eval_poly(basis: GegenbauerBasis, n: int, x):
    """Evaluate ``W^lam_n(x)``. Scalar in, float out; arrays keep their shape."""
    if n < 0:
        raise DomainError(f"degree must be >= 0, got {n}")
    arr = _check_x(x)
    values = _kernels.gegenbauer_table(basis.lam, n, arr)[n].reshape(arr.shape)
    return float(values) if values.ndim == 0 else values


def weight_omega(basis: GegenbauerBasis, n: int) -> float:
    """Reciprocal squared norm: ``int W_n^2 dG_lam = 1 / omega_n``.

    ``omega_n = (n + lam)/lam * Gamma(n + 2 lam) / (Gamma(2 lam) n!)``, taken
    in log space. At ``lam = 0`` the Chebyshev values 1, 2, 2, ... are used.
    """
    if n < 0:
        raise DomainError(f"degree must be >= 0, got {n}")
    lam = basis.lam
    if lam == 0.0:
        return 1.0 if n == 0 else 2.0
    log_w = (
        math.log((n + lam) / lam)
        + math.lgamma(n + 2 * lam)
        - math.lgamma(2 * lam)
        - math.lgamma(n + 1)
    )
    if log_w > 709.0:
        raise OverflowError(f"omega_{n} at lambda={lam} exceeds double range")
    return math.exp(log_w)


def omega_vector(basis: GegenbauerBasis, nmax: int) -> np.ndarray:
    return np.array([weight_omega(basis, n) for n in range(nmax + 1)])


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Gauss rule for ``G_lam``; exact for polynomials of degree <= 2m - 1."""

    lam: float
    nodes: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)

    @property
    def size(self) -> int:
        return self.nodes.size

    def integrate(self, f: Callable) -> float:
        return float(self.weights @ _apply(f, self.nodes))


def _apply(f: Callable, x: np.ndarray) -> np.ndarray:
    # accept vectorised callables and plain scalar ones
    try:
        y = np.asarray(f(x), dtype=np.float64)
    except (TypeError, ValueError):
        y = None
    if y is None or y.shape != x.shape:
        y = np.array([float(f(float(v))) for v in x])
    return y


def quadrature(basis: GegenbauerBasis, m: int) -> QuadratureRule:
    """m-point Gauss-Gegenbauer rule via the symmetric Jacobi matrix (Golub-Welsch)."""
    if m < 1:
        raise DomainError(f"need at least one node, got {m}")
    lam = basis.lam
    if m == 1:
        return QuadratureRule(lam, np.zeros(1), np.ones(1))
    # monic recurrence coefficients for weight (1-x^2)^(lam-1/2); k=1 written
    # separately so lam=0 needs no limit
    k = np.arange(2, m, dtype=np.float64)
    beta = np.empty(m - 1)
    beta[0] = 1.0 / (2.0 * (1.0 + lam))
    beta[1:] = k * (k + 2 * lam - 1) / (4 * (k + lam) * (k + lam - 1))
    nodes, vecs = eigh_tridiagonal(np.zeros(m), np.sqrt(beta))
    weights = vecs[0] ** 2
    # the rule is symmetric; enforce it exactly
    nodes = 0.5 * (nodes - nodes[::-1])
    weights = 0.5 * (weights + weights[::-1])
    weights /= weights.sum()
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureRule(lam, nodes, weights)


def default_nodes(order: int) -> int:
    """Node count used when projecting onto degrees 0..order."""
    return 2 * order + 16


def fg_coefficient(f: Callable, basis: GegenbauerBasis, n: int, m: Optional[int] = None) -> float:
    """Fourier-Gegenbauer coefficient ``int f W_n dG_lam`` by m-point quadrature.

    The Schoenberg coefficient is ``weight_omega(basis, n) * fg_coefficient(...)``.
    """
    rule = quadrature(basis, m if m is not None else default_nodes(n))
    values = _apply(f, rule.nodes)
    return float(rule.weights @ (values * eval_poly(basis, n, rule.nodes)))
