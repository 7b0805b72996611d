"""Truncated Schoenberg expansions on S^d, S^d x R and the Hilbert sphere.

Spatial coefficients are floats; spatio-temporal coefficients are
``TemporalPD`` objects. Membership is checked through the coefficients:
a finite expansion with nonnegative coefficients (nonnegative atom weights
in time) is positive definite on the corresponding sphere.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np

from . import _kernels
from .errors import DomainError
from .gegenbauer import (
    GegenbauerBasis,
    _apply,
    _check_x,
    default_nodes,
    omega_vector,
    poly_table,
    quadrature,
)
from .temporal import ZERO, TemporalPD

CLAMP_TOL = 1e-12
NORM_TOL = 1e-12


def _frozen_array(values) -> np.ndarray:
    arr = np.array(values, dtype=np.float64).reshape(-1)
    if not np.all(np.isfinite(arr)):
        raise ValueError("coefficients must be finite")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class SpatialSeries:
    """``f(x) = sum_n coeffs[n] W^lam_n(x)`` for n = 0..N."""

    basis: GegenbauerBasis
    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _frozen_array(self.coeffs))

    @property
    def truncation(self) -> int:
        return self.coeffs.size - 1

    def __eq__(self, other):
        if not isinstance(other, SpatialSeries):
            return NotImplemented
        return self.basis == other.basis and np.array_equal(self.coeffs, other.coeffs)

    def __call__(self, x):
        return eval_spatial(self, x)

    def coefficient_list(self) -> list:
        return [float(c) for c in self.coeffs]

    def with_coeffs(self, coeffs, basis: Optional[GegenbauerBasis] = None) -> "SpatialSeries":
        return SpatialSeries(basis or self.basis, coeffs)


@dataclass(frozen=True)
class SpatioTemporalSeries:
    """``f(x, t) = scale * sum_n coeffs[n](t) W^lam_n(x)``."""

    basis: GegenbauerBasis
    coeffs: tuple
    scale: float = 1.0

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        if not all(isinstance(c, TemporalPD) for c in coeffs):
            raise TypeError("spatio-temporal coefficients must be TemporalPD")
        scale = float(self.scale)
        if not (scale > 0 and math.isfinite(scale)):
            raise DomainError(f"scale must be a positive finite number, got {self.scale}")
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "scale", scale)

    @property
    def truncation(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x, t):
        return eval_spatiotemporal(self, x, t)

    def coefficient_list(self) -> list:
        return list(self.coeffs)

    def with_coeffs(self, coeffs, basis: Optional[GegenbauerBasis] = None) -> "SpatioTemporalSeries":
        return SpatioTemporalSeries(basis or self.basis, tuple(coeffs), self.scale)

    def slice(self, t: float) -> SpatialSeries:
        """The spatial series obtained by freezing time at ``t``."""
        return SpatialSeries(self.basis, [self.scale * c(t) for c in self.coeffs])


@dataclass(frozen=True, eq=False)
class PowerSeries:
    """Hilbert-sphere expansion ``sum_n a_n x^n``; ``a_n`` floats or ``TemporalPD``."""

    coeffs: Union[np.ndarray, tuple]
    temporal: bool = False
    scale: float = 1.0

    def __post_init__(self):
        if self.temporal:
            coeffs = tuple(self.coeffs)
            if not all(isinstance(c, TemporalPD) for c in coeffs):
                raise TypeError("temporal power series need TemporalPD coefficients")
            object.__setattr__(self, "coeffs", coeffs)
        else:
            object.__setattr__(self, "coeffs", _frozen_array(self.coeffs))
        scale = float(self.scale)
        if not (scale > 0 and math.isfinite(scale)):
            raise DomainError(f"scale must be a positive finite number, got {self.scale}")
        object.__setattr__(self, "scale", scale)

    @property
    def truncation(self) -> int:
        return len(self.coeffs) - 1

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        if self.temporal != other.temporal or self.scale != other.scale:
            return False
        if self.temporal:
            return self.coeffs == other.coeffs
        return np.array_equal(self.coeffs, other.coeffs)

    def __call__(self, x, t=None):
        return eval_power(self, x, t)

    def coefficient_list(self) -> list:
        return list(self.coeffs) if self.temporal else [float(c) for c in self.coeffs]

    def with_coeffs(self, coeffs, basis=None) -> "PowerSeries":
        return PowerSeries(tuple(coeffs) if self.temporal else coeffs, self.temporal, self.scale)


AnySeries = Union[SpatialSeries, SpatioTemporalSeries, PowerSeries]


def is_temporal(s: AnySeries) -> bool:
    return isinstance(s, SpatioTemporalSeries) or (isinstance(s, PowerSeries) and s.temporal)


def zero_coefficient(s: AnySeries):
    return ZERO if is_temporal(s) else 0.0


def value_at_zero(c) -> float:
    return c.at_zero() if isinstance(c, TemporalPD) else float(c)


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def _shaped(values: np.ndarray, shape):
    values = values.reshape(shape)
    return float(values) if values.ndim == 0 else values


def eval_spatial(s: SpatialSeries, x):
    arr = _check_x(x)
    return _shaped(_kernels.series_sum(s.coeffs, s.basis.lam, arr), arr.shape)


def eval_temporal(p: TemporalPD, t):
    return p(t)


def _temporal_rows(coeffs: Sequence[TemporalPD], t: np.ndarray) -> np.ndarray:
    A = np.empty((len(coeffs), t.size))
    for n, c in enumerate(coeffs):
        A[n] = c(t.ravel()) if c.atoms else 0.0
    return A


def eval_spatiotemporal(s: SpatioTemporalSeries, x, t):
    xa = _check_x(x)
    ta = np.asarray(t, dtype=np.float64)
    xa, ta = np.broadcast_arrays(xa, ta)
    A = _temporal_rows(s.coeffs, ta)
    values = s.scale * _kernels.weighted_sum(A, s.basis.lam, xa)
    return _shaped(values, xa.shape)


def eval_power(p: PowerSeries, x, t=None):
    xa = _check_x(x)
    if not p.temporal:
        return _shaped(p.scale * np.polynomial.polynomial.polyval(xa.ravel(), p.coeffs), xa.shape)
    if t is None:
        raise ValueError("temporal power series need a time lag")
    ta = np.asarray(t, dtype=np.float64)
    xa, ta = np.broadcast_arrays(xa, ta)
    xf = xa.ravel()
    acc = np.zeros(xf.size)
    for c in reversed(p.coeffs):
        acc = acc * xf + (c(ta.ravel()) if c.atoms else 0.0)
    return _shaped(p.scale * acc, xa.shape)


def evaluate(s: AnySeries, x, t=None):
    """Evaluate any series kind; ``t`` is required for temporal kinds."""
    if isinstance(s, SpatialSeries):
        return eval_spatial(s, x)
    if isinstance(s, SpatioTemporalSeries):
        if t is None:
            raise ValueError("spatio-temporal series need a time lag")
        return eval_spatiotemporal(s, x, t)
    return eval_power(s, x, t)


# ---------------------------------------------------------------------------
# projection and validation
# ---------------------------------------------------------------------------

def project(f: Callable, basis: GegenbauerBasis, order: int, m: Optional[int] = None) -> SpatialSeries:
    """Schoenberg coefficients ``a_n = omega_n * int f W_n dG`` for n <= order.

    No sign constraint is imposed; a non positive definite ``f`` projects to
    some negative coefficients.
    """
    if order < 0:
        raise DomainError(f"truncation order must be >= 0, got {order}")
    rule = quadrature(basis, m if m is not None else default_nodes(order))
    fw = _apply(f, rule.nodes) * rule.weights
    table = poly_table(basis, order, rule.nodes)
    return SpatialSeries(basis, omega_vector(basis, order) * (table @ fw))


@dataclass(frozen=True)
class Verdict:
    status: str  # valid_normalized | valid_unnormalized | invalid
    mass: float
    reason: Optional[str] = None

    @property
    def valid(self) -> bool:
        return self.status != "invalid"

    @property
    def normalized(self) -> bool:
        return self.status == "valid_normalized"


def _verdict(mass: float, bad: Optional[str]) -> Verdict:
    if bad is not None:
        return Verdict("invalid", mass, bad)
    if abs(mass - 1.0) <= NORM_TOL:
        return Verdict("valid_normalized", mass)
    return Verdict("valid_unnormalized", mass)


def clamp(s: AnySeries, tol: float = CLAMP_TOL) -> AnySeries:
    """Zero out coefficients (or atom weights) lying in ``(-tol, 0)``."""
    if is_temporal(s):
        return s.with_coeffs([c.clamped(tol) for c in s.coeffs])
    a = np.array(s.coeffs)
    a[(a < 0) & (a > -tol)] = 0.0
    return s.with_coeffs(a)


def validate(s: AnySeries, tol: float = CLAMP_TOL) -> Verdict:
    """Membership verdict from the coefficients.

    Spatial: every ``a_n >= -tol``; normalised when the sum is one.
    Temporal: every atom weight ``>= -tol``; the reported mass is
    ``sum_n a_n(0)`` (the global scale is reported separately by the series).
    """
    if is_temporal(s):
        bad = None
        for n, c in enumerate(s.coeffs):
            if not c.is_nonnegative(tol):
                bad = f"negative atom weight in coefficient n={n}"
                break
        mass = math.fsum(c.at_zero() for c in s.coeffs)
        return _verdict(mass, bad)
    a = np.asarray(s.coeffs)
    neg = np.flatnonzero(a < -tol)
    bad = f"negative coefficient at n={int(neg[0])}" if neg.size else None
    a = np.where((a < 0) & (a > -tol), 0.0, a)
    mass = math.fsum(a)
    return _verdict(mass, bad)


def renormalize(s: AnySeries) -> AnySeries:
    """Divide the coefficients by ``sum_n a_n(0)``."""
    mass = math.fsum(value_at_zero(c) for c in s.coeffs)
    if not mass > 0:
        raise ValueError("cannot renormalise a series with nonpositive mass")
    return s.with_coeffs([c / mass for c in s.coefficient_list()])


def separable(spatial: SpatialSeries, temporal: Sequence[TemporalPD], scale: float = 1.0) -> SpatioTemporalSeries:
    """``a_n(t) = spatial.coeffs[n] * temporal[n](t)``; a convenient constructor."""
    if len(temporal) != spatial.coeffs.size:
        raise ValueError("need one temporal factor per spatial coefficient")
    return SpatioTemporalSeries(
        spatial.basis, [p * float(a) for a, p in zip(spatial.coeffs, temporal)], scale
    )
