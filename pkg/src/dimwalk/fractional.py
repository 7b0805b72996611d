"""Direct quadrature of the weighted Riemann-Liouville operators.

This is the reference used to check the coefficient maps in ``walks``; it
is slow and not used on any production path.

For order ``alpha`` and weight parameter ``lam``::

    I_+ f(x) = (1+x)^(alpha-lam) int_{-1}^x (x-u)^(alpha-1) (1+u)^lam f(u) du
    I_- f(x) = (1-x)^(alpha-lam) int_x^1 (u-x)^(alpha-1) (1-u)^lam f(u) du
    D_+ f(x) = (1+x) d/dx [ (1+x)^(-lam) int_{-1}^x (x-u)^(alpha-1) (1+u)^(lam-alpha) f(u) du ]
    D_- f(x) = (1-x) d/dx [ (1-x)^(-lam) int_x^1 (u-x)^(alpha-1) (1-u)^(lam-alpha) f(u) du ]

After ``u = -1 + (1+x) s`` (or ``u = 1 - (1-x) s``) both endpoint
singularities become a Jacobi weight on [0, 1], integrated exactly for
polynomial ``f`` by a Gauss-Jacobi rule. Derivatives use a fourth-order
central difference with step ``h = 1e-5``.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

import numpy as np
from scipy.special import roots_jacobi

from .errors import AccuracyWarning, DomainError

SIGNS = ("plus", "minus", "sum", "diff")
STEP = 1e-5
REFINE_TOL = 1e-5


@dataclass(frozen=True)
class FractionalOperatorSpec:
    alpha: float
    lam: float
    sign: str = "sum"  # plus | minus | sum (I_+ + I_-) | diff (I_+ - I_-)
    kind: str = "integral"  # integral | derivative

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise DomainError(f"alpha must lie in (0, 1], got {self.alpha}")
        if self.lam < 0:
            raise DomainError(f"lambda must be >= 0, got {self.lam}")
        if self.sign not in SIGNS:
            raise ValueError(f"sign must be one of {SIGNS}")
        if self.kind not in ("integral", "derivative"):
            raise ValueError("kind must be 'integral' or 'derivative'")
        if self.kind == "derivative" and self.lam - self.alpha <= -1.0:
            raise DomainError("derivative kind needs lam - alpha > -1")


@lru_cache(maxsize=64)
def _unit_rule(a: float, b: float, m: int):
    """Nodes/weights on [0, 1] for the weight (1-s)^a s^b."""
    y, w = roots_jacobi(m, a, b)
    return (1.0 + y) / 2.0, w / 2.0 ** (a + b + 1.0)


def _bind(f: Callable, t: Optional[float]) -> Callable:
    return f if t is None else (lambda u: f(u, t))


def _weighted(g, a, b, x_map, m):
    s, w = _unit_rule(a, b, m)
    return float(w @ np.asarray(g(x_map(s)), dtype=np.float64))


def _side_integral(spec, g, x, side, m):
    a, lam = spec.alpha, spec.lam
    if side > 0:
        r = 1.0 + x
        inner = _weighted(g, a - 1.0, lam, lambda s: -1.0 + r * s, m)
    else:
        r = 1.0 - x
        inner = _weighted(g, a - 1.0, lam, lambda s: 1.0 - r * s, m)
    # (1 +- x)^(alpha - lam) times the (1 +- x)^(lam + alpha) from the substitution
    return r ** (2.0 * a) * inner


def _side_derivative(spec, g, x, side, m):
    a, lam = spec.alpha, spec.lam

    def smoothed(y):
        # (1 +- y)^(-lam) cancels the Jacobian power exactly
        if side > 0:
            return _weighted(g, a - 1.0, lam - a, lambda s: -1.0 + (1.0 + y) * s, m)
        return _weighted(g, a - 1.0, lam - a, lambda s: 1.0 - (1.0 - y) * s, m)

    h = STEP
    d = (-smoothed(x + 2 * h) + 8 * smoothed(x + h) - 8 * smoothed(x - h) + smoothed(x - 2 * h)) / (12 * h)
    return (1.0 + side * x) * d


def _combine(spec, g, x, m):
    side_op = _side_integral if spec.kind == "integral" else _side_derivative
    if spec.sign == "plus":
        return side_op(spec, g, x, +1, m)
    if spec.sign == "minus":
        return side_op(spec, g, x, -1, m)
    plus = side_op(spec, g, x, +1, m)
    minus = side_op(spec, g, x, -1, m)
    return plus + minus if spec.sign == "sum" else plus - minus


def numeric_fractional(spec: FractionalOperatorSpec, f: Callable, x: float,
                       t: Optional[float] = None, nodes: int = 48) -> float:
    """Apply the operator in ``spec`` to ``f`` at ``x`` by quadrature.

    ``f(u)`` (or ``f(u, t)`` when ``t`` is given) must accept numpy arrays.
    The rule is repeated with twice the nodes; disagreement above 1e-5
    raises an ``AccuracyWarning``.
    """
    x = float(x)
    margin = 2 * STEP if spec.kind == "derivative" else 0.0
    if abs(x) > 1.0 - margin:
        raise DomainError(f"x={x} too close to the boundary for this operator")
    g = _bind(f, t)
    value = _combine(spec, g, x, nodes)
    check = _combine(spec, g, x, 2 * nodes)
    if abs(value - check) > REFINE_TOL * max(1.0, abs(check)):
        warnings.warn(
            f"quadrature refinement disagrees: {value!r} vs {check!r}", AccuracyWarning, stacklevel=2
        )
    return check
