"""Closed-form covariance functions on [-1, 1] available to ``dimwalk project``.

Specs look like ``multiquadric:delta=0.3,tau=1``, ``wendland:c=1.2``,
``poly:0,0,1`` (monomial coefficients, constant term first) or ``constant``.
"""
from __future__ import annotations

from typing import Callable

import numpy as np


def multiquadric(delta: float = 0.3, tau: float = 1.0) -> Callable:
    """``(1 - delta)^(2 tau) / (1 + delta^2 - 2 delta x)^tau``; equals one at ``x = 1``."""
    if not 0.0 < delta < 1.0 or tau <= 0.0:
        raise ValueError("multiquadric needs 0 < delta < 1 and tau > 0")
    return lambda x: (1.0 - delta) ** (2 * tau) / (1.0 + delta * delta - 2.0 * delta * np.asarray(x)) ** tau


def wendland(c: float = 1.0) -> Callable:
    """C2-Wendland function of geodesic distance, support radius ``c`` in (0, pi]."""
    if not 0.0 < c <= np.pi:
        raise ValueError("wendland support c must lie in (0, pi]")

    def f(x):
        r = np.arccos(np.clip(np.asarray(x, dtype=np.float64), -1.0, 1.0)) / c
        return (1.0 + 4.0 * r) * np.clip(1.0 - r, 0.0, None) ** 4

    return f


def polynomial(*coeffs: float) -> Callable:
    if not coeffs:
        raise ValueError("poly needs at least one coefficient")
    c = np.array(coeffs, dtype=np.float64)
    return lambda x: np.polynomial.polynomial.polyval(np.asarray(x, dtype=np.float64), c)


def constant(value: float = 1.0) -> Callable:
    return lambda x: np.full_like(np.asarray(x, dtype=np.float64), value)


_NAMED = {"multiquadric": multiquadric, "wendland": wendland, "constant": constant}


def parse_function(spec: str) -> Callable:
    """Turn a ``name[:args]`` string into a vectorised callable."""
    name, _, args = spec.strip().partition(":")
    name = name.strip().lower()
    try:
        if name == "poly":
            return polynomial(*(float(v) for v in args.split(",") if v.strip()))
        if name not in _NAMED:
            raise ValueError(f"unknown function {name!r}; choose from poly, {', '.join(_NAMED)}")
        kwargs = {}
        for item in filter(None, (a.strip() for a in args.split(","))):
            key, eq, value = item.partition("=")
            if not eq:
                if name == "constant" and not kwargs:
                    kwargs["value"] = float(key)
                    continue
                raise ValueError(f"expected key=value, got {item!r}")
            kwargs[key.strip()] = float(value)
        return _NAMED[name](**kwargs)
    except TypeError as exc:
        raise ValueError(f"bad parameters for {name}: {exc}") from exc
