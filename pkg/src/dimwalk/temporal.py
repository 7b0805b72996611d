"""Positive definite functions on the real line built from a fixed catalogue.

A ``TemporalPD`` is a finite weighted sum of atoms. Each catalogued atom is
positive definite and equals one at ``t = 0``, so nonnegative weights give a
positive definite function whose value at zero is the weight sum. Signed
weights are representable (walk constants produce them) but are not
certified.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Real

import numpy as np

FAMILIES = {
    # family -> name of its single parameter (None for the constant)
    "constant": None,
    "exponential": "rate",
    "gaussian": "rate",
    "cosine": "frequency",
    "triangular": "halfwidth",
}


@dataclass(frozen=True)
class Atom:
    weight: float
    family: str
    param: float = 0.0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown temporal family {self.family!r}")
        weight = float(self.weight)
        param = float(self.param)
        if not (math.isfinite(weight) and math.isfinite(param)):
            raise ValueError("atom weight and parameter must be finite")
        if self.family == "constant":
            param = 0.0
        elif self.family == "cosine":
            if param < 0:
                raise ValueError("cosine frequency must be >= 0")
        elif param <= 0:
            raise ValueError(f"{self.family} parameter must be > 0")
        object.__setattr__(self, "weight", weight)
        object.__setattr__(self, "param", param)

    @property
    def key(self):
        return (self.family, self.param)

    def shape(self, t: np.ndarray) -> np.ndarray:
        """Unit-weight atom evaluated at lags ``t``."""
        fam, c = self.family, self.param
        if fam == "constant":
            return np.ones_like(t)
        if fam == "exponential":
            return np.exp(-c * np.abs(t))
        if fam == "gaussian":
            return np.exp(-c * t * t)
        if fam == "cosine":
            return np.cos(c * np.abs(t))
        return np.maximum(0.0, 1.0 - np.abs(t) / c)

    def params_dict(self) -> dict:
        name = FAMILIES[self.family]
        return {} if name is None else {name: self.param}


@dataclass(frozen=True)
class TemporalPD:
    """Weighted sum of catalogued atoms. Supports +, -, and scaling by reals."""

    atoms: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))

    @classmethod
    def of(cls, family: str, param: float = 0.0, weight: float = 1.0) -> "TemporalPD":
        return cls((Atom(weight, family, param),))

    @classmethod
    def constant(cls, weight: float = 1.0) -> "TemporalPD":
        return cls((Atom(weight, "constant"),))

    def __call__(self, t):
        arr = np.asarray(t, dtype=np.float64)
        out = np.zeros_like(arr)
        for atom in self.atoms:
            out = out + atom.weight * atom.shape(arr)
        return float(out) if out.ndim == 0 else out

    def at_zero(self) -> float:
        return math.fsum(a.weight for a in self.atoms)

    def abs_weight(self) -> float:
        """Sum of |weights|; bounds ``sup_t |p(t)|`` because every atom is bounded by one."""
        return math.fsum(abs(a.weight) for a in self.atoms)

    def is_nonnegative(self, tol: float = 0.0) -> bool:
        return all(a.weight >= -tol for a in self.atoms)

    def families(self) -> set:
        return {a.key for a in self.atoms}

    def merged(self) -> "TemporalPD":
        """Combine atoms with equal family and parameter; drop zero weights."""
        acc: dict = {}
        for a in self.atoms:
            acc.setdefault(a.key, []).append(a.weight)
        atoms = []
        for (fam, param), ws in acc.items():
            w = math.fsum(ws)
            if w != 0.0:
                atoms.append(Atom(w, fam, param))
        return TemporalPD(tuple(atoms))

    def clamped(self, tol: float) -> "TemporalPD":
        """Zero out weights in ``(-tol, 0)``."""
        return TemporalPD(tuple(
            Atom(0.0 if -tol < a.weight < 0 else a.weight, a.family, a.param) for a in self.atoms
        )).merged()

    # arithmetic -----------------------------------------------------------

    def __mul__(self, k):
        if not isinstance(k, Real):
            return NotImplemented
        return TemporalPD(tuple(Atom(a.weight * k, a.family, a.param) for a in self.atoms))

    __rmul__ = __mul__

    def __truediv__(self, k):
        if not isinstance(k, Real):
            return NotImplemented
        return TemporalPD(tuple(Atom(a.weight / k, a.family, a.param) for a in self.atoms))

    def __neg__(self):
        return self * -1.0

    def __add__(self, other):
        if isinstance(other, Real) and other == 0:
            return self
        if not isinstance(other, TemporalPD):
            return NotImplemented
        return TemporalPD(self.atoms + other.atoms).merged()

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, TemporalPD):
            return NotImplemented
        return self + (-other)


ZERO = TemporalPD(())
