"""Dimension walks as exact maps between Schoenberg coefficient sequences.

Two-step walks (montee = integration from -1, descente = differentiation)
move between orders ``lam + 1`` and ``lam``, i.e. between S^{d+2} and S^d.
Half-step walks (weighted Riemann-Liouville operators of order 1/2) move
between ``lam + 1/2`` and ``lam``. The Hilbert-sphere walks act on power
series. All maps only rescale and reindex coefficients, except for the
constant term that integration creates.

Factors below are for the normalised basis ``W_n(1) = 1``:

* ``d/dx W^lam_n = rho(lam, n) W^{lam+1}_{n-1}``,
  ``rho = n (n + 2 lam) / (2 lam + 1)``;
* ``J^lam_+ W^{lam+1/2}_n = c_n W^lam_n`` and ``J^lam_- W^{lam+1/2}_n = c_n W^lam_{n+1}``,
  ``c_n = 2 sqrt(pi) Gamma(lam+1) / (Gamma(lam+1/2) (n + lam + 1/2))``;
* ``D^lam_+ W^lam_n = e_n W^{lam+1/2}_{n-1}`` and ``D^lam_- W^lam_n = e_n W^{lam+1/2}_n``,
  ``e_n = sqrt(pi) Gamma(lam+1/2) / Gamma(lam+1) * n (n + 2 lam) / (n + lam)``.

At ``lam = 0`` these reduce to ``J^0_± P_n = 2/(n+1/2) T_{n or n+1}`` and
``D^0_± T_n = n pi P_{n-1 or n}``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence, Union

from .errors import MembershipError, OrderError
from .gegenbauer import GegenbauerBasis
from .series import (
    AnySeries,
    PowerSeries,
    Verdict,
    is_temporal,
    validate,
    value_at_zero,
    zero_coefficient,
)
from .temporal import TemporalPD

__all__ = [
    "mu",
    "derivative_factor",
    "halfstep_int_factor",
    "halfstep_der_factor",
    "WalkResult",
    "WalkError",
    "montee",
    "descente",
    "hilbert_montee",
    "hilbert_descente",
    "halfstep_int",
    "halfstep_der",
    "first_moment",
    "walk",
    "OPERATIONS",
]


def mu(lam: float) -> float:
    """Scaling constant of the unnormalised identity ``d/dx C^lam_n = 2 mu C^{lam+1}_{n-1}``."""
    return lam if lam > 0 else 1.0


def derivative_factor(lam: float, n: int) -> float:
    """``rho`` with ``d/dx W^lam_n = rho * W^{lam+1}_{n-1}``; zero for ``n = 0``."""
    return n * (n + 2.0 * lam) / (2.0 * lam + 1.0)


def halfstep_int_factor(lam: float, n: int) -> float:
    return 2.0 * math.sqrt(math.pi) * math.exp(math.lgamma(lam + 1.0) - math.lgamma(lam + 0.5)) / (n + lam + 0.5)


def halfstep_der_factor(lam: float, n: int) -> float:
    if n == 0:
        return 0.0
    k = math.sqrt(math.pi) * math.exp(math.lgamma(lam + 0.5) - math.lgamma(lam + 1.0))
    return k * n * (n + 2.0 * lam) / (n + lam)


@dataclass(frozen=True)
class WalkResult:
    """Output of one walk (or a chain of walks).

    ``series`` is the exact image of the input. Integration walks also
    report ``b0`` (the constant term, a signed combination in the temporal
    case), ``bound`` (``C >= sup_t |b0(t)|``) and ``completed``: the series
    with its constant term replaced by ``b0 + completion``, which has
    nonnegative coefficients. For spatial input the completion is the
    number ``C``; for temporal input it is the function ``sum_{n>=1} b_n(t)``
    whose value at zero is ``C``.
    """

    op: str
    order_in: Union[float, str]
    order_out: Union[float, str]
    series: AnySeries
    b0: Optional[object] = None
    bound: Optional[float] = None
    completion: Optional[object] = None
    completed: Optional[AnySeries] = None
    caveats: tuple = ()
    diagnostics: dict = field(default_factory=dict)
    provenance: tuple = ()

    def __post_init__(self):
        if self.completed is None:
            object.__setattr__(self, "completed", self.series)

    @property
    def verdict(self) -> Verdict:
        return validate(self.completed)

    @property
    def pd_certified(self) -> bool:
        return self.verdict.valid

    @property
    def mass(self) -> float:
        return math.fsum(value_at_zero(c) for c in self.completed.coeffs)

    def log_entry(self) -> dict:
        entry = {
            "op": self.op,
            "order_in": self.order_in,
            "order_out": self.order_out,
            "mass": self.mass,
            "normalized": self.verdict.normalized,
        }
        if self.bound is not None:
            entry["constant_bound"] = self.bound
        if self.b0 is not None and not isinstance(self.b0, TemporalPD):
            entry["b0"] = float(self.b0)
        if self.caveats:
            entry["caveats"] = list(self.caveats)
        return entry


class WalkError(Exception):
    """A step of a walk chain failed; ``partial`` holds the provenance so far."""

    def __init__(self, message: str, partial: Sequence[dict] = ()):
        super().__init__(message)
        self.partial = tuple(partial)


def _require_valid(s: AnySeries, check: bool) -> None:
    if check:
        v = validate(s)
        if not v.valid:
            raise MembershipError(f"input series is not membership-valid: {v.reason}")


def _sphere(s: AnySeries) -> GegenbauerBasis:
    if isinstance(s, PowerSeries):
        raise OrderError("Hilbert-sphere power series need the hilbert_* walks")
    return s.basis


def _alternating_constant(b: list, zero):
    """``b0 = -sum_{n>=1} b_n W_n(-1)`` and the nonnegative completed term ``2 sum_odd b_n``."""
    b0 = zero
    odd = zero
    for n in range(1, len(b)):
        b0 = b0 + (b[n] if n % 2 else -b[n])
        if n % 2:
            odd = odd + b[n]
    return b0, 2 * odd


def _bound(terms) -> float:
    return math.fsum(c.abs_weight() if isinstance(c, TemporalPD) else abs(float(c)) for c in terms)


def montee(s: AnySeries, check: bool = True) -> WalkResult:
    """Integrate from -1: order ``lam + 1`` (S^{d+2}) to ``lam`` (S^d)."""
    basis = _sphere(s)
    if basis.lam < 1.0:
        raise OrderError(f"montee needs input order >= 1, got {basis.lam}")
    _require_valid(s, check)
    out_basis = basis.shifted(-1.0)
    lam = out_basis.lam
    a = s.coefficient_list()
    zero = zero_coefficient(s)
    b = [zero] * (len(a) + 1)
    for n in range(1, len(a) + 1):
        b[n] = a[n - 1] / derivative_factor(lam, n)
    b0, completed0 = _alternating_constant(b, zero)
    bound = _bound(b[1:])
    completion = bound if not is_temporal(s) else sum(b[1:], zero)
    series = s.with_coeffs([b0] + b[1:], out_basis)
    completed = s.with_coeffs([completed0] + b[1:], out_basis)
    return WalkResult(
        "montee", basis.lam, lam, series,
        b0=b0, bound=bound, completion=completion, completed=completed,
    )


def descente(s: AnySeries, check: bool = True) -> WalkResult:
    """Differentiate: order ``lam`` (S^d) to ``lam + 1`` (S^{d+2}); ``a_0`` is annihilated."""
    basis = _sphere(s)
    _require_valid(s, check)
    lam = basis.lam
    a = s.coefficient_list()
    b = [derivative_factor(lam, n + 1) * a[n + 1] for n in range(len(a) - 1)]
    caveats = []
    if lam < 1.0:
        caveats.append("order < 1: differentiability is assumed, not guaranteed, beyond the truncation")
    if not b:
        caveats.append("zero series: input was constant")
    return WalkResult(
        "descente", lam, lam + 1.0, s.with_coeffs(b, basis.shifted(1.0)), caveats=tuple(caveats)
    )


def _check_sign(sign: str) -> str:
    if sign not in ("+", "-"):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    return sign


def halfstep_int(s: AnySeries, sign: str = "+", check: bool = True) -> WalkResult:
    """Half-step integral ``J^lam_±``: order ``lam + 1/2`` (S^{d+1}) to ``lam`` (S^d)."""
    _check_sign(sign)
    basis = _sphere(s)
    if basis.lam < 0.5:
        raise OrderError(f"half-step integral needs input order >= 1/2, got {basis.lam}")
    _require_valid(s, check)
    out_basis = basis.shifted(-0.5)
    lam = out_basis.lam
    a = s.coefficient_list()
    scaled = [halfstep_int_factor(lam, n) * a[n] for n in range(len(a))]
    b = scaled if sign == "+" else [zero_coefficient(s)] + scaled
    return WalkResult("jplus" if sign == "+" else "jminus", basis.lam, lam, s.with_coeffs(b, out_basis))


def halfstep_der(s: AnySeries, sign: str = "+", check: bool = True) -> WalkResult:
    """Half-step derivative ``D^lam_±``: order ``lam`` (S^d) to ``lam + 1/2`` (S^{d+1})."""
    _check_sign(sign)
    basis = _sphere(s)
    _require_valid(s, check)
    lam = basis.lam
    a = s.coefficient_list()
    scaled = [halfstep_der_factor(lam, n) * a[n] for n in range(len(a))]
    if sign == "+":
        b = scaled[1:]
    else:
        b = [zero_coefficient(s)] + scaled[1:] if scaled else []
    caveats = ("continuity of the image is assumed",)
    return WalkResult(
        "dplus" if sign == "+" else "dminus", lam, lam + 0.5,
        s.with_coeffs(b, basis.shifted(0.5)), caveats=caveats,
    )


def _power(s: AnySeries) -> PowerSeries:
    if not isinstance(s, PowerSeries):
        raise OrderError("Hilbert-sphere walks act on power series")
    return s


def hilbert_montee(p: PowerSeries, check: bool = True) -> WalkResult:
    """``int_{-1}^x`` on a power series: ``b_n = a_{n-1}/n``, ``b_0 = sum (-1)^i a_i/(i+1)``."""
    p = _power(p)
    _require_valid(p, check)
    a = p.coefficient_list()
    zero = zero_coefficient(p)
    b = [zero] + [a[n - 1] / n for n in range(1, len(a) + 1)]
    b0, completed0 = _alternating_constant(b, zero)
    bound = _bound(b[1:])
    completion = bound if not p.temporal else sum(b[1:], zero)
    return WalkResult(
        "hilbert-montee", "hilbert", "hilbert", p.with_coeffs([b0] + b[1:]),
        b0=b0, bound=bound, completion=completion, completed=p.with_coeffs([completed0] + b[1:]),
    )


def first_moment(p: PowerSeries) -> float:
    """``sum_n n a_n(0)``; finite for every truncation, large for slowly decaying tails."""
    return math.fsum(n * value_at_zero(c) for n, c in enumerate(_power(p).coeffs))


def hilbert_descente(p: PowerSeries, check: bool = True) -> WalkResult:
    """``d/dx`` on a power series: ``b_n = (n + 1) a_{n+1}``."""
    p = _power(p)
    _require_valid(p, check)
    a = p.coefficient_list()
    b = [(n + 1) * a[n + 1] for n in range(len(a) - 1)]
    return WalkResult(
        "hilbert-descente", "hilbert", "hilbert", p.with_coeffs(b),
        diagnostics={"first_moment": first_moment(p)},
    )


OPERATIONS = {
    "montee": montee,
    "descente": descente,
    "jplus": lambda s, check=True: halfstep_int(s, "+", check),
    "jminus": lambda s, check=True: halfstep_int(s, "-", check),
    "dplus": lambda s, check=True: halfstep_der(s, "+", check),
    "dminus": lambda s, check=True: halfstep_der(s, "-", check),
    "hilbert-montee": hilbert_montee,
    "hilbert-descente": hilbert_descente,
}


def _order(s: AnySeries):
    return "hilbert" if isinstance(s, PowerSeries) else s.basis.lam


def walk(s: AnySeries, ops: Union[str, Sequence[str]], steps: int = 1) -> WalkResult:
    """Apply ``ops`` (one name or a sequence) ``steps`` times, one operator at a time.

    Each step acts on the completed output of the previous one, so emitted
    constants are carried along. The half-step operators have no semigroup
    property, so a chain is never collapsed into a single operator.
    """
    if steps < 0:
        raise ValueError("steps must be >= 0")
    names = [ops] if isinstance(ops, str) else list(ops)
    for name in names:
        if name not in OPERATIONS:
            raise ValueError(f"unknown walk {name!r}")
    current = s
    log: list = []
    last: Optional[WalkResult] = None
    for step in range(steps):
        for name in names:
            try:
                last = OPERATIONS[name](current)
            except (OrderError, MembershipError) as exc:
                raise WalkError(f"step {step + 1} ({name}): {exc}", log) from exc
            log.append(last.log_entry())
            current = last.completed
    if last is None:
        return WalkResult("identity", _order(s), _order(s), s)
    return replace(last, provenance=tuple(log))
