"""Schoenberg expansions and dimension walks for positive definite functions on spheres."""
from .errors import AccuracyWarning, DocumentError, DomainError, MembershipError, OrderError
from .fractional import FractionalOperatorSpec, numeric_fractional
from .gegenbauer import (
    GegenbauerBasis,
    QuadratureRule,
    eval_poly,
    fg_coefficient,
    poly_table,
    quadrature,
    weight_omega,
)
from .pdcheck import PDReport, SphereConfig, certify, gram_min_eig, sample_sphere
from .series import (
    PowerSeries,
    SpatialSeries,
    SpatioTemporalSeries,
    Verdict,
    eval_power,
    eval_spatial,
    eval_spatiotemporal,
    eval_temporal,
    evaluate,
    project,
    renormalize,
    separable,
    validate,
)
from .temporal import Atom, TemporalPD
from .walks import (
    WalkResult,
    descente,
    halfstep_der,
    halfstep_int,
    hilbert_descente,
    hilbert_montee,
    montee,
    walk,
)

__version__ = "0.1.0"
