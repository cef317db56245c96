"""theta-lab: theta series evaluation and operator-identity verification."""

from .numerics import (
    DomainError,
    DirichletCharacter,
    SeriesResult,
    TruncationSpec,
    gaussian_tail_bound,
    get_precision,
    kronecker_symbol,
    epsilon_d,
    principal_power,
    set_precision,
)

__version__ = "0.1.0"
