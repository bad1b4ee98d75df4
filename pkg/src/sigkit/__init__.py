"""Significativity indices for agreement values between two classifiers."""

from . import backend
from .agreement import (
    IA,
    KAPPA,
    AgreementMeasure,
    ConfusionMatrix,
    ProbabilityMatrix,
    cohen_kappa,
    information_agreement,
    lookup_measure,
    to_probability,
)
from .compositions import (
    WeakComposition,
    composition_count,
    enumerate_all,
    gamma,
    gamma_inv,
    project,
    unrank_lex,
    unrank_lex_fast,
)
from .errors import (
    BudgetExceeded,
    NotASquare,
    RankOutOfRange,
    SigkitError,
    TooShort,
    UnknownMeasure,
    ZeroTests,
)
from .exact import ExactSignificativity, count_below, exact_curve, exact_varrho
from .montecarlo import (
    SignificativityEstimate,
    SimplexPoint,
    mc_rho,
    mc_varrho,
    sample_simplex,
    sample_uniform_composition,
)
from .rng import RngStream

__version__ = "0.1.0"
