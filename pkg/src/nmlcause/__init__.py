"""Cause-effect direction for pairs of discrete variables by stochastic complexity.

The direction with the shorter total NML code length, ``S(X) + S(Y|X)``
against ``S(Y) + S(X|Y)`` under the multinomial model class, is inferred
to be causal.
"""
from .inference import TIE_EPSILON, CausalVerdict, Direction, directed_scores, infer
from .kernels import BACKEND
from .sc import (
    BoundExceededError,
    DiscreteSample,
    Histogram,
    InputShapeError,
    LogNormalizer,
    conditional_stochastic_complexity,
    histogram,
    ml_codelength,
    normalizing_sum,
    normalizing_sum_oracle,
    stochastic_complexity,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "TIE_EPSILON",
    "BoundExceededError",
    "CausalVerdict",
    "Direction",
    "DiscreteSample",
    "Histogram",
    "InputShapeError",
    "LogNormalizer",
    "conditional_stochastic_complexity",
    "directed_scores",
    "histogram",
    "infer",
    "ml_codelength",
    "normalizing_sum",
    "normalizing_sum_oracle",
    "stochastic_complexity",
]
