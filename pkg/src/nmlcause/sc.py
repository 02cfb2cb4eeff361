"""Multinomial stochastic complexity (NML code lengths) in bits."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Hashable, Iterable, Sequence

import numpy as np

from . import kernels

DEFAULT_PRECISION = 10

ORACLE_MAX_M = 8
ORACLE_MAX_N = 12


class InputShapeError(ValueError):
    """Inputs have incompatible lengths or are empty."""


class BoundExceededError(ValueError):
    """A size limit of an enumeration routine was exceeded."""


@dataclass(frozen=True, eq=False)
class DiscreteSample:
    """Integer-encoded observations over the symbols ``0 .. domain_size-1``.

    ``labels`` optionally records the original token for each symbol so the
    encoding can be inverted.
    """

    values: np.ndarray
    domain_size: int
    labels: tuple | None = field(default=None, repr=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=np.int64).ravel()
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        m = int(self.domain_size)
        object.__setattr__(self, "domain_size", m)
        if values.size == 0:
            raise InputShapeError("sample is empty")
        if m < 1:
            raise ValueError(f"domain_size must be >= 1, got {m}")
        lo, hi = int(values.min()), int(values.max())
        if lo < 0 or hi >= m:
            raise ValueError(f"values must lie in [0, {m}), found range [{lo}, {hi}]")
        if self.labels is not None and len(self.labels) != m:
            raise ValueError("labels must have one entry per symbol")

    @property
    def n(self) -> int:
        return int(self.values.size)

    def __len__(self):
        return self.n

    @classmethod
    def from_tokens(cls, tokens: Iterable[Hashable]) -> "DiscreteSample":
        """Encode arbitrary tokens to symbols in order of first appearance."""
        index: dict = {}
        codes = [index.setdefault(tok, len(index)) for tok in tokens]
        return cls(np.asarray(codes, dtype=np.int64), len(index), tuple(index))

    @classmethod
    def from_integers(cls, raw: Sequence[int] | np.ndarray) -> "DiscreteSample":
        """Encode integers to contiguous symbols in ascending value order."""
        uniq, codes = np.unique(np.asarray(raw, dtype=np.int64), return_inverse=True)
        return cls(codes.astype(np.int64), uniq.size, tuple(int(u) for u in uniq))

    def decode(self) -> list:
        if self.labels is None:
            return self.values.tolist()
        return [self.labels[v] for v in self.values]


@dataclass(frozen=True, eq=False)
class Histogram:
    counts: np.ndarray

    def __post_init__(self):
        counts = np.array(self.counts, dtype=np.int64).ravel()
        if counts.size == 0 or (counts < 0).any():
            raise ValueError("counts must be a non-empty array of non-negative integers")
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)

    @property
    def n(self) -> int:
        return int(self.counts.sum())

    @property
    def m(self) -> int:
        return int(self.counts.size)


@dataclass(frozen=True)
class LogNormalizer:
    m: int
    n: int
    log2_R: float


def histogram(sample: DiscreteSample) -> Histogram:
    return Histogram(kernels.histogram(sample.values, sample.domain_size))


def ml_codelength(hist: Histogram) -> float:
    """Code length of the data under its own maximum-likelihood multinomial."""
    return float(kernels.ml_bits(hist.counts))


def _compositions(n: int, m: int):
    # stars and bars: choose m-1 bar positions among n+m-1 slots
    for bars in combinations(range(n + m - 1), m - 1):
        prev = -1
        parts = []
        for b in bars:
            parts.append(b - prev - 1)
            prev = b
        parts.append(n + m - 2 - prev)
        yield parts


def normalizing_sum_oracle(m: int, n: int) -> LogNormalizer:
    """Exact normalizing sum by enumerating every histogram of size ``n``.

    Sums ``n!/(h_1!...h_m!) * prod h_j^h_j`` in integer arithmetic and
    divides by ``n^n`` exactly before the final logarithm. Meant for testing.
    """
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    if m > ORACLE_MAX_M or n > ORACLE_MAX_N:
        raise BoundExceededError(
            f"enumeration limited to m <= {ORACLE_MAX_M}, n <= {ORACLE_MAX_N}; got m={m}, n={n}"
        )
    fact = [math.factorial(k) for k in range(n + 1)]
    total = 0
    for parts in _compositions(n, m):
        coef = fact[n]
        power = 1
        for h in parts:
            coef //= fact[h]
            power *= h**h  # 0**0 == 1
        total += coef * power
    return LogNormalizer(m, n, math.log2(Fraction(total, n**n)))


def normalizing_sum(m: int, n: int, precision_digits: int = DEFAULT_PRECISION) -> LogNormalizer:
    """log2 of the multinomial normalizing sum R(m, n).

    The binary case is the truncated series ``1 + Q(n)`` with O(sqrt(d n))
    terms, and larger alphabets follow from
    ``R(k+2, n) = R(k+1, n) + (n / k) R(k, n)``.
    """
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    if precision_digits < 1:
        raise ValueError("precision_digits must be positive")
    return LogNormalizer(m, n, float(kernels.log2_normalizer(m, n, precision_digits)))


def stochastic_complexity(sample: DiscreteSample, precision_digits: int = DEFAULT_PRECISION) -> float:
    """NML code length of ``sample`` under the multinomial class over its domain."""
    ml = ml_codelength(histogram(sample))
    return ml + float(kernels.log2_normalizer(sample.domain_size, sample.n, precision_digits))


def conditional_stochastic_complexity(
    target: DiscreteSample,
    condition: DiscreteSample,
    precision_digits: int = DEFAULT_PRECISION,
) -> float:
    """Sum over observed condition values of the complexity of the matching target slice.

    Every slice is scored against the full domain of ``target``.
    """
    if target.n != condition.n:
        raise InputShapeError(f"length mismatch: target has {target.n} values, condition has {condition.n}")
    parts = kernels.slice_codelengths(
        target.values, condition.values, target.domain_size, condition.domain_size, precision_digits
    )
    return math.fsum(parts)
