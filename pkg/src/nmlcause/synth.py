"""Synthetic cause-effect pairs from a discrete additive noise model.

The cause is drawn from one of seven families with random parameters, the
effect is ``Y = f(X) + N`` with ``f`` a random lookup table over the cause
symbols and ``N`` uniform on ``[-t, t]``.

Randomness comes from PCG64 raw 64-bit output only; uniforms, integers and
every sampler below are derived from it here, so results do not depend on
numpy's distribution code. Per-pair seeds are mixed with SplitMix64.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .inference import Direction
from .sc import DiscreteSample

MASK64 = (1 << 64) - 1

F_RANGE = (-7, 7)
NOISE_WIDTH_RANGE = (1, 7)
UNIFORM_L_RANGE = (1, 10)
URN_RANGE = (1, 40)
TRIALS_RANGE = (1, 40)
CATEGORIES_RANGE = (2, 10)
P_RANGE = (0.1, 0.9)
LAMBDA_RANGE = (1.0, 10.0)


def splitmix64(x: int) -> int:
    """One SplitMix64 output step applied to ``x``."""
    z = (x + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(master_seed: int, *keys: int) -> int:
    """Fold integer keys into a 64-bit seed: ``s = splitmix64(s ^ key)`` per key."""
    s = splitmix64(master_seed & MASK64)
    for key in keys:
        s = splitmix64(s ^ (key & MASK64))
    return s


class Stream:
    """Deterministic random stream over PCG64 raw output.

    ``lane`` selects an independent sub-stream of the same seed.
    """

    def __init__(self, seed: int, lane: int = 0):
        self.seed = seed & MASK64
        self.lane = lane
        self._bits = np.random.PCG64(np.random.SeedSequence(self.seed, spawn_key=(lane,)))

    def raw(self, size) -> np.ndarray:
        count = int(np.prod(size))
        return self._bits.random_raw(count).reshape(size)

    def uniform(self, size=None):
        """Doubles in [0, 1) from the top 53 bits of each raw word."""
        if size is None:
            return float(self.raw(1)[0] >> np.uint64(11)) * 2.0**-53
        return (self.raw(size) >> np.uint64(11)).astype(np.float64) * 2.0**-53

    def uniform_real(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.uniform()

    def integers(self, lo: int, hi: int, size=None):
        """Integers uniform on the closed range [lo, hi]."""
        span = hi - lo + 1
        if size is None:
            return lo + min(int(self.uniform() * span), span - 1)
        out = np.floor(self.uniform(size) * span).astype(np.int64)
        np.minimum(out, span - 1, out=out)
        return out + lo


class Family(str, enum.Enum):
    UNIFORM = "uniform"
    BINOMIAL = "binomial"
    GEOMETRIC = "geometric"
    HYPERGEOMETRIC = "hypergeometric"
    POISSON = "poisson"
    NEGATIVE_BINOMIAL = "negativeBinomial"
    MULTINOMIAL = "multinomial"

    def __str__(self):
        return self.value

    @classmethod
    def parse(cls, text: str) -> "Family":
        key = text.strip().lower().replace("_", "").replace("-", "")
        for fam in cls:
            if fam.value.lower() == key or fam.name.lower().replace("_", "") == key:
                return fam
        raise ValueError(f"unknown family {text!r}; choose from {', '.join(f.value for f in cls)}")


FAMILIES = tuple(Family)


@dataclass(frozen=True)
class CauseClass:
    family: Family
    params: dict

    def describe(self) -> str:
        parts = []
        for key, val in self.params.items():
            if isinstance(val, tuple):
                val = "[" + ",".join(f"{v:.6f}" for v in val) + "]"
            elif isinstance(val, float):
                val = f"{val:.6f}"
            parts.append(f"{key}={val}")
        return f"{self.family.value}({', '.join(parts)})"


@dataclass(frozen=True)
class AnmSpec:
    f: dict
    t: int

    def __post_init__(self):
        if not NOISE_WIDTH_RANGE[0] <= self.t <= NOISE_WIDTH_RANGE[1]:
            raise ValueError(f"noise half-width {self.t} outside {NOISE_WIDTH_RANGE}")
        if any(not F_RANGE[0] <= v <= F_RANGE[1] for v in self.f.values()):
            raise ValueError("f values must lie in [-7, 7]")


@dataclass(frozen=True, eq=False)
class PairRecord:
    x: DiscreteSample
    y: DiscreteSample
    cause_class: CauseClass
    anm: AnmSpec
    seed: int
    ground_truth: Direction = Direction.X_TO_Y
    raw_x: np.ndarray = field(default=None, repr=False)
    raw_y: np.ndarray = field(default=None, repr=False)
    noise: np.ndarray = field(default=None, repr=False)


def random_cause_class(family: Family | str, rng: Stream) -> CauseClass:
    """Draw the parameters of a cause distribution from the family's range."""
    family = Family.parse(family) if isinstance(family, str) else family
    if family is Family.UNIFORM:
        params = {"L": rng.integers(*UNIFORM_L_RANGE)}
    elif family is Family.BINOMIAL:
        params = {"trials": rng.integers(*TRIALS_RANGE), "p": rng.uniform_real(*P_RANGE)}
    elif family is Family.GEOMETRIC:
        params = {"p": rng.uniform_real(*P_RANGE)}
    elif family is Family.HYPERGEOMETRIC:
        M = rng.integers(*URN_RANGE)
        K = rng.integers(*URN_RANGE)
        params = {"M": M, "K": K, "N": rng.integers(1, min(41, M + K))}
    elif family is Family.POISSON:
        params = {"lam": rng.uniform_real(*LAMBDA_RANGE)}
    elif family is Family.NEGATIVE_BINOMIAL:
        params = {"r": rng.integers(*TRIALS_RANGE), "p": rng.uniform_real(*P_RANGE)}
    elif family is Family.MULTINOMIAL:
        k = rng.integers(*CATEGORIES_RANGE)
        cuts = np.sort(rng.uniform(k - 1))
        theta = np.diff(np.concatenate(([0.0], cuts, [1.0])))
        params = {"theta": tuple(float(v) for v in theta)}
    else:  # pragma: no cover
        raise ValueError(family)
    return CauseClass(family, params)


def _inverse_cdf(pmf: np.ndarray, u: np.ndarray) -> np.ndarray:
    cdf = np.cumsum(pmf)
    idx = np.searchsorted(cdf, u * cdf[-1], side="right")
    return np.minimum(idx, pmf.size - 1).astype(np.int64)


def _geometric(p: float, u: np.ndarray) -> np.ndarray:
    # trials until first success, support {1, 2, ...}
    return 1 + np.floor(np.log1p(-u) / math.log1p(-p)).astype(np.int64)


def sample_cause(cause_class: CauseClass, n: int, rng: Stream) -> np.ndarray:
    """``n`` i.i.d. raw integer draws from the parameterised family."""
    if n < 1:
        raise ValueError("n must be positive")
    fam, par = cause_class.family, cause_class.params
    if fam is Family.UNIFORM:
        return rng.integers(1, par["L"], size=n)
    if fam is Family.BINOMIAL:
        trials, p = par["trials"], par["p"]
        pmf = np.array([math.comb(trials, k) * p**k * (1 - p) ** (trials - k) for k in range(trials + 1)])
        return _inverse_cdf(pmf, rng.uniform(n))
    if fam is Family.GEOMETRIC:
        return _geometric(par["p"], rng.uniform(n))
    if fam is Family.HYPERGEOMETRIC:
        # successes among N sequential draws without replacement from M good, K bad
        good = np.full(n, par["M"], dtype=np.int64)
        left = par["M"] + par["K"]
        u = rng.uniform((par["N"], n))
        drawn = np.zeros(n, dtype=np.int64)
        for i in range(par["N"]):
            hit = u[i] * (left - i) < good
            drawn += hit
            good -= hit
        return drawn
    if fam is Family.POISSON:
        lam = par["lam"]
        cutoff = int(lam + 12.0 * math.sqrt(lam) + 30)
        log_pmf = [k * math.log(lam) - lam - math.lgamma(k + 1) for k in range(cutoff + 1)]
        return _inverse_cdf(np.exp(log_pmf), rng.uniform(n))
    if fam is Family.NEGATIVE_BINOMIAL:
        # failures before the r-th success
        u = rng.uniform((par["r"], n))
        return (_geometric(par["p"], u) - 1).sum(axis=0)
    if fam is Family.MULTINOMIAL:
        return 1 + _inverse_cdf(np.asarray(par["theta"]), rng.uniform(n))
    raise ValueError(fam)  # pragma: no cover


def random_anm(cause_values: np.ndarray, rng: Stream) -> AnmSpec:
    """One f value per distinct cause symbol (ascending order), then t."""
    symbols = np.unique(cause_values)
    f_vals = rng.integers(*F_RANGE, size=symbols.size)
    f = {int(s): int(v) for s, v in zip(symbols, f_vals)}
    return AnmSpec(f, rng.integers(*NOISE_WIDTH_RANGE))


def generate_pair(cause_class: CauseClass, n: int, seed: int) -> PairRecord:
    """Cause, mechanism and noise drawn in that order from lane 1 of ``seed``."""
    rng = Stream(seed, lane=1)
    raw_x = sample_cause(cause_class, n, rng)
    anm = random_anm(raw_x, rng)
    noise = rng.integers(-anm.t, anm.t, size=n)
    symbols = np.array(sorted(anm.f), dtype=np.int64)
    table = np.array([anm.f[s] for s in symbols], dtype=np.int64)
    raw_y = table[np.searchsorted(symbols, raw_x)] + noise
    return PairRecord(
        x=DiscreteSample.from_integers(raw_x),
        y=DiscreteSample.from_integers(raw_y),
        cause_class=cause_class,
        anm=anm,
        seed=seed & MASK64,
        raw_x=raw_x,
        raw_y=raw_y,
        noise=noise,
    )


def campaign_pair(family: Family | str, n: int, master_seed: int, index: int) -> PairRecord:
    """The ``index``-th pair of a campaign: parameters from lane 0, data from lane 1."""
    family = Family.parse(family) if isinstance(family, str) else family
    seed = derive_seed(master_seed, FAMILIES.index(family), index)
    cause_class = random_cause_class(family, Stream(seed, lane=0))
    return generate_pair(cause_class, n, seed)
