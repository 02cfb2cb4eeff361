"""Experiment campaigns: synthetic accuracy, decision-rate curves, benchmark pairs, timing."""
from __future__ import annotations

import csv
import io
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .files import PairFileError, format_bits, read_pair_file
from .inference import CausalVerdict, Direction, infer
from .sc import DEFAULT_PRECISION, DiscreteSample
from .synth import Family, Stream, campaign_pair, derive_seed

log = logging.getLogger(__name__)

DEFAULT_RATES = tuple(k / 100 for k in range(5, 101, 5))
TUEBINGEN_UNIVARIATE_PAIRS = 95


class EmptyCampaignError(ValueError):
    """An accuracy was requested over zero results."""


@dataclass(frozen=True)
class EvalResult:
    pair_id: str
    ground_truth: Direction
    verdict: CausalVerdict
    elapsed: float | None = None

    @property
    def confidence(self) -> float:
        return self.verdict.confidence

    @property
    def correct(self) -> bool:
        return self.verdict.direction is self.ground_truth


@dataclass(frozen=True)
class DecisionRateCurve:
    points: tuple

    def accuracy_at(self, rate: float) -> float:
        for r, acc in self.points:
            if math.isclose(r, rate):
                return acc
        raise KeyError(rate)


def accuracy(results: Sequence[EvalResult]) -> float:
    """Fraction correct, undecided pairs counting as half (expected coin flip)."""
    if not results:
        raise EmptyCampaignError("accuracy of an empty result set")
    correct = sum(r.correct for r in results)
    undecided = sum(r.verdict.direction is Direction.UNDECIDED for r in results)
    return (correct + 0.5 * undecided) / len(results)


def rank_by_confidence(results: Iterable[EvalResult]) -> list[EvalResult]:
    return sorted(results, key=lambda r: (-r.confidence, r.pair_id))


def top_count(rate: float, total: int) -> int:
    # the epsilon keeps 0.1 * 100 from rounding up to 11
    return max(1, math.ceil(rate * total - 1e-9))


def decision_rate_curve(results: Sequence[EvalResult], rates: Sequence[float] = DEFAULT_RATES) -> DecisionRateCurve:
    """Accuracy over the most confident ``ceil(rate * total)`` results for each rate."""
    if not results:
        raise EmptyCampaignError("decision rate curve of an empty result set")
    rates = sorted(set(float(r) for r in rates))
    if not rates or rates[0] <= 0.0 or rates[-1] > 1.0:
        raise ValueError("rates must lie in (0, 1]")
    ranked = rank_by_confidence(results)
    total = len(ranked)
    return DecisionRateCurve(tuple((r, accuracy(ranked[: top_count(r, total)])) for r in rates))


def _campaign_item(args):
    family, n, master_seed, index, precision, timing = args
    rec = campaign_pair(family, n, master_seed, index)
    start = time.perf_counter()
    verdict = infer(rec.x, rec.y, precision)
    elapsed = time.perf_counter() - start if timing else None
    return EvalResult(f"{family.value}-{index:04d}", rec.ground_truth, verdict, elapsed)


def run_synthetic_campaign(
    family: Family | str,
    pairs: int,
    n: int,
    master_seed: int,
    precision_digits: int = DEFAULT_PRECISION,
    workers: int = 1,
    timing: bool = False,
) -> list[EvalResult]:
    """Generate ``pairs`` ANM pairs of ``n`` points each and score every one."""
    if pairs < 1 or n < 1:
        raise ValueError("pairs and n must be positive")
    family = Family.parse(family) if isinstance(family, str) else family
    jobs = [(family, n, master_seed, i, precision_digits, timing) for i in range(pairs)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            return list(pool.map(_campaign_item, jobs, chunksize=max(1, pairs // (4 * workers))))
    return [_campaign_item(job) for job in jobs]


@dataclass
class BenchmarkRun:
    results: list = field(default_factory=list)
    skipped: list = field(default_factory=list)  # (pair_id, reason)


def run_benchmark(
    pair_files: Iterable[Path | str],
    ground_truths: Mapping[str, Direction],
    precision_digits: int = DEFAULT_PRECISION,
    column_x: int = 0,
    column_y: int = 1,
    header: bool = False,
    timing: bool = False,
    expected_pairs: int | None = None,
) -> BenchmarkRun:
    """Score each pair file whose stem has a ground truth; values are exact-match categories.

    Unparseable files and ground truths without a file end up in ``skipped``.
    A warning is logged when ``expected_pairs`` is given and not met.
    """
    run = BenchmarkRun()
    paths = sorted(Path(p) for p in pair_files)
    for path in paths:
        pid = path.stem
        truth = ground_truths.get(pid)
        if truth is None:
            run.skipped.append((pid, "no ground truth"))
            continue
        try:
            pf = read_pair_file(path, column_x, column_y, header)
        except PairFileError as exc:
            run.skipped.append((pid, str(exc)))
            continue
        start = time.perf_counter()
        verdict = infer(DiscreteSample.from_tokens(pf.x), DiscreteSample.from_tokens(pf.y), precision_digits)
        elapsed = time.perf_counter() - start if timing else None
        run.results.append(EvalResult(pid, truth, verdict, elapsed))
    missing = set(ground_truths) - {p.stem for p in paths}
    for pid in sorted(missing):
        run.skipped.append((pid, "file not found"))
    if expected_pairs is not None and len(run.results) != expected_pairs:
        log.warning("scored %d pairs, expected %d", len(run.results), expected_pairs)
    return run


def benchmark_directory(directory: Path | str, truth_file: Path | str | None = None, **kwargs) -> BenchmarkRun:
    """Run the benchmark over ``*.txt`` files in ``directory``.

    Without ``truth_file``, ``pairmeta.txt`` in the directory is used and
    the count is checked against the 95 univariate Tuebingen pairs.
    """
    from .files import read_ground_truth

    directory = Path(directory)
    truth_path = Path(truth_file) if truth_file else directory / "pairmeta.txt"
    truth = read_ground_truth(truth_path)
    files = [p for p in directory.glob("*.txt") if p.stem in truth]
    if truth_path.name == "pairmeta.txt":
        kwargs.setdefault("expected_pairs", TUEBINGEN_UNIVARIATE_PAIRS)
    return run_benchmark(files, truth, **kwargs)


@dataclass(frozen=True)
class ProfileRow:
    n: int
    m: int
    seconds: float
    verdict: CausalVerdict


def uniform_pair(n: int, m: int, seed: int) -> tuple[DiscreteSample, DiscreteSample]:
    """Independent uniform columns over ``m`` symbols."""
    rng = Stream(derive_seed(seed, n, m))
    x = rng.integers(0, m - 1, size=n)
    y = rng.integers(0, m - 1, size=n)
    return DiscreteSample.from_integers(x), DiscreteSample.from_integers(y)


def time_infer(x: DiscreteSample, y: DiscreteSample, repeats: int = 1,
               precision_digits: int = DEFAULT_PRECISION) -> tuple[float, CausalVerdict]:
    """Best wall-clock time of ``repeats`` inference calls."""
    best = math.inf
    verdict = None
    for _ in range(max(1, repeats)):
        start = time.perf_counter()
        verdict = infer(x, y, precision_digits)
        best = min(best, time.perf_counter() - start)
    return best, verdict


def runtime_profile(
    n_grid: Sequence[int],
    m_grid: Sequence[int],
    seed: int,
    repeats: int = 3,
    precision_digits: int = DEFAULT_PRECISION,
) -> list[ProfileRow]:
    """Serial timing of ``infer`` on uniform random pairs over the grid."""
    if not n_grid or not m_grid:
        raise ValueError("grids must be non-empty")
    rows = []
    for n in n_grid:
        for m in m_grid:
            x, y = uniform_pair(n, m, seed)
            secs, verdict = time_infer(x, y, repeats, precision_digits)
            rows.append(ProfileRow(n, m, secs, verdict))
    return rows


def profile_csv(rows: Sequence[ProfileRow], timing: bool = True) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "m", "s_xy", "s_yx", "delta", "seconds"])
    for r in rows:
        v = r.verdict
        writer.writerow([r.n, r.m, format_bits(v.s_x_to_y), format_bits(v.s_y_to_x), format_bits(v.delta),
                         f"{r.seconds:.6f}" if timing else ""])
    return buf.getvalue()


def scaling_ratios(rows: Sequence[ProfileRow]) -> list[float]:
    """Time ratios between successive grid points at fixed m, ordered by n."""
    by_m: dict[int, list[ProfileRow]] = {}
    for r in rows:
        by_m.setdefault(r.m, []).append(r)
    ratios = []
    for series in by_m.values():
        series.sort(key=lambda r: r.n)
        ratios.extend(b.seconds / a.seconds for a, b in zip(series, series[1:]))
    return ratios


def pooled_summary(results_by_family: Mapping[str, Sequence[EvalResult]]) -> dict:
    pooled = [r for rs in results_by_family.values() for r in rs]
    out = {fam: accuracy(rs) for fam, rs in results_by_family.items()}
    out["pooled"] = accuracy(pooled)
    return out


__all__ = [
    "EvalResult", "DecisionRateCurve", "EmptyCampaignError", "BenchmarkRun", "ProfileRow",
    "accuracy", "decision_rate_curve", "rank_by_confidence", "run_synthetic_campaign",
    "run_benchmark", "benchmark_directory", "runtime_profile", "profile_csv", "scaling_ratios",
    "uniform_pair", "time_infer", "pooled_summary", "DEFAULT_RATES",
]
