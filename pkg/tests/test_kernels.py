"""Both backends against the enumeration oracle and against each other."""
import math
import threading

import numpy as np
import pytest

from conftest import brute_force_log2
from nmlcause import _fallback, kernels
from nmlcause.sc import normalizing_sum_oracle


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


@pytest.mark.parametrize("m", range(1, 6))
@pytest.mark.parametrize("n", range(1, 9))
def test_oracle_equivalence(backend, m, n):
    exact = normalizing_sum_oracle(m, n).log2_R
    assert backend.log2_normalizer(m, n, 10) == pytest.approx(exact, rel=1e-9, abs=1e-12)


def test_brute_force_small(backend):
    for m, n in [(2, 2), (3, 2), (3, 5), (4, 4)]:
        assert backend.log2_normalizer(m, n, 10) == pytest.approx(brute_force_log2(m, n), rel=1e-9)


def test_identities(backend):
    for n in range(1, 101):
        assert backend.log2_normalizer(1, n, 10) == 0.0
    for m in range(1, 51):
        assert backend.log2_normalizer(m, 1, 10) == pytest.approx(math.log2(m), abs=1e-12)


def test_vectorised_matches_scalar(backend):
    ns = np.array([1, 5, 5, 100, 2, 1000])
    vec = backend.log2_normalizers(7, ns, 10)
    assert vec.shape == ns.shape
    for n, v in zip(ns, vec):
        assert v == pytest.approx(backend.log2_normalizer(7, int(n), 10), rel=1e-12)


def test_truncation_accuracy(backend):
    for n in (10, 1000, 123_457, 2_000_000):
        full = _fallback.log_binary_normalizer(n, 17)
        for digits in (3, 6, 10):
            approx = backend.log2_normalizer(2, n, digits) * math.log(2)
            assert abs(approx - full) <= full * 10.0 ** (-digits + 1)


@pytest.mark.parametrize("m, n", [(2, 10**7), (20, 10**5), (10**5, 10**7), (3000, 17)])
def test_backends_agree_on_large_inputs(m, n):
    ref = _fallback.log2_normalizer(m, n, 10)
    assert math.isfinite(ref)
    assert kernels.log2_normalizer(m, n, 10) == pytest.approx(ref, rel=1e-10)


def test_ml_bits(backend):
    assert backend.ml_bits(np.array([2, 2])) == pytest.approx(4.0)
    assert backend.ml_bits(np.array([0, 5, 0])) == 0.0
    rng = np.random.default_rng(3)
    counts = rng.integers(0, 40, 200)
    n = counts.sum()
    expected = -math.fsum(h * math.log2(h / n) for h in counts if h)
    assert backend.ml_bits(counts) == pytest.approx(expected, rel=1e-12)


def test_histogram(backend):
    assert backend.histogram(np.array([2, 0, 2]), 4).tolist() == [1, 0, 2, 0]


def test_slice_codelengths_against_direct(backend):
    rng = np.random.default_rng(11)
    t = rng.integers(0, 6, 500)
    c = rng.integers(0, 9, 500)
    c[c == 4] = 5  # leave one condition symbol unobserved
    parts = backend.slice_codelengths(t, c, 6, 9, 10)
    assert len(parts) == 8
    expected = []
    for v in np.unique(c):
        h = np.bincount(t[c == v], minlength=6)
        expected.append(_fallback.ml_bits(h) + _fallback.log2_normalizer(6, int(h.sum()), 10))
    assert math.fsum(parts) == pytest.approx(math.fsum(expected), rel=1e-12)


def test_slice_codelengths_backends_agree():
    rng = np.random.default_rng(5)
    t = rng.integers(0, 3000, 20_000)
    c = (t // 7 + rng.integers(0, 50, 20_000)) % 1500
    a = math.fsum(_fallback.slice_codelengths(t, c, 3000, 1500, 10))
    b = math.fsum(kernels.slice_codelengths(t, c, 3000, 1500, 10))
    assert a == pytest.approx(b, rel=1e-11)


def test_concurrent_calls_are_consistent():
    expected = kernels.log2_normalizer(50, 12_345, 10)
    seen = []

    def work():
        seen.extend(kernels.log2_normalizer(50, 12_345, 10) for _ in range(50))

    threads = [threading.Thread(target=work) for _ in range(8)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    assert set(seen) == {expected}
