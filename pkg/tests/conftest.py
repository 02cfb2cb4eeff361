import itertools
import math

import pytest

from nmlcause import _fallback

try:
    from nmlcause import _kernels
except ImportError:  # extension not built
    _kernels = None

BACKENDS = [pytest.param(_fallback, id="python")]
BACKENDS.append(
    pytest.param(_kernels, id="cython",
                 marks=pytest.mark.skipif(_kernels is None, reason="compiled kernels not built"))
)


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


def brute_force_normalizer(m, n):
    """R(m, n) by summing the ML probability of every length-n sequence."""
    total = 0.0
    for seq in itertools.product(range(m), repeat=n):
        p = 1.0
        for j in range(m):
            h = seq.count(j)
            if h:
                p *= (h / n) ** h
        total += p
    return total


def brute_force_log2(m, n):
    return math.log2(brute_force_normalizer(m, n))
