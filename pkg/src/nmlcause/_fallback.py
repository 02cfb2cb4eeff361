"""Pure numpy implementations of the numerical kernels.

Used when the compiled extension is unavailable, or when
``NMLCAUSE_PURE_PYTHON=1`` is set. Signatures and results match
``nmlcause._kernels`` to within floating point rounding.
"""
import math

import numpy as np

LN2 = math.log(2.0)


def _series_length(n, digits):
    # Terms of Q(n) satisfy t_k <= exp(-k(k-1)/(2n)) and the tail after t_k is
    # at most t_k * n / k, so this K leaves a relative error below 10**-(digits+1).
    if digits >= 17:
        return n
    target = (digits + 1) * math.log(10.0) + math.log(n)
    k = int(math.ceil(0.5 + math.sqrt(0.25 + 2.0 * n * target))) + 1
    return min(n, k)


def log_binary_normalizer(n, digits=10):
    """Natural log of R(2, n) = 1 + Q(n), Q being Ramanujan's Q-function."""
    if n <= 0:
        return 0.0
    k = _series_length(n, digits)
    j = np.arange(k, dtype=np.float64) / n
    # log t_k = sum_{j<k} log(1 - j/n); t_1 = 1
    log_terms = np.cumsum(np.log1p(-j[:k]))
    return math.log1p(math.fsum(np.exp(log_terms)))


def log2_normalizers(m, ns, digits=10):
    """log2 R(m, n) for every n in ``ns`` (vectorised over n)."""
    ns = np.asarray(ns, dtype=np.int64)
    out = np.zeros(ns.shape, dtype=np.float64)
    if m <= 1 or ns.size == 0:
        return out
    uniq, inverse = np.unique(ns, return_inverse=True)
    positive = uniq > 0
    nn = uniq[positive].astype(np.float64)
    res = np.zeros(uniq.shape, dtype=np.float64)
    if nn.size:
        prev = np.zeros_like(nn)  # log R(1, n)
        cur = np.array([log_binary_normalizer(int(v), digits) for v in uniq[positive]])
        log_n = np.log(nn)
        for k in range(1, m - 1):
            # R(k+2) = R(k+1) + (n/k) R(k)
            nxt = np.logaddexp(cur, log_n - math.log(k) + prev)
            prev, cur = cur, nxt
        res[positive] = cur / LN2
    out[...] = res[inverse].reshape(ns.shape)
    return out


def log2_normalizer(m, n, digits=10):
    if m <= 1 or n <= 0:
        return 0.0
    return float(log2_normalizers(m, [n], digits)[0])


def ml_bits(counts):
    """n log2 n - sum h log2 h over the non-zero cells, in bits."""
    h = np.asarray(counts, dtype=np.int64)
    h = h[h > 0]
    if h.size <= 1:
        return 0.0
    n = int(h.sum())
    hf = h.astype(np.float64)
    return max(0.0, n * math.log2(n) - math.fsum(hf * np.log2(hf)))


def histogram(values, m):
    return np.bincount(np.asarray(values, dtype=np.int64), minlength=m).astype(np.int64)


def slice_codelengths(target, condition, m_target, m_condition, digits=10):
    """Per-slice stochastic complexities of ``target`` grouped by ``condition``.

    Returns one value per observed condition symbol, in no particular order.
    """
    target = np.asarray(target, dtype=np.int64)
    condition = np.asarray(condition, dtype=np.int64)
    keys = condition * np.int64(m_target) + target
    cells, counts = np.unique(keys, return_counts=True)
    rows = cells // m_target
    # ascending counts within each row keep the sums independent of labelling
    order = np.lexsort((counts, rows))
    rows, counts = rows[order], counts[order]
    starts = np.flatnonzero(np.r_[True, rows[1:] != rows[:-1]])
    ends = np.r_[starts[1:], rows.size]
    sizes = np.add.reduceat(counts, starts)

    # n log2 n - sum h log2 h per row, via segment sums
    cf = counts.astype(np.float64)
    hlogh = np.add.reduceat(cf * np.log2(cf), starts)
    sf = sizes.astype(np.float64)
    ml = sf * np.log2(sf) - hlogh
    ml[(ends - starts) <= 1] = 0.0
    np.maximum(ml, 0.0, out=ml)
    return ml + log2_normalizers(m_target, sizes, digits)
