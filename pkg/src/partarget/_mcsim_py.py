"""NumPy fallback for the Monte Carlo simulation kernels.

Mirrors the compiled kernel in ``_mcsim.pyx``: a counter-based splitmix
RNG indexed by (seed, counter) and inverse-CDF normal variates, so every
sample is addressable and results never depend on evaluation order.
Sample i consumes counters 2i and 2i + 1 for its two normals.  Per-block
partial sums are combined in block-index order, which makes each backend
bit-reproducible for a fixed seed.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import erfc

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_TWO_NEG53 = 2.0 ** -53
_SQRT2 = math.sqrt(2.0)
_INV_SQRT_2PI = 0.3989422804014327

_BLOCK = 1 << 20

# Acklam rational approximation coefficients (same table as the scalar path).
_A = (-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
      1.383577518672690e+02, -3.066479806614716e+01, 2.506628277459239e+00)
_B = (-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
      6.680131188771972e+01, -1.328068155288572e+01)
_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
      -2.549732539343734e+00, 4.374664141464968e+00, 2.938163982698783e+00)
_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
      3.754408661907416e+00)
_P_LOW = 0.02425


def _uniform(seed: int, counter: np.ndarray) -> np.ndarray:
    """Open-interval uniforms from the splitmix finalizer at each counter."""
    z = (np.uint64(seed) + (counter + np.uint64(1)) * _GOLDEN).astype(np.uint64)
    z ^= z >> np.uint64(30)
    z *= _MIX1
    z ^= z >> np.uint64(27)
    z *= _MIX2
    z ^= z >> np.uint64(31)
    return ((z >> np.uint64(11)).astype(np.float64) + 0.5) * _TWO_NEG53


def _tail_poly(q: np.ndarray) -> np.ndarray:
    num = ((((_C[0] * q + _C[1]) * q + _C[2]) * q + _C[3]) * q + _C[4]) * q + _C[5]
    den = (((_D[0] * q + _D[1]) * q + _D[2]) * q + _D[3]) * q + 1.0
    return num / den


def _quantile(p: np.ndarray) -> np.ndarray:
    """Vectorized inverse normal CDF: Acklam estimate plus one Newton step."""
    x = np.empty_like(p)
    lo = p < _P_LOW
    hi = p > 1.0 - _P_LOW
    mid = ~(lo | hi)
    if lo.any():
        x[lo] = _tail_poly(np.sqrt(-2.0 * np.log(p[lo])))
    if hi.any():
        x[hi] = -_tail_poly(np.sqrt(-2.0 * np.log(1.0 - p[hi])))
    if mid.any():
        q = p[mid] - 0.5
        r = q * q
        num = (((((_A[0] * r + _A[1]) * r + _A[2]) * r + _A[3]) * r + _A[4]) * r + _A[5]) * q
        den = ((((_B[0] * r + _B[1]) * r + _B[2]) * r + _B[3]) * r + _B[4]) * r + 1.0
        x[mid] = num / den
    # Newton polish on the CDF residual, evaluated on the non-cancelling tail.
    neg = x <= 0.0
    err = np.where(neg,
                   0.5 * erfc(-x / _SQRT2) - p,
                   (1.0 - p) - 0.5 * erfc(x / _SQRT2))
    dens = _INV_SQRT_2PI * np.exp(-0.5 * x * x)
    step = np.zeros_like(x)
    np.divide(err, dens, out=step, where=dens > 0.0)
    return x - step


def _normals(seed: int, counter: np.ndarray) -> np.ndarray:
    return _quantile(_uniform(seed, counter))


def linear_sums(
    seed: int,
    n: int,
    mu: float,
    s_scale: float,
    t_scale: float,
    threshold: float,
    block: int = _BLOCK,
) -> tuple[float, float]:
    """Sum and sum-of-squares of treated welfare over n linear-model draws.

    Sample i: w = s_scale*z_s + t_scale*z_t + mu, treated iff z_s >= threshold.
    """
    sums: list[float] = []
    sqsums: list[float] = []
    for start in range(0, n, block):
        count = min(block, n - start)
        idx = np.arange(start, start + count, dtype=np.uint64)
        two = np.uint64(2)
        zs = _normals(seed, two * idx)
        zt = _normals(seed, two * idx + np.uint64(1))
        w = s_scale * zs + t_scale * zt + mu
        x = np.where(zs >= threshold, w, 0.0)
        sums.append(float(x.sum()))
        sqsums.append(float((x * x).sum()))
    return math.fsum(sums), math.fsum(sqsums)


def probit_sums(
    seed: int,
    n: int,
    m: float,
    gamma_s: float,
    gamma_t: float,
    threshold: float,
    block: int = _BLOCK,
) -> tuple[float, float]:
    """Sum and sum-of-squares of treated benefit indicators over n draws.

    Sample i: w = 1{gamma_s*z_s + gamma_t*z_t + m > 0}, treated iff
    z_s >= threshold; the summand is w * treated.
    """
    sums: list[float] = []
    sqsums: list[float] = []
    for start in range(0, n, block):
        count = min(block, n - start)
        idx = np.arange(start, start + count, dtype=np.uint64)
        two = np.uint64(2)
        zs = _normals(seed, two * idx)
        zt = _normals(seed, two * idx + np.uint64(1))
        x = ((gamma_s * zs + gamma_t * zt + m > 0.0) & (zs >= threshold)).astype(np.float64)
        s = float(x.sum())
        sums.append(s)
        sqsums.append(s)  # x is 0/1, so x*x == x
    return math.fsum(sums), math.fsum(sqsums)
