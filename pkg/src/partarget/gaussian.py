"""Standard-normal special functions used throughout the package.

Everything here is scalar, pure and stateless.  The quantile is the one
primitive the rest of the package leans on (thresholds, closed forms and
the inverse-CDF sampler all share it), so it is built to satisfy a tight
round-trip contract:

    |cdf(quantile(p)) - p| <= 1e-12   for p in [1e-10, 1 - 1e-10].

Implementation notes
--------------------
* ``cdf`` goes through the complementary error function, which keeps full
  relative accuracy deep into either tail (``math.erfc`` covers the
  asymptotic regime internally, so no separate tail branch is needed).
* ``quantile`` is Acklam's rational approximation (~1.15e-9 relative)
  polished by one Newton step on the CDF residual, evaluated on the side
  of the distribution where the residual does not cancel.
* ``upper_quantile(alpha)`` returns the (1 - alpha) quantile without ever
  forming ``1 - alpha``, so it stays accurate for alpha down to the
  smallest normal doubles.

All functions reject NaN inputs explicitly instead of propagating them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, NumericsError, PreconditionError

__all__ = [
    "BoundPair",
    "pdf",
    "cdf",
    "sf",
    "quantile",
    "upper_quantile",
    "mills_conditional_mean",
    "tail_bounds",
    "phi_of_quantile",
    "phi_of_quantile_slack",
    "k_phi_of_quantile_bounds",
]

INV_SQRT_2PI = 0.3989422804014327
SQRT_2PI = 2.5066282746310002
_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class BoundPair:
    """A lower/upper sandwich around some target quantity."""

    lower: float
    upper: float

    def __post_init__(self) -> None:
        if not self.lower <= self.upper:
            raise DomainError(
                f"bound pair is inverted: lower={self.lower!r} > upper={self.upper!r}"
            )

    def contains(self, x: float) -> bool:
        return self.lower <= x <= self.upper

    @property
    def width(self) -> float:
        return self.upper - self.lower


def _reject_nan(x: float, name: str) -> None:
    if math.isnan(x):
        raise DomainError(f"{name} is NaN")


def pdf(z: float) -> float:
    """Standard normal density (1/sqrt(2*pi)) * exp(-z^2/2)."""
    _reject_nan(z, "z")
    if math.isinf(z):
        raise DomainError("pdf requires a finite argument")
    return INV_SQRT_2PI * math.exp(-0.5 * z * z)


def cdf(t: float) -> float:
    """Standard normal CDF; +/-inf map to 1/0."""
    _reject_nan(t, "t")
    if t == math.inf:
        return 1.0
    if t == -math.inf:
        return 0.0
    return 0.5 * math.erfc(-t / _SQRT2)


def sf(t: float) -> float:
    """Upper tail probability Pr(Z >= t), accurate for large t."""
    _reject_nan(t, "t")
    if t == math.inf:
        return 0.0
    if t == -math.inf:
        return 1.0
    return 0.5 * math.erfc(t / _SQRT2)


# Acklam's coefficients for the initial rational approximation.
_A = (-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
      1.383577518672690e+02, -3.066479806614716e+01, 2.506628277459239e+00)
_B = (-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
      6.680131188771972e+01, -1.328068155288572e+01)
_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
      -2.549732539343734e+00, 4.374664141464968e+00, 2.938163982698783e+00)
_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
      3.754408661907416e+00)
_P_LOW = 0.02425


def _acklam(p: float) -> float:
    if p < _P_LOW:
        q = math.sqrt(-2.0 * math.log(p))
        return ((((((_C[0] * q + _C[1]) * q + _C[2]) * q + _C[3]) * q + _C[4]) * q + _C[5])
                / ((((_D[0] * q + _D[1]) * q + _D[2]) * q + _D[3]) * q + 1.0))
    if p > 1.0 - _P_LOW:
        q = math.sqrt(-2.0 * math.log(1.0 - p))
        return -((((((_C[0] * q + _C[1]) * q + _C[2]) * q + _C[3]) * q + _C[4]) * q + _C[5])
                 / ((((_D[0] * q + _D[1]) * q + _D[2]) * q + _D[3]) * q + 1.0))
    q = p - 0.5
    r = q * q
    return ((((((_A[0] * r + _A[1]) * r + _A[2]) * r + _A[3]) * r + _A[4]) * r + _A[5]) * q
            / (((((_B[0] * r + _B[1]) * r + _B[2]) * r + _B[3]) * r + _B[4]) * r + 1.0))


def _newton_polish(x: float, p: float) -> float:
    # Residual evaluated on whichever tail avoids cancellation.
    if x <= 0.0:
        err = 0.5 * math.erfc(-x / _SQRT2) - p
    else:
        err = (1.0 - p) - 0.5 * math.erfc(x / _SQRT2)
    dens = INV_SQRT_2PI * math.exp(-0.5 * x * x)
    if dens <= 0.0:  # density underflowed; Acklam alone is the best we can do
        return x
    return x - err / dens


def quantile(p: float) -> float:
    """Inverse standard normal CDF for p in the open unit interval."""
    _reject_nan(p, "p")
    if not 0.0 < p < 1.0:
        raise DomainError(f"quantile requires 0 < p < 1, got {p!r}")
    if p == 0.5:
        return 0.0
    return _newton_polish(_acklam(p), p)


def upper_quantile(alpha: float) -> float:
    """The (1 - alpha) quantile, computed without forming 1 - alpha.

    Equals ``quantile(1 - alpha)`` by symmetry but stays fully accurate
    for very small alpha.  alpha = 1 maps to -inf (treat-everyone limit).
    """
    _reject_nan(alpha, "alpha")
    if alpha == 1.0:
        return -math.inf
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"upper_quantile requires 0 < alpha <= 1, got {alpha!r}")
    return -quantile(alpha)


def mills_conditional_mean(mu: float, sigma: float, a: float) -> float:
    """E[Z | Z > a] for Z ~ N(mu, sigma^2), via the inverse Mills ratio.

    ``a = -inf`` returns the unconditional mean.  Raises
    :class:`NumericsError` when the tail mass beyond ``a`` underflows.
    """
    for name, val in (("mu", mu), ("sigma", sigma), ("a", a)):
        _reject_nan(val, name)
    if not sigma > 0.0:
        raise DomainError(f"sigma must be positive, got {sigma!r}")
    if a == -math.inf:
        return mu
    if not math.isfinite(mu) or a == math.inf:
        raise DomainError("mu must be finite and a < +inf")
    abar = (a - mu) / sigma
    tail = sf(abar)
    if tail <= 0.0:
        raise NumericsError(
            f"tail mass beyond a={a!r} underflows (standardized threshold {abar:.6g}); "
            "the conditional mean is not representable"
        )
    return mu + sigma * pdf(abar) / tail


def tail_bounds(t: float) -> BoundPair:
    """Classic sandwich (phi(t)/t)(1 - t^-2) <= Pr(Z >= t) <= phi(t)/t."""
    _reject_nan(t, "t")
    if not t > 0.0 or t == math.inf:
        raise DomainError(f"tail_bounds requires finite t > 0, got {t!r}")
    hazard = pdf(t) / t
    return BoundPair(hazard * (1.0 - 1.0 / (t * t)), hazard)


def phi_of_quantile(alpha: float) -> float:
    """g(alpha) = pdf(quantile(1 - alpha)), the density at the access cutoff."""
    _reject_nan(alpha, "alpha")
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"phi_of_quantile requires 0 < alpha < 1, got {alpha!r}")
    # pdf is symmetric, so evaluate at quantile(alpha) directly.
    return pdf(quantile(alpha))


def phi_of_quantile_slack(alpha: float) -> float:
    """Multiplicative slack f(alpha) in the upper half of the g sandwich.

    f(alpha) = T^2/(T^2 - 1) - 1 with T = quantile(1 - alpha); the sandwich
    alpha*T <= g(alpha) <= alpha*T*(1 + f(alpha)) holds for alpha < 0.15.
    """
    _reject_nan(alpha, "alpha")
    if not 0.0 < alpha < 0.15:
        raise DomainError(f"slack is only defined for 0 < alpha < 0.15, got {alpha!r}")
    t = upper_quantile(alpha)
    t2 = t * t
    if t2 <= 1.0:
        raise DomainError(f"cutoff {t:.6g} too small for the sandwich (alpha={alpha!r})")
    return t2 / (t2 - 1.0) - 1.0


def k_phi_of_quantile_bounds(k: float, alpha: float, eps: float) -> BoundPair:
    """Sandwich for pdf(k * quantile(1 - alpha)) at slack eps.

    Requires alpha small enough that g(alpha) <= (1 + eps) * alpha * T
    actually holds; the check is performed numerically and a
    :class:`PreconditionError` names the failing alpha otherwise.
    """
    for name, val in (("k", k), ("alpha", alpha), ("eps", eps)):
        _reject_nan(val, name)
    if not k > 0.0:
        raise DomainError(f"k must be positive, got {k!r}")
    if not eps > 0.0:
        raise DomainError(f"eps must be positive, got {eps!r}")
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha!r}")
    t = upper_quantile(alpha)
    g = phi_of_quantile(alpha)
    if alpha >= 0.15 or t <= 1.0 or g > (1.0 + eps) * alpha * t:
        raise PreconditionError(
            f"the density/quantile sandwich with slack eps={eps!r} does not hold at "
            f"alpha={alpha!r}; a smaller alpha (or larger eps) is required"
        )
    k2 = k * k
    lower = INV_SQRT_2PI * (SQRT_2PI * alpha * t) ** k2
    upper = INV_SQRT_2PI * ((1.0 + eps) * SQRT_2PI * alpha * t) ** k2
    return BoundPair(lower, upper)
