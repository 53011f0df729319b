"""Value function and marginal analysis for the probit (binary-welfare) model.

A unit benefits (w = 1) when a latent Gaussian score crosses zero:
w = 1{gamma_s*z_s + gamma_t*z_t + m > 0}, where z_s is the observable
component, gamma_t = sqrt(1 - gamma_s^2), and the offset m is pinned by
the base rate b = Pr[w = 1] via m = quantile(b).  The optimal policy
treats the top alpha-quantile of z_s, giving

    V(alpha, gamma_s) = integral over the treated tail of
                        Phi((gamma_s*z + m)/gamma_t) dPhi(z).

There is no elementary closed form, so the value is computed by adaptive
quadrature after substituting u = Phi(z); the derivative formulas below
are exact and serve as independent cross-checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import gaussian, quadrature
from .errors import (
    DegenerateLeverError,
    DomainError,
    NumericsError,
    PreconditionError,
)
from .gaussian import SQRT_2PI, BoundPair
from .linear import LeverDelta

__all__ = [
    "ProbitParams",
    "CutoffResult",
    "QUAD_RTOL",
    "MIN_DELTA",
    "policy_threshold_probit",
    "value_probit",
    "dvalue_dalpha_probit",
    "dvalue_dgamma_probit",
    "par_probit_exact",
    "par_probit_bounds",
    "probit_cutoff_check",
]

# Relative tolerance for the value quadrature; finite differences in the
# exact ratio must stay >= 1e3 above it, hence the delta floor below.
QUAD_RTOL = 1e-10
MIN_DELTA = 1e-5


@dataclass(frozen=True)
class ProbitParams:
    """Population parameters of the probit welfare model.

    base_rate is Pr[w = 1]; gamma_s is the observable share of the latent
    score's standard deviation (square root of the latent r squared).
    """

    base_rate: float
    gamma_s: float

    def __post_init__(self) -> None:
        for name in ("base_rate", "gamma_s"):
            if math.isnan(getattr(self, name)):
                raise DomainError(f"{name} is NaN")
        if not 0.0 < self.base_rate < 1.0:
            raise DomainError(
                f"base_rate must lie in (0, 1), got {self.base_rate!r}"
            )
        if not 0.0 <= self.gamma_s <= 1.0:
            raise DomainError(f"gamma_s must lie in [0, 1], got {self.gamma_s!r}")

    @property
    def mu_over_beta(self) -> float:
        """Latent mean offset implied by the base rate: quantile(base_rate)."""
        return gaussian.quantile(self.base_rate)

    @property
    def gamma_t(self) -> float:
        return math.sqrt(max(0.0, 1.0 - self.gamma_s * self.gamma_s))

    def with_gamma_s(self, gamma_s: float) -> "ProbitParams":
        return ProbitParams(self.base_rate, gamma_s)


@dataclass(frozen=True)
class CutoffResult:
    """Outcome of the access-is-cheaper cutoff test."""

    passes: bool
    margin: float
    degenerate: bool


def _check_alpha_open(alpha: float) -> None:
    if math.isnan(alpha):
        raise DomainError("alpha is NaN")
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha!r}")


def policy_threshold_probit(p: ProbitParams, alpha: float) -> float:
    """Standardized observable-score cutoff of the optimal policy."""
    _check_alpha_open(alpha)
    return gaussian.upper_quantile(alpha)


def value_probit(p: ProbitParams, alpha: float, rtol: float = QUAD_RTOL) -> float:
    """Expected welfare of the optimal policy at access level alpha.

    Degenerate predictors get analytic branches: gamma_s = 0 gives
    alpha * base_rate, gamma_s = 1 gives min(alpha, base_rate), and
    alpha = 1 gives base_rate exactly.
    """
    if math.isnan(alpha):
        raise DomainError("alpha is NaN")
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha!r}")
    b = p.base_rate
    if p.gamma_s == 0.0:
        return alpha * b
    if p.gamma_s == 1.0:
        return min(alpha, b)
    if alpha == 1.0:
        return b
    m = p.mu_over_beta
    gs, gt = p.gamma_s, p.gamma_t

    # Substituting u = Phi(z) and then w = 1 - u maps the treated tail to
    # (0, alpha) while keeping the upper quantile well conditioned.
    def integrand(w: float) -> float:
        return gaussian.cdf((gs * gaussian.upper_quantile(w) + m) / gt)

    return quadrature.integrate(integrand, 0.0, alpha, rtol=rtol)


def dvalue_dalpha_probit(p: ProbitParams, alpha: float) -> float:
    """Marginal value of the access budget: the benefit probability of
    the marginal treated unit, Phi((gamma_s*T + m)/gamma_t)."""
    _check_alpha_open(alpha)
    if p.gamma_s == 1.0:
        raise DomainError(
            "gamma_s = 1 leaves no residual variance; the derivative formula "
            "is degenerate"
        )
    t = gaussian.upper_quantile(alpha)
    return gaussian.cdf((p.gamma_s * t + p.mu_over_beta) / p.gamma_t)


def dvalue_dgamma_probit(p: ProbitParams, alpha: float) -> float:
    """Marginal value of the prediction level gamma_s."""
    _check_alpha_open(alpha)
    if not 0.0 < p.gamma_s < 1.0:
        raise DomainError(
            f"derivative requires gamma_s strictly inside (0, 1), got {p.gamma_s!r}"
        )
    t = gaussian.upper_quantile(alpha)
    m = p.mu_over_beta
    gt = p.gamma_t
    return gaussian.pdf(m) * gaussian.pdf((t + m * p.gamma_s) / gt) / gt


def par_probit_exact(
    p: ProbitParams,
    alpha: float,
    d: LeverDelta,
    rtol: float = QUAD_RTOL,
) -> float:
    """Exact prediction-access ratio from finite differences of the
    quadrature value function.

    Deltas below MIN_DELTA are rejected so that the differences stay at
    least three orders of magnitude above the quadrature tolerance.
    """
    _check_alpha_open(alpha)
    if d.delta_r2 < MIN_DELTA:
        raise DegenerateLeverError(
            f"delta_r2 must be >= {MIN_DELTA} to dominate quadrature error, "
            f"got {d.delta_r2!r}"
        )
    if 0.0 < d.delta_alpha < MIN_DELTA:
        raise DegenerateLeverError(
            f"delta_alpha must be 0 or >= {MIN_DELTA}, got {d.delta_alpha!r}"
        )
    if alpha + d.delta_alpha > 1.0:
        raise DomainError(
            f"alpha + delta_alpha = {alpha + d.delta_alpha!r} exceeds 1"
        )
    if p.gamma_s + d.delta_r2 > 1.0:
        raise DomainError(
            f"gamma_s + delta_r2 = {p.gamma_s + d.delta_r2!r} exceeds 1"
        )
    base = value_probit(p, alpha, rtol=rtol)
    numer = value_probit(p, alpha + d.delta_alpha, rtol=rtol) - base
    denom = value_probit(p.with_gamma_s(p.gamma_s + d.delta_r2), alpha, rtol=rtol) - base
    if denom <= 10.0 * rtol * max(base, 1.0):
        raise NumericsError(
            f"prediction gain {denom!r} is too close to quadrature noise to "
            "form a trustworthy ratio"
        )
    return numer / denom


def par_probit_bounds(
    p: ProbitParams,
    alpha: float,
    d: LeverDelta,
    eps: float = 0.05,
    max_alpha: float = 0.01,
    max_delta_r2: float = 0.01,
) -> BoundPair:
    """Asymptotic sandwich around the exact prediction-access ratio.

    The underlying result is asymptotic in alpha: it only applies below
    an unspecified smallness threshold.  max_alpha and max_delta_r2 stand
    in for that threshold and are deliberately configurable; violations
    of any checked hypothesis raise :class:`PreconditionError` naming it.
    """
    _check_alpha_open(alpha)
    if math.isnan(eps) or not 0.0 < eps < 0.1:
        raise DomainError(f"eps must lie in (0, 0.1), got {eps!r}")
    if not 0.0 < p.gamma_s < 1.0:
        raise PreconditionError(f"requires gamma_s in (0, 1), got {p.gamma_s!r}")
    if p.base_rate > 0.1:
        raise PreconditionError(
            f"requires base_rate <= 0.1, got {p.base_rate!r}"
        )
    if d.delta_alpha > alpha:
        raise PreconditionError(
            f"requires delta_alpha <= alpha; got delta_alpha={d.delta_alpha!r} "
            f"with alpha={alpha!r}"
        )
    if alpha > max_alpha:
        raise PreconditionError(
            f"requires alpha <= {max_alpha!r} (smallness threshold), got {alpha!r}"
        )
    if d.delta_r2 > max_delta_r2:
        raise PreconditionError(
            f"requires delta_r2 <= {max_delta_r2!r} (smallness threshold), "
            f"got {d.delta_r2!r}"
        )
    if d.delta_r2 <= 0.0:
        raise DegenerateLeverError("delta_r2 must be positive")
    gt = p.gamma_t
    t_alpha = gaussian.upper_quantile(alpha)
    t_b = gaussian.upper_quantile(p.base_rate)
    prefactor = (d.delta_alpha * gt / d.delta_r2) / (p.base_rate * t_b)
    core = 1.0 / (SQRT_2PI * alpha * t_alpha)
    eps_up = eps / (1.0 - eps)
    lower = 0.3 * prefactor * (core / 1.01) ** ((1.0 - eps) ** 2 / (gt * gt))
    upper = 3.0 * prefactor * core ** ((1.0 + eps_up) ** 2 / (gt * gt))
    return BoundPair(lower, upper)


def probit_cutoff_check(
    p: ProbitParams,
    alpha: float,
    cost_ratio_access_over_prediction: float,
) -> CutoffResult:
    """Test whether gamma_t >= cost_ratio * alpha^(1/gamma_t^2) * base_rate,
    the first-order condition for access being the cheaper lever.

    gamma_s = 1 collapses gamma_t to zero and the exponent to infinity;
    the right-hand side then vanishes for alpha < 1 and the result is
    flagged degenerate.
    """
    _check_alpha_open(alpha)
    cr = cost_ratio_access_over_prediction
    if math.isnan(cr) or not cr > 0.0:
        raise DomainError(f"cost ratio must be positive, got {cr!r}")
    gt = p.gamma_t
    if gt == 0.0:
        # alpha^inf -> 0 for alpha < 1: the condition holds vacuously.
        return CutoffResult(passes=True, margin=0.0, degenerate=True)
    rhs = cr * alpha ** (1.0 / (gt * gt)) * p.base_rate
    return CutoffResult(passes=gt >= rhs, margin=gt - rhs, degenerate=False)
