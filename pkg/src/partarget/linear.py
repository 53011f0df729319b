"""Closed forms for the linear (continuous-welfare) targeting model.

Welfare per unit is Gaussian, w = gamma_s*beta_norm*z_s + gamma_t*beta_norm*z_t + mu,
where only z_s is observable.  The optimal policy under an access budget
alpha treats the top alpha-quantile of the observable score, giving the
closed-form value

    V(alpha, gamma_s) = alpha*mu + gamma_s*beta_norm*g(alpha),

with g(alpha) the standard-normal density at the upper alpha cutoff.
Everything else here (ratios, bound pairs, thresholds) is algebra on top
of that expression.  The supported access regime is alpha < 1/2; beyond
it the positivity constraint on conditional means activates and the
closed form above no longer applies, so those inputs are rejected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import gaussian
from .errors import (
    DegenerateLeverError,
    DomainError,
    PreconditionError,
    RegimeError,
)
from .gaussian import BoundPair

__all__ = [
    "LinearParams",
    "LeverDelta",
    "policy_threshold_linear",
    "value_linear",
    "random_value",
    "random_to_optimal_ratio",
    "par_linear_exact",
    "par_linear_bounds",
    "quality_gain_linear",
    "linear_indifference_gamma",
]


@dataclass(frozen=True)
class LinearParams:
    """Population parameters of the linear welfare model.

    mu: mean welfare improvement; beta_norm: standard deviation of the
    welfare improvement; gamma_s: observable share of that deviation
    (the square root of the model's r squared).
    """

    mu: float
    beta_norm: float
    gamma_s: float

    def __post_init__(self) -> None:
        for name in ("mu", "beta_norm", "gamma_s"):
            val = getattr(self, name)
            if math.isnan(val):
                raise DomainError(f"{name} is NaN")
        if not self.mu > 0.0 or not math.isfinite(self.mu):
            raise DomainError(f"mu must be finite and positive, got {self.mu!r}")
        if not self.beta_norm > 0.0 or not math.isfinite(self.beta_norm):
            raise DomainError(
                f"beta_norm must be finite and positive, got {self.beta_norm!r}"
            )
        if not 0.0 <= self.gamma_s <= 1.0:
            raise DomainError(f"gamma_s must lie in [0, 1], got {self.gamma_s!r}")

    @property
    def gamma_t(self) -> float:
        return math.sqrt(max(0.0, 1.0 - self.gamma_s * self.gamma_s))

    def with_gamma_s(self, gamma_s: float) -> "LinearParams":
        return LinearParams(self.mu, self.beta_norm, gamma_s)


@dataclass(frozen=True)
class LeverDelta:
    """Proposed increments to the two policy levers.

    delta_alpha raises the access budget; delta_r2 raises the prediction
    level gamma_s.  A ratio of marginal gains needs delta_r2 > 0.
    """

    delta_alpha: float
    delta_r2: float

    def __post_init__(self) -> None:
        for name in ("delta_alpha", "delta_r2"):
            val = getattr(self, name)
            if math.isnan(val) or val < 0.0 or not math.isfinite(val):
                raise DomainError(f"{name} must be finite and >= 0, got {val!r}")


def _check_alpha_half(alpha: float) -> None:
    if math.isnan(alpha):
        raise DomainError("alpha is NaN")
    if not 0.0 < alpha < 0.5:
        raise RegimeError(
            f"alpha must lie in (0, 0.5); got {alpha!r} (above 0.5 the "
            "positivity constraint binds and the closed form does not apply)"
        )


def policy_threshold_linear(p: LinearParams, alpha: float) -> float:
    """Score cutoff of the optimal policy: treat units with observable
    score component above quantile(1 - alpha) * gamma_s * beta_norm."""
    _check_alpha_half(alpha)
    return gaussian.upper_quantile(alpha) * p.gamma_s * p.beta_norm


def value_linear(p: LinearParams, alpha: float) -> float:
    """Expected welfare of the optimal policy at access level alpha."""
    _check_alpha_half(alpha)
    return alpha * p.mu + p.gamma_s * p.beta_norm * gaussian.phi_of_quantile(alpha)


def random_value(p: LinearParams, alpha: float) -> float:
    """Expected welfare of random assignment at the same budget: alpha * mu."""
    if math.isnan(alpha) or not 0.0 <= alpha <= 1.0:
        raise DomainError(f"alpha must lie in [0, 1], got {alpha!r}")
    return alpha * p.mu


def random_to_optimal_ratio(p: LinearParams, alpha: float) -> float:
    """Random-assignment value over the full-information optimal value.

    The denominator uses gamma_s = 1 (the best any predictor could do),
    so the ratio isolates how much prediction matters at this budget.
    """
    _check_alpha_half(alpha)
    g = gaussian.phi_of_quantile(alpha)
    return 1.0 / (1.0 + (p.beta_norm / p.mu) * g / alpha)


def par_linear_exact(p: LinearParams, alpha: float, d: LeverDelta) -> float:
    """Exact prediction-access ratio: the welfare gain from raising the
    access budget by delta_alpha over the gain from raising gamma_s by
    delta_r2, both as finite differences of the closed-form value."""
    _check_alpha_half(alpha)
    if d.delta_r2 <= 0.0:
        raise DegenerateLeverError("delta_r2 must be positive to form a ratio")
    if not alpha + d.delta_alpha < 0.5:
        raise RegimeError(
            f"alpha + delta_alpha = {alpha + d.delta_alpha!r} must stay below 0.5"
        )
    if p.gamma_s + d.delta_r2 > 1.0:
        raise DomainError(
            f"gamma_s + delta_r2 = {p.gamma_s + d.delta_r2!r} exceeds 1"
        )
    numer = value_linear(p, alpha + d.delta_alpha) - value_linear(p, alpha)
    denom = value_linear(p.with_gamma_s(p.gamma_s + d.delta_r2), alpha) - value_linear(p, alpha)
    if denom <= 0.0:
        raise DegenerateLeverError(
            f"prediction gain is not positive (denominator {denom!r})"
        )
    return numer / denom


def par_linear_bounds(p: LinearParams, alpha: float, d: LeverDelta) -> BoundPair:
    """Factor-of-four sandwich around the exact prediction-access ratio.

    upper = (1/alpha) * (mu/(beta_norm*T) + gamma_s) * (delta_alpha/delta_r2)
    with T the upper alpha cutoff; lower = upper/4.  Valid only under the
    hypotheses checked below; each violation is named in the error.
    """
    _check_alpha_half(alpha)
    if not 0.0 < p.gamma_s < 1.0:
        raise PreconditionError(f"requires gamma_s in (0, 1), got {p.gamma_s!r}")
    if not 0.0 < d.delta_r2 < 1.0:
        raise PreconditionError(f"requires delta_r2 in (0, 1), got {d.delta_r2!r}")
    if not alpha + d.delta_alpha < 0.05:
        raise PreconditionError(
            f"requires alpha + delta_alpha < 0.05, got {alpha + d.delta_alpha!r}"
        )
    if not 0.0 <= d.delta_alpha <= 4.0 * alpha:
        raise PreconditionError(
            f"requires delta_alpha in [0, 4*alpha]; got delta_alpha={d.delta_alpha!r} "
            f"with alpha={alpha!r}"
        )
    t = gaussian.upper_quantile(alpha)
    upper = (p.mu / (p.beta_norm * t) + p.gamma_s) * (d.delta_alpha / d.delta_r2) / alpha
    return BoundPair(0.25 * upper, upper)


def quality_gain_linear(p: LinearParams, alpha: float, delta_mu: float) -> float:
    """Welfare gain from raising the mean improvement by delta_mu: alpha * delta_mu."""
    _check_alpha_half(alpha)
    if math.isnan(delta_mu) or not delta_mu > 0.0:
        raise DomainError(f"delta_mu must be positive, got {delta_mu!r}")
    return delta_mu * alpha


def linear_indifference_gamma(
    alpha: float,
    cost_ratio_access_over_prediction: float,
    d: LeverDelta,
    p: LinearParams,
) -> float:
    """First-order gamma_s threshold above which expanding access beats
    improving prediction at the given cost ratio.

    Returns max(0, (delta_r2/delta_alpha) * cost_ratio * alpha
                   - mu / (beta_norm * T)).
    This is a straight-line approximation to the exact indifference
    contour (which sweep_grid extracts numerically), not a guaranteed
    conservative bound.
    """
    if math.isnan(alpha) or not 0.0 < alpha < 0.05:
        raise DomainError(f"alpha must lie in (0, 0.05), got {alpha!r}")
    cr = cost_ratio_access_over_prediction
    if math.isnan(cr) or not cr > 0.0:
        raise DomainError(f"cost ratio must be positive, got {cr!r}")
    if d.delta_alpha <= 0.0 or d.delta_r2 <= 0.0:
        raise DomainError("both lever increments must be positive")
    t = gaussian.upper_quantile(alpha)
    raw = (d.delta_r2 / d.delta_alpha) * cr * alpha - p.mu / (p.beta_norm * t)
    return max(0.0, raw)
