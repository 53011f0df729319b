"""Independent verification oracles for the closed forms.

Two kinds of ground truth live here:

* Monte Carlo policy simulation for both welfare models, run on the
  counter-based kernel selected in ``_backend``.  Fixed (seed, samples)
  gives bit-identical estimates, so the oracle itself is testable.
* An exact allocator for finitely supported feature distributions: the
  greedy quantile policy plus an exhaustive brute-force optimum to check
  it against.  With deterministic 0/1 policies on atoms the budget can
  fail to bind exactly, so greedy may fall short of brute force by at
  most (max conditional mean) * (largest atom mass); callers relying on
  equality should use instances whose treated prefix saturates exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from . import gaussian
from ._backend import linear_sums, probit_sums
from .errors import DomainError
from .linear import LinearParams
from .probit import ProbitParams

__all__ = [
    "SimConfig",
    "Estimate",
    "Atom",
    "DiscreteDistribution",
    "Allocation",
    "simulate_linear_value",
    "simulate_probit_value",
    "greedy_allocate",
    "brute_force_allocate",
]

_MASS_TOL = 1e-12


@dataclass(frozen=True)
class SimConfig:
    """Simulation size and reproducibility seed."""

    samples: int
    seed: int

    def __post_init__(self) -> None:
        if self.samples < 10_000:
            raise DomainError(
                f"samples must be at least 10000, got {self.samples!r}"
            )
        if not 0 <= self.seed < 2**64:
            raise DomainError(f"seed must fit in 64 bits, got {self.seed!r}")


@dataclass(frozen=True)
class Estimate:
    """A Monte Carlo mean with its standard error."""

    mean: float
    std_error: float
    samples: int

    def z_score(self, target: float) -> float:
        if self.std_error == 0.0:
            return 0.0 if self.mean == target else math.inf
        return (self.mean - target) / self.std_error

    def within(self, target: float, n_se: float = 4.0) -> bool:
        return abs(self.mean - target) <= n_se * self.std_error


@dataclass(frozen=True)
class Atom:
    """One support point of a discrete feature distribution."""

    label: str
    mass: float
    cond_mean: float


@dataclass(frozen=True)
class DiscreteDistribution:
    """A finitely supported feature distribution with conditional means."""

    atoms: tuple[Atom, ...]

    def __post_init__(self) -> None:
        if not self.atoms:
            raise DomainError("distribution must have at least one atom")
        labels = [a.label for a in self.atoms]
        if len(set(labels)) != len(labels):
            raise DomainError("atom labels must be distinct")
        for a in self.atoms:
            if not a.mass > 0.0 or math.isnan(a.mass):
                raise DomainError(f"atom {a.label!r} has nonpositive mass {a.mass!r}")
            if math.isnan(a.cond_mean) or math.isinf(a.cond_mean):
                raise DomainError(f"atom {a.label!r} has non-finite mean")
        total = math.fsum(a.mass for a in self.atoms)
        if abs(total - 1.0) > _MASS_TOL:
            raise DomainError(f"atom masses sum to {total!r}, not 1")


@dataclass(frozen=True)
class Allocation:
    """A deterministic 0/1 assignment over atoms and its total welfare."""

    treated: tuple[str, ...]
    treated_mass: float
    welfare: float


def _estimate(total: float, total_sq: float, n: int) -> Estimate:
    mean = total / n
    var = max(0.0, (total_sq - total * total / n) / (n - 1))
    return Estimate(mean=mean, std_error=math.sqrt(var / n), samples=n)


def simulate_linear_value(p: LinearParams, alpha: float, cfg: SimConfig) -> Estimate:
    """Monte Carlo estimate of the linear model's optimal-policy welfare.

    Draws the observable and residual score components, applies the
    top-alpha threshold policy on the observable one, and averages the
    treated welfare.  Deterministic for fixed cfg.
    """
    if math.isnan(alpha) or not 0.0 < alpha < 0.5:
        raise DomainError(f"alpha must lie in (0, 0.5), got {alpha!r}")
    threshold = gaussian.upper_quantile(alpha)
    total, total_sq = linear_sums(
        cfg.seed,
        cfg.samples,
        p.mu,
        p.gamma_s * p.beta_norm,
        p.gamma_t * p.beta_norm,
        threshold,
    )
    return _estimate(total, total_sq, cfg.samples)


def simulate_probit_value(p: ProbitParams, alpha: float, cfg: SimConfig) -> Estimate:
    """Monte Carlo estimate of the probit model's optimal-policy welfare."""
    if math.isnan(alpha) or not 0.0 < alpha <= 1.0:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha!r}")
    threshold = gaussian.upper_quantile(alpha)
    total, total_sq = probit_sums(
        cfg.seed,
        cfg.samples,
        p.mu_over_beta,
        p.gamma_s,
        p.gamma_t,
        threshold,
    )
    return _estimate(total, total_sq, cfg.samples)


def greedy_allocate(dist: DiscreteDistribution, alpha: float) -> Allocation:
    """Quantile-threshold policy on a discrete distribution.

    Treats atoms in descending conditional mean (stable on ties) while
    the mean is positive and the running mass stays within alpha; stops
    at the first atom that would overflow the budget.
    """
    if math.isnan(alpha) or not 0.0 <= alpha <= 1.0:
        raise DomainError(f"alpha must lie in [0, 1], got {alpha!r}")
    ranked = sorted(dist.atoms, key=lambda a: -a.cond_mean)
    treated: list[str] = []
    masses: list[float] = []
    welfare_terms: list[float] = []
    for atom in ranked:
        if atom.cond_mean <= 0.0:
            break
        # exact prefix mass, so a budget equal to a prefix sum saturates
        if math.fsum(masses + [atom.mass]) > alpha:
            break
        treated.append(atom.label)
        masses.append(atom.mass)
        welfare_terms.append(atom.mass * atom.cond_mean)
    return Allocation(
        treated=tuple(treated),
        treated_mass=math.fsum(masses),
        welfare=math.fsum(welfare_terms),
    )


def brute_force_allocate(dist: DiscreteDistribution, alpha: float) -> Allocation:
    """Exhaustive optimum over all deterministic assignments (n <= 20)."""
    if math.isnan(alpha) or not 0.0 <= alpha <= 1.0:
        raise DomainError(f"alpha must lie in [0, 1], got {alpha!r}")
    n = len(dist.atoms)
    if n > 20:
        raise DomainError(f"brute force supports at most 20 atoms, got {n}")
    best = Allocation(treated=(), treated_mass=0.0, welfare=0.0)
    for size in range(1, n + 1):
        for subset in combinations(dist.atoms, size):
            mass = math.fsum(a.mass for a in subset)
            if mass > alpha:
                continue
            welfare = math.fsum(a.mass * a.cond_mean for a in subset)
            if welfare > best.welfare:
                best = Allocation(
                    treated=tuple(a.label for a in subset),
                    treated_mass=mass,
                    welfare=welfare,
                )
    return best
