"""
GARCH(1,1)-in-Mean observation model with skewed Student-t innovations.

    y_j = [alpha + E(z)] sqrt(h_j) + u_j,     u_j = [z_j - E(z)] sqrt(h_j)
    h_j = alpha0 + alpha1 u_{j-1}^2 + beta1 h_{j-1}

``h_j`` is the conditional inverse precision (squared scale) of ``y_j``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Union

import numpy as np
from numba import njit

from .data import ExcessReturnSeries
from .distributions import (
    SkewedStudentT,
    SkewMechanism,
    log_skew_weight_at,
    mean_exists,
    sample,
    t_logpdf,
)

__all__ = [
    "GarchParams",
    "FilterState",
    "InitPolicy",
    "initial_variance",
    "garch_filter",
    "log_likelihood",
    "simulate",
]

# "sample_variance", "unconditional" or a fixed positive value for h_1
InitPolicy = Union[str, float]


@dataclass(frozen=True)
class GarchParams:
    """
    Parameters ``(alpha, alpha0, alpha1, beta1, nu)``.

    Set ``stationary=True`` to additionally require ``alpha1 + beta1 < 1``.
    """

    alpha: float
    alpha0: float
    alpha1: float
    beta1: float
    nu: float
    stationary: bool = False

    def __post_init__(self) -> None:
        for name in ("alpha", "alpha0", "alpha1", "beta1", "nu"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value}")
            object.__setattr__(self, name, value)
        if not self.alpha0 > 0:
            raise ValueError(f"alpha0 must be > 0, got {self.alpha0}")
        if self.alpha1 < 0 or self.beta1 < 0:
            raise ValueError("alpha1 and beta1 must be non-negative")
        if not self.nu > 1:
            raise ValueError(f"nu must exceed 1, got {self.nu}")
        if self.stationary and not self.alpha1 + self.beta1 < 1:
            raise ValueError(
                f"alpha1 + beta1 = {self.alpha1 + self.beta1} violates covariance stationarity"
            )

    def as_dict(self) -> dict[str, float]:
        return {
            "alpha": self.alpha,
            "alpha0": self.alpha0,
            "alpha1": self.alpha1,
            "beta1": self.beta1,
            "nu": self.nu,
        }


@dataclass(frozen=True)
class FilterState:
    """Output of :func:`garch_filter`."""

    h: np.ndarray
    u: np.ndarray
    mu: np.ndarray
    zstar: np.ndarray
    mean_z: float


def _values(y: ExcessReturnSeries | Any) -> np.ndarray:
    arr = y.values if isinstance(y, ExcessReturnSeries) else y
    return np.ascontiguousarray(arr, dtype=float)


def initial_variance(y: np.ndarray, params: GarchParams, init: InitPolicy) -> float:
    """Resolve the ``h_1`` initialisation policy to a number."""
    if isinstance(init, str):
        if init == "sample_variance":
            var = float(np.var(y)) if y.size >= 2 else 0.0
            # a single or constant observation has no usable sample variance
            return var if var > 0 else params.alpha0
        if init == "unconditional":
            persistence = params.alpha1 + params.beta1
            if not persistence < 1:
                raise ValueError("unconditional initialisation requires alpha1 + beta1 < 1")
            return params.alpha0 / (1.0 - persistence)
        raise ValueError(f"unknown initialisation policy {init!r}")
    h1 = float(init)
    if not (math.isfinite(h1) and h1 > 0):
        raise ValueError(f"fixed h_1 must be positive, got {h1}")
    return h1


@njit(cache=True)
def _recursion(y, alpha0, alpha1, beta1, slope, h1):  # pragma: no cover - compiled
    n = y.shape[0]
    h = np.empty(n)
    u = np.empty(n)
    hj = h1
    for j in range(n):
        if j > 0:
            hj = alpha0 + alpha1 * u[j - 1] * u[j - 1] + beta1 * hj
        h[j] = hj
        u[j] = y[j] - slope * math.sqrt(hj)
    return h, u


def _mean_z(params: GarchParams, mech: SkewMechanism) -> float:
    if mech.is_symmetric:
        return 0.0
    return SkewedStudentT(params.nu, mech).mean


def garch_filter(
    y: ExcessReturnSeries | Any,
    params: GarchParams,
    mech: SkewMechanism,
    init: InitPolicy = "sample_variance",
    *,
    mean_z: float | None = None,
) -> FilterState:
    """
    Run the variance recursion over an observed series.

    ``u_0`` is taken as zero, so the recursion starts from ``h_1`` at the
    first observation.  ``mean_z`` may be passed to reuse a precomputed
    ``E(z)``.
    """
    y = _values(y)
    if mean_z is None:
        mean_z = _mean_z(params, mech)
    h1 = initial_variance(y, params, init)
    slope = params.alpha + mean_z
    h, u = _recursion(y, params.alpha0, params.alpha1, params.beta1, slope, h1)
    if not (np.all(np.isfinite(h)) and np.all(np.isfinite(u)) and np.all(h > 0)):
        raise FloatingPointError("non-finite or non-positive values in the variance recursion")
    sqrt_h = np.sqrt(h)
    mu = slope * sqrt_h
    return FilterState(h=h, u=u, mu=mu, zstar=u / sqrt_h, mean_z=float(mean_z))


def log_likelihood_terms(
    y: ExcessReturnSeries | Any,
    params: GarchParams,
    mech: SkewMechanism,
    init: InitPolicy = "sample_variance",
) -> np.ndarray:
    """Per-observation log conditional densities."""
    state = garch_filter(y, params, mech, init)
    # z*_j = z_j - E(z) is the centred innovation; z_j itself has the skewed density
    z = state.zstar + state.mean_z
    return -0.5 * np.log(state.h) + t_logpdf(z, params.nu) + log_skew_weight_at(z, mech, params.nu)


def log_likelihood(
    y: ExcessReturnSeries | Any,
    params: GarchParams,
    mech: SkewMechanism,
    init: InitPolicy = "sample_variance",
) -> float:
    """
    Conditional log-likelihood
    ``sum_j [-0.5 log h_j + log f_t(e_j) + log p(F_t(e_j))]`` with
    ``e_j = z*_j + E(z) = (y_j - alpha sqrt(h_j)) / sqrt(h_j)``.

    The conditional mean is ``mu_j = [alpha + E(z)] sqrt(h_j)`` and the
    standardised residual ``z*_j = (y_j - mu_j) / sqrt(h_j)`` is centred, so
    the skewed density is evaluated at ``z*_j`` shifted back by ``E(z)``.
    For the symmetric model ``e_j = z*_j``.

    Returns ``-inf`` instead of raising when a density factor vanishes, the
    recursion overflows, or ``E(z)`` does not exist for the parameters.
    """
    if not mean_exists(mech.kind, mech.eta, params.nu):
        return -math.inf
    try:
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            terms = log_likelihood_terms(y, params, mech, init)
    except FloatingPointError:
        return -math.inf
    total = float(np.sum(terms))
    if math.isnan(total):
        return -math.inf
    return total


def simulate(
    params: GarchParams,
    mech: SkewMechanism,
    n: int,
    seed: int | np.random.Generator | None = None,
    init: InitPolicy = "unconditional",
    *,
    start: str = "2000-01-03",
) -> ExcessReturnSeries:
    """
    Simulate ``n`` excess returns from the GARCH-in-Mean model.

    Dates are consecutive business days from ``start``.  The default
    ``init="unconditional"`` needs ``alpha1 + beta1 < 1``; pass a number to
    fix ``h_1`` otherwise.
    """
    n = int(n)
    if n < 1:
        raise ValueError("n must be at least 1")
    if init == "sample_variance":
        raise ValueError("sample_variance initialisation is undefined before simulating")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    dist = SkewedStudentT(params.nu, mech)
    mean_z = _mean_z(params, mech)
    z = sample(dist, n, rng)
    h1 = initial_variance(np.empty(0), params, init)
    y, h = _simulate_path(z, params.alpha, params.alpha0, params.alpha1, params.beta1, mean_z, h1)
    first = np.busday_offset(np.datetime64(start, "D"), 0, roll="forward")
    dates = np.busday_offset(first, np.arange(n), roll="forward")
    meta = {
        "source": "simulate",
        "params": params.as_dict(),
        "mechanism": mech.to_dict(),
        "seed": seed if isinstance(seed, int) else None,
        "init": init,
    }
    return ExcessReturnSeries(dates=dates, values=y, meta=meta)


@njit(cache=True)
def _simulate_path(z, alpha, alpha0, alpha1, beta1, mean_z, h1):  # pragma: no cover - compiled
    n = z.shape[0]
    y = np.empty(n)
    h = np.empty(n)
    hj = h1
    uprev = 0.0
    for j in range(n):
        if j > 0:
            hj = alpha0 + alpha1 * uprev * uprev + beta1 * hj
        s = math.sqrt(hj)
        uprev = (z[j] - mean_z) * s
        y[j] = (alpha + mean_z) * s + uprev
        h[j] = hj
    return y, h
