"""
Reference implementations written directly from the model definitions.

They deliberately avoid the package's own building blocks: the Student-t
density is coded from its gamma-function formula, the cdf is
``scipy.special.stdtr``, weights are spelled out per mechanism,
E(z) is a z-space integral with ``scipy.integrate.quad`` and the variance
recursion is a plain Python loop.
"""

from __future__ import annotations

import math

import numpy as np
import warnings

from scipy import integrate, special


def t_pdf(z: float, nu: float) -> float:
    logc = special.gammaln(0.5 * (nu + 1)) - special.gammaln(0.5 * nu) - 0.5 * math.log(math.pi * nu)
    return math.exp(logc - 0.5 * (nu + 1) * math.log1p(z * z / nu))


def t_cdf(z: float, nu: float) -> float:
    return float(special.stdtr(nu, z))


def weight(kind: str, eta, z: float, nu: float) -> float:
    """p(F(z) | eta) evaluated at a point z."""
    F = t_cdf(z, nu)
    S = t_cdf(-z, nu)
    f = t_pdf(z, nu)
    if kind == "symmetric":
        return 1.0
    if kind == "inverse_scale":
        g = eta[0]
        c = 2.0 / (g + 1.0 / g)
        # weight is C f(z/g)/f(z) right of the median, C f(g z)/f(z) left of it
        return c * t_pdf(z / g if z >= 0 else z * g, nu) / f
    if kind == "hidden_truncation":
        return 2.0 * t_cdf(eta[0] * z, nu)
    if kind in ("beta_one", "beta_two"):
        a, b = (eta[0], 1.0 / eta[0]) if kind == "beta_one" else eta
        return math.exp((a - 1) * math.log(F) + (b - 1) * math.log(S) - special.betaln(a, b))
    if kind == "bernstein2":
        w1, w2 = eta
        w3 = 1.0 - w1 - w2
        return 3 * w1 * S * S + 6 * w2 * F * S + 3 * w3 * F * F
    if kind == "ferreira_steel":
        return 1.0 + math.tanh(eta[0]) * (F - S) ** 3
    raise ValueError(kind)


def density(kind: str, eta, z: float, nu: float) -> float:
    return t_pdf(z, nu) * weight(kind, eta, z, nu)


def mean(kind: str, eta, nu: float) -> float:
    if kind == "symmetric":
        return 0.0
    opts = dict(epsabs=1e-15, epsrel=1e-14, limit=500)
    with warnings.catch_warnings():
        # quad flags roundoff once it reaches machine precision; that is fine here
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        left = integrate.quad(lambda z: z * density(kind, eta, z, nu), -np.inf, 0.0, **opts)[0]
        right = integrate.quad(lambda z: z * density(kind, eta, z, nu), 0.0, np.inf, **opts)[0]
    return left + right


def log_likelihood(y, alpha, alpha0, alpha1, beta1, nu, kind, eta, h1) -> float:
    """Sum of log conditional densities, looping observation by observation."""
    ez = mean(kind, eta, nu)
    total = 0.0
    h = h1
    u_prev = 0.0
    for j, yj in enumerate(y):
        if j > 0:
            h = alpha0 + alpha1 * u_prev**2 + beta1 * h
        s = math.sqrt(h)
        u_prev = yj - (alpha + ez) * s
        # the innovation z_j solves y_j = alpha sqrt(h) + z_j sqrt(h)
        zj = (yj - alpha * s) / s
        total += math.log(density(kind, eta, zj, nu) / s)
    return total
