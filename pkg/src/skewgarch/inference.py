"""
Bayesian estimation of skewed GARCH-in-Mean models.

Sampling happens on an unconstrained scale:

=========== ==================== =====================
parameter   support              transform
=========== ==================== =====================
alpha       real                 identity
alpha0      (0, inf)             log
alpha1      (0, 1)               logit
beta1       (0, 1)               logit
nu          (1, inf)             log(nu - 1)
gamma1      (0, inf)             log
gamma2      real                 identity
gamma3      (0, inf)             log
a, b        (0, inf)             log
omega1, 2   open simplex         additive log-ratio
gamma4      real                 identity
=========== ==================== =====================

The log-Jacobian of the inverse transform is part of the sampled kernel.
"""

from __future__ import annotations

import csv
import math
import os
from collections.abc import Callable, Mapping, Sequence
from dataclasses import asdict, dataclass, field, fields
from typing import Any

import numpy as np
from scipy import optimize, special

from .data import ExcessReturnSeries
from .distributions import (
    Mechanism,
    SkewedStudentT,
    SkewMechanism,
    mean_exists,
    mechanism_from_model_id,
)
from .garch import GarchParams, InitPolicy, log_likelihood

__all__ = [
    "PriorSpec",
    "SamplerConfig",
    "PosteriorChain",
    "MetropolisResult",
    "RiskPremiumSummary",
    "GarchMPosterior",
    "log_posterior_kernel",
    "metropolis",
    "rwm_sample",
    "risk_premium_summary",
    "summarize_risk_premium",
    "effective_sample_size",
]

GARCH_NAMES = ("alpha", "alpha0", "alpha1", "beta1", "nu")
_EULER = 0.5772156649015329
_LOG_2PI = math.log(2.0 * math.pi)


def _norm_logpdf(x: float, mean: float, sd: float) -> float:
    r = (x - mean) / sd
    return -0.5 * (r * r + _LOG_2PI) - math.log(sd)


@dataclass(frozen=True)
class PriorSpec:
    """
    Independent proper priors.

    ``alpha ~ N(alpha_mean, alpha_sd^2)``, ``alpha0 ~ Exp(mean alpha0_mean)``,
    ``alpha1, beta1 ~ U(0, 1)``, ``nu - 1 ~ Exp(mean nu_minus1_mean)``.
    Skewness: ``log gamma1``, ``gamma2``, ``log gamma3`` and ``gamma4`` are
    ``N(0, eta_sd^2)``; ``a`` and ``b`` are ``Exp(mean ab_mean)``;
    ``(omega1, omega2, omega3) ~ Dirichlet(dirichlet)``.
    """

    alpha_mean: float = 0.0
    alpha_sd: float = 1.0
    alpha0_mean: float = 1.0
    nu_minus1_mean: float = 9.0
    eta_sd: float = 1.0
    ab_mean: float = 1.0
    dirichlet: tuple[float, float, float] = (1.0, 1.0, 1.0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "dirichlet", tuple(float(c) for c in self.dirichlet))
        positive = ("alpha_sd", "alpha0_mean", "nu_minus1_mean", "eta_sd", "ab_mean")
        for name in positive:
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if len(self.dirichlet) != 3 or min(self.dirichlet) <= 0:
            raise ValueError("dirichlet needs three positive concentrations")

    @classmethod
    def from_dict(cls, overrides: Mapping[str, Any] | None) -> PriorSpec:
        overrides = dict(overrides or {})
        known = {f.name for f in fields(cls)}
        unknown = set(overrides) - known
        if unknown:
            raise ValueError(f"unknown prior settings: {sorted(unknown)}")
        return cls(**overrides)

    def to_dict(self) -> dict[str, Any]:
        out = asdict(self)
        out["dirichlet"] = list(self.dirichlet)
        return out

    def log_density(self, params: GarchParams, mech: SkewMechanism) -> float:
        """Log prior density on the constrained scale; ``-inf`` off-support."""
        if not (0.0 < params.alpha1 < 1.0 and 0.0 < params.beta1 < 1.0):
            return -math.inf
        lp = _norm_logpdf(params.alpha, self.alpha_mean, self.alpha_sd)
        lp += -math.log(self.alpha0_mean) - params.alpha0 / self.alpha0_mean
        lp += -math.log(self.nu_minus1_mean) - (params.nu - 1.0) / self.nu_minus1_mean
        return lp + self._log_eta_density(mech)

    def _log_eta_density(self, mech: SkewMechanism) -> float:
        kind, eta = mech.kind, mech.eta
        if kind is Mechanism.SYMMETRIC:
            return 0.0
        if kind in (Mechanism.INVERSE_SCALE, Mechanism.BETA_ONE):
            g = eta[0]
            return _norm_logpdf(math.log(g), 0.0, self.eta_sd) - math.log(g)
        if kind in (Mechanism.HIDDEN_TRUNCATION, Mechanism.FERREIRA_STEEL):
            return _norm_logpdf(eta[0], 0.0, self.eta_sd)
        if kind is Mechanism.BETA_TWO:
            return -2.0 * math.log(self.ab_mean) - (eta[0] + eta[1]) / self.ab_mean
        if kind is Mechanism.BERNSTEIN2:
            c = self.dirichlet
            w = (eta[0], eta[1], 1.0 - eta[0] - eta[1])
            out = special.gammaln(sum(c)) - sum(special.gammaln(ci) for ci in c)
            return float(out + sum((ci - 1.0) * math.log(wi) for ci, wi in zip(c, w)))
        raise AssertionError(kind)


def _coerce_params(params: GarchParams | Mapping[str, float] | Sequence[float]) -> GarchParams:
    if isinstance(params, GarchParams):
        return params
    if isinstance(params, Mapping):
        return GarchParams(**{k: params[k] for k in GARCH_NAMES})
    return GarchParams(*params)


def log_posterior_kernel(
    y: ExcessReturnSeries | Any,
    params: GarchParams | Mapping[str, float] | Sequence[float],
    mech: SkewMechanism,
    prior: PriorSpec | None = None,
    init: InitPolicy = "sample_variance",
) -> float:
    """
    Unnormalised log posterior ``log prior + log likelihood`` on the
    constrained scale; ``-inf`` for parameters outside the support.
    """
    prior = prior or PriorSpec()
    try:
        params = _coerce_params(params)
    except ValueError:
        return -math.inf
    lp = prior.log_density(params, mech)
    if not math.isfinite(lp):
        return -math.inf
    return lp + log_likelihood(y, params, mech, init)


# ---------------------------------------------------------------------------
# Parameter transforms
# ---------------------------------------------------------------------------


def _log_expit(x: float) -> float:
    return -math.log1p(math.exp(-x)) if x >= 0 else x - math.log1p(math.exp(x))


class GarchMPosterior:
    """
    Posterior of one model (mechanism family) given data, on both scales.

    Parameters
    ----------
    y : ExcessReturnSeries or array_like
    kind : Mechanism or str
        Mechanism family; accepts ``"M0"`` ... ``"M6"``.
    prior : PriorSpec, optional
    init : InitPolicy
        Initialisation of ``h_1``.
    """

    def __init__(
        self,
        y: ExcessReturnSeries | Any,
        kind: Mechanism | str,
        prior: PriorSpec | None = None,
        init: InitPolicy = "sample_variance",
    ) -> None:
        values = y.values if isinstance(y, ExcessReturnSeries) else y
        self.y = np.ascontiguousarray(values, dtype=float)
        self.kind = mechanism_from_model_id(kind)
        self.prior = prior or PriorSpec()
        self.init = init

    @property
    def names(self) -> tuple[str, ...]:
        return GARCH_NAMES + self.kind.param_names

    @property
    def dim(self) -> int:
        return len(self.names)

    def split(self, theta: Sequence[float]) -> tuple[GarchParams, SkewMechanism]:
        """Constrained vector -> (GarchParams, SkewMechanism)."""
        theta = [float(t) for t in theta]
        return GarchParams(*theta[:5]), SkewMechanism(self.kind, tuple(theta[5:]))

    def to_unconstrained(self, theta: Sequence[float]) -> np.ndarray:
        t = np.asarray(theta, dtype=float)
        x = np.empty(self.dim)
        x[0] = t[0]
        x[1] = math.log(t[1])
        x[2] = special.logit(t[2])
        x[3] = special.logit(t[3])
        x[4] = math.log(t[4] - 1.0)
        kind = self.kind
        if kind in (Mechanism.INVERSE_SCALE, Mechanism.BETA_ONE):
            x[5] = math.log(t[5])
        elif kind in (Mechanism.HIDDEN_TRUNCATION, Mechanism.FERREIRA_STEEL):
            x[5] = t[5]
        elif kind is Mechanism.BETA_TWO:
            x[5:7] = np.log(t[5:7])
        elif kind is Mechanism.BERNSTEIN2:
            w3 = 1.0 - t[5] - t[6]
            x[5] = math.log(t[5] / w3)
            x[6] = math.log(t[6] / w3)
        return x

    def from_unconstrained(self, x: Sequence[float]) -> tuple[np.ndarray, float]:
        """Unconstrained vector -> (constrained vector, log |Jacobian|)."""
        x = np.asarray(x, dtype=float)
        t = np.empty(self.dim)
        t[0] = x[0]
        t[1] = math.exp(x[1])
        t[2] = special.expit(x[2])
        t[3] = special.expit(x[3])
        t[4] = 1.0 + math.exp(x[4])
        logjac = x[1] + x[4]
        for k in (2, 3):
            logjac += _log_expit(x[k]) + _log_expit(-x[k])
        kind = self.kind
        if kind in (Mechanism.INVERSE_SCALE, Mechanism.BETA_ONE):
            t[5] = math.exp(x[5])
            logjac += x[5]
        elif kind in (Mechanism.HIDDEN_TRUNCATION, Mechanism.FERREIRA_STEEL):
            t[5] = x[5]
        elif kind is Mechanism.BETA_TWO:
            t[5:7] = np.exp(x[5:7])
            logjac += x[5] + x[6]
        elif kind is Mechanism.BERNSTEIN2:
            logits = np.array([x[5], x[6], 0.0])
            lse = special.logsumexp(logits)
            logw = logits - lse
            t[5:7] = np.exp(logw[:2])
            logjac += float(np.sum(logw))
        return t, float(logjac)

    def log_kernel_constrained(self, theta: Sequence[float]) -> float:
        try:
            params, mech = self.split(theta)
        except ValueError:
            return -math.inf
        lp = self.prior.log_density(params, mech)
        if not math.isfinite(lp):
            return -math.inf
        return lp + log_likelihood(self.y, params, mech, self.init)

    def log_kernel(self, x: Sequence[float]) -> float:
        """Log posterior kernel on the unconstrained scale (Jacobian included)."""
        with np.errstate(over="ignore"):
            try:
                theta, logjac = self.from_unconstrained(x)
            except (OverflowError, ValueError):
                return -math.inf
        if not np.all(np.isfinite(theta)):
            return -math.inf
        value = self.log_kernel_constrained(theta) + logjac
        return value if not math.isnan(value) else -math.inf

    def prior_mean_point(self) -> np.ndarray:
        """Prior means of each coordinate on the unconstrained scale."""
        p = self.prior
        x = np.zeros(self.dim)
        x[0] = p.alpha_mean
        x[1] = math.log(p.alpha0_mean) - _EULER
        x[4] = math.log(p.nu_minus1_mean) - _EULER
        if self.kind is Mechanism.BETA_TWO:
            x[5:7] = math.log(p.ab_mean) - _EULER
        elif self.kind is Mechanism.BERNSTEIN2:
            c = p.dirichlet
            x[5] = special.digamma(c[0]) - special.digamma(c[2])
            x[6] = special.digamma(c[1]) - special.digamma(c[2])
        return x

    def find_mode(self, x0: Sequence[float] | None = None) -> tuple[np.ndarray, np.ndarray]:
        """
        Posterior mode on the unconstrained scale, with a covariance
        estimate from the BFGS inverse Hessian.

        Without ``x0`` a skewed model is started from the mode of the
        symmetric model, once with right and once with left skewness, with
        ``alpha`` shifted so that ``alpha + E(z)`` is unchanged; the higher
        of the two optima wins.  Skewness direction and ``alpha`` trade off
        against each other, so a single start can stall on the wrong side.
        """
        if x0 is not None:
            return self._optimise(np.asarray(x0, dtype=float), polish=True)
        if self.kind is Mechanism.SYMMETRIC:
            return self._optimise(self.prior_mean_point(), polish=True)
        base, _ = GarchMPosterior(self.y, Mechanism.SYMMETRIC, self.prior, self.init).find_mode()
        best: tuple[np.ndarray, np.ndarray] | None = None
        best_value = -math.inf
        for eta in _SKEWED_STARTS[self.kind]:
            start = np.concatenate([base, eta])
            theta, _ = self.from_unconstrained(start)
            params, mech = self.split(theta)
            if not mean_exists(mech.kind, mech.eta, params.nu):
                continue
            start[0] -= SkewedStudentT(params.nu, mech).mean
            if not math.isfinite(self.log_kernel(start)):
                continue
            x, cov = self._optimise(start, polish=False)
            value = self.log_kernel(x)
            if value > best_value:
                best, best_value = (x, cov), value
        if best is None:
            return self._optimise(self.prior_mean_point(), polish=True)
        return best

    def _optimise(self, x0: np.ndarray, polish: bool) -> tuple[np.ndarray, np.ndarray]:
        if not math.isfinite(self.log_kernel(x0)):
            raise ValueError("log kernel is not finite at the starting point")

        def objective(x: np.ndarray) -> float:
            v = self.log_kernel(x)
            return -v if math.isfinite(v) else 1e100

        x = x0
        fun = objective(x0)
        if polish:
            # Nelder-Mead is robust to -inf regions far from the mode
            res = optimize.minimize(
                objective, x0, method="Nelder-Mead",
                options={"maxiter": 400 * self.dim, "xatol": 1e-4, "fatol": 1e-6},
            )
            x, fun = res.x, res.fun
        res2 = optimize.minimize(objective, x, method="BFGS", options={"gtol": 1e-3})
        if res2.fun <= fun:
            x, cov = res2.x, np.atleast_2d(res2.hess_inv)
        else:
            cov = np.eye(self.dim) * 0.01
        cov = 0.5 * (cov + cov.T)
        if not np.all(np.isfinite(cov)) or np.min(np.linalg.eigvalsh(cov)) <= 0:
            cov = np.eye(self.dim) * 0.01
        return x, cov


# unconstrained mechanism coordinates for a right- and a left-skewed start
_SKEWED_STARTS: dict[Mechanism, tuple[tuple[float, ...], ...]] = {
    Mechanism.INVERSE_SCALE: ((0.5,), (-0.5,)),
    Mechanism.HIDDEN_TRUNCATION: ((1.0,), (-1.0,)),
    Mechanism.BETA_ONE: ((0.5,), (-0.5,)),
    Mechanism.BETA_TWO: ((0.7, 0.0), (0.0, 0.7)),
    Mechanism.BERNSTEIN2: ((-2.0, -1.0), (2.0, 1.0)),
    Mechanism.FERREIRA_STEEL: ((1.0,), (-1.0,)),
}


# ---------------------------------------------------------------------------
# Random-walk Metropolis
# ---------------------------------------------------------------------------


@dataclass
class MetropolisResult:
    """Post-burn-in output of :func:`metropolis` (unconstrained scale)."""

    samples: np.ndarray
    log_kernel: np.ndarray
    acceptance_rate: float
    burn_in_acceptance_rate: float
    proposal_cov: np.ndarray


def metropolis(
    log_kernel: Callable[[np.ndarray], float],
    x0: Sequence[float],
    *,
    iterations: int,
    burn_in: int,
    seed: int,
    proposal_cov: np.ndarray | None = None,
    thin: int = 1,
    adapt: bool = True,
    target_acceptance: float = 0.3,
    adapt_interval: int = 100,
) -> MetropolisResult:
    """
    Gaussian random-walk Metropolis with burn-in adaptation.

    During burn-in the proposal covariance is re-estimated from the
    burn-in draws every ``adapt_interval`` iterations and a global scale is
    tuned by Robbins-Monro towards ``target_acceptance``.  The proposal is
    frozen afterwards, so the retained draws form a homogeneous Markov chain.

    Parameters
    ----------
    log_kernel : callable
        Unnormalised log target. May return ``-inf``.
    x0 : array_like
        Starting point; the kernel must be finite there.
    iterations : int
        Total iterations including burn-in.
    burn_in : int
        Number of initial iterations discarded.
    seed : int
        Seed for :func:`numpy.random.default_rng`.
    proposal_cov : ndarray, optional
        Initial proposal covariance (before the ``2.38^2 / d`` scaling).
    thin : int
        Keep every ``thin``-th post-burn-in draw.
    """
    if not iterations > burn_in >= 0:
        raise ValueError("need iterations > burn_in >= 0")
    if thin < 1:
        raise ValueError("thin must be >= 1")
    rng = np.random.default_rng(seed)
    x = np.array(x0, dtype=float, ndmin=1)
    d = x.size
    current = float(log_kernel(x))
    if not math.isfinite(current):
        raise ValueError("log kernel is not finite at the initial point")

    cov = np.eye(d) * 0.01 if proposal_cov is None else np.array(proposal_cov, dtype=float, ndmin=2)
    chol = np.linalg.cholesky(cov)
    log_scale = math.log(2.38 / math.sqrt(d))

    n_keep = (iterations - burn_in + thin - 1) // thin
    samples = np.empty((n_keep, d))
    kernels = np.empty(n_keep)
    history = np.empty((burn_in, d)) if adapt else None
    accepted_burn = accepted = 0
    k = 0
    for i in range(iterations):
        step = math.exp(log_scale) * (chol @ rng.standard_normal(d))
        proposal = x + step
        candidate = float(log_kernel(proposal))
        log_u = math.log(rng.random())
        accept = log_u < candidate - current
        if accept:
            x, current = proposal, candidate
        if i < burn_in:
            accepted_burn += accept
            if adapt:
                history[i] = x
                log_scale += (float(accept) - target_acceptance) / (i + 1) ** 0.6
                if (i + 1) % adapt_interval == 0 and i + 1 >= 2 * adapt_interval:
                    # use the latter half of the burn-in history seen so far
                    recent = history[(i + 1) // 2 : i + 1]
                    emp = np.atleast_2d(np.cov(recent, rowvar=False))
                    emp += np.eye(d) * 1e-8 * max(1.0, float(np.mean(np.diag(emp))))
                    try:
                        chol = np.linalg.cholesky(emp)
                    except np.linalg.LinAlgError:
                        pass
        else:
            accepted += accept
            j = i - burn_in
            if j % thin == 0:
                samples[k] = x
                kernels[k] = current
                k += 1
    final_cov = math.exp(2 * log_scale) * (chol @ chol.T)
    return MetropolisResult(
        samples=samples,
        log_kernel=kernels,
        acceptance_rate=accepted / (iterations - burn_in),
        burn_in_acceptance_rate=accepted_burn / burn_in if burn_in else float("nan"),
        proposal_cov=final_cov,
    )


def effective_sample_size(x: np.ndarray) -> float:
    """
    Effective sample size of a scalar chain using Geyer's initial
    monotone positive sequence of autocorrelation pairs.
    """
    x = np.asarray(x, dtype=float)
    n = x.size
    if n < 4:
        return float(n)
    xc = x - x.mean()
    var = float(np.dot(xc, xc)) / n
    if var == 0:
        return float(n)
    size = 1 << (2 * n - 1).bit_length()
    f = np.fft.rfft(xc, size)
    acov = np.fft.irfft(f * np.conjugate(f), size)[:n] / n
    rho = acov / acov[0]
    pairs = rho[0 : n - 1 : 2][: (n - 1) // 2] + rho[1:n:2][: (n - 1) // 2]
    positive = np.nonzero(pairs <= 0)[0]
    m = positive[0] if positive.size else pairs.size
    pairs = np.minimum.accumulate(pairs[:m])
    tau = -1.0 + 2.0 * float(np.sum(pairs))
    return n / max(tau, 1.0 / n)


@dataclass(frozen=True)
class SamplerConfig:
    """
    Settings for :func:`rwm_sample`.

    ``init`` is ``"prior"`` (prior means on the unconstrained scale),
    ``"mode"`` (numerical posterior mode found from the prior means), or a
    mapping of constrained parameter values.
    """

    iterations: int = 100_000
    burn_in: int = 20_000
    seed: int = 0
    thin: int = 1
    init: str | Mapping[str, float] = "prior"
    adapt_interval: int = 100
    target_acceptance: float = 0.3

    def to_dict(self) -> dict[str, Any]:
        out = asdict(self)
        if isinstance(self.init, Mapping):
            out["init"] = dict(self.init)
        return out


@dataclass
class PosteriorChain:
    """
    Retained posterior draws of one model.

    ``draws`` are on the constrained scale; ``log_posterior`` holds the
    constrained-scale kernel ``log prior + log likelihood`` of each draw.
    """

    kind: Mechanism
    names: tuple[str, ...]
    draws: np.ndarray
    log_posterior: np.ndarray
    acceptance_rate: float
    seed: int
    burn_in: int
    thinning: int
    iterations: int
    unconstrained: np.ndarray | None = None
    extra: dict[str, Any] = field(default_factory=dict)

    def __len__(self) -> int:
        return self.draws.shape[0]

    def column(self, name: str) -> np.ndarray:
        return self.draws[:, self.names.index(name)]

    def summary(self) -> dict[str, Any]:
        """Moments and quantiles per parameter plus the sampler record."""
        params = {}
        for j, name in enumerate(self.names):
            col = self.draws[:, j]
            q = np.quantile(col, [0.025, 0.25, 0.5, 0.75, 0.975])
            params[name] = {
                "mean": float(np.mean(col)),
                "sd": float(np.std(col, ddof=1)) if col.size > 1 else 0.0,
                "q025": float(q[0]),
                "q25": float(q[1]),
                "median": float(q[2]),
                "q75": float(q[3]),
                "q975": float(q[4]),
                "ess": effective_sample_size(col),
            }
        return {
            "model": self.kind.model_id,
            "mechanism": self.kind.value,
            "n_draws": len(self),
            "acceptance_rate": self.acceptance_rate,
            "seed": self.seed,
            "iterations": self.iterations,
            "burn_in": self.burn_in,
            "thinning": self.thinning,
            "parameters": params,
        }

    def to_csv(self, path: str | os.PathLike) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["draw", *self.names, "log_posterior"])
            for i, (row, lp) in enumerate(zip(self.draws, self.log_posterior)):
                writer.writerow([i, *(repr(float(v)) for v in row), repr(float(lp))])

    @classmethod
    def from_csv(
        cls, path: str | os.PathLike, kind: Mechanism | str, **record: Any
    ) -> PosteriorChain:
        """Read a chain written by :meth:`to_csv`; sampler fields come from ``record``."""
        kind = mechanism_from_model_id(kind)
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader)
            rows = [[float(v) for v in r] for r in reader if r]
        names = tuple(header[1:-1])
        expected = GARCH_NAMES + kind.param_names
        if names != expected:
            raise ValueError(f"{path}: columns {names} do not match {kind.value} {expected}")
        arr = np.array(rows, dtype=float).reshape(-1, len(header))
        return cls(
            kind=kind,
            names=names,
            draws=arr[:, 1:-1],
            log_posterior=arr[:, -1],
            acceptance_rate=float(record.get("acceptance_rate", float("nan"))),
            seed=int(record.get("seed", 0)),
            burn_in=int(record.get("burn_in", 0)),
            thinning=int(record.get("thinning", 1)),
            iterations=int(record.get("iterations", arr.shape[0])),
        )


def _initial_point(posterior: GarchMPosterior, config: SamplerConfig) -> tuple[np.ndarray, np.ndarray | None]:
    init = config.init
    if isinstance(init, Mapping):
        theta = [init[n] for n in posterior.names]
        return posterior.to_unconstrained(theta), None
    if init == "prior":
        return posterior.prior_mean_point(), None
    if init == "mode":
        return posterior.find_mode()
    raise ValueError(f"unknown init {init!r}")


def rwm_sample(
    y: ExcessReturnSeries | Any,
    kind: Mechanism | str | SkewMechanism,
    prior: PriorSpec | None = None,
    config: SamplerConfig | None = None,
    *,
    init_policy: InitPolicy = "sample_variance",
) -> PosteriorChain:
    """
    Sample the posterior of ``(alpha, alpha0, alpha1, beta1, nu, eta)`` by
    adaptive random-walk Metropolis on the unconstrained scale.

    ``kind`` names the mechanism family; when a :class:`SkewMechanism` is
    given only its ``kind`` is used.
    """
    config = config or SamplerConfig()
    if isinstance(kind, SkewMechanism):
        kind = kind.kind
    posterior = GarchMPosterior(y, kind, prior, init_policy)
    x0, cov = _initial_point(posterior, config)
    if not math.isfinite(posterior.log_kernel(x0)):
        raise ValueError(f"non-finite log posterior at the initial point for {posterior.kind.value}")
    result = metropolis(
        posterior.log_kernel,
        x0,
        iterations=config.iterations,
        burn_in=config.burn_in,
        seed=config.seed,
        proposal_cov=cov,
        thin=config.thin,
        target_acceptance=config.target_acceptance,
        adapt_interval=config.adapt_interval,
    )
    draws = np.empty_like(result.samples)
    log_post = np.empty(result.samples.shape[0])
    for i, x in enumerate(result.samples):
        theta, logjac = posterior.from_unconstrained(x)
        draws[i] = theta
        log_post[i] = result.log_kernel[i] - logjac
    return PosteriorChain(
        kind=posterior.kind,
        names=posterior.names,
        draws=draws,
        log_posterior=log_post,
        acceptance_rate=result.acceptance_rate,
        seed=config.seed,
        burn_in=config.burn_in,
        thinning=config.thin,
        iterations=config.iterations,
        unconstrained=result.samples,
        extra={"burn_in_acceptance_rate": result.burn_in_acceptance_rate},
    )


# ---------------------------------------------------------------------------
# Risk premium
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RiskPremiumSummary:
    """Posterior summary of the risk-aversion coefficient ``alpha + E(z)``."""

    prob_positive: float
    mean: float
    sd: float
    quantiles: dict[str, float]
    n: int

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def summarize_risk_premium(values: Sequence[float]) -> RiskPremiumSummary:
    """Summarise draws of ``alpha + E(z)``; positivity is strict."""
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        raise ValueError("no draws to summarise")
    q = np.quantile(v, [0.025, 0.5, 0.975])
    return RiskPremiumSummary(
        prob_positive=float(np.mean(v > 0)),
        mean=float(np.mean(v)),
        sd=float(np.std(v, ddof=1)) if v.size > 1 else 0.0,
        quantiles={"q025": float(q[0]), "median": float(q[1]), "q975": float(q[2])},
        n=int(v.size),
    )


def risk_premium_values(chain: PosteriorChain) -> np.ndarray:
    """``alpha + E(z | nu, eta)`` for every draw of the chain."""
    if len(chain) == 0:
        raise ValueError("empty chain")
    alpha = chain.column("alpha")
    nu = chain.column("nu")
    if np.any(nu <= 1):
        raise ValueError("chain contains draws with nu <= 1; the mean of z does not exist")
    if chain.kind is Mechanism.SYMMETRIC:
        return alpha.copy()
    eta_cols = chain.draws[:, 5:]
    out = np.empty(len(chain))
    for i in range(len(chain)):
        mech = SkewMechanism(chain.kind, tuple(eta_cols[i]))
        if not mean_exists(mech.kind, mech.eta, nu[i]):
            raise ValueError(f"draw {i} has no finite mean of z")
        out[i] = alpha[i] + SkewedStudentT(nu[i], mech).mean
    return out


def risk_premium_summary(chain: PosteriorChain) -> RiskPremiumSummary:
    """Posterior probability that ``alpha + E(z) > 0`` plus moments."""
    return summarize_risk_premium(risk_premium_values(chain))
