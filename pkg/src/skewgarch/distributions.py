"""
Standardised Student-t base distribution and skewing mechanisms.

A skewed density is built from a symmetric base density ``f`` with cdf ``F``
and a weighting density ``p`` on the unit interval,

    s(z) = f(z) * p(F(z)),

so that ``F(Z)`` has density ``p`` whenever ``Z`` has density ``s``.  Seven
weighting mechanisms are provided (see :class:`Mechanism`); each reduces to
the uniform weight ``p = 1`` at its symmetry point.
"""

from __future__ import annotations

import enum
import functools
import math
from collections.abc import Mapping
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

import numpy as np
from scipy import special

from .quadrature import tanh_sinh

__all__ = [
    "Mechanism",
    "SkewMechanism",
    "SkewedStudentT",
    "MODEL_IDS",
    "mechanism_from_model_id",
    "t_pdf",
    "t_logpdf",
    "t_cdf",
    "t_sf",
    "t_quantile",
    "skew_weight",
    "log_skew_weight_at",
    "skewed_pdf",
    "skewed_logpdf",
    "skewed_mean",
    "sample",
    "mean_exists",
]

# Parameters closer than this to an invariant boundary are rejected.
BOUNDARY_MARGIN = 1e-8


class Mechanism(str, enum.Enum):
    """Skewing mechanisms; the value is the serialised name."""

    SYMMETRIC = "symmetric"
    INVERSE_SCALE = "inverse_scale"
    HIDDEN_TRUNCATION = "hidden_truncation"
    BETA_ONE = "beta_one"
    BETA_TWO = "beta_two"
    BERNSTEIN2 = "bernstein2"
    FERREIRA_STEEL = "ferreira_steel"

    @property
    def param_names(self) -> tuple[str, ...]:
        return _PARAM_NAMES[self]

    @property
    def symmetry_point(self) -> tuple[float, ...]:
        return _SYMMETRY[self]

    @property
    def model_id(self) -> str:
        return _MODEL_ID[self]


_PARAM_NAMES = {
    Mechanism.SYMMETRIC: (),
    Mechanism.INVERSE_SCALE: ("gamma1",),
    Mechanism.HIDDEN_TRUNCATION: ("gamma2",),
    Mechanism.BETA_ONE: ("gamma3",),
    Mechanism.BETA_TWO: ("a", "b"),
    Mechanism.BERNSTEIN2: ("omega1", "omega2"),
    Mechanism.FERREIRA_STEEL: ("gamma4",),
}

_SYMMETRY = {
    Mechanism.SYMMETRIC: (),
    Mechanism.INVERSE_SCALE: (1.0,),
    Mechanism.HIDDEN_TRUNCATION: (0.0,),
    Mechanism.BETA_ONE: (1.0,),
    Mechanism.BETA_TWO: (1.0, 1.0),
    Mechanism.BERNSTEIN2: (1.0 / 3.0, 1.0 / 3.0),
    Mechanism.FERREIRA_STEEL: (0.0,),
}

MODEL_IDS = {
    "M0": Mechanism.SYMMETRIC,
    "M1": Mechanism.INVERSE_SCALE,
    "M2": Mechanism.HIDDEN_TRUNCATION,
    "M3": Mechanism.BETA_ONE,
    "M4": Mechanism.BETA_TWO,
    "M5": Mechanism.BERNSTEIN2,
    "M6": Mechanism.FERREIRA_STEEL,
}
_MODEL_ID = {kind: mid for mid, kind in MODEL_IDS.items()}


def mechanism_from_model_id(name: str | Mechanism) -> Mechanism:
    """Resolve ``"M4"``, ``"beta_two"`` or a :class:`Mechanism` to a mechanism."""
    if isinstance(name, Mechanism):
        return name
    key = str(name).strip()
    if key.upper() in MODEL_IDS:
        return MODEL_IDS[key.upper()]
    try:
        return Mechanism(key.lower())
    except ValueError:
        raise ValueError(f"unknown skewing mechanism {name!r}") from None


@dataclass(frozen=True)
class SkewMechanism:
    """
    A skewing mechanism together with its parameter vector.

    Parameters
    ----------
    kind : Mechanism
        Which weighting function to use.
    eta : tuple of float
        Parameters in the order given by ``kind.param_names``.
    """

    kind: Mechanism
    eta: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        kind = mechanism_from_model_id(self.kind)
        object.__setattr__(self, "kind", kind)
        eta = tuple(float(e) for e in np.atleast_1d(np.asarray(self.eta, dtype=float)))
        object.__setattr__(self, "eta", eta)
        if len(eta) != len(kind.param_names):
            raise ValueError(
                f"{kind.value} expects parameters {kind.param_names}, got {len(eta)} values"
            )
        _check_eta(kind, eta)

    @classmethod
    def symmetric(cls, kind: Mechanism | str = Mechanism.SYMMETRIC) -> SkewMechanism:
        """The mechanism ``kind`` at its symmetry point."""
        kind = mechanism_from_model_id(kind)
        return cls(kind, kind.symmetry_point)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> SkewMechanism:
        """Build from ``{"kind": str, "eta": {name: number}}``."""
        kind = mechanism_from_model_id(data["kind"])
        eta_map = data.get("eta") or {}
        unknown = set(eta_map) - set(kind.param_names)
        if unknown:
            raise ValueError(f"unknown parameters for {kind.value}: {sorted(unknown)}")
        missing = [n for n in kind.param_names if n not in eta_map]
        if missing:
            raise ValueError(f"missing parameters for {kind.value}: {missing}")
        return cls(kind, tuple(float(eta_map[n]) for n in kind.param_names))

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind.value,
            "eta": dict(zip(self.kind.param_names, self.eta)),
        }

    @property
    def is_symmetric(self) -> bool:
        return self.eta == self.kind.symmetry_point


def _check_eta(kind: Mechanism, eta: tuple[float, ...]) -> None:
    if not all(math.isfinite(e) for e in eta):
        raise ValueError(f"non-finite parameters for {kind.value}: {eta}")
    m = BOUNDARY_MARGIN
    if kind in (Mechanism.INVERSE_SCALE, Mechanism.BETA_ONE):
        if eta[0] <= m:
            raise ValueError(f"{kind.param_names[0]} must be > 0, got {eta[0]}")
    elif kind is Mechanism.BETA_TWO:
        if eta[0] <= m or eta[1] <= m:
            raise ValueError(f"a and b must be > 0, got {eta}")
    elif kind is Mechanism.BERNSTEIN2:
        w1, w2 = eta
        if not (m < w1 < 1 - m and m < w2 < 1 - m and w1 + w2 < 1 - m):
            raise ValueError(f"omega1, omega2 must lie in the open simplex, got {eta}")


# ---------------------------------------------------------------------------
# Student-t base
# ---------------------------------------------------------------------------


def _check_nu(nu: float) -> float:
    nu = float(nu)
    if not nu > 0:
        raise ValueError(f"degrees of freedom must be positive, got {nu}")
    return nu


def t_logpdf(z: Any, nu: float) -> Any:
    """Log density of the standardised Student-t (zero mode, unit scale)."""
    nu = _check_nu(nu)
    z = np.asarray(z, dtype=float)
    const = special.gammaln(0.5 * (nu + 1)) - special.gammaln(0.5 * nu) - 0.5 * math.log(math.pi * nu)
    a = np.abs(z) / math.sqrt(nu)
    with np.errstate(over="ignore", divide="ignore"):
        # log1p(a^2) = 2 log a to double precision once a^2 would overflow
        log_kernel = np.where(a < 1e150, np.log1p(a * a), 2.0 * np.log(a))
    return const - 0.5 * (nu + 1) * log_kernel


def t_pdf(z: Any, nu: float) -> Any:
    """Density ``Gamma((nu+1)/2) / (Gamma(nu/2) sqrt(pi nu)) (1 + z^2/nu)^(-(nu+1)/2)``."""
    return np.exp(t_logpdf(z, nu))


def _lower_tail(z: np.ndarray, nu: float) -> np.ndarray:
    # P(T <= -|z|) = I_x(nu/2, 1/2) / 2 with x = nu / (nu + z^2); exact in the tail.
    a = np.abs(z) / math.sqrt(nu)
    with np.errstate(over="ignore"):
        x = 1.0 / (1.0 + a * a)
    return 0.5 * special.betainc(0.5 * nu, 0.5, x)


def _half_mass(z: np.ndarray, nu: float) -> np.ndarray:
    # P(0 < T <= |z|) = I_y(1/2, nu/2) / 2 with y = z^2 / (nu + z^2); exact near 0.
    a = np.abs(z) / math.sqrt(nu)
    with np.errstate(over="ignore", divide="ignore"):
        y = 1.0 / (1.0 + 1.0 / (a * a))
    return 0.5 * special.betainc(0.5, 0.5 * nu, y)


def _tails(z: np.ndarray, nu: float) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(F(z), 1 - F(z))`` computed without cancellation."""
    z = np.asarray(z, dtype=float)
    flat = z.reshape(-1)
    # near the centre the half-mass form keeps the O(z) departure from 1/2
    central = np.abs(flat) < math.sqrt(nu)
    small = np.empty_like(flat)
    large = np.empty_like(flat)
    half = _half_mass(flat[central], nu)
    small[central] = 0.5 - half
    large[central] = 0.5 + half
    tail = _lower_tail(flat[~central], nu)
    small[~central] = tail
    large[~central] = 1.0 - tail
    small, large = small.reshape(z.shape), large.reshape(z.shape)
    lower = np.where(z < 0, small, large)
    upper = np.where(z < 0, large, small)
    return lower, upper


def _log_lower_tail(z: np.ndarray, nu: float) -> np.ndarray:
    """``log P(T <= -|z|)`` that stays finite where the probability underflows."""
    # I_x(a, 1/2) = x^a (1 - x)^(1/2) 2F1(a + 1/2, 1; a + 1; x) / (a B(a, 1/2))
    a = 0.5 * nu
    r = np.abs(z) / math.sqrt(nu)
    with np.errstate(divide="ignore", over="ignore"):
        log1p_r2 = np.where(r < 1e150, np.log1p(r * r), 2.0 * np.log(r))
        x = np.exp(-log1p_r2)
        log_1mx = np.where(r > 1e-150, 2.0 * np.log(r) - log1p_r2, -np.inf)
    return (
        -a * log1p_r2 + 0.5 * log_1mx - math.log(a) - special.betaln(a, 0.5) - math.log(2.0)
        + np.log(special.hyp2f1(a + 0.5, 1.0, a + 1.0, x))
    )


def _log_tail_fill(logp: np.ndarray, p: np.ndarray, z: Any, nu: float, upper: bool) -> np.ndarray:
    """Replace ``log p`` where the tail probability ``p`` underflowed to zero."""
    if z is None:
        return logp
    lost = (p == 0.0) & np.isfinite(z)
    if np.any(lost):
        zl = np.broadcast_to(z, p.shape)[lost]
        # only the far tail on the side of p can underflow
        logp = np.array(logp, dtype=float)
        logp[lost] = _log_lower_tail(zl, nu)
    return logp


def t_cdf(z: Any, nu: float) -> Any:
    """Cdf of the standardised Student-t via the regularised incomplete beta."""
    nu = _check_nu(nu)
    z = np.asarray(z, dtype=float)
    lower, _ = _tails(z, nu)
    return lower[()] if lower.ndim == 0 else lower


def t_sf(z: Any, nu: float) -> Any:
    """Survival function ``1 - t_cdf(z)``, accurate in the right tail."""
    nu = _check_nu(nu)
    z = np.asarray(z, dtype=float)
    _, upper = _tails(z, nu)
    return upper[()] if upper.ndim == 0 else upper


def _quantile_lower(d: np.ndarray, nu: float) -> np.ndarray:
    """Quantile at probability ``d`` in (0, 1/2]; returns values <= 0."""
    q = 2.0 * d
    out = np.empty_like(d)
    tail = q < 0.5
    if np.any(tail):
        # q = I_x(nu/2, 1/2), x = nu / (nu + z^2)
        x = special.betaincinv(0.5 * nu, 0.5, q[tail])
        out[tail] = -np.sqrt(nu * ((1.0 - x) / x))
    body = ~tail
    if np.any(body):
        # 1 - q = I_y(1/2, nu/2), y = z^2 / (nu + z^2); 1 - q is exact here
        y = special.betaincinv(0.5, 0.5 * nu, 1.0 - q[body])
        out[body] = -np.sqrt(nu * (y / (1.0 - y)))
    # One safeguarded Newton step on F(z) - d, kept only if it shrinks the
    # residual; protects against inversion error in the far tail.
    finite = np.isfinite(out) & (out < 0)
    if np.any(finite):
        z0 = out[finite]
        target = d[finite]
        r0 = _lower_tail(z0, nu) - target
        dens = np.exp(t_logpdf(z0, nu))
        with np.errstate(divide="ignore", invalid="ignore"):
            step = np.where(dens > 0, r0 / dens, 0.0)
        z1 = np.minimum(z0 - step, 0.0)
        # bracket: the step may not cross zero or move more than half the distance
        z1 = np.where(np.abs(z1 - z0) <= 0.5 * np.abs(z0), z1, z0)
        r1 = _lower_tail(z1, nu) - target
        out[finite] = np.where(np.abs(r1) < np.abs(r0), z1, z0)
    return out


def t_quantile(u: Any, nu: float) -> Any:
    """
    Quantile function of the standardised Student-t.

    Parameters
    ----------
    u : array_like
        Probabilities in the open unit interval.
    nu : float
        Degrees of freedom.
    """
    nu = _check_nu(nu)
    u = np.asarray(u, dtype=float)
    if np.any(~((u > 0) & (u < 1))):
        raise ValueError("probabilities must lie in the open interval (0, 1)")
    flat = np.atleast_1d(u).ravel()
    lower = flat <= 0.5
    d = np.where(lower, flat, 1.0 - flat)
    z = _quantile_lower(d, nu)
    z = np.where(lower, z, -z)
    z[flat == 0.5] = 0.0
    z = z.reshape(u.shape)
    return z[()] if z.ndim == 0 else z


# ---------------------------------------------------------------------------
# Skewing weights
# ---------------------------------------------------------------------------


def _log_weight_uvz(
    u: np.ndarray,
    v: np.ndarray,
    z: np.ndarray | None,
    mech: SkewMechanism,
    nu: float,
) -> np.ndarray:
    """
    Log of the weight ``p(u)`` given ``u``, ``v = 1 - u`` and ``z = F^{-1}(u)``.

    All three are passed so each mechanism can use the representation that
    avoids cancellation; ``z`` may be None for mechanisms that do not use it.
    """
    kind, eta = mech.kind, mech.eta
    if kind is Mechanism.SYMMETRIC:
        return np.zeros(np.shape(u))
    if kind is Mechanism.INVERSE_SCALE:
        g = eta[0]
        logc = math.log(2.0) - math.log(g + 1.0 / g)
        # I_1 = (0, 0.5), I_2 = [0.5, 1)
        scaled = np.where(u < 0.5, g * z, z / g)
        return logc + t_logpdf(scaled, nu) - t_logpdf(z, nu)
    if kind is Mechanism.HIDDEN_TRUNCATION:
        g = eta[0]
        if g == 0.0:
            return np.zeros(np.shape(u))
        gz = g * np.asarray(z, dtype=float)
        lower, _ = _tails(gz, nu)
        with np.errstate(divide="ignore"):
            return math.log(2.0) + _log_tail_fill(np.log(lower), lower, gz, nu, upper=False)
    if kind in (Mechanism.BETA_ONE, Mechanism.BETA_TWO):
        a, b = (eta[0], 1.0 / eta[0]) if kind is Mechanism.BETA_ONE else eta
        u, v = np.asarray(u, dtype=float), np.asarray(v, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            # far in a tail F(z) or 1 - F(z) underflows; its log does not
            log_u = _log_tail_fill(np.log(u), u, z, nu, upper=False)
            log_v = _log_tail_fill(np.log(v), v, z, nu, upper=True)
            out = (
                (0.0 if a == 1.0 else (a - 1.0) * log_u)
                + (0.0 if b == 1.0 else (b - 1.0) * log_v)
                - special.betaln(a, b)
            )
        return out
    if kind is Mechanism.BERNSTEIN2:
        w1, w2 = eta
        w3 = 1.0 - w1 - w2
        # sum_j w_j Be(u | j, 4 - j)
        p = 3.0 * w1 * v * v + 6.0 * w2 * u * v + 3.0 * w3 * u * u
        with np.errstate(divide="ignore"):
            return np.log(p)
    if kind is Mechanism.FERREIRA_STEEL:
        lam = math.tanh(eta[0])
        if lam == 0.0:
            return np.zeros(np.shape(u))
        c = u - v
        return np.log1p(lam * c * c * c)
    raise AssertionError(kind)


_NEEDS_Z = (Mechanism.INVERSE_SCALE, Mechanism.HIDDEN_TRUNCATION)


def skew_weight(u: Any, mech: SkewMechanism, nu: float | None = None) -> Any:
    """
    Evaluate the weighting density ``p(u | eta)`` on the unit interval.

    ``nu`` is only required by the mechanisms defined through the base
    distribution (inverse scale factors and hidden truncation).
    """
    u = np.asarray(u, dtype=float)
    if np.any(~((u > 0) & (u < 1))):
        raise ValueError("u must lie in the open interval (0, 1)")
    z = None
    if mech.kind in _NEEDS_Z:
        if nu is None:
            raise ValueError(f"{mech.kind.value} needs the degrees of freedom")
        z = t_quantile(u, nu)
    out = np.exp(_log_weight_uvz(u, 1.0 - u, z, mech, 1.0 if nu is None else nu))
    return out[()] if np.ndim(out) == 0 else out


def log_skew_weight_at(z: Any, mech: SkewMechanism, nu: float) -> Any:
    """``log p(F(z) | eta)`` evaluated directly at points ``z`` of the real line."""
    z = np.asarray(z, dtype=float)
    if mech.kind is Mechanism.SYMMETRIC:
        return np.zeros(z.shape)
    if mech.kind in _NEEDS_Z:
        # these weights depend on z only; skip the incomplete beta evaluation
        u = np.where(z < 0, 0.25, 0.75)
        return _log_weight_uvz(u, 1.0 - u, z, mech, nu)
    if mech.kind is Mechanism.FERREIRA_STEEL:
        # 2F(z) - 1 = sign(z) I_y(1/2, nu/2)
        c = np.sign(z) * 2.0 * _half_mass(z, nu)
        lam = math.tanh(mech.eta[0])
        return np.log1p(lam * c * c * c)
    u, v = _tails(z, nu)
    return _log_weight_uvz(u, v, z, mech, nu)


# ---------------------------------------------------------------------------
# Skewed Student-t
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SkewedStudentT:
    """
    Student-t with ``nu`` degrees of freedom skewed by ``mech``.

    The mean ``E(z)`` is computed on first access and cached.
    """

    nu: float
    mech: SkewMechanism = field(default_factory=SkewMechanism.symmetric)

    def __post_init__(self) -> None:
        nu = float(self.nu)
        if not (math.isfinite(nu) and nu > 1.0):
            raise ValueError(f"degrees of freedom must exceed 1, got {nu}")
        object.__setattr__(self, "nu", nu)

    def pdf(self, z: Any) -> Any:
        return skewed_pdf(z, self)

    def logpdf(self, z: Any) -> Any:
        return skewed_logpdf(z, self)

    @cached_property
    def mean(self) -> float:
        return skewed_mean(self)

    def sample(self, n: int, seed: int | np.random.Generator | None = None) -> np.ndarray:
        return sample(self, n, seed)


def skewed_logpdf(z: Any, dist: SkewedStudentT) -> Any:
    out = t_logpdf(z, dist.nu) + log_skew_weight_at(z, dist.mech, dist.nu)
    return out[()] if np.ndim(out) == 0 else out


def skewed_pdf(z: Any, dist: SkewedStudentT) -> Any:
    """Density ``f_t(z) * p(F_t(z) | eta)``."""
    return np.exp(skewed_logpdf(z, dist))


def mean_exists(kind: Mechanism, eta: tuple[float, ...], nu: float) -> bool:
    """Whether ``E(z)`` is finite for the given mechanism parameters."""
    if not nu > 1.0:
        return False
    if kind is Mechanism.BETA_ONE:
        a, b = eta[0], 1.0 / eta[0]
    elif kind is Mechanism.BETA_TWO:
        a, b = eta
    else:
        return True
    # left tail of s decays like |z|^(-nu*a - 1), right like z^(-nu*b - 1)
    return nu * a > 1.0 and nu * b > 1.0


@functools.lru_cache(maxsize=8192)
def _mean_cached(kind: Mechanism, eta: tuple[float, ...], nu: float) -> float:
    mech = SkewMechanism(kind, eta)
    if mech.is_symmetric:
        return 0.0
    if kind is Mechanism.INVERSE_SCALE:
        # closed form: E|T| (gamma - 1/gamma)
        g = eta[0]
        abs_mean = (
            2.0 * math.sqrt(nu) * math.exp(special.gammaln(0.5 * (nu + 1)) - special.gammaln(0.5 * nu))
            / (math.sqrt(math.pi) * (nu - 1.0))
        )
        return abs_mean * (g - 1.0 / g)

    def integrand(d: np.ndarray) -> np.ndarray:
        # u = d on the left half, u = 1 - d on the mirrored right half;
        # F^{-1}(1 - d) = -F^{-1}(d)
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            z = _quantile_lower(d, nu)
            left = np.exp(_log_weight_uvz(d, 1.0 - d, z, mech, nu))
            right = np.exp(_log_weight_uvz(1.0 - d, d, -z, mech, nu))
            out = z * (left - right)
        # the quantile overflows only for nu close to 1 at u < 1e-160
        return np.where(np.isfinite(out), out, 0.0)

    value, _ = tanh_sinh(integrand, 0.5, atol=1e-11, rtol=1e-11, max_level=12)
    return value


def skewed_mean(dist: SkewedStudentT) -> float:
    """
    Mean ``E(z) = int_0^1 F^{-1}(u) p(u) du`` of a skewed Student-t.

    Raises
    ------
    ValueError
        If the mean does not exist (``nu <= 1`` or a Beta weight whose
        endpoint singularity makes a tail too heavy).
    """
    nu, mech = dist.nu, dist.mech
    if not mean_exists(mech.kind, mech.eta, nu):
        raise ValueError(f"mean does not exist for nu={nu} and {mech.to_dict()}")
    return _mean_cached(mech.kind, mech.eta, nu)


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------


def _weight_bound(mech: SkewMechanism) -> float | None:
    if mech.kind is Mechanism.FERREIRA_STEEL:
        return 1.0 + abs(math.tanh(mech.eta[0]))
    return None


def _sample_u(mech: SkewMechanism, n: int, rng: np.random.Generator) -> np.ndarray:
    kind, eta = mech.kind, mech.eta
    if kind is Mechanism.SYMMETRIC:
        return rng.random(n)
    if kind is Mechanism.BETA_ONE:
        return rng.beta(eta[0], 1.0 / eta[0], n)
    if kind is Mechanism.BETA_TWO:
        return rng.beta(eta[0], eta[1], n)
    if kind is Mechanism.BERNSTEIN2:
        w = np.array([eta[0], eta[1], 1.0 - eta[0] - eta[1]])
        j = rng.choice(3, size=n, p=w) + 1
        return rng.beta(j, 4 - j)
    bound = _weight_bound(mech)
    if bound is None:
        raise ValueError(f"no direct sampler for {kind.value}")
    out = np.empty(n)
    filled = 0
    while filled < n:
        m = int((n - filled) * bound * 1.1) + 16
        cand = rng.random(m)
        cand = cand[cand > 0]
        accept = rng.random(cand.size) * bound < np.exp(
            _log_weight_uvz(cand, 1.0 - cand, None, mech, 1.0)
        )
        take = cand[accept][: n - filled]
        out[filled : filled + take.size] = take
        filled += take.size
    return out


def sample(
    dist: SkewedStudentT, n: int, seed: int | np.random.Generator | None = None
) -> np.ndarray:
    """
    Draw ``n`` i.i.d. variates from a skewed Student-t.

    Beta and Bernstein weights are sampled directly in the unit interval and
    mapped through the Student-t quantile; the Ferreira-Steel weight by
    rejection from the uniform envelope.  Inverse scale factors and hidden
    truncation use their exact stochastic representations on the real line.
    """
    n = int(n)
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    nu, mech = dist.nu, dist.mech
    if mech.kind is Mechanism.INVERSE_SCALE:
        g = mech.eta[0]
        t = np.abs(rng.standard_t(nu, n))
        right = rng.random(n) < g * g / (1.0 + g * g)
        return np.where(right, g * t, -t / g)
    if mech.kind is Mechanism.HIDDEN_TRUNCATION:
        x = rng.standard_t(nu, n)
        w = rng.standard_t(nu, n)
        return np.where(w < mech.eta[0] * x, x, -x)
    u = _sample_u(mech, n, rng)
    # Beta draws can round to exactly 0 or 1 for extreme shapes
    u = np.clip(u, np.nextafter(0.0, 1.0), np.nextafter(1.0, 0.0))
    return t_quantile(u, nu)
