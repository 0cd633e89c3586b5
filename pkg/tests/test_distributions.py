from __future__ import annotations

import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, stats

from grids import ASYMMETRIC_GRID, NU_VALUES
from skewgarch.distributions import (
    MODEL_IDS,
    Mechanism,
    SkewedStudentT,
    SkewMechanism,
    mean_exists,
    mechanism_from_model_id,
    sample,
    skew_weight,
    skewed_mean,
    skewed_pdf,
    t_cdf,
    t_logpdf,
    t_pdf,
    t_quantile,
)

M = Mechanism

# Reference values computed once with mpmath at 50 digits and frozen here.
T_PDF_1_NU3 = 0.20674833578317201857  # gamma-function formula
T_CDF_25_NU7 = 0.97950389070712355156  # 1/2 + quadrature of the density over (0, 2.5)
T_Q09_NU4 = 1.5332062740589439108  # bisection on the quadrature cdf
BETA_HALF_2_HALF = 0.53033008588991064330  # Be(0.5 | 2, 0.5)
S_BETATWO_21_NU8_Z05 = 0.46109014679280925138  # f(0.5) * 2 F(0.5), nu = 8
S_HIDDEN_2_NU5_Z07 = 0.51032669567377778577  # f(0.7) * 2 F(1.4), nu = 5
S_INVSCALE_2_NU5 = {0.7: 0.28241512769876308184, -0.7: 0.11259163831593165649}
MEAN_INVSCALE_2_NU5 = 1.4235250868343541170  # z-space quadrature
MEAN_BETATWO_31_NU10 = 0.92991837096926977798  # z-space quadrature


def mirror(mech: SkewMechanism) -> SkewMechanism:
    """Parameters whose weight is the reflection u -> 1 - u of ``mech``'s."""
    k, e = mech.kind, mech.eta
    if k in (M.INVERSE_SCALE, M.BETA_ONE):
        return SkewMechanism(k, (1.0 / e[0],))
    if k in (M.HIDDEN_TRUNCATION, M.FERREIRA_STEEL):
        return SkewMechanism(k, (-e[0],))
    if k is M.BETA_TWO:
        return SkewMechanism(k, (e[1], e[0]))
    if k is M.BERNSTEIN2:
        return SkewMechanism(k, (1.0 - e[0] - e[1], e[1]))
    return mech


# --- Student-t base -------------------------------------------------------


def test_t_pdf_values():
    assert t_pdf(0.0, 1.0) == pytest.approx(1.0 / math.pi, rel=1e-15)
    assert t_pdf(1.7, 5.0) == t_pdf(-1.7, 5.0)
    assert t_pdf(1.0, 3.0) == pytest.approx(T_PDF_1_NU3, rel=1e-14)
    z = np.linspace(-5, 5, 101)
    assert np.argmax(t_pdf(z, 4.0)) == 50
    np.testing.assert_allclose(t_logpdf(z, 4.0), np.log(t_pdf(z, 4.0)), rtol=1e-14)
    with pytest.raises(ValueError):
        t_pdf(0.0, 0.0)


def test_t_cdf_values():
    for nu in (0.5, 1.0, 7.0, 300.0):
        assert t_cdf(0.0, nu) == 0.5
    assert t_cdf(1.0, 1.0) == pytest.approx(0.75, abs=1e-15)
    assert t_cdf(2.5, 7.0) == pytest.approx(T_CDF_25_NU7, abs=1e-15)
    z = np.concatenate([np.linspace(-30, 30, 601), [-1e-10, 1e-12, 1e-300]])
    np.testing.assert_allclose(t_cdf(z, 3.3), stats.t.cdf(z, 3.3), rtol=1e-12, atol=1e-300)
    assert np.all(np.diff(t_cdf(np.sort(z), 3.3)) >= 0)
    with pytest.raises(ValueError):
        t_cdf(1.0, -1.0)


def test_t_quantile_values():
    assert t_quantile(0.5, 3.0) == 0.0
    assert t_quantile(0.75, 1.0) == pytest.approx(1.0, abs=1e-14)
    assert t_quantile(0.9, 4.0) == pytest.approx(T_Q09_NU4, abs=1e-14)
    for bad in (0.0, 1.0, -0.1, np.nan):
        with pytest.raises(ValueError):
            t_quantile(bad, 3.0)


@pytest.mark.parametrize("nu", [1.0, 1.5, 2.0, 5.0, 30.0, 200.0])
def test_quantile_inverts_cdf(nu):
    u = np.concatenate([[1e-6], np.arange(0.01, 1.0, 0.01), [1 - 1e-6]])
    assert np.max(np.abs(t_cdf(t_quantile(u, nu), nu) - u)) < 1e-10


# --- mechanisms -------------------------------------------------------------


def test_model_ids():
    assert [MODEL_IDS[f"M{i}"] for i in range(7)] == list(Mechanism)
    assert mechanism_from_model_id("m4") is M.BETA_TWO
    assert mechanism_from_model_id("bernstein2") is M.BERNSTEIN2
    with pytest.raises(ValueError):
        mechanism_from_model_id("M9")


@pytest.mark.parametrize(
    "kind, eta",
    [
        (M.INVERSE_SCALE, (0.0,)),
        (M.INVERSE_SCALE, (1e-9,)),
        (M.BETA_ONE, (-1.0,)),
        (M.BETA_TWO, (1.0, 0.0)),
        (M.BERNSTEIN2, (0.6, 0.4)),
        (M.BERNSTEIN2, (0.0, 0.5)),
        (M.HIDDEN_TRUNCATION, (np.inf,)),
        (M.SYMMETRIC, (1.0,)),
        (M.BETA_TWO, (1.0,)),
    ],
)
def test_invalid_eta_rejected(kind, eta):
    with pytest.raises(ValueError):
        SkewMechanism(kind, eta)


def test_json_shape_roundtrip():
    mech = SkewMechanism(M.BETA_TWO, (3.0, 1.0))
    data = mech.to_dict()
    assert data == {"kind": "beta_two", "eta": {"a": 3.0, "b": 1.0}}
    assert SkewMechanism.from_dict(data) == mech
    assert SkewMechanism.from_dict({"kind": "symmetric"}).is_symmetric


def test_weight_examples():
    u = np.linspace(0.01, 0.99, 50)
    np.testing.assert_array_equal(skew_weight(u, SkewMechanism(M.HIDDEN_TRUNCATION, (0.0,)), 4.0), 1.0)
    bern = SkewMechanism(M.BERNSTEIN2, (1 / 3, 1 / 3))
    assert skew_weight(0.3, bern) == pytest.approx(1.0, abs=1e-15)
    assert skew_weight(0.5, SkewMechanism(M.BETA_ONE, (2.0,))) == pytest.approx(BETA_HALF_2_HALF, rel=1e-14)
    # the median sits in the right-hand piece and gets the constant C
    g = 3.0
    inv = SkewMechanism(M.INVERSE_SCALE, (g,))
    assert skew_weight(0.5, inv, 6.0) == pytest.approx(2.0 / (g + 1.0 / g), rel=1e-15)
    with pytest.raises(ValueError):
        skew_weight(0.5, inv)
    with pytest.raises(ValueError):
        skew_weight(1.0, bern)


@pytest.mark.parametrize("g", [0.5, 1.0, 2.0, 4.0])
def test_inverse_scale_constant_normalises(g):
    mech = SkewMechanism(M.INVERSE_SCALE, (g,))
    dist = SkewedStudentT(7.0, mech)
    f = lambda z: float(dist.pdf(z))  # noqa: E731
    total = integrate.quad(f, -np.inf, 0)[0] + integrate.quad(f, 0, np.inf)[0]
    assert total == pytest.approx(1.0, abs=1e-10)


def _left_half_mass(mech: SkewMechanism, nu: float) -> float:
    # int_0^1/2 p(u) du with u = exp(-s)/2, which resolves mass piled at u -> 0
    def integrand(s: float) -> float:
        u = 0.5 * math.exp(-s)
        return float(skew_weight(u, mech, nu)) * u if u > 0 else 0.0

    spans = ((0.0, 5.0), (5.0, 60.0), (60.0, 745.0))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        return sum(integrate.quad(integrand, a, b, epsabs=1e-14, epsrel=1e-12, limit=200)[0] for a, b in spans)


_WEIGHT_CASES = [
    (kind, eta, nu)
    for kind, points in ASYMMETRIC_GRID.items()
    for eta in points
    # only the first two mechanisms depend on nu through the weight
    for nu in (NU_VALUES if kind in (M.INVERSE_SCALE, M.HIDDEN_TRUNCATION) else (5.0,))
]


def test_weight_mirror_identity():
    u = np.linspace(0.001, 0.999, 999)
    for kind, eta, nu in _WEIGHT_CASES:
        mech = SkewMechanism(kind, eta)
        np.testing.assert_allclose(
            skew_weight(u, mech, nu), skew_weight(1 - u, mirror(mech), nu), rtol=1e-10, err_msg=str(mech)
        )


def test_weight_normalisation_on_grid():
    worst = 0.0
    for kind, eta, nu in _WEIGHT_CASES:
        mech = SkewMechanism(kind, eta)
        # the right half is the left half of the mirrored weight
        total = _left_half_mass(mech, nu) + _left_half_mass(mirror(mech), nu)
        worst = max(worst, abs(total - 1.0))
    assert worst < 1e-8


def test_weight_nonnegative_and_bounded_mechanisms():
    u = np.linspace(1e-6, 1 - 1e-6, 2001)
    for g in (-5.0, -0.3, 0.3, 5.0):
        w = skew_weight(u, SkewMechanism(M.FERREIRA_STEEL, (g,)))
        assert np.all(w >= 0) and np.all(w <= 1 + abs(math.tanh(g)) + 1e-15)
    w = skew_weight(u, SkewMechanism(M.BERNSTEIN2, (0.7, 0.2)))
    assert np.all(w >= 0) and np.all(w <= 3.0)


# --- skewed density ----------------------------------------------------------


def test_skewed_pdf_examples():
    z = np.linspace(-8, 8, 33)
    sym = SkewedStudentT(4.0, SkewMechanism.symmetric())
    np.testing.assert_array_equal(skewed_pdf(z, sym), t_pdf(z, 4.0))
    ht0 = SkewedStudentT(6.0, SkewMechanism(M.HIDDEN_TRUNCATION, (0.0,)))
    assert skewed_pdf(1.3, ht0) == t_pdf(1.3, 6.0)
    b21 = SkewedStudentT(8.0, SkewMechanism(M.BETA_TWO, (2.0, 1.0)))
    assert skewed_pdf(0.5, b21) == pytest.approx(S_BETATWO_21_NU8_Z05, rel=1e-14)
    ht2 = SkewedStudentT(5.0, SkewMechanism(M.HIDDEN_TRUNCATION, (2.0,)))
    assert ht2.pdf(0.7) == pytest.approx(S_HIDDEN_2_NU5_Z07, rel=1e-14)
    inv = SkewedStudentT(5.0, SkewMechanism(M.INVERSE_SCALE, (2.0,)))
    for zz, ref in S_INVSCALE_2_NU5.items():
        assert inv.pdf(zz) == pytest.approx(ref, rel=1e-14)


def test_logpdf_deep_tails_stay_finite():
    dist = SkewedStudentT(3.0, SkewMechanism(M.BETA_TWO, (0.6, 3.0)))
    lp = dist.logpdf(np.array([-1e6, -50.0, 50.0, 1e6]))
    assert np.all(np.isfinite(lp))


# log s(z) where the Student-t tail probability underflows (mpmath, 50 digits)
LOGPDF_BETATWO_04_00898_NU130 = {300.0: -41.890165883528470782, 1e6: -144.68841383974940978}
LOGPDF_HIDDEN_2_NU130_M300 = -947.28328984510674116


def test_logpdf_where_tail_probability_underflows():
    dist = SkewedStudentT(130.0, SkewMechanism(M.BETA_TWO, (0.4, 0.0898)))
    for z, ref in LOGPDF_BETATWO_04_00898_NU130.items():
        assert dist.logpdf(z) == pytest.approx(ref, rel=1e-12)
    ht = SkewedStudentT(130.0, SkewMechanism(M.HIDDEN_TRUNCATION, (2.0,)))
    assert ht.logpdf(-300.0) == pytest.approx(LOGPDF_HIDDEN_2_NU130_M300, rel=1e-12)


@given(
    nu=st.floats(1.01, 100.0),
    z=st.floats(-50.0, 50.0),
    kind=st.sampled_from([k for k in Mechanism if k is not M.SYMMETRIC]),
)
@settings(max_examples=200, deadline=None)
def test_symmetry_point_collapses(nu, z, kind):
    dist = SkewedStudentT(nu, SkewMechanism(kind, kind.symmetry_point))
    assert abs(dist.pdf(z) - t_pdf(z, nu)) <= 1e-12 * max(1.0, t_pdf(z, nu))


def test_density_normalisation_subset():
    for kind in (M.HIDDEN_TRUNCATION, M.BERNSTEIN2, M.FERREIRA_STEEL):
        for eta in ASYMMETRIC_GRID[kind][::5]:
            dist = SkewedStudentT(5.0, SkewMechanism(kind, eta))
            f = lambda z: float(dist.pdf(z))  # noqa: E731
            total = integrate.quad(f, -np.inf, 0, epsabs=1e-12)[0] + integrate.quad(f, 0, np.inf, epsabs=1e-12)[0]
            assert total == pytest.approx(1.0, abs=1e-9)


# --- mean ---------------------------------------------------------------------


@pytest.mark.parametrize("kind", list(Mechanism))
def test_mean_zero_at_symmetry(kind):
    assert abs(SkewedStudentT(3.0, SkewMechanism(kind, kind.symmetry_point)).mean) < 1e-8


def test_mean_reference_values():
    inv = SkewedStudentT(5.0, SkewMechanism(M.INVERSE_SCALE, (2.0,)))
    assert inv.mean == pytest.approx(MEAN_INVSCALE_2_NU5, abs=1e-12)
    b31 = SkewedStudentT(10.0, SkewMechanism(M.BETA_TWO, (3.0, 1.0)))
    assert skewed_mean(b31) == pytest.approx(MEAN_BETATWO_31_NU10, abs=1e-12)
    assert SkewedStudentT(5.0, SkewMechanism(M.HIDDEN_TRUNCATION, (2.0,))).mean > 0


@pytest.mark.parametrize(
    "kind, eta, nu",
    [
        (M.HIDDEN_TRUNCATION, (-1.3,), 1.5),
        (M.BETA_ONE, (0.7,), 2.5),
        (M.BERNSTEIN2, (0.2, 0.5), 1.6),
        (M.FERREIRA_STEEL, (0.9,), 3.0),
        (M.BETA_TWO, (0.9, 2.2), 4.0),
    ],
)
def test_mean_matches_z_space_quadrature(kind, eta, nu):
    dist = SkewedStudentT(nu, SkewMechanism(kind, eta))
    f = lambda z: z * float(dist.pdf(z))  # noqa: E731
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        ref = integrate.quad(f, -np.inf, 0, epsabs=1e-13, limit=500)[0] + integrate.quad(
            f, 0, np.inf, epsabs=1e-13, limit=500
        )[0]
    assert dist.mean == pytest.approx(ref, abs=1e-8)


def test_mean_existence():
    assert not mean_exists(M.BETA_TWO, (0.3, 2.0), 3.0)
    assert mean_exists(M.BETA_TWO, (0.4, 2.0), 3.0)
    with pytest.raises(ValueError):
        SkewedStudentT(3.0, SkewMechanism(M.BETA_TWO, (0.3, 2.0))).mean
    with pytest.raises(ValueError):
        SkewedStudentT(1.0, SkewMechanism.symmetric())


# --- sampling -------------------------------------------------------------------


def test_sampling_deterministic():
    dist = SkewedStudentT(5.0, SkewMechanism(M.FERREIRA_STEEL, (1.2,)))
    a = sample(dist, 1000, 42)
    assert np.array_equal(a, sample(dist, 1000, 42))
    assert not np.array_equal(a, sample(dist, 1000, 43))
    with pytest.raises(ValueError):
        sample(dist, 0, 1)


def test_symmetric_sample_skewness():
    x = sample(SkewedStudentT(20.0, SkewMechanism.symmetric()), 10**6, 7)
    se = math.sqrt(6.0 / x.size)  # normal-theory SE; nu=20 has a finite sixth moment
    assert abs(stats.skew(x)) < 3 * se * 1.5


@pytest.mark.parametrize(
    "kind, eta",
    [
        (M.BETA_TWO, (2.0, 1.0)),
        (M.INVERSE_SCALE, (1.7,)),
        (M.HIDDEN_TRUNCATION, (-2.0,)),
        (M.BETA_ONE, (0.6,)),
        (M.BERNSTEIN2, (0.1, 0.3)),
        (M.FERREIRA_STEEL, (2.0,)),
    ],
)
def test_pit_of_samples_has_weight_law(kind, eta):
    nu = 6.0
    mech = SkewMechanism(kind, eta)
    u = t_cdf(sample(SkewedStudentT(nu, mech), 20000, 11), nu)
    grid = np.linspace(1e-9, 1 - 1e-9, 4001)
    cdf = np.concatenate([[0.0], integrate.cumulative_trapezoid(skew_weight(grid, mech, nu), grid)])
    cdf /= cdf[-1]
    ref = lambda q: np.interp(q, grid, cdf)  # noqa: E731
    if kind is M.BETA_TWO:
        ref = stats.beta(*eta).cdf
    elif kind is M.BETA_ONE:
        ref = stats.beta(eta[0], 1.0 / eta[0]).cdf
    assert stats.kstest(u, ref).pvalue > 0.01
