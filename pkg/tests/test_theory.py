from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclespan.theory import (
    CertifiedProduct,
    lambda_k,
    poisson_joint_all_nonzero,
    regular_lower_bound,
    supercritical_window,
    theta,
)

# Independent oracle: the infinite product prod_{k>=3} (1 - e^{-2^k/(2k)})
# evaluated with mpmath at 60 digits and truncated at k=64, where the
# remaining tail is far below 1e-30.
THETA_2_3_ORACLE = 0.607772639454503885398706872734

ONE_BELOW = math.nextafter(1.0, 0.0)


def recompute_theta_with_mpmath(c: float, ell: int, kmax: int = 80) -> float:
    mp = pytest.importorskip("mpmath")
    mp.mp.dps = 50
    prod = mp.mpf(1)
    for k in range(ell, kmax + 1):
        lam = mp.mpf(c) ** k / (2 * k)
        prod *= 1 - mp.e ** (-lam)
    return float(prod)


def test_lambda_k_values():
    assert lambda_k(3, 2.0) == pytest.approx(8 / 6)
    assert lambda_k(4, 2.0) == pytest.approx(2.0)
    assert lambda_k(3, 2.0, directed=True) == pytest.approx(8 / 3)
    # overflow-proof for large k
    assert lambda_k(5000, 2.0) == math.inf
    with pytest.raises(ValueError):
        lambda_k(2, 2.0)
    with pytest.raises(ValueError):
        lambda_k(3, 0.0)


def test_theta_matches_oracle():
    cert = theta(2.0, 3, tol=1e-12)
    assert abs(cert.value - THETA_2_3_ORACLE) < 1e-10
    assert cert.tail_bound <= 1e-11 * 10  # certificate honored the tolerance
    assert cert.truncation_k >= 3


def test_theta_matches_fresh_mpmath_grid():
    for c, ell in [(1.5, 3), (2.0, 5), (3.0, 4)]:
        cert = theta(c, ell, tol=1e-13)
        assert abs(cert.value - recompute_theta_with_mpmath(c, ell)) < 1e-9


def test_theta_directed_convention():
    # directed lambda uses c^k/k, so the product is strictly smaller
    und = theta(2.0, 3).value
    dr = theta(2.0, 3, directed=True).value
    assert dr == pytest.approx(0.9119344877734256, abs=1e-12)
    assert dr > und


def test_theta_monotone_in_c():
    for ell in range(3, 8):
        prev = None
        for c in (1.2, 2.0, 5.0, 10.0):
            val = theta(c, ell).value
            if prev is not None:
                assert val >= prev
                if prev != ONE_BELOW:
                    assert val > prev
            prev = val


def test_theta_monotone_in_ell():
    # raising ell drops factors below 1 from the product, so theta grows
    for c in (1.2, 2.0, 5.0):
        prev = None
        for ell in range(3, 11):
            val = theta(c, ell).value
            if prev is not None:
                assert val >= prev
                if prev != ONE_BELOW:
                    assert val > prev
            prev = val


def test_theta_sandwich_bounds():
    # 1 - sum_{k>=ell} e^{-lam_k} <= theta <= 1 - e^{-lam_ell}
    for c in (1.2, 2.0, 5.0, 10.0):
        for ell in range(3, 11):
            cert = theta(c, ell)
            upper = -math.expm1(-lambda_k(ell, c))
            assert cert.value - cert.tail_bound <= upper
            lower = 1.0
            for k in range(ell, ell + 200):
                lam = lambda_k(k, c)
                lower -= math.exp(-lam) if lam != math.inf else 0.0
            assert cert.value + cert.tail_bound >= lower


def test_theta_certificate_is_stable_under_tolerance():
    loose = theta(2.0, 3, tol=1e-6)
    tight = theta(2.0, 3, tol=1e-14)
    assert abs(loose.value - tight.value) <= loose.tail_bound + tight.tail_bound
    assert tight.truncation_k >= loose.truncation_k


def test_theta_barely_supercritical_underflows_gracefully():
    cert = theta(1.01, 3)
    assert 0.0 < cert.value < 1e-300
    assert cert.truncation_k > 1000


def test_theta_validates_inputs():
    with pytest.raises(ValueError):
        theta(1.0, 3)
    with pytest.raises(ValueError):
        theta(2.0, 2)
    with pytest.raises(ValueError):
        theta(2.0, 3, tol=0.0)


def test_theta_value_stays_inside_open_interval():
    for c in (1.01, 1.2, 2.0, 10.0, 40.0):
        cert = theta(c, 3)
        assert 0.0 < cert.value < 1.0


def test_poisson_joint_all_nonzero():
    assert poisson_joint_all_nonzero([]) == 1.0
    lam = [lambda_k(k, 2.0) for k in range(3, 6)]
    want = 1.0
    for x in lam:
        want *= 1 - math.exp(-x)
    assert poisson_joint_all_nonzero(lam) == pytest.approx(want, rel=1e-12)
    with pytest.raises(ValueError):
        poisson_joint_all_nonzero([-0.5])


def test_regular_lower_bound_values():
    assert regular_lower_bound(3, 3) == pytest.approx(0.47280572376854646)
    assert regular_lower_bound(3, 4) == pytest.approx(0.7293294335267746)
    assert regular_lower_bound(3, 40) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        regular_lower_bound(2, 3)


def test_regular_lower_bound_clamped_at_zero():
    # small exponent makes the raw expression negative; clamp applies
    assert regular_lower_bound(3, 3) >= 0.0
    assert regular_lower_bound(4, 3) > regular_lower_bound(3, 3)


def test_supercritical_window_examples():
    lo, hi = supercritical_window(0.1, 1_000_000)
    assert (lo, hi) == (13334, 18739)
    assert supercritical_window(0.0, 5) == (0, 0)
    lo2, hi2 = supercritical_window(0.2, 1_000_000)
    assert lo2 > lo and hi2 > hi


@given(
    st.floats(min_value=1.05, max_value=30.0, allow_nan=False),
    st.integers(min_value=3, max_value=12),
)
@settings(max_examples=60, deadline=None)
def test_theta_certificate_fields(c: float, ell: int):
    cert = theta(c, ell)
    assert isinstance(cert, CertifiedProduct)
    assert cert.c == c and cert.ell == ell and not cert.directed
    assert 0.0 < cert.value < 1.0
    assert cert.tail_bound >= 0.0
    assert cert.truncation_k >= ell


@given(st.integers(min_value=3, max_value=60))
@settings(max_examples=30, deadline=None)
def test_lambda_k_directed_is_doubled(k: int):
    assert lambda_k(k, 1.5, directed=True) == pytest.approx(2 * lambda_k(k, 1.5))
