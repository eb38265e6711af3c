"""Closed-form predictions for cycle statistics in sparse random graphs.

Poisson means for short cycle counts, certified evaluation of the
infinite products giving the limiting probability that all cycle
lengths from ell upward appear, explicit lower bounds for regular
graphs, and the circumference window of the barely supercritical
binomial graph.
"""
from __future__ import annotations

import math
from dataclasses import dataclass


def lambda_k(k: int, base: float, directed: bool = False) -> float:
    """Limiting Poisson mean of the number of k-cycles.

    base^k / (2k) for undirected graphs (base is d-1 for random
    d-regular, c for binomial with edge probability c/n); base^k / k
    for directed graphs, whose k-cycles have a smaller automorphism
    group.
    """
    if k < 3:
        raise ValueError(f"cycle length must be >= 3, got {k}")
    if base <= 0:
        raise ValueError(f"base must be positive, got {base}")
    denom = k if directed else 2 * k
    try:
        return float(base) ** k / denom
    except OverflowError:
        return math.inf


@dataclass(frozen=True)
class CertifiedProduct:
    """Truncated infinite product with a certified truncation error.

    ``value`` approximates the full product to within ``tail_bound``.
    """

    value: float
    truncation_k: int
    tail_bound: float
    c: float
    ell: int
    directed: bool


def theta(c: float, ell: int, directed: bool = False, tol: float = 1e-12) -> CertifiedProduct:
    """Probability that every cycle length >= ell appears, in the limit.

    Evaluates prod_{k>=ell} (1 - exp(-lambda_k)) with lambda_k =
    c^k/(2k) (or c^k/k directed), truncating at the first K whose
    certified tail bound drops below tol.

    The certificate: once lambda_k is increasing and rho = c*K/(K+1)
    exceeds 1, the terms x_k = exp(-lambda_k) beyond K decay at least
    geometrically with ratio q = exp(-lambda_{K+1}(rho-1)), so their
    sum is at most T = x_{K+1}/(1-q); with every x_k <= 1/2 the dropped
    factors change the log of the product by at most 2T, hence the
    value by at most 2T*e^{2T}.
    """
    if c <= 1:
        raise ValueError(f"the product needs c > 1, got {c}")
    if ell < 3:
        raise ValueError(f"starting length must be >= 3, got {ell}")
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    # lambda_k decreases until k ~ 1/log(c); only apply the geometric
    # majorant after the minimum
    k_star = max(ell, math.ceil(1.0 / (c - 1.0)) + 1)
    value = 1.0
    k = ell
    while True:
        lam = lambda_k(k, c, directed)
        value *= -math.expm1(-lam)
        if k >= k_star:
            rho = c * k / (k + 1)
            if rho > 1.0:
                lam_next = lambda_k(k + 1, c, directed)
                x_next = math.exp(-lam_next)
                if x_next <= 0.5:
                    q = math.exp(-lam_next * (rho - 1.0))
                    if q < 1.0:
                        t_sum = x_next / (1.0 - q)
                        bound = 2.0 * t_sum * math.exp(min(2.0 * t_sum, 50.0))
                        if bound <= tol:
                            if value >= 1.0:
                                # keep the value inside (0,1): the true
                                # product is < 1 but rounds to 1.0 here
                                value = math.nextafter(1.0, 0.0)
                                bound += 2.3e-16
                            elif value <= 0.0:
                                # underflow for c barely above 1; the
                                # true product is positive but far below
                                # the double range
                                value = math.nextafter(0.0, 1.0)
                                bound = max(bound, 1e-323)
                            return CertifiedProduct(
                                value=value,
                                truncation_k=k,
                                tail_bound=bound,
                                c=c,
                                ell=ell,
                                directed=directed,
                            )
        k += 1
        if k - ell > 200_000:
            raise RuntimeError(
                f"tail certificate did not converge for c={c}, ell={ell}"
            )


def poisson_joint_all_nonzero(lambdas: list[float]) -> float:
    """Probability that independent Poisson counts are all nonzero.

    The empty product is 1; any zero mean forces the result to 0.
    """
    out = 1.0
    for lam in lambdas:
        if lam < 0:
            raise ValueError(f"Poisson means must be >= 0, got {lam}")
        out *= -math.expm1(-lam)
    return out


def regular_lower_bound(d: int, ell: int) -> float:
    """Lower bound on the probability that a random d-regular graph
    contains all cycle lengths from ell to n: 1 - 2 exp(-(d-1)^ell /
    (2 ell)), clamped below at zero."""
    if d < 3:
        raise ValueError(f"degree must be >= 3, got {d}")
    if ell < 3:
        raise ValueError(f"length must be >= 3, got {ell}")
    return max(0.0, 1.0 - 2.0 * math.exp(-float(d - 1) ** ell / (2.0 * ell)))


def supercritical_window(epsilon: float, n: int) -> tuple[int, int]:
    """Circumference range of the barely supercritical binomial graph.

    For edge probability (1+epsilon)/n the longest cycle lands in
    [ceil(g0*eps^2*n), floor(g1*eps^2*n)] with g0 = 4/3 and
    g1 = (4/3)(1 + log(3/2)).
    """
    if epsilon < 0:
        raise ValueError(f"epsilon must be >= 0, got {epsilon}")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    g0 = 4.0 / 3.0
    g1 = g0 * (1.0 + math.log(1.5))
    x = epsilon * epsilon * n
    # round before ceil/floor so float dust cannot shift an exact integer
    lower = math.ceil(round(g0 * x, 9))
    upper = math.floor(round(g1 * x, 9))
    return lower, upper
