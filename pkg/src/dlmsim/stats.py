"""Information-theoretic analysis of the Bernoulli processor.

Binomial likelihoods of event records, the log-likelihood ratio between
nearby angles together with its quadratic expansion, Fisher information of
a channel probability p(theta), the number of messages distinguishable at a
given confidence from N binary events, and the saturated Cramer-Rao
identity for the cos^2 channel law.
"""
from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class BinomialModel:
    """N independent events with success probability p."""

    n_trials: int
    p: float

    def __post_init__(self):
        if self.n_trials < 1:
            raise ValueError("n_trials must be >= 1")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")


@dataclass(frozen=True)
class EncodingCapacity:
    """Distinguishable-message count at a sigma-level confidence.

    m_d evaluates N / (2 * confidence_sigma * sigma) at the model's p;
    m_d_worst_case is the same figure at p = 1/2, the conventional flat
    quote sqrt(N) / (2 * confidence_sigma).
    """

    n_events: int
    confidence_sigma: float
    m_d: float
    m_d_worst_case: float


def log_binomial_pmf(n: int, model: BinomialModel) -> float:
    """Log-probability of observing n successes, via log-gamma.

    Degenerate models return 0.0 for the certain outcome and -inf for the
    impossible ones.
    """
    big_n, p = model.n_trials, model.p
    if not 0 <= n <= big_n:
        raise ValueError(f"n must lie in [0, {big_n}], got {n}")
    if p == 0.0:
        return 0.0 if n == 0 else -math.inf
    if p == 1.0:
        return 0.0 if n == big_n else -math.inf
    log_comb = (
        math.lgamma(big_n + 1) - math.lgamma(n + 1) - math.lgamma(big_n - n + 1)
    )
    return log_comb + n * math.log(p) + (big_n - n) * math.log1p(-p)


_DEGENERATE_P = 1e-12


def _check_open_unit(p: float) -> None:
    # Angles at multiples of pi/2 land within rounding of p = 0 or 1; treat
    # anything inside the degeneracy band as outside the open interval.
    if not _DEGENERATE_P < p < 1.0 - _DEGENERATE_P:
        raise ValueError(f"channel probability {p} outside (0, 1)")


def likelihood_ratio_expansion(
    theta: float, epsilon: float, n: float, n_total: int
) -> float:
    """Per-event log-likelihood ratio between angles theta+epsilon and theta.

    Uses the channel law p(theta) = cos^2(theta).  The observed success
    fraction n / n_total may be any real in (0, 1); the return value is
    (1/N) * ln P(n | theta+eps) / P(n | theta).
    """
    p0 = math.cos(theta) ** 2
    p1 = math.cos(theta + epsilon) ** 2
    _check_open_unit(p0)
    _check_open_unit(p1)
    frac = n / n_total
    return frac * math.log(p1 / p0) + (1.0 - frac) * math.log((1.0 - p1) / (1.0 - p0))


def likelihood_ratio_quadratic(
    theta: float, epsilon: float, n: float, n_total: int
) -> float:
    """Quadratic expansion of the per-event log-likelihood ratio.

    Magnitude eps^2 / (2 p (1-p)) * (dp/dtheta)^2 for p = cos^2 theta, with
    the sign of the exact ratio: positive when the data favor theta+epsilon,
    negative otherwise.  The sign flips as n / n_total crosses p(theta).
    """
    p = math.cos(theta) ** 2
    _check_open_unit(p)
    dp = -math.sin(2.0 * theta)
    magnitude = epsilon * epsilon / (2.0 * p * (1.0 - p)) * dp * dp
    exact = likelihood_ratio_expansion(theta, epsilon, n, n_total)
    return magnitude if exact > 0.0 else (-magnitude if exact < 0.0 else 0.0)


def fisher_information(p_fn, theta: float) -> float:
    """Fisher information of a binary channel with probability p_fn(theta).

    The derivative is a central finite difference with step 1e-6 refined by
    one Richardson extrapolation; p_fn must be smooth near theta and give a
    probability strictly inside (0, 1) at theta.
    """
    p = p_fn(theta)
    _check_open_unit(p)
    h = 1e-6
    d_h = (p_fn(theta + h) - p_fn(theta - h)) / (2.0 * h)
    d_h2 = (p_fn(theta + h / 2.0) - p_fn(theta - h / 2.0)) / h
    deriv = (4.0 * d_h2 - d_h) / 3.0
    return deriv * deriv / (p * (1.0 - p))


def distinguishable_messages(
    n_events: int, confidence_sigma: float, p: float
) -> EncodingCapacity:
    """Messages encodable in N binary events at the given sigma level.

    With count variance sigma^2 = N p (1-p), adjacent messages must sit
    2 * confidence_sigma * sigma apart, giving N / (2 c sigma) of them; the
    worst-case convention evaluates the same expression at p = 1/2.
    """
    if n_events < 1:
        raise ValueError("n_events must be >= 1")
    if confidence_sigma <= 0.0:
        raise ValueError("confidence_sigma must be > 0")
    _check_open_unit(p)
    sigma = math.sqrt(n_events * p * (1.0 - p))
    return EncodingCapacity(
        n_events=n_events,
        confidence_sigma=confidence_sigma,
        m_d=n_events / (2.0 * confidence_sigma * sigma),
        m_d_worst_case=math.sqrt(n_events) / (2.0 * confidence_sigma),
    )


def dlm_message_capacity(n_events: int) -> int:
    """Messages the learning machine distinguishes in N events: N + 1.

    Every density K/N for K = 0..N is reachable exactly in the stationary
    regime, against the sqrt(N) scaling of the Bernoulli processor.
    """
    if n_events < 1:
        raise ValueError("n_events must be >= 1")
    return n_events + 1


def cramer_rao_identity(theta: float) -> tuple[float, float]:
    """Both sides of the saturated Cramer-Rao bound for p = cos^2 theta.

    Returns (Var(x) * I_F, (df/dtheta)^2) where x = +/-1 with mean
    f(theta) = cos(2 theta).  The two sides are computed through different
    expressions and agree identically; the bound carries no information for
    this channel.
    """
    p = math.cos(theta) ** 2
    _check_open_unit(p)
    f = 2.0 * p - 1.0
    dp = -math.sin(2.0 * theta)
    # Literal sums over the two outcomes x = +1 (prob p) and x = -1 (prob 1-p).
    var_x = (1.0 - f) ** 2 * p + (-1.0 - f) ** 2 * (1.0 - p)
    fisher = dp * dp / p + (-dp) * (-dp) / (1.0 - p)
    df = 2.0 * dp
    return var_x * fisher, df * df
