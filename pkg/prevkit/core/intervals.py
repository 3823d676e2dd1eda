"""
Interval estimators for the true prevalence
===========================================

 * :func:`wald_ci` -- symmetric normal-theory interval around ``π̂_c``.
 * :func:`jeffreys_adjusted_gold` -- Jeffreys credible interval for a perfect
   test, scaled by ``a = √FPC`` and shifted by ``b = π̂(1 − a)`` so that it
   reflects the finite population.
 * :func:`credible_misclass` -- the same construction with scale
   ``a′ = √(v3 / v1)`` followed by the Rogan-Gladen correction of both
   endpoints.

All intervals are intersected with [0, 1].
"""
from __future__ import absolute_import, division, print_function, unicode_literals

import math
from collections import namedtuple

from scipy.special import ndtri

from . import estimators
from .betadist import posterior_quantiles
from .errors import InvalidParameter

WALD = 'wald'
JEFFREYS_ADJUSTED_GOLD = 'jeffreys_adjusted_gold'
CREDIBLE_MISCLASS = 'credible_misclass'

METHODS = (WALD, JEFFREYS_ADJUSTED_GOLD, CREDIBLE_MISCLASS)


class Interval(namedtuple('Interval', ['lower', 'upper', 'method', 'nominal_level', 'scale', 'shift'])):
    """
    Closed interval on [0, 1]. ``scale`` and ``shift`` are the construction
    scalars (a, b or a′, b′); they are ``None`` for Wald intervals.
    """
    __slots__ = ()

    @property
    def width(self):
        return self.upper - self.lower


def _check_alpha(alpha):
    if not (0.0 < alpha < 1.0):
        raise InvalidParameter("alpha must lie in (0, 1), got {!r}".format(alpha))
    return float(alpha)


def _clip(value):
    return min(1.0, max(0.0, value))


def _make_interval(lower, upper, method, alpha, scale=None, shift=None):
    lower, upper = _clip(lower), _clip(upper)
    # The endpoint maps are monotone; a reversal is floating point noise
    if lower > upper:
        lower, upper = upper, lower
    return Interval(lower, upper, method, 1.0 - alpha, scale, shift)


def normal_quantile(q):
    """Standard normal inverse CDF."""
    if not (0.0 < q < 1.0):
        raise InvalidParameter("q must lie in (0, 1), got {!r}".format(q))
    return float(ndtri(q))


def covers(interval, value):
    return interval.lower <= value <= interval.upper


def wald_ci(pi_c_hat, se, alpha):
    alpha = _check_alpha(alpha)
    if not se >= 0.0:
        raise InvalidParameter("se must be nonnegative, got {!r}".format(se))
    half_width = normal_quantile(1.0 - alpha / 2.0) * se
    return _make_interval(pi_c_hat - half_width, pi_c_hat + half_width, WALD, alpha)


def jeffreys_adjusted_gold(s, alpha):
    """
    ``[a·Q_{α/2} + b, a·Q_{1−α/2} + b]`` with ``Q`` the percentiles of
    ``Beta(n⁺ + 0.5, n − n⁺ + 0.5)``.
    """
    alpha = _check_alpha(alpha)
    pi_hat = estimators.positivity_rate(s)
    q_lower, q_upper = posterior_quantiles(s.positives, s.sample_size, alpha)
    a = math.sqrt(estimators.fpc_factor(s.sample_size, s.population_size))
    b = pi_hat * (1.0 - a)
    return _make_interval(a * q_lower + b, a * q_upper + b, JEFFREYS_ADJUSTED_GOLD, alpha, a, b)


def _misclass_scale(s, kit, est):
    """
    ``a′ = √(v3 / v1)``. When ``π̂`` is 0 or 1, ``v1`` vanishes and the
    Jeffreys posterior mean ``(n⁺ + 0.5)/(n + 1)`` stands in for ``π̂`` in both
    variances.
    """
    variances = est.variances
    v1, v3 = variances.v1, variances.v3
    if v1 <= 0.0:
        smoothed = (s.positives + 0.5) / (s.sample_size + 1.0)
        v1 = estimators.var_naive(smoothed, s.sample_size)
        v3 = estimators.var_fpc(smoothed, s.sample_size, s.population_size) + variances.extra_term
    return math.sqrt(v3 / v1)


def credible_misclass(s, kit, alpha, est=None):
    """
    Misclassification-corrected credible interval:
    ``[((a′Q_{α/2} + b′) + Sp − 1) / (Se + Sp − 1), ((a′Q_{1−α/2} + b′) + Sp − 1) / (Se + Sp − 1)] ∩ [0, 1]``

    :param: est: the :class:`~prevkit.core.estimators.PrevalenceEstimate` for
                 ``s`` and ``kit`` if already computed
    """
    alpha = _check_alpha(alpha)
    if est is None:
        est = estimators.estimate(s, kit)
    q_lower, q_upper = posterior_quantiles(s.positives, s.sample_size, alpha)
    a = _misclass_scale(s, kit, est)
    b = est.pi_hat * (1.0 - a)
    shift = kit.specificity - 1.0
    lower = (a * q_lower + b + shift) / kit.youden
    upper = (a * q_upper + b + shift) / kit.youden
    return _make_interval(lower, upper, CREDIBLE_MISCLASS, alpha, a, b)
