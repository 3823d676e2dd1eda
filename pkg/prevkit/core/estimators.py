"""
Point and variance estimators for test positivity and true prevalence
=====================================================================

A random sample of ``n`` units is drawn without replacement from a finite
population of ``N`` units and screened with an imperfect test of known
sensitivity (Se) and specificity (Sp). ``n⁺`` of the sampled units test
positive.

Three variance estimators are provided for the test positivity ``π̂ = n⁺/n``:

 * ``v1`` ignores the finite population altogether,
 * ``v2`` applies Cochran's finite population correction (FPC),
 * ``v3`` adds the extra variance induced by misclassification, which exists
   because the number of true cases ``N_c`` is fixed while the number of
   would-be test positives ``N_c*`` is random.

Any of them is carried over to the bias-corrected (Rogan-Gladen) prevalence
by :func:`var_corrected`.

The scalar helpers also accept numpy arrays for ``pi_hat``/``pi_c_hat`` so
that simulation sweeps can evaluate a whole batch of replications at once.
"""
from __future__ import absolute_import, division, print_function, unicode_literals

import math
from collections import namedtuple
from numbers import Integral

import numpy as np

from .errors import InvalidParameter


def _scalar_or_array(value):
    if np.ndim(value) == 0:
        return float(value)
    return value


def check_probability(name, value):
    """
    Validates that ``value`` (scalar or array) lies in [0, 1].

    :returns: ``value`` as float when scalar
    """
    try:
        ok = bool(np.all((np.asarray(value) >= 0.0) & (np.asarray(value) <= 1.0)))
    except TypeError:
        ok = False
    if not ok:
        raise InvalidParameter(
            "{name} must be a probability in [0, 1], got {value!r}".format(name=name, value=value)
        )
    return _scalar_or_array(value)


def check_count(name, value, minimum=0):
    if isinstance(value, bool) or not isinstance(value, (Integral, np.integer)):
        raise InvalidParameter("{} must be an integer count, got {!r}".format(name, value))
    value = int(value)
    if value < minimum:
        raise InvalidParameter("{} must be >= {}, got {}".format(name, minimum, value))
    return value


class TestKit(namedtuple('TestKit', ['sensitivity', 'specificity'])):
    """
    Sensitivity/specificity pair of an imperfect diagnostic test. The test
    must be informative, i.e. ``Se + Sp > 1``.
    """
    __slots__ = ()

    # Not a test case, despite the name
    __test__ = False

    def __new__(cls, sensitivity, specificity):
        sensitivity = check_probability('sensitivity', sensitivity)
        specificity = check_probability('specificity', specificity)
        if sensitivity + specificity <= 1.0:
            raise InvalidParameter(
                "sensitivity + specificity must exceed 1 for an informative test, "
                "got {} + {}".format(sensitivity, specificity)
            )
        return super(TestKit, cls).__new__(cls, sensitivity, specificity)

    @property
    def youden(self):
        """``Se + Sp - 1``, the denominator of the Rogan-Gladen correction."""
        return self.sensitivity + self.specificity - 1.0

    @property
    def is_perfect(self):
        return self.sensitivity == 1.0 and self.specificity == 1.0


PERFECT_TEST = TestKit(1.0, 1.0)


class SampleSummary(namedtuple('SampleSummary', ['population_size', 'sample_size', 'positives'])):
    """
    Observed sample: population size ``N``, sample size ``n`` and positive
    count ``n⁺``. Requires ``2 <= n <= N`` and ``0 <= n⁺ <= n``.
    """
    __slots__ = ()

    def __new__(cls, population_size, sample_size, positives):
        population_size = check_count('population_size', population_size, minimum=1)
        # n - 1 appears in the FPC denominator
        sample_size = check_count('sample_size', sample_size, minimum=2)
        positives = check_count('positives', positives)
        if sample_size > population_size:
            raise InvalidParameter(
                "sample_size ({}) cannot exceed population_size ({})".format(sample_size, population_size)
            )
        if positives > sample_size:
            raise InvalidParameter(
                "positives ({}) cannot exceed sample_size ({})".format(positives, sample_size)
            )
        return super(SampleSummary, cls).__new__(cls, population_size, sample_size, positives)


#: v1: no FPC, v2: FPC-adjusted, v3: v2 plus ``extra_term`` from misclassification
VarianceBundle = namedtuple('VarianceBundle', ['v1', 'v2', 'v3', 'extra_term'])


#: ``se_mle`` and ``se_fpc`` carry v1 and v2 through the Rogan-Gladen
#: correction; ``se_pi_c`` uses v3.
PrevalenceEstimate = namedtuple(
    'PrevalenceEstimate',
    ['pi_hat', 'pi_c_hat', 'pi_c_raw', 'variances', 'se_pi_c', 'se_mle', 'se_fpc'],
)


def positivity_rate(s):
    return s.positives / s.sample_size


def positivity_from_prevalence(pi_c, kit):
    """
    Test positive frequency implied by a true prevalence:
    ``π = π_c·Se + (1 − π_c)(1 − Sp)``.
    """
    pi_c = check_probability('pi_c', pi_c)
    return _scalar_or_array(pi_c * kit.sensitivity + (1.0 - pi_c) * (1.0 - kit.specificity))


def fpc_factor(n, N):
    """
    Cochran's finite population correction ``n(N − n) / (N(n − 1))``.

    :param: n: sample size, at least 2
    :param: N: population size, at least n
    """
    n = check_count('n', n, minimum=2)
    N = check_count('N', N, minimum=1)
    if n > N:
        raise InvalidParameter("n ({}) cannot exceed N ({})".format(n, N))
    return n * (N - n) / (N * (n - 1))


def var_naive(pi_hat, n):
    n = check_count('n', n, minimum=1)
    return _scalar_or_array(np.multiply(pi_hat, 1.0 - np.asarray(pi_hat)) / n)


def var_fpc(pi_hat, n, N):
    return _scalar_or_array(fpc_factor(n, N) * np.asarray(var_naive(pi_hat, n)))


def rogan_gladen(pi_hat, kit):
    """
    Bias-corrected prevalence ``(π̂ + Sp − 1) / (Se + Sp − 1)``.

    :returns: ``(raw, thresholded)``; the thresholded value is 0 when
              ``π̂ <= 1 − Sp``, 1 when ``π̂ >= Se`` and ``raw`` otherwise.
    """
    if kit.youden <= 0.0:
        raise InvalidParameter("sensitivity + specificity must exceed 1")
    pi_hat = np.asarray(pi_hat, dtype=float)
    # subtract the false-positive rate first: exact when Sp = 1
    raw = (pi_hat - (1.0 - kit.specificity)) / kit.youden
    thresholded = np.where(
        pi_hat <= 1.0 - kit.specificity,
        0.0,
        np.where(pi_hat >= kit.sensitivity, 1.0, raw),
    )
    return _scalar_or_array(raw), _scalar_or_array(thresholded)


def misclass_extra_variance(pi_c_hat, kit, N):
    """
    Variance of ``E(π̂ | N_c*)`` given a fixed number of true cases:
    ``(1/N)[π_c·Se(1 − Se) + (1 − π_c)·Sp(1 − Sp)]`` with ``π_c`` estimated
    by ``pi_c_hat``.
    """
    N = check_count('N', N, minimum=1)
    pi_c_hat = check_probability('pi_c_hat', pi_c_hat)
    se, sp = kit.sensitivity, kit.specificity
    term = np.multiply(pi_c_hat, se * (1.0 - se)) + (1.0 - np.asarray(pi_c_hat)) * (sp * (1.0 - sp))
    return _scalar_or_array(term / N)


def var_total(pi_hat, pi_c_hat, s, kit):
    """
    :returns: VarianceBundle where ``v3 = v2 + extra_term``
    """
    v1 = var_naive(pi_hat, s.sample_size)
    v2 = var_fpc(pi_hat, s.sample_size, s.population_size)
    extra_term = misclass_extra_variance(pi_c_hat, kit, s.population_size)
    return VarianceBundle(v1=v1, v2=v2, v3=_scalar_or_array(np.add(v2, extra_term)), extra_term=extra_term)


def var_corrected(var_pi_hat, kit):
    if kit.youden <= 0.0:
        raise InvalidParameter("sensitivity + specificity must exceed 1")
    return _scalar_or_array(np.asarray(var_pi_hat, dtype=float) / kit.youden ** 2)


def estimate(s, kit):
    """
    Fills every field of a :class:`PrevalenceEstimate`.

    The thresholded ``π̂_c`` is plugged into the misclassification term, so
    that term stays a valid (nonnegative) variance when the raw estimate falls
    outside [0, 1]. For ``π̂`` in {0, 1} the literal zero variances are
    reported; smoothing for interval construction happens in
    :mod:`prevkit.core.intervals`.
    """
    pi_hat = positivity_rate(s)
    pi_c_raw, pi_c_hat = rogan_gladen(pi_hat, kit)
    variances = var_total(pi_hat, pi_c_hat, s, kit)
    return PrevalenceEstimate(
        pi_hat=pi_hat,
        pi_c_hat=pi_c_hat,
        pi_c_raw=pi_c_raw,
        variances=variances,
        se_pi_c=math.sqrt(variances.v3) / kit.youden,
        se_mle=math.sqrt(variances.v1) / kit.youden,
        se_fpc=math.sqrt(variances.v2) / kit.youden,
    )


def conditional_moments(N, N_c, kit):
    """
    Mean and variance of ``N_c* ~ Bin(N_c, Se) + Bin(N − N_c, 1 − Sp)``,
    the number of positives if the whole population were tested once.
    """
    N = check_count('N', N, minimum=1)
    N_c = check_count('N_c', N_c)
    if N_c > N:
        raise InvalidParameter("N_c ({}) cannot exceed N ({})".format(N_c, N))
    se, sp = kit.sensitivity, kit.specificity
    mean = N_c * se + (N - N_c) * (1.0 - sp)
    variance = N_c * se * (1.0 - se) + (N - N_c) * sp * (1.0 - sp)
    return mean, variance


def total_cases(est, N):
    """
    :returns: ``(N·π̂_c, N·se)``, the estimated number of true cases in the
              population and its standard error
    """
    N = check_count('N', N, minimum=1)
    return N * est.pi_c_hat, N * est.se_pi_c
