"""
Two-sample, two-tailed Student t-test on summaries.

The t CDF goes through the regularized incomplete beta function,
P(|T| > t) = I_x(df/2, 1/2) with x = df / (df + t^2).
"""
import logging
import math

from django.core.exceptions import ValidationError
from scipy.special import betainc

from stats.types import SampleSummary, TTestResult

logger = logging.getLogger(__name__)


def two_sided_tail(t: float, df: float) -> float:
    if math.isinf(t):
        return 0.0
    return float(betainc(df / 2.0, 0.5, df / (df + t * t)))


def t_cdf(t: float, df: float) -> float:
    if not df > 0:
        raise ValidationError(f"degrees of freedom must be > 0, got {df}.", code="invalid")
    half_tail = 0.5 * two_sided_tail(t, df)
    return 1.0 - half_tail if t > 0 else half_tail


def _standard_error(a: SampleSummary, b: SampleSummary, equal_var: bool) -> tuple[float, float]:
    if equal_var:
        df = float(a.n + b.n - 2)
        pooled = ((a.n - 1) * a.variance + (b.n - 1) * b.variance) / df
        return math.sqrt(pooled * (1.0 / a.n + 1.0 / b.n)), df
    va, vb = a.variance / a.n, b.variance / b.n
    se2 = va + vb
    if se2 == 0.0:
        return 0.0, float(a.n + b.n - 2)
    # Welch-Satterthwaite
    df = se2 * se2 / (va * va / (a.n - 1) + vb * vb / (b.n - 1))
    return math.sqrt(se2), df


def t_test(
    a: SampleSummary,
    b: SampleSummary,
    confidence: float = 0.95,
    *,
    equal_var: bool = False,
) -> TTestResult:
    """
    Test whether the means of ``a`` and ``b`` differ.

    Welch's unequal-variance test by default; ``equal_var=True`` pools the
    variances. With zero spread on both sides the test is decided by the
    means alone: equal means are never significant.
    """
    if not 0.0 < confidence < 1.0:
        raise ValidationError(f"confidence must lie in (0, 1), got {confidence}.", code="invalid")
    for summary in (a, b):
        if summary.n < 2 or summary.std < 0:
            raise ValidationError(
                f"each sample needs n >= 2 and std >= 0, got n={summary.n}, std={summary.std}.",
                code="insufficient_data",
            )
    se, df = _standard_error(a, b, equal_var)
    diff = a.mean - b.mean
    if se == 0.0:
        t = 0.0 if diff == 0.0 else math.copysign(math.inf, diff)
    else:
        t = diff / se
    p_value = two_sided_tail(t, df)
    return TTestResult(
        t_statistic=t,
        degrees_of_freedom=df,
        p_value=p_value,
        significant=p_value < 1.0 - confidence,
        confidence=confidence,
        equal_var=equal_var,
    )
