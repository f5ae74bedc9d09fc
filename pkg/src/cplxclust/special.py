"""Scalar special functions: log-gamma, log-beta, the regularized
incomplete beta function, and its inverse (the beta quantile).

Everything downstream (posterior medians, five-number summaries, the
closed-form Hellinger distance) reduces to these four functions, so they
are kept self-contained and evaluated in log space throughout. Shape
parameters up to about 1e5 must work without overflow.

Implementation notes:

* ``log_gamma`` uses the 15-term Lanczos rational approximation with
  g = 607/128, plus the reflection formula below 0.5. Accuracy is a few
  ulps across [1e-3, 1e6] (checked against an arbitrary-precision
  reference in the test suite).
* ``reg_inc_beta`` evaluates the standard continued fraction with the
  modified Lentz recurrence, switching to the symmetric complement at
  x = (a+1)/(a+b+2) so the fraction always converges quickly.
* ``beta_quantile`` inverts the CDF with bisection safeguarded Newton
  steps, stopping at ``QUANTILE_CDF_TOL`` in CDF space.
"""

import math

from .errors import DomainError, NumericalError

__all__ = ["log_gamma", "log_beta", "reg_inc_beta", "beta_quantile"]

_LANCZOS_G = 607.0 / 128.0
_LANCZOS_COEFFS = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)
_LN_SQRT_2PI = 0.91893853320467274178

# Continued fraction controls.
_CF_MAX_ITER = 500
_CF_EPS = 3e-16
_CF_TINY = 1e-300

# Quantile solver controls: tolerance is in CDF space.
QUANTILE_CDF_TOL = 1e-10
QUANTILE_MAX_ITER = 200


def _check_positive(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise DomainError(f"{name} must be a positive finite number, got {value!r}")
    return value


def log_gamma(x: float) -> float:
    """Natural log of the gamma function for positive real x."""
    x = _check_positive("x", x)
    if x < 0.5:
        # Reflection keeps the Lanczos sum on its well-conditioned side.
        return math.log(math.pi / math.sin(math.pi * x)) - log_gamma(1.0 - x)
    z = x - 1.0
    s = _LANCZOS_COEFFS[0]
    for k in range(1, len(_LANCZOS_COEFFS)):
        s += _LANCZOS_COEFFS[k] / (z + k)
    t = z + _LANCZOS_G + 0.5
    return _LN_SQRT_2PI + (z + 0.5) * math.log(t) - t + math.log(s)


def log_beta(a: float, b: float) -> float:
    """Natural log of the beta function B(a, b) for positive a, b."""
    a = _check_positive("a", a)
    b = _check_positive("b", b)
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b)


def _betacf(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta, by modified Lentz.

    Valid (quickly convergent) only for x < (a+1)/(a+b+2); callers
    apply the symmetry switch first.
    """
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _CF_TINY:
        d = _CF_TINY
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = 1.0 + aa / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = 1.0 + aa / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_EPS:
            return h
    raise NumericalError(
        f"incomplete beta continued fraction did not converge for "
        f"a={a!r}, b={b!r}, x={x!r}"
    )


def reg_inc_beta(x: float, a: float, b: float) -> float:
    """Regularized incomplete beta function I_x(a, b), the Beta(a, b) CDF.

    Parameters
    ----------
    x : float in [0, 1]
        Evaluation point.
    a, b : float > 0
        Shape parameters.
    """
    a = _check_positive("a", a)
    b = _check_positive("b", b)
    x = float(x)
    if not math.isfinite(x) or x < 0.0 or x > 1.0:
        raise DomainError(f"x must lie in [0, 1], got {x!r}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    lfront = a * math.log(x) + b * math.log1p(-x) - log_beta(a, b)
    if x < (a + 1.0) / (a + b + 2.0):
        return math.exp(lfront) * _betacf(a, b, x) / a
    return 1.0 - math.exp(lfront) * _betacf(b, a, 1.0 - x) / b


def beta_quantile(q: float, a: float, b: float) -> float:
    """Inverse of ``reg_inc_beta`` in x: the q-th Beta(a, b) quantile.

    Bisection on [0, 1] safeguarded with Newton steps on the CDF;
    terminates when |CDF(x) - q| <= QUANTILE_CDF_TOL or the bracket is
    exhausted at float resolution.
    """
    a = _check_positive("a", a)
    b = _check_positive("b", b)
    q = float(q)
    if not math.isfinite(q) or q <= 0.0 or q >= 1.0:
        raise DomainError(f"q must lie strictly inside (0, 1), got {q!r}")

    lnb = log_beta(a, b)
    lo, hi = 0.0, 1.0
    x = a / (a + b)  # the mean is always a valid interior start
    for _ in range(QUANTILE_MAX_ITER):
        f = reg_inc_beta(x, a, b) - q
        if abs(f) <= QUANTILE_CDF_TOL:
            return x
        if f > 0.0:
            hi = x
        else:
            lo = x
        stepped = False
        if 0.0 < x < 1.0:
            lpdf = (a - 1.0) * math.log(x) + (b - 1.0) * math.log1p(-x) - lnb
            if lpdf > -700.0:  # exp() would underflow below this
                pdf = math.exp(lpdf)
                if pdf > 0.0:
                    xn = x - f / pdf
                    if lo < xn < hi:
                        x = xn
                        stepped = True
        if not stepped:
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                # No representable point left between the brackets; x is
                # the best float64 answer for this (q, a, b).
                return x
            x = mid
    return x
