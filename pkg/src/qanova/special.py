"""Log-gamma, log-beta and the regularized incomplete beta function.

Only what the Harrell-Davis weights and the beta-binomial pmf need.
"""

import math

__all__ = ["DomainError", "ConvergenceError", "ln_gamma", "ln_beta", "reg_inc_beta"]

_CF_TOL = 1e-14
_CF_MAXITER = 300
_TINY = 1e-300


class DomainError(ValueError):
    """Argument outside the domain of a special function."""


class ConvergenceError(ArithmeticError):
    """Continued fraction did not converge within the iteration budget."""


def ln_gamma(x):
    """Natural log of the gamma function for ``x > 0``."""
    x = float(x)
    if not x > 0 or math.isinf(x):
        raise DomainError(f"ln_gamma requires finite x > 0, got {x!r}")
    return math.lgamma(x)


def ln_beta(a, b):
    """Natural log of the complete beta function B(a, b)."""
    a = float(a)
    b = float(b)
    if not (a > 0 and b > 0):
        raise DomainError(f"ln_beta requires a > 0 and b > 0, got a={a!r}, b={b!r}")
    return ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)


def _betacf(x, a, b):
    # modified Lentz evaluation of the continued fraction for I_x(a, b)
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAXITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_TOL:
            return h
    raise ConvergenceError(
        f"incomplete beta continued fraction did not converge in {_CF_MAXITER} "
        f"iterations (x={x}, a={a}, b={b})"
    )


def reg_inc_beta(x, a, b):
    """Regularized incomplete beta function I_x(a, b), the Beta(a, b) CDF at x.

    Parameters
    ----------
    x : float
        Evaluation point in [0, 1].
    a, b : float
        Positive shape parameters.

    Returns
    -------
    float
        Value in [0, 1].

    Raises
    ------
    DomainError
        If ``x`` lies outside [0, 1] or a shape parameter is not positive.
    ConvergenceError
        If the continued fraction exhausts its iteration budget.
    """
    x = float(x)
    a = float(a)
    b = float(b)
    if not (a > 0 and b > 0) or math.isinf(a) or math.isinf(b):
        raise DomainError(f"reg_inc_beta requires finite a, b > 0, got a={a!r}, b={b!r}")
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"reg_inc_beta requires 0 <= x <= 1, got {x!r}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    log_front = a * math.log(x) + b * math.log1p(-x) - ln_beta(a, b)
    if x < (a + 1.0) / (a + b + 2.0):
        value = math.exp(log_front) * _betacf(x, a, b) / a
    else:
        value = 1.0 - math.exp(log_front) * _betacf(1.0 - x, b, a) / b
    return min(1.0, max(0.0, value))
