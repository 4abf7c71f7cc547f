"""Pure-Python kernels (float64).  Mirrors ``_ckernels.pyx`` line for line."""
from __future__ import annotations

import math

from scipy.special import jv

MAX_ITER = 1200


def power_sum(coeff, offsets, e1, e2, nu_sq, alpha_sq, s, n_start, n_stop):
    """Kahan sum over n_start <= n < n_stop of mult(n) * mu_n**(-s).

    mult(n) = coeff * prod(n + r), mu_n**2 = nu_sq * (n + e1) * (n + e2) + alpha_sq.
    """
    offsets = [float(r) for r in offsets]
    half = -0.5 * s
    total = 0.0
    comp = 0.0
    for n in range(n_start, n_stop):
        x = float(n)
        term = coeff * (nu_sq * (x + e1) * (x + e2) + alpha_sq) ** half
        for r in offsets:
            term *= x + r
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total


def _j_and_dj(mu, x):
    j = jv(mu, x)
    if x == 0.0:
        return j, (0.5 if mu == 1.0 else 0.0)
    return j, (mu / x) * j - jv(mu + 1.0, x)


def _f_and_df(mu, c, hat, x):
    j, dj = _j_and_dj(mu, x)
    if not hat:
        return j, dj
    return c * j + x * dj, c * dj - (x - mu * mu / x) * j


def mcmahon(mu, k):
    """McMahon's large-k approximation of the k-th zero of J_mu."""
    b = (k + 0.5 * mu - 0.25) * math.pi
    m4 = 4.0 * mu * mu
    return (b - (m4 - 1.0) / (8.0 * b)
            - 4.0 * (m4 - 1.0) * (7.0 * m4 - 31.0) / (3.0 * (8.0 * b) ** 3))


def _refine(mu, c, hat, a, b, fa, x0, rtol):
    """Newton iteration safeguarded by bisection on the sign-change bracket [a, b]."""
    x = x0 if a < x0 < b else 0.5 * (a + b)
    for _ in range(MAX_ITER):
        fx, dfx = _f_and_df(mu, c, hat, x)
        if fx == 0.0:
            return x
        if (fx > 0.0) == (fa > 0.0):
            a, fa = x, fx
        else:
            b = x
        xn = x - fx / dfx if dfx != 0.0 else a - 1.0
        if not a < xn < b:
            xn = 0.5 * (a + b)
        if abs(xn - x) <= rtol * abs(xn) or (b - a) <= rtol * abs(xn):
            return xn
        x = xn
    return math.nan


def _j_zeros(mu, count, xmax, rtol, step):
    """First ``count`` zeros of J_mu, or all zeros <= xmax when count < 0."""
    out = []
    a = mu
    fa = 1.0  # J_mu > 0 on (0, mu] since j_{mu,1} > mu
    k = 0
    while True:
        if count >= 0 and len(out) >= count:
            break
        if count < 0 and a > xmax:
            break
        b = a + step
        fb = jv(mu, b)
        if fb == 0.0:
            out.append(float(b))
            k += 1
            a = b + 1e-9 * b
            fa = jv(mu, a)
            continue
        if (fa > 0.0) != (fb > 0.0):
            k += 1
            z = _refine(mu, 0.0, False, a, b, fa, mcmahon(mu, k), rtol)
            if z != z:
                raise ArithmeticError(f"zero of J_{mu} in [{a}, {b}] did not converge")
            if count < 0 and z > xmax:
                break
            out.append(float(z))
        a, fa = b, fb
    return out


def bessel_zeros(mu, c, hat, count, xmax, rtol, step=1.0):
    """Positive zeros of J_mu (hat=False) or of c*J_mu + x*J_mu' (hat=True).

    With ``count >= 0`` the first ``count`` zeros are returned, otherwise all
    zeros not exceeding ``xmax``.
    """
    if not hat:
        return _j_zeros(mu, count, xmax, rtol, step)
    left_open = c + mu > 0.0
    # Each bracket end is a zero of J_mu (or the origin); one hat-zero per bracket.
    out = []
    jz = _j_zeros(mu, count + 1 if count >= 0 else -1, xmax, rtol, step)
    while count < 0 and (not jz or jz[-1] <= xmax):
        jz = _j_zeros(mu, len(jz) + 1, xmax, rtol, step)
    ends = ([0.0] + jz) if left_open else jz
    for i in range(len(ends) - 1):
        if count >= 0 and len(out) >= count:
            break
        a, b = ends[i], ends[i + 1]
        if count < 0 and a > xmax:
            break
        fa = 1.0 if a == 0.0 else _f_and_df(mu, c, True, a)[0]
        z = _refine(mu, c, True, a, b, fa, 0.5 * (a + b), rtol)
        if z != z:
            raise ArithmeticError(f"hat-zero of J_{mu}, c={c} in [{a}, {b}] did not converge")
        if count < 0 and z > xmax:
            break
        out.append(float(z))
    return out
