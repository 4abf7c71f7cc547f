# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels (float64).  Same algorithms as ``_pykernels.py``."""
from libc.math cimport pow, fabs, M_PI, NAN
from scipy.special.cython_special cimport jv

cdef enum:
    MAX_ITER = 1200
    MAX_OFFS = 256


def power_sum(double coeff, offsets, double e1, double e2, double nu_sq,
              double alpha_sq, double s, long n_start, long n_stop):
    """Kahan sum over n_start <= n < n_stop of mult(n) * mu_n**(-s)."""
    cdef double offs[MAX_OFFS]
    cdef int nr = len(offsets), i
    if nr > MAX_OFFS:
        raise ValueError("too many multiplicity factors")
    for i in range(nr):
        offs[i] = float(offsets[i])
    cdef double half = -0.5 * s, total = 0.0, comp = 0.0, x, term, y, t
    cdef long n
    with nogil:
        for n in range(n_start, n_stop):
            x = <double>n
            term = coeff * pow(nu_sq * (x + e1) * (x + e2) + alpha_sq, half)
            for i in range(nr):
                term *= x + offs[i]
            y = term - comp
            t = total + y
            comp = (t - total) - y
            total = t
    return total


cdef inline void _f_and_df(double mu, double c, bint hat, double x,
                           double* f, double* df) noexcept nogil:
    cdef double j = jv(mu, x), dj
    if x == 0.0:
        dj = 0.5 if mu == 1.0 else 0.0
    else:
        dj = (mu / x) * j - jv(mu + 1.0, x)
    if not hat:
        f[0] = j
        df[0] = dj
    else:
        f[0] = c * j + x * dj
        df[0] = c * dj - (x - mu * mu / x) * j


cpdef double mcmahon(double mu, long k):
    """McMahon's large-k approximation of the k-th zero of J_mu."""
    cdef double b = (k + 0.5 * mu - 0.25) * M_PI
    cdef double m4 = 4.0 * mu * mu
    return (b - (m4 - 1.0) / (8.0 * b)
            - 4.0 * (m4 - 1.0) * (7.0 * m4 - 31.0) / (3.0 * pow(8.0 * b, 3)))


cdef double _refine(double mu, double c, bint hat, double a, double b,
                    double fa, double x0, double rtol) noexcept nogil:
    cdef double x = x0 if (a < x0 and x0 < b) else 0.5 * (a + b)
    cdef double fx, dfx, xn
    cdef int it
    for it in range(MAX_ITER):
        _f_and_df(mu, c, hat, x, &fx, &dfx)
        if fx == 0.0:
            return x
        if (fx > 0.0) == (fa > 0.0):
            a = x
            fa = fx
        else:
            b = x
        xn = x - fx / dfx if dfx != 0.0 else a - 1.0
        if not (a < xn and xn < b):
            xn = 0.5 * (a + b)
        if fabs(xn - x) <= rtol * fabs(xn) or (b - a) <= rtol * fabs(xn):
            return xn
        x = xn
    return NAN


cdef list _j_zeros(double mu, long count, double xmax, double rtol, double step):
    cdef list out = []
    cdef double a = mu, b, fa, fb, z
    cdef long k = 0
    fa = 1.0  # J_mu > 0 on (0, mu] since j_{mu,1} > mu
    while True:
        if count >= 0 and len(out) >= count:
            break
        if count < 0 and a > xmax:
            break
        b = a + step
        fb = jv(mu, b)
        if fb == 0.0:
            out.append(b)
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
            out.append(z)
        a = b
        fa = fb
    return out


def bessel_zeros(double mu, double c, bint hat, long count, double xmax,
                 double rtol, double step=1.0):
    """Positive zeros of J_mu (hat=False) or of c*J_mu + x*J_mu' (hat=True)."""
    if not hat:
        return _j_zeros(mu, count, xmax, rtol, step)
    cdef bint left_open = c + mu > 0.0
    cdef list out = []
    cdef list jz = _j_zeros(mu, count + 1 if count >= 0 else -1, xmax, rtol, step)
    while count < 0 and (len(jz) == 0 or jz[len(jz) - 1] <= xmax):
        jz = _j_zeros(mu, len(jz) + 1, xmax, rtol, step)
    cdef list ends = ([0.0] + jz) if left_open else jz
    cdef double a, b, fa, dfa, z
    cdef Py_ssize_t i
    for i in range(len(ends) - 1):
        if count >= 0 and len(out) >= count:
            break
        a = ends[i]
        b = ends[i + 1]
        if count < 0 and a > xmax:
            break
        if a == 0.0:
            fa = 1.0
        else:
            _f_and_df(mu, c, True, a, &fa, &dfa)
        z = _refine(mu, c, True, a, b, fa, 0.5 * (a + b), rtol)
        if z != z:
            raise ArithmeticError(f"hat-zero of J_{mu}, c={c} in [{a}, {b}] did not converge")
        if count < 0 and z > xmax:
            break
        out.append(z)
    return out
