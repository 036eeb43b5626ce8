"""Hot numeric kernels, JIT-compiled with numba when available.

Every kernel is written once as a plain Python/numpy function and wrapped
with ``numba.njit`` unless the environment variable ``SPIKEDOSC_DISABLE_NUMBA``
is set (any non-empty value) or numba cannot be imported.  The pure versions
stay importable under their ``py_`` aliases so the benchmark suite can time
both paths in one process.

Kernels return status codes instead of raising, so the same source compiles
in nopython mode; the public wrappers in :mod:`spikedosc.specfun` translate
codes into exceptions.
"""

import cmath
import math
import os

import numpy as np

EULER_GAMMA = 0.5772156649015328606065

STATUS_OK = 0
STATUS_NO_CONVERGENCE = 1

_DISABLE = bool(os.environ.get("SPIKEDOSC_DISABLE_NUMBA"))

if not _DISABLE:
    try:
        from numba import njit as _njit

        def _jit(fn):
            return _njit(cache=True)(fn)

        NUMBA_ENABLED = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        NUMBA_ENABLED = False
else:
    NUMBA_ENABLED = False

if not NUMBA_ENABLED:
    def _jit(fn):
        return fn


def py_digamma(x: float) -> float:
    # Upward recurrence to x >= 10, then the Bernoulli asymptotic series.
    acc = 0.0
    while x < 10.0:
        acc -= 1.0 / x
        x += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    tail = inv2 * (1.0 / 12.0
                   - inv2 * (1.0 / 120.0
                             - inv2 * (1.0 / 252.0
                                       - inv2 * (1.0 / 240.0
                                                 - inv2 * (1.0 / 132.0
                                                           - inv2 * (691.0 / 32760.0))))))
    return acc + math.log(x) - 0.5 * inv - tail


def py_pochhammer(a: float, k: int) -> float:
    # Iterated product so negative-integer a yields exact zeros.
    out = 1.0
    for j in range(k):
        out *= a + j
    return out


def py_lnpoch_signed(a: float, k: int):
    # log|(a)_k| and its sign; safe for large k where the product overflows.
    ln = 0.0
    sign = 1.0
    for j in range(k):
        f = a + j
        if f == 0.0:
            return -math.inf, 0.0
        if f < 0.0:
            sign = -sign
            f = -f
        ln += math.log(f)
    return ln, sign


def py_hyp1f1_series(a: float, g: float, z: float, rel_tol: float, cap: int):
    # Plain Kummer series for non-terminating a.
    total = 1.0
    comp = 0.0
    t = 1.0
    for k in range(cap):
        t *= (a + k) * z / ((g + k) * (k + 1))
        s = total + t
        if abs(total) >= abs(t):
            comp += (total - s) + t
        else:
            comp += (t - s) + total
        total = s
        if abs(t) < rel_tol * abs(total):
            return total + comp, STATUS_OK
    return total + comp, STATUS_NO_CONVERGENCE


def py_kummer_terminating(n: int, g: float, z: float) -> float:
    # 1F1(-n, g, z) via the Laguerre-type three-term recurrence in n,
    # which avoids the catastrophic cancellation of the raw Kummer sum
    # for large n and z.
    if n == 0:
        return 1.0
    fprev = 1.0
    f = 1.0 - z / g
    for k in range(1, n):
        fnext = ((2.0 * k + g - z) * f - k * fprev) / (g + k)
        fprev = f
        f = fnext
    return f


def py_kummer_grid(n: int, g: float, zs: np.ndarray) -> np.ndarray:
    # Vectorized counterpart of py_kummer_terminating over a z-grid.
    m = zs.shape[0]
    f = np.empty(m)
    if n == 0:
        for i in range(m):
            f[i] = 1.0
        return f
    fprev = np.empty(m)
    for i in range(m):
        fprev[i] = 1.0
        f[i] = 1.0 - zs[i] / g
    for k in range(1, n):
        for i in range(m):
            fnext = ((2.0 * k + g - zs[i]) * f[i] - k * fprev[i]) / (g + k)
            fprev[i] = f[i]
            f[i] = fnext
    return f


def py_hyp3f2_terminating(m: int, b: float, c: float, d: float, e: float) -> float:
    # sum_{k=0}^{m} (-m)_k (b)_k (c)_k / ((d)_k (e)_k k!), Neumaier-compensated
    # because the (-m)_k factor alternates in sign.
    total = 1.0
    comp = 0.0
    t = 1.0
    for k in range(m):
        t *= (k - m) * (b + k) * (c + k) / ((d + k) * (e + k) * (k + 1))
        s = total + t
        if abs(total) >= abs(t):
            comp += (total - s) + t
        else:
            comp += (t - s) + total
        total = s
        if t == 0.0:
            break
    return total + comp


def py_pfq_unit_terms(uppers: np.ndarray, lowers: np.ndarray, s: float,
                      rel_tol: float, cap: int):
    """Sum the unit-argument pFq series, recording every term.

    Returns (compensated partial sum, number of terms, terms array).  The
    stopping rule is the asymptotic tail estimate term * (k / s) measured
    against the running sum; the caller adds an extrapolated tail from the
    recorded terms.
    """
    terms = np.empty(cap)
    terms[0] = 1.0
    total = 1.0
    comp = 0.0
    t = 1.0
    nterms = 1
    for k in range(cap - 1):
        num = 1.0
        for i in range(uppers.shape[0]):
            num *= uppers[i] + k
        den = k + 1.0
        for j in range(lowers.shape[0]):
            den *= lowers[j] + k
        t *= num / den
        terms[nterms] = t
        nterms += 1
        sm = total + t
        if abs(total) >= abs(t):
            comp += (total - sm) + t
        else:
            comp += (t - sm) + total
        total = sm
        if abs(t) * ((k + 1.0) / s) < rel_tol * abs(total):
            break
    return total + comp, nterms, terms[:nterms]


def py_psi1_sum(a: float, g: float, z: float, rel_tol: float, quiet_run: int,
                cap: int):
    """Sum_{n>=1} (a)_n / (n n!) * 1F1(-n, g, z) with the 1F1 values generated
    by upward recurrence.

    Returns (plain partial sum, oscillation-averaged sum, terms used, status).
    The averaged sum is the mean of the partial sums over the final window of
    one asymptotic oscillation period 2*pi*sqrt(n/z); for slowly decaying
    coefficient sequences (a -> 1) it removes the leading oscillatory tail.
    """
    fprev = 1.0
    f = 1.0 - z / g
    c = a  # (a)_1 / (1 * 1!)
    total = c * f
    comp = 0.0
    quiet = 0
    n = 1
    # ring buffer of recent partial sums for the oscillation average
    if z > 0.0:
        win = int(2.0 * math.pi * math.sqrt(cap / z)) + 1
    else:
        win = 1
    if win > cap:
        win = cap
    if win < 1:
        win = 1
    ring = np.empty(win)
    ring[0] = total + comp
    count = 1
    status = STATUS_NO_CONVERGENCE
    while n < cap:
        fnext = ((2.0 * n + g - z) * f - n * fprev) / (g + n)
        fprev = f
        f = fnext
        n += 1
        c *= (a + n - 1.0) * (n - 1.0) / (n * n)
        t = c * f
        sm = total + t
        if abs(total) >= abs(t):
            comp += (total - sm) + t
        else:
            comp += (t - sm) + total
        total = sm
        ring[count % win] = total + comp
        count += 1
        if abs(t) < rel_tol * abs(total + comp):
            quiet += 1
            if quiet >= quiet_run:
                status = STATUS_OK
                break
        else:
            quiet = 0
    plain = total + comp
    navg = min(count, win)
    avg = 0.0
    for i in range(navg):
        avg += ring[i]
    avg /= navg
    return plain, avg, n, status


def py_s_spike_direct(w: complex, a: float, rel_tol: float, cap: int):
    # S(w) = sum_{n>=1} (a)_n w^n / (n n!) by direct summation, |w| < 1.
    t = a * w
    total = t
    n = 1
    while n < cap:
        n += 1
        t *= w * (a + n - 1.0) * (n - 1.0) / (n * n)
        total += t
        if abs(t) < rel_tol * abs(total):
            return total, STATUS_OK
    return total, STATUS_NO_CONVERGENCE


def py_s_spike_near_unit(q: complex, a: float, psi_one_minus_a: float,
                         rel_tol: float, cap: int):
    """S(w) for w = 1 - q via the continuation around w = 1.

    S = psi(1) - psi(1-a) - log(1-q) - q^{1-a} * sum_{k>=0} q^k / (k+1-a),
    geometrically convergent in |q| < 1 (requires a not a positive integer,
    which holds for a = alpha/2 < 1 on the contour).
    """
    phi = 1.0 / (1.0 - a) + 0.0j
    t = 1.0 + 0.0j
    k = 0
    status = STATUS_OK
    while True:
        k += 1
        t *= q
        term = t / (k + 1.0 - a)
        phi += term
        if abs(term) < rel_tol * abs(phi):
            break
        if k >= cap:
            status = STATUS_NO_CONVERGENCE
            break
    val = (-EULER_GAMMA - psi_one_minus_a
           - cmath.log(1.0 - q)
           - cmath.exp((1.0 - a) * cmath.log(q)) * phi)
    return val, status


def py_contour_integrand(y: float, c: float, x2: float, sqrt_b: float,
                         g: float, a: float, psi_one_minus_a: float):
    """Smooth (non-oscillatory) part of the inverse-Laplace integrand.

    Full integrand is Re[e^{i sqrt(B) y} * G(y)] with
    G(y) = e^{sqrt(B) c} (c+iy)^{-gamma} S(1 - x^2/(c+iy)); this returns
    (Re G, Im G).  The e^{i sqrt(B) y} oscillation is handled by the
    Fourier-weighted quadrature in the caller.
    """
    t = complex(c, y)
    q = x2 / t
    # calls resolve to the jitted dispatchers when numba is enabled
    if abs(q) <= 0.7:
        s_val, _ = s_spike_near_unit(q, a, psi_one_minus_a, 1e-16, 10000)
    else:
        s_val, _ = s_spike_direct(1.0 - q, a, 1e-16, 200000)
    gfac = cmath.exp(sqrt_b * c - g * cmath.log(t))
    val = gfac * s_val
    return val.real, val.imag


# JIT-compiled entry points (identical callables when numba is disabled).
digamma_kernel = _jit(py_digamma)
pochhammer_kernel = _jit(py_pochhammer)
lnpoch_signed = _jit(py_lnpoch_signed)
hyp1f1_series = _jit(py_hyp1f1_series)
kummer_terminating = _jit(py_kummer_terminating)
kummer_grid = _jit(py_kummer_grid)
hyp3f2_terminating_kernel = _jit(py_hyp3f2_terminating)
pfq_unit_terms = _jit(py_pfq_unit_terms)
psi1_sum = _jit(py_psi1_sum)
s_spike_direct = _jit(py_s_spike_direct)
s_spike_near_unit = _jit(py_s_spike_near_unit)
contour_integrand = _jit(py_contour_integrand)

PY_IMPLS = {
    "digamma": py_digamma,
    "pochhammer": py_pochhammer,
    "hyp3f2_terminating": py_hyp3f2_terminating,
    "kummer_terminating": py_kummer_terminating,
    "kummer_grid": py_kummer_grid,
    "pfq_unit_terms": py_pfq_unit_terms,
    "psi1_sum": py_psi1_sum,
    "contour_integrand": py_contour_integrand,
}
