"""Independent brute-force verification routes.

Adaptive Gauss-Kronrod quadrature of basis-function inner products, and the
pre-collapse finite double sum for the x^{-alpha} matrix elements.  Both are
kept deliberately independent of the single-3F2 closed form in
:mod:`spikedosc.matel` so that agreement between the routes is meaningful.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .basis import OscillatorParams, eval_psi_grid, norm_coeff
from .errors import ConvergenceError, DomainError

# 15-point Kronrod extension of 7-point Gauss (QUADPACK constants).
_XGK = np.array([
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0])
_WGK = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728])
_WG = np.array([
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469])

_NODES = np.concatenate([-_XGK[:-1], [0.0], _XGK[:-1][::-1]])
_WK = np.concatenate([_WGK[:-1], [_WGK[-1]], _WGK[:-1][::-1]])
_WGFULL = np.zeros(15)
_WGFULL[1:14:2] = np.concatenate([_WG[:-1], [_WG[-1]], _WG[:-1][::-1]])


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and budget for the adaptive integrator.

    ``split`` separates the singular-endpoint region (handled by a
    regularizing power substitution) from the Gaussian tail; it defaults to
    the classical turning point sqrt(2 gamma / sqrt(B)).
    """

    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_subdivisions: int = 2000
    split: float | None = None


def _panel(f, a: float, b: float) -> tuple[float, float]:
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    ys = f(mid + half * _NODES)
    k15 = half * float(np.dot(_WK, ys))
    g7 = half * float(np.dot(_WGFULL, ys))
    # QUADPACK-style rescaled estimate: |K15 - G7| alone can be accidentally
    # tiny on unresolved oscillatory panels.
    resasc = half * float(np.dot(_WK, np.abs(ys - k15 / (b - a))))
    diff = abs(k15 - g7)
    if resasc > 0.0:
        err = resasc * min(1.0, (200.0 * diff / resasc) ** 1.5)
    else:
        err = diff
    return k15, err


def adaptive_quad(f, a: float, b: float, spec: QuadratureSpec,
                  initial_panels: int = 16) -> tuple[float, float]:
    """Adaptive bisection with vectorized 15-point Gauss-Kronrod panels.

    Returns (value, error estimate); raises ConvergenceError when the
    subdivision budget is exhausted before the tolerance is met.
    """
    edges = np.linspace(a, b, initial_panels + 1)
    panels = []
    for pa, pb in zip(edges[:-1], edges[1:]):
        val, err = _panel(f, pa, pb)
        panels.append((err, pa, pb, val))
    for _ in range(spec.max_subdivisions):
        total = sum(p[3] for p in panels)
        toterr = sum(p[0] for p in panels)
        if toterr <= max(spec.abs_tol, spec.rel_tol * abs(total)):
            return total, toterr
        panels.sort(key=lambda p: p[0])
        _, pa, pb, _ = panels.pop()
        pm = 0.5 * (pa + pb)
        v1, e1 = _panel(f, pa, pm)
        v2, e2 = _panel(f, pm, pb)
        panels.append((e1, pa, pm, v1))
        panels.append((e2, pm, pb, v2))
    total = sum(p[3] for p in panels)
    toterr = sum(p[0] for p in panels)
    raise ConvergenceError(
        f"quadrature tolerance not met: estimate {toterr:.3e} after "
        f"{spec.max_subdivisions} subdivisions (value {total:.17g})")


def _weighted_product_integral(params: OscillatorParams, m: int, n: int,
                               alpha: float, spec: QuadratureSpec) -> tuple[float, float]:
    """integral_0^inf psi_m(x) psi_n(x) x^{-alpha} dx.

    The integrand behaves like x^{2 gamma - 1 - alpha} at the origin; the
    substitution x = t^p with p = 2/(2 gamma - alpha) maps it to O(t) there,
    so plain adaptive panels converge quickly.  The tail is cut where
    e^{-sqrt(B) x^2} x^{2(m+n) + 2 gamma - 1 - alpha} drops below ~1e-20,
    which accounts for the polynomial growth of excited states.
    """
    g = params.gamma
    if alpha >= 2.0 * g:
        raise DomainError(
            f"integrand x^{{{2 * g - 1 - alpha}}} is non-integrable at 0 "
            f"(alpha = {alpha} >= 2*gamma = {2 * g})")
    sb = math.sqrt(params.B)
    split = spec.split if spec.split is not None else math.sqrt(2.0 * g / sb)
    # solve e^{-u} u^{deg} = 1e-20 for u = sqrt(B) x^2 by fixed point
    deg = m + n + g - 0.5 * (1.0 + alpha)
    u = 60.0
    for _ in range(8):
        u = 46.0 + max(deg, 0.0) * math.log(u)
    xmax = max(math.sqrt(u / sb), split + 1.0)

    def fx(xs: np.ndarray) -> np.ndarray:
        return (eval_psi_grid(params, m, xs) * eval_psi_grid(params, n, xs)
                * xs ** (-alpha))

    p = 2.0 / (2.0 * g - alpha)

    def f_left(ts: np.ndarray) -> np.ndarray:
        ts = np.maximum(ts, 1e-300)
        xs = ts ** p
        return p * ts ** (p - 1.0) * fx(xs)

    v1, e1 = adaptive_quad(f_left, 0.0, split ** (1.0 / p), spec)
    v2, e2 = adaptive_quad(fx, split, xmax, spec)
    return v1 + v2, e1 + e2


def overlap(params: OscillatorParams, m: int, n: int,
            spec: QuadratureSpec = QuadratureSpec()) -> float:
    """<m|n> by quadrature; equals delta_mn for a correct basis."""
    if m < 0 or n < 0:
        raise DomainError("overlap requires m, n >= 0")
    value, _ = _weighted_product_integral(params, m, n, 0.0, spec)
    return value


def matel_quadrature(params: OscillatorParams, m: int, n: int,
                     spec: QuadratureSpec = QuadratureSpec()) -> float:
    """<m|x^{-alpha}|n> by quadrature (the independent oracle for the
    closed-form matrix elements)."""
    if m < 0 or n < 0:
        raise DomainError("matel_quadrature requires m, n >= 0")
    value, _ = _weighted_product_integral(params, m, n, params.alpha, spec)
    return value


def double_sum_matel(params: OscillatorParams, m: int, n: int) -> float:
    """<m|x^{-alpha}|n> by the exact finite (m+1) x (n+1) double sum.

    This is the pre-Vandermonde form: a second closed-form route that shares
    no algebra with the single-3F2 expression, and the safe evaluation path
    when alpha/2 is an integer (where the 3F2 form has removable
    singularities).  The alternating terms cancel by many orders of
    magnitude for m, n of order ten, so the sum is accumulated in extended
    (long double) precision with term-ratio recurrences instead of repeated
    gamma-function calls.
    """
    params.require_regular()
    g = np.longdouble(params.gamma)
    a2 = np.longdouble(0.5) * np.longdouble(params.alpha)
    total = np.longdouble(0.0)
    # t(k, l) = (-m)_k (-n)_l (g - a2)_{k+l} / ((g)_k (g)_l k! l!)
    tk = np.longdouble(1.0)
    for k in range(m + 1):
        t = tk
        for l in range(n + 1):
            total += t
            t *= (l - n) * (g - a2 + k + l) / ((g + l) * (l + 1))
        tk *= (k - m) * (g - a2 + k) / ((g + k) * (k + 1))
    pref = 0.5 * norm_coeff(params, m) * norm_coeff(params, n) \
        * params.B ** (0.25 * params.alpha - 0.5 * params.gamma) \
        * math.exp(math.lgamma(params.gamma - 0.5 * params.alpha))
    return float(np.longdouble(pref) * total)
