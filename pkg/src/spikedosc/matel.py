"""Closed-form matrix elements <m|x^{-alpha}|n> and Hamiltonian assembly.

The general element is a single terminating 3F2 at unit argument multiplied
by a gamma-ratio prefactor; the alpha = 2 value is the two-branch limit of
that expression, and couplings of the form lambda = gamma - alpha/2 admit a
finite "vestige" limit as lambda -> 0.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .basis import OscillatorParams, energy_n
from .errors import DomainError, PoleError
from .specfun import hyp_3f2_terminating


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("SPIKED_OSC_THREADS", "1")))
    except ValueError:
        return 1


def _log_prefactor(params: OscillatorParams, m: int, n: int) -> float:
    """log of B^{alpha/4} sqrt((g)_n (g)_m / (n! m!)) G(g-a/2) (a/2)_n / ((g)_n G(g))."""
    g = params.gamma
    a2 = 0.5 * params.alpha
    lgn, _ = _kernels.lnpoch_signed(g, n)
    lgm, _ = _kernels.lnpoch_signed(g, m)
    lan, _ = _kernels.lnpoch_signed(a2, n)
    return (0.25 * params.alpha * math.log(params.B)
            + 0.5 * (lgn + lgm - math.lgamma(n + 1.0) - math.lgamma(m + 1.0))
            + math.lgamma(g - a2) + lan - lgn - math.lgamma(g))


def matrix_element(params: OscillatorParams, m: int, n: int) -> float:
    """<m|x^{-alpha}|n> via the single-3F2 closed form.

    Requires alpha < 2 gamma and gamma - alpha/2 away from the non-positive
    integers.  alpha = 2 is dispatched to its explicit closed form; for
    other even alpha the (1 - alpha/2)_k factor truncates the 3F2 sum early,
    which is harmless in the canonical index order used below.

    The element is symmetric in (m, n) but the formula is not: with the
    larger index in the terminating slot the alternating sum cancels by up
    to ~1e24 at m = 30 (unsummable in any fixed precision), while with the
    smaller index terminating all partial sums stay O(1).  The indices are
    therefore swapped into the well-conditioned order before evaluation.
    """
    if m < 0 or n < 0:
        raise DomainError("matrix_element requires m, n >= 0")
    params.require_regular()
    g = params.gamma
    a2 = 0.5 * params.alpha
    if g - a2 == round(g - a2) and g - a2 <= 0.0:
        raise PoleError(f"gamma - alpha/2 = {g - a2} is a non-positive integer")
    if params.alpha == 2.0:
        return matrix_element_alpha2(params, m, n)
    mm, nn = (m, n) if m <= n else (n, m)
    f = hyp_3f2_terminating(mm, g - a2, 1.0 - a2, g, 1.0 - a2 - nn)
    sign = -1.0 if (m + n) % 2 else 1.0
    return sign * math.exp(_log_prefactor(params, mm, nn)) * f


def matrix_element_alpha2(params: OscillatorParams, m: int, n: int) -> float:
    """The alpha -> 2 limit: (-1)^{m+n} sqrt(B)/(gamma-1)
    sqrt(max!/min!) sqrt((g)_n (g)_m) / (g)_max."""
    g = params.gamma
    if g <= 1.0:
        raise PoleError(f"alpha = 2 element has a pole at gamma = 1 (gamma = {g})")
    lo, hi = (m, n) if m <= n else (n, m)
    lgl, _ = _kernels.lnpoch_signed(g, lo)
    lgh, _ = _kernels.lnpoch_signed(g, hi)
    ln = (0.5 * math.log(params.B) - math.log(g - 1.0)
          + 0.5 * (math.lgamma(hi + 1.0) - math.lgamma(lo + 1.0))
          + 0.5 * (lgl + lgh) - lgh)
    sign = -1.0 if (m + n) % 2 else 1.0
    return sign * math.exp(ln)


@dataclass(frozen=True)
class MatrixElementTable:
    """Dense symmetric table of matrix elements (or Hamiltonian entries)."""

    params: OscillatorParams
    N: int
    values: np.ndarray
    kind: str = "x_minus_alpha"

    def to_csv(self) -> str:
        lines = ["m,n,value"]
        for m in range(self.N):
            for n in range(self.N):
                lines.append(f"{m},{n},{self.values[m, n]:.17g}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps({
            "kind": self.kind,
            "params": self.params.to_dict(),
            "N": self.N,
            "values": [[float(f"{v:.17g}") for v in row] for row in self.values],
        }, indent=2)

    @staticmethod
    def parse_csv(text: str) -> np.ndarray:
        rows = [line.split(",") for line in text.strip().splitlines()[1:]]
        N = max(int(r[0]) for r in rows) + 1
        out = np.empty((N, N))
        for r in rows:
            out[int(r[0]), int(r[1])] = float(r[2])
        return out


def build_table(params: OscillatorParams, N: int) -> MatrixElementTable:
    """Dense N x N table of <m|x^{-alpha}|n>.

    Only the upper triangle is computed; mirroring makes the stored table
    bit-exact symmetric.  Entries are independent, so the fill parallelizes
    over rows when SPIKED_OSC_THREADS > 1.
    """
    if N < 1:
        raise DomainError(f"table dimension must be >= 1, got {N}")
    params.require_regular()
    values = np.zeros((N, N))

    def fill_row(m: int) -> None:
        for n in range(m, N):
            values[m, n] = matrix_element(params, m, n)

    nt = _threads()
    if nt > 1:
        with ThreadPoolExecutor(max_workers=nt) as ex:
            list(ex.map(fill_row, range(N)))
    else:
        for m in range(N):
            fill_row(m)
    iu = np.triu_indices(N, 1)
    values[(iu[1], iu[0])] = values[iu]
    return MatrixElementTable(params=params, N=N, values=values)


def build_hamiltonian(params: OscillatorParams, N: int) -> MatrixElementTable:
    """H_mn = 2 sqrt(B) (2n + gamma) delta_mn + lambda <m|x^{-alpha}|n>."""
    if params.lam == 0.0:
        values = np.diag([energy_n(params, k) for k in range(N)]).astype(float)
        return MatrixElementTable(params=params, N=N, values=values,
                                  kind="hamiltonian")
    table = build_table(params, N)
    values = params.lam * table.values
    values[np.diag_indices(N)] += [energy_n(params, k) for k in range(N)]
    return MatrixElementTable(params=params, N=N, values=values,
                              kind="hamiltonian")


def vestige_hamiltonian_entry(B: float, gamma: float, lam: float,
                              m: int, n: int, path: str = "linear") -> float:
    """H_mn along a coupling path that removes the gamma - alpha/2 pole.

    path = "linear": lambda = gamma - alpha/2, so alpha = 2 (gamma - lambda)
    and the off-diagonal part tends to the finite vestige limit as
    lambda -> 0.  path = "sqrt": sqrt(lambda) = gamma - alpha/2, under which
    the off-diagonal part vanishes in the limit.
    """
    if lam <= 0.0:
        raise DomainError("vestige path requires lambda > 0; use vestige_limit_entry at 0")
    eps = lam if path == "linear" else math.sqrt(lam)
    if path not in ("linear", "sqrt"):
        raise DomainError(f"unknown vestige path {path!r}")
    alpha = 2.0 * (gamma - eps)
    if alpha <= 0.0:
        raise DomainError("path parameter too large: alpha <= 0")
    g = gamma
    a2 = 0.5 * alpha
    diag = 2.0 * math.sqrt(B) * (2.0 * n + g) if m == n else 0.0
    mm, nn = (m, n) if m <= n else (n, m)
    # lambda * Gamma(g - a2) = lambda * Gamma(eps) combined into
    # Gamma(1 + eps) * (lam / eps) to stay finite as eps -> 0
    lgn, _ = _kernels.lnpoch_signed(g, nn)
    lgm, _ = _kernels.lnpoch_signed(g, mm)
    lan, _ = _kernels.lnpoch_signed(a2, nn)
    ln = (0.25 * alpha * math.log(B)
          + 0.5 * (lgn + lgm - math.lgamma(nn + 1.0) - math.lgamma(mm + 1.0))
          + math.lgamma(1.0 + eps) + lan - lgn - math.lgamma(g))
    f = hyp_3f2_terminating(mm, g - a2, 1.0 - a2, g, 1.0 - a2 - nn)
    sign = -1.0 if (m + n) % 2 else 1.0
    return diag + (lam / eps) * sign * math.exp(ln) * f


def vestige_limit_entry(B: float, gamma: float, m: int, n: int) -> float:
    """The lambda -> 0 limit of the linear vestige path:
    2 sqrt(B) (2n + gamma) delta_mn + (-1)^{m+n} B^{gamma/2}/Gamma(gamma)
    sqrt((gamma)_n (gamma)_m / (n! m!))."""
    g = gamma
    diag = 2.0 * math.sqrt(B) * (2.0 * n + g) if m == n else 0.0
    lgn, _ = _kernels.lnpoch_signed(g, n)
    lgm, _ = _kernels.lnpoch_signed(g, m)
    ln = (0.5 * g * math.log(B) - math.lgamma(g)
          + 0.5 * (lgn + lgm - math.lgamma(n + 1.0) - math.lgamma(m + 1.0)))
    sign = -1.0 if (m + n) % 2 else 1.0
    return diag + sign * math.exp(ln)
