"""Numeric oracle layer: complex gamma, pFq summation, special functions,
half-line and vertical-contour quadrature, and Richardson limits.

Everything here is deliberately independent of the symbolic solver: the
quadratures integrate the *original* integrands and the special functions
come from scipy, so agreement between the two sides is a genuine check.

Conventions
-----------
* tolerances are relative unless stated otherwise,
* all evaluators are pure functions of their arguments,
* gamma evaluation at a nonpositive integer raises :class:`PoleError`
  in numerator position; reciprocal gammas at poles evaluate to 0.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import special as _sp

from .errors import (ContourSeparationError, InsufficientDecayError,
                     PoleError, RegionError)

_POLE_TOL = 1e-12


def _near_nonpositive_int(z: complex) -> bool:
    return abs(z.imag) < _POLE_TOL and z.real < 0.5 and abs(z.real - round(z.real)) < _POLE_TOL


def gamma_c(z: complex) -> complex:
    """Complex gamma.  Relative error <= 1e-13 on the working strip."""
    z = complex(z)
    if _near_nonpositive_int(z):
        raise PoleError(f"gamma pole at {z}")
    return complex(_sp.gamma(z))


def loggamma_c(z: complex) -> complex:
    """Principal branch of log-gamma (poles raise)."""
    z = complex(z)
    if _near_nonpositive_int(z):
        raise PoleError(f"gamma pole at {z}")
    return complex(_sp.loggamma(z))


def recip_gamma(z: complex) -> complex:
    """1/Gamma(z); entire, zero at nonpositive integers."""
    z = complex(z)
    if _near_nonpositive_int(z):
        return 0.0
    return 1.0 / complex(_sp.gamma(z))


def cpow(base: complex, expo: complex) -> complex:
    """Principal-branch power; 0**e = 0 for Re e > 0."""
    if base == 0:
        return 0.0 if expo.real > 0 else complex("inf")
    return cmath.exp(complex(expo) * cmath.log(complex(base)))


# ---------------------------------------------------------------------------
# generalized hypergeometric series


def _neville_to_zero(xs: Sequence[float], ys: Sequence[complex]) -> complex:
    tab = list(ys)
    n = len(xs)
    for j in range(1, n):
        for i in range(n - j):
            tab[i] = (xs[i] * tab[i + 1] - xs[i + j] * tab[i]) / (xs[i] - xs[i + j])
    return tab[0]


def _pfq_at_unity(upper, lower, max_terms: int) -> complex:
    """Sum pFq(...; 1) for p = q+1 when sum(lower)+1-sum(upper) > 0.

    Terms decay like n**(-s); the truncated sum is completed with a
    two-coefficient Hurwitz-zeta tail fitted to the last computed terms.
    """
    s = float(sum(l.real for l in lower) + 1 - sum(u.real for u in upper))
    if s <= 0:
        raise RegionError("pFq at unity diverges (parameter balance <= 0)")
    N = min(max_terms, 120_000)
    n = np.arange(N, dtype=float)
    lt = -_sp.gammaln(n + 1).astype(complex)
    for u in upper:
        lt += _sp.loggamma(u + n) - _sp.loggamma(complex(u))
    for l in lower:
        lt -= _sp.loggamma(l + n) - _sp.loggamma(complex(l))
    t = np.exp(lt)
    total = complex(np.sum(t[::-1]))
    n1, n2 = float(N - 101), float(N - 1)
    c1 = t[int(n1)] * n1 ** s
    c2 = t[int(n2)] * n2 ** s
    d = (c1 - c2) / (1.0 / n1 - 1.0 / n2)
    c = c2 - d / n2
    total += c * _sp.zeta(s, N) + d * _sp.zeta(s + 1, N)
    return total


def eval_pfq(upper: Sequence[complex], lower: Sequence[complex], z: complex,
             tol: float = 1e-14, max_terms: int = 100_000) -> complex:
    """Generalized hypergeometric series sum_n prod(a)_n/prod(b)_n z^n/n!.

    Stops once |term| <= tol*|partial| holds for three consecutive terms.
    Nonterminating p = q+1 input requires |z| < 1 (or |z| = 1 with positive
    parameter balance, summed with a zeta tail); p > q+1 is rejected.
    1F0 uses the closed form (1-z)^(-a), valid in the cut plane.
    """
    upper = [complex(u) for u in upper]
    lower = [complex(l) for l in lower]
    z = complex(z)
    if z == 0:
        return 1.0
    terminating = any(abs(u.imag) < _POLE_TOL and u.real < 0.5
                      and abs(u.real - round(u.real)) < _POLE_TOL for u in upper)
    p, q = len(upper), len(lower)
    if p == 1 and q == 0 and not terminating:
        return cpow(1.0 - z, -upper[0])
    if not terminating:
        if p > q + 1:
            raise RegionError(f"{p}F{q} is divergent for z != 0")
        if p == q + 1 and abs(z) >= 1.0:
            if abs(abs(z) - 1.0) < 1e-12:
                return _pfq_at_unity(upper, lower, max_terms)
            raise RegionError(f"{p}F{q} series requires |z| < 1, got |z| = {abs(z)}")
    total = 1.0 + 0j
    term = 1.0 + 0j
    small = 0
    for n in range(max_terms):
        ratio = z / (n + 1)
        for u in upper:
            ratio *= u + n
        for l in lower:
            if l + n == 0:
                raise PoleError(f"lower parameter {l} hits a pole at n = {n}")
            ratio /= l + n
        term *= ratio
        if term == 0:
            return total
        total += term
        if abs(term) <= tol * max(abs(total), 1e-300):
            small += 1
            if small >= 3:
                return total
        else:
            small = 0
    raise RegionError(f"pFq did not converge within {max_terms} terms")


# ---------------------------------------------------------------------------
# special functions


def mittag_leffler(alpha: float, beta: float, z: complex, tol: float = 1e-15) -> complex:
    """E_{alpha,beta}(z) by direct series; alpha > 0, |z| moderate."""
    if alpha <= 0:
        raise ValueError("mittag_leffler requires alpha > 0")
    total = 0j
    for n in range(100_000):
        c = recip_gamma(alpha * n + beta)
        term = c * z ** n
        total += term
        if n > 4 and abs(term) <= tol * max(abs(total), 1e-300) and abs(z) ** (n + 1) * abs(recip_gamma(alpha * (n + 1) + beta)) <= tol:
            return total
    raise RegionError("Mittag-Leffler series did not converge")


def eval_special(fid: str, params: Sequence[float], x: complex) -> complex:
    """Reference special-function values used as verification oracles.

    Supported ids: BesselI, BesselJ, BesselK, MittagLeffler, Erf, Ei, Exp.
    Bessel evaluations require real arguments (positive for K).
    """
    if fid == "Exp":
        return cmath.exp(x)
    if fid == "Erf":
        return complex(_sp.erf(float(x.real))) if abs(complex(x).imag) < 1e-300 else complex(_sp.erf(x))
    if fid == "Ei":
        return complex(_sp.expi(float(complex(x).real)))
    if fid == "MittagLeffler":
        alpha, beta = params
        return mittag_leffler(alpha, beta, x)
    order = float(params[0])
    xr = float(complex(x).real)
    if fid == "BesselJ":
        return complex(_sp.jv(order, xr))
    if fid == "BesselI":
        return complex(_sp.iv(order, xr))
    if fid == "BesselK":
        if xr <= 0:
            raise ValueError("BesselK requires x > 0")
        return complex(_sp.kv(order, xr))
    raise ValueError(f"unknown special function id {fid!r}")


# ---------------------------------------------------------------------------
# half-line quadrature (tanh-sinh / exp-sinh, split at 1)


def quad_halfline(f: Callable[[float], complex], tol: float = 1e-10,
                  max_level: int = 11) -> tuple[complex, float]:
    """Integrate f over (0, inf) with double-exponential quadrature.

    Splits at 1: tanh-sinh on (0, 1] handles endpoint singularities,
    exp-sinh on [1, inf) handles algebraic or exponential decay.
    Returns (value, error_estimate); raises RegionError when the level
    doubling fails to settle below ``tol`` relative.
    """
    half_pi = math.pi / 2

    def safe_f(x: float) -> complex:
        try:
            v = complex(f(x))
        except (OverflowError, ZeroDivisionError):
            return 0j
        # under/overflow at extreme nodes (weight ~ 1e-280) must not poison
        # the sum; the true contribution there is negligible
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            return 0j
        return v

    def sum_map(phi, dphi, tmax: float) -> Callable[[float], complex]:
        def level_sum(h: float, only_odd: bool) -> complex:
            total = 0j
            ks = range(1, int(tmax / h) + 1, 2) if only_odd else range(0, int(tmax / h) + 1)
            for k in ks:
                for t in ((k * h,) if k == 0 else (k * h, -k * h)):
                    x = phi(t)
                    w = dphi(t)
                    if not (math.isfinite(x) and math.isfinite(w)) or x <= 0 or w == 0:
                        continue
                    total += safe_f(x) * w
                    if k == 0:
                        break
            return total
        return level_sum

    # tanh-sinh on (0,1):   x = 1/(1+exp(-pi*sinh t)),  dx = pi/2 cosh t / (1+cosh(pi sinh t))
    def phi_a(t):
        try:
            return 1.0 / (1.0 + math.exp(-math.pi * math.sinh(t)))
        except OverflowError:
            return 1.0 if t > 0 else 0.0

    def dphi_a(t):
        try:
            u = math.pi * math.sinh(t)
            return half_pi * math.cosh(t) / (1.0 + math.cosh(u))
        except OverflowError:
            return 0.0

    # exp-sinh on (1,inf):  x = 1 + exp(pi/2 sinh t)
    def phi_b(t):
        try:
            return 1.0 + math.exp(half_pi * math.sinh(t))
        except OverflowError:
            return math.inf

    def dphi_b(t):
        try:
            e = math.exp(half_pi * math.sinh(t))
        except OverflowError:
            return 0.0
        return e * half_pi * math.cosh(t)

    value = 0j
    err = 0.0
    for phi, dphi, lo in ((phi_a, dphi_a, True), (phi_b, dphi_b, False)):
        lsum = sum_map(phi, dphi, tmax=6.5)
        h = 0.5
        total = lsum(h, False) * h
        prev = None
        for _ in range(max_level):
            h *= 0.5
            total = total * 0.5 + lsum(h, True) * h
            if prev is not None:
                delta = abs(total - prev)
                scale = max(abs(total), 1e-300)
                if delta <= tol * scale:
                    err = max(err, delta)
                    break
            prev = total
        else:
            raise RegionError("half-line quadrature did not converge")
        value += total
    return value, err


def quad_halfline_2d(f: Callable[[float, float], complex], tol: float = 1e-8) -> tuple[complex, float]:
    """Iterated double-exponential quadrature over (0,inf)^2."""
    def outer(y: float) -> complex:
        v, _ = quad_halfline(lambda x: f(x, y), tol=tol * 0.1)
        return v
    return quad_halfline(outer, tol=tol)


# ---------------------------------------------------------------------------
# vertical-contour quadrature


@dataclass(frozen=True)
class GammaFactorData:
    """Numeric view of one gamma factor: Gamma(a0 + slope*s)^(+-1)."""
    a0: complex
    slope: float
    sign: int  # +1 numerator, -1 denominator


@dataclass(frozen=True)
class PowerFactorData:
    """Numeric view of one power factor: base^(e0 + slope*s)."""
    base: complex
    e0: complex
    slope: complex


def select_numeric_contour(gammas: Sequence[GammaFactorData]) -> float:
    """Real abscissa strictly between left-moving and right-moving poles.

    Numerator gammas Gamma(a + A s) with A > 0 put poles on Re s <= -Re(a)/A
    (moving left); Gamma(c - C s), C > 0 puts them on Re s >= Re(c)/C.
    Returns the midpoint of the separating interval; one-sided cases use a
    unit offset from the single bound.
    """
    left = [-g.a0.real / g.slope for g in gammas if g.sign > 0 and g.slope > 0]
    right = [-g.a0.real / g.slope for g in gammas if g.sign > 0 and g.slope < 0]
    lo = max(left) if left else None
    hi = min(right) if right else None
    if lo is None and hi is None:
        return 0.0
    if lo is None:
        return hi - 1.0
    if hi is None:
        return lo + 1.0
    if not lo < hi:
        raise ContourSeparationError(
            f"no separating line: left poles reach {lo}, right poles start at {hi}")
    return 0.5 * (lo + hi)


def _contour_rates(gammas: Sequence[GammaFactorData],
                   powers: Sequence[PowerFactorData]) -> tuple[float, float, float, float]:
    """(up_rate, down_rate, tilt_balance, log_drift) of the integrand.

    up/down rates are the exponential decay rates of |integrand| as
    Im s -> +-inf on a vertical line; tilt_balance is the signed gamma
    slope sum controlling super-exponential behaviour along Re s; log_drift
    is d log|power part| / d Re s.
    """
    gdecay = (math.pi / 2) * sum(g.sign * abs(g.slope) for g in gammas)
    up = gdecay
    down = gdecay
    drift = 0.0
    for p in powers:
        if p.base == 0:
            continue
        lg = cmath.log(p.base)
        up += (p.slope * 1j * lg).real * -1  # |base^{i tau slope}| = e^{-tau slope arg(base)}
        down += (p.slope * 1j * lg).real
        drift += (p.slope * lg).real
    balance = sum(g.sign * g.slope for g in gammas)
    return up, down, balance, drift


def quad_contour(gammas: Sequence[GammaFactorData], powers: Sequence[PowerFactorData],
                 c: float, tol: float = 1e-10, prefactor: complex = 1.0,
                 max_panels: int = 400) -> complex:
    """(1/2 pi i) times the integral of the gamma/power product over a line
    through ``c``.

    The contour is vertical when both tail rates decay; in the marginal
    case (|arg z| = pi cancelling the gamma decay on one side) the two rays
    are tilted toward the real direction in which the power part decays,
    which restores exponential convergence.  Gauss-Legendre panels of
    growing extent are accumulated until the tail estimate drops below
    ``tol`` relative.
    """
    up, down, balance, drift = _contour_rates(gammas, powers)

    tilt = 0.0
    if min(up, down) < 0.05:
        if balance > 1e-9:
            tilt = -0.45
        elif balance < -1e-9:
            tilt = 0.45
        elif abs(drift) > 1e-9:
            tilt = -0.45 if drift > 0 else 0.45
        else:
            raise InsufficientDecayError(
                "contour integrand has no decaying direction (rates "
                f"up={up:.3g}, down={down:.3g})")

    def integrand(tau: np.ndarray) -> np.ndarray:
        s = c + tilt * np.abs(tau) + 1j * tau
        ds = tilt * np.sign(tau) + 1j
        lg = np.zeros_like(s)
        for g in gammas:
            lg = lg + g.sign * _sp.loggamma(g.a0 + g.slope * s)
        for p in powers:
            if p.base == 0:
                return np.zeros_like(s)
            lg = lg + (p.e0 + p.slope * s) * cmath.log(p.base)
        return np.exp(lg) * ds

    nodes, weights = leggauss(32)
    total = 0j
    width = 1.0
    t_edge = 0.0
    tail_mag = math.inf
    panel = 0
    while panel < max_panels:
        panel += 1
        a, b = t_edge, t_edge + width
        mid, half = 0.5 * (a + b), 0.5 * (b - a)
        tau = mid + half * nodes
        contrib_up = np.sum(integrand(tau) * weights) * half
        contrib_dn = np.sum(integrand(-tau[::-1]) * weights[::-1]) * half
        total += contrib_up + contrib_dn
        t_edge = b
        tail_mag = abs(contrib_up) + abs(contrib_dn)
        scale = max(abs(total), 1e-300)
        if t_edge > 4.0 and tail_mag <= 0.1 * tol * scale:
            break
        if t_edge > 30.0:
            width = min(width * 1.5, 40.0)
    else:
        raise InsufficientDecayError("contour tail did not fall below tolerance")
    return prefactor * total / (2j * math.pi)


# ---------------------------------------------------------------------------
# epsilon limits


def eps_limit(f: Callable[[float], complex], eps0: float = 0.04,
              ratio: float = 2 ** -0.5, points: int = 6, power: int = 2,
              tol: float = 1e-8) -> tuple[complex, float]:
    """Richardson limit of f(eps) as eps -> 0+.

    Evaluates on the geometric ladder eps0 * ratio**k and extrapolates a
    polynomial in eps**power to zero (power=2 for even functions).
    Returns (limit, error_estimate); a non-Cauchy tableau raises
    RegionError ("inconclusive").
    """
    eps = [eps0 * ratio ** k for k in range(points)]
    ys = [complex(f(e)) for e in eps]
    xs = [e ** power for e in eps]
    full = _neville_to_zero(xs, ys)
    partial = _neville_to_zero(xs[:-1], ys[:-1])
    est = abs(full - partial)
    if est > max(10 * tol * max(abs(full), 1e-300), 1e-13):
        raise RegionError(f"epsilon extrapolation is not Cauchy (est {est:.3g})")
    return full, est
