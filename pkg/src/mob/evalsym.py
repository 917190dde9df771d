"""Numeric evaluation of symbolic objects (coefficients, hypergeometric
terms, piecewise results) against a concrete parameter assignment.

This is the bridge between the solver output and plain complex numbers;
the quadrature oracles in :mod:`mob.numeric` never see symbolic objects,
so a match between the two sides is meaningful verification.
"""

from __future__ import annotations

import cmath
import math
from typing import Mapping

from .algebra import (DEN, NUM, Atom, BaseExpr, GammaAtom, LinearForm,
                      TermCoefficient)
from .brackets import WEIGHT_RECIPROCAL
from .errors import PoleError, RegionError
from .numeric import cpow, gamma_c, loggamma_c, recip_gamma
from .solver import (BOUNDED, DIVERGENT, EVERYWHERE, NULL,
                     HypergeometricTerm, PiecewiseResult, Region)

Env = Mapping[Atom, complex]


def eval_linear(form: LinearForm, env: Env) -> complex:
    return form.eval(env)


def eval_base(base: BaseExpr, env: Env) -> complex:
    return base.eval(env)


def eval_coefficient(tc: TermCoefficient, env: Env) -> complex:
    """Numeric value of a term coefficient.

    Denominator gammas at poles contribute a factor 0; numerator poles
    raise.  Powers use the principal branch throughout.
    """
    value: complex = complex(tc.rational)
    for base, expo in tc.powers:
        value *= cpow(eval_base(base, env), eval_linear(expo, env))
    for form, k in tc.linear_factors:
        value *= eval_linear(form, env) ** k
    for g in tc.gammas:
        arg = eval_linear(g.argument, env)
        if g.position == NUM:
            value *= gamma_c(arg)
        else:
            value *= recip_gamma(arg)
    return value


def region_contains(region: Region, env: Env) -> bool:
    if region.kind == EVERYWHERE:
        return True
    if region.kind in (DIVERGENT, NULL):
        return False
    if region.zeff is None:
        return False
    return abs(eval_base(region.zeff, env)) < 1.0


def _series_plain(term: HypergeometricTerm, env: Env, tol: float,
                  max_terms: int) -> complex:
    """Ratio-recurrence summation for plain pFq-shaped terms (index-linear
    extra factors ride along through their term ratios)."""
    n = term.free_index
    ups = [eval_linear(u, env) for u in term.upper]
    los = [eval_linear(l, env) for l in term.lower]
    polys = [(eval_linear(form.drop(n), env), complex(form.coefficient(n)), p)
             for form, p in term.poly_factors]
    z = eval_base(term.argument, env) if term.argument is not None else 1.0
    t = 1.0 + 0j
    for c0, sl, p in polys:
        t *= c0 ** p
    total = t
    small = 0
    for k in range(max_terms):
        ratio = z / (k + 1)
        for u in ups:
            ratio *= u + k
        for l in los:
            if l + k == 0:
                raise PoleError(f"lower parameter {l} pole at k={k}")
            ratio /= l + k
        for c0, sl, p in polys:
            den = c0 + sl * k
            if den == 0:
                raise PoleError("linear factor vanishes inside the series")
            ratio *= ((c0 + sl * (k + 1)) / den) ** p
        t *= ratio
        if t == 0:
            return total
        total += t
        if abs(t) <= tol * max(abs(total), 1e-300):
            small += 1
            if small >= 3:
                return total
        else:
            small = 0
    raise RegionError(f"series did not settle within {max_terms} terms")


def _series_raw(term: HypergeometricTerm, env: Env, tol: float,
                max_terms: int) -> complex:
    """Direct log-space term evaluation of the raw coefficient.

    Handles irregular gammas (non-integer index slopes) and reciprocal
    weights; used when the plain Pochhammer path does not apply.  The
    value returned includes the prefactor (it evaluates raw_value).
    """
    n = term.free_index
    tc = term.raw_value
    total = 0j
    small = 0
    for k in range(max_terms):
        kenv = dict(env)
        kenv[n] = complex(k)
        sign = -1.0 if k % 2 else 1.0
        try:
            val = eval_coefficient(tc, kenv)
        except PoleError:
            raise PoleError(f"gamma pole inside series at k={k}")
        w = 1.0
        for role in term.weight_roles:
            if role == WEIGHT_RECIPROCAL:
                if k == 0:
                    raise RegionError("reciprocal-weighted series is formal at k=0")
                w /= k
        t = sign * val * w * math.exp(-math.lgamma(k + 1))
        total += t
        if abs(t) <= tol * max(abs(total), 1e-300) and k > 2:
            small += 1
            if small >= 3:
                return total
        else:
            small = 0
    raise RegionError(f"raw series did not settle within {max_terms} terms")


def _series_multi(term: HypergeometricTerm, env: Env, tol: float,
                  cap: int = 80) -> complex:
    """Nested direct summation over several free indices (diagnostic use)."""
    idx = term.free_indices
    total = 0j
    for diag in range(cap):
        shell = 0j
        for point in _lattice(len(idx), diag):
            kenv = dict(env)
            sign = 1.0
            for a, k in zip(idx, point):
                kenv[a] = complex(k)
                sign *= (-1.0 if k % 2 else 1.0) * math.exp(-math.lgamma(k + 1))
            shell += sign * eval_coefficient(term.raw_value, kenv)
        total += shell
        if diag > 3 and abs(shell) <= tol * max(abs(total), 1e-300):
            return total
    raise RegionError("multi-index series did not settle")


def _lattice(dim: int, total: int):
    if dim == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _lattice(dim - 1, total - first):
            yield (first,) + rest


def evaluate_term(term: HypergeometricTerm, env: Env, tol: float = 1e-13,
                  max_terms: int = 100_000, in_region: bool | None = None) -> complex:
    """Numeric value of one hypergeometric term at an assignment.

    Out-of-region evaluation is allowed only for one-parameter binomial
    series (closed form (1-z)^(-a)); everything else raises RegionError
    outside its region.  Degenerate-parameter terms raise PoleError.
    """
    if "parameter-degenerate" in term.flags:
        raise PoleError("term is parameter-degenerate; evaluate limits numerically")
    if term.region.kind == NULL:
        return 0j
    if term.free_index is None and not term.free_indices:
        return eval_coefficient(term.prefactor, env)
    if len(term.free_indices) > 1:
        return _series_multi(term, env, tol)

    inside = region_contains(term.region, env) if in_region is None else in_region
    plain = term.is_plain_pfq and not term.irregular_powers
    if not inside and term.region.kind != EVERYWHERE:
        if plain and term.pq == (1, 0):
            z = eval_base(term.argument, env)
            pref = eval_coefficient(term.prefactor, env)
            return pref * cpow(1.0 - z, -eval_linear(term.upper[0], env))
        terminating = any(
            (v := u.as_exact_value()) is not None and v.denominator == 1 and v <= 0
            for u in term.upper)
        if not terminating:
            raise RegionError(f"assignment lies outside {term.region}")
    if plain:
        pref = eval_coefficient(term.prefactor, env)
        return pref * _series_plain(term, env, tol, max_terms)
    return _series_raw(term, env, tol, max_terms)


def evaluate_piecewise(result: PiecewiseResult, env: Env, tol: float = 1e-13,
                       max_terms: int = 100_000) -> complex:
    """Value of the assembled result at an assignment: the sum of every
    piece whose region contains the point."""
    live = [t for region, terms in result.pieces
            if region_contains(region, env) for t in terms]
    if not live:
        raise RegionError("no piece of the result covers this assignment")
    return sum(evaluate_term(t, env, tol, max_terms) for t in live)


def make_env(assignment: Mapping[str, complex],
             atoms: Mapping[str, Atom]) -> dict[Atom, complex]:
    env = {}
    for name, value in assignment.items():
        if name not in atoms:
            raise KeyError(f"assignment for unknown symbol {name!r}")
        env[atoms[name]] = complex(value)
    return env
