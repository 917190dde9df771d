"""Mellin-Barnes machinery: bracket/contour elimination, the gamma
expansion pipeline for line integrals, multi-contour iteration, numeric
contour selection and the product-transform for Mellin transforms of
f(x) g(bx) pairs."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import (CONTOUR, DEN, INDEX, NUM, ONE, Atom, AtomFactory,
                      BaseExpr, GammaAtom, LinearForm, Q, TermCoefficient)
from .brackets import (Bracket, BracketSeriesExpr, ContourRepresentation,
                       gamma_to_brackets)
from .errors import SchemaError, SingularContourSystemError
from . import numeric


@dataclass(frozen=True)
class MellinBarnesIntegrand:
    """Gamma-ratio integrand of a line integral (1/2 pi i) int F(s) z^s ds.

    ``gammas`` carry both numerator and denominator factors; every gamma
    argument must be affine in ``variable`` with nonzero slope unless it is
    a pure prefactor.  ``power`` is the (base, exponent-form) pair giving
    the z**(affine in s) factor.
    """

    variable: Atom
    gammas: tuple[GammaAtom, ...]
    power: tuple[BaseExpr, LinearForm]
    prefactor: TermCoefficient = ONE

    def __post_init__(self):
        slopes = [g.argument.coefficient(self.variable) for g in self.gammas]
        if not any(c != 0 and g.position == NUM for c, g in zip(slopes, self.gammas)):
            raise SchemaError("integrand needs at least one numerator gamma in the contour variable")

    def numerator_choices(self) -> tuple[int, ...]:
        """Positions of the numerator gammas that can eliminate the contour."""
        out = []
        for i, g in enumerate(self.gammas):
            if g.position == NUM and g.argument.coefficient(self.variable) != 0:
                out.append(i)
        return tuple(out)

    def as_expr(self) -> BracketSeriesExpr:
        base, expo = self.power
        coeff = self.prefactor * TermCoefficient.make(
            1, powers=((base, expo),), gammas=self.gammas)
        return BracketSeriesExpr(contour_vars=(self.variable,),
                                 coefficient=coeff, two_pi_i=-1)


def eliminate_bracket_contour(e: BracketSeriesExpr, v: Atom, b: Bracket) -> BracketSeriesExpr:
    """Consume one contour integral against one bracket.

    integral F(s) <beta s + alpha> ds = (2 pi i / |beta|) F(-alpha/beta);
    the 2 pi i cancels one unit of the expression's 1/(2 pi i) bookkeeping.
    """
    if b not in e.brackets:
        raise ValueError("bracket does not belong to the expression")
    beta = b.argument.coefficient(v)
    if beta == 0:
        raise SingularContourSystemError(f"bracket {b} cannot eliminate {v}")
    v_star = b.argument.drop(v) * (Q(-1) / beta)
    rest = list(e.brackets)
    rest.remove(b)
    new_brackets = tuple(Bracket(x.argument.substitute(v, v_star)) for x in rest)
    coeff = e.coefficient.substitute(v, v_star).scaled(Q(1) / abs(beta))
    return BracketSeriesExpr(
        e.indices,
        tuple(c for c in e.contour_vars if c != v),
        coeff, new_brackets, e.special_weights, e.two_pi_i + 1)


def expand_contour_gammas(e: BracketSeriesExpr, factory: AtomFactory) -> BracketSeriesExpr:
    """Replace every numerator gamma involving a contour variable by its
    bracket series (fresh index per gamma); denominator gammas are kept."""
    out = e
    cvars = set(e.contour_vars)
    for g in e.coefficient.gammas_at(NUM):
        if any(a in cvars for a in g.argument.atoms()):
            piece = gamma_to_brackets(g, factory.fresh_index())
            coeff = TermCoefficient.make(
                out.coefficient.rational,
                out.coefficient.powers,
                tuple(x for x in out.coefficient.gammas if x != g),
                out.coefficient.linear_factors)
            out = BracketSeriesExpr(
                out.indices + piece.indices, out.contour_vars, coeff,
                out.brackets + piece.brackets, out.special_weights, out.two_pi_i)
    return out


def bracket_candidates(e: BracketSeriesExpr, v: Atom) -> tuple[Bracket, ...]:
    """Brackets able to eliminate ``v``, in deterministic preference order:
    smallest index ordinal first (gamma-expansion brackets carry the fresh
    index of their gamma), index-free brackets last."""
    cands = []
    for pos, b in enumerate(e.brackets):
        if b.argument.coefficient(v) == 0:
            continue
        idx = [a.ordinal for a in b.argument.atoms() if a.kind == INDEX]
        cands.append(((min(idx) if idx else float("inf"), pos), b))
    cands.sort(key=lambda t: t[0])
    return tuple(b for _, b in cands)


def iterate_multicontour(e: BracketSeriesExpr,
                         choices: Mapping[Atom, Bracket] | None = None) -> BracketSeriesExpr:
    """Eliminate every contour variable by repeated bracket elimination.

    The cumulative coefficient picked up equals 1/|det A| of the linear
    system formed by the used brackets (order independent).  Raises when
    some variable has no usable bracket.
    """
    out = e
    for v in e.contour_vars:
        if choices and v in choices:
            cand = choices[v]
            if cand.argument.coefficient(v) == 0:
                raise SingularContourSystemError(f"chosen bracket cannot eliminate {v}")
        else:
            cands = bracket_candidates(out, v)
            if not cands:
                raise SingularContourSystemError(f"no bracket can eliminate {v}")
            cand = cands[0]
        out = eliminate_bracket_contour(out, v, cand)
    return out


def mb_to_bracket_series(m: MellinBarnesIntegrand, choice: int,
                         factory: AtomFactory) -> BracketSeriesExpr:
    """The line-integral pipeline: expand all numerator gammas into bracket
    series, then eliminate the contour with the bracket born from the
    ``choice``-th numerator gamma.  Each of the M+P numerator gammas is an
    admissible choice and yields one series representation of the integral."""
    choices = m.numerator_choices()
    if not 0 <= choice < len(choices):
        raise ValueError(f"choice must be in [0, {len(choices)})")
    chosen_gamma = m.gammas[choices[choice]]
    expanded = expand_contour_gammas(m.as_expr(), factory)
    target = _bracket_for_gamma(expanded, chosen_gamma)
    return eliminate_bracket_contour(expanded, m.variable, target)


def _bracket_for_gamma(expanded: BracketSeriesExpr, gamma: GammaAtom) -> Bracket:
    """The expansion bracket <gamma.argument + fresh index>."""
    for b in expanded.brackets:
        diff = b.argument - gamma.argument
        if diff.constant == 0 and len(diff.terms) == 1:
            atom, coeff = diff.terms[0]
            if atom.kind == INDEX and coeff == 1:
                return b
    raise SingularContourSystemError("no bracket matches the chosen gamma")


def select_numeric_contour(m: MellinBarnesIntegrand,
                           assignment: Mapping[Atom, complex]) -> float:
    """Midpoint abscissa separating left-moving from right-moving poles
    for a concrete parameter assignment."""
    data = []
    for g in m.gammas:
        slope = g.argument.coefficient(m.variable)
        a0 = g.argument.drop(m.variable).eval(assignment)
        data.append(numeric.GammaFactorData(a0, float(slope),
                                            1 if g.position == NUM else -1))
    return numeric.select_numeric_contour(data)


def product_transform(f_coefficient: TermCoefficient, f_index: Atom,
                      beta: Fraction, g: ContourRepresentation, var: Atom,
                      alpha: LinearForm) -> ContourRepresentation:
    """Mellin transform of a product f(x) g(x) against x^(alpha-1) dx.

    Given f(x) = sum_n phi_n F(n) x^(beta n) and g's contour representation
    with total x-exponent e0 + e1*s (kappa = -e1), the half-line integral
    becomes a bracket in n and collapses the sum, leaving

        (1/|beta|) (1/2 pi i) int phi(s) Gamma((alpha_eff - kappa s)/beta)
                                         F((kappa s - alpha_eff)/beta) ds

    with alpha_eff = alpha + e0 absorbing any fixed x-power of g (any scale
    of g's argument stays inside phi).
    """
    s = g.variable
    x_exp_total = LinearForm.const(0)
    phi_powers = []
    for base, expo in g.integrand.powers:
        chi, rest = base.split_on(var)
        if chi != 0:
            x_exp_total = x_exp_total + expo * chi
            if not rest.is_one:
                phi_powers.append((rest, expo))
        else:
            phi_powers.append((base, expo))
    pref_powers = []
    for base, expo in g.prefactor.powers:
        chi, rest = base.split_on(var)
        if chi != 0:
            x_exp_total = x_exp_total + expo * chi
            if not rest.is_one:
                pref_powers.append((rest, expo))
        else:
            pref_powers.append((base, expo))
    e1 = x_exp_total.coefficient(s)
    e0 = x_exp_total.drop(s)
    if e1 == 0:
        raise SchemaError("contour factor carries no x^s dependence")
    kappa = -e1
    alpha_eff = alpha + e0
    n_star = (LinearForm.of(s) * kappa - alpha_eff) * (Q(1) / beta)
    new_factor = f_coefficient.substitute(f_index, n_star)
    gamma_arg = (alpha_eff - LinearForm.of(s) * kappa) * (Q(1) / beta)
    integrand = TermCoefficient.make(
        g.integrand.rational, tuple(phi_powers), g.integrand.gammas,
        g.integrand.linear_factors)
    integrand = integrand * new_factor
    integrand = integrand.times_gamma(gamma_arg, NUM)
    prefactor = TermCoefficient.make(
        g.prefactor.rational * Q(1) / abs(beta), tuple(pref_powers),
        g.prefactor.gammas, g.prefactor.linear_factors)
    return ContourRepresentation(s, prefactor, integrand)
