"""Problem pipeline: expansion of integrand factors into bracket series,
contour elimination, series solving and report assembly.

Stages (each recorded in the complexity trace):

1. expand  -- catalog expansion of every factor; half-line integrals are
   absorbed into brackets; line-integral factors contribute contour
   variables.
2. eliminate -- if the generalized complexity index is positive, numerator
   gammas carrying contour variables are expanded first (this is what
   guarantees all series representations); every contour variable is then
   consumed against a bracket.
3. solve  -- enumeration of maximal-rank free-index choices, classification
   and region-wise assembly.

The elimination choice is deterministic (bracket holding the earliest
fresh index); ``choice`` selects an alternative for the first contour
variable and ``choice="all"`` enumerates every admissible one.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import (CONTOUR, DEN, NUM, Atom, BaseExpr, GammaAtom,
                      LinearForm, Q, TermCoefficient)
from .brackets import (BracketSeriesExpr, ContourRepresentation, FunctionSpec,
                       complexity_index, expand_known, absorb_halfline)
from .contour import (MellinBarnesIntegrand, bracket_candidates,
                      eliminate_bracket_contour, expand_contour_gammas,
                      iterate_multicontour, product_transform)
from .errors import BracketError, SchemaError, SingularContourSystemError
from .problems import Factor, Problem, parse_problem
from .solver import (EliminationSolution, HypergeometricTerm, PiecewiseResult,
                     assemble_result, classify_hypergeometric, enumerate_e3)


@dataclass(frozen=True)
class TraceEntry:
    stage: str
    sums: int
    contours: int
    brackets: int
    halflines: int

    @property
    def iota(self) -> int:
        return self.sums + self.contours - self.brackets - self.halflines

    def to_dict(self):
        return {"stage": self.stage, "sums": self.sums,
                "contours": self.contours, "brackets": self.brackets,
                "halflines": self.halflines, "iota": self.iota}


@dataclass
class ChoiceRun:
    """One full solve under a fixed elimination choice."""

    label: str
    expanded: BracketSeriesExpr
    series: BracketSeriesExpr | None
    solutions: list[EliminationSolution]
    terms: list[HypergeometricTerm]
    result: PiecewiseResult | None
    trace: list[TraceEntry]
    contour_result: ContourRepresentation | None = None


def _trace(stage: str, e: BracketSeriesExpr, halflines: int = 0) -> TraceEntry:
    return TraceEntry(stage, len(e.indices), len(e.contour_vars),
                      len(e.brackets), halflines)


def build_mb_integrand(p: Problem, factors: Sequence[Factor]) -> MellinBarnesIntegrand:
    sv = p.atom(p.contour_variables[0])
    gammas = []
    power = None
    pref = p.prefactor
    for f in factors:
        if f.type == "gamma":
            gammas.append(f.gamma)
        elif f.type == "power":
            base, expo = f.power
            if expo.coefficient(sv) != 0:
                if power is not None:
                    raise SchemaError("more than one contour power factor")
                power = f.power
            else:
                pref = pref.times_power(base, expo)
        else:
            raise SchemaError("InverseMellin factors must be gammas and powers")
    if power is None:
        raise SchemaError("InverseMellin problem lacks its z^s power factor")
    return MellinBarnesIntegrand(variable=sv, gammas=tuple(gammas),
                                 power=power, prefactor=pref)


def expand_problem(p: Problem, method: int = 0) -> tuple[BracketSeriesExpr, list[TraceEntry]]:
    """Stage 1: expansion and half-line absorption."""
    factors = p.methods[method]
    trace: list[TraceEntry] = []
    if p.kind == "InverseMellin":
        expr = build_mb_integrand(p, factors).as_expr()
        trace.append(_trace("expand", expr))
        return expr, trace

    expr = BracketSeriesExpr(coefficient=p.prefactor)
    for f in factors:
        if f.type == "power":
            expr = expr.map_coefficient(lambda tc: tc.times_power(*f.power))
        elif f.type == "gamma":
            expr = expr.map_coefficient(
                lambda tc: tc.times_gamma(f.gamma.argument, f.gamma.position))
        elif f.type == "function":
            piece = expand_known(f.function, p.factory)
            if isinstance(piece, ContourRepresentation):
                piece = piece.as_expr()
            expr = expr.product(piece)
    pending = len(p.integration_variables)
    trace.append(_trace("expand", expr, pending))
    for v in p.integration_variables:
        expr = absorb_halfline(expr, p.atom(v), p.measures[v])
        pending -= 1
    trace.append(_trace("absorb", expr, pending))
    return expr, trace


def eliminate_contours(expr: BracketSeriesExpr, p: Problem, choice: int = 0,
                       trace: list[TraceEntry] | None = None) -> BracketSeriesExpr:
    """Stage 2: gamma expansion (if the index is positive) and elimination."""
    trace = trace if trace is not None else []
    if expr.contour_vars:
        if complexity_index(expr) > 0:
            expr = expand_contour_gammas(expr, p.factory)
            trace.append(_trace("gamma-expand", expr))
        first = True
        for v in expr.contour_vars:
            cands = bracket_candidates(expr, v)
            if not cands:
                raise SingularContourSystemError(f"no bracket can eliminate {v}")
            if first and choice >= len(cands):
                raise ValueError(f"choice {choice} out of range (have {len(cands)})")
            pick = cands[choice] if first else cands[0]
            expr = eliminate_bracket_contour(expr, v, pick)
            first = False
        trace.append(_trace("eliminate", expr))
    if expr.two_pi_i != 0:
        raise BracketError(f"unbalanced 2*pi*i bookkeeping: {expr.two_pi_i}")
    return expr


def n_choices(p: Problem, method: int = 0) -> int:
    """Number of admissible first-variable elimination choices."""
    q = parse_problem(p.raw)
    expr, _ = expand_problem(q, method)
    if not expr.contour_vars:
        return 1
    if complexity_index(expr) > 0:
        expr = expand_contour_gammas(expr, q.factory)
    return max(1, len(bracket_candidates(expr, expr.contour_vars[0])))


def run_product_transform(p: Problem, method: int = 0) -> ChoiceRun:
    """Alternative solve route through the product-transform theorem:
    a series-form factor against a contour-form factor collapses to a
    single contour integral, reported as a contour result."""
    factors = p.methods[method]
    if len(p.integration_variables) != 1:
        raise SchemaError("product transform applies to one half-line variable")
    var = p.atom(p.integration_variables[0])
    series_side = None
    contour_side = None
    trace: list[TraceEntry] = []
    for f in factors:
        if f.type != "function":
            raise SchemaError("product transform expects two function factors")
        piece = expand_known(f.function, p.factory)
        if isinstance(piece, ContourRepresentation):
            contour_side = piece
        else:
            series_side = piece
    if series_side is None or contour_side is None:
        raise SchemaError("product transform needs one series and one contour factor")
    coeff, n, beta = halfline_series_form(series_side, var)
    alpha = p.measures[p.integration_variables[0]] + 1
    rep = product_transform(coeff, n, beta, contour_side, var, alpha)
    return ChoiceRun(label="product-transform", expanded=series_side,
                     series=None, solutions=[], terms=[], result=None,
                     trace=trace, contour_result=rep)


def halfline_series_form(e: BracketSeriesExpr, var: Atom) -> tuple[TermCoefficient, Atom, Fraction]:
    """Solve a factor expansion into the form sum_n phi_n F(n) x^(beta n).

    The index carrying the variable power stays free; every other index is
    eliminated against the factor's own brackets.
    """
    total = LinearForm.const(0)
    for base, expo in e.coefficient.powers:
        chi, _ = base.split_on(var)
        if chi != 0:
            total = total + expo * chi
    from .algebra import INDEX
    carriers = [a for a in total.atoms() if a.kind == INDEX]
    if len(carriers) != 1:
        raise SchemaError(f"expected one variable-carrying index, found {carriers}")
    n = carriers[0]
    beta = total.coefficient(n)
    bound = tuple(a for a in e.indices if a != n)
    from .solver import solve_e2
    sol = solve_e2(e, bound)
    value = sol.value_coefficient
    stripped = []
    for base, expo in value.powers:
        chi, rest = base.split_on(var)
        if chi != 0:
            if not rest.is_one:
                stripped.append((rest, expo))
        else:
            stripped.append((base, expo))
    coeff = TermCoefficient.make(value.rational, stripped, value.gammas,
                                 value.linear_factors)
    return coeff, n, beta


def solve_problem(p: Problem, choice: int | str = 0, method: int = 0) -> list[ChoiceRun]:
    """Stages 1-3 under one or all elimination choices."""
    if p.method == "product_transform":
        return [run_product_transform(p, method)]
    if choice == "all":
        picks = range(n_choices(p, method))
    else:
        picks = [int(choice)]
    runs = []
    for k in picks:
        q = parse_problem(p.raw)  # fresh atoms per run keeps naming stable
        expr, trace = expand_problem(q, method)
        expanded = expr
        expr = eliminate_contours(expr, q, choice=k, trace=trace)
        sols = enumerate_e3(expr)
        terms = [classify_hypergeometric(s) for s in sols]
        result = assemble_result(terms)
        n_free = len(sols[0].free_indices) if sols else 0
        trace.append(TraceEntry("solve", n_free, 0, 0, 0))
        runs.append(ChoiceRun(label=f"choice {k}", expanded=expanded,
                              series=expr, solutions=sols, terms=terms,
                              result=result, trace=trace))
    return runs
