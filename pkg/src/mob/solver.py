"""Bracket-series evaluation: the single-bracket rule, exact linear
elimination for square systems, enumeration over maximal-rank free-index
choices, hypergeometric classification with convergence regions, and
region-wise assembly of the final piecewise result."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import (DEN, INDEX, NUM, ONE, Atom, BaseExpr, GammaAtom,
                      LinearForm, MINUS_ONE, Q, TermCoefficient,
                      _exact_pow, exact_nonpositive_integer,
                      gamma_shift_normalize)
from .brackets import Bracket, BracketSeriesExpr, WEIGHT_RECIPROCAL
from .errors import (MethodNotApplicableError, NegativeComplexityError,
                     NoAssignmentError)

EVERYWHERE = "everywhere"
BOUNDED = "bounded"
DIVERGENT = "divergent"
NULL = "null"


@dataclass(frozen=True)
class Region:
    """Convergence region of one series term.

    ``bounded`` means |zeff| < 1 for the stored effective argument; the
    inside/outside label relative to the problem variable is derived for
    reporting only.
    """

    kind: str
    zeff: BaseExpr | None = None

    def key(self):
        return (self.kind,) if self.zeff is None else (self.kind, str(self.zeff))

    @property
    def label(self) -> str:
        if self.kind != BOUNDED or self.zeff is None:
            return {EVERYWHERE: "Everywhere", DIVERGENT: "DivergentFormal",
                    NULL: "Null", BOUNDED: "Bounded"}[self.kind]
        exps = [e for _, e in self.zeff.exponents]
        if exps and all(e > 0 for e in exps):
            return "InsideUnit"
        if exps and all(e < 0 for e in exps):
            return "OutsideUnit"
        return f"|{self.zeff}| < 1"

    def __str__(self):
        if self.kind == BOUNDED and self.zeff is not None:
            return f"|{self.zeff}| < 1"
        return self.label


@dataclass(frozen=True)
class EliminationSolution:
    """One maximal-rank assignment: bound indices solved exactly against
    the brackets, value carrying 1/|det A| and one Gamma(-n*) per bound
    index."""

    free_indices: tuple[Atom, ...]
    bound_solutions: tuple[tuple[Atom, LinearForm], ...]
    determinant: Fraction
    value_coefficient: TermCoefficient
    weights: tuple[tuple[Atom, str], ...] = ()
    flags: tuple[str, ...] = ()


@dataclass(frozen=True)
class HypergeometricTerm:
    """prefactor * sum_n prod(upper)_n / prod(lower)_n z^n / n! with raw
    factor data retained for terms outside the plain pFq family."""

    prefactor: TermCoefficient
    upper: tuple[LinearForm, ...] = ()
    lower: tuple[LinearForm, ...] = ()
    argument: BaseExpr | None = None
    region: Region = Region(EVERYWHERE)
    free_index: Atom | None = None
    free_indices: tuple[Atom, ...] = ()
    raw_value: TermCoefficient = ONE
    irregular: tuple[GammaAtom, ...] = ()
    irregular_powers: tuple[tuple[BaseExpr, Fraction], ...] = ()
    poly_factors: tuple[tuple[LinearForm, int], ...] = ()
    weight_roles: tuple[str, ...] = ()
    flags: tuple[str, ...] = ()

    @property
    def pq(self) -> tuple[int, int]:
        return len(self.upper), len(self.lower)

    @property
    def is_plain_pfq(self) -> bool:
        return (self.free_index is not None and not self.irregular
                and not self.poly_factors and not self.weight_roles)

    def describe(self) -> str:
        if self.free_index is None and not self.free_indices:
            return f"closed form: {self.prefactor}"
        p, q = self.pq
        ups = ", ".join(str(u) for u in self.upper) or "-"
        los = ", ".join(str(l) for l in self.lower) or "-"
        return f"{p}F{q}({ups}; {los}; {self.argument}) [{self.region}]"


@dataclass(frozen=True)
class PiecewiseResult:
    pieces: tuple[tuple[Region, tuple[HypergeometricTerm, ...]], ...]
    discarded: tuple[tuple[HypergeometricTerm, str], ...] = ()
    flags: tuple[str, ...] = ()

    @property
    def applicable(self) -> bool:
        return bool(self.pieces)


# ---------------------------------------------------------------------------
# rules E1 / E2 / E3


def _solve_linear(brackets: Sequence[Bracket], bound: Sequence[Atom]) -> tuple[Fraction, dict[Atom, LinearForm]]:
    """Exact solve of bracket arguments = 0 for the bound indices.

    Returns (det, solutions); solutions are affine in the remaining atoms.
    Raises NoAssignmentError when the bound submatrix is singular.
    """
    r = len(brackets)
    if r != len(bound):
        raise ValueError("need exactly one bracket per bound index")
    rows = []
    for b in brackets:
        coeffs = [b.argument.coefficient(a) for a in bound]
        rhs = -LinearForm.make(b.argument.constant,
                               {a: c for a, c in b.argument.terms if a not in bound})
        rows.append((coeffs, rhs))
    det = Q(1)
    for col in range(r):
        piv = next((i for i in range(col, r) if rows[i][0][col] != 0), None)
        if piv is None:
            raise NoAssignmentError("singular bound-index matrix")
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        pc, prhs = rows[col]
        det *= pc[col]
        for i in range(r):
            if i == col:
                continue
            ic, irhs = rows[i]
            f = ic[col] / pc[col]
            if f != 0:
                rows[i] = ([a - f * b for a, b in zip(ic, pc)], irhs - prhs * f)
    sol = {}
    for col, a in enumerate(bound):
        pc, rhs = rows[col]
        sol[a] = rhs * (Q(1) / pc[col])
    return det, sol


def solve_e2(e: BracketSeriesExpr, bound: Sequence[Atom]) -> EliminationSolution:
    """Square-system rule: value = f(n*) prod Gamma(-n_i*) / |det A|.

    ``bound`` must contain exactly one index per bracket; there is no
    assignment when the submatrix is singular.
    """
    if e.contour_vars:
        raise ValueError("eliminate contour variables before applying series rules")
    bound = tuple(bound)
    det, sol = _solve_linear(e.brackets, bound)
    for b in e.brackets:
        residual = b.argument
        for a, r in sol.items():
            residual = residual.substitute(a, r)
        assert residual.constant == 0 and not residual.terms, \
            f"bracket {b} not annihilated, left {residual}"
    value = e.coefficient.substitute_many(sol)
    flags = []
    gammas = []
    linfacs = []
    for a in bound:
        n_star = sol[a]
        gammas.append(GammaAtom(-n_star, NUM))
        exact = (-n_star).as_exact_value()
        if exact is not None and exact_nonpositive_integer(exact):
            flags.append(f"pole:Gamma({-n_star})")
    for a, role in e.special_weights:
        if a in bound and role == WEIGHT_RECIPROCAL:
            linfacs.append((sol[a], -1))
    value = value * TermCoefficient.make(Q(1, 1) / abs(det), gammas=gammas,
                                         linear_factors=linfacs)
    free = tuple(a for a in e.indices if a not in bound)
    return EliminationSolution(
        free_indices=free,
        bound_solutions=tuple((a, sol[a]) for a in bound),
        determinant=det,
        value_coefficient=value,
        weights=tuple((a, role) for a, role in e.special_weights if a not in bound),
        flags=tuple(flags))


def solve_e1(e: BracketSeriesExpr) -> TermCoefficient:
    """Single-index, single-bracket rule (Ramanujan's master theorem):
    sum_n phi_n f(n) <a n + b> = f(n*) Gamma(-n*) / |a|,  n* = -b/a."""
    if len(e.indices) != 1 or len(e.brackets) != 1:
        raise ValueError("rule applies to one index against one bracket")
    return solve_e2(e, e.indices).value_coefficient


def enumerate_e3(e: BracketSeriesExpr) -> list[EliminationSolution]:
    """All maximal-rank contributions: one solution per nonsingular choice
    of bound indices (singular choices are skipped)."""
    if e.contour_vars:
        raise ValueError("eliminate contour variables before applying series rules")
    iota = len(e.indices) - len(e.brackets)
    if iota < 0:
        raise NegativeComplexityError(
            f"no assignment for complexity index {iota}")
    out = []
    for bound in itertools.combinations(e.indices, len(e.brackets)):
        try:
            out.append(solve_e2(e, bound))
        except NoAssignmentError:
            continue
    if not out:
        raise MethodNotApplicableError("every bound-index choice is singular")
    return out


# ---------------------------------------------------------------------------
# classification


def _scale_factor(slope_weights: dict[Fraction, Fraction]) -> tuple[Fraction | None, float]:
    """prod |m|^(sum of signed slopes) as an exact Fraction when possible."""
    exact = Q(1)
    approx = 1.0
    ok = True
    for base_abs, e in slope_weights.items():
        if base_abs == 1 or e == 0:
            continue
        approx *= float(base_abs) ** float(e)
        p = _exact_pow(base_abs, e)
        if p is None:
            ok = False
        else:
            exact *= p
    return (exact if ok else None), approx


def classify_hypergeometric(sol: EliminationSolution) -> HypergeometricTerm:
    """Normalize one elimination solution into hypergeometric form.

    Integer-shift gammas are split through the shift-normalization and
    reflection identities into an index-free prefactor, Pochhammer
    parameter lists and a rescaled argument.  Gammas whose index slope is
    not an integer stay as irregular factors; the region then comes from
    the Stirling growth of the raw terms:

      growth = sum(numerator slopes) - sum(denominator slopes) - 1

    (< 0 everywhere, > 0 divergent, = 0 bounded by the effective argument
    |z| * prod |m|^m).
    """
    frees = sol.free_indices
    tc = sol.value_coefficient
    flags = list(sol.flags)
    if len(frees) == 0:
        region = Region(EVERYWHERE)
        for g in tc.gammas:
            v = g.argument.as_exact_value()
            if v is not None and exact_nonpositive_integer(v):
                if g.position == DEN:
                    region = Region(NULL)
                else:
                    flags.append("parameter-degenerate")
        return HypergeometricTerm(prefactor=tc, region=region, raw_value=tc,
                                  flags=tuple(flags))
    if len(frees) > 1:
        growth = -Q(len(frees))
        for g in tc.gammas:
            for a in frees:
                m = g.argument.coefficient(a)
                growth += m if g.position == NUM else -m
        kind = EVERYWHERE if growth < 0 else (DIVERGENT if growth > 0 else BOUNDED)
        flags.append("multi-index")
        return HypergeometricTerm(prefactor=ONE, region=Region(kind),
                                  free_indices=frees, raw_value=tc,
                                  flags=tuple(flags))

    n = frees[0]
    uppers: list[LinearForm] = []
    lowers: list[LinearForm] = []
    pref_powers: list[tuple[BaseExpr, LinearForm]] = []
    pref_gammas: list[GammaAtom] = []
    pref_linfacs: list[tuple[LinearForm, int]] = []
    poly: list[tuple[LinearForm, int]] = []
    irregular: list[GammaAtom] = []
    z = MINUS_ONE  # the indicator sign (-1)^n
    z_ok = True
    null = False
    slope_weights: dict[Fraction, Fraction] = {}
    growth = -Q(1)  # 1/n! from the indicator

    for g in tc.gammas:
        m = g.argument.coefficient(n)
        if m == 0:
            pref_gammas.append(g)
            v = g.argument.as_exact_value()
            if v is not None and exact_nonpositive_integer(v):
                if g.position == DEN:
                    null = True
                else:
                    flags.append("parameter-degenerate")
            continue
        growth += m if g.position == NUM else -m
        pivot = g.argument.drop(n)
        pv = pivot.as_exact_value()
        if m.denominator != 1:
            irregular.append(g)
            sgn = Q(1) if g.position == NUM else Q(-1)
            slope_weights[abs(m)] = slope_weights.get(abs(m), Q(0)) + m * sgn
            continue
        mi = m.numerator
        if pv is not None and pv.denominator == 1:
            pvi = pv.numerator
            if g.position == DEN and mi < 0 and pvi <= 0:
                null = True
                continue
            if g.position == NUM and mi < 0:
                flags.append("parameter-degenerate")
                irregular.append(g)
                continue
            if pvi <= 0 and mi > 0:
                flags.append("parameter-degenerate")
                irregular.append(g)
                continue
        base_gamma, factor = gamma_shift_normalize(g, pivot)
        pref_gammas.append(base_gamma)
        assert factor.rational == 1 and not factor.linear_factors
        for g2 in factor.gammas:
            c2 = g2.argument.coefficient(n)
            if c2 == 0:
                # the index-free legs of the shift factor are the Gamma(w)
                # halves of the Pochhammer ratios; the parameter convention
                # (w)_n = Gamma(w+n)/Gamma(w) absorbs them
                continue
            assert c2 == 1
            w = g2.argument.drop(n)
            (uppers if g2.position == NUM else lowers).append(w)
        for b2, e2 in factor.powers:
            slope = e2.coefficient(n)
            const = e2.drop(n)
            if slope != 0:
                zf = b2.pow_q(slope)
                assert zf is not None
                z = z * zf
            if not (const.is_constant and const.constant == 0):
                pref_powers.append((b2, const))

    irregular_powers: list[tuple[BaseExpr, Fraction]] = []
    for base, expo in tc.powers:
        slope = expo.coefficient(n)
        const = expo.drop(n)
        if slope != 0:
            zf = base.pow_q(slope)
            if zf is None:
                z_ok = False
                flags.append("inexact-argument")
                irregular_powers.append((base, slope))
            else:
                z = z * zf
        if not (const.is_constant and const.constant == 0):
            pref_powers.append((base, const))

    for form, k in tc.linear_factors:
        if form.coefficient(n) != 0:
            poly.append((form, k))
        else:
            pref_linfacs.append((form, k))

    # cancel equal upper/lower parameters (multiset)
    for u in list(uppers):
        if u in lowers:
            uppers.remove(u)
            lowers.remove(u)

    terminating = any(
        (v := u.as_exact_value()) is not None and exact_nonpositive_integer(v)
        for u in uppers)

    growth_eff = growth  # already includes +-m per gamma and -1 for phi
    # regular pochhammers contribute +-1 via their source gamma slopes,
    # which is exactly what the loop accumulated

    if null:
        region = Region(NULL)
    elif terminating:
        region = Region(EVERYWHERE)
    elif growth_eff < 0:
        region = Region(EVERYWHERE)
    elif growth_eff > 0:
        region = Region(DIVERGENT)
    else:
        scale_exact, scale_float = _scale_factor(slope_weights)
        zeff = None
        if z_ok and scale_exact is not None:
            zeff = z * BaseExpr.number(scale_exact) if scale_exact != 1 else z
        region = Region(BOUNDED, zeff)
        if zeff is None:
            flags.append("numeric-region")

    prefactor = TermCoefficient.make(tc.rational, pref_powers, pref_gammas, pref_linfacs)
    return HypergeometricTerm(
        prefactor=prefactor,
        upper=tuple(uppers), lower=tuple(lowers),
        argument=z,
        region=region,
        free_index=n,
        free_indices=frees,
        raw_value=tc,
        irregular=tuple(irregular),
        irregular_powers=tuple(irregular_powers),
        poly_factors=tuple(poly),
        weight_roles=tuple(role for _, role in sol.weights),
        flags=tuple(dict.fromkeys(flags)))


def assemble_result(terms: Iterable[HypergeometricTerm]) -> PiecewiseResult:
    """Group terms by convergence region; discard divergent and null terms.

    Terms sharing a region key are added; an empty grouping means the
    method is not applicable to this representation.  A mixture of
    everywhere-convergent and bounded-region terms is flagged ambiguous
    rather than summed across regions.
    """
    groups: dict[tuple, tuple[Region, list[HypergeometricTerm]]] = {}
    discarded: list[tuple[HypergeometricTerm, str]] = []
    flags: list[str] = []
    for t in terms:
        if t.region.kind == DIVERGENT:
            discarded.append((t, "DivergentFormal"))
            continue
        if t.region.kind == NULL:
            discarded.append((t, "Null"))
            continue
        key = t.region.key()
        groups.setdefault(key, (t.region, []))[1].append(t)
    keys = sorted(groups, key=lambda k: (k[0] != EVERYWHERE, k))
    pieces = tuple((groups[k][0], tuple(groups[k][1])) for k in keys)
    kinds = {k[0] for k in keys}
    if EVERYWHERE in kinds and BOUNDED in kinds:
        flags.append("ambiguous-overlap")
    if not pieces:
        flags.append("method-not-applicable")
    return PiecewiseResult(pieces=pieces, discarded=tuple(discarded), flags=tuple(flags))
