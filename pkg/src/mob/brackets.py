"""Bracket-series representation and production rules.

A bracket ``<a>`` stands for the divergent integral of x**(a-1) over the
half line; every summation index n carries the implicit indicator weight
(-1)**n / n!.  This module builds bracket series from power series,
multinomial powers and gamma factors, applies the scaling rules for
brackets, tracks the complexity index, and holds the catalog of known
function expansions (series or Mellin-Barnes contour representations).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .algebra import (CONTOUR, DEN, INDEX, NUM, ONE, Atom, AtomFactory,
                      BaseExpr, GammaAtom, LinearForm, Q, TermCoefficient,
                      as_q)
from .errors import (DenominatorGammaError, IllPosedBracketError,
                     NonAffineSeriesError, UnsupportedFunctionError)

WEIGHT_RECIPROCAL = "reciprocal"


@dataclass(frozen=True)
class Bracket:
    argument: LinearForm

    def __str__(self):
        return f"<{self.argument}>"


@dataclass(frozen=True)
class BracketSeriesExpr:
    """Indicator-weighted multi-sum times coefficient, brackets and
    pending contour integrals.

    ``two_pi_i`` is the net power of (2*pi*i) carried by the expression;
    every contour representation contributes -1 and every bracket-contour
    elimination +1, so a fully solved series must end at 0.
    """

    indices: tuple[Atom, ...] = ()
    contour_vars: tuple[Atom, ...] = ()
    coefficient: TermCoefficient = ONE
    brackets: tuple[Bracket, ...] = ()
    special_weights: tuple[tuple[Atom, str], ...] = ()
    two_pi_i: int = 0

    def __post_init__(self):
        # contour variables may be declared by an enclosing expression, so
        # only summation indices are checked for hygiene
        declared = set(self.indices)
        for a in self.coefficient.atoms():
            if a.kind == INDEX and a not in declared:
                raise ValueError(f"undeclared index {a} in coefficient")
        for b in self.brackets:
            for a in b.argument.atoms():
                if a.kind == INDEX and a not in declared:
                    raise ValueError(f"undeclared index {a} in bracket {b}")
        for a, role in self.special_weights:
            if a not in declared:
                raise ValueError(f"undeclared weight index {a}")

    def product(self, other: "BracketSeriesExpr") -> "BracketSeriesExpr":
        overlap = set(self.indices) & set(other.indices)
        overlap |= set(self.contour_vars) & set(other.contour_vars)
        if overlap:
            raise ValueError(f"atom collision in product: {overlap}")
        return BracketSeriesExpr(
            self.indices + other.indices,
            self.contour_vars + other.contour_vars,
            self.coefficient * other.coefficient,
            self.brackets + other.brackets,
            self.special_weights + other.special_weights,
            self.two_pi_i + other.two_pi_i)

    def scaled(self, k) -> "BracketSeriesExpr":
        return replace(self, coefficient=self.coefficient.scaled(k))

    def map_coefficient(self, fn) -> "BracketSeriesExpr":
        return replace(self, coefficient=fn(self.coefficient))


@dataclass(frozen=True)
class ContourRepresentation:
    """g(x) = prefactor * (1/2 pi i) * integral of integrand ds.

    The integrand is a TermCoefficient whose gammas are affine in
    ``variable`` and whose power factors carry the x dependence (any
    kappa-rescaling is already folded into the stored exponents).
    """

    variable: Atom
    prefactor: TermCoefficient = ONE
    integrand: TermCoefficient = ONE

    def as_expr(self) -> BracketSeriesExpr:
        return BracketSeriesExpr(
            indices=(), contour_vars=(self.variable,),
            coefficient=self.prefactor * self.integrand,
            brackets=(), special_weights=(), two_pi_i=-1)


def complexity_index(e: BracketSeriesExpr, pending_halfline_integrals: int = 0) -> int:
    """iota = (#sums + #contours) - (#brackets + #half-line integrals)."""
    return (len(e.indices) + len(e.contour_vars)
            - len(e.brackets) - pending_halfline_integrals)


def series_to_brackets(power_series: tuple[TermCoefficient, LinearForm],
                       new_index: Atom | None,
                       weight: str | None = None) -> BracketSeriesExpr:
    """Production rule for a power series on the half line.

    ``power_series`` is the general term (coefficient a_n, exponent of x
    alpha*n + beta - 1) of sum_n phi_n a_n x^(alpha n + beta - 1); the
    assigned bracket series is sum_n a_n <alpha n + beta>.  ``new_index``
    None encodes a single term a x^(beta-1) (no sum, bracket <beta>).
    """
    coeff, exponent = power_series
    if new_index is None:
        if any(a.kind == INDEX for a in exponent.atoms()):
            raise NonAffineSeriesError("exponent carries an index but no index was declared")
        return BracketSeriesExpr(coefficient=coeff,
                                 brackets=(Bracket(exponent + 1),))
    if exponent.coefficient(new_index) == 0:
        raise NonAffineSeriesError(f"exponent {exponent} does not involve {new_index}")
    weights = ((new_index, weight),) if weight else ()
    return BracketSeriesExpr(indices=(new_index,), coefficient=coeff,
                             brackets=(Bracket(exponent + 1),),
                             special_weights=weights)


def multinomial_to_brackets(terms: Sequence[BaseExpr], exponent: LinearForm,
                            new_indices: Sequence[Atom]) -> BracketSeriesExpr:
    """(a_1 + ... + a_r)^alpha as an r-fold bracket series.

    Produces sum phi_{n_1..n_r} prod a_i^{n_i} <-alpha + n_1 + ... + n_r>
    divided by Gamma(-alpha).
    """
    if len(terms) != len(new_indices) or not terms:
        raise ValueError("one fresh index per multinomial term required")
    powers = tuple((t, LinearForm.of(n)) for t, n in zip(terms, new_indices))
    coeff = TermCoefficient.make(1, powers=powers,
                                 gammas=(GammaAtom(-exponent, DEN),))
    arg = -exponent
    for n in new_indices:
        arg = arg + LinearForm.of(n)
    return BracketSeriesExpr(indices=tuple(new_indices), coefficient=coeff,
                             brackets=(Bracket(arg),))


def gamma_to_brackets(g: GammaAtom, new_index: Atom) -> BracketSeriesExpr:
    """Gamma(alpha) = sum_n phi_n <alpha + n>; numerator gammas only."""
    if g.position == DEN:
        raise DenominatorGammaError(f"denominator gamma {g} is never expanded")
    return BracketSeriesExpr(indices=(new_index,),
                             brackets=(Bracket(g.argument + LinearForm.of(new_index)),))


def bracket_normalize(b: Bracket, inside: TermCoefficient | None = None) -> tuple[Bracket, TermCoefficient]:
    """Scaling rules for brackets.

    <-(arg)> = <arg>;  <alpha*gamma + beta> = (1/|alpha|) <gamma + beta/alpha>
    where alpha is the coefficient of the leading atom.  When ``inside`` is
    given the bracket must be affine in a single summation index n and the
    stronger replacement F(n)<alpha n + beta> = (1/|alpha|) F(-beta/alpha)
    <n + beta/alpha> is applied.
    """
    arg = b.argument
    if not arg.terms:
        if arg.constant == 0:
            raise IllPosedBracketError("bracket <0> is ill posed")
        return b, ONE
    alpha = arg.terms[0][1]
    factor = ONE if abs(alpha) == 1 else ONE.scaled(Q(1) / abs(alpha))
    new_arg = arg * (Q(1) / alpha) if alpha != 0 else arg
    if inside is not None:
        idx_atoms = [a for a in arg.atoms() if a.kind == INDEX]
        if len(arg.terms) != 1 or len(idx_atoms) != 1:
            raise IllPosedBracketError("inside-replacement needs <alpha*n + beta>")
        n = idx_atoms[0]
        a_n = arg.coefficient(n)
        n_star = (arg.drop(n)) * (Q(-1) / a_n)
        replaced = inside.substitute(n, n_star).scaled(Q(1) / abs(a_n))
        return Bracket(LinearForm.of(n) + arg.drop(n) * (Q(1) / a_n)), replaced
    return Bracket(new_arg), factor


# ---------------------------------------------------------------------------
# the known-function expansion catalog

EXP = "Exp"
POWER_OF_SUM = "PowerOfSum"
GAMMA_FN = "GammaFn"
BESSEL_K = "BesselK"
BESSEL_J = "BesselJ"
BESSEL_K_PRODUCT = "BesselKProduct"
EI = "Ei"
GENERIC = "Generic"


@dataclass(frozen=True)
class FunctionSpec:
    """One integrand factor: a catalog function of a scaled variable.

    ``argument`` is the full (signed) argument monomial, e.g. -a^2*x^2 for
    a Gaussian factor.  ``parameters`` are order/shape parameters such as
    the Bessel order.  ``terms``/``exponent`` serve the multinomial id and
    ``series`` a user-registered expansion (coefficient template in a
    placeholder index, variable exponent form).  ``representation`` picks
    between the power-series expansion and the Mellin-Barnes contour form
    for ids that have both.
    """

    id: str
    argument: BaseExpr | None = None
    parameters: tuple[LinearForm, ...] = ()
    terms: tuple[BaseExpr, ...] = ()
    exponent: LinearForm | None = None
    series: tuple[TermCoefficient, LinearForm, Atom] | None = None
    representation: str = "series"


def _half(base: BaseExpr) -> BaseExpr:
    return base * BaseExpr.number(Q(1, 2))


def _sqrt_base(base: BaseExpr) -> BaseExpr:
    root = base.pow_q(Q(1, 2))
    if root is None:
        raise UnsupportedFunctionError(
            f"argument {base} is not an exact square; contour form needs -g(x)^2")
    return root


def _expand_exp(f: FunctionSpec, factory: AtomFactory):
    if f.representation == "contour":
        # exp(-g^2) = (1/2 pi i) integral Gamma(u) g^{-2u} du
        g = _sqrt_base(f.argument.negate())
        u = factory.contour()
        uf = LinearForm.of(u)
        integrand = TermCoefficient.make(1, powers=((g, uf * -2),),
                                         gammas=(GammaAtom(uf, NUM),))
        return ContourRepresentation(u, ONE, integrand)
    n = factory.fresh_index()
    coeff = TermCoefficient.make(1, powers=((f.argument.negate(), LinearForm.of(n)),))
    return BracketSeriesExpr(indices=(n,), coefficient=coeff)


def _expand_power_of_sum(f: FunctionSpec, factory: AtomFactory):
    if f.representation == "contour":
        # (c0*v^m + C)^alpha with the variable term first:
        #   (1/2 pi i) integral v^{-m s} c0^{-s} C^{alpha+s}
        #              Gamma(s) Gamma(-alpha-s) / Gamma(-alpha) ds
        if len(f.terms) != 2:
            raise UnsupportedFunctionError("contour form needs exactly two terms")
        lead, other = f.terms
        s = factory.contour()
        sf = LinearForm.of(s)
        alpha = f.exponent
        integrand = TermCoefficient.make(
            1,
            powers=((lead, sf * -1), (other, alpha + sf)),
            gammas=(GammaAtom(sf, NUM), GammaAtom(-alpha - sf, NUM),
                    GammaAtom(-alpha, DEN)))
        return ContourRepresentation(s, ONE, integrand)
    ns = [factory.fresh_index() for _ in f.terms]
    return multinomial_to_brackets(f.terms, f.exponent, ns)


def _expand_gamma(f: FunctionSpec, factory: AtomFactory):
    return gamma_to_brackets(GammaAtom(f.parameters[0], NUM), factory.fresh_index())


def _expand_ei(f: FunctionSpec, factory: AtomFactory):
    n = factory.fresh_index()
    coeff = TermCoefficient.make(1, powers=((f.argument.negate(), LinearForm.of(n)),))
    return BracketSeriesExpr(indices=(n,), coefficient=coeff,
                             special_weights=((n, WEIGHT_RECIPROCAL),))


def _expand_generic(f: FunctionSpec, factory: AtomFactory):
    if f.series is None:
        raise UnsupportedFunctionError("Generic factor without a registered series")
    template, var_exponent, placeholder = f.series
    n = factory.fresh_index()
    sub = LinearForm.of(n)
    coeff = template.substitute(placeholder, sub) * TermCoefficient.make(
        1, powers=((f.argument, var_exponent.substitute(placeholder, sub)),))
    return BracketSeriesExpr(indices=(n,), coefficient=coeff)


def _expand_bessel_k(f: FunctionSpec, factory: AtomFactory):
    # K_nu(z) = (1/(4 pi i)) (z/2)^nu integral Gamma(s) Gamma(s-nu) (z/2)^{-2s} ds
    nu = f.parameters[0]
    s = factory.contour()
    half = _half(f.argument)
    sf = LinearForm.of(s)
    pref = TermCoefficient.make(Q(1, 2), powers=((half, nu),))
    integrand = TermCoefficient.make(
        1,
        powers=((half, sf * -2),),
        gammas=(GammaAtom(sf, NUM), GammaAtom(sf - nu, NUM)))
    return ContourRepresentation(s, pref, integrand)


def _expand_bessel_j(f: FunctionSpec, factory: AtomFactory):
    # J_nu(z) = (1/(2 pi i)) integral Gamma(-s)/Gamma(s+nu+1) (z/2)^{2s+nu} ds
    nu = f.parameters[0]
    s = factory.contour()
    half = _half(f.argument)
    sf = LinearForm.of(s)
    integrand = TermCoefficient.make(
        1,
        powers=((half, sf * 2 + nu),),
        gammas=(GammaAtom(-sf, NUM), GammaAtom(sf + nu + 1, DEN)))
    return ContourRepresentation(s, ONE, integrand)


def _expand_bessel_k_product(f: FunctionSpec, factory: AtomFactory):
    # K_mu(z) K_nu(z) = (1/(8 pi i)) integral (z/2)^{-2s} / Gamma(2s)
    #   * Gamma(s+(mu+nu)/2) Gamma(s+(mu-nu)/2) Gamma(s-(mu-nu)/2) Gamma(s-(mu+nu)/2) ds
    mu, nu = f.parameters
    s = factory.contour()
    half = _half(f.argument)
    sf = LinearForm.of(s)
    plus, minus = (mu + nu) / 2, (mu - nu) / 2
    integrand = TermCoefficient.make(
        1,
        powers=((half, sf * -2),),
        gammas=(GammaAtom(sf + plus, NUM), GammaAtom(sf + minus, NUM),
                GammaAtom(sf - minus, NUM), GammaAtom(sf - plus, NUM),
                GammaAtom(sf * 2, DEN)))
    return ContourRepresentation(s, ONE.scaled(Q(1, 4)), integrand)


CATALOG: dict[str, Callable[[FunctionSpec, AtomFactory], BracketSeriesExpr | ContourRepresentation]] = {
    EXP: _expand_exp,
    POWER_OF_SUM: _expand_power_of_sum,
    GAMMA_FN: _expand_gamma,
    BESSEL_K: _expand_bessel_k,
    BESSEL_J: _expand_bessel_j,
    BESSEL_K_PRODUCT: _expand_bessel_k_product,
    EI: _expand_ei,
    GENERIC: _expand_generic,
}


def register_function(fid: str, builder) -> None:
    CATALOG[fid] = builder


def expand_known(f: FunctionSpec, factory: AtomFactory) -> BracketSeriesExpr | ContourRepresentation:
    """Expand a catalog function with fresh atoms from ``factory``."""
    try:
        builder = CATALOG[f.id]
    except KeyError:
        raise UnsupportedFunctionError(f"no catalog entry for {f.id!r}") from None
    return builder(f, factory)


def absorb_halfline(e: BracketSeriesExpr, var: Atom,
                    measure_exponent: LinearForm) -> BracketSeriesExpr:
    """Integrate the expression over ``var`` on (0, inf).

    All powers of ``var`` in the coefficient (total exponent E) are
    absorbed together with the measure x^(measure_exponent) dx into the
    bracket <E + measure_exponent + 1>.
    """
    total = measure_exponent + 1
    new_powers = []
    for base, expo in e.coefficient.powers:
        chi, rest = base.split_on(var)
        if chi != 0:
            total = total + expo * chi
            if not rest.is_one:
                new_powers.append((rest, expo))
        else:
            new_powers.append((base, expo))
    coeff = TermCoefficient.make(e.coefficient.rational, new_powers,
                                 e.coefficient.gammas, e.coefficient.linear_factors)
    return BracketSeriesExpr(e.indices, e.contour_vars, coeff,
                             e.brackets + (Bracket(total),),
                             e.special_weights, e.two_pi_i)
