"""Exact symbolic atoms: rationals, symbols, affine forms, power bases, gammas.

Everything here is immutable and exact (``fractions.Fraction`` arithmetic,
no floats).  These objects are the vocabulary the bracket calculus and the
series solver are written in:

* :class:`Atom` -- a named parameter symbol, summation index or contour
  variable with an ordinal fixing a global deterministic order.
* :class:`LinearForm` -- affine combination ``c + sum(q_i * atom_i)``; the
  argument of every bracket and gamma factor.
* :class:`BaseExpr` -- an exact signed monomial ``sign * q * prod(sym**e)``
  used as the base of power factors.
* :class:`GammaAtom` -- a gamma factor in numerator or denominator position.
* :class:`TermCoefficient` -- a canonical product of a rational, power
  factors, gamma factors and reciprocal linear factors.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import NonIntegralShiftError

Q = Fraction
QLike = Union[int, Fraction, str]

PARAM = "param"
INDEX = "index"
CONTOUR = "contour"

NUM = "num"
DEN = "den"

_KIND_RANK = {PARAM: 0, INDEX: 1, CONTOUR: 2}


def as_q(x: QLike) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True, eq=True)
class Atom:
    """A named symbol.  ``(kind, name)`` is unique within a problem."""

    kind: str
    name: str
    ordinal: int

    def __post_init__(self):
        if self.kind not in _KIND_RANK:
            raise ValueError(f"unknown atom kind {self.kind!r}")

    def sort_key(self):
        return (self.ordinal, _KIND_RANK[self.kind], self.name)

    def __lt__(self, other: "Atom"):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        return self.name


class AtomFactory:
    """Hands out atoms with fresh ordinals; one factory per problem."""

    def __init__(self):
        self._n = 0
        self._seen: dict[tuple[str, str], Atom] = {}

    def make(self, kind: str, name: str) -> Atom:
        key = (kind, name)
        if key in self._seen:
            raise ValueError(f"atom {name!r} declared twice")
        a = Atom(kind, name, self._n)
        self._n += 1
        self._seen[key] = a
        return a

    def param(self, name: str) -> Atom:
        return self.make(PARAM, name)

    def index(self, name: str | None = None) -> Atom:
        if name is None:
            name = f"n{sum(1 for a in self._seen.values() if a.kind == INDEX) + 1}"
        return self.make(INDEX, name)

    def contour(self, name: str | None = None) -> Atom:
        if name is None:
            taken = {a.name for a in self._seen.values()}
            for cand in ("s", "t", "u", "v", "w"):
                if cand not in taken:
                    name = cand
                    break
            else:
                name = f"s{self._n}"
        return self.make(CONTOUR, name)

    def fresh_index(self) -> Atom:
        return self.index(None)


@dataclass(frozen=True)
class LinearForm:
    """``constant + sum(coeff * atom)`` with nonzero coefficients only."""

    constant: Fraction = Q(0)
    terms: tuple[tuple[Atom, Fraction], ...] = ()

    @staticmethod
    def make(constant: QLike = 0, terms: Mapping[Atom, QLike] | Iterable[tuple[Atom, QLike]] = ()) -> "LinearForm":
        if isinstance(terms, Mapping):
            terms = terms.items()
        acc: dict[Atom, Fraction] = {}
        for a, c in terms:
            acc[a] = acc.get(a, Q(0)) + as_q(c)
        tt = tuple(sorted(((a, c) for a, c in acc.items() if c != 0), key=lambda t: t[0].sort_key()))
        return LinearForm(as_q(constant), tt)

    @staticmethod
    def of(atom: Atom, coeff: QLike = 1) -> "LinearForm":
        return LinearForm.make(0, {atom: coeff})

    @staticmethod
    def const(c: QLike) -> "LinearForm":
        return LinearForm.make(c, {})

    def coefficient(self, atom: Atom) -> Fraction:
        for a, c in self.terms:
            if a == atom:
                return c
        return Q(0)

    def atoms(self) -> tuple[Atom, ...]:
        return tuple(a for a, _ in self.terms)

    @property
    def is_constant(self) -> bool:
        return not self.terms

    def __add__(self, other):
        if isinstance(other, LinearForm):
            d = dict(self.terms)
            for a, c in other.terms:
                d[a] = d.get(a, Q(0)) + c
            return LinearForm.make(self.constant + other.constant, d)
        return LinearForm.make(self.constant + as_q(other), dict(self.terms))

    __radd__ = __add__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other if isinstance(other, LinearForm) else -as_q(other))

    def __rsub__(self, other):
        return (-self) + as_q(other)

    def __mul__(self, k: QLike):
        k = as_q(k)
        if k == 0:
            return LinearForm.const(0)
        return LinearForm(self.constant * k, tuple((a, c * k) for a, c in self.terms))

    __rmul__ = __mul__

    def __truediv__(self, k: QLike):
        return self * (Q(1) / as_q(k))

    def substitute(self, atom: Atom, replacement: "LinearForm") -> "LinearForm":
        c = self.coefficient(atom)
        if c == 0:
            return self
        rest = LinearForm.make(self.constant, {a: q for a, q in self.terms if a != atom})
        return rest + replacement * c

    def drop(self, atom: Atom) -> "LinearForm":
        return LinearForm.make(self.constant, {a: q for a, q in self.terms if a != atom})

    def eval(self, env: Mapping[Atom, complex]) -> complex:
        v: complex = complex(self.constant)
        for a, c in self.terms:
            v += complex(c) * complex(env[a])
        return v

    def as_exact_value(self) -> Fraction | None:
        return self.constant if self.is_constant else None

    def __str__(self):
        if not self.terms:
            return str(self.constant)
        parts = []
        for a, c in self.terms:
            if c == 1:
                parts.append(f"+ {a.name}")
            elif c == -1:
                parts.append(f"- {a.name}")
            else:
                mag = c if c > 0 else -c
                coef = str(mag) if mag.denominator == 1 else f"({mag})"
                parts.append(f"{'+' if c > 0 else '-'} {coef}*{a.name}")
        s = " ".join(parts)
        s = s[2:] if s.startswith("+ ") else ("-" + s[2:])
        if self.constant != 0:
            s += f" + {self.constant}" if self.constant > 0 else f" - {-self.constant}"
        return s


def lf_substitute(form: LinearForm, target: Atom, replacement: LinearForm) -> LinearForm:
    """Replace ``target`` by ``replacement`` inside an affine form."""
    return form.substitute(target, replacement)


def _exact_pow(base: Fraction, exp: Fraction) -> Fraction | None:
    """``base ** exp`` when the result is rational, else None.  base > 0."""
    if exp.denominator == 1:
        return base ** exp.numerator
    # try exact roots of numerator and denominator
    def iroot(n: int, k: int) -> int | None:
        if n in (0, 1):
            return n
        r = round(n ** (1.0 / k))
        for cand in (r - 1, r, r + 1):
            if cand >= 0 and cand ** k == n:
                return cand
        return None

    k = exp.denominator
    pn = iroot(base.numerator, k)
    pd = iroot(base.denominator, k)
    if pn is None or pd is None:
        return None
    return Q(pn, pd) ** exp.numerator


@dataclass(frozen=True)
class BaseExpr:
    """Exact signed monomial ``sign * coefficient * prod(sym ** e)``."""

    sign: int = 1
    coefficient: Fraction = Q(1)
    exponents: tuple[tuple[Atom, Fraction], ...] = ()

    @staticmethod
    def make(sign: int = 1, coefficient: QLike = 1, exponents: Mapping[Atom, QLike] | Iterable[tuple[Atom, QLike]] = ()) -> "BaseExpr":
        if isinstance(exponents, Mapping):
            exponents = exponents.items()
        acc: dict[Atom, Fraction] = {}
        for a, e in exponents:
            acc[a] = acc.get(a, Q(0)) + as_q(e)
        c = as_q(coefficient)
        if c == 0:
            raise ValueError("BaseExpr coefficient must be nonzero")
        if c < 0:
            sign, c = -sign, -c
        ee = tuple(sorted(((a, e) for a, e in acc.items() if e != 0), key=lambda t: t[0].sort_key()))
        return BaseExpr(1 if sign >= 0 else -1, c, ee)

    @staticmethod
    def symbol(a: Atom) -> "BaseExpr":
        return BaseExpr.make(1, 1, {a: 1})

    @staticmethod
    def number(c: QLike) -> "BaseExpr":
        return BaseExpr.make(1, c, {})

    @property
    def is_one(self) -> bool:
        return self.sign == 1 and self.coefficient == 1 and not self.exponents

    def __mul__(self, other: "BaseExpr") -> "BaseExpr":
        d = dict(self.exponents)
        for a, e in other.exponents:
            d[a] = d.get(a, Q(0)) + e
        return BaseExpr.make(self.sign * other.sign, self.coefficient * other.coefficient, d)

    def negate(self) -> "BaseExpr":
        return replace(self, sign=-self.sign)

    def invert(self) -> "BaseExpr":
        return BaseExpr.make(self.sign, Q(1) / self.coefficient, {a: -e for a, e in self.exponents})

    def pow_q(self, e: Fraction) -> "BaseExpr | None":
        """Exact rational power, or None when it leaves the monoid."""
        e = as_q(e)
        if self.sign < 0 and e.denominator != 1:
            return None
        c = _exact_pow(self.coefficient, e)
        if c is None:
            return None
        sign = self.sign ** (e.numerator % 2 if e.denominator == 1 else 1)
        return BaseExpr.make(1 if sign >= 0 else -1, c, {a: q * e for a, q in self.exponents})

    def atoms(self) -> tuple[Atom, ...]:
        return tuple(a for a, _ in self.exponents)

    def split_on(self, atom: Atom) -> tuple[Fraction, "BaseExpr"]:
        """Return (exponent of ``atom``, base with ``atom`` removed)."""
        e = Q(0)
        rest = {}
        for a, q in self.exponents:
            if a == atom:
                e = q
            else:
                rest[a] = q
        return e, BaseExpr.make(self.sign, self.coefficient, rest)

    def eval(self, env: Mapping[Atom, complex]) -> complex:
        v: complex = self.sign * complex(self.coefficient)
        for a, e in self.exponents:
            base = complex(env[a])
            v *= base ** complex(e) if base != 0 else 0.0
        return v

    def __str__(self):
        parts = []
        if self.sign < 0:
            parts.append("-")
        if self.coefficient != 1 or not self.exponents:
            parts.append(str(self.coefficient))
        for a, e in self.exponents:
            parts.append(a.name if e == 1 else f"{a.name}^{e}")
        return "*".join(p for p in parts if p != "-") if self.sign > 0 else "-" + "*".join(parts[1:])


ONE_BASE = BaseExpr()
MINUS_ONE = BaseExpr(-1, Q(1), ())


@dataclass(frozen=True)
class GammaAtom:
    """A gamma factor; ``position`` is "num" or "den"."""

    argument: LinearForm
    position: str = NUM

    def __post_init__(self):
        if self.position not in (NUM, DEN):
            raise ValueError(f"bad gamma position {self.position!r}")

    def sort_key(self):
        return (self.position, str(self.argument))

    def __str__(self):
        s = f"Gamma({self.argument})"
        return s if self.position == NUM else f"1/{s}"


@dataclass(frozen=True)
class TermCoefficient:
    """Canonical product: rational * powers * gammas * linear factors.

    ``powers`` are pairs (base, exponent-form); equal bases are merged and a
    pure-number base with constant integer exponent folds into ``rational``.
    Numerator/denominator gammas with identical arguments cancel.
    ``linear_factors`` are affine forms raised to integer powers (they house
    values like 1/(a+b) that fall outside pure gamma algebra).
    """

    rational: Fraction = Q(1)
    powers: tuple[tuple[BaseExpr, LinearForm], ...] = ()
    gammas: tuple[GammaAtom, ...] = ()
    linear_factors: tuple[tuple[LinearForm, int], ...] = ()

    @staticmethod
    def make(rational: QLike = 1,
             powers: Iterable[tuple[BaseExpr, LinearForm]] = (),
             gammas: Iterable[GammaAtom] = (),
             linear_factors: Iterable[tuple[LinearForm, int]] = ()) -> "TermCoefficient":
        rat = as_q(rational)
        if rat == 0:
            return TermCoefficient(Q(0), (), (), ())

        merged: dict[tuple, tuple[BaseExpr, LinearForm]] = {}
        for base, expo in powers:
            if base.is_one:
                continue
            key = (base.sign, base.coefficient, base.exponents)
            if key in merged:
                b0, e0 = merged[key]
                merged[key] = (b0, e0 + expo)
            else:
                merged[key] = (base, expo)
        out_powers = []
        for base, expo in merged.values():
            if expo == LinearForm.const(0) or (expo.is_constant and expo.constant == 0):
                continue
            k = expo.as_exact_value()
            if k is not None and k.denominator == 1 and not base.exponents:
                rat *= Q(base.sign) ** k.numerator * base.coefficient ** k.numerator
                continue
            out_powers.append((base, expo))
        out_powers.sort(key=lambda p: (str(p[0]), str(p[1])))

        num = [g.argument for g in gammas if g.position == NUM]
        den = [g.argument for g in gammas if g.position == DEN]
        for arg in list(num):
            if arg in den:
                num.remove(arg)
                den.remove(arg)
        out_gammas = tuple(sorted(
            [GammaAtom(a, NUM) for a in num] + [GammaAtom(a, DEN) for a in den],
            key=GammaAtom.sort_key))

        lf_acc: dict[tuple, tuple[LinearForm, int]] = {}
        for form, k in linear_factors:
            if k == 0:
                continue
            key = (form.constant, form.terms)
            if key in lf_acc:
                f0, k0 = lf_acc[key]
                lf_acc[key] = (f0, k0 + k)
            else:
                lf_acc[key] = (form, k)
        out_lf = tuple(sorted(((f, k) for f, k in lf_acc.values() if k != 0),
                              key=lambda t: (str(t[0]), t[1])))

        return TermCoefficient(rat, tuple(out_powers), out_gammas, out_lf)

    @property
    def is_zero(self) -> bool:
        return self.rational == 0

    def __mul__(self, other: "TermCoefficient") -> "TermCoefficient":
        return TermCoefficient.make(
            self.rational * other.rational,
            self.powers + other.powers,
            self.gammas + other.gammas,
            self.linear_factors + other.linear_factors)

    def scaled(self, k: QLike) -> "TermCoefficient":
        return TermCoefficient.make(self.rational * as_q(k), self.powers, self.gammas, self.linear_factors)

    def times_power(self, base: BaseExpr, expo: LinearForm) -> "TermCoefficient":
        return TermCoefficient.make(self.rational, self.powers + ((base, expo),), self.gammas, self.linear_factors)

    def times_gamma(self, argument: LinearForm, position: str = NUM) -> "TermCoefficient":
        return TermCoefficient.make(self.rational, self.powers, self.gammas + (GammaAtom(argument, position),), self.linear_factors)

    def substitute(self, atom: Atom, replacement: LinearForm) -> "TermCoefficient":
        """Substitute into every exponent, gamma argument and linear factor.

        Power *bases* never contain indices or contour variables, so only
        affine slots are touched.
        """
        return TermCoefficient.make(
            self.rational,
            tuple((b, e.substitute(atom, replacement)) for b, e in self.powers),
            tuple(GammaAtom(g.argument.substitute(atom, replacement), g.position) for g in self.gammas),
            tuple((f.substitute(atom, replacement), k) for f, k in self.linear_factors))

    def substitute_many(self, subs: Mapping[Atom, LinearForm]) -> "TermCoefficient":
        out = self
        for a, r in subs.items():
            out = out.substitute(a, r)
        return out

    def atoms(self) -> set[Atom]:
        out: set[Atom] = set()
        for b, e in self.powers:
            out.update(b.atoms())
            out.update(e.atoms())
        for g in self.gammas:
            out.update(g.argument.atoms())
        for f, _ in self.linear_factors:
            out.update(f.atoms())
        return out

    def gammas_at(self, position: str) -> tuple[GammaAtom, ...]:
        return tuple(g for g in self.gammas if g.position == position)

    def __str__(self):
        parts = [str(self.rational)] if self.rational != 1 or not (self.powers or self.gammas or self.linear_factors) else []
        for b, e in self.powers:
            parts.append(f"({b})^({e})")
        for g in self.gammas:
            parts.append(str(g))
        for f, k in self.linear_factors:
            parts.append(f"({f})^{k}")
        return " * ".join(parts) if parts else "1"


ONE = TermCoefficient()


def pochhammer_reflect(u: LinearForm, n: Atom) -> TermCoefficient:
    """Negative-shift Pochhammer elimination:  (u)_{-n} = (-1)^n / (1-u)_n.

    The returned factor carries the sign as the power (-1)^n and the
    reciprocal Pochhammer as the gamma ratio Gamma(1-u)/Gamma(1-u+n).
    """
    if n.kind != INDEX:
        raise ValueError("pochhammer_reflect expects a summation index")
    one_minus_u = LinearForm.const(1) - u
    return TermCoefficient.make(
        1,
        powers=((MINUS_ONE, LinearForm.of(n)),),
        gammas=(GammaAtom(one_minus_u, NUM),
                GammaAtom(one_minus_u + LinearForm.of(n), DEN)))


def gamma_shift_normalize(g: GammaAtom, pivot: LinearForm) -> tuple[GammaAtom, TermCoefficient]:
    """Split an index shift off a gamma factor.

    Requires ``g.argument - pivot == m * n`` for a single summation index n
    and integer m.  Returns the index-free gamma ``Gamma(pivot)`` (in g's
    position) and the factor expressing the shift through Pochhammer ratios:

    * m = 1:   Gamma(u + n)  = Gamma(u) * (u)_n
    * m >= 2:  the multiplication theorem, e.g.
               Gamma(u + 2n) = Gamma(u) * 4^n * (u/2)_n * ((u+1)/2)_n
    * m <= -1: reflection, Gamma(u - n) = Gamma(u) * (-1)^n / (1-u)_n
    """
    shift = g.argument - pivot
    if shift.constant != 0 or len(shift.terms) != 1:
        raise NonIntegralShiftError(f"argument minus pivot is not a single-index multiple: {shift}")
    n, m = shift.terms[0]
    if n.kind != INDEX:
        raise NonIntegralShiftError(f"shift variable {n} is not a summation index")
    if m.denominator != 1:
        raise NonIntegralShiftError(f"index coefficient {m} is not an integer")
    m = m.numerator
    inv = g.position == DEN

    def positions(primary: str) -> str:
        if not inv:
            return primary
        return DEN if primary == NUM else NUM

    nf = LinearForm.of(n)
    powers: list[tuple[BaseExpr, LinearForm]] = []
    gammas: list[GammaAtom] = []
    if m == 0:
        return GammaAtom(pivot, g.position), ONE
    if m > 0:
        # Gamma(u+mn) = Gamma(u) m^{mn} prod_i ((u+i)/m)_n
        if m > 1:
            powers.append((BaseExpr.number(m), nf * m * (1 if not inv else -1)))
        for i in range(m):
            w = (pivot + i) / m
            gammas.append(GammaAtom(w + nf, positions(NUM)))
            gammas.append(GammaAtom(w, positions(DEN)))
    else:
        # Gamma(u-kn) = Gamma(u) (-1)^{kn} / (1-u)_{kn},
        # (1-u)_{kn} = k^{kn} prod_i ((1-u+i)/k)_n
        k = -m
        powers.append((MINUS_ONE, nf * k))
        if k > 1:
            powers.append((BaseExpr.number(k), nf * k * (-1 if not inv else 1)))
        one_minus = LinearForm.const(1) - pivot
        for i in range(k):
            w = (one_minus + i) / k
            gammas.append(GammaAtom(w + nf, positions(DEN)))
            gammas.append(GammaAtom(w, positions(NUM)))
    return GammaAtom(pivot, g.position), TermCoefficient.make(1, powers, gammas)


def exact_nonpositive_integer(value: Fraction) -> bool:
    return value.denominator == 1 and value <= 0
