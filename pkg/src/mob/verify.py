"""Verification driver: compares solver output against the numeric oracle
along the route declared by the problem file and renders a deterministic
report.

Routes
------
* ``quad_contour``      solved pieces vs direct contour quadrature of the
                        problem's own line integrand (or, for the
                        product-transform method, quadrature of the derived
                        contour form vs the expected closed form)
* ``quad_halfline``     solved value vs double-exponential quadrature of
                        the original half-line integrand
* ``quad_halfline_2d``  same, iterated over two variables
* ``special``           solved pieces vs a registered closed form
* ``mellin_roundtrip``  forward Mellin transform of the solved function vs
                        the problem's gamma product
* ``eps_limit_vs_quad`` Richardson limit of a registered expression vs
                        quadrature

Failures are verdicts, not exceptions; degenerate parameters yield
``inconclusive``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

import numpy as np

from . import numeric
from .algebra import DEN, NUM, Atom, LinearForm, TermCoefficient
from .brackets import (BESSEL_J, BESSEL_K, BESSEL_K_PRODUCT, EI, EXP,
                       GAMMA_FN, POWER_OF_SUM, ContourRepresentation)
from .errors import BracketError, PoleError, RegionError
from .evalsym import (eval_base, eval_coefficient, eval_linear,
                      evaluate_piecewise, region_contains)
from .numeric import GammaFactorData, PowerFactorData, cpow
from .pipeline import ChoiceRun, build_mb_integrand
from .problems import Problem, parse_rational
from .solver import BOUNDED


@dataclass
class VerificationReport:
    case_id: str
    route: str
    tol: float
    seed: int
    rows: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        if any(r.get("status") == "fail" for r in self.rows):
            return "fail"
        if any(r.get("status") == "inconclusive" for r in self.rows) or not self.rows:
            return "inconclusive"
        return "pass"

    @property
    def max_rel_error(self) -> float:
        errs = [r["rel_err"] for r in self.rows if r.get("rel_err") is not None]
        return max(errs) if errs else float("nan")

    def to_dict(self) -> dict:
        return {"case": self.case_id, "route": self.route, "tol": repr(self.tol),
                "seed": self.seed, "verdict": self.verdict,
                "rows": [dict(r, rel_err=repr(r["rel_err"]) if r.get("rel_err") is not None else None,
                              symbolic=_cfmt(r.get("symbolic")),
                              oracle=_cfmt(r.get("oracle")))
                         for r in self.rows],
                "notes": list(self.notes)}

    def render(self) -> str:
        lines = [f"verify {self.case_id} [{self.route}] tol={self.tol:g} seed={self.seed}"]
        for r in self.rows:
            err = f"{r['rel_err']:.3e}" if r.get("rel_err") is not None else "-"
            lines.append(f"  {r['sample']:<38} rel={err:<11} {r['status']}")
        for n in self.notes:
            lines.append(f"  note: {n}")
        lines.append(f"  verdict: {self.verdict}")
        return "\n".join(lines)


def _cfmt(v) -> str | None:
    if v is None:
        return None
    v = complex(v)
    return f"{v.real!r}{'+' if v.imag >= 0 else '-'}{abs(v.imag)!r}j"


def base_assignment(p: Problem) -> dict[str, complex]:
    out = {}
    for name, v in p.verify.get("assignments", {}).items():
        out[name] = complex(Fraction(str(v)))
    return out


def build_env(p: Problem, values: Mapping[str, complex]) -> dict[Atom, complex]:
    env = {}
    for name, v in values.items():
        env[p.symbols[name]] = complex(v)
    return env


def mb_numeric_parts(p: Problem, env) -> tuple[list[GammaFactorData], list[PowerFactorData], complex]:
    mb = build_mb_integrand(p, p.methods[0])
    sv = mb.variable
    gammas = []
    for g in mb.gammas:
        slope = g.argument.coefficient(sv)
        a0 = eval_linear(g.argument.drop(sv), env)
        gammas.append(GammaFactorData(a0, float(slope), 1 if g.position == NUM else -1))
    base, expo = mb.power
    powers = [PowerFactorData(eval_base(base, env),
                              eval_linear(expo.drop(sv), env),
                              complex(expo.coefficient(sv)))]
    pref = eval_coefficient(mb.prefactor, env)
    return gammas, powers, pref


def contour_rep_parts(rep: ContourRepresentation, env) -> tuple[list[GammaFactorData], list[PowerFactorData], complex]:
    sv = rep.variable
    gammas = []
    powers = []
    for g in rep.integrand.gammas:
        slope = g.argument.coefficient(sv)
        if slope == 0:
            continue
        gammas.append(GammaFactorData(eval_linear(g.argument.drop(sv), env),
                                      float(slope), 1 if g.position == NUM else -1))
    rest = TermCoefficient.make(
        rep.integrand.rational,
        (), tuple(g for g in rep.integrand.gammas if g.argument.coefficient(sv) == 0),
        rep.integrand.linear_factors)
    pref = eval_coefficient(rep.prefactor, env) * eval_coefficient(rest, env)
    for base, expo in rep.integrand.powers:
        powers.append(PowerFactorData(eval_base(base, env),
                                      eval_linear(expo.drop(sv), env),
                                      complex(expo.coefficient(sv))))
    return gammas, powers, pref


def quad_contour_value(gammas, powers, pref, tol) -> complex:
    c = numeric.select_numeric_contour(gammas)
    return numeric.quad_contour(gammas, powers, c, tol=tol, prefactor=pref)


def integrand_factory(p: Problem, env, method: int = 0) -> Callable:
    """Numeric integrand of the original problem (before any expansion)."""
    factors = p.methods[method]
    ivars = [p.atom(v) for v in p.integration_variables]

    def evaluate(*xs: float) -> complex:
        local = dict(env)
        for a, x in zip(ivars, xs):
            local[a] = complex(x)
        value: complex = 1.0 + 0j
        value *= eval_coefficient(p.prefactor, local)
        for v, a in zip(p.integration_variables, ivars):
            value *= cpow(local[a], eval_linear(p.measures[v], local))
        for f in factors:
            if f.type == "power":
                base, expo = f.power
                value *= cpow(eval_base(base, local), eval_linear(expo, local))
            elif f.type == "gamma":
                arg = eval_linear(f.gamma.argument, local)
                value *= numeric.gamma_c(arg) if f.gamma.position == NUM else numeric.recip_gamma(arg)
            else:
                value *= _factor_value(f.function, local)
        return value

    return evaluate


def _factor_value(fs, env) -> complex:
    arg = eval_base(fs.argument, env) if fs.argument is not None else None
    if fs.id == EXP:
        return cmath.exp(arg)
    if fs.id == EI:
        return complex(numeric.eval_special("Ei", (), arg))
    if fs.id == BESSEL_K:
        order = eval_linear(fs.parameters[0], env).real
        return numeric.eval_special("BesselK", (order,), arg)
    if fs.id == BESSEL_J:
        order = eval_linear(fs.parameters[0], env).real
        return numeric.eval_special("BesselJ", (order,), arg)
    if fs.id == BESSEL_K_PRODUCT:
        mu = eval_linear(fs.parameters[0], env).real
        nu = eval_linear(fs.parameters[1], env).real
        return (numeric.eval_special("BesselK", (mu,), arg)
                * numeric.eval_special("BesselK", (nu,), arg))
    if fs.id == POWER_OF_SUM:
        total = sum(eval_base(t, env) for t in fs.terms)
        return cpow(total, eval_linear(fs.exponent, env))
    if fs.id == GAMMA_FN:
        return numeric.gamma_c(eval_linear(fs.parameters[0], env))
    raise BracketError(f"no numeric evaluation for factor {fs.id!r}")


def default_samples(p: Problem, run: ChoiceRun, seed: int) -> list[dict]:
    """Five log-spaced in-region values of the problem variable per piece,
    jittered deterministically by the seed and kept a factor >= 2 away
    from the |z| = 1 boundary."""
    if p.variable is None or run.result is None:
        return [{}]
    rng = np.random.RandomState(seed)
    out = []
    for region, _terms in run.result.pieces:
        if region.kind == BOUNDED:
            lo, hi = (2.0, 20.0)
            exps = [e for _, e in region.zeff.exponents] if region.zeff else []
            if exps and all(e > 0 for e in exps):
                lo, hi = (0.05, 0.5)
        else:
            lo, hi = (0.2, 5.0)
        u = np.sort(rng.uniform(0.02, 0.98, size=5))
        for t in u:
            out.append({p.variable: float(math.exp(
                math.log(lo) + t * (math.log(hi) - math.log(lo))))})
    return out


def verify_case(p: Problem, runs: list[ChoiceRun], *, samples: list[dict] | None = None,
                tol: float | None = None, seed: int = 0,
                max_terms: int = 100_000,
                oracles: Mapping[str, Callable] | None = None,
                expressions: Mapping[str, Callable] | None = None) -> VerificationReport:
    route = p.verify.get("route", "none")
    tol = float(tol if tol is not None else p.verify.get("tol", 1e-8))
    rep = VerificationReport(case_id=p.id, route=route, tol=tol, seed=seed)
    if route == "none":
        rep.notes.append("no verification route declared")
        return rep
    assign = base_assignment(p)
    run = runs[0]
    if samples is None:
        samples = p.verify.get("samples")
    if samples is None:
        samples = default_samples(p, run, seed)
    samples = [dict(s) for s in samples]

    def row(sample_desc: str, symbolic, oracle, note: str = ""):
        if symbolic is None or oracle is None:
            rep.rows.append({"sample": sample_desc, "symbolic": symbolic,
                             "oracle": oracle, "rel_err": None,
                             "status": "inconclusive", "note": note})
            return
        scale = max(abs(oracle), 1e-300)
        err = abs(symbolic - oracle) / scale
        rep.rows.append({"sample": sample_desc, "symbolic": symbolic,
                         "oracle": oracle, "rel_err": err,
                         "status": "pass" if err <= tol else "fail",
                         "note": note})

    def guarded(fn, sample_desc):
        try:
            return fn(), ""
        except (RegionError, PoleError) as exc:
            return None, f"{type(exc).__name__}: {exc}"

    if route in ("quad_contour", "quad_halfline", "quad_halfline_2d", "special"):
        for override in samples:
            values = dict(assign)
            values.update({k: complex(Fraction(str(v))) if not isinstance(v, (int, float, complex))
                           else complex(v) for k, v in override.items()})
            env = build_env(p, values)
            desc = ", ".join(f"{k}={complex(v).real:g}" for k, v in sorted(values.items()))
            note = ""
            if run.contour_result is not None:
                sym, note1 = guarded(lambda: quad_contour_value(
                    *contour_rep_parts(run.contour_result, env), tol=tol * 1e-2), desc)
                note += note1
            else:
                sym, note1 = guarded(lambda: evaluate_piecewise(
                    run.result, env, tol=min(tol * 1e-3, 1e-13), max_terms=max_terms), desc)
                note += note1
            if route == "quad_contour" and p.kind == "InverseMellin":
                orc, note2 = guarded(lambda: quad_contour_value(
                    *mb_numeric_parts(p, env), tol=tol * 1e-2), desc)
            elif route == "special" or (route == "quad_contour" and p.expected):
                fn = (oracles or {})[p.expected]
                orc, note2 = guarded(lambda: fn({k: complex(v) for k, v in values.items()}), desc)
            elif route == "quad_halfline":
                f = integrand_factory(p, env)
                orc, note2 = guarded(lambda: numeric.quad_halfline(
                    lambda x: f(x), tol=tol * 1e-2)[0], desc)
            else:
                f = integrand_factory(p, env)
                orc, note2 = guarded(lambda: numeric.quad_halfline_2d(
                    f, tol=tol * 1e-1)[0], desc)
            row(desc, sym, orc, note + note2)
    elif route == "mellin_roundtrip":
        env = build_env(p, assign)
        sv = p.atom(p.contour_variables[0])
        for s_val in p.verify.get("s_samples", [0.5, 0.7, 0.9, 1.1, 1.3]):
            s_val = complex(Fraction(str(s_val)))
            desc = f"s={s_val.real:g}"

            def forward():
                def f(x):
                    local = dict(env)
                    local[p.symbols[p.variable]] = complex(x)
                    fx = evaluate_piecewise(run.result, local)
                    return cpow(x, s_val - 1) * fx
                return numeric.quad_halfline(f, tol=tol * 1e-2)[0]

            def phi():
                local = dict(env)
                local[sv] = s_val
                value = eval_coefficient(p.prefactor, local)
                for fac in p.methods[0]:
                    if fac.type == "gamma":
                        arg = eval_linear(fac.gamma.argument, local)
                        value *= (numeric.gamma_c(arg) if fac.gamma.position == NUM
                                  else numeric.recip_gamma(arg))
                return value

            sym, n1 = guarded(forward, desc)
            orc, n2 = guarded(phi, desc)
            row(desc, sym, orc, n1 + n2)
    elif route == "eps_limit_vs_quad":
        env = build_env(p, assign)
        expr_fn = (expressions or {})[p.id]
        desc = "eps->0 limit"

        def limit():
            cfg = p.verify.get("eps", {})
            value, _est = numeric.eps_limit(
                lambda eps: expr_fn(eps),
                eps0=float(cfg.get("eps0", 0.04)),
                ratio=float(cfg.get("ratio", 2 ** -0.5)),
                points=int(cfg.get("points", 6)),
                power=int(cfg.get("power", 2)),
                tol=tol)
            return value

        f = integrand_factory(p, env)
        sym, n1 = guarded(limit, desc)
        orc, n2 = guarded(lambda: numeric.quad_halfline(lambda x: f(x), tol=min(tol * 1e-2, 1e-10))[0], desc)
        row(desc, sym, orc, n1 + n2)
    else:
        rep.notes.append(f"route {route} not implemented")
    return rep
