"""Problem-file schema: parsing, validation and printing.

A problem is a JSON document describing one integral:

* ``kind``: HalfLineIntegral | InverseMellin | DirectMellin | MultiDim
* ``parameters``: declared symbols, each optionally with a genericity hint
* ``variable``: the function argument of inverse-transform problems
* ``integration_variables`` + ``measures``: half-line variables and the
  exponent of the measure power x**e dx (as an affine expression)
* ``contour_variables``: declared line-integral variables
* ``factors``: gamma / power / function factors (see ``_parse_factor``)
* ``prefactor``: constant gamma/power factors outside the integral
* ``verify``: oracle route, assignments, samples and tolerance

Affine expressions ("s - a", "(a+b)/3 + 2*n") are parsed with a small
AST-based grammar over declared symbols with exact rational coefficients.
"""

from __future__ import annotations

import ast
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping

from .algebra import (CONTOUR, DEN, INDEX, NUM, PARAM, Atom, AtomFactory,
                      BaseExpr, GammaAtom, LinearForm, Q, TermCoefficient)
from .brackets import (BESSEL_J, BESSEL_K, BESSEL_K_PRODUCT, CATALOG, EI,
                       EXP, GAMMA_FN, GENERIC, POWER_OF_SUM, FunctionSpec)
from .errors import SchemaError

KINDS = ("HalfLineIntegral", "InverseMellin", "DirectMellin", "MultiDim")
ROUTES = ("quad_contour", "quad_halfline", "quad_halfline_2d", "special",
          "mellin_roundtrip", "eps_limit_vs_quad", "none")


def parse_affine(text: str | int, symbols: Mapping[str, Atom]) -> LinearForm:
    """Parse an affine expression over declared symbols.

    Supports +, -, * and / with rational literals; products of two symbols
    are rejected.  Fractions may be written 1/2 or as decimals with an
    exact power-of-ten denominator.
    """
    if isinstance(text, (int, Fraction)):
        return LinearForm.const(text)
    try:
        tree = ast.parse(str(text), mode="eval")
    except SyntaxError as exc:
        raise SchemaError(f"cannot parse expression {text!r}: {exc}") from None

    def walk(node) -> LinearForm:
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant):
            if isinstance(node.value, int):
                return LinearForm.const(node.value)
            if isinstance(node.value, float):
                return LinearForm.const(Fraction(str(node.value)))
            raise SchemaError(f"bad literal {node.value!r} in {text!r}")
        if isinstance(node, ast.Name):
            if node.id not in symbols:
                raise SchemaError(f"undeclared symbol {node.id!r} in {text!r}")
            return LinearForm.of(symbols[node.id])
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -walk(node.operand)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.UAdd):
            return walk(node.operand)
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Add):
                return walk(node.left) + walk(node.right)
            if isinstance(node.op, ast.Sub):
                return walk(node.left) - walk(node.right)
            if isinstance(node.op, ast.Mult):
                left, right = walk(node.left), walk(node.right)
                if left.is_constant:
                    return right * left.constant
                if right.is_constant:
                    return left * right.constant
                raise SchemaError(f"nonlinear product in {text!r}")
            if isinstance(node.op, ast.Div):
                left, right = walk(node.left), walk(node.right)
                if not right.is_constant or right.constant == 0:
                    raise SchemaError(f"bad divisor in {text!r}")
                return left / right.constant
        raise SchemaError(f"unsupported syntax in {text!r}")

    return walk(tree)


def parse_rational(text) -> Fraction:
    if isinstance(text, int):
        return Q(text)
    if isinstance(text, float):
        return Fraction(str(text))
    return Fraction(str(text))


def parse_base(obj: Any, symbols: Mapping[str, Atom]) -> BaseExpr:
    """A signed monomial: {"sign": -1, "coefficient": "1/2",
    "symbols": {"a": "2", "x": "2"}}; a bare string names one symbol."""
    if isinstance(obj, str):
        if obj not in symbols:
            raise SchemaError(f"undeclared symbol {obj!r} in base")
        return BaseExpr.symbol(symbols[obj])
    if isinstance(obj, (int, float)):
        return BaseExpr.number(parse_rational(obj))
    sign = int(obj.get("sign", 1))
    coeff = parse_rational(obj.get("coefficient", 1))
    exps = {}
    for name, e in obj.get("symbols", {}).items():
        if name not in symbols:
            raise SchemaError(f"undeclared symbol {name!r} in base")
        exps[symbols[name]] = parse_rational(e)
    return BaseExpr.make(sign, coeff, exps)


@dataclass(frozen=True)
class Factor:
    type: str
    gamma: GammaAtom | None = None
    power: tuple[BaseExpr, LinearForm] | None = None
    function: FunctionSpec | None = None


@dataclass
class Problem:
    id: str
    kind: str
    factory: AtomFactory
    symbols: dict[str, Atom]
    parameters: tuple[str, ...]
    generic_hints: dict[str, str]
    variable: str | None
    contour_variables: tuple[str, ...]
    integration_variables: tuple[str, ...]
    measures: dict[str, LinearForm]
    factors: tuple[Factor, ...]
    methods: tuple[tuple[Factor, ...], ...]
    prefactor: TermCoefficient
    method: str
    verify: dict
    expected: str | None
    title: str = ""
    raw: dict = field(default_factory=dict)

    def atom(self, name: str) -> Atom:
        return self.symbols[name]


def _parse_factor(obj: dict, symbols: Mapping[str, Atom]) -> Factor:
    ftype = obj.get("type")
    if ftype == "gamma":
        pos = obj.get("position", "num")
        if pos not in (NUM, DEN):
            raise SchemaError(f"gamma position must be num/den, got {pos!r}")
        arg = parse_affine(obj["argument"], symbols)
        return Factor("gamma", gamma=GammaAtom(arg, pos))
    if ftype == "power":
        base = parse_base(obj["base"], symbols)
        expo = parse_affine(obj["exponent"], symbols)
        return Factor("power", power=(base, expo))
    if ftype == "function":
        fid = obj.get("id")
        if fid not in CATALOG:
            raise SchemaError(f"unknown function id {fid!r}")
        params = tuple(parse_affine(p, symbols) for p in obj.get("parameters", []))
        argument = parse_base(obj["argument"], symbols) if "argument" in obj else None
        terms = tuple(parse_base(t, symbols) for t in obj.get("terms", []))
        exponent = parse_affine(obj["exponent"], symbols) if "exponent" in obj else None
        series = None
        if "series" in obj:
            sdesc = obj["series"]
            ph = Atom(INDEX, "_k", 10_000)
            ssym = dict(symbols)
            ssym["_k"] = ph
            coeff = _parse_coefficient(sdesc.get("coefficient", {}), ssym)
            var_exp = parse_affine(sdesc["variable_exponent"], ssym)
            series = (coeff, var_exp, ph)
        if fid == POWER_OF_SUM and (not terms or exponent is None):
            raise SchemaError("PowerOfSum needs terms and exponent")
        rep = obj.get("representation", "series")
        if rep not in ("series", "contour"):
            raise SchemaError(f"representation must be series/contour, got {rep!r}")
        return Factor("function", function=FunctionSpec(
            fid, argument=argument, parameters=params, terms=terms,
            exponent=exponent, series=series, representation=rep))
    raise SchemaError(f"unknown factor type {ftype!r}")


def _parse_coefficient(obj: dict, symbols: Mapping[str, Atom]) -> TermCoefficient:
    powers = []
    for p in obj.get("powers", []):
        powers.append((parse_base(p["base"], symbols),
                       parse_affine(p["exponent"], symbols)))
    gammas = []
    for g in obj.get("gammas", []):
        gammas.append(GammaAtom(parse_affine(g["argument"], symbols),
                                g.get("position", NUM)))
    linfacs = []
    for l in obj.get("linear_factors", []):
        linfacs.append((parse_affine(l["form"], symbols), int(l.get("power", 1))))
    return TermCoefficient.make(parse_rational(obj.get("rational", 1)),
                                powers, gammas, linfacs)


def parse_problem(doc: str | dict) -> Problem:
    """Parse and validate a problem document (JSON text or dict)."""
    if isinstance(doc, str):
        try:
            obj = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}") from None
    else:
        obj = doc
    pid = obj.get("id")
    if not pid:
        raise SchemaError("missing problem id", field="id")
    kind = obj.get("kind")
    if kind not in KINDS:
        raise SchemaError(f"kind must be one of {KINDS}, got {kind!r}", field="kind")

    factory = AtomFactory()
    symbols: dict[str, Atom] = {}
    parameters = []
    hints = {}
    for p in obj.get("parameters", []):
        if isinstance(p, str):
            name, hint = p, ""
        else:
            name, hint = p["name"], p.get("generic_hint", "")
        symbols[name] = factory.param(name)
        parameters.append(name)
        hints[name] = hint
    variable = obj.get("variable")
    if variable:
        if variable in symbols:
            raise SchemaError(f"variable {variable!r} already declared")
        symbols[variable] = factory.param(variable)
    int_vars = tuple(obj.get("integration_variables", []))
    for v in int_vars:
        symbols[v] = factory.param(v)
    cvars = tuple(obj.get("contour_variables", []))
    for v in cvars:
        symbols[v] = factory.contour(v)

    measures = {}
    for v, e in obj.get("measures", {}).items():
        if v not in int_vars:
            raise SchemaError(f"measure for undeclared integration variable {v!r}")
        measures[v] = parse_affine(e, symbols)
    for v in int_vars:
        measures.setdefault(v, LinearForm.const(0))

    def parse_factor_list(lst) -> tuple[Factor, ...]:
        if not lst:
            raise SchemaError("empty factor list", field="factors")
        return tuple(_parse_factor(f, symbols) for f in lst)

    methods: tuple[tuple[Factor, ...], ...]
    if "methods" in obj:
        methods = tuple(parse_factor_list(m) for m in obj["methods"])
        factors = methods[0]
    else:
        factors = parse_factor_list(obj.get("factors", []))
        methods = (factors,)

    # gamma factors of inverse-Mellin integrands must move poles: zero
    # slope in every contour variable is a spec violation for them
    if kind == "InverseMellin":
        if len(cvars) != 1:
            raise SchemaError("InverseMellin problems declare exactly one contour variable")
        sv = symbols[cvars[0]]
        for f in factors:
            if f.type == "gamma" and f.gamma.argument.coefficient(sv) == 0:
                raise SchemaError(
                    f"gamma factor {f.gamma} does not involve {cvars[0]}; "
                    "contour gamma slopes must be nonzero")

    prefactor = _parse_coefficient(obj.get("prefactor", {}), symbols)
    verify = dict(obj.get("verify", {}))
    route = verify.get("route", "none")
    if route not in ROUTES:
        raise SchemaError(f"unknown verify route {route!r}", field="verify.route")

    return Problem(
        id=pid, kind=kind, factory=factory, symbols=symbols,
        parameters=tuple(parameters), generic_hints=hints,
        variable=variable, contour_variables=cvars,
        integration_variables=int_vars, measures=measures,
        factors=factors, methods=methods, prefactor=prefactor,
        method=obj.get("method", "bracket_series"),
        verify=verify, expected=obj.get("expected"),
        title=obj.get("title", ""), raw=obj)


def print_problem(p: Problem) -> str:
    """Round-trip serialization (JSON of the original document)."""
    return json.dumps(p.raw, indent=2, sort_keys=True)
