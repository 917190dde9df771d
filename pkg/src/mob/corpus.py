"""Built-in problem corpus and the closed-form oracle registry.

Problem files live in ``corpus_data/`` and are ordinary problem documents;
``manifest()`` lists them.  ``ORACLES`` maps the ``expected`` field of a
problem to a closed-form reference implementation, and ``EXPRESSIONS``
holds limit expressions checked through the epsilon extrapolator.
"""

from __future__ import annotations

import cmath
import json
import math
from importlib import resources
from typing import Callable

import numpy as np
from scipy import special as sp

from . import numeric
from .problems import Problem, parse_problem

MANIFEST = (
    "hyp2f1",
    "inv-exp",
    "inv-exp-recip",
    "bessel-k2",
    "binomial-plus",
    "binomial-minus",
    "bessel-j",
    "bessel-j-recip",
    "mittag-leffler",
    "k-moment",
    "k0-squared",
    "k0-cubed",
    "k0-fourth",
    "gr-6.532.4",
    "gr-6.521.2",
    "gr-6.611.3",
    "j2d-ei-k0",
    "feynman-bubble",
    "flex",
)


def manifest() -> tuple[str, ...]:
    return MANIFEST


def load_document(pid: str) -> dict:
    name = f"{pid}.json"
    path = resources.files("mob").joinpath("corpus_data", name)
    with path.open("r") as fh:
        return json.load(fh)


def load_problem(pid: str) -> Problem:
    return parse_problem(load_document(pid))


# ---------------------------------------------------------------------------
# closed-form oracles (keyed by the problems' ``expected`` field)

def _r(v) -> float:
    return complex(v).real


def _oracle_inv_exp(v) -> complex:
    x, a = _r(v["x"]), _r(v["a"])
    return x ** (-a) * math.exp(-x)


def _oracle_inv_exp_recip(v) -> complex:
    x, a = _r(v["x"]), _r(v["a"])
    return x ** (-a) * math.exp(-1.0 / x)


def _oracle_bessel_k2(v) -> complex:
    x, a, b = _r(v["x"]), _r(v["a"]), _r(v["b"])
    return 2.0 * x ** (-(a + b) / 2) * sp.kv(a - b, 2.0 * math.sqrt(x))


def _oracle_binomial_plus(v) -> complex:
    x, a, b = _r(v["x"]), _r(v["a"]), _r(v["b"])
    return sp.gamma(b - a) * x ** (-a) * (1.0 + x) ** (a - b)


def _oracle_binomial_minus(v) -> complex:
    x, a, b = _r(v["x"]), _r(v["a"]), _r(v["b"])
    return x ** (-a) * (1.0 - x) ** (a - b - 1) / sp.gamma(a - b)


def _oracle_bessel_j56(v) -> complex:
    x, a, b = _r(v["x"]), _r(v["a"]), _r(v["b"])
    return x ** ((1 - a - b) / 2) * sp.jv(b - a - 1, 2.0 * math.sqrt(x))


def _oracle_bessel_j57(v) -> complex:
    x, a, b = _r(v["x"]), _r(v["a"]), _r(v["b"])
    return x ** (-(a + b + 1) / 2) * sp.jv(a - b - 1, 2.0 / math.sqrt(x))


def _oracle_mittag_leffler(v) -> complex:
    x, al, be = _r(v["x"]), _r(v["alpha"]), _r(v["beta"])
    return numeric.mittag_leffler(al, be, -x)


def _oracle_k_moment(v) -> complex:
    al, mu, nu = _r(v["alpha"]), _r(v["mu"]), _r(v["nu"])
    return (2.0 ** (al - 3) / sp.gamma(al)
            * sp.gamma((al + mu + nu) / 2) * sp.gamma((al + mu - nu) / 2)
            * sp.gamma((al - mu + nu) / 2) * sp.gamma((al - mu - nu) / 2))


def _oracle_k0_ak(v) -> complex:
    return complex(sp.kv(0, _r(v["A"]) * _r(v["k"])))


def _oracle_gr65212(v) -> complex:
    a, b, nu = _r(v["a"]), _r(v["b"]), _r(v["nu"])
    return b ** nu / (a ** nu * (a * a + b * b))


def _oracle_gr66113(v) -> complex:
    b, nu = _r(v["b"]), _r(v["nu"])
    w = cmath.sqrt(1.0 - b * b)
    return (math.pi / (2.0 * b ** nu * math.sin(math.pi * nu))
            * ((1.0 + w) ** nu - (1.0 - w) ** nu) / w)


def _oracle_j2d(v) -> complex:
    a, b = _r(v["a"]), _r(v["b"])
    return (-(4.0 ** (-1 - b / 3 + a / 6)) / (a + b)
            * sp.gamma((a - 2 * b) / 6) ** 2 * sp.gamma((a + b) / 3))


def _oracle_flex(v) -> complex:
    a, b = _r(v["a"]), _r(v["b"])
    return math.pi / (2 * b) * math.exp(a * a * b * b) * (1.0 - sp.erf(a * b))


ORACLES: dict[str, Callable[[dict], complex]] = {
    "inv_exp": _oracle_inv_exp,
    "inv_exp_recip": _oracle_inv_exp_recip,
    "bessel_k2": _oracle_bessel_k2,
    "binomial_plus": _oracle_binomial_plus,
    "binomial_minus": _oracle_binomial_minus,
    "bessel_j56": _oracle_bessel_j56,
    "bessel_j57": _oracle_bessel_j57,
    "mittag_leffler": _oracle_mittag_leffler,
    "k_moment": _oracle_k_moment,
    "k0_Ak": _oracle_k0_ak,
    "gr65212": _oracle_gr65212,
    "gr66113": _oracle_gr66113,
    "j2d": _oracle_j2d,
    "flex_3466": _oracle_flex,
}


# ---------------------------------------------------------------------------
# limit expressions (paper-scale values reproduced through eps_limit)

def kint20_expression(a: float) -> complex:
    """Two-term regulated form of the triple-K0 moment; its a->0 limit is
    the K0^3 integral."""
    t1 = (sp.gamma(-a) * sp.gamma((1 + a) / 2) ** 4 / sp.gamma(1 + a)
          * numeric.eval_pfq([(1 + a) / 2] * 3, [1 + a, 1 + a / 2], 0.25))
    t2 = (sp.gamma(a) * sp.gamma((1 - a) / 2) ** 4 / sp.gamma(1 - a)
          * numeric.eval_pfq([(1 - a) / 2] * 3, [1 - a, 1 - a / 2], 0.25))
    return (t1 + t2) / 8.0


def kint41_expression(a: float) -> complex:
    """Three-term regulated form of the quadruple-K0 moment (4F3 values at
    unity); its a->0 limit is the K0^4 integral."""
    rp = math.sqrt(math.pi)
    t1 = (sp.gamma(-a) ** 2 * sp.gamma(a + 0.5) ** 2 * sp.gamma(2 * a + 0.5)
          / sp.gamma(2 * a + 1)
          * numeric.eval_pfq([0.5, a + 0.5, a + 0.5, 2 * a + 0.5],
                             [1 + a, 1 + a, 1 + 2 * a], 1.0))
    t2 = (2 * rp * sp.gamma(-a) * sp.gamma(a) * sp.gamma(0.5 + a) * sp.gamma(0.5 - a)
          * numeric.eval_pfq([0.5, 0.5, 0.5 + a, 0.5 - a],
                             [1.0, 1 + a, 1 - a], 1.0))
    t3 = (sp.gamma(a) ** 2 * sp.gamma(0.5 - a) ** 2 * sp.gamma(0.5 - 2 * a)
          / sp.gamma(1 - 2 * a)
          * numeric.eval_pfq([0.5, 0.5 - a, 0.5 - a, 0.5 - 2 * a],
                             [1 - a, 1 - a, 1 - 2 * a], 1.0))
    return rp / 16.0 * (t1 + t2 + t3)


EXPRESSIONS: dict[str, Callable[[float], complex]] = {
    "k0-cubed": kint20_expression,
    "k0-fourth": kint41_expression,
}
