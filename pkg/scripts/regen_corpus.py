"""Regenerate the built-in corpus problem files."""

import json
import pathlib

OUT = pathlib.Path(__file__).resolve().parent.parent / "src" / "mob" / "corpus_data"

DEFS = {}

DEFS["hyp2f1"] = {
    "id": "hyp2f1",
    "title": "Gauss 2F1 from its Barnes line integral, both regions",
    "kind": "InverseMellin",
    "parameters": [{"name": "a"}, {"name": "b"}, {"name": "c"}],
    "variable": "x",
    "contour_variables": ["s"],
    "factors": [
        {"type": "gamma", "argument": "-s", "position": "num"},
        {"type": "gamma", "argument": "s + a", "position": "num"},
        {"type": "gamma", "argument": "s + b", "position": "num"},
        {"type": "gamma", "argument": "s + c", "position": "den"},
        {"type": "power", "base": {"sign": -1, "symbols": {"x": "1"}}, "exponent": "s"},
    ],
    "prefactor": {"gammas": [
        {"argument": "c", "position": "num"},
        {"argument": "a", "position": "den"},
        {"argument": "b", "position": "den"},
    ]},
    "verify": {
        "route": "quad_contour",
        "assignments": {"a": "3/10", "b": "7/10", "c": "19/10"},
        "samples": [{"x": 0.3}, {"x": -0.4}, {"x": 2.5}, {"x": -3.0}],
        "tol": 1e-8,
    },
}

DEFS["inv-exp"] = {
    "id": "inv-exp",
    "title": "inverse Mellin of Gamma(s-a): x^-a exp(-x)",
    "kind": "InverseMellin",
    "parameters": [{"name": "a"}],
    "variable": "x",
    "contour_variables": ["s"],
    "factors": [
        {"type": "gamma", "argument": "s - a", "position": "num"},
        {"type": "power", "base": "x", "exponent": "-s"},
    ],
    "expected": "inv_exp",
    "verify": {
        "route": "special",
        "assignments": {"a": "2/5"},
        "samples": [{"x": 0.3}, {"x": 1.0}, {"x": 2.5}],
        "tol": 1e-10,
    },
}

DEFS["inv-exp-recip"] = {
    "id": "inv-exp-recip",
    "title": "inverse Mellin of Gamma(a-s): x^-a exp(-1/x)",
    "kind": "InverseMellin",
    "parameters": [{"name": "a"}],
    "variable": "x",
    "contour_variables": ["s"],
    "factors": [
        {"type": "gamma", "argument": "a - s", "position": "num"},
        {"type": "power", "base": "x", "exponent": "-s"},
    ],
    "expected": "inv_exp_recip",
    "verify": {
        "route": "special",
        "assignments": {"a": "2/5"},
        "samples": [{"x": 0.3}, {"x": 1.0}, {"x": 2.5}],
        "tol": 1e-10,
    },
}

DEFS["bessel-k2"] = {
    "id": "bessel-k2",
    "title": "inverse Mellin of Gamma(s-a)Gamma(s-b): modified Bessel K",
    "kind": "InverseMellin",
    "parameters": [{"name": "a"}, {"name": "b"}],
    "variable": "x",
    "contour_variables": ["s"],
    "factors": [
        {"type": "gamma", "argument": "s - a", "position": "num"},
        {"type": "gamma", "argument": "s - b", "position": "num"},
        {"type": "power", "base": "x", "exponent": "-s"},
    ],
    "expected": "bessel_k2",
    "verify": {
        "route": "special",
        "assignments": {"a": "2/5", "b": "1/10"},
        "samples": [{"x": 0.3}, {"x": 1.0}, {"x": 2.0}],
        "tol": 1e-9,
    },
}

DEFS["binomial-plus"] = {
    "id": "binomial-plus",
    "title": "inverse Mellin of Gamma(s-a)Gamma(b-s): binomial kernel",
    "kind": "InverseMellin",
    "parameters": [{"name": "a"}, {"name": "b"}],
    "variable": "x",
    "contour_variables": ["s"],
    "factors": [
        {"type": "gamma", "argument": "s - a", "position": "num"},
        {"type": "gamma", "argument": "b - s", "position": "num"},
        {"type": "power", "base": "x", "exponent": "-s"},
    ],
    "expected": "binomial_plus",
    "verify": {
        "route": "mellin_roundtrip",
        "assignments": {"a": "1/5", "b": "17/10"},
        "s_samples": ["1/2", "7/10", "9/10", "11/10", "7/5"],
        "tol": 1e-9,
    },
}

DEFS["binomial-minus"] = {
    "id": "binomial-minus",
    "title": "inverse Mellin of Gamma(s-a)/Gamma(s-b): finite binomial kernel",
    "kind": "InverseMellin",
    "parameters": [{"name": "a"}, {"name": "b"}],
    "variable": "x",
    "contour_variables": ["s"],
    "factors": [
        {"type": "gamma", "argument": "s - a", "position": "num"},
        {"type": "gamma", "argument": "s - b", "position": "den"},
        {"type": "power", "base": "x", "exponent": "-s"},
    ],
    "expected": "binomial_minus",
    "verify": {
        "route": "special",
        "assignments": {"a": "9/10", "b": "1/5"},
        "samples": [{"x": 0.2}, {"x": 0.45}, {"x": 0.8}],
        "tol": 1e-9,
    },
}

DEFS["bessel-j"] = {
    "id": "bessel-j",
    "title": "inverse Mellin of Gamma(s-a)/Gamma(b-s): Bessel J of 2 sqrt(x)",
    "kind": "InverseMellin",
    "parameters": [{"name": "a"}, {"name": "b"}],
    "variable": "x",
    "contour_variables": ["s"],
    "factors": [
        {"type": "gamma", "argument": "s - a", "position": "num"},
        {"type": "gamma", "argument": "b - s", "position": "den"},
        {"type": "power", "base": "x", "exponent": "-s"},
    ],
    "expected": "bessel_j56",
    "verify": {
        "route": "special",
        "assignments": {"a": "3/10", "b": "9/5"},
        "samples": [{"x": 0.4}, {"x": 1.0}, {"x": 2.3}],
        "tol": 1e-9,
    },
}

DEFS["bessel-j-recip"] = {
    "id": "bessel-j-recip",
    "title": "inverse Mellin of Gamma(a-s)/Gamma(s-b): Bessel J of 2/sqrt(x)",
    "kind": "InverseMellin",
    "parameters": [{"name": "a"}, {"name": "b"}],
    "variable": "x",
    "contour_variables": ["s"],
    "factors": [
        {"type": "gamma", "argument": "a - s", "position": "num"},
        {"type": "gamma", "argument": "s - b", "position": "den"},
        {"type": "power", "base": "x", "exponent": "-s"},
    ],
    "expected": "bessel_j57",
    "verify": {
        "route": "special",
        "assignments": {"a": "9/5", "b": "3/10"},
        "samples": [{"x": 0.5}, {"x": 1.2}, {"x": 3.0}],
        "tol": 1e-9,
    },
}

DEFS["mittag-leffler"] = {
    "id": "mittag-leffler",
    "title": "inverse Mellin of Gamma(s)Gamma(1-s)/Gamma(beta-alpha s)",
    "kind": "InverseMellin",
    "parameters": [{"name": "alpha", "generic_hint": "0 < alpha < 1"},
                    {"name": "beta"}],
    "variable": "x",
    "contour_variables": ["s"],
    "factors": [
        {"type": "gamma", "argument": "s", "position": "num"},
        {"type": "gamma", "argument": "1 - s", "position": "num"},
        {"type": "gamma", "argument": "beta - alpha*s", "position": "den"},
        {"type": "power", "base": "x", "exponent": "-s"},
    ],
    "expected": "mittag_leffler",
    "verify": {
        "route": "quad_contour",
        "assignments": {"alpha": "3/5", "beta": "13/10"},
        "samples": [{"x": 0.5}, {"x": 3.0}],
        "tol": 1e-8,
    },
}

DEFS["k-moment"] = {
    "id": "k-moment",
    "title": "moment of a Bessel-K product: four-gamma evaluation",
    "kind": "DirectMellin",
    "parameters": [{"name": "alpha"}, {"name": "mu"}, {"name": "nu"}],
    "integration_variables": ["x"],
    "measures": {"x": "alpha - 1"},
    "factors": [
        {"type": "function", "id": "BesselKProduct", "parameters": ["mu", "nu"],
         "argument": {"symbols": {"x": "1"}}},
    ],
    "expected": "k_moment",
    "verify": {
        "route": "quad_halfline",
        "assignments": {"alpha": "11/5", "mu": "3/10", "nu": "1/10"},
        "samples": [{}],
        "tol": 1e-8,
    },
}

DEFS["k0-squared"] = {
    "id": "k0-squared",
    "title": "special K-product moment at order zero",
    "kind": "DirectMellin",
    "parameters": [{"name": "a"}, {"name": "mu"}, {"name": "nu"}],
    "integration_variables": ["x"],
    "measures": {"x": "2*a - 1"},
    "factors": [
        {"type": "function", "id": "BesselKProduct", "parameters": ["mu", "nu"],
         "argument": {"symbols": {"x": "1"}}},
    ],
    "verify": {
        "route": "quad_halfline",
        "assignments": {"a": "1/2", "mu": 0, "nu": 0},
        "samples": [{}],
        "tol": 1e-10,
    },
}

DEFS["k0-cubed"] = {
    "id": "k0-cubed",
    "title": "triple Bessel-K integral via one product and one plain factor",
    "kind": "HalfLineIntegral",
    "parameters": [{"name": "mu"}, {"name": "nu"}, {"name": "alpha"},
                    {"name": "a", "generic_hint": "scale > 0"},
                    {"name": "b", "generic_hint": "scale > 0"}],
    "integration_variables": ["x"],
    "measures": {"x": 0},
    "factors": [
        {"type": "function", "id": "BesselKProduct", "parameters": ["mu", "nu"],
         "argument": {"symbols": {"a": "1", "x": "1"}}},
        {"type": "function", "id": "BesselK", "parameters": ["alpha"],
         "argument": {"symbols": {"b": "1", "x": "1"}}},
    ],
    "verify": {
        "route": "quad_halfline",
        "assignments": {"mu": "3/10", "nu": "3/20", "alpha": "1/5",
                         "a": 1, "b": 3},
        "samples": [{}, {"b": 1}],
        "tol": 1e-8,
    },
}

DEFS["k0-fourth"] = {
    "id": "k0-fourth",
    "title": "quadruple Bessel-K0 integral via the regulated limit expression",
    "kind": "HalfLineIntegral",
    "parameters": [],
    "integration_variables": ["x"],
    "measures": {"x": 0},
    "factors": [
        {"type": "function", "id": "BesselKProduct", "parameters": ["0", "0"],
         "argument": {"symbols": {"x": "1"}}},
        {"type": "function", "id": "BesselKProduct", "parameters": ["0", "0"],
         "argument": {"symbols": {"x": "1"}}},
    ],
    "verify": {
        "route": "eps_limit_vs_quad",
        "assignments": {},
        "tol": 1e-5,
        "eps": {"eps0": 0.04, "ratio": 0.7071067811865476, "points": 6, "power": 2},
    },
}

DEFS["gr-6.532.4"] = {
    "id": "gr-6.532.4",
    "title": "x J0(Ax)/(x^2+k^2) moment collapsing to K0(Ak)",
    "kind": "HalfLineIntegral",
    "parameters": [{"name": "A"}, {"name": "k"}],
    "integration_variables": ["x"],
    "measures": {"x": 1},
    "method": "product_transform",
    "factors": [
        {"type": "function", "id": "PowerOfSum", "exponent": "-1",
         "terms": [{"symbols": {"x": "2"}}, {"symbols": {"k": "2"}}]},
        {"type": "function", "id": "BesselJ", "parameters": ["0"],
         "argument": {"symbols": {"A": "1", "x": "1"}}},
    ],
    "expected": "k0_Ak",
    "verify": {
        "route": "quad_contour",
        "assignments": {"A": "6/5", "k": "4/5"},
        "samples": [{}],
        "tol": 1e-8,
    },
}

DEFS["gr-6.521.2"] = {
    "id": "gr-6.521.2",
    "title": "x K_nu(ax) J_nu(bx) moment: rational closed form",
    "kind": "HalfLineIntegral",
    "parameters": [{"name": "a"}, {"name": "b"}, {"name": "nu"}],
    "integration_variables": ["x"],
    "measures": {"x": 1},
    "factors": [
        {"type": "function", "id": "BesselK", "parameters": ["nu"],
         "argument": {"symbols": {"a": "1", "x": "1"}}},
        {"type": "function", "id": "BesselJ", "parameters": ["nu"],
         "argument": {"symbols": {"b": "1", "x": "1"}}},
    ],
    "expected": "gr65212",
    "verify": {
        "route": "quad_halfline",
        "assignments": {"a": "11/10", "b": "2/5", "nu": "1/4"},
        "samples": [{}],
        "tol": 1e-9,
    },
}

DEFS["gr-6.611.3"] = {
    "id": "gr-6.611.3",
    "title": "exp(-x) K_nu(bx) integral: algebraic closed form",
    "kind": "HalfLineIntegral",
    "parameters": [{"name": "b"}, {"name": "nu"}],
    "integration_variables": ["x"],
    "measures": {"x": 0},
    "factors": [
        {"type": "function", "id": "Exp",
         "argument": {"sign": -1, "symbols": {"x": "1"}}},
        {"type": "function", "id": "BesselK", "parameters": ["nu"],
         "argument": {"symbols": {"b": "1", "x": "1"}}},
    ],
    "expected": "gr66113",
    "verify": {
        "route": "quad_halfline",
        "assignments": {"b": "3/5", "nu": "3/10"},
        "samples": [{}],
        "tol": 1e-8,
    },
}

DEFS["j2d-ei-k0"] = {
    "id": "j2d-ei-k0",
    "title": "two-dimensional Ei/K0 integral with a formal series factor",
    "kind": "MultiDim",
    "parameters": [{"name": "a"}, {"name": "b"}],
    "integration_variables": ["x", "y"],
    "measures": {"x": "a - 1", "y": "b - 1"},
    "factors": [
        {"type": "function", "id": "Ei",
         "argument": {"sign": -1, "symbols": {"x": "2", "y": "1"}}},
        {"type": "function", "id": "BesselK", "parameters": ["0"],
         "argument": {"symbols": {"x": "1", "y": "-1"}}},
    ],
    "expected": "j2d",
    "verify": {
        "route": "quad_halfline_2d",
        "assignments": {"a": 2, "b": "7/10"},
        "samples": [{}],
        "tol": 1e-5,
    },
}

DEFS["feynman-bubble"] = {
    "id": "feynman-bubble",
    "title": "equal-mass one-loop bubble: reduced Barnes integral",
    "kind": "InverseMellin",
    "parameters": [{"name": "al"}, {"name": "be"}, {"name": "D"},
                    {"name": "m2"}, {"name": "p2"}],
    "contour_variables": ["u"],
    "factors": [
        {"type": "gamma", "argument": "-u", "position": "num"},
        {"type": "gamma", "argument": "al + u", "position": "num"},
        {"type": "gamma", "argument": "be + u", "position": "num"},
        {"type": "gamma", "argument": "al + be - D/2 + u", "position": "num"},
        {"type": "gamma", "argument": "al + be + 2*u", "position": "den"},
        {"type": "power", "base": {"sign": -1, "symbols": {"p2": "1", "m2": "-1"}},
         "exponent": "u"},
    ],
    "verify": {
        "route": "quad_contour",
        "assignments": {"al": "13/10", "be": "11/10", "D": 3, "m2": 1, "p2": "4/5"},
        "samples": [{}, {"p2": 20}],
        "tol": 1e-6,
    },
}

_flex_exp_series = {"type": "function", "id": "Exp",
                    "argument": {"sign": -1, "symbols": {"a": "2", "x": "2"}}}
_flex_exp_contour = dict(_flex_exp_series, representation="contour")
_flex_pos_series = {"type": "function", "id": "PowerOfSum", "exponent": "-1",
                    "terms": [{"symbols": {"x": "2"}}, {"symbols": {"b": "2"}}]}
_flex_pos_contour = dict(_flex_pos_series, representation="contour")

DEFS["flex"] = {
    "id": "flex",
    "title": "Gaussian over a quadratic: four independent bracket routes",
    "kind": "HalfLineIntegral",
    "parameters": [{"name": "a"}, {"name": "b"}],
    "integration_variables": ["x"],
    "measures": {"x": 0},
    "methods": [
        [_flex_exp_series, _flex_pos_series],
        [_flex_exp_contour, _flex_pos_contour],
        [_flex_pos_series, _flex_exp_contour],
        [_flex_pos_contour, _flex_exp_series],
    ],
    "expected": "flex_3466",
    "verify": {
        "route": "quad_halfline",
        "assignments": {"a": "9/10", "b": "3/5"},
        "samples": [{}],
        "tol": 1e-9,
    },
}

OUT.mkdir(parents=True, exist_ok=True)
for pid, doc in DEFS.items():
    path = OUT / f"{pid}.json"
    path.write_text(json.dumps(doc, indent=2) + "\n")
    print("wrote", path.name)
