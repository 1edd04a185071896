"""Random test data shared by the test modules.

Everything here is built from plain numbers and expression strings so it
stays independent of the code under test.
"""

import re

import mpmath
import numpy as np
import sympy as sp


def cnum(c: complex) -> str:
    """Expression literal for a complex constant."""
    c = complex(c)
    return f"({c.real!r}+{c.imag!r}i)"


def rand_complex(rng, scale=1.0):
    return complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale))


COMPONENT_TEMPLATES = (
    "{a}*z + {b}*z^2 + {c}*exp({d}*z)",
    "sin({a}*z) + {b}*z^3 + {c}*z",
    "{a}*cos({d}*z) + {b}*z^2 + z",
    "exp({d}*z) + {a}*z^2 - {b}*z^3",
    "({a}*z + {b}*z^2)/(2 + {c}*z)",
    "{a}*z^4 + sin({d}*z) + {b}*z",
)


def random_component(rng, template=None):
    t = template or COMPONENT_TEMPLATES[rng.integers(len(COMPONENT_TEMPLATES))]
    vals = {k: cnum(rand_complex(rng)) for k in "abc"}
    vals["d"] = cnum(rand_complex(rng, 1.5))
    return t.format(**vals)


def random_curve_strings(rng, n):
    return [random_component(rng) for _ in range(n)]


def random_polynomial_string(rng, degree):
    terms = [f"{cnum(rand_complex(rng))}*z^{k}" for k in range(1, degree + 1)]
    return cnum(rand_complex(rng)) + " + " + " + ".join(terms)


def random_coordinate_change(rng):
    """z(w) with z'(w) near 1 on |w| <= 0.3."""
    a = 1.0 + rand_complex(rng, 0.3)
    b, c, d = rand_complex(rng, 0.4), rand_complex(rng, 0.3), rand_complex(rng, 0.5)
    z0 = rand_complex(rng, 0.3)
    return f"{cnum(z0)} + {cnum(a)}*z + {cnum(b)}*z^2 + {cnum(c)}*sin({cnum(d)}*z)"


# symbolic differentiation oracle ------------------------------------------------
#
# Each template is differentiated once with its coefficients kept symbolic;
# random instances then only substitute numbers, evaluated at 30 digits.

Z = sp.Symbol("z")

_POLY = "c0 + c1*z + c2*z^2 + c3*z^3"
ORACLE_TEMPLATES = {
    "polynomial": [_POLY + f" + c4*z^{k}" for k in range(4, 8)],
    "rational": [
        f"({_POLY})/(3 + c4*z + c5*z^2)",
        "(c0 + c1*z)/(2 + c2*z)^2",
        "c0/(3 + c1*z^3) - c2*z",
    ],
    "trig": [
        "sin(c0*z) + c1*cos(c2*z^2)",
        "exp(c0*z)*cos(c1*z)",
        "c0*exp(sin(c1*z)) - z^2",
        "sqrt(4 + c0*z)*sin(z)",
    ],
}
_CACHE = {}


def _compiled(template, K):
    key = (template, K)
    if key not in _CACHE:
        names = sorted(set(re.findall(r"c\d", template)))
        syms = [sp.Symbol(n) for n in names]
        f = sp.sympify(template.replace("^", "**"), locals={"z": Z, **dict(zip(names, syms))})
        ds = [f]
        for _ in range(K):
            ds.append(sp.diff(ds[-1], Z))
        _CACHE[key] = (names, sp.lambdify([Z] + syms, ds, "mpmath"))
    return _CACHE[key]


def random_oracle_case(rng, kind):
    """A random expression string and its coefficient values."""
    templates = ORACLE_TEMPLATES[kind]
    template = templates[rng.integers(len(templates))]
    names = sorted(set(re.findall(r"c\d", template)))
    values = {n: rand_complex(rng, 0.5 if kind == "rational" and n in ("c4", "c5") else 1.0) for n in names}
    text = re.sub(r"c\d", lambda m: cnum(values[m.group(0)]), template)
    return template, values, text


def symbolic_derivatives(template, values, a, K):
    """[f(a), f'(a), ..., f^(K)(a)] by symbolic differentiation."""
    names, fn = _compiled(template, K)
    with mpmath.workdps(30):
        args = [mpmath.mpc(complex(a).real, complex(a).imag)]
        args += [mpmath.mpc(values[n].real, values[n].imag) for n in names]
        return np.array([complex(v) for v in fn(*args)])
