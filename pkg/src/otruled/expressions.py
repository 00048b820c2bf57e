"""Small sympy bridge for user-supplied scalar expressions of one variable."""

import sympy as sp

from .errors import ConfigParseError

_ALLOWED_FUNCS = {sp.sin, sp.cos, sp.tan, sp.sqrt, sp.exp}
_LOCALS = {"sin": sp.sin, "cos": sp.cos, "tan": sp.tan, "sqrt": sp.sqrt,
           "exp": sp.exp, "pi": sp.pi}


def parse_scalar_function(text, var="s", n_derivs=3):
    """Compile an expression string into (f, f', ..., f^(n)) numpy callables.

    Only sin, cos, tan, sqrt, exp, pi, powers and arithmetic in a single
    variable are accepted.
    """
    x = sp.Symbol(var)
    try:
        expr = sp.sympify(text, locals=dict(_LOCALS))
    except (sp.SympifyError, SyntaxError, TypeError) as exc:
        raise ConfigParseError("cannot parse expression %r: %s" % (text, exc))
    bad = {f.func for f in expr.atoms(sp.Function)} - {f for f in _ALLOWED_FUNCS}
    if bad:
        raise ConfigParseError("disallowed functions in %r: %s" % (text, sorted(str(b) for b in bad)))
    extra = expr.free_symbols - {x}
    if extra:
        raise ConfigParseError("unknown symbols in %r: %s" % (text, sorted(str(e) for e in extra)))
    out = []
    d = expr
    for _ in range(n_derivs + 1):
        out.append(sp.lambdify(x, d, modules="numpy"))
        d = sp.diff(d, x)
    return tuple(out)
