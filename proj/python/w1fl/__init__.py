"""Solution paths of the weighted 1-D fused lasso.

Rational results come back as fractions.Fraction; float results as float.
Inputs may be numbers, Fractions or "p/q" strings.
"""

from fractions import Fraction

from . import _core
from ._core import InvalidInput, NumericalFailure

__all__ = [
    "InvalidInput",
    "NumericalFailure",
    "convert",
    "gen_1fl",
    "gen_random",
    "gen_worst_case",
    "solve",
    "solve_path",
    "verify",
]


def _arg(v):
    return str(v) if isinstance(v, Fraction) else v


def _args(seq):
    return [_arg(v) for v in seq]


def _out(v):
    return Fraction(v) if isinstance(v, str) else v


def solve_path(y, alpha, backend="f64"):
    """Event log [(gamma, index, kind, sign)] plus fuse/unfuse/segment counts."""
    res = _core.solve_path(_args(y), _args(alpha), backend)
    res["events"] = [(_out(g), i, k, s) for g, i, k, s in res["events"]]
    return res


def solve(y, alpha, gamma, method="path", backend="f64"):
    """x*(gamma); method is 'path', 'dp' or 'qp'."""
    return [_out(v) for v in _core.solve(_args(y), _args(alpha), _arg(gamma), method, backend)]


def verify(y, alpha, samples=4, backend="f64"):
    """Optimality and oracle checks of the solved path."""
    return _core.verify(_args(y), _args(alpha), samples, backend)


def convert(y, alpha, value, to, backend="f64"):
    """to='penalized' maps a constraint level to gamma; 'constrained' the reverse."""
    return _out(_core.convert(_args(y), _args(alpha), _arg(value), to, backend))


def gen_worst_case(n):
    y, alpha = _core.gen_worst_case(n)
    return [Fraction(v) for v in y], [Fraction(v) for v in alpha]


def gen_random(n, seed=0):
    return _core.gen_random(n, seed)


def gen_1fl(n, seed=0):
    return _core.gen_1fl(n, seed)
