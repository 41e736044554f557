"""Closed-form expression trees.

A tree is a JSON value:

* an integer, or a string holding a rational (``"3/4"``) or decimal;
* a constant name: ``"pi"``, ``"varpi"``, ``"varpi_tilde"``, ``"i"``,
  ``"rho"``, ``"sqrt3"``;
* a list ``[operator, operand, ...]`` with operators ``add``, ``sub``,
  ``mul``, ``div``, ``neg``, ``pow`` (integer or rational exponent),
  ``sqrt``, ``exp``, ``zeta`` (positive even integer argument) and
  ``series`` (``["series", op_name, {params}]``, a named numeric series).

Exact rational sub-trees stay exact until they meet a transcendental.
"""
from __future__ import annotations

from fractions import Fraction

from ..mpcore import DomainError, PrecCtx, zeta_even

__all__ = ["SchemaError", "eval_expr", "evaluate", "constants_used"]

CONSTANTS = ("pi", "varpi", "varpi_tilde", "i", "rho", "sqrt3")
OPERATORS = ("add", "sub", "mul", "div", "neg", "pow", "sqrt", "exp", "zeta", "series")


class SchemaError(DomainError):
    """A malformed expression tree or catalog entry."""


def _rational(text: str):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        return None


def _num(v, mp):
    if isinstance(v, Fraction):
        return mp.mpf(v.numerator) / v.denominator
    return v


def _constant(name: str, ctx: PrecCtx):
    mp = ctx.mp
    if name == "pi":
        return +mp.pi
    if name in ("varpi", "varpi_tilde"):
        from ..hurwitz import lemniscate_constants

        vp, vt = lemniscate_constants(ctx)
        return vp if name == "varpi" else vt
    if name == "i":
        return mp.mpc(0, 1)
    if name == "rho":
        return mp.expjpi(mp.mpf(2) / 3)
    if name == "sqrt3":
        return mp.sqrt(3)
    raise SchemaError(f"unknown constant {name!r}")


def evaluate(tree, ctx: PrecCtx):
    """Evaluate ``tree``; exact rationals come back as :class:`Fraction`."""
    mp = ctx.mp
    if isinstance(tree, bool):
        raise SchemaError("booleans are not expressions")
    if isinstance(tree, int):
        return Fraction(tree)
    if isinstance(tree, float):
        return mp.mpf(tree)
    if isinstance(tree, str):
        if tree in CONSTANTS:
            return _constant(tree, ctx)
        q = _rational(tree)
        if q is not None:
            return q
        raise SchemaError(f"cannot read {tree!r} as a number or constant")
    if not isinstance(tree, list) or not tree or not isinstance(tree[0], str):
        raise SchemaError(f"malformed expression {tree!r}")
    op, args = tree[0], tree[1:]
    if op == "series":
        if len(args) != 2 or not isinstance(args[0], str) or not isinstance(args[1], dict):
            raise SchemaError("series node needs a name and a parameter object")
        from .ops import call

        return call(args[0], evaluate_params(args[1], ctx), ctx)
    vals = [evaluate(a, ctx) for a in args]
    exact = all(isinstance(v, Fraction) for v in vals)
    if op == "add":
        return sum(vals, Fraction(0)) if exact else mp.fsum(_num(v, mp) for v in vals)
    if op == "mul":
        if not vals:
            raise SchemaError("mul needs operands")
        acc = vals[0]
        for v in vals[1:]:
            acc = acc * v if exact else _num(acc, mp) * _num(v, mp)
        return acc
    _arity(op, vals)
    if op == "sub":
        return vals[0] - vals[1] if exact else _num(vals[0], mp) - _num(vals[1], mp)
    if op == "div":
        if vals[1] == 0:
            raise SchemaError("division by zero in expression")
        return vals[0] / vals[1] if exact else _num(vals[0], mp) / _num(vals[1], mp)
    if op == "neg":
        return -vals[0]
    if op == "pow":
        base, e = vals
        if not isinstance(e, Fraction):
            raise SchemaError("exponents must be rational")
        if e.denominator == 1:
            return base ** int(e) if isinstance(base, Fraction) else _num(base, mp) ** int(e)
        return _num(base, mp) ** _num(e, mp)
    if op == "sqrt":
        return mp.sqrt(_num(vals[0], mp))
    if op == "exp":
        return mp.exp(_num(vals[0], mp))
    if op == "zeta":
        n = vals[0]
        if not isinstance(n, Fraction) or n.denominator != 1:
            raise SchemaError("zeta needs an integer argument")
        return zeta_even(int(n)).evaluate(ctx)
    raise SchemaError(f"unknown operator {op!r}")


_ARITY = {"sub": 2, "div": 2, "neg": 1, "pow": 2, "sqrt": 1, "exp": 1, "zeta": 1}


def _arity(op, vals):
    want = _ARITY.get(op)
    if want is None:
        raise SchemaError(f"unknown operator {op!r}")
    if len(vals) != want:
        raise SchemaError(f"{op} takes {want} operand(s), got {len(vals)}")


def evaluate_params(params: dict, ctx: PrecCtx) -> dict:
    """Evaluate every value of a parameter object, keeping plain words and booleans."""
    out = {}
    for key, val in params.items():
        if isinstance(val, bool):
            out[key] = val
        elif isinstance(val, list) and val and not isinstance(val[0], str):
            out[key] = [evaluate(v, ctx) for v in val]
        elif isinstance(val, str) and val not in CONSTANTS and _rational(val) is None:
            out[key] = val  # a keyword such as an order or variant name
        else:
            out[key] = evaluate(val, ctx)
    return out


def eval_expr(tree, ctx: PrecCtx):
    """Evaluate an expression tree to a complex number of ``ctx``.

    Parameters
    ----------
    tree : int, str or list
        Expression in the nested-array form described in the module docstring.
    ctx : PrecCtx
        Precision context; constants are produced at its working precision.

    Returns
    -------
    mpc
        The value of the tree.

    Raises
    ------
    SchemaError
        If the tree is malformed.
    """
    v = evaluate(tree, ctx)
    return ctx.mp.mpc(_num(v, ctx.mp))


def constants_used(tree) -> set[str]:
    """Constant names and series names referenced anywhere in ``tree``."""
    found: set[str] = set()

    def walk(node):
        if isinstance(node, str):
            if node in CONSTANTS:
                found.add(node)
        elif isinstance(node, list) and node:
            if node[0] == "series" and len(node) >= 3:
                found.add("series:" + str(node[1]))
                walk_params(node[2])
                return
            for child in node[1:]:
                walk(child)

    def walk_params(params):
        if isinstance(params, dict):
            for v in params.values():
                if isinstance(v, list) and v and not isinstance(v[0], str):
                    for x in v:
                        walk(x)
                else:
                    walk(v)

    walk(tree)
    return found
