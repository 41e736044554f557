"""Named series evaluators shared by the catalog and the command line.

Each entry records the callable and its parameters, so that a series can be
requested as ``{"op": name, "params": {...}}`` with parameters given as
numbers, rational strings or expression trees.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .. import hurwitz, hyper, lattice
from ..lattice import LatticeSpec, SummationOrder
from ..mpcore import DomainError, PrecCtx

__all__ = ["Param", "Op", "OPS", "lookup", "call"]


@dataclass(frozen=True)
class Param:
    name: str
    kind: str  # complex | real | int | order | bool | str | list
    default: object = None
    required: bool = True


@dataclass(frozen=True)
class Op:
    name: str
    func: Callable
    params: tuple[Param, ...]
    doc: str = ""


def _p(name, kind, default=None):
    return Param(name, kind, default, required=default is None)


def _g_script(k, r, x, y, z, omega1, omega2, order, method, ctx):
    return hyper.g_script(k, r, x, y, z, LatticeSpec(omega1, omega2), order, ctx, method=method)


def _katayama(j, x, y, omega1, omega2, order, ctx):
    return lattice.katayama_sum(j, x, y, LatticeSpec(omega1, omega2), order, ctx)


def _g1_reciprocity(tau, ctx):
    """``G_1(tau) + G_1(-1/tau)`` with ``G_1 = g_script(1, 1, 0, 0, 1/2; 1, tau)``."""
    mp = ctx.mp
    t = mp.mpc(tau) if not isinstance(tau, Fraction) else mp.mpc(mp.mpf(tau.numerator) / tau.denominator)
    half = Fraction(1, 2)
    a = hyper.g_script(1, 1, 0, 0, half, LatticeSpec(1, t), SummationOrder.M_FIRST_THEN_N, ctx)
    b = hyper.g_script(1, 1, 0, 0, half, LatticeSpec(1, -1 / t), SummationOrder.M_FIRST_THEN_N, ctx)
    return a + b


def _eisenstein(weight, tau, variant, method, ctx):
    return lattice.eisenstein_G(weight, tau, ctx, variant=variant, method=method)


def _sinh_products(s, args, alternating, ctx):
    return hyper.sinh_product_sum(s, args, ctx, alternating=alternating)


def _gen_hurwitz(l, x, y, omega1, omega2, ctx):
    return hurwitz.gen_hurwitz(l, x, y, LatticeSpec(omega1, omega2), ctx)


def _k_closed(k, r, x, y, z, omega1, omega2, ctx):
    return hurwitz.k_closed(k, r, x, y, z, LatticeSpec(omega1, omega2), ctx)


def _k_residue(k, r, x, y, z, omega1, omega2, ctx):
    return hurwitz.k_residue(k, r, x, y, z, LatticeSpec(omega1, omega2), ctx)


def _g_via_k(k, r, x, y, z, omega1, omega2, ctx):
    lat = LatticeSpec(omega1, omega2)
    return hurwitz.g_from_k(k, r, hurwitz.k_closed(k, r, x, y, z, lat, ctx), lat, ctx)


_LAT = (_p("omega1", "complex", 1), _p("omega2", "complex", "i"))
_ORDER = _p("order", "order", "m-first")

_OPS = [
    Op("S1", hyper.s1, (_p("s", "complex"), _p("tau", "complex"))),
    Op("S1_deriv", hyper.s1_deriv, (_p("s", "complex"), _p("tau", "complex"))),
    Op("C1", hyper.c1, (_p("s", "complex"), _p("tau", "complex"))),
    Op("S2", hyper.s2_series, (_p("s", "complex"), _p("tau", "complex"))),
    Op("C2", hyper.c2_series, (_p("s", "complex"), _p("tau", "complex"))),
    Op("gfrak2", hyper.gfrak2, (_p("s", "int"), _p("k", "int"), _p("tau", "complex"))),
    Op("gfrak2_rhs", hyper.gfrak2_rhs, (_p("s", "int"), _p("k", "int"), _p("tau", "complex"))),
    Op(
        "G_script",
        _g_script,
        (_p("k", "int"), _p("r", "int"), _p("x", "real", 0), _p("y", "real", 0), _p("z", "real"))
        + _LAT
        + (_ORDER, _p("method", "str", "closed")),
    ),
    Op("G1_reciprocity", _g1_reciprocity, (_p("tau", "complex"),)),
    Op("mellin_lhs", hyper.mellin_lhs, (_p("n", "int"), _p("p", "int"), _p("y", "real"))),
    Op("mellin_rhs", hyper.mellin_rhs, (_p("n", "int"), _p("p", "int"), _p("y", "real"))),
    Op(
        "sinh_product_sum",
        _sinh_products,
        (_p("s", "complex"), _p("args", "list"), _p("alternating", "bool", False)),
    ),
    Op("coth_power_sum", hyper.coth_power_sum, (_p("s", "int"), _p("w", "complex"), _p("power", "int"))),
    Op("sinh_power_sum", hyper.sinh_power_sum, (_p("k", "int"),)),
    Op("prop_p_zeta_rhs", hyper.prop_p_zeta_rhs, (_p("k", "int"),)),
    Op("lemma_l1_sum", hyper.lemma_l1_sum, (_p("k", "int"), _p("q", "complex"))),
    Op("zeta_q", hyper.zeta_q, (_p("s", "complex"), _p("q", "complex"))),
    Op("f_q", hyper.f_q, (_p("s", "complex"), _p("t", "complex"), _p("q", "complex"))),
    Op(
        "eisenstein_G",
        _eisenstein,
        (_p("weight", "int"), _p("tau", "complex"), _p("variant", "str", "full"), _p("method", "str", "qseries")),
    ),
    Op("Z2", lattice.z2_series, (_p("s1", "int"), _p("s2", "int"), _p("tau", "complex"))),
    Op("katayama", _katayama, (_p("j", "int"), _p("x", "real"), _p("y", "real")) + _LAT + (_ORDER,)),
    Op("barnes_zeta2", lattice.barnes_zeta2, (_p("s", "complex"), _p("y", "real"), _p("tau", "complex"))),
    Op("gen_hurwitz", _gen_hurwitz, (_p("l", "int"), _p("x", "real"), _p("y", "real")) + _LAT),
    Op("K_closed", _k_closed, (_p("k", "int"), _p("r", "int"), _p("x", "real", 0), _p("y", "real", 0), _p("z", "real")) + _LAT),
    Op("K_residue", _k_residue, (_p("k", "int"), _p("r", "int"), _p("x", "real", 0), _p("y", "real", 0), _p("z", "real")) + _LAT),
    Op("G_via_K", _g_via_k, (_p("k", "int"), _p("r", "int"), _p("x", "real", 0), _p("y", "real", 0), _p("z", "real")) + _LAT),
]

OPS: dict[str, Op] = {op.name: op for op in _OPS}
_FOLDED = {name.lower(): name for name in OPS}


def lookup(name: str) -> Op:
    op = OPS.get(name) or OPS.get(_FOLDED.get(name.lower(), ""))
    if op is None:
        raise KeyError(f"unknown series {name!r}; known: {', '.join(sorted(OPS))}")
    return op


def _coerce(param: Param, value, ctx: PrecCtx):
    kind = param.kind
    if kind == "int":
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise DomainError(f"{param.name} must be an integer")
            return int(value)
        if isinstance(value, bool) or int(value) != value:
            raise DomainError(f"{param.name} must be an integer")
        return int(value)
    if kind == "order":
        return SummationOrder.parse(value)
    if kind == "bool":
        if isinstance(value, str):
            return value.lower() in ("1", "true", "yes")
        return bool(value)
    if kind == "real":
        if not isinstance(value, (int, Fraction, str)):
            v = ctx.mp.mpc(value)
            if v.imag != 0:
                raise DomainError(f"{param.name} must be real")
            return v.real
    return value


def call(name: str, params: dict, ctx: PrecCtx):
    """Evaluate series ``name`` with already-evaluated ``params``."""
    op = lookup(name)
    known = {p.name for p in op.params}
    extra = set(params) - known
    if extra:
        raise DomainError(f"{op.name}: unknown parameter(s) {', '.join(sorted(extra))}")
    args = []
    for p in op.params:
        if p.name in params:
            args.append(_coerce(p, params[p.name], ctx))
        elif p.required:
            raise DomainError(f"{op.name}: missing parameter {p.name}")
        else:
            args.append(_coerce(p, p.default, ctx))
    return op.func(*args, ctx=ctx)
