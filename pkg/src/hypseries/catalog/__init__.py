"""Identity catalog and verification engine.

Identities live in ``identities.json`` next to this module (or in the file
named by ``HYPSERIES_CATALOG``).  Each entry pairs a numeric series (the
left side) with a closed-form expression tree (the right side); see
:mod:`hypseries.catalog.expr` for the tree syntax.
"""
from __future__ import annotations

import inspect
import json
import os
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from types import CodeType, FunctionType

from ..mpcore import HypseriesError, PrecCtx
from .expr import SchemaError, constants_used, eval_expr, evaluate_params
from .ops import OPS, call, lookup

__all__ = [
    "Identity",
    "VerificationReport",
    "NotFoundError",
    "SchemaError",
    "load_catalog",
    "get_identity",
    "eval_expr",
    "verify_identity",
    "verify_all",
    "audit_independence",
    "format_number",
    "CATALOG_ENV",
]

CATALOG_ENV = "HYPSERIES_CATALOG"
_DEFAULT_PATH = Path(__file__).with_name("identities.json")
_LEMNISCATE = {"varpi", "varpi_tilde"}


class NotFoundError(HypseriesError, KeyError):
    """No identity with the requested id."""

    def __str__(self):
        return str(self.args[0]) if self.args else "identity not found"


@dataclass(frozen=True)
class Identity:
    id: str
    description: str
    lhs_op: str
    lhs_params: dict
    rhs: object
    min_digits: int = 20
    tags: tuple[str, ...] = ()
    note: str | None = None

    @property
    def effective_min_digits(self) -> int:
        """``min_digits``, raised to 30 when the right side uses a lemniscate constant."""
        if constants_used(self.rhs) & _LEMNISCATE:
            return max(self.min_digits, 30)
        return self.min_digits


@dataclass
class VerificationReport:
    id: str
    digits: int
    lhs_value: str
    rhs_value: str
    abs_err: str
    passed: bool
    elapsed: float
    error: str | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        if d["error"] is None:
            del d["error"]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _parse_entry(raw: dict) -> Identity:
    try:
        lhs = raw["lhs"]
        ident = Identity(
            id=str(raw["id"]),
            description=str(raw.get("description", "")),
            lhs_op=str(lhs["op"]),
            lhs_params=dict(lhs.get("params", {})),
            rhs=raw["rhs"],
            min_digits=int(raw.get("min_digits", 20)),
            tags=tuple(raw.get("tags", ())),
            note=raw.get("note"),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed catalog entry {raw!r}: {exc}") from None
    if ident.lhs_op not in OPS:
        raise SchemaError(f"{ident.id}: unknown series {ident.lhs_op!r}")
    return ident


_cache_lock = threading.Lock()
_cache: dict[tuple[str, float], dict[str, Identity]] = {}


def load_catalog(path: str | os.PathLike | None = None) -> dict[str, Identity]:
    """Identities keyed by id, from ``path``, ``$HYPSERIES_CATALOG`` or the shipped file."""
    p = Path(path or os.environ.get(CATALOG_ENV) or _DEFAULT_PATH)
    try:
        stamp = p.stat().st_mtime
    except OSError as exc:
        raise SchemaError(f"cannot read catalog {p}: {exc}") from None
    key = (str(p.resolve()), stamp)
    hit = _cache.get(key)
    if hit is not None:
        return hit
    try:
        data = json.loads(p.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read catalog {p}: {exc}") from None
    entries = data.get("identities") if isinstance(data, dict) else data
    if not isinstance(entries, list):
        raise SchemaError("catalog must hold a list of identities")
    out: dict[str, Identity] = {}
    for raw in entries:
        ident = _parse_entry(raw)
        if ident.id in out:
            raise SchemaError(f"duplicate identity id {ident.id!r}")
        out[ident.id] = ident
    result = dict(sorted(out.items()))
    with _cache_lock:
        _cache[key] = result
    return result


def get_identity(ident_id: str, catalog: dict | None = None) -> Identity:
    cat = catalog if catalog is not None else load_catalog()
    try:
        return cat[ident_id]
    except KeyError:
        raise NotFoundError(f"no identity with id {ident_id!r}") from None


def format_number(z, digits: int, ctx: PrecCtx) -> str:
    """``digits`` significant digits in exponent notation; complex as ``a+bi``.

    A real or imaginary part smaller than ``10**-(working-5)`` relative to
    ``|z|`` is treated as rounding noise and dropped.
    """
    mp = ctx.mp
    z = mp.mpc(z)
    scale = max(abs(z), mp.mpf(10) ** (-ctx.working))
    noise = scale * mp.mpf(10) ** (-(ctx.working - 5))
    re = z.real if abs(z.real) > noise else mp.mpf(0)
    im = z.imag if abs(z.imag) > noise else mp.mpf(0)

    def fmt(x):
        if x == 0:
            return "0.0e+0"
        s = mp.nstr(x, digits, min_fixed=1, max_fixed=0, strip_zeros=False)
        if "e" not in s:
            s += "e+0"
        return s

    if im == 0:
        return fmt(re)
    if re == 0:
        return fmt(im) + "i"
    sign = "-" if im < 0 else "+"
    return fmt(re) + sign + fmt(abs(im)) + "i"


def _evaluate_lhs(ident: Identity, ctx: PrecCtx):
    return ctx.mp.mpc(call(ident.lhs_op, evaluate_params(ident.lhs_params, ctx), ctx))


def verify_identity(ident_id: str, ctx: PrecCtx, catalog: dict | None = None) -> VerificationReport:
    """Evaluate both sides of one identity and compare at ``ctx.digits``.

    Parameters
    ----------
    ident_id : str
        Catalog id.
    ctx : PrecCtx
        ``ctx.digits`` sets the pass threshold ``10**-digits``.  Evaluation
        uses at least the identity's minimum digits.
    catalog : dict, optional
        Catalog to use instead of the default one.

    Returns
    -------
    VerificationReport
        Numeric failures (convergence, precision, domain) are reported with
        ``passed = False`` and an ``error`` message rather than raised.

    Raises
    ------
    NotFoundError
        If ``ident_id`` is not in the catalog.
    """
    ident = get_identity(ident_id, catalog)
    digits = ctx.digits
    work = ctx if digits >= ident.effective_min_digits else PrecCtx(ident.effective_min_digits, ctx.guard)
    start = time.perf_counter()
    try:
        lhs = _evaluate_lhs(ident, work)
        rhs = eval_expr(ident.rhs, work)
    except HypseriesError as exc:
        return VerificationReport(ident.id, digits, "", "", "", False, round(time.perf_counter() - start, 3),
                                  error=f"{type(exc).__name__}: {exc}")
    mp = work.mp
    err = abs(lhs - rhs)
    passed = bool(err < mp.mpf(10) ** (-digits))
    return VerificationReport(
        id=ident.id,
        digits=digits,
        lhs_value=format_number(lhs, digits + 2, work),
        rhs_value=format_number(rhs, digits + 2, work),
        abs_err=mp.nstr(err, 3, min_fixed=1, max_fixed=0) if err else "0.0e+0",
        passed=passed,
        elapsed=round(time.perf_counter() - start, 3),
    )


def matches(ident: Identity, selector: str | None) -> bool:
    """Tag equality or id substring; ``None``/empty selects everything."""
    if not selector:
        return True
    return selector in ident.tags or selector in ident.id


def verify_all(selector: str | None, ctx: PrecCtx, catalog: dict | None = None, workers: int = 1) -> list[VerificationReport]:
    """Verify every identity matching ``selector``; reports are sorted by id."""
    cat = catalog if catalog is not None else load_catalog()
    ids = [i for i, ident in cat.items() if matches(ident, selector)]
    if workers > 1 and len(ids) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(lambda i: verify_identity(i, ctx, cat), ids))
    else:
        reports = [verify_identity(i, ctx, cat) for i in ids]
    return sorted(reports, key=lambda r: r.id)


# ---------------------------------------------------------------------------
# independence audit


def _referenced_names(func, seen: set | None = None) -> set[str]:
    """Global names reachable from ``func`` through package-internal functions."""
    seen = set() if seen is None else seen
    names: set[str] = set()
    if id(func) in seen:
        return names
    seen.add(id(func))
    func = inspect.unwrap(func)
    code = getattr(func, "__code__", None)
    if code is None:
        return names
    glb = getattr(func, "__globals__", {})

    def walk(co: CodeType):
        for n in co.co_names:
            names.add(n)
            target = glb.get(n)
            if isinstance(target, FunctionType) and target.__module__.startswith("hypseries"):
                names.update(_referenced_names(target, seen))
        for const in co.co_consts:
            if isinstance(const, CodeType):
                walk(const)

    walk(code)
    return names


# functions that produce each right-side ingredient
_POOL = {"varpi": {"lemniscate_constants"}, "varpi_tilde": {"lemniscate_constants"}}


def audit_independence(catalog: dict | None = None) -> list[str]:
    """Identities whose left side reaches code that builds their right side.

    Returns a list of ``"id: name"`` findings; empty means the catalog passes.
    """
    cat = catalog if catalog is not None else load_catalog()
    findings = []
    for ident in cat.values():
        lhs_names = _referenced_names(lookup(ident.lhs_op).func)
        pool: set[str] = set()
        for item in constants_used(ident.rhs):
            if item.startswith("series:"):
                op = lookup(item.split(":", 1)[1])
                if op.name == ident.lhs_op:
                    findings.append(f"{ident.id}: right side reuses {op.name}")
                pool.add(op.func.__name__)
            else:
                pool |= _POOL.get(item, set())
        for name in sorted(pool & lhs_names):
            findings.append(f"{ident.id}: left side references {name}")
    return findings
