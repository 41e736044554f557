import json
from fractions import Fraction

import pytest

from oracles import varpi
from hypseries.catalog import (
    CATALOG_ENV,
    NotFoundError,
    SchemaError,
    audit_independence,
    eval_expr,
    format_number,
    get_identity,
    load_catalog,
    verify_all,
    verify_identity,
)
from hypseries.catalog.expr import constants_used
from hypseries.catalog.ops import OPS, call, lookup
from hypseries.mpcore import DomainError, PrecCtx

REQUIRED_IDS = {
    "c2-pos-4", "c2-pos-8", "c2-pos-12", "c2-pos-16", "c2-zero", "c2-s1-relation-random",
    "cauchy-mellin-k0", "cauchy-mellin-k1", "cauchy-mellin-k2", "ramanujan-cosh-k0", "ramanujan-cosh-k1",
    "s1-neg3-i", "s1-neg7-i", "s1-neg5-rho", "s1-neg11-rho", "s2-neg4-i", "s2-e21-k0",
    "g4-i", "g2-i", "g6-rho", "gscript-k2r2", "gscript-k1r5", "gscript-rho", "gfrak-2-3-i",
    "mellin-n3-sinh2", "mellin-n4-xi", "mellin-n3-coth", "barnes-fe-s6", "reciprocity",
    "qzeta-2", "qzeta-rho", "fq-4-2", "sinh-power-k1", "sinh-power-k2",
}


def write_catalog(tmp_path, entries, name="cat.json"):
    p = tmp_path / name
    p.write_text(json.dumps({"schema": 1, "identities": entries}))
    return p


GOOD = {"id": "zeta2", "tags": ["t"], "lhs": {"op": "S1", "params": {"s": 3, "tau": "i"}},
        "rhs": ["mul", "-1/360", ["pow", "pi", 3]]}
BAD = {"id": "wrong", "tags": ["t"], "lhs": {"op": "S1", "params": {"s": 3, "tau": "i"}}, "rhs": "1/360"}


class TestLoading:
    def test_required_identities_present(self):
        assert REQUIRED_IDS <= set(load_catalog())

    def test_sorted_and_tagged(self):
        cat = load_catalog()
        assert list(cat) == sorted(cat)
        assert all(ident.tags for ident in cat.values())
        assert all(ident.lhs_op in OPS for ident in cat.values())

    def test_not_found(self):
        with pytest.raises(NotFoundError):
            get_identity("no-such-identity")
        with pytest.raises(KeyError):
            verify_identity("no-such-identity", PrecCtx(20))

    def test_env_override(self, tmp_path, monkeypatch):
        p = write_catalog(tmp_path, [GOOD])
        monkeypatch.setenv(CATALOG_ENV, str(p))
        assert list(load_catalog()) == ["zeta2"]

    @pytest.mark.parametrize(
        "entries",
        [
            [{"id": "x", "rhs": 1}],
            [{"id": "x", "lhs": {"op": "nonexistent"}, "rhs": 1}],
            [GOOD, GOOD],
        ],
    )
    def test_schema_errors(self, tmp_path, entries):
        with pytest.raises(SchemaError):
            load_catalog(write_catalog(tmp_path, entries))

    def test_unreadable(self, tmp_path):
        bad = tmp_path / "broken.json"
        bad.write_text("{not json")
        with pytest.raises(SchemaError):
            load_catalog(bad)
        with pytest.raises(SchemaError):
            load_catalog(tmp_path / "missing.json")


class TestExpressions:
    def test_lemniscate_power(self):
        ctx = PrecCtx(30)
        mp = ctx.mp
        v = eval_expr(["mul", "1/4", ["pow", ["div", "varpi", "pi"], 4]], ctx)
        assert abs(v - (varpi(60) / mp.pi) ** 4 / 4) < mp.mpf(10) ** -30

    def test_exact_zero_and_rationals(self):
        ctx = PrecCtx(20)
        assert eval_expr("0", ctx) == 0
        assert eval_expr(["add", "1/3", "1/6"], ctx) == Fraction(1, 2)

    def test_zeta_node(self):
        ctx = PrecCtx(30)
        mp = ctx.mp
        assert abs(eval_expr(["div", ["zeta", 4], 16], ctx) - mp.pi**4 / 1440) < mp.mpf(10) ** -30

    def test_series_node(self):
        ctx = PrecCtx(20)
        v = eval_expr(["series", "S1", {"s": 3, "tau": "i"}], ctx)
        assert abs(v + ctx.mp.pi**3 / 360) < ctx.eps * 100

    @pytest.mark.parametrize(
        "tree",
        [["frobnicate", 1], ["div", 1, 0], ["pow", "pi", "pi"], ["neg", 1, 2], "notaconstant", True, ["zeta", "1/2"], []],
    )
    def test_malformed(self, tree):
        with pytest.raises(SchemaError):
            eval_expr(tree, PrecCtx(10))

    def test_constants_used(self):
        tree = ["add", "varpi", ["series", "S1", {"s": 1, "tau": "i"}], ["mul", "pi", 2]]
        assert {"varpi", "pi", "series:S1"} <= constants_used(tree)


class TestOps:
    def test_lookup(self):
        assert lookup("S1").name == "S1"
        with pytest.raises(KeyError):
            lookup("no-such-series")

    def test_call_checks_parameters(self):
        ctx = PrecCtx(10)
        with pytest.raises(DomainError):
            call("S1", {"s": 3}, ctx)
        with pytest.raises(DomainError):
            call("S1", {"s": 3, "tau": "i", "bogus": 1}, ctx)


class TestVerification:
    def test_whole_catalog_passes(self):
        reports = verify_all(None, PrecCtx(30))
        failed = [(r.id, r.abs_err, r.error) for r in reports if not r.passed]
        assert not failed
        assert len(reports) == len(load_catalog())

    def test_random_relation_report(self):
        r = verify_identity("c2-s1-relation-random", PrecCtx(30))
        assert r.passed and r.digits == 30 and r.error is None
        d = r.to_dict()
        assert d["pass"] is True and "error" not in d

    def test_filter(self):
        cat = load_catalog()
        reports = verify_all("cosh-double", PrecCtx(20))
        assert {r.id for r in reports} == {i for i, e in cat.items() if "cosh-double" in e.tags}
        assert verify_all("no-such-tag-anywhere", PrecCtx(20)) == []

    def test_reproducible_strings(self):
        a = verify_identity("s1-neg3-i", PrecCtx(40))
        b = verify_identity("s1-neg3-i", PrecCtx(40))
        assert (a.lhs_value, a.rhs_value, a.abs_err) == (b.lhs_value, b.rhs_value, b.abs_err)

    def test_workers_keep_order(self):
        ctx = PrecCtx(20)
        serial = verify_all("root-of-unity", ctx)
        parallel = verify_all("root-of-unity", ctx, workers=4)
        assert [r.id for r in serial] == [r.id for r in parallel]
        assert [r.lhs_value for r in serial] == [r.lhs_value for r in parallel]

    def test_failure_is_reported(self, tmp_path):
        cat = load_catalog(write_catalog(tmp_path, [GOOD, BAD]))
        reports = {r.id: r for r in verify_all(None, PrecCtx(20), cat)}
        assert reports["zeta2"].passed and not reports["wrong"].passed

    def test_numeric_errors_become_reports(self, tmp_path):
        entry = {"id": "pole", "lhs": {"op": "S1", "params": {"s": 3, "tau": "-i"}}, "rhs": 0}
        r = verify_identity("pole", PrecCtx(20), load_catalog(write_catalog(tmp_path, [entry])))
        assert not r.passed and "DomainError" in r.error

    def test_minimum_digits_raised_for_lemniscate_constants(self):
        ident = get_identity("s1-neg3-i")
        assert ident.effective_min_digits >= 30


class TestAudit:
    def test_catalog_is_independent(self):
        assert audit_independence() == []

    def test_detects_reuse(self, tmp_path):
        entry = {"id": "circular", "lhs": {"op": "S1", "params": {"s": 3, "tau": "i"}},
                 "rhs": ["series", "S1", {"s": 3, "tau": "i"}]}
        findings = audit_independence(load_catalog(write_catalog(tmp_path, [entry])))
        assert findings and findings[0].startswith("circular")


class TestFormat:
    def test_real_and_complex(self):
        ctx = PrecCtx(20)
        mp = ctx.mp
        assert format_number(mp.mpf(-1) / 8, 5, ctx) == "-1.2500e-1"
        assert format_number(mp.mpc(1, -2), 3, ctx) == "1.00e+0-2.00e+0i"
        assert format_number(0, 3, ctx) == "0.0e+0"

    def test_noise_dropped(self):
        ctx = PrecCtx(20)
        mp = ctx.mp
        assert format_number(mp.mpc(1, mp.mpf(10) ** -60), 4, ctx) == "1.000e+0"
