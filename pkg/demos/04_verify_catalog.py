"""Verify the shipped identity catalog.

Each identity pairs a numerically summed series with a closed form.  The
same check is available as `hypseries verify --all`.

Run:  python3 demos/04_verify_catalog.py [digits]
"""
import sys

from hypseries import PrecCtx
from hypseries.catalog import audit_independence, verify_all

digits = int(sys.argv[1]) if len(sys.argv) > 1 else 30
reports = verify_all(None, PrecCtx(digits), workers=4)
for r in reports:
    print(f"{'PASS' if r.passed else 'FAIL'}  {r.id:30s} |lhs - rhs| = {r.abs_err}")
print(f"\n{sum(r.passed for r in reports)}/{len(reports)} identities hold to {digits} digits")

# no identity may check a series against code that the series itself uses
print("independence audit findings:", audit_independence() or "none")
