"""Smoke test for the binharm extension module.

Build first with `pip install --no-build-isolation -e crates/py`, then run
`python3 python/smoke_test.py`. Independent values come from mpmath.
"""

from decimal import Decimal

import mpmath

import binharm

mpmath.mp.dps = 40


def enclosure(text):
    mid, rad = text.split(" ± ")
    return Decimal(mid), Decimal(rad)


def assert_encloses(text, value):
    mid, rad = enclosure(text)
    ref = Decimal(mpmath.nstr(value, 35, strip_zeros=False))
    assert abs(mid - ref) <= rad + Decimal("1e-34"), (text, ref)


def gf_m(x):
    # Σ binom(2n,n)·H_n·x^n summed directly
    return mpmath.nsum(lambda n: mpmath.binomial(2 * n, n) * mpmath.harmonic(n) * x**n, [1, mpmath.inf])


def main():
    catalog = binharm.list_identities()
    ids = [r["id"] for r in catalog]
    assert ids[0] == "EQ1" and "THM27" in ids, ids[:5]
    bad = binharm.list_identities(status="AS_PRINTED_DISCREPANT")
    assert [r["id"] for r in bad] == ["EQ17_AS_PRINTED", "EQ37_AS_PRINTED", "EQ38_AS_PRINTED"]
    assert len(binharm.list_identities(family="LUCAS")) == 3

    report = binharm.verify("EQ36", digits=15)
    assert report["verdict"] == "PASS", report
    assert_encloses(report["rhs"], 3 * mpmath.pi / 32)

    fixture = binharm.verify("EQ37_AS_PRINTED")
    assert fixture["verdict"] == "FAIL" == fixture["expected"], fixture

    try:
        binharm.verify("EQ99")
    except KeyError:
        pass
    else:
        raise AssertionError("unknown id accepted")

    assert_encloses(binharm.gf_eval("GF_M", "1/8", 30), gf_m(mpmath.mpf(1) / 8))
    try:
        binharm.gf_eval("GF_M", "0.125")
    except ValueError:
        pass
    else:
        raise AssertionError("decimal point accepted")

    consts = binharm.constants(30)
    assert_encloses(consts["PI"], mpmath.pi)
    assert_encloses(consts["CATALAN_G"], mpmath.catalan)
    assert_encloses(consts["ZETA3"], mpmath.zeta(3))

    assert binharm.fib(100) == int(mpmath.fib(100))
    # L_n = F_{n-1} + F_{n+1} holds for negative n too
    assert binharm.lucas(-7) == int(mpmath.fib(-8) + mpmath.fib(-6))
    assert binharm.check_binet_identity("lucas-product", 13, -8)

    suite = binharm.verify_all(workers=2)
    assert suite["summary"]["ok"] and not suite["summary"]["unexpected"], suite["summary"]
    print(f"smoke test ok: {len(suite['reports'])} identities verified")


if __name__ == "__main__":
    main()
