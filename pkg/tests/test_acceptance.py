"""Acceptance criteria 1-13.

Each test records one PASS/FAIL line; ``conftest.py`` prints them at the end
of the run.  ``python tests/test_acceptance.py`` runs the same checks
without pytest.
"""

import json
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from strongconv import (CMetric, LpMetric, NumSequence, TrigSeries, dl_functional, grouped_pair,
                        s_lambda_r_functional, schauder_remainder_norm, sigma_mean)
from strongconv.checks import random_trig_series, run_suite
from strongconv.fourier import metric_norm, partial_sums
from strongconv.report import strip_volatile
from strongconv.specs import parse_coeffs, parse_lambda

SEED = 42
RESULTS = {}


def record(num, ok, detail):
    line = f"criterion {num:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[num] = line
    print(line)
    return ok


def suite(num, name, trials, **kw):
    t0 = time.perf_counter()
    res = run_suite(name, trials, SEED, **kw)
    dt = time.perf_counter() - t0
    detail = f"{name}: {trials} trials, {len(res.failures)} failures ({dt:.1f}s)"
    if res.failures:
        detail += f"; first: {json.dumps(res.failures[0])[:300]}"
    return res, detail


def test_c01_norm_chain():
    res, detail = suite(1, "prop1", 1000)
    assert record(1, res.passed, detail)


def test_c02_telescoping():
    res, detail = suite(2, "telescoping", 1000)
    assert record(2, res.passed, detail)


def test_c03_sigma_constants():
    worst = 0.0
    specs = ("power:1.0", "power:0.5", "power:2.0", "log")
    consts = (3.4, -2.0, 1e-3, 7.5 - 2.25j, 1e6j)
    for spec in specs:
        w = parse_lambda(spec)
        for r in range(1, 6):
            for c in consts:
                S = NumSequence.constant(c)
                for n in range(513):
                    worst = max(worst, abs(sigma_mean(S, w, r, n) - c) / abs(c))
    ok = worst <= 1e-12
    assert record(3, ok, f"max relative error {worst:.2e} over {len(specs)} weights, r<=5, n<=512")


def test_c04_lemma1_bridge():
    res, detail = suite(4, "lemma1-bridge", 1000)
    assert record(4, res.passed, detail)


def test_c05_r_factor():
    res, detail = suite(5, "r-factor", 1000)
    assert record(5, res.passed, detail)


def test_c06_schauder():
    res, detail = suite(6, "schauder", 200)
    w = parse_lambda("power:1.0")
    triple = [schauder_remainder_norm(NumSequence((1.0,)), w, 2, m).norm.value for m in range(3)]
    ok = res.passed and triple == [1.0, 1.0, 0.0]
    assert record(6, ok, f"{detail}; worked triple {triple}")


def test_c07_membership():
    w = parse_lambda("power:1.0")
    F, m = TrigSeries(0.0, (1.0,)), CMetric(512)
    v4 = s_lambda_r_functional(F, w, 2, 4, m)
    scaled = [s_lambda_r_functional(F, w, 2, n, m) * (n + 1) for n in range(2, 257)]
    dev = max(abs(x - 2.0) for x in scaled)
    ok = abs(v4 - 0.4) <= 1e-9 and dev <= 1e-9
    assert record(7, ok, f"value(4)={v4!r}; max |value*lambda_n - 2| over n=2..256 is {dev:.1e}")


def test_c08_denjoy_luzin():
    w = parse_lambda("power:1.0")
    F, _ = parse_coeffs('{"a":"inv_square"}', 10000)
    v10 = dl_functional(F, w, 10, "single")
    vals = [dl_functional(F, w, n, "single") for n in (100, 1000, 10000)]
    ok = abs(v10 - 0.26626984126984) <= 1e-12 and vals[0] > vals[1] > vals[2]
    assert record(8, ok, f"value(10)={v10!r}; values at 1e2,1e3,1e4 = {vals}")


def test_c09_grouped_pair():
    res, detail = suite(9, "trig-identities", 10000)
    gp = grouped_pair(TrigSeries(0.0, (3.0, 4.0)), 1, math.pi / 2)
    ex = abs(gp.value + 4) <= 1e-9 and abs(gp.rho - 5) <= 1e-9 and abs(gp.phase - 0.927295218) <= 1e-9
    assert record(9, res.passed and ex, f"{detail}; (3,4,pi/2) -> {gp.value!r}, {gp.rho!r}, {gp.phase!r}")


def test_c10_dlp2():
    res, detail = suite(10, "dlp2", 100)
    assert record(10, res.passed, detail)


def test_c11_lp_quadrature():
    m4096 = LpMetric(2.0, 4096)
    l2 = metric_norm(np.cos(m4096.grid()), m4096)
    rng = np.random.default_rng(SEED)
    bad = 0
    for _ in range(100):
        F = random_trig_series(rng)
        g = partial_sums(F, F.degree, CMetric(512).grid())[-1]
        c = metric_norm(g, CMetric(512))
        for p in (1.0, 2.0, 4.0):
            m = LpMetric(p, 512)
            bad += metric_norm(g, m) > m.factor * c * (1 + 1e-12)
    ok = abs(l2 - math.sqrt(math.pi)) <= 1e-6 and bad == 0
    assert record(11, ok, f"||cos||_2={l2!r} (sqrt(pi)={math.sqrt(math.pi)!r}); {bad} L^p > (2pi)^(1/p) C violations in 300")


def test_c12_norm_axioms():
    res, detail = suite(12, "norm-axioms", 500)
    assert record(12, res.passed, detail)


CLI_RUNS = [
    ["seq", "--lambda", "log", "--r", "3", "--seq", '{"values":[1,[0,2],-0.5],"tail":"zero"}',
     "--trace", "V,T,sigma_dev", "--norms", "all", "--schauder", "0,2,5", "--seed", "9"],
    ["fourier", "--coeffs", '{"a":"inv_square"}', "--lambda", "power:0.5", "--r", "2", "--dl", "pair",
     "--schedule", "geom:2:4:5", "--seed", "9"],
    ["fourier", "--coeffs", '{"a":[1,0.5,0.25]}', "--lambda", "power:1.0", "--r", "2", "--norms",
     "--metric", "Lp:p=2,grid=512", "--dlp2", "4", "--dl2", "1", "--C", "0.2", "--schedule", "2,16"],
    ["check", "--suite", "prop1", "--trials", "200", "--seed", "11"],
]


def _cli(argv):
    proc = subprocess.run([sys.executable, "-m", "strongconv"] + argv, capture_output=True)
    return proc.returncode, proc.stdout


def test_c13_cli_determinism():
    mismatches = []
    for argv in CLI_RUNS:
        (c1, o1), (c2, o2) = _cli(argv), _cli(argv)
        same = c1 == c2 == 0 and strip_volatile(json.loads(o1)) == strip_volatile(json.loads(o2)) and o1 == o2
        if not same:
            mismatches.append(argv[0])
    ok = not mismatches
    assert record(13, ok, f"{len(CLI_RUNS)} commands run twice; byte-identical: {ok} {mismatches or ''}")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_c") and callable(fn):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
