"""Certified suprema over all n against direct scans."""

import numpy as np
import pytest

from strongconv import CMetric, NumSequence, TrigSeries, cr_norm, s_lambda_r_norm
from strongconv.sequences import ConstantTail
from strongconv.specs import parse_lambda


def scan(S, w, r, N):
    s = S.take(N + 1)
    lam = w.values(N)
    x = lam * s
    y = np.zeros_like(x)
    y[r:] = x[:-r]
    v = np.cumsum(np.abs(x - y)) / lam
    i = int(np.argmax(v))
    return float(v[i]), i


# value and index from a direct scan to n = 200000
INTERIOR = [
    ("log", 3, (-2.2,), -1.2, 3.6388603300276845, 92),
    ("log", 3, (-0.2, 1.7), 2.6, 7.869902982741997, 111),
    ("log", 3, (-1.4, -0.7), -0.8, 2.4011749099489177, 2042),
    ("power:0.5", 3, (-0.4,), 1.5, 4.570195070309233, 32),
    ("power:0.5", 2, (0.2,), -1.4, 2.8560165312077777, 12),
]


@pytest.mark.parametrize("wspec,r,prefix,c,value,index", INTERIOR)
def test_interior_supremum_found(wspec, r, prefix, c, value, index):
    S = NumSequence(prefix, ConstantTail(c), c)
    est = cr_norm(S, parse_lambda(wspec), r)
    assert est.exact
    assert est.attained_at == index
    assert est.value == pytest.approx(value, rel=1e-13)


def test_interior_supremum_short_scan_agrees():
    S = NumSequence((-2.2,), ConstantTail(-1.2), -1.2)
    w = parse_lambda("log")
    assert scan(S, w, 3, 5000) == pytest.approx((cr_norm(S, w, 3).value, 92), rel=1e-13)


F = TrigSeries(0.0, (1.0, 0.0), (0.0, 0.5))
MAX_F = 1.2990163516759425  # max over the grid of |cos t + 0.5 sin 2t|


@pytest.mark.parametrize("wspec", ["power:0.5", "log", "power:1.0"])
@pytest.mark.parametrize("r", [2, 3])
def test_trig_norm_is_limit_from_below(wspec, r):
    est = s_lambda_r_norm(F, parse_lambda(wspec), r, CMetric(512))
    assert est.exact and est.attained_at is None
    assert est.value == pytest.approx(r * MAX_F, rel=1e-14)


@pytest.mark.parametrize("wspec", ["power:0.5", "log", "power:1.0"])
def test_trig_norm_r1_attained(wspec):
    est = s_lambda_r_norm(F, parse_lambda(wspec), 1, CMetric(512))
    assert est.attained_at == 2
    assert est.value == pytest.approx(MAX_F, rel=1e-14)


def test_explicit_weights_search_is_flagged():
    w = parse_lambda("power:1.0")
    from strongconv import Explicit, build_lambda
    short = build_lambda(Explicit(tuple(float(k + 1) for k in range(10))))
    est = cr_norm(NumSequence.constant(1.0), short, 2)
    assert not est.exact
    assert est.value <= cr_norm(NumSequence.constant(1.0), w, 2).value
