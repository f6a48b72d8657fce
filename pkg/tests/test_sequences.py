"""Sequence-space functionals and norms against exact oracles."""

from fractions import Fraction as Fr

import numpy as np
import pytest

import oracles as orc
from strongconv import (NonSummableTail, NumSequence, RejectedSpec, ScheduleTooShort, basis_vector,
                        bv_norm, c_lambda_norm, cr_norm, lemma1_bridge_bound, lemma1_condition,
                        norm_chain_check, r_factor_inequality_check, schauder_coefficients,
                        schauder_remainder, schauder_remainder_norm, sigma_mean, strong_variation,
                        sup_norm, telescoped_recover, trace_functional)
from strongconv.sequences import ConstantTail, InversePower, PeriodicTail
from strongconv.specs import parse_lambda

LIN = parse_lambda("power:1.0")
SQ = parse_lambda("power:2.0")

# exact values from the Fraction oracle (tests/oracles.py)
CASES = [
    ((3, -1, 4, 1, -5), LIN, 2, {
        "V": [Fr(3), Fr(5, 2), Fr(14, 3), Fr(5), Fr(57, 5), Fr(61, 6), Fr(86, 7), Fr(43, 4)],
        "T": [Fr(1, 3), Fr(5, 4), Fr(32, 5), Fr(6), Fr(61, 7), Fr(61, 8)],
        "sigma": [Fr(3), Fr(-1), Fr(11, 3), Fr(0), Fr(1, 5), Fr(0), Fr(1, 7), Fr(0)],
        "cr": (Fr(86, 7), 6), "bv": Fr(26)}),
    ((1, 2), SQ, 3, {
        "V": [Fr(1), Fr(9, 4), Fr(1), Fr(5, 8), Fr(18, 25), Fr(1, 2), Fr(18, 49), Fr(9, 32)],
        "T": [Fr(1, 16), Fr(9, 25), Fr(1, 4), Fr(9, 49), Fr(9, 64)],
        "sigma": [Fr(1), Fr(2), Fr(0), Fr(1, 16), Fr(8, 25), Fr(0), Fr(1, 49), Fr(1, 8)],
        "cr": (Fr(9, 4), 1), "bv": Fr(4)}),
    ((0.5, 0, -0.75, 2), LIN, 1, {
        "V": [Fr(1, 2), Fr(1, 2), Fr(13, 12), Fr(27, 8), Fr(43, 10), Fr(43, 12), Fr(43, 14), Fr(43, 16)],
        "T": [Fr(1, 4), Fr(2, 3), Fr(41, 16), Fr(73, 20), Fr(73, 24), Fr(73, 28), Fr(73, 32)],
        "sigma": [Fr(1, 2), Fr(1, 4), Fr(-1, 12), Fr(7, 16), Fr(7, 20), Fr(7, 24), Fr(1, 4), Fr(7, 32)],
        "cr": (Fr(43, 10), 4), "bv": Fr(13, 2)}),
]


@pytest.mark.parametrize("vals,w,r,want", CASES)
def test_functionals_match_frozen_oracle(vals, w, r, want):
    S = NumSequence(vals)
    for n, v in enumerate(want["V"]):
        assert strong_variation(S, 0, w, r, n) == pytest.approx(float(v), rel=1e-14)
    for n, v in enumerate(want["T"], start=r):
        assert lemma1_condition(S, w, r, n) == pytest.approx(float(v), rel=1e-14)
    for n, v in enumerate(want["sigma"]):
        assert sigma_mean(S, w, r, n) == pytest.approx(float(v), rel=1e-14, abs=1e-15)
    est = cr_norm(S, w, r)
    assert est.value == pytest.approx(float(want["cr"][0]), rel=1e-14)
    assert est.attained_at == want["cr"][1] and est.exact
    assert bv_norm(S).value == float(want["bv"])


@pytest.mark.parametrize("vals,w,r,want", CASES)
def test_oracle_itself_reproduces_frozen_values(vals, w, r, want):
    alpha = 1 if w is LIN else 2
    s, lam = orc.seq_at(vals), orc.lam_power(alpha)
    assert [orc.V(s, 0, lam, r, n) for n in range(8)] == want["V"]
    assert orc.cr_sup_scan(s, lam, r, len(vals) + r + 20) == want["cr"]


# worked examples

def test_variation_examples():
    S = NumSequence((1, 0, 0))
    assert strong_variation(S, 0, LIN, 2, 2) == pytest.approx(2 / 3)
    assert strong_variation(S, 0, LIN, 2, 5) == pytest.approx(1 / 3)


def test_T_examples():
    assert lemma1_condition(NumSequence((1, 0, 0)), LIN, 2, 2) == pytest.approx(1 / 3)
    with pytest.raises(ScheduleTooShort):
        lemma1_condition(NumSequence((1, 0)), LIN, 2, 1)


def test_sigma_and_telescoping_examples():
    S = NumSequence.constant(3.4)
    assert sigma_mean(S, LIN, 3, 7) == pytest.approx(3.4, rel=1e-15)
    S = NumSequence((1, 2, 3, 4, 5, 6, 7))
    assert telescoped_recover(S, LIN, 2, 3) == pytest.approx(4, rel=1e-15)
    assert telescoped_recover(S, SQ, 3, 6) == pytest.approx(7, rel=1e-15)


def test_bridge_bound_example():
    S = NumSequence((2, -1, 0.5))
    n, r = 4, 2
    V = strong_variation(S, 0.25, LIN, r, n)
    T = lemma1_condition(S, LIN, r, n)
    want = orc.bridge(orc.seq_at((2, -1, Fr(1, 2))), Fr(1, 4), orc.lam_power(1), r, n)
    assert lemma1_bridge_bound(S, 0.25, LIN, r, n) == pytest.approx(float(want), rel=1e-14)
    assert abs(V - T) <= float(want) + 1e-12


def test_norm_examples():
    S = NumSequence((1, 1))
    assert sup_norm(S).value == 1.0
    assert bv_norm(S).value == 2.0
    one = cr_norm(NumSequence((1,)), LIN, 2)
    assert (one.value, one.attained_at) == (1.0, 0)
    est = cr_norm(S, LIN, 2)
    assert (est.value, est.attained_at) == (1.5, 1)


def test_chain_example():
    chain = norm_chain_check(NumSequence((1, 1)), LIN, 2)
    assert chain.passed
    assert chain.values == pytest.approx((1.0, 1.5, 4 / 3, 2.0))


def test_constant_tail_norm_is_a_limit():
    est = cr_norm(NumSequence.constant(3.0), LIN, 2)
    assert est.value == pytest.approx(6.0)
    assert est.attained_at is None and est.exact


def test_comb_has_unit_norm():
    F = basis_vector(1, 3, 4)
    est = cr_norm(F, LIN, 3)
    assert est.value == pytest.approx(1.0)


def test_bv_rejects_oscillating_tail():
    with pytest.raises(NonSummableTail):
        bv_norm(NumSequence((1,), PeriodicTail((1.0, -1.0))))


def test_generator_tail_needs_truncation_and_is_approximate():
    S = NumSequence((1.0,), InversePower(1.0, 1.0))
    with pytest.raises(RejectedSpec):
        sup_norm(S)
    assert not sup_norm(S, 100).exact
    assert not cr_norm(S, LIN, 2, n_max=200).exact
    with pytest.raises(RejectedSpec):
        norm_chain_check(S, LIN, 2)


def test_r_factor_example():
    S = NumSequence((1, -1, 1, -1))
    chk = r_factor_inequality_check(S, LIN, 2, 5)
    assert chk.passed and chk.lhs <= chk.rhs


# Schauder basis

def test_schauder_coefficients_example():
    S = NumSequence((5, 4, 2, 12))
    assert np.allclose(schauder_coefficients(S, 2, 3), [5, 4, -3, 8])


def test_schauder_worked_triple():
    S = NumSequence((1,))
    norms = [schauder_remainder_norm(S, LIN, 2, m).norm.value for m in range(3)]
    assert norms == [1.0, 1.0, 0.0]


@pytest.mark.parametrize("m", range(6))
def test_schauder_remainder_matches_oracle(m):
    vals = (2, -1, Fr(1, 2), 3)
    R = schauder_remainder(NumSequence(tuple(float(v) for v in vals)), 2, m)
    want = orc.schauder_remainder(orc.seq_at(vals), 2, m, 12)
    assert np.allclose(R.take(12), [float(v) for v in want], atol=1e-15)


def test_schauder_remainder_bound_holds_and_vanishes():
    S = NumSequence((2.0, -1.0, 0.5, 3.0))
    E, r = S.support_end, 2
    for m in range(E + r + 1):
        res = schauder_remainder_norm(S, LIN, r, m)
        assert res.passed
        if m >= E + r - 1:
            assert res.norm.value <= 1e-12


# traces

def test_constant_trace_is_zero():
    tr = trace_functional(NumSequence.constant(3.0), 3.0, LIN, 2, (1, 10, 100), "V")
    assert tr.values == (0.0, 0.0, 0.0)


def test_T_trace_decreases_for_harmonic_sequence():
    vals = tuple(1 / (k + 1) for k in range(2000))
    tr = trace_functional(NumSequence(vals), 0, LIN, 2, (10, 100, 1000), "T")
    assert tr.monotonicity == "strictly decreasing"


def test_trace_rejects_bad_schedule():
    with pytest.raises(RejectedSpec):
        trace_functional(NumSequence((1,)), 0, LIN, 2, (3, 2), "V")


def test_frozen_numerator_decay():
    # past the support the weighted sum stops changing, so V_n lambda_n is constant
    S = NumSequence((1.0, -2.0, 0.5))
    r = 2
    vals = [strong_variation(S, 0, LIN, r, n) * (n + 1) for n in range(4, 40)]
    assert np.allclose(vals, vals[0], rtol=1e-14)
