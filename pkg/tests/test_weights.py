import math

import numpy as np
import pytest

from strongconv import (ExtensionForbidden, Explicit, IndexOutOfConvention, Logarithmic, Power,
                        RejectedSpec, build_lambda, lambda_at)
from strongconv.weights import LAST_VALUE_PLUS_LINEAR


def test_power_values():
    w = build_lambda(Power(1.0))
    assert list(w.values(4)) == [1.0, 2.0, 3.0, 4.0, 5.0]
    assert build_lambda(Power(0.5))(3) == 2.0


def test_log_values():
    w = build_lambda(Logarithmic())
    assert w(0) == pytest.approx(1.0)
    assert w(10) == pytest.approx(math.log(10 + math.e))


def test_negative_indices_are_zero():
    w = build_lambda(Power(1.0))
    for k in (-1, -2, -3):
        assert lambda_at(w, k, 3) == 0.0
    assert lambda_at(w, 2, 3) == 3.0


def test_below_convention_raises():
    w = build_lambda(Power(1.0))
    with pytest.raises(IndexOutOfConvention):
        lambda_at(w, -4, 3)


@pytest.mark.parametrize("family", [
    Power(-1.0), Power(0.0), Explicit((1.0, 0.5, 2.0)), Explicit((0.0, 1.0)), Explicit(()),
])
def test_rejected(family):
    with pytest.raises(RejectedSpec):
        build_lambda(family)


def test_explicit_forbidden_extension():
    w = build_lambda(Explicit((1.0, 2.0, 4.0)))
    assert w(2) == 4.0
    assert w.max_index == 2
    with pytest.raises(ExtensionForbidden):
        w(3)


def test_explicit_linear_extension():
    w = build_lambda(Explicit((1.0, 2.0, 4.0), LAST_VALUE_PLUS_LINEAR))
    assert w.max_index is None
    assert [w(k) for k in (3, 4)] == [6.0, 8.0]


def test_convexity_flags():
    assert build_lambda(Power(1.0)).convex_from == 1
    assert build_lambda(Power(0.5)).convex_from is None
    assert build_lambda(Logarithmic()).convex_from is None


def test_take_vectorised_matches_scalar():
    w = build_lambda(Power(1.5))
    idx = np.array([-2, -1, 0, 5, 17])
    assert np.array_equal(w.take(idx), [lambda_at(w, int(k), 2) for k in idx])
