import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nsaxi import (DomainError, EndpointConstants, Params, Stratum, c3_bar,
                   classify, p_c, tau_constants)
from nsaxi.errors import ClassificationError

admissible = st.floats(min_value=-1.0, max_value=100.0,
                       allow_nan=False, allow_infinity=False)


def test_c3_bar_values():
    assert c3_bar(0.0, 0.0) == -4.0
    assert c3_bar(-1.0, -1.0) == 0.0
    assert c3_bar(3.0, 0.0) == -7.5


def test_c3_bar_domain():
    with pytest.raises(DomainError):
        c3_bar(-1.1, 0.0)
    with pytest.raises(DomainError):
        c3_bar(0.0, -2.0)


@given(admissible, admissible)
@settings(max_examples=300)
def test_c3_bar_symmetric(a, b):
    assert c3_bar(a, b) == c3_bar(b, a)


def test_tau_values():
    t = tau_constants(0.0, 0.0)
    assert t == EndpointConstants(0.0, 4.0, -4.0, 0.0)
    t = tau_constants(-1.0, 3.0)
    assert t.tau1 == t.tau2 == 2.0
    assert (t.tau1p, t.tau2p) == (-6.0, 2.0)


@given(admissible)
@settings(max_examples=300)
def test_tau_identities(c1):
    t = tau_constants(c1, 0.0)
    scale = max(1.0, abs(t.tau2))
    assert abs(t.tau1 + t.tau2 - 4.0) <= 1e-14 * scale
    assert abs((t.tau2 - 2.0) ** 2 - 4.0 * (1.0 + c1)) <= 1e-14 * max(1.0, 4.0 * (1.0 + c1))
    tn = tau_constants(0.0, c1)
    assert abs(tn.tau1p + tn.tau2p + 4.0) <= 1e-14 * max(1.0, abs(tn.tau1p))


def test_p_c_endpoints():
    c = Params(1.25, -0.5, 7.0)
    assert p_c(-1.0, c) == 2 * c.c1
    assert p_c(1.0, c) == 2 * c.c2
    assert p_c(0.0, Params(1.0, 2.0, 3.0)) == 6.0


@given(st.floats(-1.0, 1.0, allow_nan=False), admissible, admissible,
       st.floats(-50.0, 50.0, allow_nan=False))
@settings(max_examples=300)
def test_p_c_antisymmetric_part(x, c1, c2, c3):
    c = Params(c1, c2, c3)
    lhs = p_c(x, c) - p_c(-x, c)
    assert lhs == pytest.approx(2.0 * x * (c2 - c1), abs=1e-10 * (1 + abs(c1) + abs(c2)))


def test_clamping():
    c = Params(-1.0 - 5e-15, 0.0, 0.0)
    assert c.c1 == -1.0
    assert c.clamped
    assert not Params(-1.0, 0.0, 0.0).clamped
    with pytest.raises(DomainError):
        Params(-1.0 - 1e-13, 0.0, 0.0)
    with pytest.raises(DomainError):
        Params(0.0, 0.0, math.nan)


def test_classify_outside_below_boundary():
    idx = classify(Params(0.0, 0.0, -5.0), 0.3)
    assert idx.stratum is Stratum.OUTSIDE


def test_classify_boundary():
    assert classify(Params(0.0, 0.0, -4.0), 0.0).stratum is Stratum.BOUNDARY
    # on the boundary only the single midpoint value belongs to the family
    assert classify(Params(0.0, 0.0, -4.0), 0.5).stratum is Stratum.OUTSIDE


def test_classify_interior_strata():
    assert classify(Params(0.0, 0.0, 0.0), 1.0).stratum is Stratum.I11
    assert classify(Params(0.0, 0.0, 0.0), 2.0).stratum is Stratum.I12
    assert classify(Params(0.0, 0.0, 0.0), -2.0).stratum is Stratum.I13
    assert classify(Params(-1.0, 0.0, 0.0), 0.0).stratum is Stratum.I21
    assert classify(Params(0.0, -1.0, 0.0), 0.0).stratum is Stratum.I31
    assert classify(Params(-1.0, -1.0, 1.0), 0.0).stratum is Stratum.I41
    assert classify(Params(0.0, 0.0, 0.0), 2.5).stratum is Stratum.OUTSIDE


def test_classify_perturbation_stability():
    c = Params(0.0, 0.0, 0.0)
    base = classify(c, 2.0)
    assert base.stratum is Stratum.I12
    # below tolerance: same stratum; above: flips to interior
    assert classify(c, 2.0 - 1e-12).stratum is Stratum.I12
    assert classify(c, 2.0 - 1e-4).stratum is Stratum.I11
    assert classify(c, 2.0 + 1e-4).stratum is Stratum.OUTSIDE


def test_stratum_accessors():
    assert Stratum.I21.k == 2 and Stratum.I21.l == 1
    assert Stratum.BOUNDARY.k is None
    assert Stratum.interior(4, 3) is Stratum.I43
