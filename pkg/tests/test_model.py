import math

import pytest
from hypothesis import given, strategies as st

from ptwell.model import (CouplingParams, InvalidParameters, Spin, as_spin, is_physical,
                          omega, z_eff)
from ptwell.secular import Z_CRIT

pos = st.floats(1e-6, 1e3, allow_nan=False)
real = st.floats(-1e3, 1e3, allow_nan=False)


@given(pos, pos, real)
def test_zeff_sum_and_difference(x, y, z):
    p = CouplingParams(x, y, z)
    plus, minus = z_eff(p, Spin.PLUS), z_eff(p, Spin.MINUS)
    assert math.isclose(plus + minus, 2 * z, rel_tol=1e-12, abs_tol=1e-9)
    assert math.isclose(plus - minus, 2 * math.sqrt(x * y), rel_tol=1e-12, abs_tol=1e-14 * (1 + abs(z)))


@given(pos, pos, st.floats(0.1, 10.0), real)
def test_zeff_depends_on_product_only(x, y, k, z):
    a = CouplingParams(x, y, z)
    b = CouplingParams(x * k, y / k, z)
    for s in Spin:
        assert math.isclose(z_eff(a, s), z_eff(b, s), rel_tol=1e-12, abs_tol=1e-9)


@given(pos, pos)
def test_omega_squared_is_ratio(x, y):
    p = CouplingParams(x, y)
    assert math.isclose(omega(p) ** 2, x / y, rel_tol=1e-12)


@pytest.mark.parametrize("x,y", [(0.0, 1.0), (1.0, 0.0), (-1.0, 1.0)])
def test_decoupling_limit_rejected(x, y):
    with pytest.raises(InvalidParameters, match="decoupling"):
        CouplingParams(x, y, 0.0)


@pytest.mark.parametrize("bad", [math.nan, math.inf])
def test_non_finite_rejected(bad):
    with pytest.raises(InvalidParameters):
        CouplingParams(1.0, 1.0, bad)


def test_physical_domain_boundary():
    assert is_physical(CouplingParams(1, 1, 0.5))
    assert not is_physical(CouplingParams(1, 1, 4.0))
    assert is_physical(CouplingParams(1, 1, 3.4), z_crit=Z_CRIT)
    assert not is_physical(CouplingParams(1, 1, -3.6), z_crit=Z_CRIT)
    with pytest.raises(ValueError):
        is_physical(CouplingParams(1, 1), z_crit=0.0)


def test_spin_coercion():
    assert as_spin(1) is Spin.PLUS and as_spin(-1) is Spin.MINUS
    with pytest.raises(ValueError):
        as_spin(0)
