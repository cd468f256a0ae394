import math

import numpy as np
import pytest
from pydantic import ValidationError

from dirty_mac_lab.channel.params import (
    ChannelParams,
    capacity_limited_power,
    db_to_linear,
    no_cooperation_scheme,
    normalize,
    select_cooperation_power,
)
from dirty_mac_lab.errors import ParameterError


def test_normalize_swaps_users_when_user_two_is_stronger():
    raw = ChannelParams(P1=1.0, P2=2.0, Q1=3.0, Q2=4.0, No=1.0, Cb12=0.25, Cb21=0.75)
    p = normalize(raw)

    assert (p.P1, p.P2, p.Q1, p.Q2) == (2.0, 1.0, 4.0, 3.0)
    assert (p.Cb12, p.Cb21) == (0.75, 0.25)
    assert p.swapped


def test_normalize_keeps_order_on_ties_and_is_idempotent():
    tie = ChannelParams(P1=1.0, P2=1.0, Q1=3.0, Q2=4.0, No=1.0)
    assert normalize(tie) == tie
    assert not normalize(tie).swapped

    swapped = normalize(ChannelParams(P1=1.0, P2=2.0, Q1=0.0, Q2=0.0, No=1.0))
    assert normalize(swapped) == swapped


def test_channel_params_reject_invalid_values():
    with pytest.raises(ValidationError):
        ChannelParams(P1=1.0, P2=1.0, Q1=0.0, Q2=0.0, No=0.0)
    with pytest.raises(ValidationError):
        ChannelParams(P1=-1.0, P2=1.0, Q1=0.0, Q2=0.0, No=1.0)
    with pytest.raises(ValidationError):
        ChannelParams(P1=math.inf, P2=1.0, Q1=0.0, Q2=0.0, No=1.0)


def test_infinite_interference_is_accepted():
    p = ChannelParams(P1=3.0, P2=3.0, Q1=math.inf, Q2=math.inf, No=1.0)
    assert math.isinf(p.inr2)


def test_db_conversion():
    assert db_to_linear(10.0) == pytest.approx(10.0)
    assert db_to_linear(0.0) == 1.0
    assert db_to_linear(-10.0) == pytest.approx(0.1)


def test_capacity_limited_cooperation_power(capacity_limited_point):
    s = select_cooperation_power(capacity_limited_point)

    assert s.thetaC == pytest.approx(6.0)
    assert s.r21 == pytest.approx(1.0)
    assert s.thetaR == pytest.approx(3.0)
    assert s.thetaL == 1.0
    assert s.alphaL == pytest.approx(2.0 / 3.0)
    assert s.alphaC == pytest.approx(2.0 / 3.0)
    assert s.delta == pytest.approx(2.0)
    assert s.cooperation_active


def test_power_limited_cooperation_power(power_limited_point):
    s = select_cooperation_power(power_limited_point)

    assert s.thetaC == pytest.approx(2.0)
    assert s.thetaR == 0.0
    assert s.r21 == pytest.approx(0.5 * math.log2(2.0 + 2.0 / 3.0))


def test_small_cooperation_capacity_drops_cooperation_layer():
    p = ChannelParams(P1=10.0, P2=1.0, Q1=100.0, Q2=100.0, No=1.0, Cb21=0.4)
    s = select_cooperation_power(p)

    assert s.thetaC == 0.0
    assert s.r21 == 0.0
    assert s == no_cooperation_scheme(p)
    assert not s.cooperation_active


def test_cooperation_power_is_monotone_in_capacity():
    thetas = []
    for cb21 in np.linspace(0.0, 4.0, 81):
        p = ChannelParams(P1=50.0, P2=2.0, Q1=10.0, Q2=30.0, No=1.0, Cb21=float(cb21))
        s = select_cooperation_power(p)
        assert 0.0 <= s.thetaC <= min(p.Q2, p.P1 - p.P2)
        assert s.r21 <= p.Cb21 + 1e-12
        thetas.append(s.thetaC)
    assert all(b >= a for a, b in zip(thetas, thetas[1:]))


def test_huge_cooperation_capacity_does_not_overflow():
    p = ChannelParams(P1=10.0, P2=1.0, Q1=1.0, Q2=5.0, No=1.0, Cb21=1e4)
    assert math.isinf(capacity_limited_power(p))
    assert select_cooperation_power(p).thetaC == 5.0


def test_scheme_requires_normalized_params():
    p = ChannelParams(P1=1.0, P2=2.0, Q1=0.0, Q2=0.0, No=1.0, Cb21=1.0)
    with pytest.raises(ParameterError):
        select_cooperation_power(p)
    with pytest.raises(ParameterError):
        no_cooperation_scheme(p)
