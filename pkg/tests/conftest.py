import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from dirty_mac_lab.channel.params import ChannelParams  # noqa: E402
from dirty_mac_lab.utils.log_config import configure_logging  # noqa: E402

configure_logging("WARNING")


@pytest.fixture(autouse=True)
def _reset_logging():
    """CLI tests reconfigure logging onto capsys streams; rebind to the live stderr."""
    configure_logging("WARNING")
    yield


@pytest.fixture
def capacity_limited_point() -> ChannelParams:
    """thetaC = 6, r21 = 1 (cooperation power limited by Cb21)."""
    return ChannelParams(P1=10.0, P2=1.0, Q1=100.0, Q2=100.0, No=1.0, Cb21=1.0)


@pytest.fixture
def power_limited_point() -> ChannelParams:
    """thetaC = P1 - P2 = 2, thetaR = 0."""
    return ChannelParams(P1=3.0, P2=1.0, Q1=100.0, Q2=100.0, No=1.0, Cb21=2.0)


@pytest.fixture
def defaults_path() -> Path:
    return ROOT / "config" / "lab_config.yaml"
