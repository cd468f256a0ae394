"""
Run configuration.

Defaults come from `config/lab_config.yaml`; a user file passed with
`--config` (YAML or JSON) is merged over them, and explicit command-line flags
are merged last. The merged OmegaConf tree is validated into a `RunConfig`.
"""
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional

import structlog
from omegaconf import OmegaConf
from pydantic import BaseModel, ConfigDict, Field

from dirty_mac_lab.channel.params import ChannelParams, db_to_linear
from dirty_mac_lab.gap.sweep import SweepRanges
from dirty_mac_lab.sim.layers import SimThresholds

log = structlog.get_logger()

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parents[2] / "config" / "lab_config.yaml"

Mode = Literal["point", "sweep", "simulate", "verify", "plotdata"]
NoiseFamily = Literal["gaussian", "uniform", "laplace"]


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class LoggingConfig(_Section):
    level: str = "INFO"


class PointConfig(_Section):
    """One channel. Powers and variances are in dB when `db` is set."""

    p1: float = 10.0
    p2: float = 1.0
    q1: float = 100.0
    q2: float = 100.0
    no: float = 1.0
    cb12: float = 0.0
    cb21: float = 1.0
    db: bool = False

    def to_params(self) -> ChannelParams:
        convert = db_to_linear if self.db else float
        return ChannelParams(
            P1=convert(self.p1), P2=convert(self.p2),
            Q1=convert(self.q1), Q2=convert(self.q2),
            No=convert(self.no), Cb12=self.cb12, Cb21=self.cb21,
        )


class SweepConfig(_Section):
    count: int = Field(default=10_000, ge=1)
    snr_min: float = 1e-3
    snr_max: float = 1e6
    inr_min: float = 1e-3
    inr_max: float = 1e6
    cb21_min: float = 0.0
    cb21_max: float = 8.0
    cb21_atoms: List[float] = Field(default_factory=lambda: [0.0, 0.5])
    atom_probability: float = 0.1
    no: float = 1.0

    def to_ranges(self) -> SweepRanges:
        return SweepRanges(**self.model_dump(exclude={"count"}))


class VerifyConfig(_Section):
    count: int = Field(default=1000, ge=1)


class SimulateConfig(_Section):
    n: int = Field(default=1_000_000, ge=1)
    layers: List[Literal["L", "C", "R"]] = Field(default_factory=lambda: ["L", "C", "R"])
    claim1: bool = False
    noise_family: NoiseFamily = "uniform"
    claim1_power: float = Field(default=1.0, gt=0.0)
    claim1_interference: float = Field(default=4.0, gt=0.0)
    claim1_noise: float = Field(default=1.0, gt=0.0)


class RunConfig(_Section):
    logging: LoggingConfig = Field(default_factory=LoggingConfig)
    mode: Mode = "point"
    point: PointConfig = Field(default_factory=PointConfig)
    sweep: SweepConfig = Field(default_factory=SweepConfig)
    verify: VerifyConfig = Field(default_factory=VerifyConfig)
    simulate: SimulateConfig = Field(default_factory=SimulateConfig)
    thresholds: SimThresholds = Field(default_factory=SimThresholds)
    seed: int = 20240601
    jobs: int = Field(default=1, ge=1)
    format: Literal["json", "csv"] = "json"
    out: Optional[str] = None
    ledger: Optional[str] = None


def _defaults(path: Path):
    if path.exists():
        return OmegaConf.load(path)
    log.warning("Default config not found, using built-in defaults.", path=str(path))
    return OmegaConf.create(RunConfig().model_dump())


def load_config(config_path: Optional[str] = None, overrides: Optional[Dict[str, Any]] = None,
                defaults_path: Path = DEFAULT_CONFIG_PATH) -> RunConfig:
    """
    Merges defaults < config file < overrides and validates the result.

    Args:
        config_path: Optional YAML or JSON file merged over the defaults.
        overrides: Nested tree of values given on the command line.
        defaults_path: YAML file with the default values.

    Raises:
        pydantic.ValidationError: on unknown keys or invalid values.
        OSError: when the config file is missing or unreadable.
    """
    layers = [_defaults(defaults_path)]
    if config_path:
        if not Path(config_path).is_file():
            raise FileNotFoundError(f"config file not found: {config_path}")
        layers.append(OmegaConf.load(config_path))
    if overrides:
        layers.append(OmegaConf.create(overrides))
    merged = OmegaConf.merge(*layers)
    container = OmegaConf.to_container(merged, resolve=True)
    return RunConfig.model_validate(container)
