from dirty_mac_lab.cli.commands import (
    COMMANDS,
    CommandResult,
    cmd_point,
    cmd_regions_plotdata,
    cmd_simulate,
    cmd_sweep,
    cmd_verify,
)
from dirty_mac_lab.cli.config import RunConfig, load_config

__all__ = [
    "COMMANDS",
    "CommandResult",
    "RunConfig",
    "cmd_point",
    "cmd_regions_plotdata",
    "cmd_simulate",
    "cmd_sweep",
    "cmd_verify",
    "load_config",
]
