from dirty_mac_lab.channel.params import (
    ChannelParams,
    SchemeParams,
    db_to_linear,
    no_cooperation_scheme,
    normalize,
    select_cooperation_power,
)

__all__ = [
    "ChannelParams",
    "SchemeParams",
    "db_to_linear",
    "no_cooperation_scheme",
    "normalize",
    "select_cooperation_power",
]
