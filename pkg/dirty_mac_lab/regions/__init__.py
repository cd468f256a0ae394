from dirty_mac_lab.regions.bounds import (
    LayerRates,
    inner_coop,
    inner_no_coop,
    layer_rates,
    outer_coop,
    outer_no_coop,
)
from dirty_mac_lab.regions.polytope import (
    HalfPlane,
    RateRegion,
    cfun,
    contains,
    log2_plus,
    positive_part,
    to_payload,
    vertices,
    violation,
)

__all__ = [
    "HalfPlane",
    "LayerRates",
    "RateRegion",
    "cfun",
    "contains",
    "inner_coop",
    "inner_no_coop",
    "layer_rates",
    "log2_plus",
    "outer_coop",
    "outer_no_coop",
    "positive_part",
    "to_payload",
    "vertices",
    "violation",
]
