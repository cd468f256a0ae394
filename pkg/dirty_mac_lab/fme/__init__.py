from dirty_mac_lab.fme.equivalence import check_equivalence, collapse_error, fme_errors
from dirty_mac_lab.fme.layers import build_layer_system_coop, build_layer_system_no_coop, project_to_rates
from dirty_mac_lab.fme.system import LinearSystem, fme_eliminate, system_from_dicts

__all__ = [
    "LinearSystem",
    "build_layer_system_coop",
    "build_layer_system_no_coop",
    "check_equivalence",
    "collapse_error",
    "fme_eliminate",
    "fme_errors",
    "project_to_rates",
    "system_from_dicts",
]
