from dirty_mac_lab.sim.claim import claim1_mi_check, claim1_report
from dirty_mac_lab.sim.lattice import ScalarLattice, lattice_for_power, mod_lattice
from dirty_mac_lab.sim.layers import SimReport, SimThresholds, run_layer_C, run_layer_L, run_layer_R

__all__ = [
    "ScalarLattice",
    "SimReport",
    "SimThresholds",
    "claim1_mi_check",
    "claim1_report",
    "lattice_for_power",
    "mod_lattice",
    "run_layer_C",
    "run_layer_L",
    "run_layer_R",
]
