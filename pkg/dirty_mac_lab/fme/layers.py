"""
Layer-rate systems of the layered scheme.

Each layer contributes its own rate constraints over per-user layer rates;
the user rates are the sums over layers. Projecting onto (R1, R2) with
`fme_eliminate` yields the closed-form inner bounds.
"""
from dirty_mac_lab.channel.params import ChannelParams, SchemeParams, no_cooperation_scheme
from dirty_mac_lab.fme.system import LinearSystem, fme_eliminate, system_from_dicts
from dirty_mac_lab.regions.bounds import layer_rates
from dirty_mac_lab.regions.polytope import RateRegion

NO_COOP_VARS = ("R1L", "R2L", "R1R", "R1", "R2")
COOP_VARS = ("R1L", "R2L", "R1C", "R2C", "R1R", "R2R", "R1", "R2")


def _equals(total: str, parts) -> list:
    """total = sum(parts), as two inequalities."""
    row = {total: 1.0}
    row.update({name: -1.0 for name in parts})
    return [(row, 0.0), ({k: -v for k, v in row.items()}, 0.0)]


def build_layer_system_no_coop(p: ChannelParams) -> LinearSystem:
    rates = layer_rates(p, no_cooperation_scheme(p))
    rows = [
        ({"R1L": 1.0, "R2L": 1.0}, rates.lattice),
        ({"R1R": 1.0}, rates.relay),
        *_equals("R1", ["R1L", "R1R"]),
        *_equals("R2", ["R2L"]),
    ]
    return system_from_dicts(NO_COOP_VARS, rows)


def build_layer_system_coop(p: ChannelParams, s: SchemeParams) -> LinearSystem:
    rates = layer_rates(p, s)
    rows = [
        ({"R1L": 1.0, "R2L": 1.0}, rates.lattice),
        ({"R1C": 1.0, "R2C": 1.0}, rates.cooperation),
        ({"R1R": 1.0, "R2R": 1.0}, rates.relay),
        ({"R2R": 1.0}, rates.relay_r2_cap),
        *_equals("R1", ["R1L", "R1C", "R1R"]),
        *_equals("R2", ["R2L", "R2C", "R2R"]),
    ]
    return system_from_dicts(COOP_VARS, rows)


def project_to_rates(system: LinearSystem, name: str = "") -> RateRegion:
    """Eliminates every layer rate and reads the result as an (R1, R2) region."""
    return fme_eliminate(system, ["R1", "R2"]).to_region(name=name)
