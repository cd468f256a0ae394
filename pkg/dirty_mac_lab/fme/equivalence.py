"""Cross-checks between the projected layer systems and the closed-form inner bounds."""
import math
from typing import Sequence, Tuple

from pydantic import BaseModel, ConfigDict

from dirty_mac_lab.channel.params import ChannelParams, normalize, select_cooperation_power
from dirty_mac_lab.fme.layers import build_layer_system_coop, build_layer_system_no_coop, project_to_rates
from dirty_mac_lab.regions.bounds import inner_coop, inner_no_coop
from dirty_mac_lab.regions.polytope import Point, RateRegion, vertices

FME_TOL = 1e-9
COLLAPSE_TOL = 1e-12


def vertex_distance(a: Sequence[Point], b: Sequence[Point]) -> float:
    """Largest per-coordinate difference between two vertex lists in order; +inf if their sizes differ."""
    if len(a) != len(b):
        return math.inf
    return max((max(abs(u1 - v1), abs(u2 - v2)) for (u1, u2), (v1, v2) in zip(a, b)), default=0.0)


def region_distance(a: RateRegion, b: RateRegion) -> float:
    return vertex_distance(vertices(a), vertices(b))


def fme_errors(p: ChannelParams) -> Tuple[float, float]:
    """Vertex distance between the projected layer systems and the closed forms (no-coop, coop)."""
    p = normalize(p)
    s = select_cooperation_power(p)
    no_coop = region_distance(project_to_rates(build_layer_system_no_coop(p)), inner_no_coop(p))
    coop = region_distance(project_to_rates(build_layer_system_coop(p, s)), inner_coop(p, s))
    return no_coop, coop


def collapse_error(p: ChannelParams) -> float:
    """Vertex distance between inner_coop and inner_no_coop once Cb21 is set to 0."""
    p = normalize(p).model_copy(update={"Cb21": 0.0})
    return region_distance(inner_coop(p, select_cooperation_power(p)), inner_no_coop(p))


class EquivalenceSummary(BaseModel):
    model_config = ConfigDict(frozen=True)

    count: int
    fme_no_coop_mismatches: int
    fme_coop_mismatches: int
    collapse_mismatches: int
    max_fme_error: float
    max_collapse_error: float

    @property
    def passed(self) -> bool:
        return (self.fme_no_coop_mismatches == 0 and self.fme_coop_mismatches == 0
                and self.collapse_mismatches == 0)


def check_equivalence(points: Sequence[ChannelParams]) -> EquivalenceSummary:
    no_coop_bad = coop_bad = collapse_bad = 0
    max_fme = max_collapse = 0.0
    for p in points:
        err_nc, err_c = fme_errors(p)
        err_collapse = collapse_error(p)
        no_coop_bad += err_nc > FME_TOL
        coop_bad += err_c > FME_TOL
        collapse_bad += err_collapse > COLLAPSE_TOL
        max_fme = max(max_fme, err_nc, err_c)
        max_collapse = max(max_collapse, err_collapse)
    return EquivalenceSummary(
        count=len(points),
        fme_no_coop_mismatches=no_coop_bad,
        fme_coop_mismatches=coop_bad,
        collapse_mismatches=collapse_bad,
        max_fme_error=max_fme,
        max_collapse_error=max_collapse,
    )
