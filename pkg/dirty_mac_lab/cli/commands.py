"""
Mode handlers behind the command-line entry point.

Each handler takes a validated `RunConfig` and returns a `CommandResult`:
the report text for stdout (or `--out`), the process exit code (0 pass,
1 failed check) and a small summary for the run ledger. Handlers raise on
invalid input; `main` maps those errors to exit code 2.
"""
import io
from pathlib import Path
from typing import Any, Callable, Dict, List, NamedTuple

import pandas as pd
import structlog

from dirty_mac_lab.channel.params import ChannelParams, normalize, select_cooperation_power
from dirty_mac_lab.cli.config import RunConfig
from dirty_mac_lab.fme.equivalence import check_equivalence
from dirty_mac_lab.gap.sweep import reports_frame, run_sweep, sample_sweep, summarize
from dirty_mac_lab.gap.verify import verify_theorems
from dirty_mac_lab.regions.bounds import layer_rates
from dirty_mac_lab.regions.polytope import to_payload, vertices
from dirty_mac_lab.sim.claim import claim1_report
from dirty_mac_lab.sim.layers import SimReport, run_layer_C, run_layer_L, run_layer_R
from dirty_mac_lab.utils.serialization import dumps, jsonable

log = structlog.get_logger()

CSV_HEADER = "# dirty-mac-lab v1"
DEFAULT_PLOTDATA_DIR = "plotdata"


class CommandResult(NamedTuple):
    text: str
    exit_code: int
    summary: Dict[str, Any]

    @property
    def passed(self) -> bool:
        return self.exit_code == 0


def _csv(frame: pd.DataFrame, footer: str = "") -> str:
    buf = io.StringIO()
    buf.write(CSV_HEADER + "\n")
    frame.to_csv(buf, index=False, lineterminator="\n")
    if footer:
        buf.write(footer + "\n")
    return buf.getvalue()


def _point_params(cfg: RunConfig) -> ChannelParams:
    return normalize(cfg.point.to_params())


def cmd_point(cfg: RunConfig) -> CommandResult:
    """All four regions, the scheme parameters and the gap report for one channel."""
    p = _point_params(cfg)
    s = select_cooperation_power(p)
    report = verify_theorems(p)
    summary = report.summary()
    exit_code = 0 if report.passed else 1

    if cfg.format == "csv":
        return CommandResult(_csv(reports_frame([report])), exit_code, summary)

    payload = {
        "input": cfg.point.model_dump(),
        "params": p,
        "swapped": p.swapped,
        "scheme": s,
        "layer_rates": layer_rates(p, s),
        "regions": {name: to_payload(r) for name, r in report.regions.items()},
        "gap": summary,
    }
    return CommandResult(dumps(payload), exit_code, summary)


def cmd_sweep(cfg: RunConfig) -> CommandResult:
    """One row per sampled channel, in input order, with a violation footer."""
    points = sample_sweep(cfg.sweep.to_ranges(), cfg.sweep.count, cfg.seed)
    log.info("Running sweep.", count=len(points), jobs=cfg.jobs)
    reports = run_sweep(points, jobs=cfg.jobs)
    summary = summarize(reports)
    exit_code = 0 if summary["passed"] else 1

    if cfg.format == "csv":
        footer = f"# violations: {summary['violations']} max_violation: {summary['max_violation']!r}"
        return CommandResult(_csv(reports_frame(reports), footer), exit_code, summary)
    payload = {"summary": summary, "rows": [r.to_row() for r in reports]}
    return CommandResult(dumps(payload), exit_code, summary)


def _named_failures(report: SimReport, failed: List[str]) -> List[str]:
    return [f"{report.layer}:{name}" for name in failed]


def cmd_simulate(cfg: RunConfig) -> CommandResult:
    """Runs the selected layers (and optionally the worst-case-noise check) and judges them."""
    sim = cfg.simulate
    p = _point_params(cfg)
    s = select_cooperation_power(p)

    runners: Dict[str, Callable[[], SimReport]] = {
        "L": lambda: run_layer_L(p, sim.n, cfg.seed, s=s),
        "C": lambda: run_layer_C(p, s, sim.n, cfg.seed),
        "R": lambda: run_layer_R(p, s, sim.n, cfg.seed),
    }
    reports = [runners[layer]() for layer in dict.fromkeys(sim.layers)]
    if sim.claim1:
        reports.append(claim1_report(sim.claim1_power, sim.claim1_interference, sim.claim1_noise,
                                     sim.noise_family, sim.n, cfg.seed))

    failures: List[str] = []
    entries = []
    for report in reports:
        failed = report.check(cfg.thresholds)
        failures.extend(_named_failures(report, failed))
        entries.append({**report.model_dump(), "variance_rel_error": report.variance_rel_error,
                        "failed": failed})
    if failures:
        log.error("Simulation checks failed.", failed=failures)

    summary = {"n": sim.n, "layers": [r.layer for r in reports], "failed": failures,
               "passed": not failures}
    exit_code = 1 if failures else 0
    if cfg.format == "csv":
        frame = pd.DataFrame([{**e, "failed": ";".join(e["failed"])} for e in entries])
        return CommandResult(_csv(frame), exit_code, summary)
    payload = {"params": p, "scheme": s, "reports": entries, **summary}
    return CommandResult(dumps(payload), exit_code, summary)


def cmd_regions_plotdata(cfg: RunConfig) -> CommandResult:
    """
    Writes one `<region>.csv` per region (columns R1,R2) into `cfg.out`
    (default ./plotdata). Polylines are closed by repeating the first vertex;
    a single-vertex region gets a single row.
    """
    p = _point_params(cfg)
    report = verify_theorems(p)
    out_dir = Path(cfg.out or DEFAULT_PLOTDATA_DIR)
    out_dir.mkdir(parents=True, exist_ok=True)

    written = []
    for name, region in report.regions.items():
        pts = vertices(region)
        if len(pts) > 1:
            pts = pts + [pts[0]]
        path = out_dir / f"{name}.csv"
        pd.DataFrame(pts, columns=["R1", "R2"]).to_csv(path, index=False, lineterminator="\n")
        written.append(str(path))
    log.info("Wrote region polylines.", out_dir=str(out_dir), files=len(written))
    summary = {"files": written}
    return CommandResult(dumps(summary), 0, summary)


def cmd_verify(cfg: RunConfig) -> CommandResult:
    """Layer-system projection and cooperation-collapse cross-checks over random channels."""
    points = sample_sweep(cfg.sweep.to_ranges(), cfg.verify.count, cfg.seed)
    result = check_equivalence(points)
    summary = {**result.model_dump(), "passed": result.passed}
    if not result.passed:
        log.error("Equivalence checks failed.", **jsonable(result.model_dump()))
    return CommandResult(dumps(summary), 0 if result.passed else 1, summary)


COMMANDS: Dict[str, Callable[[RunConfig], CommandResult]] = {
    "point": cmd_point,
    "sweep": cmd_sweep,
    "simulate": cmd_simulate,
    "plotdata": cmd_regions_plotdata,
    "verify": cmd_verify,
}
