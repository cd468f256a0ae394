"""
Run ledger.

Each CLI invocation may append one record (mode, seed, verdict and the
summary numbers of the run) to a daily JSONL file. The ledger sits beside the
deterministic report outputs and never feeds back into them.
"""
import json
import time
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Optional

import structlog

from dirty_mac_lab.utils.serialization import jsonable

log = structlog.get_logger()


class RunTracker:
    """Appends run records to `<log_dir>/<YYYY-MM-DD>.jsonl`."""

    def __init__(self, log_dir: str = "data/run_ledger"):
        self.log_dir = Path(log_dir)
        try:
            self.log_dir.mkdir(parents=True, exist_ok=True)
            log.debug("Run ledger initialized.", log_dir=str(self.log_dir))
        except OSError as e:
            log.error("Failed to create run ledger directory.", path=str(self.log_dir), exc_info=e)

    def log_file_path(self, now: Optional[datetime] = None) -> Path:
        """Path of the ledger file for `now` (UTC today by default)."""
        now = now or datetime.now(timezone.utc)
        return self.log_dir / f"{now.strftime('%Y-%m-%d')}.jsonl"

    def log_run(self, mode: str, seed: int, passed: bool, summary: Dict[str, Any]) -> bool:
        """
        Writes one record. Returns False (after logging) when the write fails;
        a broken ledger never aborts a run.
        """
        record = {
            "timestamp_utc": time.time(),
            "mode": mode,
            "seed": seed,
            "passed": passed,
            "summary": jsonable(summary),
        }
        try:
            with self.log_file_path().open("a", encoding="utf-8") as fp:
                fp.write(json.dumps(record, ensure_ascii=False, allow_nan=False) + "\n")
        except (OSError, ValueError) as e:
            log.error("Failed to write to run ledger.", mode=mode, exc_info=e)
            return False
        return True
