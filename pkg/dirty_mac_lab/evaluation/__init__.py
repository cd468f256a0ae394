from dirty_mac_lab.evaluation.tracker import RunTracker

__all__ = ["RunTracker"]
