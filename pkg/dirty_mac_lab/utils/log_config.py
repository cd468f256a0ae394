"""
Structured logging setup.

All modules log through `structlog.get_logger()`. The entry point calls
`configure_logging` once; log lines are JSON on stderr so that stdout only
carries report payloads.
"""
import logging
import sys

import structlog


def configure_logging(level: str = "INFO") -> None:
    """Configures structlog with JSON rendering at the given level."""
    numeric_level = logging.getLevelName(str(level).upper())
    if not isinstance(numeric_level, int):
        numeric_level = logging.INFO

    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            structlog.processors.StackInfoRenderer(),
            structlog.dev.set_exc_info,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.JSONRenderer(),
        ],
        wrapper_class=structlog.make_filtering_bound_logger(numeric_level),
        context_class=dict,
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )
