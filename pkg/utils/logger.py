import logging
import os
import sys
import structlog


def get_logger(name: str) -> structlog.stdlib.BoundLogger:
    """
    Configures and returns a structured logger.

    Configuration happens once per process; every module then gets
    JSON-formatted events on stderr so CLI output on stdout stays clean.
    """
    if not structlog.is_configured():
        structlog.configure(
            processors=[
                structlog.stdlib.filter_by_level,
                structlog.stdlib.add_logger_name,
                structlog.stdlib.add_log_level,
                structlog.processors.TimeStamper(fmt="iso"),
                structlog.processors.StackInfoRenderer(),
                structlog.processors.format_exc_info,
                structlog.processors.JSONRenderer(),
            ],
            context_class=dict,
            logger_factory=structlog.stdlib.LoggerFactory(),
            wrapper_class=structlog.stdlib.BoundLogger,
            cache_logger_on_first_use=True,
        )
        handler = logging.StreamHandler(sys.stderr)
        root_logger = logging.getLogger()
        root_logger.addHandler(handler)
        root_logger.setLevel(os.getenv("DELAY_DD_LOG_LEVEL", "INFO").upper())

    return structlog.get_logger(name)


def set_log_level(level: str) -> None:
    """Change the root log level after configuration (used by the CLI)."""
    logging.getLogger().setLevel(level.upper())
