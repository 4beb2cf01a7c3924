import logging
from logging.handlers import RotatingFileHandler
from typing import Optional
from settings import APP_NAME, BUILD_VERSION

LOG_FORMAT = "%(asctime)s %(levelname)s %(filename)s:%(lineno)d: %(message)s"
LOG_DATETIME = "%Y-%m-%d %H:%M:%S"


def init_logger(level: int = logging.INFO, log_path: Optional[str] = None):
    """Diagnostics go to stderr and optionally a rotating file; stdout carries command results only."""
    handlers: list[logging.Handler] = [logging.StreamHandler()]
    if log_path:
        handlers.append(RotatingFileHandler(log_path, maxBytes=1024*1024, backupCount=5))

    logging.basicConfig(
        handlers=handlers,
        level=level,
        format=LOG_FORMAT,
        datefmt=LOG_DATETIME,
        force=True
    )
    logging.debug(f"{APP_NAME} {BUILD_VERSION}")
