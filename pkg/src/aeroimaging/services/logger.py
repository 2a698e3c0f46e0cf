"""Centralized logging with rotating file support."""

import logging
from collections.abc import Mapping
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Any

from aeroimaging.config.constants import Constants

PACKAGE_LOGGER = "aeroimaging"


class Logger:
    """Singleton owner of the package's rotating log file.

    The handler sits on the package root logger, so module loggers created with
    ``logging.getLogger(__name__)`` inside ``aeroimaging`` write to the same file.
    Nothing is printed to the console; user-facing output goes through rich.
    """

    _instance: "Logger | None" = None
    _initialized: bool = False

    LOG_DIR = Path.home() / Constants.APP_DIR_NAME / Constants.LOG_DIR_NAME

    def __new__(cls) -> "Logger":
        """Singleton pattern - one logger instance."""
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self) -> None:
        """Initialize logger (only runs once due to singleton)."""
        if Logger._initialized:
            return
        Logger._initialized = True

        self._root = logging.getLogger(PACKAGE_LOGGER)
        self._root.setLevel(logging.DEBUG)
        self._log_dir = self.LOG_DIR
        self._handler = self._attach(self._log_dir)

    def _attach(self, log_dir: Path) -> RotatingFileHandler:
        """Create the rotating file handler in ``log_dir`` and attach it."""
        log_dir.mkdir(parents=True, exist_ok=True)
        handler = RotatingFileHandler(
            log_dir / Constants.LOG_FILE_NAME,
            maxBytes=Constants.LOG_MAX_BYTES,
            backupCount=Constants.LOG_BACKUP_COUNT,
            encoding="utf-8",
        )
        handler.setLevel(logging.DEBUG)
        handler.setFormatter(logging.Formatter(Constants.LOG_FORMAT))
        self._root.addHandler(handler)
        return handler

    def redirect(self, log_dir: Path) -> None:
        """Move the log file to another directory.

        Args:
            log_dir: New directory for the rotating log file.
        """
        self._root.removeHandler(self._handler)
        self._handler.close()
        self._log_dir = log_dir
        self._handler = self._attach(log_dir)

    def child(self, name: str) -> logging.Logger:
        """Get a logger below the package root (e.g. ``cli.synth``)."""
        return self._root.getChild(name)

    def info(self, msg: str, *args: Any) -> None:
        """Log info message."""
        self._root.info(msg, *args)

    def exception(self, msg: str, *args: Any) -> None:
        """Log exception with traceback."""
        self._root.exception(msg, *args)

    def log_context(self, title: str, values: Mapping[str, object]) -> None:
        """Log a one-line ``title: key=value, ...`` record with sorted keys.

        Args:
            title: Record prefix (e.g. "synth").
            values: Context values; rendered with ``repr`` for floats.
        """
        body = ", ".join(f"{key}={values[key]!r}" for key in sorted(values))
        self._root.info("%s: %s", title, body)

    @property
    def log_dir(self) -> Path:
        """Get the log directory path."""
        return self._log_dir


def get_logger() -> Logger:
    """Get the singleton logger instance."""
    return Logger()
