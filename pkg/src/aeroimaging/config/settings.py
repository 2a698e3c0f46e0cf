"""Runtime settings taken from the environment."""

import os
from collections.abc import Mapping
from dataclasses import dataclass

from aeroimaging.config.constants import Constants


class ConfigError(Exception):
    """Raised when configuration is invalid or missing."""


@dataclass(frozen=True)
class Settings:
    """Process-wide runtime settings.

    Only the worker-thread count is configurable; everything that influences
    results lives in the scenario file.
    """

    workers: int = 1

    @classmethod
    def load(cls, environ: Mapping[str, str] | None = None) -> "Settings":
        """Load settings from environment variables.

        Args:
            environ: Environment mapping. Defaults to ``os.environ``.

        Returns:
            Settings instance.

        Raises:
            ConfigError: If the thread count is not a positive integer.
        """
        env = os.environ if environ is None else environ
        raw = env.get(Constants.THREADS_ENV_VAR)
        if raw is None or not raw.strip():
            return cls()

        try:
            workers = int(raw)
        except ValueError as e:
            raise ConfigError(
                Constants.ERROR_THREADS.format(var=Constants.THREADS_ENV_VAR, value=raw)
            ) from e
        if workers < 1:
            raise ConfigError(
                Constants.ERROR_THREADS.format(var=Constants.THREADS_ENV_VAR, value=raw)
            )
        return cls(workers=workers)
