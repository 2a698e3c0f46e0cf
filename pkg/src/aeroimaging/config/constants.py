"""Constants for the application: defaults, tolerances, messages."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Constants:
    """Centralized constants."""

    # Default scenario (wind-tunnel conditions at f = 8 kHz, |m| = 0.15)
    DEFAULT_SOUND_SPEED: float = 343.0
    DEFAULT_FREQUENCY: float = 8000.0
    DEFAULT_MACH: float = 0.15
    DEFAULT_MIC_COUNT: int = 16
    DEFAULT_APERTURE: float = 1.0
    DEFAULT_FOCUS_DISTANCE: float = 1.0
    DEFAULT_GRID_HALF_WIDTH: float = 0.5
    DEFAULT_GRID_SPACING: float = 0.25
    DEFAULT_SEED: int = 20200101
    DEFAULT_SNAPSHOTS: int = 1000
    DEFAULT_THRESHOLD: float = 0.1

    # Numerical tolerances
    SINGULAR_DISTANCE: float = 1e-9
    HERMITIAN_RTOL: float = 1e-12
    PSD_RTOL: float = 1e-10
    UNIT_DIRECTION_TOL: float = 1e-12
    GEOMETRY_TOL: float = 1e-12
    HANKEL_SWITCHOVER: float = 12.0
    HANKEL_SERIES_TERMS: int = 48
    HANKEL_ASYMPTOTIC_MIN_TERMS: int = 8
    HANKEL_ASYMPTOTIC_MAX_TERMS: int = 64
    STAGNATION_RTOL: float = 1e-15
    ARMIJO_SIGMA: float = 1e-4
    MAX_BACKTRACKS: int = 60

    # Solver defaults
    DEFAULT_MAX_ITER: int = 1000
    DEFAULT_TOL: float = 1e-10

    # Logging
    APP_DIR_NAME: str = ".aeroimaging"
    LOG_DIR_NAME: str = "logs"
    LOG_FILE_NAME: str = "aeroimaging.log"
    LOG_MAX_BYTES: int = 1_000_000
    LOG_BACKUP_COUNT: int = 3
    LOG_FORMAT: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

    # Runtime settings
    THREADS_ENV_VAR: str = "AEROIMAGING_THREADS"

    # Exit codes
    EXIT_OK: int = 0
    EXIT_FAILED: int = 1
    EXIT_USAGE: int = 2
    EXIT_IO: int = 3
    EXIT_SOLVER: int = 4

    # File formats
    CSM_MAGIC: str = "# csm v1"
    MAP_MAGIC: str = "# source-map v1"
    NORMALIZED_SUFFIX: str = ".normalized.txt"
    REPORT_TEXT_NAME: str = "report.txt"
    REPORT_SUMMARY_NAME: str = "summary.json"
    REPORT_TEMPLATE: str = "report.txt.j2"

    # Error messages
    ERROR_SCENARIO_NOT_FOUND: str = "Scenario file not found: {path}"
    ERROR_CSM_MISMATCH: str = "CSM has {csm} microphones but the scenario array has {array}"
    ERROR_INDEX_RANGE: str = "Focus index {index} out of range for a grid of {count} points"
    ERROR_THREADS: str = "{var} must be a positive integer, got {value!r}"

    # Console messages
    MSG_CSM_WRITTEN: str = "Wrote CSM ({m}x{m}, {snapshots} snapshots) to {path}"
    MSG_MAP_WRITTEN: str = "Wrote {method} map ({n} points) to {path}"
    MSG_SOLVER_STATUS: str = "{method}: {status} after {iterations} iterations"
    MSG_SOLVER_FAILED: str = "{method} did not converge ({status}); partial map written"
    MSG_VERIFY_PASSED: str = "All {count} checks passed"
    MSG_VERIFY_FAILED: str = "{failed} of {count} checks failed"
    MSG_REPORT_WRITTEN: str = "Report written to {path}"
    MSG_PSF_WRITTEN: str = "Wrote PSF column for focus point {index} ({n} points) to {path}"
    MSG_FREQUENCY_MISMATCH: str = "CSM frequency {csm} Hz differs from the scenario ({flow} Hz)"
    MSG_CANCELLED: str = "Cancelled."

    # Verify output
    DEFAULT_REPORT_DIR: str = "verify_report"
