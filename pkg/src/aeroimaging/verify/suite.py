"""The verify suite: every numerical check in a fixed order."""

import logging
import time
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor

from aeroimaging.config.scenario import Scenario
from aeroimaging.physics.flow import FlowConfig
from aeroimaging.verify import checks
from aeroimaging.verify.report import CheckResult, DiagnosticReport

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCES: dict[str, float] = {
    "hankel": 1e-10,
    "lorentz_3d_m0.15": 1e-10,
    "lorentz_2d_m0.3": 1e-10,
    "lorentz_3d_m0.6": 1e-10,
    "asymptotics_3d": 0.1,
    "asymptotics_2d": 0.1,
    "asymptotics_3d_noflow": 0.1,
    "adjoint": 1e-12,
    "normal_equation": 1e-12,
    "injectivity": 1e10,
    "kernel_nonuniqueness": 1e-10,
    "hs_bound": 1e-9,
    "mc_convergence": 0.25,
    "beamformer_exactness": 1e-12,
    "cmf_recovery": 1e-6,
    "damas_cmf_agreement": 1e-5,
    "gradient": 1e-5,
}

CHECK_NAMES: tuple[str, ...] = tuple(DEFAULT_TOLERANCES)

ResultCallback = Callable[[CheckResult], None]
CheckTask = Callable[[], CheckResult]


def _three_d(flow: FlowConfig) -> FlowConfig:
    """The scenario flow if it is 3D, else a 3D flow with the same speed along x."""
    if flow.dimension == 3:
        return flow
    return FlowConfig(
        (flow.mach_number, 0.0, 0.0), sound_speed=flow.sound_speed, frequency=flow.frequency
    )


def _axis_flow(mach: float, dimension: int, reference: FlowConfig) -> FlowConfig:
    mach_vector = (mach,) + (0.0,) * (dimension - 1)
    return FlowConfig(
        mach_vector, sound_speed=reference.sound_speed, frequency=reference.frequency
    )


def build_tasks(scenario: Scenario, workers: int = 1) -> list[tuple[str, CheckTask]]:
    """Check closures in suite order, bound to the scenario's seed and tolerances.

    Args:
        scenario: Validated scenario; its geometry feeds the scenario-level checks.
        workers: Worker threads for the Monte-Carlo check.

    Returns:
        ``(name, task)`` pairs; every task returns a :class:`CheckResult`.
    """
    seed = scenario.run.seed
    flow = scenario.build_flow()
    flow_3d = _three_d(flow)

    def tol(name: str) -> float:
        return scenario.tolerance(name, DEFAULT_TOLERANCES[name])

    tasks: dict[str, CheckTask] = {
        "hankel": lambda: checks.check_hankel(tol("hankel")),
        "lorentz_3d_m0.15": lambda: checks.check_lorentz(
            "lorentz_3d_m0.15", _axis_flow(0.15, 3, flow), seed, tol("lorentz_3d_m0.15")
        ),
        "lorentz_2d_m0.3": lambda: checks.check_lorentz(
            "lorentz_2d_m0.3", _axis_flow(0.3, 2, flow), seed, tol("lorentz_2d_m0.3")
        ),
        "lorentz_3d_m0.6": lambda: checks.check_lorentz(
            "lorentz_3d_m0.6", _axis_flow(0.6, 3, flow), seed, tol("lorentz_3d_m0.6")
        ),
        "asymptotics_3d": lambda: checks.check_asymptotics(
            "asymptotics_3d", flow_3d, seed, tol("asymptotics_3d")
        ),
        "asymptotics_2d": lambda: checks.check_asymptotics(
            "asymptotics_2d", _axis_flow(flow.mach_number, 2, flow), seed, tol("asymptotics_2d")
        ),
        "asymptotics_3d_noflow": lambda: checks.check_asymptotics(
            "asymptotics_3d_noflow",
            _axis_flow(0.0, 3, flow),
            seed,
            tol("asymptotics_3d_noflow"),
        ),
        "adjoint": lambda: checks.check_adjoint(flow_3d, seed, tol("adjoint")),
        "normal_equation": lambda: checks.check_normal_equation(scenario, tol("normal_equation")),
        "injectivity": lambda: checks.check_injectivity(scenario, tol("injectivity")),
        "kernel_nonuniqueness": lambda: checks.check_kernel_nonuniqueness(
            flow_3d, tol("kernel_nonuniqueness")
        ),
        "hs_bound": lambda: checks.check_hs_bound(scenario, seed, tol("hs_bound")),
        "mc_convergence": lambda: checks.check_mc_convergence(
            scenario, tol("mc_convergence"), workers
        ),
        "beamformer_exactness": lambda: checks.check_beamformer_exactness(
            scenario, tol("beamformer_exactness")
        ),
        "cmf_recovery": lambda: checks.check_cmf_recovery(scenario, seed, tol("cmf_recovery")),
        "damas_cmf_agreement": lambda: checks.check_damas_cmf_agreement(
            scenario, seed, tol("damas_cmf_agreement")
        ),
        "gradient": lambda: checks.check_gradient(flow_3d, seed, tol("gradient")),
    }
    return [(name, tasks[name]) for name in CHECK_NAMES]


def _run_timed(name: str, task: CheckTask) -> CheckResult:
    start = time.perf_counter()
    result = task()
    runtime = time.perf_counter() - start
    logger.info(
        "check %s: value=%.3e tolerance=%.3e %s (%.2fs)",
        name,
        result.value,
        result.tolerance,
        "PASS" if result.passed else "FAIL",
        runtime,
    )
    return result.timed(runtime)


def run_suite(
    scenario: Scenario,
    workers: int = 1,
    on_result: ResultCallback | None = None,
) -> DiagnosticReport:
    """Run every check against ``scenario`` and collect the results in suite order.

    Checks run concurrently on ``workers`` threads; each check is a deterministic
    function of the scenario, so the report does not depend on scheduling.

    Args:
        scenario: Validated scenario.
        workers: Thread count (from ``Settings.workers``).
        on_result: Called with each result as the suite collects it.

    Returns:
        The diagnostic report.
    """
    tasks = build_tasks(scenario, workers)
    logger.info(
        "Verify suite: %d checks, seed=%d, workers=%d", len(tasks), scenario.run.seed, workers
    )
    results: list[CheckResult] = []
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_run_timed, name, task) for name, task in tasks]
        for future in futures:
            result = future.result()
            results.append(result)
            if on_result is not None:
                on_result(result)
    return DiagnosticReport(tuple(results), scenario.run.seed)
