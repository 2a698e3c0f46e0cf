"""Numerical checks of the imaging identities.

Each check returns a :class:`CheckResult` whose ``value`` must stay below its
tolerance. Checks are deterministic functions of their arguments.
"""

import math

import numpy as np
from numpy.typing import NDArray

from aeroimaging.array.geometry import FocusGrid, MicArray, factor_pair
from aeroimaging.array.operators import (
    Csm,
    PropagationMatrix,
    SourceMap,
    adjoint_csm,
    forward_csm,
    monopole_matrix,
    propagation_matrix,
    steering_matrix,
    vec_linearization,
)
from aeroimaging.config.scenario import Scenario
from aeroimaging.physics.farfield import farfield_leading
from aeroimaging.physics.flow import FlowConfig, aligned_frame, mach_norm, mach_unit
from aeroimaging.physics.greens import greens, lorentz_reference
from aeroimaging.physics.hankel import hankel_h1_0
from aeroimaging.recon.beamforming import beamform, psf_matrix
from aeroimaging.recon.cmf import cmf_gradient, cmf_objective, cmf_solve, normal_matrix
from aeroimaging.recon.damas import damas_gauss_seidel, damas_tikhonov
from aeroimaging.recon.solvers import ReconConfig
from aeroimaging.synth.snapshots import SnapshotEnsemble, estimate_csm, simulate_ensemble
from aeroimaging.verify.oracles import hankel_oracle
from aeroimaging.verify.report import CheckResult

ASYMPTOTIC_RADII = np.geomspace(1e2, 1e4, 9)
MC_LEVELS = (100, 400, 1600)
MC_EXPECTED_RATIO = 0.55
EXACT_SOLVER_TOL = 1e-15
EXACT_SOLVER_MAX_ITER = 20000


def small_geometry(
    mics: int, points: int, flow: FlowConfig
) -> tuple[MicArray, FocusGrid, PropagationMatrix]:
    """Planar lattice array at z = 0 and a lattice grid of ``points`` cells at z = 1."""
    array = MicArray.lattice(mics, 1.0, dimension=3)
    rows, cols = factor_pair(points)
    spacing = 0.2
    half_x = 0.5 * spacing * (rows - 1)
    half_y = 0.5 * spacing * (cols - 1)
    grid = FocusGrid.regular((-half_x, -half_y, 1.0), (half_x, half_y, 1.0), spacing)
    return array, grid, propagation_matrix(array, grid, flow)


def _random_hermitian(rng: np.random.Generator, m: int) -> NDArray[np.complex128]:
    a = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    result: NDArray[np.complex128] = 0.5 * (a + a.conj().T)
    return result


def _random_pairs(
    rng: np.random.Generator, flow: FlowConfig, count: int, min_distance: float
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """``count`` point pairs in [-2, 2]^d at least ``min_distance`` apart (Mach norm)."""
    xs: list[NDArray[np.float64]] = []
    ys: list[NDArray[np.float64]] = []
    while len(xs) < count:
        x = rng.uniform(-2.0, 2.0, flow.dimension)
        y = rng.uniform(-2.0, 2.0, flow.dimension)
        if float(mach_norm(x - y, flow)) >= min_distance:
            xs.append(x)
            ys.append(y)
    return np.array(xs), np.array(ys)


def check_hankel(tol: float, samples: int = 500) -> CheckResult:
    """Hankel function against the high-precision series oracle on [0.1, 50]."""
    t = np.linspace(0.1, 50.0, samples)
    fast = hankel_h1_0(t)
    exact = np.array([hankel_oracle(float(v)) for v in t])
    error = np.abs(fast - exact) / np.abs(exact)
    worst = int(np.argmax(error))
    return CheckResult(
        "hankel",
        float(error[worst]),
        tol,
        f"{samples} samples on [0.1, 50]; worst at t = {t[worst]:.4g}",
    )


def check_lorentz(
    name: str, flow: FlowConfig, seed: int, tol: float, pairs: int = 100
) -> CheckResult:
    """Green's function against the Lorentz-transformed zero-flow kernel."""
    rng = np.random.default_rng([seed, flow.dimension])
    x, y = _random_pairs(rng, flow, pairs, 0.1)
    rotation, aligned = aligned_frame(flow)
    direct = greens(x, y, flow)
    reference = lorentz_reference(x @ rotation.T, y @ rotation.T, aligned)
    error = np.abs(direct - reference) / np.abs(reference)
    return CheckResult(
        name,
        float(np.max(error)),
        tol,
        f"d={flow.dimension}, |m|={flow.mach_number:g}, {pairs} random pairs",
    )


def check_asymptotics(
    name: str, flow: FlowConfig, seed: int, tol: float, samples: int = 8
) -> CheckResult:
    """Decay exponent of |g - leading term| over |x|_m in [1e2, 1e4] m.

    ``y`` is drawn uniformly from the ball of radius 0.5 and ``x`` runs along
    random directions on the Mach unit sphere. The value is the largest
    deviation of a fitted log-log slope from -(d+1)/2.
    """
    rng = np.random.default_rng([seed, flow.dimension, 7])
    d = flow.dimension
    expected = -0.5 * (d + 1)
    log_r = np.log(ASYMPTOTIC_RADII)
    slopes: list[float] = []
    for _ in range(samples):
        direction = mach_unit(rng.standard_normal(d), flow)
        offset = rng.standard_normal(d)
        y = 0.5 * rng.uniform() ** (1.0 / d) * offset / np.linalg.norm(offset)
        x = ASYMPTOTIC_RADII[:, np.newaxis] * direction
        remainder = np.abs(greens(x, y, flow) - farfield_leading(x, y, flow))
        if np.any(remainder <= 0.0):
            return CheckResult(name, math.inf, tol, "degenerate fit: zero remainder")
        slope = float(np.polyfit(log_r, np.log(remainder), 1)[0])
        slopes.append(slope)
    deviation = max(abs(s - expected) for s in slopes)
    return CheckResult(
        name,
        deviation,
        tol,
        f"expected slope {expected:g}; fitted {min(slopes):.4f}..{max(slopes):.4f}",
    )


def check_adjoint(
    flow: FlowConfig, seed: int, tol: float, mics: int = 8, points: int = 20, pairs: int = 20
) -> CheckResult:
    """<C(q), K>_F = sum_n q_n |Omega_n| (C*K)_n for random q >= 0 and Hermitian K."""
    array, grid, g = small_geometry(mics, points, flow)
    rng = np.random.default_rng([seed, 11])
    worst = 0.0
    for _ in range(pairs):
        q = SourceMap(rng.uniform(0.0, 1.0, grid.size), grid)
        k = _random_hermitian(rng, array.size)
        c = forward_csm(q, g).entries
        lhs = complex(np.vdot(k, c)).real
        rhs = float(np.sum(q.integrated() * adjoint_csm(k, array, grid, flow)))
        scale = float(np.linalg.norm(c) * np.linalg.norm(k))
        if scale > 0.0:
            worst = max(worst, abs(lhs - rhs) / scale)
    return CheckResult("adjoint", worst, tol, f"M={mics}, N={points}, {pairs} random pairs")


def check_normal_equation(scenario: Scenario, tol: float) -> CheckResult:
    """D Psi W against the normal matrix assembled column by column."""
    flow = scenario.build_flow()
    array = scenario.build_array()
    grid = scenario.build_grid()
    g = propagation_matrix(array, grid, flow)
    psf = psf_matrix(array, grid, flow)

    columns = []
    for n in range(grid.size):
        unit = np.zeros(grid.size)
        unit[n] = 1.0
        columns.append(adjoint_csm(forward_csm(SourceMap(unit, grid), g), array, grid, flow))
    direct = np.column_stack(columns)

    scaled = psf.steering_power[:, np.newaxis] * psf.entries * grid.cell_measures
    scale = float(np.max(np.abs(direct)))
    defect = float(np.max(np.abs(scaled - direct))) / scale
    assembled = float(np.max(np.abs(normal_matrix(g).entries - direct))) / scale
    return CheckResult(
        "normal_equation",
        defect,
        tol,
        f"N={grid.size}; normal_matrix vs column assembly {assembled:.2e}",
    )


def _realified(g: PropagationMatrix) -> NDArray[np.float64]:
    v = vec_linearization(g)
    return np.vstack([v.real, v.imag])


def check_injectivity(scenario: Scenario, tol: float) -> CheckResult:
    """Condition number of the vec-linearised forward map (real inputs q)."""
    g = propagation_matrix(scenario.build_array(), scenario.build_grid(), scenario.build_flow())
    sigma = np.linalg.svd(_realified(g), compute_uv=False)
    m, n = g.shape
    if n > m * m or sigma[-1] == 0.0:
        return CheckResult("injectivity", math.inf, tol, f"N={n} exceeds M^2={m * m}")
    condition = float(sigma[0] / sigma[-1])
    return CheckResult(
        "injectivity",
        condition,
        tol,
        f"M={m}, N={n}; sigma_min/sigma_max = {1.0 / condition:.3e}",
    )


def check_kernel_nonuniqueness(
    flow: FlowConfig, tol: float, mics: int = 8, points: int = 40
) -> CheckResult:
    """Correlated sources S = v v^H with v in ker(G) produce a vanishing CSM."""
    array, grid, g = small_geometry(mics, points, flow)
    _, sigma, vh = np.linalg.svd(g.entries)
    v = vh[-1].conj()
    sigma_max = float(sigma[0])
    v_norm_sq = float(np.vdot(v, v).real)
    gv = g.entries @ v
    csm = np.outer(gv, gv.conj())
    defect = float(np.linalg.norm(csm)) / (v_norm_sq * sigma_max**2)
    null_residual = float(np.linalg.norm(gv)) / (sigma_max * math.sqrt(v_norm_sq))

    diagonal = SourceMap(np.abs(v) ** 2 / grid.cell_measures, grid)
    diagonal_csm = float(np.linalg.norm(forward_csm(diagonal, g).entries))
    return CheckResult(
        "kernel_nonuniqueness",
        defect,
        tol,
        f"M={mics}, N={points}; ||Gv||/(s_max||v||) = {null_residual:.2e}; "
        f"uncorrelated diag(S) gives ||C||_F = {diagonal_csm:.3e}",
    )


def _measurement_samples(scenario: Scenario, spacing: float = 0.1) -> tuple[MicArray, float]:
    """Midpoint lattice over the array aperture and its cell area (or length)."""
    array = scenario.build_array()
    d = scenario.flow.dimension
    center = array.positions.mean(axis=0)
    if scenario.array.kind == "explicit":
        half = float(np.max(np.abs(array.positions - center)))
    else:
        half = 0.5 * scenario.array.aperture
    count = max(int(round(2.0 * half / spacing)) + 1, 2)
    axis = np.linspace(-half, half, count)
    step = float(axis[1] - axis[0])
    if d == 2:
        points = np.column_stack([center[0] + axis, np.full(count, center[1])])
        return MicArray.explicit(points), step
    xs, ys = np.meshgrid(axis, axis, indexing="ij")
    points = np.column_stack(
        [center[0] + xs.ravel(), center[1] + ys.ravel(), np.full(xs.size, center[2])]
    )
    return MicArray.explicit(points), step * step


def check_hs_bound(scenario: Scenario, seed: int, tol: float, trials: int = 10) -> CheckResult:
    """||c_q||^2 <= ||q||^2 ||kappa||^2 by midpoint quadrature.

    The value is the largest relative excess (lhs - rhs) / rhs over random maps
    and a constant map; it is negative whenever the bound holds.
    """
    flow = scenario.build_flow()
    grid = scenario.build_grid()
    samples, weight = _measurement_samples(scenario)
    s = steering_matrix(samples, grid, flow)
    measures = grid.cell_measures
    power = np.abs(s) ** 2
    kappa_sq = weight * weight * float(np.sum(power.sum(axis=0) ** 2 * measures))

    rng = np.random.default_rng([seed, 13])
    maps = [rng.uniform(0.0, 1.0, grid.size) for _ in range(trials)] + [np.ones(grid.size)]
    worst = -math.inf
    excess = 0.0
    for q in maps:
        kernel = (s * (q * measures)) @ s.conj().T
        lhs = weight * weight * float(np.sum(np.abs(kernel) ** 2))
        rhs = float(np.sum(q * q * measures)) * kappa_sq
        excess = (lhs - rhs) / rhs if rhs > 0.0 else 0.0
        worst = max(worst, excess)
    constant_gap = -excess
    return CheckResult(
        "hs_bound",
        worst,
        tol,
        f"{samples.size} measurement samples; {trials} random maps; "
        f"relative gap for constant q = {constant_gap:.3f}",
    )


def check_mc_convergence(
    scenario: Scenario, tol: float, workers: int = 1, seeds: int = 10
) -> CheckResult:
    """Median Frobenius error of the snapshot CSM at L = 100, 400, 1600.

    The value is the largest deviation of a consecutive error ratio from 0.55,
    so the check passes when every ratio lies in (0.3, 0.8).
    """
    flow = scenario.build_flow()
    grid = scenario.build_grid()
    g = propagation_matrix(scenario.build_array(), grid, flow)
    q = scenario.build_sources(grid)
    exact = forward_csm(q, g).entries
    scale = float(np.linalg.norm(exact))
    if scale == 0.0:
        return CheckResult("mc_convergence", math.inf, tol, "scenario has no sources")

    errors = np.zeros((seeds, len(MC_LEVELS)))
    for i in range(seeds):
        ensemble = simulate_ensemble(q, g, scenario.run.seed + i, MC_LEVELS[-1], workers)
        for j, level in enumerate(MC_LEVELS):
            prefix = SnapshotEnsemble(ensemble.pressures[:level], ensemble.seed, ensemble.frequency)
            errors[i, j] = np.linalg.norm(estimate_csm(prefix).entries - exact) / scale
    medians = np.median(errors, axis=0)
    ratios = medians[1:] / medians[:-1]
    deviation = float(np.max(np.abs(ratios - MC_EXPECTED_RATIO)))
    return CheckResult(
        "mc_convergence",
        deviation,
        tol,
        "median errors "
        + ", ".join(f"L={lv}: {e:.3e}" for lv, e in zip(MC_LEVELS, medians, strict=True))
        + "; ratios "
        + ", ".join(f"{r:.3f}" for r in ratios),
    )


def check_beamformer_exactness(scenario: Scenario, tol: float, power: float = 1.7) -> CheckResult:
    """Beamformer output at y_n for the exact CSM of one monopole at y_n."""
    flow = scenario.build_flow()
    array = scenario.build_array()
    grid = scenario.build_grid()
    worst = 0.0
    for n in range(grid.size):
        csm = Csm(power * monopole_matrix(n, array, grid, flow), flow.frequency)
        value = beamform(csm, array, grid, flow).values[n]
        worst = max(worst, abs(value - power) / power)
    return CheckResult("beamformer_exactness", worst, tol, f"all {grid.size} focus points")


def _random_truth(scenario: Scenario, seed: int) -> tuple[SourceMap, PropagationMatrix, Csm]:
    flow = scenario.build_flow()
    grid = scenario.build_grid()
    g = propagation_matrix(scenario.build_array(), grid, flow)
    rng = np.random.default_rng([seed, 17])
    truth = SourceMap(rng.uniform(0.0, 1.0, grid.size), grid)
    return truth, g, forward_csm(truth, g)


def _exact_config() -> ReconConfig:
    return ReconConfig(alpha=0.0, tol=EXACT_SOLVER_TOL, max_iter=EXACT_SOLVER_MAX_ITER)


def check_cmf_recovery(scenario: Scenario, seed: int, tol: float) -> CheckResult:
    """Noise-free CMF with alpha = 0 recovers a random q >= 0."""
    truth, g, csm = _random_truth(scenario, seed)
    result = cmf_solve(csm, g, _exact_config())
    error = float(np.linalg.norm(result.source_map.values - truth.values))
    error /= float(np.linalg.norm(truth.values))
    return CheckResult(
        "cmf_recovery",
        error,
        tol,
        f"N={truth.size}; {result.diagnostics.status} after "
        f"{result.diagnostics.iterations} iterations",
    )


def check_damas_cmf_agreement(scenario: Scenario, seed: int, tol: float) -> CheckResult:
    """DAMAS (Gauss-Seidel and regularised normal form) against CMF on exact data."""
    truth, g, csm = _random_truth(scenario, seed)
    flow, array, grid = g.flow, g.array, g.grid
    cfg = _exact_config()

    cmf = cmf_solve(csm, g, cfg).source_map.values
    beam = beamform(csm, array, grid, flow)
    gauss_seidel = damas_gauss_seidel(beam, psf_matrix(array, grid, flow), cfg)
    tikhonov = damas_tikhonov(beam, normal_matrix(g), cfg)

    scale = float(np.linalg.norm(cmf))
    gs_gap = float(np.linalg.norm(gauss_seidel.source_map.values - cmf)) / scale
    tk_gap = float(np.linalg.norm(tikhonov.source_map.values - cmf)) / scale
    return CheckResult(
        "damas_cmf_agreement",
        max(gs_gap, tk_gap),
        tol,
        f"Gauss-Seidel {gs_gap:.2e} ({gauss_seidel.diagnostics.status}); "
        f"normal-form Tikhonov {tk_gap:.2e} ({tikhonov.diagnostics.status})",
    )


def check_gradient(
    flow: FlowConfig, seed: int, tol: float, mics: int = 6, points: int = 8, samples: int = 10
) -> CheckResult:
    """CMF data-term gradient against central finite differences."""
    array, grid, g = small_geometry(mics, points, flow)
    rng = np.random.default_rng([seed, 19])
    base = forward_csm(SourceMap(rng.uniform(0.0, 1.0, grid.size), grid), g).entries
    csm = Csm(base + 0.1 * float(np.max(np.abs(base))) * np.eye(array.size), flow.frequency)

    worst = 0.0
    for _ in range(samples):
        q = rng.uniform(0.5, 1.5, grid.size)
        analytic = cmf_gradient(q, csm, g)
        numeric = np.zeros(grid.size)
        for n in range(grid.size):
            h = 1e-5 * max(1.0, abs(q[n]))
            step = np.zeros(grid.size)
            step[n] = h
            numeric[n] = (cmf_objective(q + step, csm, g) - cmf_objective(q - step, csm, g)) / (
                2.0 * h
            )
        worst = max(worst, float(np.linalg.norm(numeric - analytic) / np.linalg.norm(analytic)))
    return CheckResult("gradient", worst, tol, f"M={mics}, N={points}, {samples} points")
