"""End-to-end tests for the command-line interface."""

import json
from pathlib import Path

import numpy as np
import pytest

from aeroimaging.array.operators import PropagationMatrix, SourceMap, forward_csm
from aeroimaging.config.scenario import Scenario
from aeroimaging.formats.csm_file import read_csm, write_csm
from aeroimaging.formats.map_file import read_map, write_map
from aeroimaging.main import main
from aeroimaging.verify import suite
from aeroimaging.verify.report import CheckResult
from aeroimaging.verify.suite import CHECK_NAMES

EXACT_SOLVER = ["--max-iter", "20000", "--tol", "1e-12"]


@pytest.fixture(autouse=True)
def single_thread(monkeypatch: pytest.MonkeyPatch) -> None:
    """Run every command with the default worker count."""
    monkeypatch.delenv("AEROIMAGING_THREADS", raising=False)


@pytest.fixture
def scenario_file(tmp_path: Path) -> Path:
    """Default scenario with a short snapshot run."""
    path = tmp_path / "short.toml"
    path.write_text("[run]\nsnapshots = 64\n")
    return path


@pytest.fixture
def exact_csm(tmp_path: Path) -> Path:
    """Noise-free CSM of the built-in scenario."""
    path = tmp_path / "exact.csm"
    assert main(["synth", "--exact", "--out", str(path)]) == 0
    return path


class TestSynth:
    """Tests for the synth command."""

    def test_same_seed_same_bytes(self, tmp_path: Path, scenario_file: Path) -> None:
        """Test that two runs with one seed write identical files."""
        first, second = tmp_path / "a.csm", tmp_path / "b.csm"

        assert main(["synth", "--scenario", str(scenario_file), "--out", str(first)]) == 0
        assert main(["synth", "--scenario", str(scenario_file), "--out", str(second)]) == 0

        assert first.read_bytes() == second.read_bytes()
        assert read_csm(first).snapshots == 64

    def test_worker_count_does_not_change_output(
        self, tmp_path: Path, scenario_file: Path, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        """Test that the thread count leaves the CSM unchanged."""
        single, threaded = tmp_path / "one.csm", tmp_path / "four.csm"

        assert main(["synth", "--scenario", str(scenario_file), "--out", str(single)]) == 0
        monkeypatch.setenv("AEROIMAGING_THREADS", "4")
        assert main(["synth", "--scenario", str(scenario_file), "--out", str(threaded)]) == 0

        assert single.read_bytes() == threaded.read_bytes()

    def test_seed_override(self, tmp_path: Path, scenario_file: Path) -> None:
        """Test that --seed changes the simulated snapshots."""
        base, other = tmp_path / "a.csm", tmp_path / "b.csm"

        main(["synth", "--scenario", str(scenario_file), "--out", str(base)])
        main(["synth", "--scenario", str(scenario_file), "--seed", "5", "--out", str(other)])

        assert base.read_bytes() != other.read_bytes()

    def test_exact(self, exact_csm: Path) -> None:
        """Test that --exact writes the model CSM with zero snapshots."""
        csm = read_csm(exact_csm)

        assert csm.size == 16
        assert csm.snapshots == 0
        assert csm.frequency == 8000.0

    def test_invalid_toml(self, tmp_path: Path) -> None:
        """Test that a TOML syntax error exits with 3."""
        path = tmp_path / "broken.toml"
        path.write_text("[run\n")

        assert main(["synth", "--scenario", str(path), "--out", str(tmp_path / "c")]) == 3

    def test_missing_scenario(self, tmp_path: Path) -> None:
        """Test that a missing scenario file exits with 3."""
        absent = tmp_path / "absent.toml"

        assert main(["synth", "--scenario", str(absent), "--out", str(tmp_path / "c")]) == 3

    def test_invalid_scenario(self, tmp_path: Path) -> None:
        """Test that a supersonic flow exits with 2."""
        path = tmp_path / "fast.toml"
        path.write_text("[flow]\nmach = [1.5, 0.0, 0.0]\n")

        assert main(["synth", "--scenario", str(path), "--out", str(tmp_path / "c")]) == 2

    def test_sources_from_map(self, tmp_path: Path, exact_csm: Path) -> None:
        """Test that a map of the default sources reproduces the default exact CSM."""
        scenario = Scenario.default()
        sources = tmp_path / "sources.txt"
        write_map(sources, scenario.build_sources(scenario.build_grid()))
        out = tmp_path / "from_map.csm"

        assert main(["synth", "--exact", "--sources", str(sources), "--out", str(out)]) == 0

        assert out.read_bytes() == exact_csm.read_bytes()

    def test_sources_on_other_grid(self, tmp_path: Path, propagation: PropagationMatrix) -> None:
        """Test that a map from another focus grid exits with 3."""
        sources = tmp_path / "nine.txt"
        write_map(sources, SourceMap.point_sources(propagation.grid, {0: 1.0}))

        code = main(["synth", "--sources", str(sources), "--out", str(tmp_path / "c")])

        assert code == 3

    def test_signed_sources_rejected(self, tmp_path: Path, exact_csm: Path) -> None:
        """Test that a signed beamformer map cannot be used as source powers."""
        beam = tmp_path / "beam.txt"
        assert main(["beamform", "--csm", str(exact_csm), "--out", str(beam)]) == 0

        code = main(["synth", "--exact", "--sources", str(beam), "--out", str(tmp_path / "c")])

        assert code == 2

    def test_usage_error(self) -> None:
        """Test that a missing required option is an argparse usage error."""
        with pytest.raises(SystemExit) as exc_info:
            main(["synth"])

        assert exc_info.value.code == 2


class TestReconstruct:
    """Tests for beamform, damas and cmf."""

    def test_beamform(self, tmp_path: Path, exact_csm: Path) -> None:
        """Test that beamforming writes a signed raw map and a normalised map."""
        out = tmp_path / "beam.txt"

        code = main(["beamform", "--csm", str(exact_csm), "--out", str(out), "--normalize"])

        assert code == 0
        raw = read_map(out)
        normalized = read_map(tmp_path / "beam.normalized.txt")
        assert raw.signed
        assert raw.size == 25
        assert int(raw.values.argmax()) == 6
        assert normalized.peak == pytest.approx(float(raw.values.max()))
        assert normalized.visible is not None
        assert normalized.visible[6]

    @pytest.mark.parametrize("solver", ["gauss-seidel", "tikhonov"])
    def test_damas(self, tmp_path: Path, exact_csm: Path, solver: str) -> None:
        """Test that DAMAS recovers the two default sources from exact data."""
        out = tmp_path / "damas.txt"

        code = main(
            ["damas", "--csm", str(exact_csm), "--out", str(out), "--solver", solver]
            + EXACT_SOLVER
        )

        assert code == 0
        values = read_map(out).values
        assert values[6] == pytest.approx(1.0, rel=1e-4)
        assert values[18] == pytest.approx(0.5, rel=1e-4)

    def test_cmf(self, tmp_path: Path, exact_csm: Path) -> None:
        """Test that CMF recovers the default sources from exact data."""
        out = tmp_path / "cmf.txt"

        code = main(["cmf", "--csm", str(exact_csm), "--out", str(out)] + EXACT_SOLVER)

        assert code == 0
        data = read_map(out)
        assert not data.signed
        assert data.values[6] == pytest.approx(1.0, rel=1e-4)
        assert data.values[18] == pytest.approx(0.5, rel=1e-4)

    def test_damas_agrees_with_cmf(self, tmp_path: Path, exact_csm: Path) -> None:
        """Test that the DAMAS and unregularised CMF maps agree to 1e-5."""
        damas, cmf = tmp_path / "damas.txt", tmp_path / "cmf.txt"

        assert main(["damas", "--csm", str(exact_csm), "--out", str(damas)] + EXACT_SOLVER) == 0
        assert main(["cmf", "--csm", str(exact_csm), "--out", str(cmf)] + EXACT_SOLVER) == 0

        damas_values, cmf_values = read_map(damas).values, read_map(cmf).values
        gap = np.linalg.norm(damas_values - cmf_values) / np.linalg.norm(cmf_values)
        assert gap < 1e-5

    def test_solver_not_converged(self, tmp_path: Path, exact_csm: Path) -> None:
        """Test that an iteration limit exits with 4 and still writes the map."""
        out = tmp_path / "cmf.txt"

        code = main(
            ["cmf", "--csm", str(exact_csm), "--out", str(out), "--max-iter", "1", "--tol", "1e-15"]
        )

        assert code == 4
        assert read_map(out).size == 25

    def test_array_mismatch(self, tmp_path: Path, propagation: PropagationMatrix) -> None:
        """Test that a CSM from another array exits with 2."""
        path = tmp_path / "nine.csm"
        source = SourceMap.point_sources(propagation.grid, {0: 1.0})
        write_csm(path, forward_csm(source, propagation))

        assert main(["beamform", "--csm", str(path), "--out", str(tmp_path / "m.txt")]) == 2

    def test_corrupt_csm(self, tmp_path: Path, exact_csm: Path) -> None:
        """Test that a truncated CSM file exits with 3."""
        path = tmp_path / "cut.csm"
        path.write_text("\n".join(exact_csm.read_text().splitlines()[:40]) + "\n")

        assert main(["cmf", "--csm", str(path), "--out", str(tmp_path / "m.txt")]) == 3

    def test_missing_csm(self, tmp_path: Path) -> None:
        """Test that a missing CSM file exits with 3."""
        absent = tmp_path / "absent.csm"

        assert main(["beamform", "--csm", str(absent), "--out", str(tmp_path / "m.txt")]) == 3

    def test_invalid_alpha(self, tmp_path: Path, exact_csm: Path) -> None:
        """Test that a negative regularisation weight exits with 2."""
        out = tmp_path / "cmf.txt"

        assert main(["cmf", "--csm", str(exact_csm), "--out", str(out), "--alpha", "-1"]) == 2


class TestPsf:
    """Tests for the psf command."""

    def test_column(self, tmp_path: Path) -> None:
        """Test that the PSF map peaks at 1 at its own focus point."""
        out = tmp_path / "psf.txt"

        assert main(["psf", "--index", "12", "--out", str(out)]) == 0

        values = read_map(out).values
        assert values[12] == pytest.approx(1.0)
        assert values.max() == pytest.approx(1.0)

    def test_mirrored_geometry(self, tmp_path: Path) -> None:
        """Test that a symmetric array and grid give a mirror-symmetric centre column."""
        scenario = tmp_path / "lattice.toml"
        scenario.write_text('[array]\nkind = "lattice"\n')
        out = tmp_path / "psf.txt"

        assert main(["psf", "--scenario", str(scenario), "--index", "12", "--out", str(out)]) == 0

        column = read_map(out).values.reshape(5, 5)
        np.testing.assert_allclose(column, column[::-1, :], rtol=1e-9, atol=1e-12)
        np.testing.assert_allclose(column, column[:, ::-1], rtol=1e-9, atol=1e-12)
        assert column[2, 2] == pytest.approx(1.0)

    def test_index_out_of_range(self, tmp_path: Path) -> None:
        """Test that an index past the grid exits with 2."""
        assert main(["psf", "--index", "25", "--out", str(tmp_path / "psf.txt")]) == 2


class TestVerify:
    """Tests for the verify command."""

    @staticmethod
    def _stub(monkeypatch: pytest.MonkeyPatch, value: float) -> None:
        tasks = [
            ("hankel", lambda: CheckResult("hankel", 1e-14, 1e-10)),
            ("gradient", lambda: CheckResult("gradient", value, 1e-5)),
        ]
        monkeypatch.setattr(suite, "build_tasks", lambda scenario, workers=1: tasks)

    def test_all_passed(self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test exit 0 and both report files when every check passes."""
        self._stub(monkeypatch, 1e-8)
        out = tmp_path / "report"

        assert main(["verify", "--out", str(out)]) == 0
        assert (out / "report.txt").exists()
        assert '"passed": true' in (out / "summary.json").read_text()

    def test_failure(self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test exit 1 when a check misses its tolerance."""
        self._stub(monkeypatch, 1e-3)
        out = tmp_path / "report"

        assert main(["verify", "--out", str(out)]) == 1
        assert "FAIL" in (out / "report.txt").read_text()

    def test_default_scenario(self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test that the full suite passes and lists every check exactly once."""
        single, threaded = tmp_path / "one", tmp_path / "three"

        assert main(["verify", "--out", str(single)]) == 0
        monkeypatch.setenv("AEROIMAGING_THREADS", "3")
        assert main(["verify", "--out", str(threaded)]) == 0

        summary = json.loads((single / "summary.json").read_text())
        assert summary["passed"] is True
        assert [check["name"] for check in summary["checks"]] == list(CHECK_NAMES)
        for name in ("report.txt", "summary.json"):
            assert (single / name).read_bytes() == (threaded / name).read_bytes()
