import json
import math

import numpy as np
import pytest

from wedgemellin.cli import main


def run(args):
    return main([str(a) for a in args])


class TestSpectrumCommand:
    def test_quarter_plane_rows(self, tmp_path, capsys):
        code = run(["spectrum", "--kappa", math.pi / 2, "--n-modes", 3,
                    "--output-dir", tmp_path])
        assert code == 0
        rows = (tmp_path / "spectrum.csv").read_text().strip().splitlines()
        assert rows[0] == "n,eigenvalue"
        vals = [float(r.split(",")[1]) for r in rows[1:]]
        assert vals == pytest.approx([4.0, 16.0, 36.0])


class TestNormsCommand:
    def test_row_per_field(self, tmp_path):
        code = run(["norms", "--gamma", 1, "--Theta", 2.5, "--theta", 2.0,
                    "--n-s", 128, "--n-phi", 32, "--output-dir", tmp_path])
        assert code == 0
        lines = (tmp_path / "norms_equivalence.csv").read_text().splitlines()
        header = [ln for ln in lines if ln.startswith("field_name")]
        assert header
        data = [ln for ln in lines if not ln.startswith(("#", "field_name"))]
        assert len(data) == 5  # five builtin fields

    def test_deterministic_output(self, tmp_path):
        d1, d2 = tmp_path / "a", tmp_path / "b"
        for d in (d1, d2):
            assert run(["norms", "--n-s", 64, "--n-phi", 16, "--n-modes", 8,
                        "--seed", 7, "--output-dir", d]) == 0
        assert (d1 / "norms_equivalence.csv").read_bytes() == \
            (d2 / "norms_equivalence.csv").read_bytes()

    def test_bad_field_selection(self, tmp_path, capsys):
        code = run(["norms", "--field", "nope", "--output-dir", tmp_path])
        assert code == 2

    def test_bad_grid_config(self, tmp_path):
        assert run(["norms", "--n-s", 100, "--output-dir", tmp_path]) == 2

    def test_unknown_config_key(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"bogus": 1}))
        assert run(["norms", "--config", cfg, "--output-dir", tmp_path]) == 2


class TestSolveCommand:
    def test_manufactured_report(self, tmp_path):
        code = run(["solve", "--field", "manufactured", "--n-s", 1024,
                    "--n-phi", 64, "--n-modes", 32, "--Theta", 2.0,
                    "--theta", 2.0, "--gamma", 0, "--output-dir", tmp_path])
        assert code == 0
        report = json.loads((tmp_path / "solve_report.json").read_text())
        assert report["residual"] <= 1e-3
        assert (tmp_path / "solution.csv").exists()

    def test_inadmissible_exit_code(self, tmp_path, capsys):
        code = run(["solve", "--kappa", math.pi, "--theta", 4.0,
                    "--output-dir", tmp_path])
        captured = capsys.readouterr()
        assert code == 3
        assert "forbidden" in captured.err

    def test_csv_round_trip_matches_builtin(self, tmp_path):
        # solve from the builtin field, dump the datum, reload, solve again
        from wedgemellin import (GridField, PoissonParams, WedgeParams,
                                 builtin_test_family, make_grid, sample,
                                 solve_poisson)
        wedge = WedgeParams(math.pi)
        grid = make_grid(-10.0, 10.0, 256, 32, wedge)
        f = builtin_test_family(wedge)[0]
        pp = PoissonParams(wedge, 2.0, 2.0, grid, n_modes=16)
        u_direct, _ = solve_poisson(f, pp, probe_corner=False)
        f_path = tmp_path / "datum.csv"
        sample(f, grid).save_csv(f_path)
        code = run(["solve", "--f-csv", f_path, "--s-min", -10.0, "--s-max", 10.0,
                    "--n-s", 256, "--n-phi", 32, "--n-modes", 16,
                    "--Theta", 2.0, "--theta", 2.0, "--output-dir", tmp_path])
        assert code == 0
        u_csv = GridField.load_csv(tmp_path / "solution.csv")
        rel = (np.linalg.norm(u_csv.values - u_direct.values)
               / np.linalg.norm(u_direct.values))
        assert rel <= 1e-10


class TestMellinSelftestCommand:
    def test_tolerances(self, tmp_path):
        code = run(["mellin-selftest", "--n-s", 2048, "--output-dir", tmp_path])
        assert code == 0
        payload = json.loads((tmp_path / "mellin_selftest.json").read_text())
        assert payload["roundtrip"] <= 1e-10
        assert payload["parseval"] <= 1e-8
        assert payload["multiplier"] <= 1e-7


class TestConvergenceCommand:
    def test_monotone_error_decrease(self, tmp_path):
        code = run(["convergence", "--n-s", 256, "--n-phi", 16, "--levels", 3,
                    "--Theta", 2.0, "--theta", 2.0, "--output-dir", tmp_path])
        assert code == 0
        rows = (tmp_path / "convergence.csv").read_text().strip().splitlines()[1:]
        errs = [float(r.split(",")[2]) for r in rows]
        assert len(errs) == 3
        assert errs[0] > errs[1] > errs[2]
