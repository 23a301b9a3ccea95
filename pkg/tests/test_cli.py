"""Scenario-file front end: parsing, exit codes, artifact layout."""

import re
import subprocess
import sys

import pytest

from blowupwatch.cli import main
from blowupwatch.snapshots import read_moments_csv

VORTEX = """\
[scenario]
name = vortex-stationarity

[gas]
gamma = 2.0
ndim = 2
force = coriolis
coriolis_rate = 1.0

[grid]
cells = 128
halfwidth = 1.6

[initial]
kind = vortex
spin_rate = 1.0
extent = 0.8
"""

AFFINE = """\
[scenario]
name = affine-probe

[gas]
gamma = 2.0
ndim = 2

[grid]
cells = 96
halfwidth = 10.0

[initial]
kind = gaussian-affine
expansion = 2.0
internal_energy = 3.141592653589793
inertia = 0.7853981633974483
decay_power = 2.0

[affine]
t_end = 1.0
dt = 0.001
epsilon = 0.001
"""

COMPACT = """\
[scenario]
name = compact-bump

[gas]
gamma = 1.4
ndim = 2

[grid]
cells = 64
halfwidth = 4.0

[initial]
kind = compact-perturbation
background_density = 1.0
bump_height = 0.3
bump_radius = 1.0

[criteria]
tags = T3.1a T3.1b T3.1c T3.1d T3.1e
growth_exponent = 0.5
growth_constant = 1.0
"""


def scenario(tmp_path, text, name="scenario.ini"):
    path = tmp_path / name
    path.write_text(text, encoding="ascii")
    return str(path)


class TestParsing:
    def test_missing_scenario_file(self, tmp_path, capsys):
        rc = main(["moments", "--scenario", str(tmp_path / "absent.ini"),
                   "--out", str(tmp_path / "out")])
        assert rc == 2
        assert "cannot read scenario" in capsys.readouterr().err

    def test_missing_state_file_is_a_config_error(self, tmp_path, capsys):
        text = VORTEX.replace("kind = vortex",
                              "kind = file\npath = nowhere.bin")
        rc = main(["moments", "--scenario", scenario(tmp_path, text),
                   "--out", str(tmp_path / "out")])
        assert rc == 2
        err = capsys.readouterr().err
        assert "no such state file" in err
        assert re.search(r"scenario\.ini:\d+:", err)

    def test_bad_value_reports_its_line(self, tmp_path, capsys):
        text = VORTEX.replace("gamma = 2.0", "gamma = two")
        rc = main(["moments", "--scenario", scenario(tmp_path, text),
                   "--out", str(tmp_path / "out")])
        assert rc == 2
        assert "scenario.ini:5: bad value for 'gamma'" in \
            capsys.readouterr().err

    def test_missing_key_points_at_the_section(self, tmp_path, capsys):
        text = VORTEX.replace("extent = 0.8\n", "")
        rc = main(["moments", "--scenario", scenario(tmp_path, text),
                   "--out", str(tmp_path / "out")])
        assert rc == 2
        err = capsys.readouterr().err
        assert "needs key 'extent'" in err
        assert re.search(r"scenario\.ini:\d+", err)

    @pytest.mark.parametrize("before,after", [
        ("force = coriolis", "force = magnetism"),
        ("kind = vortex", "kind = implosion"),
    ])
    def test_unknown_names_are_rejected(self, tmp_path, capsys, before,
                                        after):
        rc = main(["moments",
                   "--scenario", scenario(tmp_path,
                                          VORTEX.replace(before, after)),
                   "--out", str(tmp_path / "out")])
        assert rc == 2
        assert "unknown" in capsys.readouterr().err

    def test_unparseable_document(self, tmp_path, capsys):
        rc = main(["moments",
                   "--scenario", scenario(tmp_path, "gamma = 2.0\n"),
                   "--out", str(tmp_path / "out")])
        assert rc == 2

    def test_unknown_subcommand_exits_two(self, tmp_path):
        with pytest.raises(SystemExit) as info:
            main(["replay", "--scenario", "x", "--out", "y"])
        assert info.value.code == 2


class TestMoments:
    def test_vortex_moment_table(self, tmp_path, capsys):
        out = tmp_path / "out"
        rc = main(["moments", "--scenario", scenario(tmp_path, VORTEX),
                   "--out", str(out)])
        assert rc == 0
        [ms] = read_moments_csv(out / "moments.csv")
        assert ms.gamma == 2.0
        assert ms.mass > 0.0
        holder = (out / "holder.txt").read_text().splitlines()
        assert len(holder) == 4
        assert all(line.endswith("satisfied=yes") for line in holder)

    def test_compact_perturbation_accounting(self, tmp_path):
        out = tmp_path / "out"
        assert main(["moments", "--scenario", scenario(tmp_path, COMPACT),
                     "--out", str(out)]) == 0
        [ms] = read_moments_csv(out / "moments.csv")
        # perturbation mass, not the (box-truncated) total
        assert 0.0 < ms.mass < 1.0
        assert ms.kinetic_energy == 0.0

    def test_seed_controls_bump_placement(self, tmp_path):
        text = COMPACT.replace("bump_radius = 1.0",
                               "bump_radius = 0.5\nbump_count = 3")
        src = scenario(tmp_path, text)
        for tag, seed in (("a", "7"), ("b", "7"), ("c", "8")):
            assert main(["moments", "--scenario", src, "--seed", seed,
                         "--out", str(tmp_path / tag)]) == 0
        same = (tmp_path / "a" / "moments.csv").read_bytes()
        assert same == (tmp_path / "b" / "moments.csv").read_bytes()
        assert same != (tmp_path / "c" / "moments.csv").read_bytes()


class TestCriteria:
    def test_reports_echo_their_inputs(self, tmp_path):
        text = VORTEX + "\n[criteria]\ntags = T2.1 T5.1-53 T5.1-54\n"
        out = tmp_path / "out"
        assert main(["criteria", "--scenario", scenario(tmp_path, text),
                     "--out", str(out)]) == 0
        report = (out / "criteria.txt").read_text()
        assert "input spin_rate 1" in report
        assert "input mass " in report
        rows = (out / "criteria.csv").read_text().splitlines()
        assert len(rows) == 4
        header = rows[0].split(",")
        assert header[:3] == ["tag", "satisfied", "lhs"]
        # every input column is populated on every row
        assert all(len(r.split(",")) == len(header) for r in rows[1:])

    def test_compact_support_family(self, tmp_path):
        out = tmp_path / "out"
        assert main(["criteria", "--scenario", scenario(tmp_path, COMPACT),
                     "--out", str(out)]) == 0
        rows = (out / "criteria.csv").read_text().splitlines()
        tags = [r.split(",")[0] for r in rows[1:]]
        assert tags == ["T3.1a", "T3.1b", "T3.1c", "T3.1d", "T3.1e"]
        report = (out / "criteria.txt").read_text()
        support = float(re.search(r"input support_radius (\S+)",
                                  report).group(1))
        assert 0.9 < support < 1.3
        assert float(re.search(r"input mass_excess (\S+)",
                               report).group(1)) > 0.0

    def test_unknown_tag_is_a_config_error(self, tmp_path, capsys):
        text = VORTEX + "\n[criteria]\ntags = T9.9\n"
        rc = main(["criteria", "--scenario", scenario(tmp_path, text),
                   "--out", str(tmp_path / "out")])
        assert rc == 2
        assert "unknown criterion tag" in capsys.readouterr().err


class TestAffine:
    def test_trajectory_and_search(self, tmp_path):
        out = tmp_path / "out"
        assert main(["affine", "--scenario", scenario(tmp_path, AFFINE),
                     "--out", str(out)]) == 0
        summary = (out / "affine.txt").read_text()
        assert "search_expansion=4096\n" in summary
        assert "deficit=" in summary
        head = (out / "trajectory.csv").read_text().splitlines()[0]
        assert head == ("time,expansion,inverse_inertia,inertia,"
                        "inertia_rate,internal_energy")

    def test_wrong_initial_kind(self, tmp_path, capsys):
        text = AFFINE.replace("kind = gaussian-affine", "kind = vortex")
        rc = main(["affine", "--scenario", scenario(tmp_path, text),
                   "--out", str(tmp_path / "out")])
        assert rc == 2
        assert "gaussian-affine" in capsys.readouterr().err


class TestVortex:
    def test_residuals_and_artifacts(self, tmp_path, capsys):
        out = tmp_path / "out"
        assert main(["vortex", "--scenario", scenario(tmp_path, VORTEX),
                     "--out", str(out)]) == 0
        for name in ("state.bin", "state.csv", "moments.csv",
                     "residual.txt"):
            assert (out / name).exists()
        for line in (out / "residual.txt").read_text().splitlines():
            assert float(line.split("=")[1]) < 1e-3

    def test_grid_override_flag(self, tmp_path):
        coarse, fine = tmp_path / "coarse", tmp_path / "fine"
        src = scenario(tmp_path, VORTEX)
        assert main(["vortex", "--scenario", src, "--out", str(coarse),
                     "--grid", "64"]) == 0
        assert main(["vortex", "--scenario", src, "--out", str(fine),
                     "--grid", "192"]) == 0

        def worst(path):
            lines = (path / "residual.txt").read_text().splitlines()
            return max(float(line.split("=")[1]) for line in lines)

        assert worst(fine) < worst(coarse)


class TestSimulate:
    def test_stationary_vortex_stays_quiet(self, tmp_path, capsys):
        text = VORTEX + "\n[solver]\nt_end = 0.1\nmoment_stride = 2\n"
        out = tmp_path / "out"
        rc = main(["simulate", "--scenario", scenario(tmp_path, text),
                   "--out", str(out)])
        assert rc == 0
        assert (out / "events.txt").read_text() == ""
        assert "completed:" in capsys.readouterr().out
        series = (out / "series.csv").read_text().splitlines()
        assert series[0] == ("time,inertia,inertia_rate,total_energy,"
                             "invariant_moment")
        assert len(series) > 2
        assert series[1].startswith("0,")
        assert (out / "snapshots" / "state-000000.bin").exists()
        assert (out / "ledger.txt").exists()

    def test_without_solver_section(self, tmp_path):
        out = tmp_path / "out"
        assert main(["simulate", "--scenario", scenario(tmp_path, VORTEX),
                     "--out", str(out)]) == 0
        assert (out / "events.txt").read_text() == ""
        assert len((out / "series.csv").read_text().splitlines()) == 2
        assert (out / "moments.csv").exists()


class TestSweep:
    SWEEP = AFFINE.replace("[affine]", "[ignored]") + """
[criteria]
tags = T2.1
tail_tol = 5e-2

[sweep]
action = criteria
parameter = initial.expansion
values = 0.5 1.0 2.0 4.0 8.0
workers = 2
"""

    def test_margin_column_rises_toward_the_threshold(self, tmp_path):
        out = tmp_path / "out"
        src = scenario(tmp_path, self.SWEEP)
        assert main(["sweep", "--scenario", src, "--grid", "48",
                     "--out", str(out)]) == 0
        rows = (out / "criteria.csv").read_text().splitlines()
        header = rows[0].split(",")
        assert header[0] == "initial.expansion"
        assert len(rows) == 6
        margins = [float(r.split(",")[header.index("margin")])
                   for r in rows[1:]]
        assert all(m < 0.0 for m in margins)
        assert margins == sorted(margins)
        for k in range(5):
            point = out / f"affine-probe-{k:03d}"
            assert (point / "criteria.csv").exists()

    def test_sweeps_are_reproducible(self, tmp_path):
        src = scenario(tmp_path, self.SWEEP)
        for name in ("one", "two"):
            assert main(["sweep", "--scenario", src, "--grid", "48",
                         "--out", str(tmp_path / name)]) == 0
        assert (tmp_path / "one" / "criteria.csv").read_bytes() == \
            (tmp_path / "two" / "criteria.csv").read_bytes()

    def test_bad_parameter_path(self, tmp_path, capsys):
        text = self.SWEEP.replace("parameter = initial.expansion",
                                  "parameter = expansion")
        rc = main(["sweep", "--scenario", scenario(tmp_path, text),
                   "--out", str(tmp_path / "out")])
        assert rc == 2
        assert "section.key" in capsys.readouterr().err


def test_module_entry_point(tmp_path):
    path = tmp_path / "scenario.ini"
    path.write_text(VORTEX, encoding="ascii")
    done = subprocess.run(
        [sys.executable, "-m", "blowupwatch.cli", "moments",
         "--scenario", str(path), "--out", str(tmp_path / "out")],
        capture_output=True, text=True)
    assert done.returncode == 0
    assert "wrote moments" in done.stdout
