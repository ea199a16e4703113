"""Tests for the cellplan CLI."""

from __future__ import annotations

import json

import pytest
from typer.testing import CliRunner

from cellplan import __version__
from cellplan.cli.main import app
from cellplan.samples import sample_paths

runner = CliRunner()


@pytest.fixture
def tower3():
    return sample_paths("tower3")


@pytest.fixture
def lego():
    return sample_paths("lego_overhang")


@pytest.fixture
def broken_cranfield(tmp_path, cranfield_bytes):
    target = b"2778cfbb-0567-47a4-938a-bfc5cdec4220:bottom"
    path = tmp_path / "broken.aml"
    missing = b"ffffffff-0567-47a4-938a-bfc5cdec4220:bottom"
    path.write_bytes(cranfield_bytes.replace(target, missing))
    return path


def test_version():
    result = runner.invoke(app, ["--version"])
    assert result.exit_code == 0
    assert __version__ in result.output


class TestValidate:
    def test_clean_sample(self):
        result = runner.invoke(app, ["validate", str(sample_paths("cranfield")[0])])
        assert result.exit_code == 0
        assert "valid" in result.output

    def test_broken_link(self, broken_cranfield):
        result = runner.invoke(app, ["validate", str(broken_cranfield)])
        assert result.exit_code == 1
        assert "dangling-link" in result.output
        assert "InternalLink1" in result.output

    def test_missing_file(self, tmp_path):
        result = runner.invoke(app, ["validate", str(tmp_path / "nope.aml")])
        assert result.exit_code == 2

    def test_malformed_xml(self, tmp_path):
        path = tmp_path / "bad.aml"
        path.write_text("<CAEXFile><InstanceHierarchy>")
        result = runner.invoke(app, ["validate", str(path)])
        assert result.exit_code == 1


class TestExportItems:
    def test_cranfield(self, tmp_path):
        out = tmp_path / "items.txt"
        result = runner.invoke(
            app, ["export-items", str(sample_paths("cranfield")[0]), "-o", str(out)]
        )
        assert result.exit_code == 0
        lines = out.read_text().splitlines()
        assert len(lines) == 41
        assert "parameter FaceplateBack square_right 0.664 0 1.151" in lines
        assert lines[20] == "create FaceplateBack back pink 0,0"

    def test_refuses_invalid_document(self, tmp_path, broken_cranfield):
        out = tmp_path / "items.txt"
        result = runner.invoke(app, ["export-items", str(broken_cranfield), "-o", str(out)])
        assert result.exit_code == 1
        assert not out.exists()


class TestPlan:
    def test_lego(self, tmp_path, lego):
        aml, geometry = lego
        out = tmp_path / "plan.json"
        result = runner.invoke(app, ["plan", str(aml), "-g", str(geometry), "-o", str(out)])
        assert result.exit_code == 0
        document = json.loads(out.read_text())
        assert document["sequence"] == ["base", "pillar", "beam", "brick"]
        strategies = {p["instance"]: p["strategy"] for p in document["parts"]}
        assert strategies == {
            "base": "down", "pillar": "down", "beam": "down", "brick": "lateral_pos_x",
        }
        assert all(r["residual"] < 1e-9 for r in document["residuals"])
        brick = document["parts"][-1]
        assert brick["target"]["y"] == pytest.approx(1.0)
        assert brick["segments"][-1]["kind"] == "translate"

    def test_part_only_planning(self, tmp_path, lego):
        aml, geometry = lego
        out = tmp_path / "plan.json"
        result = runner.invoke(
            app,
            [
                "plan", str(aml), "-g", str(geometry), "-o", str(out),
                "--set", "planner.plan_with_arm_envelope=false",
            ],
        )
        assert result.exit_code == 0
        brick = json.loads(out.read_text())["parts"][-1]
        assert brick["strategy"] == "lateral_neg_x"

    def test_no_path(self, tmp_path, lego):
        """A wide arm column cannot reach under the beam from either side."""
        aml, geometry = lego
        out = tmp_path / "plan.json"
        result = runner.invoke(
            app,
            [
                "plan", str(aml), "-g", str(geometry), "-o", str(out),
                "--set", "arm_envelope.half_width=1.0",
            ],
        )
        assert result.exit_code == 1
        assert "brick" in result.output
        assert not out.exists()

    @pytest.mark.parametrize("sample", ["cranfield", "lego_overhang", "tower20"])
    def test_sequence_matches_virtual_connect_order(self, tmp_path, sample):
        aml, geometry = sample_paths(sample)
        out, trace = tmp_path / "plan.json", tmp_path / "trace.jsonl"
        planned = runner.invoke(app, ["plan", str(aml), "-g", str(geometry), "-o", str(out)])
        simulated = runner.invoke(
            app, ["simulate", str(aml), "-g", str(geometry), "-m", "virtual", "-t", str(trace)]
        )
        assert planned.exit_code == simulated.exit_code == 0
        events = [json.loads(line) for line in trace.read_text().splitlines()]
        connects = [e["part"] for e in events if e["event"] == "connect"]
        assert connects == json.loads(out.read_text())["sequence"]


class TestSimulate:
    def test_virtual(self, tmp_path, tower3):
        aml, geometry = tower3
        trace = tmp_path / "trace.jsonl"
        result = runner.invoke(
            app, ["simulate", str(aml), "-g", str(geometry), "-m", "virtual", "-t", str(trace)]
        )
        assert result.exit_code == 0
        assert "simulated" in result.output
        events = [json.loads(line) for line in trace.read_text().splitlines()]
        assert events[-1]["event"] == "done"
        assert [e["part"] for e in events if e["event"] == "connect"] == [
            "brick01", "brick02", "brick03",
        ]

    def test_timeout_keeps_partial_trace(self, tmp_path, tower3):
        aml, geometry = tower3
        trace = tmp_path / "trace.jsonl"
        result = runner.invoke(
            app,
            [
                "simulate", str(aml), "-g", str(geometry), "-t", str(trace),
                "--set", "simulation.tick_budget=10",
            ],
        )
        assert result.exit_code == 1
        assert "timeout" in result.output
        last = json.loads(trace.read_text().splitlines()[-1])
        assert (last["event"], last["detail"]) == ("fail", "timeout")

    def test_snapshots(self, tmp_path, tower3):
        aml, geometry = tower3
        snaps = tmp_path / "snaps"
        result = runner.invoke(
            app,
            [
                "simulate", str(aml), "-g", str(geometry), "-m", "virtual",
                "-t", str(tmp_path / "trace.jsonl"), "--snapshots", str(snaps),
            ],
        )
        assert result.exit_code == 0
        assert len(list(snaps.glob("snapshot_*.json"))) == 3

    def test_same_input_same_trace(self, tmp_path, lego):
        aml, geometry = lego
        traces = []
        for name in ("a.jsonl", "b.jsonl"):
            path = tmp_path / name
            result = runner.invoke(
                app, ["simulate", str(aml), "-g", str(geometry), "-t", str(path)]
            )
            assert result.exit_code == 0
            traces.append(path.read_bytes())
        assert traces[0] == traces[1]

    def test_geometry_override(self, tmp_path, tower3):
        aml, geometry = tower3
        slow, fast = tmp_path / "slow.jsonl", tmp_path / "fast.jsonl"
        for path, speed in ((slow, "0.25"), (fast, "1.0")):
            result = runner.invoke(
                app,
                [
                    "simulate", str(aml), "-g", str(geometry), "-m", "virtual",
                    "-t", str(path), "--set", f"speeds.arm_linear={speed}",
                ],
            )
            assert result.exit_code == 0

        def last_tick(path):
            return json.loads(path.read_text().splitlines()[-1])["tick"]

        assert last_tick(fast) < last_tick(slow)


class TestOverrides:
    @pytest.mark.parametrize(
        "pair",
        [
            "bogus.key=1",
            "collision.nope=1",
            "collision.sweep_step=-1",
            "speeds.arm_linear=0",
            "arm_envelope.depth=2",
            "nodot=1",
            "collision.sweep_step",
        ],
    )
    def test_usage_errors(self, tmp_path, tower3, pair):
        aml, geometry = tower3
        result = runner.invoke(
            app,
            [
                "simulate", str(aml), "-g", str(geometry), "-m", "virtual",
                "-t", str(tmp_path / "t.jsonl"), "--set", pair,
            ],
        )
        assert result.exit_code == 2

    def test_missing_geometry(self, tmp_path, tower3):
        aml, _ = tower3
        result = runner.invoke(
            app,
            ["simulate", str(aml), "-g", str(tmp_path / "none.json"), "-t", str(tmp_path / "t")],
        )
        assert result.exit_code == 2


class TestConfig:
    def test_shows_defaults(self):
        result = runner.invoke(app, ["config"])
        assert result.exit_code == 0
        assert "No config file" in result.output
        assert "collision.sweep_step" in result.output

    def test_set_saves(self, isolated_config):
        result = runner.invoke(app, ["config", "--set", "planner.clearance=3.5"])
        assert result.exit_code == 0
        assert "Saved 1 setting" in result.output
        assert json.loads(isolated_config.read_text())["planner"]["clearance"] == 3.5

        shown = runner.invoke(app, ["config"])
        assert "No config file" not in shown.output
        assert "3.5" in shown.output

    @pytest.mark.parametrize("pair", ["speeds.arm_linear=1", "planner.nope=1", "planner"])
    def test_rejects_bad_keys(self, isolated_config, pair):
        result = runner.invoke(app, ["config", "--set", pair])
        assert result.exit_code == 2
        assert not isolated_config.exists()


class TestSamples:
    def test_list(self):
        result = runner.invoke(app, ["samples"])
        assert result.exit_code == 0
        for name in ("cranfield", "lego_overhang", "tower3", "tower20"):
            assert name in result.output

    def test_copy(self, tmp_path):
        result = runner.invoke(app, ["samples", "tower3", "-d", str(tmp_path)])
        assert result.exit_code == 0
        assert (tmp_path / "tower3.aml").exists()
        assert (tmp_path / "tower_geometry.json").exists()

    def test_copy_leaves_existing_files(self, tmp_path):
        (tmp_path / "tower3.aml").write_text("mine")
        runner.invoke(app, ["samples", "tower3", "-d", str(tmp_path)])
        assert (tmp_path / "tower3.aml").read_text() == "mine"

    def test_unknown(self, tmp_path):
        result = runner.invoke(app, ["samples", "nope", "-d", str(tmp_path)])
        assert result.exit_code == 2
