import json
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

import lvwaves as lv
from lvwaves.cli import main
from lvwaves.profiles import WaveProfile

F = Fraction

PAPER_FREE = {
    "k1": 1, "k2": 1, "d1": 1, "d2": 1, "d3": 1,
    "theta": 3, "sigma1": 41, "sigma2": 41, "sigma3": 41,
}
STRONG = {"d1": 1, "d2": 1, "sigma1": 1, "sigma2": 1, "c11": 1, "c12": 2, "c21": 3, "c22": 1}
NONEXIST = {
    "d1": 1, "d2": 1, "d3": 1, "sigma1": 1, "sigma2": 1, "sigma3": 0.1,
    "c11": 1, "c12": 2, "c13": 0, "c21": 3, "c22": 1, "c23": 0,
    "c31": 1, "c32": 1, "c33": 1,
}


def write_json(path: Path, data: dict) -> str:
    path.write_text(json.dumps(data))
    return str(path)


def report(out_dir: Path) -> dict:
    return json.loads((out_dir / "report.json").read_text())


class TestExactWaveCommand:
    def test_paper_example(self, tmp_path):
        params = write_json(tmp_path / "free.json", PAPER_FREE)
        out = tmp_path / "out"
        assert main(["exact-wave", "--params", params, "--out", str(out)]) == 0
        data = report(out)
        assert data["c_exact"] == [
            ["41", "41/5", "31/5"],
            ["69", "34/5", "4/5"],
            ["51", "36/5", "6/5"],
        ]
        assert data["u_star_exact"] == "1/5"
        assert data["v_star_exact"] == "4"
        assert max(data["residuals"].values()) < 1e-10
        profile = WaveProfile.from_csv(out / "wave.csv")
        assert profile.w is not None

    def test_infeasible_free_params_exit_1(self, tmp_path):
        params = write_json(tmp_path / "free.json", {**PAPER_FREE, "theta": 41})
        assert main(["exact-wave", "--params", params, "--out", str(tmp_path / "o")]) == 1

    def test_override_flag(self, tmp_path):
        params = write_json(tmp_path / "free.json", {**PAPER_FREE, "theta": 41})
        out = tmp_path / "out"
        code = main(
            ["exact-wave", "--params", params, "--set", "theta=3", "--out", str(out)]
        )
        assert code == 0


class TestClosedFormCommands:
    def test_bounds_json(self, tmp_path):
        params = write_json(tmp_path / "p.json", STRONG)
        out = tmp_path / "out"
        assert main(["bounds", "--params", params, "--out", str(out)]) == 0
        data = report(out)
        assert data["q_lower"] == pytest.approx(1 / 3, abs=1e-15)
        assert data["q_upper"] == 1
        assert data["q_lower_exact"] == "1/3"

    def test_bounds_regime_failure_exit_1(self, tmp_path):
        params = write_json(tmp_path / "p.json", {**STRONG, "c12": 0.5})
        assert main(["bounds", "--params", params, "--out", str(tmp_path / "o")]) == 1

    def test_barrier_matches_tabulated_case(self, tmp_path):
        params = write_json(tmp_path / "p.json", {**STRONG, "d2": 2})
        out = tmp_path / "out"
        code = main(
            ["barrier", "--params", params, "--alpha", "17", "--beta", "18",
             "--side", "lower", "--out", str(out)]
        )
        assert code == 0
        data = report(out)
        assert data["lambda1_exact"] == "17/6"
        assert data["lambda2_exact"] == "17/3"
        assert data["eta_exact"] == "17/6"
        assert data["case_id"] == "i"

    def test_conic_classification(self, tmp_path):
        weak = {**STRONG, "c12": "1/2", "c21": "2/3"}
        params = write_json(tmp_path / "p.json", weak)
        out = tmp_path / "out"
        assert main(
            ["conic", "--params", params, "--alpha", "2", "--beta", "3", "--out", str(out)]
        ) == 0
        assert report(out)["kind"] == "Ellipse"

    def test_classify(self, tmp_path):
        params = write_json(tmp_path / "p.json", STRONG)
        out = tmp_path / "out"
        assert main(["classify", "--params", params, "--out", str(out)]) == 0
        assert report(out)["regime"] == "Strong"

    def test_dotted_matrix_override(self, tmp_path):
        params = write_json(tmp_path / "p.json", STRONG)
        out = tmp_path / "out"
        code = main(
            ["classify", "--params", params, "--set", "c.1.2=1/2", "--out", str(out)]
        )
        assert code == 0
        assert report(out)["regime"] == "ExclusionUWins"

    def test_evenness(self, tmp_path):
        out = tmp_path / "out"
        assert main(["evenness", "--u", "1", "--v", "3", "--out", str(out)]) == 0
        assert report(out)["J"] == pytest.approx(0.8112781244591328, abs=1e-12)

    def test_evenness_domain_error_exit_1(self, tmp_path):
        assert main(["evenness", "--u", "0", "--v", "0", "--out", str(tmp_path / "o")]) == 1


class TestCheckCommands:
    def test_nonexistence_verdict(self, tmp_path):
        params = write_json(tmp_path / "p.json", NONEXIST)
        out = tmp_path / "out"
        assert main(["check-nonexistence", "--params", params, "--out", str(out)]) == 0
        data = report(out)
        assert data["verdict"] == "nonexistence predicted (literal A3 and variant both pass)"
        assert data["checks"]["A3_literal"]["pass"]

    def test_nonexistence_failure_exit_1(self, tmp_path):
        params = write_json(tmp_path / "p.json", {**NONEXIST, "sigma3": 1})
        assert main(
            ["check-nonexistence", "--params", params, "--out", str(tmp_path / "o")]
        ) == 1

    def test_existence_exit_1_and_margins(self, tmp_path, demo_two_wave):
        blk = {k: str(v) for k, v in demo_two_wave.params.to_dict().items()}
        cfgd = {
            **blk, "d3": 2, "sigma3": 10, "c31": "1/2", "c32": "1/100", "c33": 1,
            "theta": str(demo_two_wave.theta), "K_sub": 1, "K_super": 12,
        }
        params = write_json(tmp_path / "p.json", cfgd)
        out = tmp_path / "out"
        assert main(["check-existence", "--params", params, "--out", str(out)]) == 1
        data = report(out)
        assert data["checks"]["H2"]["pass"] and data["checks"]["H3"]["pass"]
        assert not data["checks"]["H1"]["pass"]


class TestProfileCommands:
    def test_verify_profile_pass_and_fail(self, tmp_path, paper_spec):
        block = {
            "d1": 1, "d2": 1, "sigma1": 41, "sigma2": 41,
            "c11": 41, "c12": "41/5", "c21": 69, "c22": "34/5",
        }
        params = write_json(tmp_path / "p.json", block)
        x = np.linspace(-40, 40, 2001)
        lv.wave_profile(paper_spec, x).to_csv(tmp_path / "wave.csv")
        out = tmp_path / "out"
        code = main(
            ["verify-profile", "--params", params, "--profile",
             str(tmp_path / "wave.csv"), "--out", str(out)]
        )
        assert code == 0
        data = report(out)
        assert data["pass"]
        assert data["checks"]["upper"]["margin"] == pytest.approx(float(F(311, 170)), abs=1e-12)

        bad = lv.WaveProfile(
            x=np.linspace(0, 1, 11),
            u=np.full(11, 7.0),
            v=np.full(11, 7.0),
        )
        bad.to_csv(tmp_path / "bad.csv")
        code = main(
            ["verify-profile", "--params", params, "--profile",
             str(tmp_path / "bad.csv"), "--out", str(out)]
        )
        assert code == 1

    def test_csv_roundtrip_lossless(self, tmp_path, paper_spec):
        x = np.linspace(-15, 15, 301)
        prof = lv.wave_profile(paper_spec, x)
        prof.to_csv(tmp_path / "wave.csv")
        back = WaveProfile.from_csv(tmp_path / "wave.csv")
        assert np.array_equal(back.x, prof.x)
        assert np.array_equal(back.u, prof.u)
        assert np.array_equal(back.v, prof.v)
        assert np.array_equal(back.w, prof.w)


class TestSimulationCommands:
    def test_simulate_then_speed(self, tmp_path, paper_spec):
        cfgd = {k: str(v) for k, v in paper_spec.params.to_dict().items()}
        params = write_json(tmp_path / "p.json", cfgd)
        x = np.linspace(-20, 20, 401)
        lv.wave_profile(paper_spec, x).to_csv(tmp_path / "init.csv")
        out = tmp_path / "out"
        code = main(
            ["simulate", "--params", params, "--init", str(tmp_path / "init.csv"),
             "--t-end", "0.5", "--n-snapshots", "5", "--boundary", "dirichlet",
             "--out", str(out)]
        )
        assert code == 0
        assert (out / "snapshots" / "manifest.json").exists()
        speed_out = tmp_path / "speed"
        code = main(
            ["speed", "--snapshots", str(out / "snapshots"), "--component", "u",
             "--level", "0.4", "--out", str(speed_out)]
        )
        assert code == 0
        assert report(speed_out)["speed"] == pytest.approx(3.0, rel=0.05)

    def test_fisher_command(self, tmp_path, demo_two_wave):
        x = np.linspace(-40, 40, 801)
        demo_two_wave.profile(x).to_csv(tmp_path / "bg.csv")
        cfgd = {
            "d3": 2, "theta": 6, "sigma3": 10, "c31": 0.5, "c32": 0.01, "c33": 1,
            "K_sub": 1, "K_super": 12,
        }
        params = write_json(tmp_path / "p.json", cfgd)
        out = tmp_path / "out"
        code = main(
            ["fisher", "--params", params, "--background", str(tmp_path / "bg.csv"),
             "--relaxation", "15", "--out", str(out)]
        )
        assert code == 0
        data = report(out)
        assert data["solved"]
        assert data["iterations"] <= 200
        assert abs(data["w_left"]) < 1e-6 and abs(data["w_right"]) < 1e-6
        assert (out / "w.csv").exists()


class TestFigureData:
    def test_fig2_case_a_levels(self, tmp_path):
        out = tmp_path / "out"
        assert main(["figure-data", "--which", "fig2", "--case", "a", "--out", str(out)]) == 0
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["barrier"]["lambda1"] == "17/6"
        assert manifest["barrier"]["lambda2"] == "17/3"
        assert manifest["barrier"]["eta"] == "17/6"

    def test_fig1_case_e_conic_points(self, tmp_path):
        out = tmp_path / "out"
        assert main(["figure-data", "--which", "fig1", "--case", "e", "--out", str(out)]) == 0
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["conic"]["kind"] == "Ellipse"
        rows = (out / "conic.csv").read_text().strip().splitlines()[1:]
        assert rows
        p = lv.TwoSpeciesParams(
            d1=F(1), d2=F(1), sigma1=F(1), sigma2=F(1),
            c11=F(1), c12=F(1, 2), c21=F(2, 3), c22=F(1),
        )
        for row in rows:
            u, v = (float(part) for part in row.split(","))
            assert abs(float(lv.F_value(p, 2.0, 3.0, u, v))) < 1e-6

    def test_bad_case_is_usage_error(self, tmp_path):
        assert main(
            ["figure-data", "--which", "fig1", "--case", "z", "--out", str(tmp_path / "o")]
        ) == 2


class TestContract:
    def test_reports_are_byte_deterministic(self, tmp_path):
        params = write_json(tmp_path / "p.json", STRONG)
        out1, out2 = tmp_path / "a", tmp_path / "b"
        assert main(["bounds", "--params", params, "--out", str(out1)]) == 0
        assert main(["bounds", "--params", params, "--out", str(out2)]) == 0
        assert (out1 / "report.json").read_bytes() == (out2 / "report.json").read_bytes()

    def test_exact_wave_artifacts_deterministic(self, tmp_path):
        params = write_json(tmp_path / "free.json", PAPER_FREE)
        out1, out2 = tmp_path / "a", tmp_path / "b"
        for out in (out1, out2):
            assert main(["exact-wave", "--params", params, "--out", str(out)]) == 0
        assert (out1 / "wave.csv").read_bytes() == (out2 / "wave.csv").read_bytes()
        assert (out1 / "report.json").read_bytes() == (out2 / "report.json").read_bytes()

    def test_report_reparses_as_json(self, tmp_path):
        params = write_json(tmp_path / "p.json", STRONG)
        out = tmp_path / "out"
        main(["bounds", "--params", params, "--out", str(out)])
        data = report(out)
        assert isinstance(data, dict)

    def test_unknown_command_exits_2(self):
        with pytest.raises(SystemExit) as err:
            main(["no-such-command"])
        assert err.value.code == 2

    def test_nonpositive_weight_is_usage_error(self, tmp_path):
        params = write_json(tmp_path / "p.json", STRONG)
        code = main(
            ["bounds", "--params", params, "--alpha", "0", "--out", str(tmp_path / "o")]
        )
        assert code == 2

    def test_malformed_params_is_usage_error(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert main(["bounds", "--params", str(bad), "--out", str(tmp_path / "o")]) == 2

    def test_env_var_out_dir(self, tmp_path, monkeypatch):
        params = write_json(tmp_path / "p.json", STRONG)
        target = tmp_path / "env-out"
        monkeypatch.setenv("LVWAVES_OUT", str(target))
        assert main(["classify", "--params", params]) == 0
        assert (target / "report.json").exists()

    def test_two_wave_family_and_infeasible(self, tmp_path):
        good = write_json(
            tmp_path / "good.json",
            {"d1": 1, "d2": 1, "theta": "37/2", "sigma1": 41, "sigma2": "1977/4", "k1": 1},
        )
        out = tmp_path / "out"
        assert main(["two-wave", "--params", good, "--out", str(out)]) == 0
        data = report(out)
        assert data["u_star_exact"] == "33/41"
        assert max(data["residuals"].values()) < 1e-10

        bad = write_json(
            tmp_path / "bad.json",
            {"d1": 1, "d2": 1, "theta": 3, "sigma1": 41, "sigma2": 41, "k1": 1},
        )
        assert main(["two-wave", "--params", bad, "--out", str(tmp_path / "o2")]) == 1
