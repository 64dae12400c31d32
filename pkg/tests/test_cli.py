"""Config validation, CSV/plot-data emission, and the command surface."""

import json

import pytest

from irsa_sim.cli import (
    CSV_HEADER,
    ConfigValidationError,
    config_to_spec,
    emit_csv,
    emit_plot_data,
    main,
    parse_config,
    serialize_config,
)
from irsa_sim.distributions import avg_degree, from_name
from irsa_sim.frame_graph import FrameGraph
from irsa_sim.harness import SweepRecord, run_sweep


MINIMAL_SWEEP = {
    "scheme": "IRSA",
    "distribution": {"name": "modified_soliton", "Y": 10},
    "K": 300,
    "G_grid": [0.4, 0.8],
    "tilde_Es_over_N0": 0.0009,
}


def make_record(**kw):
    base = dict(
        scheme="IRSA", distribution="l3", K=30, M=40, G=0.75, trials=10, seed=0,
        alpha=None, beta=None, mu=None, T_mean=0.5, T_se=0.01, eta_mean=0.25,
        eta_se=0.005, eta_max_mean=0.3, gamma_mean=2.5, gamma_se=0.1,
        energy_per_user_db=-3.0,
    )
    base.update(kw)
    return SweepRecord(**base)


class TestParseConfig:
    def test_minimal_defaults(self):
        config = parse_config(json.dumps(MINIMAL_SWEEP))
        assert config.trials == 1000
        assert config.seed == 0
        assert config.L_cu == 100
        assert config.N0 == 1.0
        assert config.rmax_includes_one is True

    def test_distribution_moment(self):
        config = parse_config(json.dumps(MINIMAL_SWEEP))
        dist = from_name(config.dist_name, config.dist_Y)
        assert avg_degree(dist) == pytest.approx(3.428968, abs=1e-5)

    def test_zero_g_rejected(self):
        bad = dict(MINIMAL_SWEEP, G_grid=[0.0])
        with pytest.raises(ConfigValidationError, match="G_grid"):
            parse_config(json.dumps(bad))

    def test_unknown_keys_rejected_with_path(self):
        bad = dict(MINIMAL_SWEEP, banana=1, tuning={"alpha_gird": [1]})
        with pytest.raises(ConfigValidationError) as err:
            parse_config(json.dumps(bad))
        text = str(err.value)
        assert "banana: unknown key" in text
        assert "tuning.alpha_gird: unknown key" in text

    def test_all_errors_reported(self):
        bad = {
            "scheme": "FANCY",
            "distribution": {"name": "l3", "Y": 4},
            "K": 0,
            "G_grid": [],
            "trials": 0,
        }
        with pytest.raises(ConfigValidationError) as err:
            parse_config(json.dumps(bad))
        assert len(err.value.errors) >= 5

    def test_scheme_energy_requirements(self):
        missing = dict(MINIMAL_SWEEP)
        del missing["tilde_Es_over_N0"]
        with pytest.raises(ConfigValidationError, match="tilde_Es_over_N0"):
            parse_config(json.dumps(missing))
        pa = dict(MINIMAL_SWEEP, scheme="PA")
        del pa["tilde_Es_over_N0"]
        with pytest.raises(ConfigValidationError, match="hat_R_bits"):
            parse_config(json.dumps(pa))

    def test_soliton_parameter_required(self):
        bad = dict(MINIMAL_SWEEP, distribution={"name": "modified_soliton"})
        with pytest.raises(ConfigValidationError, match="distribution.Y"):
            parse_config(json.dumps(bad))
        bad = dict(MINIMAL_SWEEP, distribution={"name": "l3", "Y": 5})
        with pytest.raises(ConfigValidationError, match="distribution.Y"):
            parse_config(json.dumps(bad))

    def test_y_may_track_slot_count(self):
        ok = dict(MINIMAL_SWEEP, distribution={"name": "ideal_soliton", "Y": "M"})
        config = parse_config(json.dumps(ok))
        assert config.dist_Y == "M"
        spec = config_to_spec(config)
        assert spec.dist_for(50).max_degree == 50

    def test_invalid_json(self):
        with pytest.raises(ConfigValidationError, match="invalid JSON"):
            parse_config("{not json")

    def test_round_trip(self):
        doc = dict(
            MINIMAL_SWEEP,
            scheme="RS",
            alpha=0.5,
            beta=1.2,
            trials=77,
            seed=3,
            out="results",
            emit_plot_data=True,
            tuning={"alpha_grid": [0.1, 0.5], "tune_trials": 12},
            compare={"es_over_N0_db_grid": [-18.0, -16.0]},
        )
        config = parse_config(json.dumps(doc))
        assert parse_config(serialize_config(config)) == config


class TestEmitCsv:
    def test_single_record_two_lines(self, tmp_path):
        path = emit_csv([make_record()], tmp_path / "out.csv")
        lines = path.read_text().splitlines()
        assert len(lines) == 2
        assert lines[0] == CSV_HEADER

    def test_thirty_points_thirty_one_lines(self, tmp_path):
        records = [make_record(G=round(0.05 * i, 2)) for i in range(1, 31)]
        path = emit_csv(records, tmp_path / "out.csv")
        assert len(path.read_text().splitlines()) == 31

    def test_byte_identical_rerun(self, tmp_path):
        records = [make_record(), make_record(G=0.8, T_mean=1 / 3)]
        a = emit_csv(records, tmp_path / "a.csv").read_bytes()
        b = emit_csv(records, tmp_path / "b.csv").read_bytes()
        assert a == b

    def test_lf_endings_and_empty_fields(self, tmp_path):
        rec = make_record(alpha=None, beta=None, mu=None, T_se=None)
        raw = emit_csv([rec], tmp_path / "o.csv").read_bytes()
        assert b"\r" not in raw
        row = raw.decode().splitlines()[1].split(",")
        header = CSV_HEADER.split(",")
        assert row[header.index("alpha")] == ""
        assert row[header.index("mu")] == ""
        assert row[header.index("T_se")] == ""

    def test_six_significant_digits(self, tmp_path):
        rec = make_record(T_mean=0.123456789, gamma_mean=12345.6789)
        row = emit_csv([rec], tmp_path / "o.csv").read_text().splitlines()[1]
        assert "0.123457" in row
        assert "12345.7" in row

    def test_sweep_output_is_deterministic(self, tmp_path):
        from irsa_sim.harness import SweepSpec

        spec = SweepSpec(
            scheme="IRSA", dist_name="modified_soliton", dist_Y=4, K=20,
            G_grid=(0.4, 0.8, 1.2), trials=30, seed=5, tilde_Es_over_N0=0.01,
        )
        a = emit_csv(run_sweep(spec), tmp_path / "a.csv").read_bytes()
        b = emit_csv(run_sweep(spec), tmp_path / "b.csv").read_bytes()
        assert a == b


class TestEmitPlotData:
    def test_series_files_per_scheme_distribution(self, tmp_path):
        records = []
        for scheme in ("RS", "IRSA"):
            for dist in ("ideal_soliton_YM", "modified_soliton_Y10", "l3"):
                for g in (0.4, 0.8):
                    records.append(
                        make_record(scheme=scheme, distribution=dist, G=g)
                    )
        written = emit_plot_data(records, tmp_path)
        t_files = [p for p in written if p.name.startswith("T__")]
        assert len(t_files) == 6
        body = (tmp_path / "T__RS__l3.dat").read_text()
        assert body == "0.4\t0.5\n0.8\t0.5\n"

    def test_pa_energy_reference_series(self, tmp_path):
        records = [
            make_record(
                scheme="PA", distribution="modified_soliton_Y10", G=g, mu=1.5,
                energy_per_user_db=-6.0, gamma_irsa_db=-2.9253,
                gamma_min_db=-8.2769, l_avg=3.428968,
            )
            for g in (0.4, 0.8)
        ]
        written = emit_plot_data(records, tmp_path)
        names = {p.name for p in written}
        assert "energy_per_user_db__PA__modified_soliton_Y10.dat" in names
        assert "energy_per_user_db__IRSA_reference__modified_soliton_Y10.dat" in names
        assert "energy_per_user_db__min_reference__modified_soliton_Y10.dat" in names
        ref = tmp_path / "energy_per_user_db__min_reference__modified_soliton_Y10.dat"
        assert ref.read_text() == "0.4\t-8.2769\n0.8\t-8.2769\n"

    def test_empty_metric_warns_and_skips(self, tmp_path, capsys):
        records = [make_record(eta_max_mean=None)]
        written = emit_plot_data(records, tmp_path)
        names = {p.name for p in written}
        assert not any(n.startswith("eta_max") for n in names)
        assert "no data" in capsys.readouterr().err


class TestMainCommands:
    def test_sweep_end_to_end(self, tmp_path):
        config = dict(MINIMAL_SWEEP, K=24, trials=5, emit_plot_data=True,
                      distribution={"name": "modified_soliton", "Y": 4})
        cfg_path = tmp_path / "c.json"
        cfg_path.write_text(json.dumps(config))
        code = main(["sweep", "--config", str(cfg_path), "--out", str(tmp_path)])
        assert code == 0
        lines = (tmp_path / "sweep.csv").read_text().splitlines()
        assert len(lines) == 3
        assert (tmp_path / "sweep.meta.json").exists()
        assert (tmp_path / "T__IRSA__modified_soliton_Y4.dat").exists()

    def test_flag_overrides_config(self, tmp_path):
        config = dict(MINIMAL_SWEEP, K=24, trials=5,
                      distribution={"name": "modified_soliton", "Y": 4})
        cfg_path = tmp_path / "c.json"
        cfg_path.write_text(json.dumps(config))
        main(["sweep", "--config", str(cfg_path), "--out", str(tmp_path),
              "--trials", "2", "--seed", "9"])
        row = (tmp_path / "sweep.csv").read_text().splitlines()[1].split(",")
        header = CSV_HEADER.split(",")
        assert row[header.index("trials")] == "2"
        assert row[header.index("seed")] == "9"

    def test_invalid_config_exit_code(self, tmp_path, capsys):
        cfg_path = tmp_path / "c.json"
        cfg_path.write_text(json.dumps({"scheme": "IRSA"}))
        assert main(["sweep", "--config", str(cfg_path)]) == 1
        assert "config error" in capsys.readouterr().err

    def test_rs_sweep_requires_parameters(self, tmp_path, capsys):
        config = dict(MINIMAL_SWEEP, scheme="RS", K=24,
                      distribution={"name": "modified_soliton", "Y": 4})
        cfg_path = tmp_path / "c.json"
        cfg_path.write_text(json.dumps(config))
        assert main(["sweep", "--config", str(cfg_path)]) == 1
        assert "alpha and beta" in capsys.readouterr().err

    def test_tune_pa_end_to_end(self, tmp_path):
        config = {
            "scheme": "PA",
            "distribution": {"name": "modified_soliton", "Y": 4},
            "K": 24,
            "G_grid": [0.6],
            "trials": 10,
            "hat_R_bits": 8.0,
            "tuning": {"tune_trials": 10},
        }
        cfg_path = tmp_path / "c.json"
        cfg_path.write_text(json.dumps(config))
        assert main(["tune", "--config", str(cfg_path), "--out", str(tmp_path)]) == 0
        meta = json.loads((tmp_path / "tune.meta.json").read_text())
        assert meta["tunings"][0]["feasible"]
        row = (tmp_path / "tune.csv").read_text().splitlines()[1].split(",")
        assert row[CSV_HEADER.split(",").index("mu")] != ""

    def test_decode_one_trace(self, tmp_path, capsys):
        # The four-message example frame decodes in a known order.
        graph = FrameGraph(5, [[1], [0, 2, 3], [0, 2, 4], [1, 2, 4]])
        edges = tmp_path / "frame.tsv"
        with open(edges, "w") as fp:
            graph.export_edges(fp)
        code = main([
            "decode-one", "--edges", str(edges), "--scheme", "IRSA",
            "--es-over-n0", "0.5",
        ])
        assert code == 0
        out = capsys.readouterr().out.splitlines()
        assert out[0].split("\t") == [
            "step", "phase", "message", "slot", "effective_sinr",
            "assigned_rate", "genie_rate",
        ]
        order = [int(line.split("\t")[2]) for line in out[1:]]
        assert order == [1, 2, 3, 0]
        slots = [line.split("\t")[3] for line in out[1:]]
        assert slots == ["3", "0", "2", "1"]

    def test_decode_one_missing_energy(self, tmp_path, capsys):
        graph = FrameGraph(3, [[0], [1], [2]])
        edges = tmp_path / "frame.tsv"
        with open(edges, "w") as fp:
            graph.export_edges(fp)
        assert main(["decode-one", "--edges", str(edges), "--scheme", "IRSA"]) == 1

    def test_decode_one_infeasible_pa(self, tmp_path, capsys):
        # Crowded frame at a high nominal rate: the energy balance fails.
        graph = FrameGraph(2, [[0, 1], [0, 1]])
        edges = tmp_path / "frame.tsv"
        with open(edges, "w") as fp:
            graph.export_edges(fp)
        code = main([
            "decode-one", "--edges", str(edges), "--scheme", "PA",
            "--hat-r-bits", "80.0", "--mu", "1.5", "--l-avg", "3.0",
        ])
        assert code == 2

    def test_compare_end_to_end(self, tmp_path):
        config = {
            "scheme": "RS",
            "distribution": {"name": "modified_soliton", "Y": 4},
            "K": 24,
            "G_grid": [0.8],
            "trials": 10,
            "tilde_Es_over_N0": 0.004,
            "tuning": {"alpha_grid": [0.2, 0.6], "beta_grid": [1.0],
                       "tune_trials": 10},
            "compare": {"es_over_N0_db_grid": [-16.0], "min_throughput": 0.5},
        }
        cfg_path = tmp_path / "c.json"
        cfg_path.write_text(json.dumps(config))
        assert main(["compare", "--config", str(cfg_path), "--out", str(tmp_path)]) == 0
        lines = (tmp_path / "compare.csv").read_text().splitlines()
        assert lines[0].startswith("scheme,es_over_N0_db")
        assert [l.split(",")[0] for l in lines[1:]] == ["RS", "IRSA", "PA"]
