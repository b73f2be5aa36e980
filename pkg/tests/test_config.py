import json
import subprocess
import sys
from pathlib import Path

import pytest

from dra_py import harness, methods
from dra_py.config import DatasetSource, ExperimentConfig, LocalConfig
from dra_py.config.local_config import LOCAL_CONFIG_NAME
from dra_py.errors import ConfigError, IoError


class TestExperimentConfig:
    def test_defaults(self):
        cfg = ExperimentConfig()
        cfg.validate()
        assert cfg.counts == [3, 3, 3]
        assert (cfg.rho, cfg.mu_pe, cfg.mu_te) == (1e-2, 1e-3, 1e1)
        assert cfg.t == "auto"
        assert cfg.dataset.kind == "synth"

    def test_from_dict(self):
        cfg = ExperimentConfig.from_dict(
            {"method": "DRA-TE-exp", "counts": [4, 2, 3], "dataset": {"c": 6, "seed": 9}}
        )
        assert cfg.method == "DRA-TE-exp"
        assert cfg.counts == [4, 2, 3]
        assert cfg.dataset == DatasetSource(c=6, seed=9)

    def test_unknown_keys(self):
        with pytest.raises(ConfigError, match="unknown config keys"):
            ExperimentConfig.from_dict({"lambda": 1.0})
        with pytest.raises(ConfigError, match="unknown dataset keys"):
            ExperimentConfig.from_dict({"dataset": {"classes": 3}})

    @pytest.mark.parametrize(
        "values",
        [
            {"method": "LDA"},
            {"counts": [1, 3, 3]},
            {"counts": [3, 3]},
            {"repetitions": 0},
            {"rho": 0.0},
            {"mu": -1.0},
            {"mu_te": 0.0},
            {"t": 0},
            {"t": "all"},
            {"pca_q": 0},
            {"select_count": 0},
            {"strategy": "plrc"},
            {"split": "kfold"},
            {"anchor": "middle"},
            {"eig_backend": "arpack"},
            {"dataset": {"kind": "mat"}},
            {"dataset": {"kind": "csv"}},
            {"dataset": []},
        ],
    )
    def test_invalid(self, values):
        with pytest.raises(ConfigError):
            ExperimentConfig.from_dict(values)

    @pytest.mark.parametrize(
        "values",
        [
            {"rho": "abc"},
            {"rho": True},
            {"rho": float("nan")},
            {"mu": "big"},
            {"mu_pe": None},
            {"counts": 3},
            {"counts": "333"},
            {"counts": [3, 3.5, 3]},
            {"repetitions": "30"},
            {"repetitions": 2.0},
            {"seed": [1]},
            {"t": True},
            {"pca_q": "20"},
            {"select_count": "all"},
            {"method": ["NFS"]},
            {"strategy": 1},
            {"dataset": {"c": "ten"}},
            {"dataset": {"d": 30.5}},
            {"dataset": {"seed": None}},
            {"dataset": {"noise_sigma": "0.1"}},
            {"dataset": {"class_sep": [1.0]}},
            {"dataset": {"variation_scale": "x"}},
            {"dataset": {"kind": "csv", "path": 7}},
        ],
    )
    def test_wrong_types(self, values):
        with pytest.raises(ConfigError):
            ExperimentConfig.from_dict(values)

    def test_integers_accepted_for_real_fields(self):
        cfg = ExperimentConfig.from_dict({"rho": 1, "mu": 2, "dataset": {"noise_sigma": 0}})
        assert (cfg.rho, cfg.mu, cfg.dataset.noise_sigma) == (1, 2, 0)

    def test_not_an_object(self):
        with pytest.raises(ConfigError):
            ExperimentConfig.from_dict([1, 2])

    def test_save_then_load(self, tmp_path):
        cfg = ExperimentConfig(method="PCA+DRA-PE-eig", pca_q=20, t=4, seed=12)
        path = tmp_path / "experiment.json"
        cfg.save(path)
        assert ExperimentConfig.load(path) == cfg

    def test_load_defaults_fill_missing_keys(self, tmp_path):
        path = tmp_path / "experiment.json"
        defaults = {"eig_backend": "lapack"}
        path.write_text(json.dumps({"method": "NFS"}))
        assert ExperimentConfig.load(path, defaults=defaults).eig_backend == "lapack"
        path.write_text(json.dumps({"method": "NFS", "eig_backend": "jacobi"}))
        assert ExperimentConfig.load(path, defaults=defaults).eig_backend == "jacobi"

    def test_load_invalid_json(self, tmp_path):
        path = tmp_path / "experiment.json"
        path.write_text("{method: NFS}")
        with pytest.raises(ConfigError):
            ExperimentConfig.load(path)

    def test_load_missing_file(self, tmp_path):
        with pytest.raises(IoError):
            ExperimentConfig.load(tmp_path / "absent.json")

    def test_resolve_training_method(self):
        echo = ExperimentConfig(method="DRA-TE-eig").resolve(7)
        assert echo["c"] == 7
        assert echo["t"] == 7
        assert echo["mu"] == 10.0
        assert echo["dataset"]["kind"] == "synth"

    def test_resolve_overrides(self):
        echo = ExperimentConfig(method="DRA-PE-eig", t=3, mu=0.5).resolve(7)
        assert (echo["t"], echo["mu"]) == (3, 0.5)
        assert ExperimentConfig(method="DRA-PE-exp").resolve(7)["mu"] is None

    def test_resolve_baseline(self):
        echo = ExperimentConfig(method="NFS").resolve(4)
        assert echo["t"] == "auto"
        assert echo["mu"] is None

    def test_method_table_shared_with_harness(self):
        assert harness.parse_method is methods.parse_method
        assert harness.METHODS == methods.METHODS
        with pytest.raises(ConfigError, match="unknown method"):
            ExperimentConfig(method="PCA+NFS").validate()

    def test_config_loads_without_harness(self):
        code = "import sys, dra_py.config; sys.exit(int('dra_py.harness' in sys.modules))"
        root = Path(__file__).resolve().parents[1]
        assert subprocess.run([sys.executable, "-c", code], cwd=root).returncode == 0


class TestLocalConfig:
    def test_save_then_load(self, tmp_path):
        path = tmp_path / LOCAL_CONFIG_NAME
        LocalConfig(threads=4, format="csv", eig_backend="lapack").save(path)
        assert LocalConfig.load(path) == LocalConfig(threads=4, format="csv", eig_backend="lapack")

    def test_partial_file_keeps_defaults(self, tmp_path):
        path = tmp_path / LOCAL_CONFIG_NAME
        path.write_text(json.dumps({"threads": 2}))
        assert LocalConfig.load(path) == LocalConfig(threads=2)

    def test_missing_or_malformed(self, tmp_path):
        path = tmp_path / LOCAL_CONFIG_NAME
        assert LocalConfig.load(path) is None
        path.write_text("not json")
        assert LocalConfig.load(path) is None
        path.write_text(json.dumps({"threads": "many"}))
        assert LocalConfig.load(path) is None

    def test_find_walks_upward(self, tmp_path):
        nested = tmp_path / "a" / "b"
        nested.mkdir(parents=True)
        LocalConfig(threads=3).save(tmp_path / LOCAL_CONFIG_NAME)
        assert LocalConfig.find_config(nested) == (tmp_path / LOCAL_CONFIG_NAME).resolve()

    def test_load_from_working_directory(self, tmp_path, monkeypatch):
        LocalConfig(format="csv").save(tmp_path / LOCAL_CONFIG_NAME)
        nested = tmp_path / "runs"
        nested.mkdir()
        monkeypatch.chdir(nested)
        assert LocalConfig.load().format == "csv"

    def test_save_defaults_to_working_directory(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        LocalConfig(threads=5).save()
        assert json.loads((tmp_path / LOCAL_CONFIG_NAME).read_text())["threads"] == 5
