# tests/test_experiment_config.py
# Validação das configurações de experimento, do bloco csv e do treino.

import pytest

from src.errors import ConfigError
from src.models.experiment_config import ExperimentConfig, TrainConfig
from src.models.kernel_spec import KernelSpec


def _base(**overrides):
    data = {"method": "irkm", "distribution": "hypercube", "d": 10, "n": 50, "target": "x1 + x2*x3"}
    data.update(overrides)
    return data


class TestExperimentConfig:
    def test_defaults(self):
        config = ExperimentConfig.from_dict(_base())
        assert config.T == 20 and config.alpha == 0.5 and config.lam == 1e-3
        assert config.eps_s == "d^-0.75" and config.noise_sigma == 0.1
        assert config.kernel.family == "laplacian_radial" and config.kernel.sigma is None
        assert config.seeds == (0,)

    def test_distribution_defaults_to_hypercube(self):
        data = _base()
        del data["distribution"]
        assert ExperimentConfig.from_dict(data).distribution == "hypercube"

    @pytest.mark.parametrize("overrides, key", [
        ({"alpha": 1.5}, "alpha"),
        ({"alpha": -0.1}, "alpha"),
        ({"method": "svm"}, "method"),
        ({"lambda": -1}, "lambda"),
        ({"T": 0}, "T"),
        ({"eps_s": "d^-0.5"}, "eps_s"),
        ({"seeds": []}, "seeds"),
        ({"subspace_rank": 11}, "subspace_rank"),
        ({"colour": "blue"}, "colour"),
        ({"kernel": {"family": "cosine"}}, "kernel.family"),
        ({"kernel": {"bandwidth": 1.0}}, "kernel.bandwidth"),
        ({"kernel": {"sigma": 0}}, "kernel.sigma"),
        ({"d": True}, "d"),
        ({"target": "x1 + * x2"}, "target"),
        ({"target": "x1 + x20"}, "target"),
    ])
    def test_invalid_values(self, overrides, key):
        with pytest.raises(ConfigError) as info:
            ExperimentConfig.from_dict(_base(**overrides))
        assert info.value.key == key

    def test_missing_target_and_sizes(self):
        data = _base()
        del data["target"]
        with pytest.raises(ConfigError) as info:
            ExperimentConfig.from_dict(data)
        assert info.value.key == "target"
        data = _base()
        del data["n"]
        with pytest.raises(ConfigError) as info:
            ExperimentConfig.from_dict(data)
        assert info.value.key == "n"

    def test_round_trip(self):
        config = ExperimentConfig.from_dict(_base(
            n_exponents=[1.0, 1.5], seeds=[0, 1], kernel={"family": "gaussian_radial", "sigma": 2.0},
            eps_s=0.01, rotation=True,
        ))
        assert ExperimentConfig.from_dict(config.to_dict()) == config

    def test_grid(self):
        assert ExperimentConfig.from_dict(_base(d=100, n_exponents=[1.0])).grid() == [100]
        assert ExperimentConfig.from_dict(_base(n_exponents=[1.5])).grid() == [32]
        assert ExperimentConfig.from_dict(_base(n_values=[7, 9])).grid() == [7, 9]
        assert ExperimentConfig.from_dict(_base()).grid() == [50]


class TestCsvBlock:
    def test_valid_block(self):
        config = ExperimentConfig.from_dict({
            "method": "rfm", "distribution": "csv",
            "csv": {"train_path": "train.csv", "label_column": "y", "test_fraction": 0.2, "task": "binary"},
        })
        assert config.csv.task == "binary" and config.d is None
        assert ExperimentConfig.from_dict(config.to_dict()) == config

    def test_multiclass_task(self):
        config = ExperimentConfig.from_dict({
            "method": "irkm", "distribution": "csv",
            "csv": {"train_path": "train.csv", "label_column": "y", "test_fraction": 0.2, "task": "multiclass"},
        })
        assert config.csv.task == "multiclass"

    @pytest.mark.parametrize("block, key", [
        ({"train_path": "a.csv", "label_column": "y"}, "csv.test_path"),
        ({"train_path": "a.csv", "label_column": "y", "test_path": "b.csv", "test_fraction": 0.1}, "csv.test_path"),
        ({"train_path": "a.csv", "label_column": "y", "test_fraction": 1.0}, "csv.test_fraction"),
        ({"train_path": "a.csv", "label_column": "y", "test_fraction": 0.1, "task": "ordinal"}, "csv.task"),
        ({"label_column": "y", "test_fraction": 0.1}, "csv.train_path"),
    ])
    def test_invalid_blocks(self, block, key):
        with pytest.raises(ConfigError) as info:
            ExperimentConfig.from_dict({"method": "irkm", "distribution": "csv", "csv": block})
        assert info.value.key == key

    def test_block_required(self):
        with pytest.raises(ConfigError) as info:
            ExperimentConfig.from_dict({"method": "irkm", "distribution": "csv"})
        assert info.value.key == "csv"


class TestTrainConfig:
    def test_eps_rule(self):
        config = ExperimentConfig.from_dict(_base(d=100)).train_config(100, 50, 0)
        assert config.eps_value == pytest.approx(100 ** -0.75)

    def test_validation(self):
        spec = KernelSpec("laplacian_radial", 4)
        with pytest.raises(ConfigError) as info:
            TrainConfig(alpha=2.0, eps_s=0.1, T=3, lam=1e-3, kernel=spec, n_per_step=5)
        assert info.value.key == "alpha"
        with pytest.raises(ConfigError):
            TrainConfig(alpha=0.5, eps_s=0.0, T=3, lam=1e-3, kernel=spec, n_per_step=5)
        with pytest.raises(ConfigError):
            TrainConfig(alpha=0.5, eps_s=0.1, T=3, lam=1e-3, kernel=spec, n_per_step=5, subspace_rank=5)
