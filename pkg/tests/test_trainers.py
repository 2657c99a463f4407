# tests/test_trainers.py
# Laços IRKM e RFM, linha de base KRR e reproduções em escala de bancada.

import numpy as np
import pytest

from src.errors import EmptyDataSourceError
from src.models.dataset import Dataset, TargetSpec
from src.models.experiment_config import ExperimentConfig, TrainConfig
from src.models.kernel_spec import KernelSpec, WeightMatrix, WeightVector
from src.services import data_io, experiments, krr, trainers
from src.services.target_parser import parse_target

F1 = "x1 + x2 + x3 + x1*x2*x3"
F2 = "x1 + x2 + x1*x2*x3 + x1*x2*x3*x4"


def _config(d=8, n=60, T=4, alpha=0.5, patience=3, family="laplacian_radial", lam=1e-3):
    return TrainConfig(alpha=alpha, eps_s="d^-0.75", T=T, lam=lam, kernel=KernelSpec(family, d),
                       n_per_step=n, early_stop_patience=patience, subspace_rank=2)


def _problem(d=8, n=60, seed=0, noise=0.1, text=F1, resample=True):
    target = TargetSpec(parse_target(text, d), noise_sigma=noise)
    source = data_io.SyntheticSource(target, "hypercube", n, seed, resample=resample)
    test_set = data_io.synthetic_dataset(target, "hypercube", 200, seed, data_io.STREAM_TEST)
    return target, source, test_set


def _zero_problem(d=6, n=30):
    X = data_io.sample_hypercube(n, d, data_io.substream(1, 0))
    return data_io.FixedSource(Dataset(X, np.zeros(n))), Dataset(X[:10], np.zeros(10))


class TestIrkmRun:
    def test_one_step_equals_baseline(self):
        _, source, test_set = _problem()
        config = _config(T=1)
        model, trace = trainers.irkm_run(config, source, test_set)
        first = source.batch(1)
        baseline, mse = trainers.krr_baseline(config, first.X, first.y, test_set)
        np.testing.assert_array_equal(model.beta, baseline.beta)
        assert len(trace) == 1 and trace.best.test_mse == mse
        assert isinstance(model.weight, WeightVector)

    def test_trace_is_deterministic(self):
        config = _config()
        _, source_a, test_a = _problem(seed=4)
        _, source_b, test_b = _problem(seed=4)
        _, trace_a = trainers.irkm_run(config, source_a, test_a)
        _, trace_b = trainers.irkm_run(config, source_b, test_b)
        assert [r.to_dict() for r in trace_a.steps] == [r.to_dict() for r in trace_b.steps]

    def test_weights_normalized_and_positive(self):
        config = _config(patience=0)
        _, source, test_set = _problem()
        _, trace = trainers.irkm_run(config, source, test_set)
        assert len(trace) == config.T
        eps = config.eps_value
        for record in trace.steps:
            w = np.array(record.weights)
            assert w.sum() == pytest.approx(config.d)
            bounds = [config.d * eps / (np.sum(raw) + config.d * eps) for raw in (record.w1_raw, record.w2_raw)]
            assert w.min() >= min(bounds) * (1 - 1e-12)
            assert record.test_mse >= 0
            assert record.top_coordinates[0] == int(np.argmax(w)) + 1

    def test_best_model_matches_best_record(self):
        _, source, test_set = _problem(noise=0.3)
        model, trace = trainers.irkm_run(_config(T=5, patience=0), source, test_set)
        assert trace.best.test_mse == min(trace.test_mses())
        assert krr.test_mse(model, test_set.X, test_set.y) == trace.best.test_mse

    def test_early_stop_on_flat_loss(self):
        source, test_set = _zero_problem()
        _, trace = trainers.irkm_run(_config(d=6, T=10, patience=1), source, test_set)
        assert len(trace) == 2 and trace.best_step() == 1

    def test_zero_labels_keep_uniform_weights(self):
        source, test_set = _zero_problem()
        model, trace = trainers.irkm_run(_config(d=6, T=3, patience=0), source, test_set)
        np.testing.assert_allclose(trace.steps[-1].weights, np.ones(6))
        np.testing.assert_array_equal(model.beta, 0.0)

    def test_empty_test_set(self):
        _, source, _ = _problem()
        with pytest.raises(EmptyDataSourceError):
            trainers.irkm_run(_config(), source, Dataset(np.zeros((0, 8)), np.zeros(0)))


class TestRfmRun:
    def test_zero_labels_keep_identity(self):
        source, test_set = _zero_problem()
        model, trace = trainers.rfm_run(_config(d=6, T=3, patience=0), source, test_set)
        assert isinstance(model.weight, WeightMatrix)
        for record in trace.steps:
            np.testing.assert_allclose(record.eigvals, np.ones(6), atol=1e-12)

    def test_records_ground_truth_diagnostics(self):
        target, source, test_set = _problem()
        truth = data_io.ground_truth_agop(target, "hypercube", 5000, data_io.substream(0, data_io.STREAM_GROUND_TRUTH))
        _, trace = trainers.rfm_run(_config(T=2, patience=0), source, test_set, ground_truth_agop=truth)
        for record in trace.steps:
            assert record.agop_error >= 0
            assert 0 <= record.principal_angle <= np.pi / 2 + 1e-12
            assert np.sum(record.eigvals) == pytest.approx(8.0)

    def test_diagonal_target_ranking_matches_irkm(self):
        _, source, test_set = _problem(d=12, n=300, text="x4 + x5 + x6 + x4*x5*x6")
        config = _config(d=12, n=300, T=4, patience=0)
        rfm_model, _ = trainers.rfm_run(config, source, test_set)
        irkm_model, _ = trainers.irkm_run(config, source, test_set)
        rfm_top = np.argsort(-np.diag(rfm_model.weight.M), kind="stable")[:3]
        irkm_top = np.argsort(-irkm_model.weight.w, kind="stable")[:3]
        assert set(rfm_top) == set(irkm_top) == {3, 4, 5}

    def test_without_ground_truth(self):
        _, source, test_set = _problem()
        _, trace = trainers.rfm_run(_config(T=2), source, test_set)
        assert all(r.agop_error is None and r.principal_angle is None for r in trace.steps)


class TestKrrBaseline:
    def test_no_training_points(self):
        _, _, test_set = _problem()
        with pytest.raises(EmptyDataSourceError):
            trainers.krr_baseline(_config(), np.zeros((0, 8)), np.zeros(0), test_set)

    def test_two_point_case(self):
        X = np.array([[1.0, 1.0], [-1.0, 1.0]])
        y = np.array([1.0, -1.0])
        config = TrainConfig(alpha=0.5, eps_s=0.1, T=1, lam=0.0,
                             kernel=KernelSpec("laplacian_radial", 2, bandwidth=1.0), n_per_step=2, subspace_rank=1)
        model, mse = trainers.krr_baseline(config, X, y, Dataset(X, y))
        assert mse == pytest.approx(0.0, abs=1e-20)
        a = np.exp(-2.0)
        np.testing.assert_allclose(model.beta, np.array([1.0, -1.0]) / (1.0 - a))


# --- Reproduções em escala de bancada (lentas) ---

def _experiment(**overrides):
    data = {"method": "irkm", "d": 100, "n": 300, "T": 10, "target": F1, "noise_sigma": 0.1,
            "alpha": 0.5, "lambda": 1e-3, "kernel": {"family": "laplacian_radial"}, "test_size": 2000}
    data.update(overrides)
    return ExperimentConfig.from_dict(data)


@pytest.mark.slow
class TestDeskScaleBehaviour:
    def test_coordinate_identification(self):
        config = _experiment()
        hits = 0
        for seed in range(5):
            result = experiments.execute(config, seed)
            w = np.array(result.trace.best.weights)
            separated = w[:3].min() >= 3 * w[3:].max()
            hits += separated and result.trace.best.test_mse <= 0.5 * result.baseline_mse
        assert hits >= 4

    def test_hierarchical_coordinates(self):
        config = _experiment(target=F2, n=500, T=15)
        hits = 0
        for seed in range(5):
            result = experiments.execute(config, seed)
            w = np.array(result.trace.best.weights)
            strong = min(w[2], w[3]) >= 3 * np.median(w[4:])
            hits += strong and result.trace.best.test_mse < result.baseline_mse
        assert hits >= 4

    def test_alpha_ablation_direction(self):
        mixed = [experiments.execute(_experiment(target=F2, n=500, T=15), s).trace.steps[-1].test_mse for s in range(5)]
        plain = [experiments.execute(_experiment(target=F2, n=500, T=15, alpha=0.0), s).trace.steps[-1].test_mse
                 for s in range(5)]
        assert np.mean(mixed) <= np.mean(plain)

    def test_rotated_rfm_angle_shrinks(self):
        config = _experiment(method="rfm", d=60, n=1500, T=25, target=F2, rotation=True, early_stop_patience=0)
        hits = 0
        for seed in range(5):
            angles = [r.principal_angle for r in experiments.execute(config, seed).trace.steps]
            hits += angles[-1] <= angles[0] / 2
        assert hits >= 3

    def test_rotated_rfm_agop_error_moving_average_decreases(self):
        config = _experiment(method="rfm", d=60, n=1500, T=25, target=F2, rotation=True, early_stop_patience=0)
        hits = 0
        for seed in range(5):
            errors = np.array([r.agop_error for r in experiments.execute(config, seed).trace.steps])
            smooth = np.convolve(errors, np.ones(5) / 5, mode="valid")
            hits += smooth[-1] < smooth[0] and bool(np.all(np.diff(smooth) <= 0.05 * smooth[:-1]))
        assert hits >= 3
