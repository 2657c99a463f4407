# src/services/verification.py
# Bateria de verificações em pequena escala (oráculos e invariantes) do `irkm verify`.
#
# Cada verificação é uma função sem argumentos registrada com @register_check;
# ela falha levantando AssertionError (ou qualquer outra exceção).

import itertools
import logging
import math
import time
from dataclasses import dataclass, replace
from typing import Callable, Iterable, Optional

import numpy as np
from numpy.polynomial.hermite_e import hermegauss
from numpy.testing import assert_allclose, assert_array_equal

from src.errors import DuplicateVariableError
from src.models.dataset import TargetSpec
from src.models.experiment_config import TrainConfig
from src.models.kernel_spec import KernelSpec, WeightMatrix, WeightVector
from src.models.polynomial import FourierPolynomial, HermitePolynomial
from src.services import data_io, feature_estimators, kernels, krr, numerics, orthopoly, trainers
from src.services.target_parser import parse_target

logger = logging.getLogger(__name__)

VERIFY_SEED = 20240
CHECKS: dict[str, Callable[[], None]] = {}


def register_check(name):
    def register_check_fn(fn):
        if name in CHECKS:
            raise ValueError(f"verificação duplicada ({name})")
        CHECKS[name] = fn
        return fn

    return register_check_fn


@dataclass
class CheckResult:
    name: str
    passed: bool
    seconds: float
    detail: str = ""

    def to_dict(self):
        return {"name": self.name, "passed": self.passed, "seconds": self.seconds, "detail": self.detail}


def run_checks(names: Optional[Iterable[str]] = None) -> list[CheckResult]:
    selected = list(CHECKS) if names is None else list(names)
    results = []
    for name in selected:
        if name not in CHECKS:
            raise KeyError(f"verificação desconhecida: {name}")
        started = time.perf_counter()
        try:
            CHECKS[name]()
            result = CheckResult(name, True, time.perf_counter() - started)
        except Exception as exc:
            detail = str(exc).strip().splitlines()[0] if str(exc).strip() else type(exc).__name__
            result = CheckResult(name, False, time.perf_counter() - started, detail)
            logger.debug("Falha em %s", name, exc_info=True)
        results.append(result)
    return results


def format_table(results: list[CheckResult]) -> str:
    width = max((len(r.name) for r in results), default=10)
    lines = [f"{'CHECK':<{width}}  STATUS  TEMPO(s)  DETALHE"]
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{r.name:<{width}}  {status:<6}  {r.seconds:8.3f}  {r.detail}")
    failed = sum(not r.passed for r in results)
    lines.append(f"{len(results) - failed}/{len(results)} PASS")
    return "\n".join(lines)


# --- Auxiliares ---

def _rng(*ids):
    return data_io.substream(VERIFY_SEED, *ids)


def _rel(a, b) -> float:
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    return float(np.linalg.norm(a - b) / max(np.linalg.norm(b), 1e-300))


def _fd_gradient(fn, Z, h=1e-5):
    """Diferenças centrais de uma função escalar por linha."""
    G = np.zeros_like(Z)
    for j in range(Z.shape[1]):
        E = np.zeros_like(Z)
        E[:, j] = h
        G[:, j] = (fn(Z + E) - fn(Z - E)) / (2.0 * h)
    return G


def random_fourier(d: int, m: int, rng, max_size: int = 4) -> FourierPolynomial:
    """
    Polinômio esparso com min(m, #subconjuntos) termos distintos de tamanho
    1..max_size, sorteados sem reposição, e coeficientes N(0, 1).
    """
    subsets = [s for size in range(1, min(max_size, d) + 1) for s in itertools.combinations(range(1, d + 1), size)]
    picks = rng.choice(len(subsets), size=min(m, len(subsets)), replace=False)
    return FourierPolynomial(d, {subsets[i]: float(rng.standard_normal()) for i in picks})


def brute_force_leap(terms: list[tuple[int, ...]]) -> int:
    """Mínimo, sobre todas as ordens, do maior número de coordenadas novas por termo."""
    if not terms:
        return 0
    best = math.inf
    for order in itertools.permutations(terms):
        cover: set[int] = set()
        worst = 0
        for s in order:
            worst = max(worst, len(set(s) - cover))
            if worst >= best:
                break
            cover.update(s)
        best = min(best, worst)
    return int(best)


# --- numerics ---

@register_check("numerics.solve_spd")
def check_solve_spd():
    assert_allclose(numerics.solve_spd(np.eye(3), np.array([1.0, 2.0, 3.0]))[0], [1, 2, 3])
    assert_allclose(numerics.solve_spd(np.diag([2.0, 4.0]), np.array([2.0, 4.0]))[0], [1, 1])
    assert_allclose(numerics.solve_spd(np.array([[2.0, 1.0], [1.0, 2.0]]), np.array([3.0, 3.0]))[0], [1, 1])
    rng = _rng(0)
    for _ in range(5):
        G = rng.standard_normal((20, 20))
        A = G @ G.T + np.eye(20)
        b = rng.standard_normal(20)
        x, _ = numerics.solve_spd(A, b)
        assert np.linalg.norm(A @ x - b) <= 1e-8 * np.linalg.norm(b)


@register_check("numerics.psd_sqrt")
def check_psd_sqrt():
    assert_allclose(numerics.psd_sqrt(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]), atol=1e-12)
    v = np.array([3.0, 4.0]) / 5.0
    assert_allclose(numerics.psd_sqrt(np.outer(v, v)), np.outer(v, v), atol=1e-12)
    rng = _rng(1)
    for _ in range(5):
        A = numerics.as_symmetric(rng.standard_normal((8, 8)))
        S = numerics.psd_sqrt(A)
        assert_array_equal(S, S.T)
        assert np.linalg.eigvalsh(S).min() >= -1e-10
        plus = numerics.psd_project(A)
        assert np.linalg.norm(S @ S - plus) <= 1e-8 * (1.0 + np.linalg.norm(A))


@register_check("numerics.subspaces")
def check_subspaces():
    top = numerics.top_k_eigenspace(np.diag([1.0, 5.0, 2.0]), 1)
    assert_allclose(np.abs(top.basis[:, 0]), [0, 1, 0], atol=1e-12)
    e1 = numerics.Subspace(np.array([[1.0], [0.0]]), np.ones(1))
    e2 = numerics.Subspace(np.array([[0.0], [1.0]]), np.ones(1))
    diag = numerics.Subspace(np.array([[1.0], [1.0]]) / math.sqrt(2.0), np.ones(1))
    assert abs(numerics.principal_angle(e1, e1)) < 1e-7
    assert abs(numerics.principal_angle(e1, e2) - math.pi / 2) < 1e-12
    assert abs(numerics.principal_angle(e1, diag) - math.pi / 4) < 1e-12
    rng = _rng(2)
    U = numerics.Subspace(np.linalg.qr(rng.standard_normal((6, 3)))[0], np.ones(3))
    V = numerics.Subspace(np.linalg.qr(rng.standard_normal((6, 3)))[0], np.ones(3))
    R = data_io.random_rotation(3, rng)
    VR = numerics.Subspace(V.basis @ R, V.eigenvalues)
    assert abs(numerics.principal_angle(U, V) - numerics.principal_angle(V, U)) < 1e-10
    assert abs(numerics.principal_angle(U, V) - numerics.principal_angle(U, VR)) < 1e-10


@register_check("numerics.relative_matrix_error")
def check_relative_error():
    B = np.array([[2.0, 1.0], [1.0, 3.0]])
    assert numerics.relative_matrix_error(B, B) == 0.0
    assert abs(numerics.relative_matrix_error(2 * B, B) - 1.0) < 1e-15
    assert abs(numerics.relative_matrix_error(np.zeros((2, 2)), np.eye(2)) - 1.0) < 1e-15


# --- kernels ---

@register_check("kernels.values")
def check_kernel_values():
    linear = KernelSpec("linear_inner", 2)
    assert kernels.kernel_value(linear, [1.0, 1.0], [1.0, -1.0]) == 0.0
    assert_allclose(kernels.gram(linear, np.eye(2)), 0.5 * np.eye(2))
    gauss = KernelSpec("gaussian_radial", 2, bandwidth=1.0)
    assert_allclose(kernels.kernel_value(gauss, [1.0, 1.0], [0.0, 0.0]), math.exp(-1.0), rtol=1e-14)
    laplace = KernelSpec("laplacian_radial", 3, bandwidth=0.7)
    x = np.array([0.3, -1.0, 2.0])
    assert kernels.kernel_value(laplace, x, x, WeightVector([0.5, 2.0, 1.0])) == 1.0
    assert_allclose(kernels.kernel_input_gradient(gauss, [1.0, 0.0], [0.0, 0.0]), [-math.exp(-0.5), 0.0], atol=1e-15)


@register_check("kernels.gram_symmetry_psd")
def check_gram_psd():
    rng = _rng(3)
    X = rng.standard_normal((40, 6))
    for family in ("laplacian_radial", "gaussian_radial", "exponential_inner", "polynomial_inner"):
        spec = KernelSpec(family, 6, bandwidth=2.0)
        K = kernels.gram(spec, X)
        assert_array_equal(K, K.T)
        assert np.linalg.eigvalsh(K).min() >= -1e-8 * X.shape[0], family


@register_check("kernels.input_gradient")
def check_input_gradient():
    rng = _rng(4)
    d = 5
    w = WeightVector(rng.uniform(0.5, 2.0, d))
    for family in ("gaussian_radial", "laplacian_radial", "exponential_inner", "polynomial_inner"):
        spec = KernelSpec(family, d, bandwidth=1.5)
        x, z = rng.standard_normal(d), rng.standard_normal(d)
        analytic = kernels.kernel_input_gradient(spec, x, z, w)
        numeric = _fd_gradient(lambda P: kernels.gram(spec, P, z[None, :], w)[:, 0], x[None, :])[0]
        assert _rel(analytic, numeric) <= 1e-5, family


@register_check("kernels.weight_derivative")
def check_weight_derivative():
    rng = _rng(5)
    X = rng.standard_normal((12, 4))
    w = rng.uniform(0.5, 2.0, 4)
    h = 1e-6
    for family in ("gaussian_radial", "laplacian_radial", "exponential_inner", "polynomial_inner"):
        spec = KernelSpec(family, 4, bandwidth=2.0)
        for j in range(4):
            up, down = w.copy(), w.copy()
            up[j] += h
            down[j] -= h
            numeric = (kernels.gram(spec, X, None, WeightVector(up)) - kernels.gram(spec, X, None, WeightVector(down))) / (2 * h)
            analytic = kernels.weight_derivative_gram(spec, X, WeightVector(w), j)
            assert _rel(analytic, numeric) <= 1e-4, (family, j)


@register_check("kernels.matrix_consistency")
def check_matrix_consistency():
    rng = _rng(6)
    d = 5
    X, Z = rng.standard_normal((7, d)), rng.standard_normal((4, d))
    w = rng.uniform(0.2, 3.0, d)
    U = data_io.random_rotation(d, rng)
    for family in ("gaussian_radial", "laplacian_radial", "exponential_inner", "linear_inner"):
        spec = KernelSpec(family, d, bandwidth=1.7)
        vec, mat = WeightVector(w), WeightMatrix(np.diag(w))
        assert_allclose(kernels.matrix_gram(spec, X, Z, mat), kernels.gram(spec, X, Z, vec), atol=1e-10)
        rotated = WeightMatrix(U.T @ np.diag(w) @ U)
        assert_allclose(kernels.matrix_gram(spec, X, Z, rotated), kernels.gram(spec, X @ U.T, Z @ U.T, vec), atol=1e-10)
        for j in range(d):
            assert_allclose(kernels.matrix_weight_derivative(spec, X, mat, j, j),
                            kernels.weight_derivative_gram(spec, X, vec, j), atol=1e-10)


# --- krr ---

@register_check("krr.two_point")
def check_two_point():
    spec = KernelSpec("laplacian_radial", 2, bandwidth=1.0)
    X = np.array([[1.0, 1.0], [1.0, -1.0]])
    y = np.array([1.0, -1.0])
    a = math.exp(-2.0)
    model = krr.fit(spec, None, X, y, 0.0)
    assert_allclose(model.beta, [1.0 / (1.0 - a), -1.0 / (1.0 - a)], rtol=1e-12)
    one = krr.fit(spec, None, X[:1], y[:1], 0.0)
    assert_allclose(one.beta, y[:1])


@register_check("krr.interpolation_shrinkage")
def check_interpolation():
    rng = _rng(7)
    X = np.unique(data_io.sample_hypercube(100, 50, rng), axis=0)
    y = rng.standard_normal(X.shape[0])
    spec = KernelSpec("laplacian_radial", 50)
    model = krr.fit(spec, None, X, y, 1e-12)
    assert krr.test_mse(model, X, y) <= 1e-8
    norms = [np.linalg.norm(krr.fit(spec, None, X, y, lam).beta) for lam in (1e-3, 1e-1, 10.0)]
    assert norms[0] >= norms[1] >= norms[2], norms


@register_check("krr.predict_gradient")
def check_predict_gradient():
    rng = _rng(8)
    n, d = 50, 20
    for family in ("gaussian_radial", "exponential_inner"):
        for _ in range(3):
            X = rng.standard_normal((n, d))
            y = rng.standard_normal(n)
            model = krr.fit(KernelSpec(family, d), None, X, y, 1e-3)
            Z = rng.standard_normal((5, d))
            numeric = _fd_gradient(lambda P: krr.predict(model, P), Z)
            assert _rel(krr.predict_gradient(model, Z), numeric) <= 1e-5, family
    X = rng.standard_normal((10, 4))
    model = krr.fit(KernelSpec("linear_inner", 4), None, X, rng.standard_normal(10), 0.1)
    G = krr.predict_gradient(model, rng.standard_normal((3, 4)))
    assert_allclose(G, np.tile(X.T @ model.beta / 4, (3, 1)), rtol=1e-12, atol=1e-14)


# --- feature_estimators ---

@register_check("feature_estimators.identities")
def check_estimator_identities():
    rng = _rng(9)
    n, d = 30, 6
    X = data_io.sample_hypercube(n, d, rng)
    y = rng.standard_normal(n)
    w = rng.uniform(0.5, 2.0, d)
    for family in ("exponential_inner", "polynomial_inner", "gaussian_radial", "laplacian_radial"):
        spec = KernelSpec(family, d, bandwidth=2.5)
        model = krr.fit(spec, WeightVector(w), X, y, 1e-2)
        G2 = feature_estimators.empirical_sq_gradient_weights(model, X)
        A = feature_estimators.agop(model, X)
        assert _rel(np.diag(A), G2) <= 1e-10, family
        D = feature_estimators.dn_vector(model)
        mat_model = krr.fit(spec, WeightMatrix(np.diag(w)), X, y, 1e-2)
        assert _rel(np.diag(feature_estimators.dn_matrix(mat_model)), D) <= 1e-8, family
        if not spec.is_radial:
            assert D.min() >= -1e-8 * float(model.beta @ model.beta), family

    # caminho dual: (1/(n d²))‖K′ X_j β‖² com K′ = g′(t) entre pontos de treino
    spec = KernelSpec("exponential_inner", d)
    model = krr.fit(spec, None, X, y, 1e-2)
    Kp = kernels.weight_derivative_factor(spec, X, model.weight)
    dual = np.array([np.sum((Kp @ (X[:, j] * model.beta)) ** 2) for j in range(d)]) / (n * d * d)
    assert _rel(feature_estimators.empirical_sq_gradient_weights(model, X), dual) <= 1e-8

    linear = krr.fit(KernelSpec("linear_inner", d), None, X, y, 1e-1)
    assert_allclose(feature_estimators.dn_vector(linear), (X.T @ linear.beta) ** 2 / d, rtol=1e-10)
    assert_allclose(feature_estimators.empirical_sq_gradient_weights(linear, X), (X.T @ linear.beta / d) ** 2, rtol=1e-10)


@register_check("feature_estimators.normalization")
def check_normalization():
    assert_allclose(feature_estimators.safeguard_normalize(np.zeros(4), 0.1).w, np.ones(4))
    assert_allclose(feature_estimators.safeguard_normalize(np.array([3.0, 1.0]), 1e-15).w, [1.5, 0.5])
    rng = _rng(10)
    v = rng.exponential(size=9)
    w = feature_estimators.safeguard_normalize(v, 0.05)
    assert abs(w.w.sum() - 9) <= 1e-9 * 9
    assert_array_equal(np.argsort(w.w, kind="stable"), np.argsort(v, kind="stable"))
    assert_allclose(feature_estimators.safeguard_normalize(7 * v, 7 * 0.05).w, w.w, rtol=1e-12)
    mixed = feature_estimators.mix(WeightVector([2.0, 0.0]), WeightVector([0.0, 2.0]), 0.5)
    assert_allclose(mixed.w, [1.0, 1.0])
    assert_allclose(feature_estimators.safeguard_normalize_matrix(np.zeros((3, 3)), 0.1).M, np.eye(3))
    G = rng.standard_normal((5, 5))
    M = feature_estimators.safeguard_normalize_matrix(G @ G.T, 0.01)
    assert abs(np.trace(M.M) - 5) <= 1e-9 * 5


@register_check("feature_estimators.dn_assembly")
def check_dn_assembly():
    rng = _rng(11)
    X = data_io.sample_hypercube(20, 5, rng)
    w = rng.uniform(0.5, 2.0, 5)
    model = krr.fit(KernelSpec("exponential_inner", 5), WeightVector(w), X, rng.standard_normal(20), 1e-2)
    _, raw2 = feature_estimators.irkm_update_terms(model, X)
    assert_allclose(raw2, feature_estimators.dn_vector(model) * w / 20, rtol=1e-12)


# --- trainers ---

def _small_problem(seed: int, d: int = 6, n: int = 40):
    target = TargetSpec(parse_target("x1 + x2 + x1*x2*x3", d), noise_sigma=0.1)
    source = data_io.SyntheticSource(target, "hypercube", n, seed)
    test_set = data_io.synthetic_dataset(target, "hypercube", 100, seed, data_io.STREAM_TEST)
    config = TrainConfig(alpha=0.5, eps_s="d^-0.75", T=3, lam=1e-3, kernel=KernelSpec("laplacian_radial", d),
                         n_per_step=n, early_stop_patience=0, subspace_rank=2)
    return config, source, test_set


@register_check("trainers.determinism")
def check_trainer_determinism():
    for run in (trainers.irkm_run, trainers.rfm_run):
        traces = [run(*_small_problem(seed=5))[1] for _ in range(2)]
        assert [r.to_dict() for r in traces[0].steps] == [r.to_dict() for r in traces[1].steps], run.__name__


@register_check("trainers.normalization")
def check_trainer_normalization():
    config, source, test_set = _small_problem(seed=6)
    eps = config.eps_value
    _, trace = trainers.irkm_run(config, source, test_set)
    for record in trace.steps:
        w = np.array(record.weights)
        assert abs(w.sum() - config.d) <= 1e-10 * config.d
        floor = min(config.d * eps / (np.sum(raw) + config.d * eps) for raw in (record.w1_raw, record.w2_raw))
        assert w.min() >= floor * (1 - 1e-12)
    _, trace = trainers.rfm_run(*_small_problem(seed=6))
    for record in trace.steps:
        assert abs(sum(record.eigvals) - config.d) <= 1e-9 * config.d
        assert min(record.eigvals) > 0


@register_check("trainers.one_step")
def check_trainer_one_step():
    config, source, test_set = _small_problem(seed=7)
    config = replace(config, T=1)
    model, trace = trainers.irkm_run(config, source, test_set)
    batch = source.batch(1)
    baseline, mse = trainers.krr_baseline(config, batch.X, batch.y, test_set)
    assert_array_equal(model.beta, baseline.beta)
    assert trace.best.test_mse == mse
    raw1, raw2 = feature_estimators.irkm_update_terms(baseline, batch.X)
    expected = feature_estimators.mix(
        feature_estimators.safeguard_normalize(raw1, config.eps_value),
        feature_estimators.safeguard_normalize(raw2, config.eps_value),
        config.alpha,
    )
    assert_allclose(trace.steps[0].weights, expected.w, rtol=1e-14)


# --- orthopoly ---

@register_check("orthopoly.coordinate_weights")
def check_coordinate_weights():
    rng = _rng(12)
    for _ in range(10):
        d = int(rng.integers(3, 9))
        f = random_fourier(d, int(rng.integers(1, 6)), rng)
        H = orthopoly.full_enumeration(d)
        for p in (1, 2, None):
            g = f if p is None else orthopoly.truncate(f, p)
            for j in range(1, d + 1):
                oracle = np.mean(orthopoly.hypercube_derivative(g, H, j) ** 2)
                assert abs(orthopoly.coordinate_weight(f, j, p) - oracle) <= 1e-10


@register_check("orthopoly.fourier_identities")
def check_fourier_identities():
    rng = _rng(13)
    for _ in range(10):
        d = int(rng.integers(2, 8))
        f = random_fourier(d, int(rng.integers(1, 6)), rng)
        H = orthopoly.full_enumeration(d)
        values = orthopoly.eval_fourier(f, H)
        assert abs(np.mean(values ** 2) - sum(c * c for c in f.terms.values())) <= 1e-10
        for S, coef in f.terms.items():
            chi = np.prod(H[:, [i - 1 for i in S]], axis=1)
            assert abs(np.mean(values * chi) - orthopoly.fourier_coefficient(f, S)) <= 1e-10
            assert abs(orthopoly.fourier_coefficient(f, S) - coef) <= 1e-15
    f1 = parse_target("x1 + x2 + x3 + x1*x2*x3", 3)
    assert orthopoly.eval_fourier(f1, np.ones(3)) == 4.0
    assert orthopoly.truncate(f1, 1) == parse_target("x1 + x2 + x3", 3)


@register_check("orthopoly.leap")
def check_leap():
    assert orthopoly.leap_complexity(parse_target("x1 + x2 + x1*x2*x3 + x1*x2*x3*x4")) == 1
    assert orthopoly.leap_complexity(parse_target("x1*x2 + x1*x2*x3*x4")) == 2
    g = parse_target("x1 + x2 + x1*x2*x3 + x3*x4*x6")
    assert orthopoly.max_leap_component(g, 1) == parse_target("x1 + x2 + x1*x2*x3", 6)
    rng = _rng(14)
    for _ in range(40):
        f = random_fourier(8, int(rng.integers(1, 8)), rng)
        terms = list(f.terms)
        assert orthopoly.leap_complexity(f) == brute_force_leap(terms)
        k = int(rng.integers(1, 4))
        kept = list(orthopoly.max_leap_component(f, k).terms)
        assert brute_force_leap(kept) <= k
        # maximalidade: qualquer termo excluído traz > k coordenadas novas
        # mesmo depois de toda a cobertura do componente
        cover = set().union(*kept)
        for extra in set(terms) - set(kept):
            assert len(set(extra) - cover) > k, (extra, k)


@register_check("orthopoly.hermite")
def check_hermite():
    assert abs(orthopoly.hermite_eval(2, 1.0)) < 1e-15
    assert orthopoly.hermite_eval(0, 3.7) == 1.0
    nodes, weights = hermegauss(30)
    weights = weights / math.sqrt(2.0 * math.pi)
    H = np.array([orthopoly.hermite_eval(k, nodes) for k in range(6)])
    assert_allclose((H * weights) @ H.T, np.eye(6), atol=1e-10)
    f = HermitePolynomial(1, {((1, 2),): math.sqrt(2.0)})
    assert abs(orthopoly.hermite_coordinate_weight(f, 1, 2) - 4.0) < 1e-12
    h = 1e-4
    dfdx = (orthopoly.eval_hermite_poly(f, (nodes + h)[:, None]) - orthopoly.eval_hermite_poly(f, (nodes - h)[:, None])) / (2 * h)
    assert abs(weights @ dfdx ** 2 - 4.0) < 1e-6


# --- data_io / parser ---

@register_check("data_io.streams_and_labels")
def check_data_io():
    a = data_io.sample_gaussian(5, 3, data_io.substream(1, 7))
    data_io.sample_gaussian(5, 3, data_io.substream(1, 8))
    assert_array_equal(a, data_io.sample_gaussian(5, 3, data_io.substream(1, 7)))
    assert not np.array_equal(a, data_io.sample_gaussian(5, 3, data_io.substream(1, 8)))
    U = data_io.random_rotation(6, _rng(15))
    assert np.linalg.norm(U.T @ U - np.eye(6)) <= 1e-10
    assert abs(abs(np.linalg.det(U)) - 1.0) <= 1e-8
    target = TargetSpec(parse_target("x1 + x2 + x3 + x1*x2*x3", 3))
    y = data_io.label(target, orthopoly.full_enumeration(3))
    assert sorted(y.tolist()) == [-4.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 4.0]


@register_check("target_parser.examples")
def check_parser():
    f = parse_target("x1 + x2 + x3 + x1*x2*x3")
    assert len(f) == 4 and all(c == 1.0 for c in f.terms.values())
    assert parse_target("2*x1 - x2").terms == {(1,): 2.0, (2,): -1.0}
    try:
        parse_target("x1*x1")
    except DuplicateVariableError:
        pass
    else:
        raise AssertionError("x1*x1 deveria ser rejeitado")
