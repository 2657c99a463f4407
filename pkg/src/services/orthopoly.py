# src/services/orthopoly.py
# Motor de verdade de referência: Fourier-Walsh no hipercubo, Hermite no
# espaço gaussiano, truncamentos, pesos por coordenada, derivadas discretas,
# complexidade de salto e componente máxima de salto k.

import itertools
import math
from typing import Iterable, Optional

import numpy as np
from numpy.typing import NDArray

from src.errors import (
    DimensionMismatchError,
    IndexOutOfRangeError,
    NegativeDegreeError,
    TooManyTermsError,
    UnsupportedPError,
)
from src.models.polynomial import FourierPolynomial, HermitePolynomial, Subset

MAX_LEAP_TERMS = 20


# --- Fourier-Walsh ---

def _as_points(d: int, x) -> tuple[NDArray, bool]:
    X = np.asarray(x, dtype=float)
    single = X.ndim == 1
    if single:
        X = X[None, :]
    if X.ndim != 2 or X.shape[1] != d:
        raise DimensionMismatchError(f"pontos de dimensão {d} esperados, recebido shape {np.shape(x)}")
    return X, single


def eval_fourier(f: FourierPolynomial, x) -> NDArray:
    """Σ_S b_S Π_{i∈S} x_i; aceita um ponto ou uma matriz de pontos, em qualquer x real."""
    X, single = _as_points(f.d, x)
    out = np.zeros(X.shape[0])
    for subset, coef in f.terms.items():
        cols = [i - 1 for i in subset]
        out += coef * np.prod(X[:, cols], axis=1)
    return out[0] if single else out


def gradient_fourier(f: FourierPolynomial, x) -> NDArray:
    """Gradiente da extensão multilinear: ∂_i f = Σ_{S∋i} b_S Π_{k∈S\\i} x_k."""
    X, single = _as_points(f.d, x)
    G = np.zeros_like(X)
    for subset, coef in f.terms.items():
        cols = [i - 1 for i in subset]
        for pos, col in enumerate(cols):
            rest = cols[:pos] + cols[pos + 1:]
            G[:, col] += coef * np.prod(X[:, rest], axis=1)
    return G[0] if single else G


def truncate(f: FourierPolynomial, p: int) -> FourierPolynomial:
    """f_{≤p}: termos com |S| ≤ p."""
    return FourierPolynomial(f.d, {s: c for s, c in f.terms.items() if len(s) <= p})


def slice_degree(f: FourierPolynomial, p: int) -> FourierPolynomial:
    """Termos com |S| = p."""
    return FourierPolynomial(f.d, {s: c for s, c in f.terms.items() if len(s) == p})


def _check_coordinate(d: int, j: int):
    if not 1 <= j <= d:
        raise IndexOutOfRangeError(f"coordenada {j} fora de [1, {d}]")


def coordinate_weight(f: FourierPolynomial, j: int, p: Optional[int] = None) -> float:
    """E(∂_j f_{≤p})² = Σ_{S∋j, |S|≤p} b_S²; p=None significa sem truncamento."""
    _check_coordinate(f.d, j)
    return float(sum(c * c for s, c in f.terms.items() if j in s and (p is None or len(s) <= p)))


def coordinate_weights(f: FourierPolynomial, p: Optional[int] = None) -> NDArray:
    """Vetor com coordinate_weight para j = 1..d."""
    out = np.zeros(f.d)
    for s, c in f.terms.items():
        if p is None or len(s) <= p:
            for i in s:
                out[i - 1] += c * c
    return out


def discrete_derivative(f: FourierPolynomial, S: Iterable[int]) -> FourierPolynomial:
    """D_S f: termos T ⊇ S viram T \\ S; os demais somem."""
    S = frozenset(S)
    for j in S:
        _check_coordinate(f.d, j)
    return FourierPolynomial(
        f.d, {tuple(i for i in T if i not in S): c for T, c in f.terms.items() if S <= set(T)}
    )


def fourier_coefficient(f: FourierPolynomial, S: Iterable[int]) -> float:
    """E[D_S f] = b_S, o termo constante da derivada discreta."""
    return discrete_derivative(f, S).terms.get((), 0.0)


def full_enumeration(d: int) -> NDArray:
    """Todos os 2^d vértices de {±1}^d, um por linha."""
    return np.array(list(itertools.product((-1.0, 1.0), repeat=d)))


def hypercube_derivative(f: FourierPolynomial, X: NDArray, j: int) -> NDArray:
    """(f(x^{j→1}) − f(x^{j→−1}))/2 avaliada nas linhas de X."""
    _check_coordinate(f.d, j)
    up, down = np.array(X, dtype=float), np.array(X, dtype=float)
    up[:, j - 1] = 1.0
    down[:, j - 1] = -1.0
    return (eval_fourier(f, up) - eval_fourier(f, down)) / 2.0


# --- Complexidade de salto ---
#
# Um termo S é "adicionável" a uma cobertura C se |S \ C| ≤ k. Como C só
# cresce, um termo adicionável continua adicionável: a regra é monótona.
# Logo o fecho a partir de C = ∅ (adicionar qualquer termo adicionável até
# não haver mais) não depende da ordem e contém todo subconjunto de termos
# com salto ≤ k: dada uma ordem válida S_1..S_m, o primeiro S_i fora do fecho
# teria todos os anteriores dentro dele e seria adicionável. O fecho é então
# o único subconjunto maximal de salto ≤ k, e Leap(f) é o menor k cujo fecho
# cobre todos os termos.

def _nonconstant_terms(f: FourierPolynomial) -> list[Subset]:
    return [s for s in f.terms if s]


def _closure(terms: list[Subset], k: int) -> list[Subset]:
    """Termos na ordem em que o fecho os adiciona."""
    cover: set[int] = set()
    pending = list(terms)
    added: list[Subset] = []
    progress = True
    while progress:
        progress = False
        for s in list(pending):
            if len(set(s) - cover) <= k:
                cover.update(s)
                added.append(s)
                pending.remove(s)
                progress = True
    return added


def leap_complexity(f: FourierPolynomial) -> int:
    terms = _nonconstant_terms(f)
    if len(terms) > MAX_LEAP_TERMS:
        raise TooManyTermsError(f"{len(terms)} termos; o limite é {MAX_LEAP_TERMS}")
    if not terms:
        return 0
    lo, hi = 1, max(len(s) for s in terms)
    while lo < hi:
        mid = (lo + hi) // 2
        if len(_closure(terms, mid)) == len(terms):
            hi = mid
        else:
            lo = mid + 1
    return lo


def leap_ordering(f: FourierPolynomial, k: int) -> list[Subset]:
    """Ordem testemunha em que cada termo traz ≤ k coordenadas novas (só os termos alcançáveis)."""
    return _closure(_nonconstant_terms(f), k)


def max_leap_component(f: FourierPolynomial, k: int) -> FourierPolynomial:
    """L_k f: o maior subpolinômio de f com salto ≤ k (o termo constante sempre entra)."""
    keep = set(_closure(_nonconstant_terms(f), k))
    keep.add(())
    return FourierPolynomial(f.d, {s: c for s, c in f.terms.items() if s in keep})


# --- Hermite ---

def hermite_eval(k: int, x) -> NDArray:
    """h_k normalizado em L²(γ), pela recorrência h_{k+1} = (x h_k − √k h_{k−1})/√(k+1)."""
    if k < 0:
        raise NegativeDegreeError(f"grau {k} negativo")
    x = np.asarray(x, dtype=float)
    prev, cur = np.zeros_like(x), np.ones_like(x)
    for m in range(k):
        prev, cur = cur, (x * cur - math.sqrt(m) * prev) / math.sqrt(m + 1)
    return cur


def hermite_eval_multi(alpha, x) -> NDArray:
    """h_α(x) = Π_i h_{α_i}(x_i); α denso de tamanho d."""
    alpha = [int(a) for a in alpha]
    X, single = _as_points(len(alpha), x)
    out = np.ones(X.shape[0])
    for i, k in enumerate(alpha):
        if k:
            out *= hermite_eval(k, X[:, i])
    return out[0] if single else out


def eval_hermite_poly(f: HermitePolynomial, x) -> NDArray:
    X, single = _as_points(f.d, x)
    out = np.zeros(X.shape[0])
    for alpha, coef in f.terms.items():
        term = np.full(X.shape[0], coef)
        for i, k in alpha:
            term *= hermite_eval(k, X[:, i - 1])
        out += term
    return out[0] if single else out


def fourier_to_hermite(f: FourierPolynomial) -> HermitePolynomial:
    """x^S = Π_{i∈S} h_1(x_i), então os coeficientes são os mesmos."""
    return HermitePolynomial(f.d, {tuple((i, 1) for i in s): c for s, c in f.terms.items()})


def hermite_coordinate_weight(f: HermitePolynomial, r: int, p: int) -> float:
    """
    E(∂_r f_{≤p})² para p ∈ {1, 2}:
    p=1: b_{e_r}²; p=2: b_{e_r}² + 2 b_{2e_r}² + Σ_{j≠r} b_{e_j+e_r}².
    """
    if p not in (1, 2):
        raise UnsupportedPError(f"p={p}: só há forma fechada para p ≤ 2")
    _check_coordinate(f.d, r)
    total = 0.0
    for alpha, coef in f.terms.items():
        degree = sum(k for _, k in alpha)
        power = dict(alpha).get(r, 0)
        # ∂_r h_α = √α_r h_{α−e_r}, e α ↦ α−e_r é injetiva
        if power and degree <= p:
            total += power * coef * coef
    return float(total)
