# src/models/polynomial.py
# Polinômios esparsos: Fourier-Walsh no hipercubo e Hermite no espaço gaussiano.
# Coordenadas são 1-based, como nas variáveis x1, x2, ...

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from src.errors import DimensionMismatchError, IndexOutOfRangeError

Subset = tuple[int, ...]
MultiIndex = tuple[tuple[int, int], ...]


def _format_coef(coef: float) -> str:
    return repr(float(coef))


@dataclass(frozen=True)
class FourierPolynomial:
    """f(x) = Σ_S b_S Π_{i∈S} x_i, sem coeficientes nulos armazenados."""

    d: int
    terms: Mapping[Subset, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.d < 1:
            raise DimensionMismatchError("a dimensão deve ser ≥ 1")
        merged: dict[Subset, float] = {}
        for subset, coef in dict(self.terms).items():
            key = tuple(sorted(set(int(i) for i in subset)))
            if len(key) != len(subset):
                raise ValueError(f"índices repetidos no termo {subset}")
            if key and (key[0] < 1 or key[-1] > self.d):
                raise IndexOutOfRangeError(f"termo {subset} fora de [1, {self.d}]")
            merged[key] = merged.get(key, 0.0) + float(coef)
        clean = {k: v for k, v in sorted(merged.items(), key=lambda kv: (len(kv[0]), kv[0])) if v != 0.0}
        object.__setattr__(self, "terms", clean)

    @classmethod
    def from_terms(cls, d: int, items: Iterable[tuple[Iterable[int], float]]) -> "FourierPolynomial":
        """Soma termos repetidos em vez de sobrescrever."""
        acc: dict[Subset, float] = {}
        for subset, coef in items:
            key = tuple(sorted(subset))
            acc[key] = acc.get(key, 0.0) + float(coef)
        return cls(d, acc)

    @property
    def degree(self):
        return max((len(s) for s in self.terms), default=0)

    @property
    def support(self) -> set[int]:
        """Coordenadas que aparecem em algum termo."""
        return {i for s in self.terms for i in s}

    def __len__(self):
        return len(self.terms)

    def to_text(self) -> str:
        parts = []
        for subset, coef in self.terms.items():
            mono = "*".join(f"x{i}" for i in subset)
            if not mono:
                parts.append(_format_coef(coef))
            elif coef == 1.0:
                parts.append(mono)
            else:
                parts.append(f"{_format_coef(coef)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    def to_dict(self):
        return {"d": self.d, "terms": [[list(s), c] for s, c in self.terms.items()]}


@dataclass(frozen=True)
class HermitePolynomial:
    """
    f(x) = Σ_α b_α h_α(x) com h_α = Π_i h_{α_i}(x_i) normalizados.

    O multi-índice α é guardado esparso: pares (coordenada, grau) com grau ≥ 1.
    """

    d: int
    terms: Mapping[MultiIndex, float] = field(default_factory=dict)

    def __post_init__(self):
        clean: dict[MultiIndex, float] = {}
        for alpha, coef in dict(self.terms).items():
            pairs = tuple(sorted((int(i), int(k)) for i, k in alpha if k != 0))
            coords = [i for i, _ in pairs]
            if len(set(coords)) != len(coords):
                raise ValueError(f"coordenada repetida no multi-índice {alpha}")
            if any(i < 1 or i > self.d for i in coords):
                raise IndexOutOfRangeError(f"multi-índice {alpha} fora de [1, {self.d}]")
            if any(k < 0 for _, k in pairs):
                raise ValueError(f"grau negativo no multi-índice {alpha}")
            clean[pairs] = clean.get(pairs, 0.0) + float(coef)
        object.__setattr__(self, "terms", {k: v for k, v in clean.items() if v != 0.0})

    @classmethod
    def from_dense(cls, items: Iterable[tuple[Iterable[int], float]]) -> "HermitePolynomial":
        """Constrói a partir de multi-índices densos (α_1, ..., α_d)."""
        items = list(items)
        d = len(list(items[0][0])) if items else 1
        return cls(d, {tuple((i + 1, k) for i, k in enumerate(alpha) if k): c for alpha, c in items})

    @property
    def degree(self):
        return max((sum(k for _, k in a) for a in self.terms), default=0)

    def coefficient(self, alpha: Mapping[int, int]) -> float:
        key = tuple(sorted((i, k) for i, k in alpha.items() if k))
        return self.terms.get(key, 0.0)

    def to_dict(self):
        return {"d": self.d, "terms": [[[list(p) for p in a], c] for a, c in self.terms.items()]}
