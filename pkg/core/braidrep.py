#!/usr/bin/env python3
"""
Representações de tranças em bases de árvores de fusão

Árvore em pente à esquerda (((ℓℓ)ℓ)...)ℓ com rótulos internos x_1..x_{n-1}, x_{n-1} = t.
σ_1 é diagonal com λ_{x_1}^{ℓℓ}; σ_i (i >= 2) troca x_{i-1} pelo movimento de
associatividade F = fmove(x_{i-2}, ℓ, ℓ, x_i), bloco F·Λ·Fᵀ (x_0 = ℓ).
compile_braid aplica a PRIMEIRA letra primeiro (fator mais à direita).
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from core.errors import IndexOutOfRange, ParseError
from core.laurent import RationalFunction
from core.quantum import RootParams, delta_n, delta_n_at
from core.recoupling import braid_phase, fmatrix, fusion_channels, sixj

logger = logging.getLogger(__name__)


# ============================================================
# TIPOS
# ============================================================

@dataclass(frozen=True)
class FusionPath:
    """Rotulagem admissível do pente: internals = (x_1, ..., x_{n-1})"""
    leaf_label: int
    internals: Tuple[int, ...]

    def label(self, k: int) -> int:
        """x_k com x_0 = ℓ"""
        return self.leaf_label if k == 0 else self.internals[k - 1]


@dataclass
class FusionBasis:
    n: int
    leaf_label: int
    total: int
    params: Optional[RootParams]
    paths: List[FusionPath] = field(default_factory=list)

    def __post_init__(self):
        self._index = {path.internals: k for k, path in enumerate(self.paths)}

    def __len__(self) -> int:
        return len(self.paths)

    def index_of(self, internals: Tuple[int, ...]) -> Optional[int]:
        return self._index.get(tuple(internals))

    def to_json(self) -> List[List[int]]:
        return [list(path.internals) for path in self.paths]


@dataclass(frozen=True)
class BraidWord:
    """Palavra de trança em n fios; letras ±1 .. ±(n-1)"""
    n: int
    letters: Tuple[int, ...] = ()

    def __post_init__(self):
        for letter in self.letters:
            if letter == 0 or abs(letter) > self.n - 1:
                raise IndexOutOfRange(f"Letra {letter} fora de ±1..±{self.n - 1}")

    @classmethod
    def parse(cls, text: str, strands: Optional[int] = None) -> "BraidWord":
        """'1,-2,1' -> σ_1 σ_2^{-1} σ_1; n = max|letra| + 1 salvo se strands for dado"""
        letters = []
        stripped = text.strip()
        if stripped:
            for item in stripped.split(","):
                item = item.strip()
                if not item:
                    raise ParseError(f"Item vazio na palavra de trança: '{text}'")
                try:
                    letter = int(item)
                except ValueError:
                    raise ParseError(f"Item não inteiro na palavra de trança: '{item}'") from None
                if letter == 0:
                    raise ParseError("Gerador 0 não existe (use ±1..±(n-1))")
                letters.append(letter)
        if strands is None:
            if not letters:
                raise ParseError("Palavra vazia exige --strands")
            strands = max(abs(letter) for letter in letters) + 1
        return cls(strands, tuple(letters))

    def __add__(self, other: "BraidWord") -> "BraidWord":
        return BraidWord(max(self.n, other.n), self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.n, tuple(-letter for letter in reversed(self.letters)))

    def __str__(self) -> str:
        return ",".join(str(letter) for letter in self.letters)


@dataclass
class ReportEntry:
    """Resultado de uma verificação: desvio máximo sobre uma configuração de rótulos"""
    check: str
    labels: Tuple[int, ...]
    deviation: float

    def passed(self, tol: float) -> bool:
        return self.deviation < tol

    def to_json(self) -> dict:
        return {"check": self.check, "labels": list(self.labels), "deviation": self.deviation}


# ============================================================
# BASES
# ============================================================

def enumerate_basis(n: int, ell: int, t: int, params: Optional[RootParams] = None) -> FusionBasis:
    """Todos os caminhos admissíveis em ordem lexicográfica; base vazia é legal"""
    if n < 1:
        raise ValueError(f"Base exige n >= 1, atual: {n}")
    paths: List[FusionPath] = []
    if n == 1:
        if t == ell and fusion_channels(ell, 0, params):
            paths.append(FusionPath(ell, ()))
        return FusionBasis(n, ell, t, params, paths)

    def extend(prefix: Tuple[int, ...], current: int):
        if len(prefix) == n - 1:
            if current == t:
                paths.append(FusionPath(ell, prefix))
            return
        for label in fusion_channels(current, ell, params):
            extend(prefix + (label,), label)

    extend((), ell)
    logger.debug(f"Base n={n} ℓ={ell} t={t}: {len(paths)} caminhos")
    return FusionBasis(n, ell, t, params, paths)


def path_count(n: int, ell: int, t: int, params: Optional[RootParams] = None) -> int:
    """Contagem por matriz de transferência, independente da enumeração"""
    if n == 1:
        return 1 if t == ell and fusion_channels(ell, 0, params) else 0
    counts: Dict[int, int] = {ell: 1}
    for _ in range(n - 1):
        following: Dict[int, int] = {}
        for label, count in counts.items():
            for nxt in fusion_channels(label, ell, params):
                following[nxt] = following.get(nxt, 0) + count
        counts = following
    return counts.get(t, 0)


def total_charges(n: int, ell: int, params: Optional[RootParams] = None) -> List[int]:
    """Cargas totais t com base não vazia"""
    labels = {ell}
    for _ in range(n - 1):
        labels = {c for x in labels for c in fusion_channels(x, ell, params)}
    return sorted(labels)


# ============================================================
# GERADORES NUMÉRICOS
# ============================================================

@lru_cache(maxsize=None)
def _fmove_table(p: int, q: int, r: int, s: int, params: RootParams) -> Dict[Tuple[int, int], float]:
    matrix = fmove(p, q, r, s, params)
    return {(u, v): matrix.entries[row, col]
            for row, u in enumerate(matrix.rows) for col, v in enumerate(matrix.cols)}


def fmove(p: int, q: int, r: int, s: int, params: RootParams):
    """
    Movimento ((pq)_u r)_s -> (p(qr)_v)_s: linhas u (árvore esquerda), colunas v

    L_u = Σ_v F_uv R_v, com F = M[p, q, s, r].
    """
    return fmatrix(p, q, s, r, params)


def fentry(p: int, q: int, r: int, s: int, u: int, v: int, params: RootParams) -> float:
    """F(p,q,r,s)_{uv}; zero quando u ou v não são canais válidos"""
    if min(p, q, r, s) < 0 or max(p, q, r, s) > params.r - 2:
        return 0.0
    return _fmove_table(p, q, r, s, params).get((u, v), 0.0)


def _phase(a: int, b: int, c: int, params: RootParams, inverse: bool = False) -> complex:
    phase = braid_phase(a, b, c, params)
    return phase.inverse() if inverse else phase.value


def _check_generator(basis: FusionBasis, i: int):
    if not 1 <= i <= basis.n - 1:
        raise IndexOutOfRange(f"σ_{i} fora de 1..{basis.n - 1}")


def sigma_matrix(basis: FusionBasis, i: int, inverse: bool = False) -> np.ndarray:
    """Matriz unitária de σ_i (ou σ_i^{-1}, com fases conjugadas) na base de fusão"""
    _check_generator(basis, i)
    params = basis.params
    if params is None:
        raise ValueError("sigma_matrix numérica exige RootParams; use compile_braid_exact")
    ell = basis.leaf_label
    size = len(basis)
    matrix = np.zeros((size, size), dtype=complex)

    if i == 1:
        for k, path in enumerate(basis.paths):
            matrix[k, k] = _phase(ell, ell, path.label(1), params, inverse)
        return matrix

    for col, path in enumerate(basis.paths):
        left, right = path.label(i - 2), path.label(i)
        u = path.label(i - 1)
        channels = fusion_channels(ell, ell, params)
        for u_new in fusion_channels(left, ell, params):
            internals = list(path.internals)
            internals[i - 2] = u_new
            row = basis.index_of(tuple(internals))
            if row is None:
                continue
            value = 0j
            for y in channels:
                weight = fentry(left, ell, ell, right, u_new, y, params) * fentry(left, ell, ell, right, u, y, params)
                if weight:
                    value += weight * _phase(ell, ell, y, params, inverse)
            matrix[row, col] = value
    return matrix


def sigma_inverse_matrix(basis: FusionBasis, i: int) -> np.ndarray:
    return sigma_matrix(basis, i, inverse=True)


def compile_braid(basis: FusionBasis, word: BraidWord) -> np.ndarray:
    """U = σ(w_k) ··· σ(w_1): a primeira letra age primeiro"""
    if word.n != basis.n:
        raise IndexOutOfRange(f"Palavra em {word.n} fios, base em {basis.n}")
    cache: Dict[int, np.ndarray] = {}
    unitary = np.eye(len(basis), dtype=complex)
    for letter in word.letters:
        if letter not in cache:
            cache[letter] = sigma_matrix(basis, abs(letter), inverse=letter < 0)
        unitary = cache[letter] @ unitary
    return unitary


def check_unitarity(matrix: np.ndarray) -> float:
    """‖U†U - I‖_max"""
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.size == 0:
        return 0.0
    return float(np.max(np.abs(matrix.conj().T @ matrix - np.eye(matrix.shape[0]))))


def max_deviation(x: np.ndarray, y: np.ndarray) -> float:
    if np.size(x) == 0:
        return 0.0
    return float(np.max(np.abs(np.asarray(x) - np.asarray(y))))


def matrix_to_json(basis: FusionBasis, matrix: np.ndarray) -> dict:
    return {
        "n": basis.n,
        "ell": basis.leaf_label,
        "t": basis.total,
        "r": basis.params.r if basis.params else None,
        "basis": basis.to_json(),
        "matrix": [[[float(z.real), float(z.imag)] for z in row] for row in matrix],
    }


# ============================================================
# VERIFICAÇÕES DE COERÊNCIA
# ============================================================

def check_braid_relations(n: int, ell: int, t: int, params: RootParams) -> List[ReportEntry]:
    """σ_iσ_{i+1}σ_i = σ_{i+1}σ_iσ_{i+1}, σ_iσ_j = σ_jσ_i (|i-j| >= 2) e σ_iσ_i^{-1} = 1"""
    basis = enumerate_basis(n, ell, t, params)
    entries: List[ReportEntry] = []
    if not len(basis):
        return entries
    sigmas = {i: sigma_matrix(basis, i) for i in range(1, n)}
    identity = np.eye(len(basis))
    for i in range(1, n):
        entries.append(ReportEntry("inverse", (n, ell, t, i),
                                   max_deviation(sigmas[i] @ sigma_inverse_matrix(basis, i), identity)))
        entries.append(ReportEntry("unitarity", (n, ell, t, i), check_unitarity(sigmas[i])))
    for i in range(1, n - 1):
        lhs = sigmas[i] @ sigmas[i + 1] @ sigmas[i]
        rhs = sigmas[i + 1] @ sigmas[i] @ sigmas[i + 1]
        entries.append(ReportEntry("braid", (n, ell, t, i), max_deviation(lhs, rhs)))
    for i in range(1, n):
        for j in range(i + 2, n):
            entries.append(ReportEntry("commute", (n, ell, t, i, j),
                                       max_deviation(sigmas[i] @ sigmas[j], sigmas[j] @ sigmas[i])))
    return entries


def random_words(n: int, count: int, max_length: int, seed: int) -> List[BraidWord]:
    rng = np.random.default_rng(seed)
    words = []
    for _ in range(count):
        length = int(rng.integers(0, max_length + 1))
        letters = rng.integers(1, n, size=length) * rng.choice([-1, 1], size=length)
        words.append(BraidWord(n, tuple(int(x) for x in letters)))
    return words


def check_random_unitarity(n: int, ell: int, t: int, params: RootParams,
                           count: int, max_length: int, seed: int) -> List[ReportEntry]:
    basis = enumerate_basis(n, ell, t, params)
    if not len(basis) or n < 2:
        return []
    worst = max(check_unitarity(compile_braid(basis, word))
                for word in random_words(n, count, max_length, seed))
    return [ReportEntry("random-unitarity", (n, ell, t), worst)]


def _labels_upto(params: RootParams, max_label: Optional[int]) -> range:
    top = params.r - 2 if max_label is None else min(max_label, params.r - 2)
    return range(top + 1)


def pentagon_check(params: RootParams, max_label: Optional[int] = None) -> List[ReportEntry]:
    """
    Pentágono: F(f,c,d,e)_{gh} F(a,b,h,e)_{fk} = Σ_m F(a,b,c,g)_{fm} F(a,m,d,e)_{gk} F(b,c,d,k)_{mh}

    Uma entrada por (a, b, c, d, e) com o desvio máximo sobre os rótulos internos.
    """
    labels = _labels_upto(params, max_label)
    everything = range(params.r - 1)
    entries: List[ReportEntry] = []
    for a, b, c, d in product(labels, repeat=4):
        worst: Dict[int, float] = {}
        for f in fusion_channels(a, b, params):
            for g in fusion_channels(f, c, params):
                for e in fusion_channels(g, d, params):
                    for h in fusion_channels(c, d, params):
                        for k in fusion_channels(b, h, params):
                            lhs = fentry(f, c, d, e, g, h, params) * fentry(a, b, h, e, f, k, params)
                            rhs = sum(fentry(a, b, c, g, f, m, params) * fentry(a, m, d, e, g, k, params)
                                      * fentry(b, c, d, k, m, h, params) for m in everything)
                            worst[e] = max(worst.get(e, 0.0), abs(lhs - rhs))
        for e, deviation in sorted(worst.items()):
            entries.append(ReportEntry("pentagon", (a, b, c, d, e), deviation))
    logger.debug(f"Pentágono r={params.r}: {len(entries)} configurações")
    return entries


def hexagon_check(params: RootParams, max_label: Optional[int] = None,
                  mirror: bool = False) -> List[ReportEntry]:
    """
    Hexágono: Σ_f F(a,b,c,d)_{ef} λ_d^{af} F(b,c,a,d)_{fg} = λ_e^{ab} F(b,a,c,d)_{eg} λ_g^{ac}

    mirror=True usa as fases conjugadas (trançamento inverso).
    """
    labels = _labels_upto(params, max_label)
    entries: List[ReportEntry] = []
    for a, b, c, d in product(labels, repeat=4):
        worst = None
        for e in fusion_channels(a, b, params):
            if d not in fusion_channels(e, c, params):
                continue
            for g in fusion_channels(a, c, params):
                if d not in fusion_channels(b, g, params):
                    continue
                lhs = 0j
                for f in fusion_channels(b, c, params):
                    if d not in fusion_channels(a, f, params):
                        continue
                    lhs += (fentry(a, b, c, d, e, f, params) * _phase(a, f, d, params, mirror)
                            * fentry(b, c, a, d, f, g, params))
                rhs = (_phase(a, b, e, params, mirror) * fentry(b, a, c, d, e, g, params)
                       * _phase(a, c, g, params, mirror))
                deviation = abs(lhs - rhs)
                worst = deviation if worst is None else max(worst, deviation)
        if worst is not None:
            entries.append(ReportEntry("hexagon-mirror" if mirror else "hexagon", (a, b, c, d), worst))
    logger.debug(f"Hexágono r={params.r} (espelho={mirror}): {len(entries)} configurações")
    return entries


# ============================================================
# REPRESENTAÇÃO EXATA E INVARIANTE POR TRAÇO
# ============================================================

Matrix = List[List[RationalFunction]]


def _exact_identity(size: int) -> Matrix:
    return [[RationalFunction(1 if r == c else 0) for c in range(size)] for r in range(size)]


def _exact_product(x: Matrix, y: Matrix) -> Matrix:
    size = len(x)
    result = []
    for r in range(size):
        row = []
        for c in range(size):
            total = RationalFunction(0)
            for k in range(size):
                if not x[r][k].is_zero() and not y[k][c].is_zero():
                    total = total + x[r][k] * y[k][c]
            row.append(total)
        result.append(row)
    return result


def _exact_phase(a: int, b: int, c: int, inverse: bool) -> RationalFunction:
    phase = braid_phase(a, b, c)
    return RationalFunction(phase.inverse() if inverse else phase.value)


def sigma_matrix_exact(basis: FusionBasis, i: int, inverse: bool = False) -> Matrix:
    """
    σ_i em A genérico com símbolos 6j não modificados

    Bloco (u', u) = Σ_y {ℓ c y; ℓ d u'} λ_y {ℓ ℓ u; c d y}, c = x_{i-2}, d = x_i.
    """
    _check_generator(basis, i)
    ell = basis.leaf_label
    size = len(basis)
    matrix = [[RationalFunction(0) for _ in range(size)] for _ in range(size)]
    if i == 1:
        for k, path in enumerate(basis.paths):
            matrix[k][k] = _exact_phase(ell, ell, path.label(1), inverse)
        return matrix

    for col, path in enumerate(basis.paths):
        left, right = path.label(i - 2), path.label(i)
        u = path.label(i - 1)
        channels = [y for y in fusion_channels(ell, ell) if y in fusion_channels(left, right)]
        for u_new in fusion_channels(left, ell):
            internals = list(path.internals)
            internals[i - 2] = u_new
            row = basis.index_of(tuple(internals))
            if row is None:
                continue
            value = RationalFunction(0)
            for y in channels:
                value = value + (sixj(ell, left, y, ell, right, u_new)
                                 * _exact_phase(ell, ell, y, inverse)
                                 * sixj(ell, ell, u, left, right, y))
            matrix[row][col] = value
    return matrix


def compile_braid_exact(basis: FusionBasis, word: BraidWord) -> Matrix:
    if word.n != basis.n:
        raise IndexOutOfRange(f"Palavra em {word.n} fios, base em {basis.n}")
    cache: Dict[int, Matrix] = {}
    result = _exact_identity(len(basis))
    for letter in word.letters:
        if letter not in cache:
            cache[letter] = sigma_matrix_exact(basis, abs(letter), inverse=letter < 0)
        result = _exact_product(cache[letter], result)
    return result


def closure_invariant_via_trace(word: BraidWord, params: Optional[RootParams] = None, ell: int = 1):
    """
    Σ_t Δ_t · Tr ρ_t(w) sobre as cargas totais t

    Igual ao colchete bruto do fecho (palavra vazia em n fios -> d^n). Exato quando params é None.
    """
    if ell != 1:
        raise ValueError("Invariante por traço só para ℓ = 1 (fechos cabeados fora de escopo)")
    n = word.n
    if params is None:
        total = RationalFunction(0)
        for t in total_charges(n, ell):
            basis = enumerate_basis(n, ell, t)
            matrix = compile_braid_exact(basis, word)
            trace = RationalFunction(0)
            for k in range(len(basis)):
                trace = trace + matrix[k][k]
            total = total + RationalFunction(delta_n(t)) * trace
        return total
    total = 0j
    for t in total_charges(n, ell, params):
        basis = enumerate_basis(n, ell, t, params)
        total += delta_n_at(t, params) * complex(np.trace(compile_braid(basis, word)))
    return total
