#!/usr/bin/env python3
"""
Recoupling: fórmulas fechadas e dados unitários normalizados

Admissibilidade, Θ(a,b,c), tetraedros, símbolos 6j, fator de vértice f(a,b,c),
coeficientes da bolha modificada, matrizes ortogonais M[a,b,c,d] e fases λ_c^{ab}.

Cada avaliação existe em dois anéis com a mesma fórmula: exato (params=None, devolve
RationalFunction) e numérico (params=RootParams, devolve float real). Raízes quadradas
só são tiradas de quantidades positivas ([n+1], Θ̂); sinais viajam como (-1)^k.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np

from core.errors import NotAdmissible, ThetaVanishes
from core.laurent import LaurentPoly, RationalFunction, rational_sum
from core.quantum import (
    RootParams,
    delta_n,
    delta_n_at,
    eval_at_root,
    quantum_fact,
    quantum_fact_at,
    quantum_int_at,
    root_power,
)

logger = logging.getLogger(__name__)

Value = Union[RationalFunction, float]


# ============================================================
# ADMISSIBILIDADE
# ============================================================

def is_admissible(a: int, b: int, c: int, params: Optional[RootParams] = None) -> bool:
    """Paridade, triângulo e (numa raiz) a+b+c <= 2r-4 com cada rótulo <= r-2"""
    if min(a, b, c) < 0 or (a + b + c) % 2:
        return False
    if a > b + c or b > a + c or c > a + b:
        return False
    if params is not None:
        if a + b + c > 2 * params.r - 4 or max(a, b, c) > params.r - 2:
            return False
    return True


@dataclass(frozen=True)
class AdmissibleTriple:
    """Rótulos de um vértice trivalente e os fios internos m, n, p"""
    a: int
    b: int
    c: int

    @classmethod
    def create(cls, a: int, b: int, c: int, params: Optional[RootParams] = None) -> "AdmissibleTriple":
        require_admissible(a, b, c, params)
        return cls(a, b, c)

    @property
    def m(self) -> int:
        return (self.a + self.b - self.c) // 2

    @property
    def n(self) -> int:
        return (self.b + self.c - self.a) // 2

    @property
    def p(self) -> int:
        return (self.c + self.a - self.b) // 2


def require_admissible(a: int, b: int, c: int, params: Optional[RootParams] = None):
    if not is_admissible(a, b, c, params):
        reason = "fora do corte a+b+c <= 2r-4" if is_admissible(a, b, c) else "paridade ou triângulo"
        raise NotAdmissible((a, b, c), reason, params.r if params else None)


def fusion_channels(a: int, b: int, params: Optional[RootParams] = None) -> List[int]:
    """Rótulos c admissíveis com (a, b), em ordem crescente"""
    return [c for c in range(abs(a - b), a + b + 1, 2) if is_admissible(a, b, c, params)]


# ============================================================
# FÓRMULA COMPARTILHADA ENTRE OS DOIS ANÉIS
# ============================================================

def _fraction(sign: int, upper: Sequence[int], lower: Sequence[int], params: Optional[RootParams],
              fact: Callable = None):
    """sign · Π [u]! / Π [l]!  como par (num, den) exato ou como número (fact escolhe o anel)"""
    if params is None:
        num = LaurentPoly.constant(sign)
        den = LaurentPoly.constant(1)
        for k in upper:
            num = num * quantum_fact(k)
        for k in lower:
            den = den * quantum_fact(k)
        return num, den
    fact = fact or quantum_fact_at
    value = sign
    for k in upper:
        value = value * fact(k, params)
    for k in lower:
        value = value / fact(k, params)
    return value


def _as_value(fraction, params: Optional[RootParams]) -> Value:
    return RationalFunction(*fraction) if params is None else fraction


# ============================================================
# THETA E TETRAEDRO
# ============================================================

@lru_cache(maxsize=None)
def theta_closed(a: int, b: int, c: int, params: Optional[RootParams] = None) -> Value:
    """Θ(a,b,c) = (-1)^{m+n+p} [m+n+p+1]! [m]! [n]! [p]! / ([m+n]! [n+p]! [m+p]!)"""
    require_admissible(a, b, c, params)
    triple = AdmissibleTriple(a, b, c)
    total = triple.m + triple.n + triple.p
    sign = -1 if total % 2 else 1
    return _as_value(
        _fraction(sign, [total + 1, triple.m, triple.n, triple.p], [a, b, c], params), params
    )


def theta_hat(a: int, b: int, c: int, params: Optional[RootParams] = None) -> Value:
    """Θ̂ = (-1)^{(a+b+c)/2} Θ, positivo nas raízes"""
    value = theta_closed(a, b, c, params)
    return -value if ((a + b + c) // 2) % 2 else value


def _tet_vertices(a, b, i, c, d, j) -> Tuple[Tuple[int, int, int], ...]:
    return (a, b, j), (c, d, j), (a, c, i), (b, d, i)


@lru_cache(maxsize=None)
def tet_closed(a: int, b: int, i: int, c: int, d: int, j: int,
               params: Optional[RootParams] = None) -> Value:
    """
    Tetraedro com vértices (a,b,j), (c,d,j), (a,c,i), (b,d,i)

    Soma interior: Π[b_k - a_l]! / Π[e]! · Σ_s (-1)^s [s+1]! / (Π[s - a_l]! Π[b_k - s]!),
    a_l = semissomas dos vértices, b_k = semissomas dos quadriláteros (arestas menos um par oposto).
    """
    return _tet_formula(a, b, i, c, d, j, params)


def _tet_formula(a, b, i, c, d, j, params: Optional[RootParams], fact: Callable = None):
    vertices = _tet_vertices(a, b, i, c, d, j)
    for triple in vertices:
        require_admissible(*triple, params=params)

    corners = [sum(triple) // 2 for triple in vertices]
    faces = [(a + d + b + c) // 2, (a + d + i + j) // 2, (b + c + i + j) // 2]
    edges = [a, b, c, d, i, j]

    prefactor = _fraction(1, [f - v for f in faces for v in corners], edges, params, fact)
    terms = [
        _fraction(-1 if s % 2 else 1, [s + 1], [s - v for v in corners] + [f - s for f in faces], params, fact)
        for s in range(max(corners), min(faces) + 1)
    ]
    if params is None:
        return RationalFunction(*prefactor) * rational_sum(terms)
    return prefactor * sum(terms)


@lru_cache(maxsize=None)
def _complex_fact(k: int, params: RootParams) -> complex:
    return eval_at_root(quantum_fact(k), params)


def tet_at_root(a: int, b: int, i: int, c: int, d: int, j: int, params: RootParams) -> complex:
    """Mesmo tetraedro com os fatoriais exatos avaliados em A complexo (sem assumir realidade)"""
    return _tet_formula(a, b, i, c, d, j, params, _complex_fact)


def sixj(a: int, b: int, i: int, c: int, d: int, k: int, params: Optional[RootParams] = None) -> Value:
    """{a b i; c d k} = Tet[a b i; c d k] · Δ_k / (Θ(a,b,k) Θ(c,d,k))"""
    require_admissible(a, b, k, params)
    require_admissible(c, d, k, params)
    theta_ab = theta_closed(a, b, k, params)
    theta_cd = theta_closed(c, d, k, params)
    if params is None:
        if theta_ab.is_zero() or theta_cd.is_zero():
            raise ThetaVanishes(f"Θ nulo em {{{a} {b} {i}; {c} {d} {k}}}")
        return tet_closed(a, b, i, c, d, k) * RationalFunction(delta_n(k)) / (theta_ab * theta_cd)
    if abs(theta_ab) <= params.tol or abs(theta_cd) <= params.tol:
        raise ThetaVanishes(f"Θ anula-se em r={params.r} para {{{a} {b} {i}; {c} {d} {k}}}")
    return tet_closed(a, b, i, c, d, k, params) * delta_n_at(k, params) / (theta_ab * theta_cd)


# ============================================================
# NORMALIZAÇÃO UNITÁRIA (apenas numa raiz)
# ============================================================

def vertex_factor(a: int, b: int, c: int, params: RootParams) -> float:
    """f(a,b,c) = √(√([a+1][b+1][c+1]) / Θ̂(a,b,c)), positivo"""
    require_admissible(a, b, c, params)
    theta = theta_hat(a, b, c, params)
    if theta <= 0:
        raise NotAdmissible((a, b, c), f"Θ̂ não positivo ({theta})", params.r)
    loops = quantum_int_at(a + 1, params) * quantum_int_at(b + 1, params) * quantum_int_at(c + 1, params)
    return math.sqrt(math.sqrt(loops) / theta)


def bubble_coeff(a: int, b: int, c: int, params: RootParams) -> float:
    """(-1)^{(b+c-a)/2} √([b+1][c+1]/[a+1])"""
    require_admissible(a, b, c, params)
    sign = -1 if ((b + c - a) // 2) % 2 else 1
    return sign * math.sqrt(
        quantum_int_at(b + 1, params) * quantum_int_at(c + 1, params) / quantum_int_at(a + 1, params)
    )


def modified_bubble_check(a: int, b: int, c: int, params: RootParams) -> float:
    """|f(a,b,c)² Θ(a,b,c)/Δ_a - bubble_coeff(a,b,c)|"""
    lhs = vertex_factor(a, b, c, params) ** 2 * theta_closed(a, b, c, params) / delta_n_at(a, params)
    return abs(lhs - bubble_coeff(a, b, c, params))


def recoupling_denominator(a: int, b: int, c: int, d: int, params: RootParams) -> float:
    """(-1)^{(a+b+c+d)/2} √([a+1][b+1][c+1][d+1])"""
    sign = -1 if ((a + b + c + d) // 2) % 2 else 1
    product = 1.0
    for label in (a, b, c, d):
        product *= quantum_int_at(label + 1, params)
    return sign * math.sqrt(product)


def denominator_forms(a: int, b: int, c: int, d: int, j: int, params: RootParams) -> Tuple[float, float]:
    """
    As duas formas do denominador de M

    √(Δ_aΔ_b/Δ_j)·√(Δ_cΔ_d/Δ_j)·Δ_j com raízes de sinal resolvido, e a forma fechada.
    """
    require_admissible(a, b, j, params)
    require_admissible(c, d, j, params)
    bubbles = bubble_coeff(j, a, b, params) * bubble_coeff(j, c, d, params) * delta_n_at(j, params)
    return bubbles, recoupling_denominator(a, b, c, d, params)


# ============================================================
# MATRIZES DE RECOUPLING
# ============================================================

@dataclass
class RecouplingMatrix:
    """M[a,b,c,d]: linhas i acoplam (a,b),(c,d); colunas j acoplam (a,c),(b,d)"""
    a: int
    b: int
    c: int
    d: int
    r: Optional[int]
    rows: List[int]
    cols: List[int]
    entries: Union[np.ndarray, List[List[RationalFunction]]]
    exact: bool = False

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), len(self.cols)

    def to_array(self) -> np.ndarray:
        if not self.exact:
            return self.entries
        raise TypeError("Matriz exata não tem forma numérica; avalie numa raiz")

    def to_json(self) -> dict:
        if self.exact:
            entries = [[value.to_json() for value in row] for row in self.entries]
        else:
            entries = [[float(value) for value in row] for row in self.entries]
        return {
            "a": self.a, "b": self.b, "c": self.c, "d": self.d, "r": self.r,
            "rows": list(self.rows), "cols": list(self.cols), "entries": entries,
        }


def _internal_labels(a: int, b: int, c: int, d: int, params: Optional[RootParams]) -> Tuple[List[int], List[int]]:
    rows = [i for i in fusion_channels(a, b, params) if is_admissible(c, d, i, params)]
    cols = [j for j in fusion_channels(a, c, params) if is_admissible(b, d, j, params)]
    return rows, cols


def fmatrix(a: int, b: int, c: int, d: int, params: RootParams) -> RecouplingMatrix:
    """
    Matriz de recoupling modificada (real ortogonal)

    M_ij = Tet[a b j; c d i] · f(a,b,i) f(c,d,i) f(a,c,j) f(b,d,j) / D
    """
    for label in (a, b, c, d):
        if label < 0 or label > params.r - 2:
            raise NotAdmissible((a, b, c, d), f"rótulo externo {label} fora de 0..{params.r - 2}", params.r)
    rows, cols = _internal_labels(a, b, c, d, params)
    entries = np.zeros((len(rows), len(cols)))
    if rows and cols:
        denominator = recoupling_denominator(a, b, c, d, params)
        for row, i in enumerate(rows):
            left = vertex_factor(a, b, i, params) * vertex_factor(c, d, i, params)
            for col, j in enumerate(cols):
                right = vertex_factor(a, c, j, params) * vertex_factor(b, d, j, params)
                entries[row, col] = tet_closed(a, b, j, c, d, i, params) * left * right / denominator
    logger.debug(f"M[{a},{b},{c},{d}] em r={params.r}: {len(rows)}x{len(cols)}")
    return RecouplingMatrix(a, b, c, d, params.r, rows, cols, entries)


def fmatrix_inverse_labels(a: int, b: int, c: int, d: int) -> Tuple[int, int, int, int]:
    """M[a,b,c,d]^{-1} = M[a,b,c,d]^T = M[b,d,a,c]"""
    return b, d, a, c


def sixj_matrix(a: int, b: int, c: int, d: int, params: Optional[RootParams] = None) -> RecouplingMatrix:
    """Matriz não modificada S_ij = {a c i; b d j}; exata quando params é None"""
    rows, cols = _internal_labels(a, b, c, d, params)
    if params is None:
        entries = [[sixj(a, c, i, b, d, j) for j in cols] for i in rows]
        return RecouplingMatrix(a, b, c, d, None, rows, cols, entries, exact=True)
    entries = np.array([[sixj(a, c, i, b, d, j, params) for j in cols] for i in rows],
                       dtype=float).reshape(len(rows), len(cols))
    return RecouplingMatrix(a, b, c, d, params.r, rows, cols, entries)


def modified_entry_at_root(a: int, b: int, c: int, d: int, i: int, j: int, params: RootParams) -> complex:
    """Entrada M_ij com o tetraedro avaliado em A = e^{iπ/2r} complexo (verificação de realidade)"""
    tet = tet_at_root(a, b, j, c, d, i, params)
    factors = (vertex_factor(a, b, i, params) * vertex_factor(c, d, i, params)
               * vertex_factor(a, c, j, params) * vertex_factor(b, d, j, params))
    return tet * factors / recoupling_denominator(a, b, c, d, params)


# ============================================================
# FASES DE TRANÇAMENTO
# ============================================================

def _twist(x: int) -> int:
    return x * (x + 2)


@dataclass(frozen=True)
class BraidPhase:
    """λ_c^{ab}: monômio exato ou complexo unitário numa raiz"""
    a: int
    b: int
    c: int
    value: Union[LaurentPoly, complex]

    def inverse(self) -> Union[LaurentPoly, complex]:
        if isinstance(self.value, LaurentPoly):
            return self.value ** -1
        return self.value.conjugate()

    def to_json(self) -> dict:
        if isinstance(self.value, LaurentPoly):
            value = self.value.to_json()
        else:
            value = [self.value.real, self.value.imag]
        return {"a": self.a, "b": self.b, "c": self.c, "value": value}


def braid_phase(a: int, b: int, c: int, params: Optional[RootParams] = None) -> BraidPhase:
    """λ_c^{ab} = (-1)^{(a+b-c)/2} A^{(a'+b'-c')/2}, x' = x(x+2)"""
    require_admissible(a, b, c, params)
    sign = -1 if ((a + b - c) // 2) % 2 else 1
    exponent = (_twist(a) + _twist(b) - _twist(c)) // 2
    if params is None:
        return BraidPhase(a, b, c, LaurentPoly.monomial(exponent, sign))
    return BraidPhase(a, b, c, sign * root_power(exponent, params))


@dataclass
class PhaseMatrix:
    """Matriz R diagonal sobre os canais c admissíveis"""
    a: int
    b: int
    labels: List[int]
    phases: List[BraidPhase]

    @property
    def exact(self) -> bool:
        return any(isinstance(p.value, LaurentPoly) for p in self.phases)

    def to_array(self) -> np.ndarray:
        if self.exact:
            raise TypeError("Fases exatas não têm forma numérica; use rmatrix(a, b, params)")
        return np.diag(np.array([complex(p.value) for p in self.phases], dtype=complex))


def rmatrix(a: int, b: int, params: Optional[RootParams] = None) -> PhaseMatrix:
    labels = fusion_channels(a, b, params)
    return PhaseMatrix(a, b, labels, [braid_phase(a, b, c, params) for c in labels])
