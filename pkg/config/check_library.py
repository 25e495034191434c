#!/usr/bin/env python3
"""
Biblioteca de Verificações com Classificação Automática
Suítes de coerência do tlrecoupling e limites de desvio de cada uma
"""

from enum import Enum
from dataclasses import dataclass
from typing import Dict, List, Optional


class CheckSuite(Enum):
    ORTHOGONALITY = "orthogonality"   # M·Mᵀ = I, M·M[b,d,a,c] = I, realidade
    BRAID = "braid"                   # relações de trança, comutação, unitariedade
    PENTAGON = "pentagon"
    HEXAGON = "hexagon"               # ambas as orientações
    ORACLE = "oracle"                 # fórmulas fechadas == oráculo diagramático (exato)
    BUBBLE = "bubble"                 # bolha modificada + formas do denominador


class CheckVerdict(Enum):
    PASSED = "passed"        # 🟢 dentro da tolerância
    MARGINAL = "marginal"    # ⚠️ dentro da tolerância, mas perto do limite
    VIOLATION = "violation"  # 🚨 fora da tolerância


@dataclass
class CheckThreshold:
    """Limites de desvio para classificação automática"""
    violation_above: float
    marginal_above: Optional[float] = None
    exact: bool = False
    description: str = ""

    def classify(self, deviation: float, tol: Optional[float] = None) -> CheckVerdict:
        """Classifica um desvio; tol (da linha de comando) substitui o limite padrão"""
        limit = self.violation_above if tol is None or self.exact else tol
        if self.exact:
            return CheckVerdict.PASSED if deviation == 0 else CheckVerdict.VIOLATION
        if deviation >= limit:
            return CheckVerdict.VIOLATION
        marginal = self.marginal_above if tol is None else limit / 10
        if marginal is not None and deviation >= marginal:
            return CheckVerdict.MARGINAL
        return CheckVerdict.PASSED


# ============================================================
# LIMITES POR SUÍTE
# ============================================================

CHECK_THRESHOLDS: Dict[CheckSuite, CheckThreshold] = {
    CheckSuite.ORTHOGONALITY: CheckThreshold(
        violation_above=1e-9,
        marginal_above=1e-11,
        description="‖M Mᵀ - I‖, ‖M M[b,d,a,c] - I‖, ‖Mᵀ - M[b,d,a,c]‖, |Im|"
    ),
    CheckSuite.BRAID: CheckThreshold(
        violation_above=1e-9,
        marginal_above=1e-11,
        description="relações de trança e ‖U†U - I‖ em palavras aleatórias"
    ),
    CheckSuite.PENTAGON: CheckThreshold(
        violation_above=1e-9,
        marginal_above=1e-11,
        description="duas rotas de ((ab)c)d para a(b(cd))"
    ),
    CheckSuite.HEXAGON: CheckThreshold(
        violation_above=1e-9,
        marginal_above=1e-11,
        description="fases λ compatíveis com M (e espelho)"
    ),
    CheckSuite.ORACLE: CheckThreshold(
        violation_above=0.0,
        exact=True,
        description="igualdade exata de funções racionais"
    ),
    CheckSuite.BUBBLE: CheckThreshold(
        violation_above=1e-9,
        marginal_above=1e-11,
        description="f²Θ/Δ_a = coeficiente da bolha; formas do denominador"
    ),
}


def get_threshold(suite: CheckSuite) -> CheckThreshold:
    return CHECK_THRESHOLDS[suite]


# ============================================================
# RAÍZES PADRÃO POR SUÍTE
# ============================================================

DEFAULT_ROOTS: Dict[CheckSuite, List[int]] = {
    CheckSuite.ORTHOGONALITY: [3, 4, 5, 6, 7, 8],
    CheckSuite.BRAID: [4, 5, 7],
    CheckSuite.PENTAGON: [4, 5, 6],
    CheckSuite.HEXAGON: [4, 5, 6],
    CheckSuite.BUBBLE: [3, 4, 5, 6, 7, 8, 9, 10],   # positividade de f e Δ_{r-1} = 0
    CheckSuite.ORACLE: [],                          # exato, não depende de r
}


def get_default_roots(suite: CheckSuite) -> List[int]:
    return list(DEFAULT_ROOTS[suite])
