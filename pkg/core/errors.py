#!/usr/bin/env python3
"""
Hierarquia de erros do tlrecoupling

Todas as falhas de domínio herdam de RecouplingError, que por sua vez é um ValueError,
para que chamadores genéricos (CLI, testes) possam capturar ambos da mesma forma.
"""

from typing import Iterable, Optional


class RecouplingError(ValueError):
    """Erro base de toda a biblioteca"""


class NotAdmissible(RecouplingError):
    """Rótulos que não formam um vértice trivalente admissível"""

    def __init__(self, labels: Iterable[int], reason: str = "", r: Optional[int] = None):
        self.labels = tuple(labels)
        self.r = r
        where = f" em r={r}" if r is not None else " (A genérico)"
        detail = f": {reason}" if reason else ""
        super().__init__(f"Rótulos {self.labels} não admissíveis{where}{detail}")


class ShapeMismatch(RecouplingError):
    """Número de pontas incompatível entre diagramas"""


class IndexOutOfRange(RecouplingError):
    """Índice de gerador fora de 1..n-1"""


class BudgetExceeded(RecouplingError):
    """Rede excede o orçamento de fios do oráculo diagramático"""

    def __init__(self, strands: int, budget: int):
        self.strands = strands
        self.budget = budget
        super().__init__(f"Rede exige {strands} fios, orçamento é {budget}")


class DenominatorVanishes(RecouplingError):
    """Denominador anula-se (|den| <= tol) na raiz escolhida"""


class ThetaVanishes(RecouplingError):
    """Θ nulo no denominador de um símbolo 6j"""


class InexactDivision(RecouplingError):
    """Divisão de polinômios de Laurent deixou resto"""


class ParseError(RecouplingError):
    """Entrada textual malformada (palavra de trança, rótulos)"""
