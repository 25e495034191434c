#!/usr/bin/env python3
"""
Núcleo escalar: inteiros quânticos, fatoriais, Δ_n e avaliação em A = e^{iπ/2r}

As formas genéricas são polinômios de Laurent exatos (memoizados). As formas numéricas
usam trigonometria do mpmath na precisão configurada, nunca potências repetidas de A.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Union

import mpmath

from config.settings import settings
from core.errors import DenominatorVanishes
from core.laurent import LaurentPoly, RationalFunction

logger = logging.getLogger(__name__)

# A² - A^{-2}
_STEP = LaurentPoly({2: 1, -2: -1})


@dataclass(frozen=True)
class RootParams:
    """Nível r da raiz da unidade A = e^{iπ/2r} e tolerância de comparação"""
    r: int
    tol: float = settings.DEFAULT_TOLERANCE

    def __post_init__(self):
        if not isinstance(self.r, int) or self.r < 3:
            raise ValueError(f"Nível r deve ser inteiro >= 3, atual: {self.r}")
        if self.tol <= 0:
            raise ValueError(f"Tolerância deve ser positiva, atual: {self.tol}")

    @property
    def angle(self) -> float:
        """Fase de A em radianos: π/2r"""
        return float(mpmath.pi / (2 * self.r))

    @property
    def max_label(self) -> int:
        return self.r - 2

    def A(self) -> complex:
        return root_power(1, self)


@dataclass(frozen=True)
class ScalarValue:
    """Escalar exato (A genérico) ou numérico (avaliado numa raiz)"""
    exact_value: Optional[RationalFunction] = None
    numeric_value: Optional[complex] = None
    params: Optional[RootParams] = None

    @classmethod
    def exact(cls, value: Union[int, LaurentPoly, RationalFunction]) -> "ScalarValue":
        return cls(exact_value=RationalFunction.lift(value))

    @classmethod
    def numeric(cls, value: complex, params: RootParams) -> "ScalarValue":
        return cls(numeric_value=complex(value), params=params)

    @property
    def is_exact(self) -> bool:
        return self.exact_value is not None

    def at(self, params: RootParams) -> complex:
        """Valor numérico na raiz dada (avalia se for exato)"""
        if self.is_exact:
            return eval_at_root(self.exact_value, params)
        return self.numeric_value

    def plain(self) -> Union[dict, float, complex]:
        """Valor para documentos: Laurent (ou {num, den}) se exato, real se Im ≈ 0"""
        if self.is_exact:
            value = self.exact_value
            return value.num.to_json() if value.is_polynomial() else value.to_json()
        if abs(self.numeric_value.imag) <= self.params.tol:
            return self.numeric_value.real
        return self.numeric_value

    def to_json(self) -> dict:
        if self.is_exact:
            return {"exact": self.exact_value.to_json()}
        return {"r": self.params.r, "value": [self.numeric_value.real, self.numeric_value.imag]}


# ------------------------------------------------------------
# Formas genéricas (exatas)
# ------------------------------------------------------------

def loop_value() -> LaurentPoly:
    """d = -A² - A^{-2}"""
    return LaurentPoly({2: -1, -2: -1})


@lru_cache(maxsize=None)
def quantum_int(n: int) -> LaurentPoly:
    """[n] = (A^{2n} - A^{-2n}) / (A² - A^{-2}), divisão exata"""
    if n < 0:
        raise ValueError(f"Inteiro quântico exige n >= 0, atual: {n}")
    if n == 0:
        return LaurentPoly()
    return LaurentPoly({2 * n: 1, -2 * n: -1}).divide_exact(_STEP)


@lru_cache(maxsize=None)
def quantum_fact(n: int) -> LaurentPoly:
    """[n]! = [n][n-1]...[1], com [0]! = 1"""
    if n < 0:
        raise ValueError(f"Fatorial quântico exige n >= 0, atual: {n}")
    if n == 0:
        return LaurentPoly.constant(1)
    return quantum_fact(n - 1) * quantum_int(n)


@lru_cache(maxsize=None)
def delta_n(n: int) -> LaurentPoly:
    """Δ_n = (-1)^n [n+1]"""
    if n < 0:
        raise ValueError(f"Δ_n exige n >= 0, atual: {n}")
    value = quantum_int(n + 1)
    return -value if n % 2 else value


# ------------------------------------------------------------
# Formas numéricas
# ------------------------------------------------------------

def _sin_ratio(n: int, r: int) -> float:
    with mpmath.workdps(settings.EVAL_PRECISION_DIGITS):
        return float(mpmath.sinpi(mpmath.mpf(n) / r) / mpmath.sinpi(mpmath.mpf(1) / r))


@lru_cache(maxsize=None)
def _quantum_int_at(n: int, r: int) -> float:
    return _sin_ratio(n, r)


def quantum_int_at(n: int, params: RootParams) -> float:
    """[n] = sin(nπ/r) / sin(π/r)"""
    if n < 0:
        raise ValueError(f"Inteiro quântico exige n >= 0, atual: {n}")
    return _quantum_int_at(n, params.r)


def quantum_fact_at(n: int, params: RootParams) -> float:
    result = 1.0
    for k in range(1, n + 1):
        result *= quantum_int_at(k, params)
    return result


def delta_n_at(n: int, params: RootParams) -> float:
    value = quantum_int_at(n + 1, params)
    return -value if n % 2 else value


def root_power(exponent: int, params: RootParams) -> complex:
    """A^e = e^{iπe/2r} construído por trigonometria"""
    with mpmath.workdps(settings.EVAL_PRECISION_DIGITS):
        return complex(mpmath.expjpi(mpmath.mpf(exponent) / (2 * params.r)))


def _eval_laurent_mp(poly: LaurentPoly, r: int):
    total = mpmath.mpc(0)
    for exponent, coefficient in poly.items():
        total += coefficient * mpmath.expjpi(mpmath.mpf(exponent) / (2 * r))
    return total


def eval_at_root(value: Union[int, LaurentPoly, RationalFunction], params: RootParams) -> complex:
    """
    Substitui A = e^{iπ/2r}

    Coeficientes inteiros entram com precisão total do mpmath; o resultado final é complex.

    Raises:
        DenominatorVanishes: |denominador(A)| <= tol
    """
    if isinstance(value, int):
        return complex(value)
    with mpmath.workdps(settings.EVAL_PRECISION_DIGITS):
        if isinstance(value, LaurentPoly):
            return complex(_eval_laurent_mp(value, params.r))
        numerator = _eval_laurent_mp(value.num, params.r)
        denominator = _eval_laurent_mp(value.den, params.r)
        if abs(denominator) <= params.tol:
            logger.debug(f"Denominador {value.den} anula-se em r={params.r}")
            raise DenominatorVanishes(
                f"Denominador {value.den} anula-se em r={params.r} (|den| <= {params.tol})"
            )
        return complex(numerator / denominator)
