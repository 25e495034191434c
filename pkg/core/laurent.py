#!/usr/bin/env python3
"""
Aritmética exata na variável do colchete A

LaurentPoly guarda um polinômio de Laurent em A com coeficientes inteiros de precisão
arbitrária. RationalFunction é o quociente de dois deles em forma canônica: conteúdo
removido, fatores comuns (inclusive monômios) cancelados e o coeficiente de menor
expoente do denominador positivo. A forma canônica faz a igualdade ser estrutural.
"""

import logging
from math import gcd
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

from sympy import Poly, Symbol, ZZ

from core.errors import InexactDivision

logger = logging.getLogger(__name__)

_A = Symbol("A")


class LaurentPoly:
    """Polinômio de Laurent imutável: expoente -> coeficiente inteiro (sem zeros)"""

    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Optional[Mapping[int, int]] = None):
        clean: Dict[int, int] = {}
        for exponent, coefficient in (coeffs or {}).items():
            coefficient = int(coefficient)
            if coefficient:
                clean[int(exponent)] = coefficient
        self._coeffs = dict(sorted(clean.items()))
        self._hash = None

    # ------------------------------------------------------------
    # Construtores
    # ------------------------------------------------------------

    @classmethod
    def constant(cls, value: int) -> "LaurentPoly":
        return cls({0: value})

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "LaurentPoly":
        return cls({exponent: coefficient})

    # ------------------------------------------------------------
    # Acesso
    # ------------------------------------------------------------

    @property
    def coeffs(self) -> Dict[int, int]:
        return dict(self._coeffs)

    def items(self) -> Iterator[Tuple[int, int]]:
        return iter(self._coeffs.items())

    def coefficient(self, exponent: int) -> int:
        return self._coeffs.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_monomial(self) -> bool:
        return len(self._coeffs) == 1

    def is_constant(self) -> bool:
        return not self._coeffs or (len(self._coeffs) == 1 and 0 in self._coeffs)

    @property
    def min_exponent(self) -> int:
        if not self._coeffs:
            raise ValueError("Polinômio nulo não tem expoente mínimo")
        return next(iter(self._coeffs))

    @property
    def max_exponent(self) -> int:
        if not self._coeffs:
            raise ValueError("Polinômio nulo não tem expoente máximo")
        return next(reversed(self._coeffs))

    def content(self) -> int:
        """MDC (positivo) dos coeficientes; 0 para o polinômio nulo"""
        result = 0
        for coefficient in self._coeffs.values():
            result = gcd(result, coefficient)
        return result

    # ------------------------------------------------------------
    # Aritmética
    # ------------------------------------------------------------

    @staticmethod
    def _coerce(other) -> Optional["LaurentPoly"]:
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        merged = dict(self._coeffs)
        for exponent, coefficient in other._coeffs.items():
            merged[exponent] = merged.get(exponent, 0) + coefficient
        return LaurentPoly(merged)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        product: Dict[int, int] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                product[e1 + e2] = product.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(product)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "LaurentPoly":
        if exponent < 0:
            if not self.is_monomial():
                raise InexactDivision(f"Potência negativa de não-monômio: {self}")
            (e, c), = self._coeffs.items()
            if abs(c) != 1:
                raise InexactDivision(f"Potência negativa de {self} não é inteira")
            return LaurentPoly({e * exponent: c ** (-exponent)})
        result = LaurentPoly.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiplica por A^k"""
        return LaurentPoly({e + k: c for e, c in self._coeffs.items()})

    def bar(self) -> "LaurentPoly":
        """Involução A -> A^{-1}"""
        return LaurentPoly({-e: c for e, c in self._coeffs.items()})

    def divide_exact(self, divisor: "LaurentPoly") -> "LaurentPoly":
        """
        Divisão exata em Z[A, A^{-1}]

        Raises:
            ZeroDivisionError: divisor nulo
            InexactDivision: sobra resto ou quociente não inteiro
        """
        if divisor.is_zero():
            raise ZeroDivisionError("Divisão por polinômio nulo")
        if self.is_zero():
            return LaurentPoly()
        remainder = dict(self._coeffs)
        quotient: Dict[int, int] = {}
        lead_exp, lead_coeff = divisor.max_exponent, divisor._coeffs[divisor.max_exponent]
        lowest_allowed = self.min_exponent - divisor.min_exponent
        while remainder:
            top = max(remainder)
            shift = top - lead_exp
            if shift < lowest_allowed or remainder[top] % lead_coeff:
                raise InexactDivision(f"{self} não é divisível por {divisor}")
            factor = remainder[top] // lead_coeff
            quotient[shift] = factor
            for e, c in divisor._coeffs.items():
                key = e + shift
                value = remainder.get(key, 0) - factor * c
                if value:
                    remainder[key] = value
                else:
                    remainder.pop(key, None)
        return LaurentPoly(quotient)

    # ------------------------------------------------------------
    # Comparação e representação
    # ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._coeffs.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts: List[str] = []
        for exponent, coefficient in sorted(self._coeffs.items(), reverse=True):
            sign = "-" if coefficient < 0 else "+"
            magnitude = abs(coefficient)
            if exponent == 0:
                body = str(magnitude)
            else:
                power = "A" if exponent == 1 else f"A^{exponent}"
                body = power if magnitude == 1 else f"{magnitude}*{power}"
            parts.append(f"{sign} {body}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def to_json(self) -> Dict[str, list]:
        """{"coeffs": [[expoente, "coeficiente"], ...]} em ordem crescente de expoente"""
        return {"coeffs": [[e, str(c)] for e, c in self._coeffs.items()]}

    @classmethod
    def from_json(cls, document: Mapping) -> "LaurentPoly":
        return cls({int(e): int(c) for e, c in document["coeffs"]})

    # ------------------------------------------------------------
    # Ponte com sympy (apenas para o MDC da forma canônica)
    # ------------------------------------------------------------

    def _to_poly(self) -> Tuple[int, Poly]:
        """Decompõe em A^shift * P(A) com P(0) != 0"""
        low, high = self.min_exponent, self.max_exponent
        dense = [self._coeffs.get(e, 0) for e in range(high, low - 1, -1)]
        return low, Poly(dense, _A, domain=ZZ)

    @classmethod
    def _from_poly(cls, poly: Poly, shift: int = 0) -> "LaurentPoly":
        dense = [int(c) for c in poly.all_coeffs()]
        degree = len(dense) - 1
        return cls({degree - k + shift: c for k, c in enumerate(dense) if c})


Scalar = Union[int, LaurentPoly, "RationalFunction"]


class RationalFunction:
    """Quociente num/den de polinômios de Laurent em forma canônica"""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Union[int, LaurentPoly], den: Union[int, LaurentPoly] = 1,
                 _canonical: bool = False):
        num = LaurentPoly.constant(num) if isinstance(num, int) else num
        den = LaurentPoly.constant(den) if isinstance(den, int) else den
        if den.is_zero():
            raise ZeroDivisionError("Denominador nulo em RationalFunction")
        if not _canonical:
            num, den = self._canonicalize(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @staticmethod
    def _canonicalize(num: LaurentPoly, den: LaurentPoly) -> Tuple[LaurentPoly, LaurentPoly]:
        if num.is_zero():
            return LaurentPoly(), LaurentPoly.constant(1)

        # Denominador monomial: só conteúdo e deslocamento
        if den.is_monomial():
            (d_exp, d_coeff), = den.items()
            common = gcd(num.content(), d_coeff)
            if d_coeff < 0:
                common = -common
            scaled = LaurentPoly({e - d_exp: c // common for e, c in num.items()})
            return scaled, LaurentPoly.constant(d_coeff // common)

        num_shift, num_poly = num._to_poly()
        den_shift, den_poly = den._to_poly()
        divisor = num_poly.gcd(den_poly)
        if divisor.degree() > 0 or abs(int(divisor.LC())) != 1:
            num_poly = num_poly.exquo(divisor)
            den_poly = den_poly.exquo(divisor)
        # coeficiente de menor grau do denominador positivo
        if int(den_poly.all_coeffs()[-1]) < 0:
            num_poly, den_poly = -num_poly, -den_poly
        return (LaurentPoly._from_poly(num_poly, num_shift - den_shift),
                LaurentPoly._from_poly(den_poly, 0))

    # ------------------------------------------------------------
    # Coerção
    # ------------------------------------------------------------

    @staticmethod
    def lift(value: Scalar) -> "RationalFunction":
        if isinstance(value, RationalFunction):
            return value
        if isinstance(value, (int, LaurentPoly)):
            return RationalFunction(value)
        raise TypeError(f"Não é um escalar exato: {value!r}")

    @staticmethod
    def _coerce(other) -> Optional["RationalFunction"]:
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (int, LaurentPoly)):
            return RationalFunction(other)
        return None

    # ------------------------------------------------------------
    # Aritmética
    # ------------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den.is_constant() and other.den.is_constant() and self.den == 1 and other.den == 1:
            return RationalFunction(self.num * other.num, 1, _canonical=True)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.num.is_zero():
            raise ZeroDivisionError("Inverso de RationalFunction nula")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int) -> "RationalFunction":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return RationalFunction(self.num ** exponent, self.den ** exponent)

    def bar(self) -> "RationalFunction":
        return RationalFunction(self.num.bar(), self.den.bar())

    # ------------------------------------------------------------
    # Consultas
    # ------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == 1

    def as_laurent(self) -> LaurentPoly:
        if not self.is_polynomial():
            raise InexactDivision(f"{self} não é um polinômio de Laurent")
        return self.num

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __repr__(self) -> str:
        return f"RationalFunction({self})"

    def __str__(self) -> str:
        if self.is_polynomial():
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def to_json(self) -> Dict[str, dict]:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, document: Mapping) -> "RationalFunction":
        return cls(LaurentPoly.from_json(document["num"]), LaurentPoly.from_json(document["den"]))


def rational_sum(terms: Iterable[Tuple[LaurentPoly, LaurentPoly]]) -> RationalFunction:
    """
    Soma frações num/den agrupando por denominador

    Evita uma canonicalização (MDC) por parcela: numeradores com o mesmo denominador
    são somados como polinômios e só os grupos distintos viram RationalFunction.
    """
    buckets: Dict[LaurentPoly, LaurentPoly] = {}
    for num, den in terms:
        if num.is_zero():
            continue
        buckets[den] = buckets.get(den, LaurentPoly()) + num
    total = RationalFunction(0)
    for den, num in buckets.items():
        if not num.is_zero():
            total = total + RationalFunction(num, den)
    return total
