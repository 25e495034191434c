#!/usr/bin/env python3
"""
Álgebra de Temperley-Lieb diagramática

Emparelhamentos planares, composição com fator de laço d, projetores de Jones-Wenzl
e avaliação por força bruta de redes fechadas (Δ_n, theta, tetraedro, fechos de tranças).
É o oráculo independente contra o qual as fórmulas fechadas do recoupling são conferidas.

Convenções:
    - pontos numerados: base 0..n-1 (esquerda -> direita), topo n..n+m-1 (esquerda -> direita)
    - compose(x, y) empilha y SOBRE x (x.top_count == y.bottom_count)
    - ordem cíclica da fronteira: base da esquerda para a direita, topo da direita para a esquerda
"""

import logging
import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from config.settings import settings
from core.errors import BudgetExceeded, IndexOutOfRange, NotAdmissible, ShapeMismatch
from core.laurent import LaurentPoly, RationalFunction, rational_sum
from core.quantum import delta_n, loop_value

logger = logging.getLogger(__name__)


class PlanarMatching:
    """Emparelhamento perfeito e planar dos n + m pontos de fronteira"""

    __slots__ = ("n", "m", "pairing", "_hash")

    def __init__(self, n: int, m: int, pairing: Sequence[int], check: bool = True):
        self.n = n
        self.m = m
        self.pairing = tuple(pairing)
        self._hash = None
        if check:
            self._validate()

    def _validate(self):
        size = self.n + self.m
        if self.n < 0 or self.m < 0 or size % 2:
            raise ShapeMismatch(f"n + m deve ser par e não negativo: n={self.n}, m={self.m}")
        if len(self.pairing) != size:
            raise ShapeMismatch(f"Emparelhamento com {len(self.pairing)} pontos, esperado {size}")
        for point, partner in enumerate(self.pairing):
            if not 0 <= partner < size or partner == point or self.pairing[partner] != point:
                raise ValueError(f"Emparelhamento não é perfeito no ponto {point}: {self.pairing}")
        if not self.is_planar():
            raise ValueError(f"Emparelhamento não planar: {self.pairing}")

    # ------------------------------------------------------------
    # Geometria da fronteira
    # ------------------------------------------------------------

    def cyclic_position(self, point: int) -> int:
        if point < self.n:
            return point
        return self.n + (self.m - 1 - (point - self.n))

    def point_at(self, position: int) -> int:
        if position < self.n:
            return position
        return self.n + (self.n + self.m - 1 - position)

    def is_planar(self) -> bool:
        """Critério de parênteses balanceados na ordem cíclica"""
        stack: List[int] = []
        for position in range(self.n + self.m):
            point = self.point_at(position)
            partner_position = self.cyclic_position(self.pairing[point])
            if partner_position > position:
                stack.append(position)
            elif not stack or stack.pop() != partner_position:
                return False
        return True

    def through_strands(self) -> int:
        return sum(1 for k in range(self.n) if self.pairing[k] >= self.n)

    # ------------------------------------------------------------
    # Transformações
    # ------------------------------------------------------------

    def flip(self) -> "PlanarMatching":
        """Espelho vertical: base vira topo"""
        n, m = self.n, self.m

        def move(point: int) -> int:
            return m + point if point < n else point - n

        pairing = [0] * (n + m)
        for point, partner in enumerate(self.pairing):
            pairing[move(point)] = move(partner)
        return PlanarMatching(m, n, pairing, check=False)

    def recut(self, start: int, new_bottom: int) -> "PlanarMatching":
        """
        Rotação planar da fronteira

        A nova ordem cíclica começa na posição cíclica `start`; as primeiras `new_bottom`
        posições viram a base e o restante o topo.
        """
        size = self.n + self.m
        if not 0 <= new_bottom <= size:
            raise ShapeMismatch(f"Corte inválido: {new_bottom} de {size} pontos")

        def move(point: int) -> int:
            position = (self.cyclic_position(point) - start) % size
            if position < new_bottom:
                return position
            return new_bottom + (size - 1 - position)

        pairing = [0] * size
        for point, partner in enumerate(self.pairing):
            pairing[move(point)] = move(partner)
        return PlanarMatching(new_bottom, size - new_bottom, pairing, check=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PlanarMatching):
            return NotImplemented
        return self.n == other.n and self.m == other.m and self.pairing == other.pairing

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.m, self.pairing))
        return self._hash

    def __lt__(self, other: "PlanarMatching") -> bool:
        return (self.n, self.m, self.pairing) < (other.n, other.m, other.pairing)

    def __repr__(self) -> str:
        return f"PlanarMatching({self.n}, {self.m}, {list(self.pairing)})"


# ------------------------------------------------------------
# Operações sobre emparelhamentos
# ------------------------------------------------------------

def identity_matching(n: int) -> PlanarMatching:
    return PlanarMatching(n, n, [k + n for k in range(n)] + list(range(n)), check=False)


def generator_matching(n: int, i: int) -> PlanarMatching:
    """e_i (1 <= i <= n-1): copo entre i-1, i na base e tampa entre i-1, i no topo"""
    if not 1 <= i <= n - 1:
        raise IndexOutOfRange(f"Gerador e_{i} fora de 1..{n - 1}")
    pairing = [k + n for k in range(n)] + list(range(n))
    pairing[i - 1], pairing[i] = i, i - 1
    pairing[n + i - 1], pairing[n + i] = n + i, n + i - 1
    return PlanarMatching(n, n, pairing, check=False)


@lru_cache(maxsize=200000)
def compose_matchings(x: PlanarMatching, y: PlanarMatching) -> Tuple[PlanarMatching, int]:
    """
    Empilha y sobre x

    Returns:
        (emparelhamento resultante, número de laços fechados)
    """
    if x.m != y.n:
        raise ShapeMismatch(f"Topo de x tem {x.m} pontos, base de y tem {y.n}")
    n, p, m = x.n, x.m, y.m
    middle = n + m

    # nós: base i -> i, topo j -> n + j, meio k -> n + m + k
    def x_node(point: int) -> int:
        return point if point < n else middle + (point - n)

    def y_node(point: int) -> int:
        return middle + point if point < p else n + (point - p)

    lower: Dict[int, int] = {}
    upper: Dict[int, int] = {}
    for point, partner in enumerate(x.pairing):
        lower[x_node(point)] = x_node(partner)
    for point, partner in enumerate(y.pairing):
        upper[y_node(point)] = y_node(partner)

    pairing = [0] * (n + m)
    visited = set()
    for start in range(n + m):
        if start in visited:
            continue
        side = lower if start < n else upper
        current = side[start]
        while current >= middle:
            visited.add(current)
            side = upper if side is lower else lower
            current = side[current]
        pairing[start] = current
        pairing[current] = start
        visited.add(start)
        visited.add(current)

    loops = 0
    for node in range(middle, middle + p):
        if node in visited:
            continue
        loops += 1
        current, side = node, lower
        while True:
            visited.add(current)
            current = side[current]
            side = upper if side is lower else lower
            if current == node:
                break
    return PlanarMatching(n, m, pairing, check=False), loops


def tensor_matchings(x: PlanarMatching, y: PlanarMatching) -> PlanarMatching:
    """Justaposição horizontal, x à esquerda"""
    n, m = x.n + y.n, x.m + y.m

    def x_point(point: int) -> int:
        return point if point < x.n else n + (point - x.n)

    def y_point(point: int) -> int:
        return x.n + point if point < y.n else n + x.m + (point - y.n)

    pairing = [0] * (n + m)
    for point, partner in enumerate(x.pairing):
        pairing[x_point(point)] = x_point(partner)
    for point, partner in enumerate(y.pairing):
        pairing[y_point(point)] = y_point(partner)
    return PlanarMatching(n, m, pairing, check=False)


def closure_loops(x: PlanarMatching) -> int:
    """Número de laços do fecho de traço (base k ligada ao topo k pela lateral)"""
    if x.n != x.m:
        raise ShapeMismatch(f"Fecho de traço exige n == m, atual: {x.n}, {x.m}")
    n = x.n
    visited = [False] * (2 * n)
    loops = 0
    for start in range(2 * n):
        if visited[start]:
            continue
        loops += 1
        current = start
        while not visited[current]:
            visited[current] = True
            partner = x.pairing[current]
            visited[partner] = True
            current = partner + n if partner < n else partner - n
    return loops


def _noncrossing(points: Tuple[int, ...]) -> Iterator[List[Tuple[int, int]]]:
    if not points:
        yield []
        return
    first = points[0]
    for k in range(1, len(points), 2):
        for inside in _noncrossing(points[1:k]):
            for outside in _noncrossing(points[k + 1:]):
                yield [(first, points[k])] + inside + outside


def all_matchings(n: int, m: int) -> List[PlanarMatching]:
    """Todos os emparelhamentos planares (n, m): número de Catalan C_{(n+m)/2}"""
    if (n + m) % 2:
        return []
    template = PlanarMatching(n, m, (), check=False)
    result = []
    for chords in _noncrossing(tuple(range(n + m))):
        pairing = [0] * (n + m)
        for left, right in chords:
            u, v = template.point_at(left), template.point_at(right)
            pairing[u], pairing[v] = v, u
        result.append(PlanarMatching(n, m, pairing, check=False))
    return sorted(result)


# ------------------------------------------------------------
# Elementos da álgebra
# ------------------------------------------------------------

@lru_cache(maxsize=64)
def _loop_power(k: int) -> LaurentPoly:
    return loop_value() ** k


class TLElement:
    """Combinação linear formal de emparelhamentos com coeficientes RationalFunction"""

    __slots__ = ("n", "m", "terms")

    def __init__(self, n: int, m: int, terms: Optional[Dict[PlanarMatching, RationalFunction]] = None):
        self.n = n
        self.m = m
        clean: Dict[PlanarMatching, RationalFunction] = {}
        for matching, coefficient in (terms or {}).items():
            if (matching.n, matching.m) != (n, m):
                raise ShapeMismatch(f"Termo {matching} não tem forma ({n}, {m})")
            coefficient = RationalFunction.lift(coefficient)
            if not coefficient.is_zero():
                clean[matching] = coefficient
        self.terms = dict(sorted(clean.items()))

    @classmethod
    def from_matching(cls, matching: PlanarMatching, coefficient=1) -> "TLElement":
        return cls(matching.n, matching.m, {matching: RationalFunction.lift(coefficient)})

    @property
    def strands(self) -> Tuple[int, int]:
        return self.n, self.m

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, matching: PlanarMatching) -> RationalFunction:
        return self.terms.get(matching, RationalFunction(0))

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: "TLElement") -> "TLElement":
        if not isinstance(other, TLElement):
            return NotImplemented
        if self.strands != other.strands:
            raise ShapeMismatch(f"Soma de formas diferentes: {self.strands} e {other.strands}")
        merged = dict(self.terms)
        for matching, coefficient in other.terms.items():
            merged[matching] = merged.get(matching, RationalFunction(0)) + coefficient
        return TLElement(self.n, self.m, merged)

    def __neg__(self) -> "TLElement":
        return TLElement(self.n, self.m, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "TLElement") -> "TLElement":
        return self + (-other)

    def scale(self, factor) -> "TLElement":
        factor = RationalFunction.lift(factor)
        return TLElement(self.n, self.m, {k: v * factor for k, v in self.terms.items()})

    def __rmul__(self, factor) -> "TLElement":
        return self.scale(factor)

    def flip(self) -> "TLElement":
        return TLElement(self.m, self.n, {k.flip(): v for k, v in self.terms.items()})

    def recut(self, start: int, new_bottom: int) -> "TLElement":
        size = self.n + self.m
        return TLElement(new_bottom, size - new_bottom,
                         {k.recut(start, new_bottom): v for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, TLElement):
            return NotImplemented
        return self.strands == other.strands and self.terms == other.terms

    def __repr__(self) -> str:
        return f"TLElement({self.n}, {self.m}, {len(self.terms)} termos)"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "terms": [{"pairing": list(k.pairing), "coeff": v.to_json()} for k, v in self.terms.items()],
        }


def identity(n: int) -> TLElement:
    return TLElement.from_matching(identity_matching(n))


def generator(n: int, i: int) -> TLElement:
    return TLElement.from_matching(generator_matching(n, i))


def _collect(buckets: Dict[PlanarMatching, Dict[LaurentPoly, LaurentPoly]], n: int, m: int) -> TLElement:
    terms = {}
    for matching, by_den in buckets.items():
        coefficient = rational_sum((num, den) for den, num in by_den.items())
        if not coefficient.is_zero():
            terms[matching] = coefficient
    return TLElement(n, m, terms)


def compose(x: TLElement, y: TLElement) -> TLElement:
    """
    Empilha y sobre x, removendo laços fechados (fator d por laço)

    Numeradores são acumulados por (emparelhamento, denominador) e só viram
    RationalFunction no final, uma canonicalização por grupo.
    """
    if x.m != y.n:
        raise ShapeMismatch(f"compose: topo de x tem {x.m} fios, base de y tem {y.n}")
    buckets: Dict[PlanarMatching, Dict[LaurentPoly, LaurentPoly]] = {}
    denominators: Dict[Tuple[LaurentPoly, LaurentPoly], LaurentPoly] = {}
    for mx, cx in x.terms.items():
        for my, cy in y.terms.items():
            matching, loops = compose_matchings(mx, my)
            key = (cx.den, cy.den)
            den = denominators.get(key)
            if den is None:
                den = denominators[key] = cx.den * cy.den
            num = cx.num * cy.num
            if loops:
                num = num * _loop_power(loops)
            slot = buckets.setdefault(matching, {})
            slot[den] = slot.get(den, LaurentPoly()) + num
    return _collect(buckets, x.n, y.m)


def tensor(x: TLElement, y: TLElement) -> TLElement:
    """Justaposição horizontal; x à esquerda"""
    buckets: Dict[PlanarMatching, Dict[LaurentPoly, LaurentPoly]] = {}
    for mx, cx in x.terms.items():
        for my, cy in y.terms.items():
            matching = tensor_matchings(mx, my)
            den = cx.den * cy.den
            slot = buckets.setdefault(matching, {})
            slot[den] = slot.get(den, LaurentPoly()) + cx.num * cy.num
    return _collect(buckets, x.n + y.n, x.m + y.m)


def trace_closure(x: TLElement) -> RationalFunction:
    """Fecho de Markov: Σ coeficiente · d^{#laços}"""
    if x.n != x.m:
        raise ShapeMismatch(f"trace_closure exige n == m, atual: {x.strands}")
    return rational_sum((c.num * _loop_power(closure_loops(k)), c.den) for k, c in x.terms.items())


# ------------------------------------------------------------
# Projetores de Jones-Wenzl
# ------------------------------------------------------------

class ProjectorCache:
    """Memo thread-safe n -> P_n (preenchimento idempotente)"""

    def __init__(self):
        self._memo: Dict[int, TLElement] = {0: identity(0), 1: identity(1)}
        self._lock = threading.RLock()

    def get(self, n: int) -> TLElement:
        if n < 0:
            raise ValueError(f"Projetor exige n >= 0, atual: {n}")
        cached = self._memo.get(n)
        if cached is not None:
            return cached
        with self._lock:
            if n not in self._memo:
                previous = self.get(n - 1)
                widened = tensor(previous, identity(1))
                sandwich = compose(compose(widened, generator(n, n - 1)), widened)
                ratio = RationalFunction(delta_n(n - 2), delta_n(n - 1))
                self._memo[n] = widened - sandwich.scale(ratio)
                logger.debug(f"Projetor P_{n} calculado: {len(self._memo[n])} termos")
            return self._memo[n]

    def __contains__(self, n: int) -> bool:
        return n in self._memo

    def clear(self):
        with self._lock:
            self._memo = {0: identity(0), 1: identity(1)}


projector_cache = ProjectorCache()


def jones_wenzl(n: int) -> TLElement:
    """P_n = X - (Δ_{n-2}/Δ_{n-1}) X e_{n-1} X, com X = P_{n-1} ⊗ 1"""
    return projector_cache.get(n)


def crossing_element(n: int, i: int, sign: int) -> TLElement:
    """σ_i^{+} = A^{-1}·1 + A·e_i ; σ_i^{-} = A·1 + A^{-1}·e_i"""
    if sign not in (1, -1):
        raise ValueError(f"Sinal de cruzamento deve ser ±1, atual: {sign}")
    e_i = generator_matching(n, i)
    a_id, a_e = (-1, 1) if sign == 1 else (1, -1)
    return TLElement(n, n, {
        identity_matching(n): RationalFunction(LaurentPoly.monomial(a_id)),
        e_i: RationalFunction(LaurentPoly.monomial(a_e)),
    })


# ------------------------------------------------------------
# Vértices e redes
# ------------------------------------------------------------

def generic_admissible(a: int, b: int, c: int) -> bool:
    return min(a, b, c) >= 0 and (a + b + c) % 2 == 0 and a <= b + c and b <= a + c and c <= a + b


def _require_admissible(a: int, b: int, c: int):
    if not generic_admissible(a, b, c):
        raise NotAdmissible((a, b, c), "paridade ou desigualdade triangular")


def _require_budget(strands: int, budget: Optional[int]):
    budget = settings.MAX_STRANDS if budget is None else budget
    if strands > budget:
        raise BudgetExceeded(strands, budget)


def split_vertex(c: int, a: int, b: int) -> TLElement:
    """Vértice c -> (a, b): base c fios, topo a+b fios, m = (a+b-c)/2 fios entre a e b"""
    _require_admissible(a, b, c)
    m = (a + b - c) // 2
    top = c
    pairing = [0] * (c + a + b)

    def join(u: int, v: int):
        pairing[u], pairing[v] = v, u

    for t in range(m):
        join(top + a - 1 - t, top + a + t)
    for k in range(a - m):
        join(top + k, k)
    for k in range(a + m, a + b):
        join(top + k, k - 2 * m)
    return TLElement.from_matching(PlanarMatching(c, a + b, pairing))


def merge_vertex(a: int, b: int, c: int) -> TLElement:
    """Vértice (a, b) -> c"""
    return split_vertex(c, a, b).flip()


def projected_pair(a: int, b: int) -> TLElement:
    return tensor(jones_wenzl(a), jones_wenzl(b))


def vertex_network(c: int, a: int, b: int) -> TLElement:
    """Vértice trivalente projetado: P_c -> split -> P_a ⊗ P_b"""
    return compose(compose(jones_wenzl(c), split_vertex(c, a, b)), projected_pair(a, b))


def double_y(tl: int, tr: int, bl: int, br: int, mid: int, project_legs: bool = True) -> TLElement:
    """
    Rede em H: (bl, br) -> mid -> (tl, tr)

    Forma (bl + br, tl + tr). Com project_legs=False as quatro pernas ficam sem projetor.
    """
    _require_admissible(bl, br, mid)
    _require_admissible(tl, tr, mid)
    network = merge_vertex(bl, br, mid)
    if project_legs:
        network = compose(projected_pair(bl, br), network)
    network = compose(compose(network, jones_wenzl(mid)), split_vertex(mid, tl, tr))
    if project_legs:
        network = compose(network, projected_pair(tl, tr))
    return network


def theta_oracle(a: int, b: int, c: int, budget: Optional[int] = None) -> RationalFunction:
    """Θ(a, b, c) por expansão completa da rede theta"""
    _require_admissible(a, b, c)
    _require_budget(max(a + b, c), budget)
    network = compose(vertex_network(c, a, b), merge_vertex(a, b, c))
    value = trace_closure(network)
    logger.debug(f"theta_oracle({a}, {b}, {c}) = {value}")
    return value


def tet_oracle(a: int, b: int, i: int, c: int, d: int, j: int, budget: Optional[int] = None) -> RationalFunction:
    """
    Tetraedro com vértices (a,b,j), (c,d,j), (a,c,i), (b,d,i) por expansão completa

    A metade vertical (c,d) -> j -> (a,b) carrega os projetores das pernas; a metade
    (a,c) -> i -> (b,d) é girada para ligar suas pernas às mesmas posições.
    """
    for triple in ((a, b, j), (c, d, j), (a, c, i), (b, d, i)):
        _require_admissible(*triple)
    _require_budget(max(a + b, c + d, a + c, b + d), budget)

    vertical = double_y(a, b, c, d, j)
    horizontal = double_y(b, d, a, c, i, project_legs=False).recut(start=a, new_bottom=c + d)
    value = trace_closure(compose(horizontal, vertical.flip()))
    logger.debug(f"tet_oracle({a}, {b}, {i}, {c}, {d}, {j}) = {value}")
    return value


def bubble_oracle(a: int, b: int, c: int, budget: Optional[int] = None) -> Tuple[RationalFunction, bool]:
    """
    Ortogonalidade de vértices: merge ∘ split com pernas projetadas = (Θ/Δ_c) · P_c

    Returns:
        (coeficiente da identidade, se o resultado é proporcional a P_c)
    """
    _require_admissible(a, b, c)
    _require_budget(max(a + b, c), budget)
    bubble = compose(vertex_network(c, a, b), merge_vertex(a, b, c))
    coefficient = bubble.coefficient(identity_matching(c))
    proportional = bubble == jones_wenzl(c).scale(coefficient)
    return coefficient, proportional


# ------------------------------------------------------------
# Fechos de tranças
# ------------------------------------------------------------

@dataclass(frozen=True)
class BracketResult:
    """Colchete do fecho de uma palavra de trança"""
    raw: RationalFunction
    normalized: RationalFunction
    writhe_normalized: RationalFunction
    writhe: int

    def to_json(self) -> dict:
        return {
            "raw": self.raw.to_json(),
            "normalized": self.normalized.to_json(),
            "writhe_normalized": self.writhe_normalized.to_json(),
            "writhe": self.writhe,
        }


def braid_element(letters: Sequence[int], strands: int) -> TLElement:
    """Produto das expansões de cruzamento; a primeira letra fica embaixo"""
    element = identity(strands)
    for letter in letters:
        index = abs(letter)
        if not 1 <= index <= strands - 1:
            raise IndexOutOfRange(f"Letra {letter} fora de ±1..±{strands - 1}")
        element = compose(element, crossing_element(strands, index, 1 if letter > 0 else -1))
    return element


def braid_closure_bracket(letters: Sequence[int], strands: int) -> BracketResult:
    """
    Colchete do fecho de Markov

    raw conta o laço do nó trivial como d; normalized = raw/d;
    writhe_normalized = (-A³)^{w} · normalized, w = soma dos sinais.
    """
    raw = trace_closure(braid_element(letters, strands))
    normalized = raw / RationalFunction(loop_value())
    writhe = sum(1 if letter > 0 else -1 for letter in letters)
    twist = RationalFunction(LaurentPoly.monomial(3, -1)) ** writhe
    return BracketResult(raw, normalized, normalized * twist, writhe)
