#!/usr/bin/env python3
"""
Testes da álgebra de Temperley-Lieb diagramática e do oráculo de redes fechadas
"""

import os
import sys
import pytest
import unittest
from itertools import product

# Adicionar diretórios ao path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from core.errors import BudgetExceeded, IndexOutOfRange, NotAdmissible, ShapeMismatch
from core.laurent import LaurentPoly, RationalFunction
from core.quantum import delta_n, loop_value, quantum_int
from core.recoupling import tet_closed
from core.tl_diagrams import (
    PlanarMatching,
    ProjectorCache,
    all_matchings,
    braid_closure_bracket,
    bubble_oracle,
    compose,
    compose_matchings,
    crossing_element,
    generator,
    generator_matching,
    generic_admissible,
    identity,
    identity_matching,
    jones_wenzl,
    split_vertex,
    tensor,
    tensor_matchings,
    tet_oracle,
    theta_oracle,
    trace_closure,
)


def _laurent(coeffs) -> RationalFunction:
    return RationalFunction(LaurentPoly(coeffs))


class TestPlanarMatchings(unittest.TestCase):
    """Emparelhamentos planares"""

    def test_catalan_counts(self):
        """Testa contagem de Catalan"""
        print("\n🧪 Testando all_matchings...")

        self.assertEqual(len(all_matchings(0, 0)), 1)
        self.assertEqual(len(all_matchings(0, 2)), 1)
        self.assertEqual(len(all_matchings(2, 2)), 2)
        self.assertEqual(len(all_matchings(3, 3)), 5)
        self.assertEqual(len(all_matchings(4, 4)), 14)
        self.assertEqual(all_matchings(1, 2), [])
        catalan = [1, 1, 2, 5, 14, 42, 132, 429, 1430]
        self.assertEqual([len(all_matchings(k, k)) for k in range(9)], catalan)
        self.assertEqual(len(all_matchings(0, 16)), 1430)
        for matching in all_matchings(3, 3):
            self.assertTrue(matching.is_planar())
        print("✅ C_0..C_8 corretos")

    def test_compose_and_tensor_stay_planar(self):
        """Testa que composição e justaposição só produzem emparelhamentos planares"""
        bases = all_matchings(3, 3)
        for x in bases:
            for y in bases:
                result, loops = compose_matchings(x, y)
                self.assertGreaterEqual(loops, 0)
                PlanarMatching(result.n, result.m, result.pairing)
                self.assertTrue(result.is_planar())
        for x in all_matchings(2, 2):
            for y in all_matchings(1, 3):
                result = tensor_matchings(x, y)
                self.assertEqual((result.n, result.m), (3, 5))
                PlanarMatching(result.n, result.m, result.pairing)

    def test_invalid_matchings(self):
        """Testa rejeição de emparelhamentos inválidos"""
        with self.assertRaises(ValueError):
            PlanarMatching(4, 0, [2, 3, 0, 1])
        with self.assertRaises(ShapeMismatch):
            PlanarMatching(2, 1, [1, 0, 2])
        with self.assertRaises(IndexOutOfRange):
            generator_matching(3, 3)

    def test_flip_and_through_strands(self):
        """Testa espelho e fios passantes"""
        e1 = generator_matching(3, 1)
        self.assertEqual(e1.flip(), e1)
        self.assertEqual(e1.through_strands(), 1)
        self.assertEqual(identity_matching(3).through_strands(), 3)


class TestAlgebra(unittest.TestCase):
    """Relações de Temperley-Lieb"""

    def setUp(self):
        self.d = loop_value()

    def test_generator_relations(self):
        """Testa e_i² = d e_i, e_1e_2e_1 = e_1 e comutação distante"""
        print("\n🧪 Testando relações de TL...")

        e1, e2 = generator(3, 1), generator(3, 2)
        self.assertEqual(compose(e1, e1), e1.scale(self.d))
        self.assertEqual(compose(compose(e1, e2), e1), e1)
        self.assertEqual(compose(compose(e2, e1), e2), e2)

        f1, f3 = generator(4, 1), generator(4, 3)
        self.assertEqual(compose(f1, f3), compose(f3, f1))
        print("✅ Relações satisfeitas")

    def test_generator_relations_up_to_6(self):
        """Testa as relações de TL para todos os geradores com n <= 6"""
        for n in range(2, 7):
            gens = {i: generator(n, i) for i in range(1, n)}
            for i, e in gens.items():
                self.assertEqual(compose(e, e), e.scale(self.d))
                if i + 1 < n:
                    f = gens[i + 1]
                    self.assertEqual(compose(compose(e, f), e), e)
                    self.assertEqual(compose(compose(f, e), f), f)
                for j in range(i + 2, n):
                    self.assertEqual(compose(e, gens[j]), compose(gens[j], e))

    def test_shape_mismatch(self):
        """Testa composição com formas incompatíveis"""
        with self.assertRaises(ShapeMismatch):
            compose(identity(2), identity(3))
        with self.assertRaises(ShapeMismatch):
            identity(2) + identity(3)

    def test_trace_and_tensor(self):
        """Testa tr(1_n) = d^n e justaposição"""
        for n in range(5):
            self.assertEqual(trace_closure(identity(n)), self.d ** n)
        self.assertEqual(tensor(identity(1), identity(1)), identity(2))
        self.assertEqual(trace_closure(generator(3, 1)), self.d ** 2)

    def test_json(self):
        """Testa documento JSON de um elemento"""
        document = generator(2, 1).to_json()
        self.assertEqual(document["n"], 2)
        self.assertEqual(document["m"], 2)
        self.assertEqual(len(document["terms"]), 1)


class TestJonesWenzl(unittest.TestCase):
    """Projetores de Jones-Wenzl"""

    def test_p2_explicit(self):
        """Testa P_2 = 1 - (1/d) e_1"""
        expected = identity(2) - generator(2, 1).scale(RationalFunction(1, loop_value()))
        self.assertEqual(jones_wenzl(2), expected)

    def test_idempotent_and_annihilating(self):
        """Testa P_n² = P_n e P_n e_i = e_i P_n = 0"""
        print("\n🧪 Testando projetores...")

        for n in (2, 3, 4):
            projector = jones_wenzl(n)
            self.assertEqual(compose(projector, projector), projector)
            for i in range(1, n):
                self.assertTrue(compose(projector, generator(n, i)).is_zero())
                self.assertTrue(compose(generator(n, i), projector).is_zero())
        print("✅ P_2..P_4 idempotentes e aniquilados por e_i")

    def test_trace_is_delta(self):
        """Testa tr(P_n) = Δ_n"""
        for n in range(6):
            self.assertEqual(trace_closure(jones_wenzl(n)), delta_n(n))

    def test_term_count(self):
        """Testa que P_n tem C_n termos"""
        self.assertEqual(len(jones_wenzl(3)), 5)
        self.assertEqual(len(jones_wenzl(4)), 14)

    @pytest.mark.slow
    def test_projector_laws_up_to_6(self):
        """Testa P_5 e P_6: idempotência, aniquilação, traço e C_n termos"""
        for n, catalan in ((5, 42), (6, 132)):
            projector = jones_wenzl(n)
            self.assertEqual(len(projector), catalan)
            self.assertEqual(trace_closure(projector), delta_n(n))
            self.assertEqual(compose(projector, projector), projector)
            for i in range(1, n):
                self.assertTrue(compose(projector, generator(n, i)).is_zero())

    def test_cache(self):
        """Testa memo do ProjectorCache"""
        cache = ProjectorCache()
        self.assertNotIn(3, cache)
        self.assertEqual(cache.get(3), jones_wenzl(3))
        self.assertIn(3, cache)
        self.assertIn(2, cache)
        cache.clear()
        self.assertNotIn(3, cache)
        with self.assertRaises(ValueError):
            cache.get(-1)


class TestOracle(unittest.TestCase):
    """Avaliação de redes fechadas por força bruta"""

    def test_theta(self):
        """Testa Θ(1,1,0) = d e Θ(1,1,2) = [3]"""
        print("\n🧪 Testando theta_oracle...")

        self.assertEqual(theta_oracle(1, 1, 0), loop_value())
        self.assertEqual(theta_oracle(1, 1, 2), quantum_int(3))
        self.assertEqual(theta_oracle(2, 0, 2), delta_n(2))
        print("✅ Thetas corretos")

    def test_tetrahedron(self):
        """Testa Tet[1 1 2; 1 1 2] = [3]/[2]"""
        print("\n🧪 Testando tet_oracle...")

        expected = RationalFunction(quantum_int(3), quantum_int(2))
        self.assertEqual(tet_oracle(1, 1, 2, 1, 1, 2), expected)
        print("✅ Tetraedro correto")

    @pytest.mark.slow
    def test_tetrahedron_all_labels_up_to_3(self):
        """Testa fórmula fechada = oráculo para todos os seis rótulos <= 3"""
        compared = 0
        for labels in product(range(4), repeat=6):
            a, b, i, c, d, j = labels
            if not all(generic_admissible(*t) for t in ((a, b, j), (c, d, j), (a, c, i), (b, d, i))):
                continue
            self.assertEqual(tet_closed(*labels), tet_oracle(*labels), str(labels))
            compared += 1
        self.assertGreater(compared, 100)

    def test_bubble(self):
        """Testa que a bolha é proporcional a P_c com coeficiente Θ/Δ_c"""
        coefficient, proportional = bubble_oracle(1, 1, 2)
        self.assertTrue(proportional)
        self.assertEqual(coefficient, RationalFunction(quantum_int(3), delta_n(2)))

    def test_errors(self):
        """Testa admissibilidade e orçamento"""
        with self.assertRaises(NotAdmissible):
            theta_oracle(1, 1, 1)
        with self.assertRaises(NotAdmissible):
            split_vertex(5, 1, 1)
        with self.assertRaises(BudgetExceeded):
            theta_oracle(3, 3, 2, budget=4)


class TestBraidClosures(unittest.TestCase):
    """Cruzamentos e fechos de tranças"""

    def test_crossing_inverse(self):
        """Testa σ⁺σ⁻ = 1 e a relação de trança"""
        print("\n🧪 Testando cruzamentos...")

        plus, minus = crossing_element(2, 1, 1), crossing_element(2, 1, -1)
        self.assertEqual(compose(plus, minus), identity(2))

        s1, s2 = crossing_element(3, 1, 1), crossing_element(3, 2, 1)
        self.assertEqual(compose(compose(s1, s2), s1), compose(compose(s2, s1), s2))
        with self.assertRaises(ValueError):
            crossing_element(2, 1, 0)
        print("✅ Reidemeister II e III")

    def test_unknot(self):
        """Testa que σ_1^{±1} em 2 fios fecha no nó trivial"""
        for letter in (1, -1):
            result = braid_closure_bracket([letter], 2)
            self.assertEqual(result.writhe_normalized, 1)
            self.assertEqual(result.writhe, letter)
        empty = braid_closure_bracket([], 1)
        self.assertEqual(empty.raw, loop_value())
        self.assertEqual(empty.normalized, 1)

    def test_trefoil(self):
        """Testa o trevo σ_1^{-3}"""
        print("\n🧪 Testando trevo...")

        result = braid_closure_bracket([-1, -1, -1], 2)
        self.assertEqual(result.writhe, -3)
        self.assertEqual(result.normalized, _laurent({5: -1, -3: -1, -7: 1}))
        self.assertEqual(result.writhe_normalized, _laurent({-4: 1, -12: 1, -16: -1}))
        self.assertIn("writhe_normalized", result.to_json())
        print("✅ Colchete do trevo correto")

    def test_letter_out_of_range(self):
        with self.assertRaises(IndexOutOfRange):
            braid_closure_bracket([3], 3)


if __name__ == "__main__":
    unittest.main()
