#!/usr/bin/env python3
"""
Testes das representações de tranças em bases de árvores de fusão
"""

import os
import sys
import pytest
import unittest
from itertools import product

import numpy as np

# Adicionar diretórios ao path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from core.braidrep import (
    BraidWord,
    check_braid_relations,
    check_random_unitarity,
    check_unitarity,
    closure_invariant_via_trace,
    compile_braid,
    compile_braid_exact,
    enumerate_basis,
    hexagon_check,
    path_count,
    pentagon_check,
    random_words,
    sigma_matrix,
    total_charges,
)
from core.errors import IndexOutOfRange, ParseError
from core.laurent import LaurentPoly, RationalFunction
from core.quantum import RootParams, eval_at_root, loop_value
from core.recoupling import braid_phase, fmatrix
from core.tl_diagrams import braid_closure_bracket

TOL = 1e-9


class TestBraidWord(unittest.TestCase):
    """Palavras de trança e parsing"""

    def test_parse(self):
        """Testa parsing de '1,-2,1'"""
        print("\n🧪 Testando parse de palavras...")

        word = BraidWord.parse("1,-2,1")
        self.assertEqual(word.n, 3)
        self.assertEqual(word.letters, (1, -2, 1))
        self.assertEqual(str(word), "1,-2,1")
        self.assertEqual(BraidWord.parse(" 2 , 1 ", strands=5).n, 5)
        self.assertEqual(BraidWord.parse("", strands=3).letters, ())
        print("✅ Parsing correto")

    def test_parse_errors(self):
        """Testa entradas malformadas"""
        for text in ("", "1,,2", "a", "1,0"):
            with self.assertRaises(ParseError):
                BraidWord.parse(text)
        with self.assertRaises(IndexOutOfRange):
            BraidWord.parse("3", strands=3)
        with self.assertRaises(IndexOutOfRange):
            BraidWord(2, (2,))

    def test_inverse_and_concat(self):
        word = BraidWord(3, (1, -2))
        self.assertEqual(word.inverse().letters, (2, -1))
        self.assertEqual((word + word.inverse()).letters, (1, -2, 2, -1))

    def test_random_words(self):
        """Testa que palavras aleatórias são reprodutíveis e válidas"""
        first = random_words(4, 5, 8, seed=7)
        second = random_words(4, 5, 8, seed=7)
        self.assertEqual(first, second)
        for word in first:
            self.assertLessEqual(len(word.letters), 8)
            self.assertTrue(all(1 <= abs(x) <= 3 for x in word.letters))


class TestFusionBasis(unittest.TestCase):
    """Enumeração de bases"""

    def test_small_bases(self):
        """Testa bases de ℓ = 1"""
        print("\n🧪 Testando bases de fusão...")

        basis = enumerate_basis(3, 1, 1)
        self.assertEqual(basis.to_json(), [[0, 1], [2, 1]])
        self.assertEqual(enumerate_basis(4, 1, 0).to_json(), [[0, 1, 0], [2, 1, 0]])
        self.assertEqual(len(enumerate_basis(3, 1, 1, RootParams(3))), 1)
        self.assertEqual(len(enumerate_basis(3, 1, 2)), 0)
        self.assertEqual(basis.index_of((2, 1)), 1)
        self.assertIsNone(basis.index_of((1, 1)))
        print("✅ Bases corretas")

    def test_count_matches_enumeration(self):
        """Testa enumeração contra matriz de transferência"""
        for r in (4, 5, 6):
            params = RootParams(r)
            for n in range(1, 7):
                for ell in range(1, r - 1):
                    for t in range(r - 1):
                        self.assertEqual(len(enumerate_basis(n, ell, t, params)), path_count(n, ell, t, params))

    def test_fibonacci_dimensions(self):
        """Testa dimensões de Fibonacci para ℓ = 2 em r = 5"""
        params = RootParams(5)
        dims = [path_count(n, 2, 0, params) + path_count(n, 2, 2, params) for n in range(1, 7)]
        self.assertEqual(dims, [1, 2, 3, 5, 8, 13])

    def test_total_charges(self):
        self.assertEqual(total_charges(3, 1), [1, 3])
        self.assertEqual(total_charges(4, 1, RootParams(4)), [0, 2])

    def test_invalid_n(self):
        with self.assertRaises(ValueError):
            enumerate_basis(0, 1, 1)


class TestNumericRepresentation(unittest.TestCase):
    """Matrizes σ_i numa raiz"""

    def test_relations_ell_1(self):
        """Testa relações de trança e unitariedade para ℓ = 1"""
        print("\n🧪 Testando relações de trança...")

        for r in (4, 5, 6):
            params = RootParams(r)
            for n in (3, 4):
                for t in total_charges(n, 1, params):
                    for entry in check_braid_relations(n, 1, t, params):
                        self.assertLess(entry.deviation, TOL, f"{entry.check} {entry.labels} r={r}")
        print("✅ Relações satisfeitas em r = 4, 5, 6")

    def test_relations_fibonacci(self):
        """Testa relações para ℓ = 2 em r = 5"""
        params = RootParams(5)
        for t in total_charges(4, 2, params):
            for entry in check_braid_relations(4, 2, t, params):
                self.assertLess(entry.deviation, TOL)

    def test_sigma_1_diagonal(self):
        """Testa σ_1 diagonal com as fases λ"""
        params = RootParams(5)
        basis = enumerate_basis(3, 1, 1, params)
        sigma = sigma_matrix(basis, 1)
        self.assertAlmostEqual(abs(sigma[0, 1]), 0.0)
        self.assertAlmostEqual(sigma[0, 0], -params.A() ** 3, places=12)

    def test_fibonacci_generators(self):
        """Testa σ_1 = diag(λ_0, λ_2) e σ_2 = F Λ Fᵀ para ℓ = 2, n = 3, r = 5"""
        print("\n🧪 Testando geradores de Fibonacci...")

        params = RootParams(5)
        basis = enumerate_basis(3, 2, 2, params)
        self.assertEqual(basis.to_json(), [[0, 2], [2, 2]])
        phases = np.diag([braid_phase(2, 2, c, params).value for c in (0, 2)])
        np.testing.assert_allclose(sigma_matrix(basis, 1), phases, atol=TOL)

        move = fmatrix(2, 2, 2, 2, params).to_array()
        np.testing.assert_allclose(sigma_matrix(basis, 2), move @ phases @ move.T, atol=TOL)
        print("✅ Geradores de Fibonacci corretos")

    def test_word_times_inverse(self):
        """Testa U(w) U(w⁻¹) = 1"""
        params = RootParams(5)
        basis = enumerate_basis(4, 1, 0, params)
        word = BraidWord(4, (1, -2, 3, 2, 2, -1))
        roundtrip = compile_braid(basis, word + word.inverse())
        np.testing.assert_allclose(roundtrip, np.eye(len(basis)), atol=TOL)
        self.assertLess(check_unitarity(compile_braid(basis, word)), TOL)

    def test_random_unitarity(self):
        entries = check_random_unitarity(4, 1, 0, RootParams(6), count=20, max_length=12, seed=3)
        self.assertEqual(len(entries), 1)
        self.assertLess(entries[0].deviation, TOL)

    def test_errors(self):
        """Testa índices fora de alcance e base genérica"""
        params = RootParams(5)
        basis = enumerate_basis(3, 1, 1, params)
        with self.assertRaises(IndexOutOfRange):
            sigma_matrix(basis, 3)
        with self.assertRaises(IndexOutOfRange):
            compile_braid(basis, BraidWord(4, (1,)))
        with self.assertRaises(ValueError):
            sigma_matrix(enumerate_basis(3, 1, 1), 1)


class TestCoherence(unittest.TestCase):
    """Pentágono e hexágono"""

    def test_pentagon_small(self):
        """Testa pentágono em r = 4"""
        print("\n🧪 Testando pentágono...")

        entries = pentagon_check(RootParams(4))
        self.assertGreater(len(entries), 0)
        self.assertLess(max(e.deviation for e in entries), TOL)
        print(f"✅ Pentágono: {len(entries)} configurações")

    def test_hexagon(self):
        """Testa hexágono e espelho em r = 4, 5, 6"""
        print("\n🧪 Testando hexágono...")

        for r in (4, 5, 6):
            for mirror in (False, True):
                entries = hexagon_check(RootParams(r), mirror=mirror)
                self.assertGreater(len(entries), 0)
                self.assertLess(max(e.deviation for e in entries), TOL)
        print("✅ Hexágonos satisfeitos")

    @pytest.mark.slow
    def test_pentagon_sweep(self):
        """Testa pentágono completo em r = 5, 6"""
        for r in (5, 6):
            entries = pentagon_check(RootParams(r))
            self.assertLess(max(e.deviation for e in entries), TOL)


class TestExactRepresentation(unittest.TestCase):
    """σ_i em A genérico e invariante por traço"""

    def test_exact_inverse(self):
        """Testa σ_2 σ_2^{-1} = 1 exatamente"""
        print("\n🧪 Testando representação exata...")

        basis = enumerate_basis(3, 1, 1)
        matrix = compile_braid_exact(basis, BraidWord(3, (2, -2)))
        for row in range(len(basis)):
            for col in range(len(basis)):
                self.assertEqual(matrix[row][col], 1 if row == col else 0)
        print("✅ Inverso exato")

    def test_trace_single_crossing(self):
        """Testa σ_1^{-1} em 2 fios: A⁵ + A"""
        word = BraidWord(2, (-1,))
        value = closure_invariant_via_trace(word)
        self.assertEqual(value, RationalFunction(LaurentPoly({5: 1, 1: 1})))
        self.assertEqual(value, braid_closure_bracket(word.letters, 2).raw)

    def test_trace_empty_word(self):
        """Testa palavra vazia em n fios: d^n"""
        self.assertEqual(closure_invariant_via_trace(BraidWord(3, ())), loop_value() ** 3)

    def test_trace_matches_bracket(self):
        """Testa traço contra o colchete diagramático"""
        print("\n🧪 Testando invariante por traço...")

        for letters in ((1, -2, 1), (1, 1, 2, -1), (-2, -2, -1)):
            word = BraidWord(3, letters)
            exact = closure_invariant_via_trace(word)
            self.assertEqual(exact, braid_closure_bracket(letters, 3).raw)
            params = RootParams(7)
            numeric = closure_invariant_via_trace(word, params)
            self.assertAlmostEqual(abs(numeric - eval_at_root(exact, params)), 0.0, places=9)
        print("✅ Traço = colchete")

    def test_trace_requires_ell_1(self):
        with self.assertRaises(ValueError):
            closure_invariant_via_trace(BraidWord(2, (1,)), ell=2)


class TestAcceptanceSweeps(unittest.TestCase):
    """Varreduras completas (marcadas como lentas)"""

    @pytest.mark.slow
    def test_relations_sweep(self):
        """Testa relações de trança para n <= 5, ℓ em {1, 2}, r em {4, 5, 7}"""
        for r in (4, 5, 7):
            params = RootParams(r)
            for n in range(2, 6):
                for ell in (1, 2):
                    for t in total_charges(n, ell, params):
                        for entry in check_braid_relations(n, ell, t, params):
                            self.assertLess(entry.deviation, TOL, f"{entry.check} {entry.labels}")
                        for entry in check_random_unitarity(n, ell, t, params, count=100, max_length=20, seed=n):
                            self.assertLess(entry.deviation, TOL)

    @pytest.mark.slow
    def test_trace_all_short_words(self):
        """Testa traço = colchete para todas as palavras de comprimento <= 6 em 2 e 3 fios"""
        for n, letters in ((2, (1, -1)), (3, (1, -1, 2, -2))):
            for length in range(7):
                for word in product(letters, repeat=length):
                    exact = closure_invariant_via_trace(BraidWord(n, word))
                    self.assertEqual(exact, braid_closure_bracket(word, n).raw, str(word))


if __name__ == "__main__":
    unittest.main()
