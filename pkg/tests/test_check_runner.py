#!/usr/bin/env python3
"""
Testes de configuração, biblioteca de limites e execução das suítes de verificação
"""

import os
import sys
import pytest
import unittest
from unittest.mock import patch

# Adicionar diretórios ao path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import core.recoupling as recoupling
from config.check_library import CheckSuite, CheckThreshold, CheckVerdict, get_threshold
from config.settings import Settings, settings
from core.braidrep import ReportEntry
from core.check_runner import CheckRunner, CheckStatus
from core.serialization import dumps_csv, dumps_json, to_plain


class TestSettings(unittest.TestCase):
    """Validação de Settings"""

    def test_defaults_are_valid(self):
        """Testa configuração padrão"""
        print("\n🧪 Testando Settings...")

        config = Settings()
        self.assertTrue(config.validate())
        self.assertIsNone(config.CHECK_ROOTS)
        self.assertEqual(config.CHECK_TRACE_WORD_LENGTH, 6)
        print("✅ Configuração padrão válida")

    def test_invalid_values(self):
        """Testa rejeição de valores inconsistentes"""
        invalid = [
            Settings(DEFAULT_TOLERANCE=0),
            Settings(EVAL_PRECISION_DIGITS=10),
            Settings(MAX_STRANDS=1),
            Settings(OUTPUT_FORMAT="xml"),
            Settings(SIGNIFICANT_DIGITS=20),
            Settings(CHECK_MAX_LABEL=-1),
            Settings(CHECK_MAX_STRANDS=1),
            Settings(CHECK_ROOTS=[5, 2]),
            Settings(CHECK_TRACE_WORD_LENGTH=-1),
        ]
        for config in invalid:
            with self.assertRaises(ValueError):
                config.validate()
        print("✅ Valores inválidos rejeitados")

    def test_from_env(self):
        """Testa leitura das variáveis TLR_*"""
        env = {
            "TLR_TOLERANCE": "1e-8",
            "TLR_CHECK_ROOTS": "5,7",
            "TLR_OUTPUT_FORMAT": "CSV",
            "TLR_CHECK_MAX_LABEL": "2",
        }
        with patch.dict(os.environ, env):
            config = Settings.from_env()
        self.assertEqual(config.DEFAULT_TOLERANCE, 1e-8)
        self.assertEqual(config.CHECK_ROOTS, [5, 7])
        self.assertEqual(config.OUTPUT_FORMAT, "csv")
        self.assertEqual(config.CHECK_MAX_LABEL, 2)

    def test_from_env_without_roots(self):
        """Testa que sem TLR_CHECK_ROOTS cada suíte usa suas raízes padrão"""
        with patch.dict(os.environ, {"TLR_CHECK_TRACE_WORD_LENGTH": "4"}):
            os.environ.pop("TLR_CHECK_ROOTS", None)
            config = Settings.from_env()
        self.assertIsNone(config.CHECK_ROOTS)
        self.assertEqual(config.CHECK_TRACE_WORD_LENGTH, 4)
        self.assertTrue(config.validate())


class TestCheckLibrary(unittest.TestCase):
    """Classificação de desvios"""

    def test_numeric_threshold(self):
        """Testa PASSED, MARGINAL e VIOLATION"""
        print("\n🧪 Testando classificação...")

        threshold = get_threshold(CheckSuite.ORTHOGONALITY)
        self.assertEqual(threshold.classify(1e-13), CheckVerdict.PASSED)
        self.assertEqual(threshold.classify(1e-10), CheckVerdict.MARGINAL)
        self.assertEqual(threshold.classify(1e-6), CheckVerdict.VIOLATION)
        print("✅ Classificação correta")

    def test_tolerance_override(self):
        """Testa --tol substituindo o limite padrão"""
        threshold = get_threshold(CheckSuite.BRAID)
        self.assertEqual(threshold.classify(1e-8, tol=1e-5), CheckVerdict.PASSED)
        self.assertEqual(threshold.classify(1e-4, tol=1e-5), CheckVerdict.VIOLATION)

    def test_exact_threshold(self):
        """Testa suíte exata: só desvio 0 passa"""
        threshold = get_threshold(CheckSuite.ORACLE)
        self.assertTrue(threshold.exact)
        self.assertEqual(threshold.classify(0.0), CheckVerdict.PASSED)
        self.assertEqual(threshold.classify(1.0), CheckVerdict.VIOLATION)
        self.assertEqual(threshold.classify(1.0, tol=10.0), CheckVerdict.VIOLATION)

    def test_custom_threshold(self):
        threshold = CheckThreshold(violation_above=1.0)
        self.assertEqual(threshold.classify(0.5), CheckVerdict.PASSED)

    def test_report_entry(self):
        entry = ReportEntry("braid", (3, 1, 1, 1), 1e-12)
        self.assertTrue(entry.passed(1e-9))
        self.assertFalse(entry.passed(1e-13))
        self.assertEqual(entry.to_json(), {"check": "braid", "labels": [3, 1, 1, 1], "deviation": 1e-12})


class TestSerialization(unittest.TestCase):
    """Documentos de saída"""

    def test_rounding_and_complex(self):
        """Testa arredondamento e números complexos"""
        plain = to_plain({"x": 1 / 3, "z": 1 + 2j, "k": (1, 2)}, digits=3)
        self.assertEqual(plain, {"x": 0.333, "z": [1.0, 2.0], "k": [1, 2]})

    def test_deterministic_json(self):
        document = {"values": [0.1, 0.2]}
        self.assertEqual(dumps_json(document), dumps_json(document))
        with self.assertRaises(ValueError):
            dumps_json({"bad": float("nan")})

    def test_csv(self):
        text = dumps_csv(["n", "value"], [[2, 1.5]])
        self.assertEqual(text, "n,value\n2,1.5\n")


class TestCheckRunner(unittest.TestCase):
    """Execução das suítes"""

    def setUp(self):
        self.runner = CheckRunner(max_label=1, max_strands=3)

    def test_orthogonality_passes(self):
        """Testa suíte de ortogonalidade em r = 4, 5"""
        print("\n🧪 Testando suíte orthogonality...")

        execution = self.runner.run(CheckSuite.ORTHOGONALITY, roots=[4, 5])
        self.assertEqual(execution.status, CheckStatus.PASSED)
        self.assertGreater(len(execution.entries), 0)
        self.assertEqual(execution.violations, [])
        checks = {entry.check for entry in execution.entries}
        self.assertEqual(checks, {"orthogonality", "inverse-labels", "transpose", "reality"})
        print(f"✅ {len(execution.entries)} entradas sem violações")

    def test_injected_bug_is_detected(self):
        """Testa que um denominador errado gera violações"""
        print("\n🧪 Testando detecção de erro injetado...")

        original = recoupling.recoupling_denominator
        with patch("core.recoupling.recoupling_denominator",
                   side_effect=lambda *args, **kwargs: 2 * original(*args, **kwargs)):
            execution = self.runner.run(CheckSuite.ORTHOGONALITY, roots=[4])
        self.assertEqual(execution.status, CheckStatus.FAILED)
        self.assertGreater(len(execution.violations), 0)
        print(f"✅ {len(execution.violations)} violações detectadas")

    def test_default_roots_per_suite(self):
        """Testa raízes padrão por suíte, sobrescrita por TLR_CHECK_ROOTS e raízes explícitas"""
        print("\n🧪 Testando raízes padrão...")

        with patch.object(settings, "CHECK_ROOTS", None):
            self.assertEqual(self.runner.resolve_roots(CheckSuite.ORTHOGONALITY), [3, 4, 5, 6, 7, 8])
            self.assertEqual(self.runner.resolve_roots(CheckSuite.BRAID), [4, 5, 7])
            self.assertEqual(self.runner.resolve_roots(CheckSuite.PENTAGON), [4, 5, 6])
            self.assertEqual(self.runner.resolve_roots(CheckSuite.HEXAGON), [4, 5, 6])
            self.assertEqual(self.runner.resolve_roots(CheckSuite.BUBBLE), list(range(3, 11)))
            self.assertEqual(self.runner.resolve_roots(CheckSuite.ORACLE), [])
            self.assertEqual(self.runner.resolve_roots(CheckSuite.BUBBLE, [5]), [5])
        with patch.object(settings, "CHECK_ROOTS", [7]):
            self.assertEqual(self.runner.resolve_roots(CheckSuite.BRAID), [7])
            self.assertEqual(self.runner.resolve_roots(CheckSuite.BRAID, [4]), [4])
        print("✅ Raízes resolvidas")

    def test_trace_word_length_default(self):
        """Testa comprimento padrão das palavras do oráculo traço = colchete"""
        with patch.object(settings, "CHECK_TRACE_WORD_LENGTH", 6):
            self.assertEqual(CheckRunner().word_length, 6)
        self.assertEqual(CheckRunner(word_length=3).word_length, 3)

    @pytest.mark.slow
    def test_bubble_default_sweep(self):
        """Testa a suíte bubble em todas as raízes padrão r = 3..10"""
        with patch.object(settings, "CHECK_ROOTS", None):
            execution = CheckRunner(max_label=1).run(CheckSuite.BUBBLE)
        self.assertEqual(execution.roots, list(range(3, 11)))
        self.assertEqual(execution.status, CheckStatus.PASSED)

    def test_bubble_and_braid(self):
        """Testa suítes bubble e braid"""
        for suite in (CheckSuite.BUBBLE, CheckSuite.BRAID, CheckSuite.HEXAGON):
            execution = self.runner.run(suite, roots=[5])
            self.assertEqual(execution.status, CheckStatus.PASSED, suite.value)

    def test_metrics_and_report(self):
        """Testa métricas agregadas e relatório em log"""
        execution = self.runner.run(CheckSuite.PENTAGON, roots=[4])
        metrics = execution.get_execution_metrics()
        self.assertEqual(metrics["suite"], "pentagon")
        self.assertEqual(metrics["violations"], 0)
        self.assertIn("pentagon", metrics["by_check"])
        self.assertIsNotNone(metrics["duration_seconds"])
        with self.assertLogs("core.check_runner", level="INFO") as logs:
            self.runner.log_report(execution)
        self.assertTrue(any("RELATÓRIO" in line for line in logs.output))
        self.assertEqual(len(self.runner.executions), 1)
        self.assertIsInstance(execution.to_json(), list)

    @pytest.mark.slow
    def test_oracle_suite(self):
        """Testa oráculo diagramático contra as fórmulas fechadas"""
        print("\n🧪 Testando suíte oracle...")

        runner = CheckRunner(max_label=2, word_length=2)
        execution = runner.run(CheckSuite.ORACLE)
        self.assertEqual(execution.status, CheckStatus.PASSED)
        self.assertEqual(execution.roots, [])
        print(f"✅ {len(execution.entries)} comparações exatas")


if __name__ == "__main__":
    unittest.main()
