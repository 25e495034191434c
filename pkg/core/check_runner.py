"""
Check Runner - Orquestração das suítes de verificação
Executa varreduras (ortogonalidade, tranças, pentágono, hexágono, oráculo, bolha),
registra a execução e classifica cada desvio pelos limites da check_library
"""

import logging
from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from itertools import product
from typing import Any, Dict, List, Optional

import numpy as np

from config.check_library import CheckSuite, CheckVerdict, get_default_roots, get_threshold
from config.settings import settings
from core.braidrep import (
    BraidWord,
    ReportEntry,
    check_braid_relations,
    check_random_unitarity,
    closure_invariant_via_trace,
    compile_braid,
    enumerate_basis,
    hexagon_check,
    max_deviation,
    path_count,
    pentagon_check,
    random_words,
    total_charges,
)
from core.errors import BudgetExceeded
from core.quantum import RootParams, delta_n, delta_n_at, quantum_int_at
from core.recoupling import (
    denominator_forms,
    fmatrix,
    fmatrix_inverse_labels,
    fusion_channels,
    is_admissible,
    modified_bubble_check,
    modified_entry_at_root,
    tet_closed,
    theta_closed,
    vertex_factor,
)
from core.laurent import RationalFunction
from core.tl_diagrams import (
    braid_closure_bracket,
    bubble_oracle,
    jones_wenzl,
    tet_oracle,
    theta_oracle,
    trace_closure,
)

# Configuração de logging
logger = logging.getLogger(__name__)


class CheckStatus(Enum):
    """Status possíveis de uma execução"""
    PENDING = "pending"
    RUNNING = "running"
    PASSED = "passed"
    FAILED = "failed"


@dataclass
class CheckExecution:
    """Registra a execução de uma suíte"""
    suite: CheckSuite
    status: CheckStatus
    started_at: datetime
    roots: List[Optional[int]] = field(default_factory=list)
    tolerance: Optional[float] = None
    completed_at: Optional[datetime] = None
    entries: List[ReportEntry] = field(default_factory=list)
    verdicts: List[CheckVerdict] = field(default_factory=list)

    @property
    def violations(self) -> List[ReportEntry]:
        return [e for e, v in zip(self.entries, self.verdicts) if v == CheckVerdict.VIOLATION]

    @property
    def max_deviation(self) -> float:
        return max((e.deviation for e in self.entries), default=0.0)

    def get_execution_metrics(self) -> Dict[str, Any]:
        """Métricas agregadas da execução"""
        duration = None
        if self.completed_at:
            duration = (self.completed_at - self.started_at).total_seconds()
        by_check: Dict[str, int] = {}
        for entry in self.entries:
            by_check[entry.check] = by_check.get(entry.check, 0) + 1
        return {
            "suite": self.suite.value,
            "status": self.status.value,
            "roots": self.roots,
            "entries": len(self.entries),
            "violations": len(self.violations),
            "marginal": sum(1 for v in self.verdicts if v == CheckVerdict.MARGINAL),
            "max_deviation": self.max_deviation,
            "by_check": by_check,
            "duration_seconds": duration,
        }

    def to_json(self) -> List[dict]:
        """Documento de saída: lista de {check, labels, deviation}"""
        return [entry.to_json() for entry in self.entries]


class CheckRunner:
    """
    Executa as suítes de verificação sobre as raízes escolhidas

    Orçamentos (rótulo máximo, fios, palavras aleatórias) vêm da linha de comando ou de Settings.
    """

    def __init__(self, tol: Optional[float] = None, max_label: Optional[int] = None,
                 max_strands: Optional[int] = None, word_length: Optional[int] = None):
        self.tol = tol
        self.max_label = settings.CHECK_MAX_LABEL if max_label is None else max_label
        self.max_strands = settings.CHECK_MAX_STRANDS if max_strands is None else max_strands
        self.word_length = settings.CHECK_TRACE_WORD_LENGTH if word_length is None else word_length
        self.executions: List[CheckExecution] = []
        logger.debug(f"CheckRunner inicializado (tol={tol}, max_label={self.max_label}, "
                     f"max_strands={self.max_strands})")

    # ------------------------------------------------------------
    # Execução
    # ------------------------------------------------------------

    def resolve_roots(self, suite: CheckSuite, roots: Optional[List[int]] = None) -> List[int]:
        """Raízes explícitas, senão TLR_CHECK_ROOTS, senão as raízes padrão da suíte"""
        if roots is not None:
            return list(roots)
        if settings.CHECK_ROOTS is not None:
            return list(settings.CHECK_ROOTS)
        return get_default_roots(suite)

    def run(self, suite: CheckSuite, roots: Optional[List[int]] = None) -> CheckExecution:
        """Roda a suíte nas raízes resolvidas por resolve_roots; o oráculo ignora r"""
        roots = self.resolve_roots(suite, roots)
        execution = CheckExecution(suite=suite, status=CheckStatus.RUNNING, started_at=datetime.now(),
                                   roots=roots if suite != CheckSuite.ORACLE else [], tolerance=self.tol)
        self.executions.append(execution)
        logger.info(f"🚀 Iniciando suíte '{suite.value}' em r={execution.roots or 'genérico'}")

        handler = {
            CheckSuite.ORTHOGONALITY: self._orthogonality,
            CheckSuite.BRAID: self._braid,
            CheckSuite.PENTAGON: self._pentagon,
            CheckSuite.HEXAGON: self._hexagon,
            CheckSuite.BUBBLE: self._bubble,
        }.get(suite)
        if handler is None:
            execution.entries = self._oracle()
        else:
            for r in roots:
                params = RootParams(r) if self.tol is None else RootParams(r, self.tol)
                execution.entries.extend(handler(params))

        threshold = get_threshold(suite)
        execution.verdicts = [threshold.classify(entry.deviation, self.tol) for entry in execution.entries]
        execution.completed_at = datetime.now()
        execution.status = CheckStatus.FAILED if execution.violations else CheckStatus.PASSED
        for entry in execution.violations:
            logger.warning(f"🚨 Violação {entry.check} {entry.labels}: desvio {entry.deviation:.3e}")
        logger.info(f"✅ Suíte '{suite.value}' concluída: {len(execution.entries)} entradas, "
                    f"{len(execution.violations)} violações")
        return execution

    def _label_range(self, params: RootParams) -> range:
        top = params.r - 2 if self.max_label is None else min(self.max_label, params.r - 2)
        return range(top + 1)

    # ------------------------------------------------------------
    # Suítes numéricas
    # ------------------------------------------------------------

    def _orthogonality(self, params: RootParams) -> List[ReportEntry]:
        entries = []
        for a, b, c, d in product(self._label_range(params), repeat=4):
            matrix = fmatrix(a, b, c, d, params)
            if not matrix.rows:
                continue
            labels = (params.r, a, b, c, d)
            values = matrix.entries
            partner = fmatrix(*fmatrix_inverse_labels(a, b, c, d), params=params).entries
            identity = np.eye(len(matrix.rows))
            entries.append(ReportEntry("orthogonality", labels, max_deviation(values @ values.T, identity)))
            entries.append(ReportEntry("inverse-labels", labels, max_deviation(values @ partner, identity)))
            entries.append(ReportEntry("transpose", labels, max_deviation(values.T, partner)))

            worst_imag = 0.0
            for row, i in enumerate(matrix.rows):
                for col, j in enumerate(matrix.cols):
                    value = modified_entry_at_root(a, b, c, d, i, j, params)
                    worst_imag = max(worst_imag, abs(value.imag), abs(value.real - values[row, col]))
            entries.append(ReportEntry("reality", labels, worst_imag))
        logger.debug(f"Ortogonalidade r={params.r}: {len(entries)} entradas")
        return entries

    def _braid(self, params: RootParams) -> List[ReportEntry]:
        entries = []
        for n in range(2, self.max_strands + 1):
            for ell in (1, 2):
                if ell > params.r - 2:
                    continue
                for t in total_charges(n, ell, params):
                    entries.extend(check_braid_relations(n, ell, t, params))
                    entries.extend(check_random_unitarity(
                        n, ell, t, params, settings.CHECK_RANDOM_WORDS, settings.CHECK_WORD_LENGTH,
                        settings.CHECK_SEED + n))
                    entries.extend(self._homomorphism(n, ell, t, params))
                    dimension = len(enumerate_basis(n, ell, t, params))
                    entries.append(ReportEntry("dimension", (params.r, n, ell, t),
                                               float(abs(dimension - path_count(n, ell, t, params)))))
        return entries

    def _homomorphism(self, n: int, ell: int, t: int, params: RootParams) -> List[ReportEntry]:
        basis = enumerate_basis(n, ell, t, params)
        if not len(basis):
            return []
        words = random_words(n, 10, 10, settings.CHECK_SEED + 7 * n + t)
        worst = 0.0
        for first, second in zip(words[::2], words[1::2]):
            joined = compile_braid(basis, first + second)
            split = compile_braid(basis, second) @ compile_braid(basis, first)
            worst = max(worst, max_deviation(joined, split))
        return [ReportEntry("homomorphism", (params.r, n, ell, t), worst)]

    def _pentagon(self, params: RootParams) -> List[ReportEntry]:
        return [ReportEntry(e.check, (params.r,) + e.labels, e.deviation)
                for e in pentagon_check(params, self.max_label)]

    def _hexagon(self, params: RootParams) -> List[ReportEntry]:
        entries = hexagon_check(params, self.max_label) + hexagon_check(params, self.max_label, mirror=True)
        return [ReportEntry(e.check, (params.r,) + e.labels, e.deviation) for e in entries]

    def _bubble(self, params: RootParams) -> List[ReportEntry]:
        entries = []
        labels = self._label_range(params)
        for a, b, c in product(labels, repeat=3):
            if not is_admissible(a, b, c, params):
                continue
            entries.append(ReportEntry("modified-bubble", (params.r, a, b, c),
                                       modified_bubble_check(a, b, c, params)))
            entries.append(ReportEntry("positivity", (params.r, a, b, c),
                                       0.0 if vertex_factor(a, b, c, params) > 0 else 1.0))
        for a, b, c, d in product(labels, repeat=4):
            for j in fusion_channels(a, b, params):
                if is_admissible(c, d, j, params):
                    bubbles, closed = denominator_forms(a, b, c, d, j, params)
                    entries.append(ReportEntry("denominator", (params.r, a, b, c, d, j), abs(bubbles - closed)))
        entries.append(ReportEntry("boundary", (params.r,), abs(delta_n_at(params.r - 1, params))))
        worst = max(0.0, max(-quantum_int_at(n + 1, params) for n in range(params.r - 1)))
        entries.append(ReportEntry("qint-positivity", (params.r,), worst))
        return entries

    # ------------------------------------------------------------
    # Oráculo exato
    # ------------------------------------------------------------

    def _oracle(self) -> List[ReportEntry]:
        """Fórmulas fechadas contra o oráculo diagramático: desvio 0 (igual) ou 1 (diferente)"""
        entries = []

        def record(check: str, labels, lhs, rhs):
            entries.append(ReportEntry(check, tuple(labels), 0.0 if lhs == rhs else 1.0))

        max_projector = min(6, settings.MAX_STRANDS)
        for n in range(max_projector + 1):
            projector = jones_wenzl(n)
            record("delta", (n,), trace_closure(projector), RationalFunction(delta_n(n)))

        for a, b, c in product(range(9), repeat=3):
            if a + b + c > 8 or not is_admissible(a, b, c):
                continue
            try:
                record("theta", (a, b, c), theta_closed(a, b, c), theta_oracle(a, b, c))
                coefficient, proportional = bubble_oracle(a, b, c)
                expected = theta_closed(a, b, c) / RationalFunction(delta_n(c))
                entries.append(ReportEntry("bubble", (a, b, c),
                                           0.0 if proportional and coefficient == expected else 1.0))
            except BudgetExceeded as e:
                logger.debug(f"theta {a, b, c} fora do orçamento: {e}")

        top = 3 if self.max_label is None else self.max_label
        for a, b, i, c, d, j in product(range(top + 1), repeat=6):
            if not all(is_admissible(*t) for t in ((a, b, j), (c, d, j), (a, c, i), (b, d, i))):
                continue
            try:
                record("tet", (a, b, i, c, d, j), tet_closed(a, b, i, c, d, j), tet_oracle(a, b, i, c, d, j))
            except BudgetExceeded as e:
                logger.debug(f"tet {a, b, i, c, d, j} fora do orçamento: {e}")

        for n in (2, 3):
            for length in range(self.word_length + 1):
                for letters in product([k for k in range(-(n - 1), n) if k], repeat=length):
                    word = BraidWord(n, tuple(letters))
                    record("trace", (n,) + tuple(letters),
                           braid_closure_bracket(word.letters, n).raw, closure_invariant_via_trace(word))
        logger.debug(f"Oráculo: {len(entries)} comparações exatas")
        return entries

    # ------------------------------------------------------------
    # Relatório
    # ------------------------------------------------------------

    def log_report(self, execution: CheckExecution):
        """Resumo em banner no fluxo de log (stderr); o documento vai para stdout"""
        metrics = execution.get_execution_metrics()
        level = logging.WARNING if metrics["violations"] else logging.INFO
        logger.log(level, "=" * 70)
        logger.log(level, f"📊 RELATÓRIO DA SUÍTE {metrics['suite'].upper()}")
        logger.log(level, "=" * 70)
        for check, count in sorted(metrics["by_check"].items()):
            logger.log(level, f"🔹 {check}: {count} entradas")
        logger.log(level, f"📈 Desvio máximo: {metrics['max_deviation']:.3e}")
        logger.log(level, f"⚠️  Marginais: {metrics['marginal']}")
        logger.log(level, f"🚨 Violações: {metrics['violations']}")
        if metrics["duration_seconds"] is not None:
            logger.log(level, f"⏱️  Duração: {metrics['duration_seconds']:.2f}s")
        logger.log(level, "=" * 70)
