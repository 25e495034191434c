#!/usr/bin/env python3
"""
Configuração Centralizada - tlrecoupling
Tolerâncias, precisão numérica, orçamento do oráculo diagramático e limites das verificações
"""

from dataclasses import dataclass
from typing import List, Optional
import os
from dotenv import load_dotenv

OUTPUT_FORMATS = ("json", "csv")


def _int_list(raw: str) -> List[int]:
    return [int(item) for item in raw.split(",") if item.strip()]


@dataclass
class Settings:
    """
    Configuração centralizada do tlrecoupling
    Valores padrão cobrem as varreduras de aceitação; variáveis TLR_* sobrescrevem
    """

    # ============================================================
    # SEÇÃO 1: AMBIENTE E LOGGING
    # ============================================================
    LOG_LEVEL: str = "INFO"
    LOG_FILE: Optional[str] = None          # além do stderr, se definido

    # ============================================================
    # SEÇÃO 2: ARITMÉTICA
    # ============================================================
    DEFAULT_TOLERANCE: float = 1e-10
    EVAL_PRECISION_DIGITS: int = 30         # dígitos do mpmath ao avaliar em raízes

    # ============================================================
    # SEÇÃO 3: ORÁCULO DIAGRAMÁTICO
    # ============================================================
    MAX_STRANDS: int = 12                   # C_12 = 208012 diagramas

    # ============================================================
    # SEÇÃO 4: SAÍDA
    # ============================================================
    OUTPUT_FORMAT: str = "json"             # json | csv
    SIGNIFICANT_DIGITS: int = 17            # ida e volta exata de doubles

    # ============================================================
    # SEÇÃO 5: VERIFICAÇÕES (check)
    # ============================================================
    CHECK_MAX_LABEL: Optional[int] = None   # None = r-2 em cada raiz
    CHECK_MAX_STRANDS: int = 5
    CHECK_RANDOM_WORDS: int = 100
    CHECK_WORD_LENGTH: int = 20
    CHECK_SEED: int = 20240
    CHECK_TRACE_WORD_LENGTH: int = 6        # palavras do oráculo traço = colchete
    CHECK_ROOTS: Optional[List[int]] = None  # None = raízes padrão de cada suíte

    # ============================================================
    # MÉTODOS
    # ============================================================

    @classmethod
    def from_env(cls) -> "Settings":
        """Carrega configurações de variáveis de ambiente"""
        load_dotenv("config/settings.env")

        max_label = os.getenv("TLR_CHECK_MAX_LABEL")
        roots = os.getenv("TLR_CHECK_ROOTS")
        return cls(
            LOG_LEVEL=os.getenv("TLR_LOG_LEVEL", "INFO").upper(),
            LOG_FILE=os.getenv("TLR_LOG_FILE") or None,
            DEFAULT_TOLERANCE=float(os.getenv("TLR_TOLERANCE", "1e-10")),
            EVAL_PRECISION_DIGITS=int(os.getenv("TLR_EVAL_PRECISION_DIGITS", "30")),
            MAX_STRANDS=int(os.getenv("TLR_MAX_STRANDS", "12")),
            OUTPUT_FORMAT=os.getenv("TLR_OUTPUT_FORMAT", "json").lower(),
            SIGNIFICANT_DIGITS=int(os.getenv("TLR_SIGNIFICANT_DIGITS", "17")),
            CHECK_MAX_LABEL=int(max_label) if max_label else None,
            CHECK_MAX_STRANDS=int(os.getenv("TLR_CHECK_MAX_STRANDS", "5")),
            CHECK_RANDOM_WORDS=int(os.getenv("TLR_CHECK_RANDOM_WORDS", "100")),
            CHECK_WORD_LENGTH=int(os.getenv("TLR_CHECK_WORD_LENGTH", "20")),
            CHECK_SEED=int(os.getenv("TLR_CHECK_SEED", "20240")),
            CHECK_TRACE_WORD_LENGTH=int(os.getenv("TLR_CHECK_TRACE_WORD_LENGTH", "6")),
            CHECK_ROOTS=_int_list(roots) if roots else None,
        )

    def validate(self) -> bool:
        """
        Valida consistência das configurações
        Levanta ValueError se houver inconsistências
        """
        if self.DEFAULT_TOLERANCE <= 0:
            raise ValueError(f"Tolerância deve ser positiva, atual: {self.DEFAULT_TOLERANCE}")

        if self.EVAL_PRECISION_DIGITS < 16:
            raise ValueError("Precisão de avaliação deve ter pelo menos 16 dígitos")

        if self.MAX_STRANDS < 2:
            raise ValueError(f"Orçamento de fios deve ser >= 2, atual: {self.MAX_STRANDS}")

        if self.OUTPUT_FORMAT not in OUTPUT_FORMATS:
            raise ValueError(f"Formato de saída desconhecido: {self.OUTPUT_FORMAT}")

        if not 1 <= self.SIGNIFICANT_DIGITS <= 17:
            raise ValueError("Dígitos significativos devem estar entre 1 e 17")

        if self.CHECK_MAX_LABEL is not None and self.CHECK_MAX_LABEL < 0:
            raise ValueError("Rótulo máximo das verificações não pode ser negativo")

        if self.CHECK_MAX_STRANDS < 2:
            raise ValueError("Verificações de trança exigem pelo menos 2 fios")

        if self.CHECK_TRACE_WORD_LENGTH < 0:
            raise ValueError("Comprimento das palavras do oráculo não pode ser negativo")

        if self.CHECK_ROOTS is not None and any(r < 3 for r in self.CHECK_ROOTS):
            raise ValueError(f"Níveis r devem ser >= 3, atual: {self.CHECK_ROOTS}")

        return True


# Instância global
settings = Settings.from_env()
settings.validate()  # Valida na importação
