#!/usr/bin/env python3
"""
Documentos de saída: JSON (padrão) e CSV

Floats são arredondados para SIGNIFICANT_DIGITS dígitos significativos (17 = ida e volta
exata de doubles); objetos com to_json() são convertidos recursivamente. A saída é
determinística byte a byte.
"""

import csv
import io
import json
import logging
from typing import Any, Iterable, List, Sequence

import numpy as np

from config.settings import settings

logger = logging.getLogger(__name__)


def _round(value: float, digits: int) -> float:
    return float(format(float(value), f".{digits}g"))


def to_plain(value: Any, digits: int = None) -> Any:
    """Converte recursivamente para tipos JSON nativos"""
    digits = settings.SIGNIFICANT_DIGITS if digits is None else digits
    if hasattr(value, "to_json"):
        return to_plain(value.to_json(), digits)
    if isinstance(value, dict):
        return {str(k): to_plain(v, digits) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_plain(v, digits) for v in value]
    if isinstance(value, np.ndarray):
        return to_plain(value.tolist(), digits)
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [_round(value.real, digits), _round(value.imag, digits)]
    if isinstance(value, (float, np.floating)):
        return _round(value, digits)
    return value


def dumps_json(document: Any, digits: int = None) -> str:
    """JSON indentado; NaN/inf levantam ValueError"""
    return json.dumps(to_plain(document, digits), indent=2, ensure_ascii=False, allow_nan=False)


def dumps_csv(header: Sequence[Any], rows: Iterable[Sequence[Any]], digits: int = None) -> str:
    digits = settings.SIGNIFICANT_DIGITS if digits is None else digits
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow([_cell(value, digits) for value in header])
    for row in rows:
        writer.writerow([_cell(value, digits) for value in row])
    return buffer.getvalue()


def _cell(value: Any, digits: int) -> str:
    if isinstance(value, (complex, np.complexfloating)):
        return f"{format(value.real, f'.{digits}g')}{format(value.imag, f'+.{digits}g')}j"
    if isinstance(value, (float, np.floating)):
        return format(float(value), f".{digits}g")
    if hasattr(value, "to_json") or isinstance(value, (dict, list)):
        return json.dumps(to_plain(value, digits), sort_keys=True)
    return str(value)


def matrix_rows(row_labels: List[Any], matrix) -> List[List[Any]]:
    """Linhas CSV: rótulo da linha seguido das entradas"""
    return [[label] + list(row) for label, row in zip(row_labels, matrix)]
