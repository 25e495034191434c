#!/usr/bin/env python3
"""
tlrecoupling - Teoria de recoupling de Temperley-Lieb
Linha de comando: avaliações (Δ_n, Θ, Tet, 6j), matrizes M, fases λ, compilação de tranças
e as suítes de verificação

Exatamente um de --r <int> (numérico em A = e^{iπ/2r}) ou --generic (exato em A).
Documentos JSON/CSV vão para stdout; diagnósticos e relatórios para stderr.
Códigos de saída: 0 sucesso, 1 entrada inválida, 2 verificação com violações.
"""

import os
import sys
import argparse
import logging
from typing import Any, List, Optional, Sequence, Tuple

# Adicionar diretórios ao path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from config.check_library import CheckSuite
from config.settings import settings
from core.braidrep import (
    BraidWord,
    compile_braid,
    compile_braid_exact,
    enumerate_basis,
    matrix_to_json,
)
from core.check_runner import CheckRunner, CheckStatus
from core.errors import ParseError, RecouplingError
from core.laurent import RationalFunction
from core.quantum import (
    RootParams,
    ScalarValue,
    delta_n,
    delta_n_at,
    eval_at_root,
    quantum_int,
    quantum_int_at,
)
from core.recoupling import fmatrix, rmatrix, sixj, sixj_matrix, tet_closed, theta_closed
from core.serialization import dumps_csv, dumps_json, matrix_rows
from core.tl_diagrams import braid_closure_bracket

logger = logging.getLogger("tlrecoupling")

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_VIOLATIONS = 2
# erros internos também saem com 1, mas são registrados com traceback como bug
EXIT_INTERNAL_ERROR = 1

# (documento JSON, cabeçalho CSV, linhas CSV)
Document = Tuple[Any, List[Any], List[List[Any]]]


class _Parser(argparse.ArgumentParser):
    """argparse sai com 2 em erro de uso; aqui erro de uso é entrada inválida (1)"""

    def error(self, message):
        raise ParseError(message)


def parse_braid_word(text: str, strands: Optional[int] = None) -> BraidWord:
    """'1,-2,1' -> σ_1 σ_2^{-1} σ_1 em max|letra|+1 fios (ou --strands)"""
    return BraidWord.parse(text, strands)


def normalize_word_flags(argv: Sequence[str]) -> List[str]:
    """'--word -1,2' -> '--word=-1,2': argparse leria '-1,2' como uma opção"""
    tokens = list(argv)
    normalized: List[str] = []
    k = 0
    while k < len(tokens):
        if tokens[k] == "--word" and k + 1 < len(tokens):
            normalized.append(f"--word={tokens[k + 1]}")
            k += 2
        else:
            normalized.append(tokens[k])
            k += 1
    return normalized


def configure_logging(level: str = None, log_file: Optional[str] = None):
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(log_file))
    logging.basicConfig(
        level=getattr(logging, (level or settings.LOG_LEVEL).upper(), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers,
        force=True,
    )


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    regime = common.add_mutually_exclusive_group(required=True)
    regime.add_argument("--r", type=int, help="nível da raiz A = e^{iπ/2r} (r >= 3)")
    regime.add_argument("--generic", action="store_true", help="aritmética exata em A genérico")
    common.add_argument("--tol", type=float, default=None, help="tolerância (padrão: TLR_TOLERANCE)")
    output = common.add_mutually_exclusive_group()
    output.add_argument("--json", dest="format", action="store_const", const="json")
    output.add_argument("--csv", dest="format", action="store_const", const="csv")
    common.add_argument("--max-label", type=int, default=None, help="rótulo máximo nas verificações")
    common.add_argument("--max-strands", type=int, default=None, help="fios máximos nas verificações")

    parser = _Parser(prog="tlrecoupling", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    commands = parser.add_subparsers(dest="command", required=True)

    def command(name: str, labels: Sequence[str], help_text: str) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, parents=[common], help=help_text)
        for label in labels:
            sub.add_argument(label, type=int)
        return sub

    command("qint", ["n"], "inteiro quântico [n]")
    command("delta", ["n"], "Δ_n = (-1)^n [n+1]")
    command("theta", ["a", "b", "c"], "rede theta Θ(a,b,c)")
    command("tet", ["a", "b", "i", "c", "d", "j"], "tetraedro com vértices (a,b,j),(c,d,j),(a,c,i),(b,d,i)")
    command("sixj", ["a", "b", "i", "c", "d", "k"], "símbolo 6j {a b i; c d k}")
    command("fmatrix", ["a", "b", "c", "d"], "M[a,b,c,d] (--r) ou matriz 6j exata (--generic)")
    command("rphase", ["a", "b"], "fases λ_c^{ab} sobre os canais c")
    command("basis", ["n", "ell", "t"], "base de árvores de fusão")
    compile_cmd = command("compile", ["n", "ell", "t"],
                          "compila palavra de trança (a primeira letra age primeiro)")
    compile_cmd.add_argument("--word", required=True, help="ex.: '1,-2,1'")
    bracket_cmd = command("bracket", [], "colchete do fecho de uma trança")
    bracket_cmd.add_argument("--word", required=True)
    bracket_cmd.add_argument("--strands", type=int, default=None)
    check_cmd = command("check", [], "suíte de verificação")
    check_cmd.add_argument("suite", choices=[suite.value for suite in CheckSuite])
    check_cmd.add_argument("--word-length", type=int, default=None,
                           help="comprimento máximo das palavras do oráculo (padrão: TLR_CHECK_TRACE_WORD_LENGTH)")
    return parser


# ------------------------------------------------------------
# Helpers de documento
# ------------------------------------------------------------

def _exact_json(value: RationalFunction) -> dict:
    """Polinômio de Laurent quando possível, senão {num, den}"""
    return ScalarValue.exact(value).plain()


def _scalar(value, params: Optional[RootParams]):
    if params is None:
        return ScalarValue.exact(value).plain()
    return ScalarValue.numeric(value, params).plain()


def _scalar_document(name: str, labels: dict, value, params: Optional[RootParams]) -> Document:
    document = {"quantity": name, **labels, "r": params.r if params else None, "value": _scalar(value, params)}
    header = list(labels) + ["value"]
    return document, header, [list(labels.values()) + [document["value"]]]


# ------------------------------------------------------------
# Subcomandos
# ------------------------------------------------------------

def _cmd_qint(args, params) -> Document:
    value = quantum_int(args.n) if params is None else quantum_int_at(args.n, params)
    return _scalar_document("qint", {"n": args.n}, value, params)


def _cmd_delta(args, params) -> Document:
    value = delta_n(args.n) if params is None else delta_n_at(args.n, params)
    return _scalar_document("delta", {"n": args.n}, value, params)


def _cmd_theta(args, params) -> Document:
    value = theta_closed(args.a, args.b, args.c, params)
    return _scalar_document("theta", {"a": args.a, "b": args.b, "c": args.c}, value, params)


def _cmd_tet(args, params) -> Document:
    labels = {"a": args.a, "b": args.b, "i": args.i, "c": args.c, "d": args.d, "j": args.j}
    return _scalar_document("tet", labels, tet_closed(*labels.values(), params=params), params)


def _cmd_sixj(args, params) -> Document:
    labels = {"a": args.a, "b": args.b, "i": args.i, "c": args.c, "d": args.d, "k": args.k}
    return _scalar_document("sixj", labels, sixj(*labels.values(), params=params), params)


def _cmd_fmatrix(args, params) -> Document:
    if params is None:
        matrix = sixj_matrix(args.a, args.b, args.c, args.d)
        entries = [[_exact_json(v) for v in row] for row in matrix.entries]
        document = {**matrix.to_json(), "entries": entries, "kind": "sixj"}
    else:
        matrix = fmatrix(args.a, args.b, args.c, args.d, params)
        entries = matrix.entries.tolist()
        document = {**matrix.to_json(), "kind": "modified"}
    return document, ["row"] + list(matrix.cols), matrix_rows(matrix.rows, entries)


def _cmd_rphase(args, params) -> Document:
    matrix = rmatrix(args.a, args.b, params)
    phases = [p.value.to_json() if params is None else p.value for p in matrix.phases]
    document = {"a": args.a, "b": args.b, "r": params.r if params else None,
                "labels": matrix.labels, "phases": phases}
    return document, ["c", "phase"], [[c, v] for c, v in zip(matrix.labels, phases)]


def _cmd_basis(args, params) -> Document:
    basis = enumerate_basis(args.n, args.ell, args.t, params)
    document = {"n": args.n, "ell": args.ell, "t": args.t, "r": params.r if params else None,
                "dimension": len(basis), "basis": basis.to_json()}
    header = [f"x{k}" for k in range(1, args.n)]
    return document, header, [list(path.internals) for path in basis.paths]


def _cmd_compile(args, params) -> Document:
    word = parse_braid_word(args.word, args.n)
    basis = enumerate_basis(args.n, args.ell, args.t, params)
    if params is None:
        matrix = compile_braid_exact(basis, word)
        document = {"n": basis.n, "ell": basis.leaf_label, "t": basis.total, "r": None,
                    "word": list(word.letters), "basis": basis.to_json(),
                    "matrix": [[_exact_json(v) for v in row] for row in matrix]}
        rows = [[str(path.internals)] + [_exact_json(v) for v in row] for path, row in zip(basis.paths, matrix)]
    else:
        matrix = compile_braid(basis, word)
        document = {**matrix_to_json(basis, matrix), "word": list(word.letters)}
        rows = [[str(path.internals)] + list(row) for path, row in zip(basis.paths, matrix)]
    header = ["path"] + [str(path.internals) for path in basis.paths]
    return document, header, rows


def _cmd_bracket(args, params) -> Document:
    word = parse_braid_word(args.word, args.strands)
    result = braid_closure_bracket(word.letters, word.n)
    if params is None:
        values = {"raw": _exact_json(result.raw), "normalized": _exact_json(result.normalized),
                  "writhe_normalized": _exact_json(result.writhe_normalized)}
    else:
        values = {"raw": eval_at_root(result.raw, params),
                  "normalized": eval_at_root(result.normalized, params),
                  "writhe_normalized": eval_at_root(result.writhe_normalized, params)}
    document = {"word": list(word.letters), "strands": word.n, "writhe": result.writhe,
                "r": params.r if params else None, **values}
    return document, list(values), [list(values.values())]


def _cmd_check(args, params) -> Tuple[Document, bool]:
    runner = CheckRunner(tol=args.tol, max_label=args.max_label, max_strands=args.max_strands,
                         word_length=args.word_length)
    execution = runner.run(CheckSuite(args.suite), roots=[params.r] if params else None)
    runner.log_report(execution)
    rows = [[e.check, " ".join(str(x) for x in e.labels), e.deviation] for e in execution.entries]
    document = (execution.to_json(), ["check", "labels", "deviation"], rows)
    return document, execution.status == CheckStatus.FAILED


COMMANDS = {
    "qint": _cmd_qint,
    "delta": _cmd_delta,
    "theta": _cmd_theta,
    "tet": _cmd_tet,
    "sixj": _cmd_sixj,
    "fmatrix": _cmd_fmatrix,
    "rphase": _cmd_rphase,
    "basis": _cmd_basis,
    "compile": _cmd_compile,
    "bracket": _cmd_bracket,
}


def dispatch(args) -> Tuple[int, str]:
    """Executa o subcomando; devolve (código de saída, documento formatado)"""
    params = None
    if not args.generic:
        params = RootParams(args.r) if args.tol is None else RootParams(args.r, args.tol)

    violations = False
    if args.command == "check":
        (document, header, rows), violations = _cmd_check(args, params)
    else:
        document, header, rows = COMMANDS[args.command](args, params)

    output_format = args.format or settings.OUTPUT_FORMAT
    if output_format == "csv":
        text = dumps_csv(header, rows)
    else:
        text = dumps_json(document) + "\n"
    return (EXIT_VIOLATIONS if violations else EXIT_OK), text


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Função principal"""
    configure_logging(settings.LOG_LEVEL, settings.LOG_FILE)
    try:
        args = build_parser().parse_args(normalize_word_flags(sys.argv[1:] if argv is None else argv))
        code, text = dispatch(args)
    except (RecouplingError, ValueError) as e:
        logger.error(f"❌ Entrada inválida: {e}")
        return EXIT_INPUT_ERROR
    except Exception as e:
        logger.exception(f"❌ Erro interno (não é problema da entrada): {e}")
        return EXIT_INTERNAL_ERROR
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        sys.exit(EXIT_INPUT_ERROR)
