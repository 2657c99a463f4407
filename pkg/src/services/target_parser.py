# src/services/target_parser.py
# Leitura do formato texto de polinômios: "2*x1*x2 - x3 + 0.5".
#
#   expr := ["+"|"-"] term (("+"|"-") term)*
#   term := number | [number "*"] var ("*" var)*
#   var  := "x" digits
#
# Espaços são ignorados; offsets de erro são em bytes do texto original.

import re
from typing import Optional

from src.errors import DuplicateVariableError, ParseError
from src.models.polynomial import FourierPolynomial

_TOKEN = re.compile(r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<var>x\d+)|(?P<op>[+\-*]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    raw = text.encode("utf-8")
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN.match(text, pos)
        if match is None:
            offset = len(text[:pos].encode("utf-8")) + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"caractere inesperado '{text[pos:].lstrip()[:1]}'", offset=offset)
        kind = match.lastgroup
        start = len(text[:match.start(kind)].encode("utf-8"))
        tokens.append((kind, match.group(kind), start))
        pos = match.end()
    tokens.append(("end", "", len(raw)))
    return tokens


def parse_target(text: str, d: Optional[int] = None) -> FourierPolynomial:
    """
    Converte o texto em FourierPolynomial. Sem `d`, a dimensão é o maior
    índice de variável usado (ou 1).
    """
    tokens = _tokenize(text)
    pos = 0
    terms: list[tuple[tuple[int, ...], float]] = []

    def peek():
        return tokens[pos]

    sign = 1.0
    if peek()[0] == "op" and peek()[1] in "+-":
        sign = -1.0 if peek()[1] == "-" else 1.0
        pos += 1

    while True:
        kind, value, offset = peek()
        coef = 1.0
        variables: list[int] = []
        seen_offsets: dict[int, int] = {}
        if kind == "num":
            coef = float(value)
            pos += 1
            if peek()[0] == "op" and peek()[1] == "*":
                pos += 1
                kind, value, offset = peek()
                if kind != "var":
                    raise ParseError("variável esperada após '*'", offset=offset)
            else:
                kind = None
        elif kind != "var":
            raise ParseError("termo esperado", offset=offset)

        while kind == "var":
            index = int(value[1:])
            if index < 1:
                raise ParseError(f"índice de variável inválido '{value}'", offset=offset)
            if index in seen_offsets:
                raise DuplicateVariableError(f"variável '{value}' repetida no termo (só multilinear)", offset=offset)
            seen_offsets[index] = offset
            variables.append(index)
            pos += 1
            if peek()[0] == "op" and peek()[1] == "*":
                pos += 1
                kind, value, offset = peek()
                if kind != "var":
                    raise ParseError("variável esperada após '*'", offset=offset)
            else:
                kind = None

        terms.append((tuple(variables), sign * coef))

        kind, value, offset = peek()
        if kind == "end":
            break
        if kind == "op" and value in "+-":
            sign = -1.0 if value == "-" else 1.0
            pos += 1
            continue
        raise ParseError(f"'+' ou '-' esperado, encontrado '{value}'", offset=offset)

    max_index = max((i for vars_, _ in terms for i in vars_), default=1)
    if d is not None and max_index > d:
        raise ParseError(f"variável x{max_index} excede a dimensão d={d}", offset=0)
    return FourierPolynomial.from_terms(d or max_index, terms)
