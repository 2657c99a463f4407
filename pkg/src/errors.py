# src/errors.py
# Hierarquia de exceções do toolkit.

from numpy.linalg import LinAlgError


class IrkmError(Exception):
    """Base de todos os erros do toolkit."""


class DimensionMismatchError(IrkmError, ValueError):
    pass


class NotPositiveDefiniteError(IrkmError, LinAlgError):
    pass


class NonFiniteValueError(IrkmError, FloatingPointError):
    """Entradas inf ou NaN (tipicamente um kernel que estourou)."""


class ZeroReferenceError(IrkmError, ValueError):
    pass


class NonnegViolationError(IrkmError, ValueError):
    pass


class IndexOutOfRangeError(IrkmError, IndexError):
    pass


class AlphaOutOfRangeError(IrkmError, ValueError):
    pass


class ConfigError(IrkmError, ValueError):
    """Configuração inválida; `key` nomeia a chave culpada."""

    def __init__(self, key, message):
        self.key = key
        super().__init__(f"{key}: {message}")


class EmptyDataSourceError(IrkmError, ValueError):
    pass


class TooManyTermsError(IrkmError, ValueError):
    pass


class NegativeDegreeError(IrkmError, ValueError):
    pass


class UnsupportedPError(IrkmError, ValueError):
    pass


class ParseError(IrkmError, ValueError):
    """Erro de leitura com localização (offset em bytes, ou linha/coluna)."""

    def __init__(self, message, offset=None, row=None, column=None):
        self.offset = offset
        self.row = row
        self.column = column
        where = []
        if offset is not None:
            where.append(f"offset {offset}")
        if row is not None:
            where.append(f"linha {row}")
        if column is not None:
            where.append(f"coluna '{column}'")
        suffix = f" ({', '.join(where)})" if where else ""
        super().__init__(f"{message}{suffix}")


class DuplicateVariableError(ParseError):
    pass


class MissingColumnError(IrkmError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "coluna ausente"


class DataFileNotFoundError(IrkmError, FileNotFoundError):
    pass
