from typing import Optional


# base for everything this package raises on purpose
class TropoError(Exception): pass

# raised when vectors or matrices have the wrong shape
class DimensionError(TropoError, ValueError): pass

class ParseError(TropoError, ValueError):
    """Raised when input text cannot be read

    Attributes:
        line: 1-based line of the offending input, if known.
        column: 1-based column, if known.
    """
    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + where)
