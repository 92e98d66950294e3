from typing import Optional, Sequence, Tuple, Union


class ZxError(Exception):
    """Base class of every error raised by the verifier."""


class ParseError(ZxError):
    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None,
                 expected: Sequence[str] = ()):
        self.line = line
        self.column = column
        self.expected = tuple(sorted(expected))
        location = "" if line is None else f" at line {line}, column {column}"
        hint = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message}{location}{hint}")


def _extent(value: Union[int, Tuple[int, int]]) -> str:
    if isinstance(value, tuple):
        return f"a {value[0]}x{value[1]} matrix"
    return f"{value} wires"


class ArityMismatch(ZxError):
    """Wire counts that do not line up, or matrices of different shapes."""

    def __init__(self, expected: Union[int, Tuple[int, int]], actual: Union[int, Tuple[int, int]],
                 span: Optional[Tuple[int, int]] = None):
        self.expected = expected
        self.actual = actual
        self.span = span
        where = "" if span is None else f" at line {span[0]}, column {span[1]}"
        super().__init__(f"arity mismatch: {_extent(expected)} expected, {_extent(actual)} given{where}")


class UnboundVariable(ZxError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"no value bound to variable '{name}'")


class NonGroundDiagram(ZxError):
    pass


class NonLinearPhase(ZxError):
    pass


class ConstantsOutsidePi4(ZxError):
    pass


class UnexpectedVariable(ZxError):
    pass


class ExactUnavailable(ZxError):
    pass


class UnsupportedScale(ZxError):
    pass


class NoSuchPort(ZxError):
    pass


class NotSymmetric(ZxError):
    pass


class InconsistentVerdict(ZxError):
    pass
