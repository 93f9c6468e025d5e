"""Exception types raised on bad input."""


class InputError(ValueError):
    """Malformed user input (files, words, expressions)."""


class GraphFormatError(InputError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


class WordError(InputError):
    """A groupoid word that is malformed or not composable."""


class ExprSyntaxError(InputError):
    def __init__(self, message: str, position: int):
        super().__init__(f"at position {position}: {message}")
        self.position = position


class HomFormatError(InputError):
    def __init__(self, message: str, line: int = 0):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


class DomainError(ValueError):
    """A partial map applied outside its domain."""


class DeadDegreeError(ArithmeticError):
    """A nonzero coefficient landed on a degree outside S."""
