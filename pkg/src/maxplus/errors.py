class MaxPlusError(ValueError):
    """Base class for precondition violations raised by this package."""


class DimensionError(MaxPlusError):
    pass


class DomainError(MaxPlusError):
    """An input lies outside an operation's domain (acyclic, null, non-finite...)."""


class BudgetExceeded(MaxPlusError):
    pass


class ParseError(MaxPlusError):
    def __init__(self, message, line=None, column=None, source=None):
        self.line = line
        self.column = column
        self.source = source
        where = []
        if source:
            where.append(str(source))
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        prefix = ":".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)
