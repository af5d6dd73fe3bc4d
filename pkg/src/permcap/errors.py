"""Shared exception types."""


class BudgetError(RuntimeError):
    """An operation was asked to exceed its configured size, node, or time budget."""


class GraphSpecParseError(ValueError):
    """A graph spec-string failed to parse; carries the offending position."""

    def __init__(self, text: str, position: int, message: str):
        self.text = text
        self.position = position
        super().__init__(f"{message} (in {text!r} at position {position})")
