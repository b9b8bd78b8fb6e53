"""Shared exception types."""


class CapExceededError(ValueError):
    """A requested arity or order exceeds the configured cap."""

    def __init__(self, what: str, requested: int, cap: int):
        super().__init__(f"{what} {requested} exceeds the configured cap {cap}")
        self.what = what
        self.requested = requested
        self.cap = cap


class MemoryBudgetError(RuntimeError):
    """A computation would exceed the configured memory budget."""

    def __init__(self, needed_bytes: int, budget_bytes: int):
        super().__init__(
            f"computation needs about {needed_bytes} bytes, "
            f"budget is {budget_bytes} bytes"
        )
        self.needed_bytes = needed_bytes
        self.budget_bytes = budget_bytes


class ParseError(ValueError):
    """Syntax error in a presentation or series expression."""

    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text[pos:pos + 12]!r}")
        self.text = text
        self.pos = pos
