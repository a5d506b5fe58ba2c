"""
Exceptions raised by `critsets`. Everything derives from `CritSetsError`, so
callers (the command line in particular) can catch the package's failures
without catching programming errors.

Errors about bad input matrices also derive from `ValueError`.
"""

from __future__ import annotations
from typing import Optional


class CritSetsError(Exception):
    """Base of every error raised on purpose by `critsets`."""


class MatrixError(CritSetsError, ValueError):
    """
    Shapes or margins that do not fit together, values outside of
    `{0, 1, EMPTY}`, bad permutations and failed containment checks.
    """


class ParseError(MatrixError):
    """
    Malformed text or JSON input.

    ##### Examples #####

    ```python
    >>> str(ParseError("unexpected character 'x'", line=3))
    "line 3: unexpected character 'x'"

    >>> str(ParseError("empty input"))
    'empty input'

    ```
    """

    line: Optional[int]

    def __init__(self, message: str, *, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CompletionError(CritSetsError):
    """A partial matrix does not have exactly one completion."""


class NoCompletion(CompletionError):
    pass


class AmbiguousCompletion(CompletionError):
    """
    At least `count` completions exist (counting stopped there).
    """

    count: int

    def __init__(self, count: int):
        self.count = count
        super().__init__(f"partial matrix has at least {count} completions")


class BudgetExhausted(CritSetsError):
    """
    A completion search visited more nodes than allowed. Raised instead of
    returning a count that might be wrong.
    """

    node_cap: int
    nodes: int

    def __init__(self, node_cap: int, nodes: int):
        self.node_cap = node_cap
        self.nodes = nodes
        super().__init__(
            f"search budget exhausted after {nodes} nodes (cap {node_cap})"
        )


class TradeError(MatrixError):
    """A trade, its mate or a cycle does not satisfy its invariants."""


class WalkError(MatrixError):
    """Walk points or depths that do not describe a South-East walk."""


class BudgetError(CritSetsError, ValueError):
    """A completion budget with a count limit or node cap below 1."""


class GuardExceeded(CritSetsError, ValueError):
    """
    An exhaustive computation was asked for at a size it can not finish at.
    """

    def __init__(self, what: str, order: int, max_order: int):
        self.what = what
        self.order = order
        self.max_order = max_order
        super().__init__(
            f"{what} supports order at most {max_order}, given {order}"
        )


class CertificateError(CritSetsError):
    """A certificate is missing or does not verify."""
