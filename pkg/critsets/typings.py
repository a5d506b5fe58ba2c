from __future__ import annotations
import sys
from typing import IO, Literal, TypeGuard, Union, TYPE_CHECKING
from collections.abc import Sequence

from rich.console import Console

from critsets.lib.text import fmt

if TYPE_CHECKING:
    from critsets.log.verbosity import VerbosityLevelResolver

# Matrix Types
# ============================================================================
#
# Everything user-facing is 1-based, the way cells are written by hand: the
# top-left cell of a matrix is `(1, 1)`.
#

#: A cell position `(i, j)`, 1-based.
Cell = tuple[int, int]

#: A filled cell `(i, j, v)` with `v` in `{0, 1}`; the set-of-triples view of
#: a partial matrix.
Triple = tuple[int, int, int]

#: Row or column sums.
Sums = tuple[int, ...]

#: A permutation of `1..n` in one-line notation: position `k` (1-based) is
#: sent to `perm[k - 1]`.
Permutation = tuple[int, ...]

PermutationCastable = Union[None, Sequence[int]]


def is_permutation(x: object, n: int) -> TypeGuard[Permutation]:
    """
    ##### Examples #####

    ```python
    >>> is_permutation((2, 3, 1), 3)
    True

    >>> is_permutation((1, 1, 2), 3)
    False

    >>> is_permutation((1, 2), 3)
    False

    ```
    """
    return (
        isinstance(x, Sequence)
        and len(x) == n
        and sorted(x) == list(range(1, n + 1))
    )


# Level Types
# ============================================================================
#
# There is no typing of levels in the builtin `logging` module. This follows
# what the common type stubs do.
#

# The "actual" representation of a log level, per the built-in `logging`
# package.
LevelValue = int

LevelName = str

Level = Union[LevelValue, LevelName]

# Verbosity
# ============================================================================
#
# Representation of a common "verbose" flag, where the repetition is stored as
# a count:
#
# (no flag) -> 0
# -v        -> 1
# -vv       -> 2
#
Verbosity = int


def is_verbosity(x: object) -> TypeGuard[Verbosity]:
    """
    Test if a value is a _verbosity_.

    ##### Examples #####

    ```python
    >>> is_verbosity(0)
    True

    >>> is_verbosity(2)
    True

    >>> is_verbosity(-1)
    False

    >>> is_verbosity(True)
    False

    ```
    """
    return (
        isinstance(x, int)
        and not isinstance(x, bool)
        and x >= 0
        and x < sys.maxsize
    )


def as_verbosity(x: object) -> Verbosity:
    """
    Cast a value to a _verbosity_, raising `TypeError` if unsuccessful.

    ##### Examples #####

    ```python
    >>> as_verbosity(1)
    1

    >>> as_verbosity(-1)
    Traceback (most recent call last):
        ...
    TypeError: Expected verbosity to be non-negative integer less than
        `sys.maxsize`, given int: -1

    ```
    """
    if is_verbosity(x):
        return x
    raise TypeError(
        (
            "Expected verbosity to be non-negative integer less than "
            "`sys.maxsize`, given {}: {}"
        ).format(fmt(type(x)), fmt(x))
    )


#: A pairing of verbosity with the level it switches on.
VerbosityLevel = tuple[Verbosity, Level]

#: A range of verbosities mapped to a level value.
VerbosityRange = tuple[range, LevelValue]

VerbosityLevelsCastable = Union[
    "VerbosityLevelResolver", Sequence[VerbosityLevel]
]

# Rich
# ============================================================================

StdioName = Literal["stdout", "stderr"]

RichConsoleCastable = Union[None, Console, StdioName, IO[str]]

# JSON
# ============================================================================

JSONEncoderStyle = Literal["compact", "pretty"]


__all__ = [
    "Cell",
    "Triple",
    "Sums",
    "Permutation",
    "PermutationCastable",
    "is_permutation",
    "LevelValue",
    "LevelName",
    "Level",
    "Verbosity",
    "is_verbosity",
    "as_verbosity",
    "VerbosityLevel",
    "VerbosityRange",
    "VerbosityLevelsCastable",
    "StdioName",
    "RichConsoleCastable",
    "JSONEncoderStyle",
]

