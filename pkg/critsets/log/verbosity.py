"""
Map a _verbosity_ (the count of `-v` flags on the command line) to logger
levels. The current verbosity is process-global state.
"""

from __future__ import annotations
from itertools import pairwise
import logging
import sys
from typing import Optional, TypeVar, Union
from collections.abc import Iterable

from critsets.lib.text import fmt, fmt_range
from critsets.log.levels import NOTSET, get_level_value
from critsets.typings import (
    LevelValue,
    Verbosity,
    VerbosityLevel,
    VerbosityRange,
    as_verbosity,
)

__all__ = [
    "VerbosityLevelResolver",
    "DEFAULT_VERBOSITY_LEVELS",
    "get_verbosity",
    "set_verbosity",
]

Self = TypeVar("Self", bound="VerbosityLevelResolver")


class VerbosityLevelResolver:
    """Resolves a `Verbosity` to a `LevelValue` against a set of
    `VerbosityLevel` pairs. Instances are immutable (via public API).

    ##### Examples #####

    ```python
    >>> resolver = VerbosityLevelResolver(
    ...     (
    ...         (0, "WARNING"),
    ...         (1, "INFO"),
    ...         (2, "DEBUG"),
    ...     )
    ... )

    >>> resolver.ranges
    ((range(0, 1), 30), (range(1, 2), 20), (range(2, ...), 10))

    >>> resolver.get_level(0) == logging.WARNING
    True
    >>> resolver.get_level(5) == logging.DEBUG
    True

    >>> resolver
    <VerbosityLevelResolver [0]: WARNING, [1]: INFO, [2, ...]: DEBUG>

    ```
    """

    @staticmethod
    def compute_verbosity_ranges(
        verbosity_levels: Iterable[VerbosityLevel],
    ) -> tuple[VerbosityRange, ...]:
        levels = [
            (as_verbosity(v), get_level_value(l)) for v, l in verbosity_levels
        ]

        # Upper cap; the level paired with it is never used
        levels.append((sys.maxsize, NOTSET))

        levels.sort(key=lambda vl: vl[0])

        return tuple(
            (range(v_1, v_2), l_1) for (v_1, l_1), (v_2, _) in pairwise(levels)
        )

    @classmethod
    def cast(
        cls: type[Self],
        value: Union[Iterable[VerbosityLevel], Self],
    ) -> Self:
        if isinstance(value, cls):
            return value
        if isinstance(value, Iterable):
            return cls(value)
        raise TypeError(
            "Expected {} or Iterable[VerbosityLevel], given {}: {}".format(
                fmt(cls), fmt(type(value)), fmt(value)
            )
        )

    _levels: tuple[VerbosityLevel, ...]
    _ranges: tuple[VerbosityRange, ...]

    def __init__(self, levels: Iterable[VerbosityLevel]):
        self._levels = tuple(levels)
        self._ranges = VerbosityLevelResolver.compute_verbosity_ranges(
            self._levels
        )

    def __repr__(self) -> str:
        return "<{name} {mapping}>".format(
            name=self.__class__.__qualname__,
            mapping=", ".join(
                "{}: {}".format(fmt_range(rng), logging.getLevelName(level))
                for rng, level in self._ranges
            ),
        )

    __str__ = __repr__

    @property
    def levels(self) -> tuple[VerbosityLevel, ...]:
        return self._levels

    @property
    def ranges(self) -> tuple[VerbosityRange, ...]:
        return self._ranges

    def get_level(self, verbosity: Verbosity) -> LevelValue:
        for rng, level in self._ranges:
            if verbosity in rng:
                return level
        return NOTSET


#: The package logger is quiet unless asked: warnings only, `-v` adds search
#: summaries, `-vv` adds per-search node counts.
DEFAULT_VERBOSITY_LEVELS = VerbosityLevelResolver(
    (
        (0, "WARNING"),
        (1, "INFO"),
        (2, "DEBUG"),
    )
)

_verbosity: Optional[Verbosity] = None


def get_verbosity() -> Optional[Verbosity]:
    return _verbosity


def set_verbosity(
    verbosity: Verbosity,
    *,
    logger_name: str = "critsets",
    levels: Union[
        VerbosityLevelResolver, Iterable[VerbosityLevel]
    ] = DEFAULT_VERBOSITY_LEVELS,
) -> LevelValue:
    """
    Set the global verbosity and the level of the `logger_name` logger to
    match. Returns the level that was set.

    ##### Examples #####

    ```python
    >>> set_verbosity(1, logger_name="critsets.doctest") == logging.INFO
    True

    >>> logging.getLogger("critsets.doctest").level
    20

    >>> get_verbosity()
    1

    ```
    """
    global _verbosity
    _verbosity = as_verbosity(verbosity)
    level = VerbosityLevelResolver.cast(levels).get_level(_verbosity)
    logging.getLogger(logger_name).setLevel(level)
    return level
