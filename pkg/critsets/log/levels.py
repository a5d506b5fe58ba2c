"""
Log levels as the command line spells them: `--log-level debug`,
`--log-level 15`, or the `logging` constants re-exported here.
"""

import logging

from critsets.lib.text import fmt
from critsets.typings import Level, LevelValue

CRITICAL = logging.CRITICAL
ERROR = logging.ERROR
WARNING = logging.WARNING
INFO = logging.INFO
DEBUG = logging.DEBUG
NOTSET = logging.NOTSET


def get_level_value(level: Level) -> LevelValue:
    """
    The `logging` level number for an `int`, a digit string or a level name
    in any case.

    ##### Examples #####

    ```python
    >>> get_level_value(DEBUG), get_level_value(15)
    (10, 15)

    >>> get_level_value("15"), get_level_value("info"), get_level_value("Warning")
    (15, 20, 30)

    >>> get_level_value("chatty")
    Traceback (most recent call last):
        ...
    TypeError: Expected a level name, given 'chatty'

    >>> get_level_value(None)
    Traceback (most recent call last):
        ...
    TypeError: Expected `int | str` level, given `NoneType`: None

    ```
    """
    if isinstance(level, int):
        return level

    if not isinstance(level, str):
        raise TypeError(
            "Expected `{}` level, given `{}`: {}".format(
                fmt(Level), fmt(type(level)), fmt(level)
            )
        )

    if level.isdigit():
        return int(level)

    # `getLevelName` maps names to numbers, and unknown names to strings
    value = logging.getLevelName(level.upper())
    if not isinstance(value, int):
        raise TypeError(f"Expected a level name, given {fmt(level)}")
    return value
