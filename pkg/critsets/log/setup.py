from __future__ import annotations
import logging
from typing import Optional

from critsets.log.levels import get_level_value
from critsets.log.rich_handler import RichHandler
from critsets.log.verbosity import set_verbosity
from critsets.typings import Level, RichConsoleCastable, Verbosity

#: Root of the package logger hierarchy; every module logs under it.
ROOT_LOGGER_NAME = "critsets"

_console_handler: Optional[RichHandler] = None


def get_console_handler() -> Optional[RichHandler]:
    return _console_handler


def setup(
    *,
    level: Optional[Level] = None,
    verbosity: Optional[Verbosity] = None,
    console: RichConsoleCastable = None,
) -> logging.Logger:
    """
    Set up package logging. Installs a single `RichHandler` on the `critsets`
    logger (replacing one installed by an earlier call), then applies
    `verbosity` and finally `level`, so an explicit level wins.

    Returns the package logger.

    ##### Examples #####

    ```python
    >>> import io
    >>> logger = setup(verbosity=2, console=io.StringIO())
    >>> logger.level == logging.DEBUG
    True

    >>> logger = setup(level="warning", console=io.StringIO())
    >>> logger.level == logging.WARNING
    True
    >>> sum(isinstance(h, RichHandler) for h in logger.handlers)
    1

    ```
    """
    global _console_handler

    logger = logging.getLogger(ROOT_LOGGER_NAME)

    if _console_handler is not None:
        logger.removeHandler(_console_handler)

    _console_handler = RichHandler(console=console)
    logger.addHandler(_console_handler)

    if verbosity is not None:
        set_verbosity(verbosity, logger_name=ROOT_LOGGER_NAME)

    if level is not None:
        logger.setLevel(get_level_value(level))

    return logger
