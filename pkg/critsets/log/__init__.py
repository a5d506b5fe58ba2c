"""
Package logging: `SplatLogger` adapters that take keyword data, a
`RichHandler` that renders it, and verbosity-to-level mapping for the command
line.
"""

from critsets.log.levels import (
    CRITICAL,
    ERROR,
    WARNING,
    INFO,
    DEBUG,
    NOTSET,
    get_level_value,
)
from critsets.log.verbosity import (
    VerbosityLevelResolver,
    DEFAULT_VERBOSITY_LEVELS,
    get_verbosity,
    set_verbosity,
)
from critsets.log.splat_logger import (
    get_logger,
    get_logger_for,
    LoggerProperty,
    SplatLogger,
    ClassLogger,
    SelfLogger,
)
from critsets.log.rich_handler import RichHandler
from critsets.log.setup import ROOT_LOGGER_NAME, get_console_handler, setup
