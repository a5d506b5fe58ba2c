"""
Defines `SplatLogger` and associated classes, as well as the global "get"
functions `get_logger` and `get_logger_for` (they are interdependent, so they
live together).
"""

from __future__ import annotations
from inspect import isclass
import logging
from functools import cache
from types import GenericAlias, MappingProxyType
from typing import Callable, Optional, Type

from critsets.lib.collections import partition_mapping
from critsets.lib.text import fmt
from critsets.log.levels import get_level_value
from critsets.typings import Level, LevelValue

#: Unique sentinel object used by `LoggerProperty` to tell when a default
#: was returned.
_NOT_FOUND = object()

#: Keyword arguments that belong to `logging` itself; everything else given
#: to a log method is data.
_LOGGING_KWDS = frozenset(("exc_info", "extra", "stack_info", "stacklevel"))


@cache
def get_logger(name: str) -> SplatLogger:
    """
    The core logger-getter, equivalent to `logging.getLogger` but returning a
    `SplatLogger` adapter.

    ##### Examples #####

    ```python
    >>> log = get_logger("critsets.completion")
    >>> isinstance(log, logging.LoggerAdapter)
    True

    >>> get_logger("critsets.completion") is log
    True

    ```
    """
    return SplatLogger(logging.getLogger(name))


def get_logger_for(obj: object) -> SplatLogger:
    """
    Get a logger that is associated with an object.

    1.  A `str` gives a regular named logger, same as `get_logger`.

    2.  A class gives a `ClassLogger`, which adapts the logger of the module
        the class is defined in and tags records with the class name.

    3.  Anything else gives a `SelfLogger`, which also tags records with an
        identity for the instance (its `_critsets_self_` attribute, if any).

    Class and instance loggers are not cached; store them (see
    `LoggerProperty`).

    ##### Examples #####

    ```python
    >>> isinstance(get_logger_for(__name__), (ClassLogger, SelfLogger))
    False

    >>> class Sweep:
    ...     def __init__(self, n: int):
    ...         self.n = n
    ...
    ...     @property
    ...     def _critsets_self_(self) -> object:
    ...         return dict(n=self.n)

    >>> get_logger_for(Sweep).class_name
    'Sweep'

    >>> get_logger_for(Sweep(n=4)).get_identity()
    {'n': 4}

    ```
    """

    if isinstance(obj, str):
        return get_logger(obj)

    if isclass(obj):
        return ClassLogger(obj)

    return SelfLogger(obj)


class LoggerProperty:
    """
    A property that resolves to a `ClassLogger` when accessed through the
    class object and a `SelfLogger` when accessed through instances.

    The loggers are cached in an attribute of the owner's `__dict__`, which
    works for frozen dataclasses too.

    ##### Examples #####

    ```python
    >>> from dataclasses import dataclass

    >>> @dataclass(frozen=True)
    ... class Scan:
    ...     _log = LoggerProperty()
    ...
    ...     order: int
    ...
    ...     @property
    ...     def _critsets_self_(self) -> object:
    ...         return dict(order=self.order)

    >>> Scan._log.class_name
    'Scan'

    >>> scan = Scan(order=6)
    >>> isinstance(scan._log, SelfLogger)
    True
    >>> scan._log is scan._log
    True
    >>> scan._log.get_identity()
    {'order': 6}

    ```
    """

    _attr_name: Optional[str] = None

    @property
    def attr_name(self) -> Optional[str]:
        return self._attr_name

    def __set_name__(self, owner: Type[object], name: str) -> None:
        attr_name = f"_critsets_logger_{name}"
        if self._attr_name is None:
            self._attr_name = attr_name
        elif self._attr_name != attr_name:
            raise TypeError(
                f"Cannot assign the same {self.__class__.__name__} to two "
                f"different names ({self._attr_name!r} and {attr_name!r})"
            )

    def __get__(
        self, instance: Optional[object], owner: Optional[Type[object]] = None
    ) -> SplatLogger:
        if instance is None:
            if owner is None:
                raise TypeError(
                    "`owner` and `instance` arguments can not both be `None`"
                )
            return self.get_logger_from(owner)
        return self.get_logger_from(instance)

    __class_getitem__ = classmethod(GenericAlias)

    def get_logger_from(self, obj: object) -> SplatLogger:
        if attr_name := self._attr_name:
            # `getattr` would resolve the class attribute on instances
            logger = obj.__dict__.get(attr_name, _NOT_FOUND)
            if logger is _NOT_FOUND:
                logger = get_logger_for(obj)

                if isinstance(obj.__dict__, MappingProxyType):
                    # Class `__dict__` is read-only
                    setattr(obj, attr_name, logger)
                else:
                    # `setattr` fails on frozen dataclass instances
                    obj.__dict__[attr_name] = logger

            if not isinstance(logger, SplatLogger):
                raise TypeError(
                    "Expected {}.__dict__[{}] to be {}, found {}: {}".format(
                        fmt(obj),
                        fmt(self._attr_name),
                        fmt(SplatLogger),
                        fmt(type(logger)),
                        fmt(logger),
                    )
                )
            return logger
        raise TypeError(
            f"Cannot use {self.__class__.__name__} instance without "
            "calling __set_name__ on it."
        )


class SplatLogger(logging.LoggerAdapter):
    """\
    A `logging.LoggerAdapter` that treats the double-splat keyword arguments
    of log methods as a map of names to values to be logged.

    The map is added as `"data"` to the `extra` mapping, so it ends up as a
    `data` attribute on the emitted `logging.LogRecord`. This allows:

        log.debug(
            "Search finished",
            nodes=1204,
            completions=2,
        )
    """

    def process(self, msg, kwargs):
        new_kwargs, data = partition_mapping(kwargs, _LOGGING_KWDS)
        if extra := new_kwargs.get("extra"):
            extra["_critsets_"] = True
            extra["data"] = data
        else:
            new_kwargs["extra"] = {"_critsets_": True, "data": data}
        return msg, new_kwargs

    @property
    def level(self) -> LevelValue:
        return self.logger.level

    def setLevel(self, level: Level) -> None:
        super().setLevel(get_level_value(level))

    def getChild(self, suffix: str) -> SplatLogger:
        if self.logger.root is not self.logger:
            suffix = ".".join((self.logger.name, suffix))
        return get_logger(suffix)


class ClassLogger(SplatLogger):
    """
    Adapts the logger of the module a class is defined in and adds the
    qualified name of the class to processed records as `class_name`.
    """

    _class_name: str

    def __init__(self, cls: type[object]):
        super().__init__(logging.getLogger(cls.__module__))
        self._class_name = cls.__qualname__

    @property
    def class_name(self) -> str:
        return self._class_name

    def process(self, msg, kwargs):
        msg, new_kwargs = super().process(msg, kwargs)
        new_kwargs["extra"]["class_name"] = self._class_name
        return msg, new_kwargs


class SelfLogger(ClassLogger):
    """
    A `ClassLogger` for the type of `obj` that also adds a `self` attribute
    to processed records identifying `obj`.

    The identity is `obj._critsets_self_` when present (called on every record
    if it is callable), else `hex(id(obj))`.
    """

    get_identity: Callable[[], object]

    def __init__(self, obj: object):
        super().__init__(obj.__class__)

        self.set_identity(getattr(obj, "_critsets_self_", hex(id(obj))))

    def set_identity(self, identity):
        if isinstance(identity, Callable):
            self.get_identity = identity
        else:
            self.get_identity = lambda: identity

    def process(self, msg, kwargs):
        msg, new_kwargs = super().process(msg, kwargs)
        new_kwargs["extra"]["self"] = self.get_identity()
        return msg, new_kwargs
