import json
from typing import Optional, TypeVar, IO, Union
from collections.abc import Iterable, Callable, Mapping

from critsets.lib import each
from critsets.lib.text import fmt, fmt_type
from critsets.typings import JSONEncoderStyle

from .default_handlers import ALL_HANDLERS, DefaultHandler

__all__ = ["JSONEncoder", "JSONEncoderCastable"]

Self = TypeVar("Self", bound="JSONEncoder")

JSONEncoderCastable = Union[None, "JSONEncoder", JSONEncoderStyle, Mapping]


class JSONEncoder(json.JSONEncoder):
    """
    An extension of `json.JSONEncoder` for the values this package produces:
    matrices, numpy arrays and scalars, sets of cells, dataclass reports and
    errors.

    ##### Usage #####

    ```python
    >>> from sys import stdout

    >>> encoder = JSONEncoder()

    >>> encoder.dump(dict(n=4, members=90), stdout)
    {"n": 4, "members": 90}

    >>> encoder.encode(dict(n=4))
    '{"n": 4}'

    ```

    `JSONEncoder.compact` gives single-line output for machines,
    `JSONEncoder.pretty` indents for humans.

    ```python
    >>> JSONEncoder.compact().dump(dict(sizes=[9, 10, 11]), stdout)
    {"sizes":[9,10,11]}

    >>> JSONEncoder.pretty().dump(dict(n=2), stdout)
    {
        "n": 2
    }

    ```

    ##### Extended Encoding #####

    Handlers are tried in priority order; the first one that matches wins.

    Objects with a `to_json_encodable` method are encoded through it.

    ```python
    >>> class Walk:
    ...     def __init__(self, depths):
    ...         self.depths = depths
    ...
    ...     def to_json_encodable(self):
    ...         return dict(depths=self.depths)

    >>> encoder.dump(Walk((0, 1, 2)), stdout)
    {"depths": [0, 1, 2]}

    ```

    numpy values become plain numbers and nested lists.

    ```python
    >>> import numpy as np

    >>> encoder.dump(np.int64(14), stdout)
    14

    >>> encoder.dump(np.array([[1, 0], [0, 1]], dtype=np.int8), stdout)
    [[1, 0], [0, 1]]

    ```

    Sets, most often sets of cells, are emitted as sorted arrays.

    ```python
    >>> encoder.dump(frozenset({(2, 1), (1, 2), (1, 1)}), stdout)
    [[1, 1], [1, 2], [2, 1]]

    ```

    Dataclasses go through `dataclasses.asdict`, classes and enums are
    encoded by name.

    ```python
    >>> import dataclasses

    >>> @dataclasses.dataclass
    ... class Report:
    ...     n: int
    ...     scs: int

    >>> encoder.dump(Report(n=4, scs=4), stdout)
    {"n": 4, "scs": 4}

    >>> encoder.dump(str, stdout)
    "str"

    ```

    Exceptions give their type and message, plus traceback and cause when
    they have them.

    ```python
    >>> JSONEncoder.pretty().dump(ValueError("row sums exceed 3"), stdout)
    {
        "type": "ValueError",
        "msg": "row sums exceed 3"
    }

    ```

    Anything else falls back to class and `repr`.

    ```python
    >>> encoder.dump(lambda x: x, stdout)
    {"__class__": "function", "__repr__": "<function <lambda> at ...>"}

    ```
    """

    COMPACT_KWDS = dict(indent=None, separators=(",", ":"))
    PRETTY_KWDS = dict(indent=4)

    @classmethod
    def compact(cls: type[Self], **kwds) -> Self:
        return cls(**cls.COMPACT_KWDS, **kwds)

    @classmethod
    def pretty(cls: type[Self], **kwds) -> Self:
        return cls(**cls.PRETTY_KWDS, **kwds)

    @classmethod
    def cast(cls: type[Self], value: JSONEncoderCastable) -> Self:
        """
        ##### Examples #####

        ```python
        >>> JSONEncoder.cast("pretty").indent
        4

        >>> JSONEncoder.cast("loud")
        Traceback (most recent call last):
            ...
        ValueError: Only strings 'compact' and 'pretty' are recognized;
            given 'loud'

        ```
        """
        if isinstance(value, cls):
            return value

        if value is None:
            return cls.compact()

        if isinstance(value, str):
            if value == "compact":
                return cls.compact()
            elif value == "pretty":
                return cls.pretty()
            else:
                raise ValueError(
                    (
                        "Only strings 'compact' and 'pretty' are recognized; "
                        "given {!r}"
                    ).format(value)
                )

        if isinstance(value, Mapping):
            return cls(**value)

        raise TypeError(
            "Expected {}, given {}: {}".format(
                fmt(Union[cls, str, Mapping]), fmt(type(value)), fmt(value)
            )
        )

    _handlers: Optional[list[DefaultHandler]] = None

    def __init__(
        self,
        *,
        handlers: Union[None, DefaultHandler, Iterable[DefaultHandler]] = None,
        default: None = None,
        **kwds,
    ):
        if default is not None:
            raise TypeError(
                f"{fmt_type(JSONEncoder)} does not support `default` "
                + f"argument (`default` must be `None`), given {default!r}"
            )

        super().__init__(**kwds)

        if handlers is not None:
            self.add_handlers(handlers)

    def default(self, obj):
        for handler in self.get_handlers():
            if handler.is_match(obj):
                try:
                    return handler.handle(obj)
                except Exception as error:
                    raise TypeError(
                        f"Encoding handler {handler.name} raised"
                    ) from error

        return super().default(obj)

    def dump(self, obj, fp: IO) -> None:
        for chunk in self.iterencode(obj):
            fp.write(chunk)

    def get_handlers(self) -> tuple[DefaultHandler, ...]:
        if self._handlers is None:
            return ALL_HANDLERS
        return tuple(self._handlers)

    def add_handlers(self, handlers) -> None:
        if self._handlers is None:
            self._handlers = list(ALL_HANDLERS)

        self._handlers.extend(each(handlers))

        self._handlers.sort()

    def remove_handlers(
        self, match: Callable[[DefaultHandler], bool]
    ) -> tuple[DefaultHandler, ...]:
        if self._handlers is None:
            self._handlers = list(ALL_HANDLERS)

        matches = tuple(h for h in self._handlers if match(h))

        for h in matches:
            self._handlers.remove(h)

        return matches
