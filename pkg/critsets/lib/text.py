"""
Short, human-oriented string forms of types, values and ranges, used to build
error messages throughout the package.
"""

from __future__ import annotations
from inspect import isroutine
import sys
import types
import typing
from typing import Any, ForwardRef, Literal, Union, get_args, get_origin
from collections import abc

__all__ = [
    "BUILTINS_MODULE",
    "is_typing",
    "get_name",
    "fmt",
    "fmt_type",
    "fmt_type_hint",
    "fmt_range",
    "fmt_cells",
]

BUILTINS_MODULE = object.__module__
TYPING_MODULE = typing.__name__
LAMBDA_NAME = (lambda x: x).__name__


def is_typing(x: Any) -> bool:
    return bool(
        get_origin(x) or get_args(x) or type(x).__module__ == TYPING_MODULE
    )


def get_name(x: Any, *, module_names: bool = True) -> str | None:
    """
    ##### Examples #####

    ```python
    >>> get_name(str)
    'str'

    >>> get_name(get_name)
    'critsets.lib.text.get_name'

    >>> get_name(get_name, module_names=False)
    'get_name'

    ```
    """
    name = getattr(x, "__qualname__", None) or getattr(x, "__name__", None)
    if not isinstance(name, str):
        return None
    module_name = getattr(x, "__module__", None)
    if module_names and module_name and module_name != BUILTINS_MODULE:
        return f"{module_name}.{name}"
    return name


def fmt(x: Any, *, module_names: bool = True) -> str:
    """
    Format anything for an error message: type hints and classes by name,
    routines by name with a `()` suffix, everything else by `repr`.

    ##### Examples #####

    ```python
    >>> fmt(int)
    'int'

    >>> fmt(Union[int, str])
    'int | str'

    >>> fmt((1, 2))
    '(1, 2)'

    >>> fmt(len)
    'len()'

    ```
    """
    if is_typing(x):
        return fmt_type_hint(x, module_names=module_names)

    if isinstance(x, type):
        return fmt_type(x, module_names=module_names)

    if isroutine(x):
        if x.__name__ == LAMBDA_NAME:
            return "λ()"
        if name := get_name(x, module_names=module_names):
            return name + "()"

    return repr(x)


def fmt_type(t: type, *, module_names: bool = True) -> str:
    """
    ##### Examples #####

    ```python
    >>> fmt_type(abc.Collection)
    'collections.abc.Collection'

    >>> fmt_type(abc.Collection, module_names=False)
    'Collection'

    ```
    """
    if name := get_name(t, module_names=module_names):
        return name
    return repr(t)


def _nest(formatted: str, nested: bool) -> str:
    return f"({formatted})" if nested else formatted


def fmt_type_hint(
    t: Any, *, module_names: bool = True, nested: bool = False
) -> str:
    """
    ##### Examples #####

    ```python
    >>> fmt_type_hint(Union[int, str])
    'int | str'

    >>> fmt_type_hint(typing.Optional[int])
    'int?'

    >>> fmt_type_hint(tuple[int, int])
    '(int, int)'

    >>> fmt_type_hint(list[tuple[int, int]])
    '(int, int)[]'

    >>> fmt_type_hint(Literal["stdout", "stderr"])
    "'stdout' | 'stderr'"

    ```
    """
    if t is Ellipsis:
        return "..."

    if t is types.NoneType:
        return "None"

    if isinstance(t, ForwardRef):
        return t.__forward_arg__

    origin = get_origin(t)
    args = get_args(t)

    def sub(arg: Any, nest: bool = True) -> str:
        return fmt_type_hint(arg, module_names=module_names, nested=nest)

    if args == ():
        return fmt_type(origin or t, module_names=module_names)

    if origin is Union or origin is types.UnionType:
        if len(args) == 2 and types.NoneType in args:
            (other,) = (arg for arg in args if arg is not types.NoneType)
            return sub(other) + "?"
        return _nest(" | ".join(sub(arg) for arg in args), nested)

    if origin is Literal:
        return _nest(" | ".join(repr(arg) for arg in args), nested)

    if origin is dict:
        return "{" + sub(args[0]) + ": " + sub(args[1]) + "}"

    if origin is list:
        return sub(args[0]) + "[]"

    if origin is tuple:
        return "(" + ", ".join(sub(arg, False) for arg in args) + ")"

    if origin is abc.Callable:
        return _nest(
            "("
            + ", ".join(sub(arg, False) for arg in args[0])
            + ") -> "
            + sub(args[1], False),
            nested,
        )

    return repr(t)


def fmt_range(rng: range) -> str:
    """
    ##### Examples #####

    ```python
    >>> fmt_range(range(1, 3))
    '[1, 2]'

    >>> fmt_range(range(9, 18))
    '[9, 10, ..., 17]'

    >>> fmt_range(range(2, sys.maxsize))
    '[2, ...]'

    ```
    """
    if len(rng) <= 3:
        return str(list(rng))
    if rng.stop == sys.maxsize:
        return f"[{rng[0]}, ...]"
    return f"[{rng[0]}, {rng[1]}, ..., {rng[-1]}]"


def fmt_cells(cells: abc.Iterable[tuple[int, ...]]) -> str:
    """
    Format cells or triples the way they are written by hand.

    ##### Examples #####

    ```python
    >>> fmt_cells([(1, 2), (3, 4)])
    '{(1,2), (3,4)}'

    >>> fmt_cells([(2, 1, 0)])
    '{(2,1,0)}'

    >>> fmt_cells([])
    '∅'

    ```
    """
    parts = ["(" + ",".join(str(x) for x in cell) + ")" for cell in cells]
    if not parts:
        return "∅"
    return "{" + ", ".join(parts) + "}"
