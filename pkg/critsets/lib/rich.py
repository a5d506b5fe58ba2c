"""
Helpers for working with [rich][]: the shared theme, value rendering and the
name / type / value table used for log data and reports.

[rich]: https://pypi.org/project/rich/
"""

from __future__ import annotations
from inspect import isclass
from typing import Any, Optional, TypeGuard, Union, cast
from collections.abc import Iterable, Mapping

from rich.console import Console, ConsoleRenderable, RenderableType, RichCast
from rich.highlighter import ReprHighlighter
from rich.pretty import Pretty
from rich.style import Style
from rich.table import Column, Table
from rich.text import Text
from rich.theme import Theme

from critsets.lib.text import fmt_type

__all__ = [
    "THEME",
    "Rich",
    "is_rich",
    "enrich",
    "enrich_type_of",
    "ntv_table",
    "capture_riches",
]

THEME = Theme(
    {
        "log.level": Style(bold=True),
        "log.name": Style(color="blue", dim=True),
        "log.class": Style(color="yellow", dim=True),
        "log.funcName": Style(color="cyan", dim=True),
        "log.label": Style(color="white", dim=True),
        "log.data.name": Style(color="blue", italic=True),
        "log.data.type": Style(color="#4ec9b0", italic=True),
        "matrix.one": Style(color="white"),
        "matrix.zero": Style(color="white", dim=True),
        "matrix.empty": Style(color="bright_black"),
        "matrix.marked": Style(color="magenta", bold=True, italic=True),
        "report.label": Style(color="blue"),
        "report.value": Style(bold=True),
    }
)

# An object that "is Rich".
Rich = Union[ConsoleRenderable, RichCast]

REPR_HIGHLIGHTER = ReprHighlighter()


def is_rich(x: object) -> TypeGuard[Rich]:
    """
    Is an object "rich"? That is, does it render itself with rich?

    ##### Examples #####

    ```python
    >>> is_rich(Text("hey"))
    True

    >>> is_rich("hey")
    False

    ```
    """
    return isinstance(x, (ConsoleRenderable, RichCast)) and not isclass(x)


def repr_highlight(value: object) -> Text:
    text = Text(repr(value), end="")
    REPR_HIGHLIGHTER.highlight(text)
    return text


def enrich_type_of(value: object) -> RenderableType:
    return Text(
        fmt_type(type(value), module_names=False), style="log.data.type"
    )


def enrich(value: object) -> RenderableType:
    if is_rich(value):
        return value

    if isinstance(value, str):
        if all(c.isprintable() or c.isspace() for c in value):
            return value
        return repr_highlight(value)

    if isclass(value):
        return Text(fmt_type(value), style="log.data.type")

    return Pretty(value)


#: A collection of name/value associations, as either a `Mapping` of
#: `{str: object}` or an `Iterable` of `(str, object)` pairs.
TableSource = Union[Mapping[str, object], Iterable[tuple[str, object]]]


def ntv_table(
    source: TableSource,
    *headers: Union[Column, str],
    show_header: bool = False,
    sort: bool = False,
    **kwds,
) -> Table:
    """
    Create a `rich.table.Table` with (name, type, value) columns from a
    `TableSource`.

    ##### Examples #####

    ```python
    >>> out = capture_riches(ntv_table({"n": 6, "x": 3, "fixture": "fig1"}))
    >>> [line.split() for line in out.splitlines()]
    [['n', 'int', '6'], ['x', 'int', '3'], ['fixture', 'str', 'fig1']]

    ```
    """
    table = Table(
        *headers,
        box=None,
        padding=(0, 1),
        collapse_padding=True,
        show_header=show_header,
        show_edge=False,
        pad_edge=False,
        **kwds,
    )
    if len(headers) == 0:
        table.add_column("Name", style=THEME.styles["log.data.name"])
        table.add_column("Type", max_width=40)
        table.add_column("Value")

    items = (
        cast(Iterable[tuple[str, object]], source.items())
        if isinstance(source, Mapping)
        else source
    )

    if sort:
        items = sorted(items)

    for key, value in items:
        if is_rich(value):
            table.add_row(key, None, value)
        else:
            table.add_row(key, enrich_type_of(value), enrich(value))
    return table


def capture_riches(
    *objects: Any, console: Optional[Console] = None, **print_kwds
) -> str:
    """Print `objects` to a capturing console and return the plain text."""
    if console is None:
        console = Console(theme=THEME, width=100, color_system=None)
    with console.capture() as capture:
        console.print(*objects, **print_kwds)
    return capture.get()
