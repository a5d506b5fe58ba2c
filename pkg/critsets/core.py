"""
Partial (0,1)-matrices with prescribed margins.

A `PartialMatrix` is a dense grid of `ONE`, `ZERO` and `EMPTY` entries
together with the row and column sums (`MarginSpec`) it is meant to be
completed to. Everything user-facing is 1-based: the top-left cell is
`(1, 1)`.

##### Examples #####

```python
>>> M = parse(
...     '''
...     R=1,1 S=1,1
...     10
...     01
...     '''
... )
>>> M
<PartialMatrix 2x2 size=4 R=(1, 1) S=(1, 1)>
>>> M[1, 1], M[1, 2]
(1, 0)
>>> validate(M), is_complete(M)
(True, True)

>>> D = M.restricted_to([(1, 1)])
>>> print(D)
1.
..
>>> subset_of(D, M)
True

```
"""

from __future__ import annotations
from collections import Counter
from dataclasses import dataclass
from enum import IntEnum
import json
from typing import Any, Iterable, Iterator, Optional, Sequence, Union

import numpy as np
from rich.console import Console, ConsoleOptions, RenderResult
from rich.table import Table
from rich.text import Text

from critsets.errors import MatrixError, ParseError
from critsets.lib.text import fmt
from critsets.typings import (
    Cell,
    Permutation,
    PermutationCastable,
    Sums,
    Triple,
    is_permutation,
)

__all__ = [
    "Entry",
    "ZERO",
    "ONE",
    "EMPTY",
    "MarginSpec",
    "ClassSpec",
    "PartialMatrix",
    "validate",
    "is_complete",
    "subset_of",
    "permute",
    "identity",
    "as_permutation",
    "invert",
    "parse",
    "parse_text",
    "parse_json",
    "serialize",
    "serialize_json",
    "render",
]


class Entry(IntEnum):
    """The three states of a cell. `EMPTY` renders as `.`."""

    ZERO = 0
    ONE = 1
    EMPTY = -1

    @property
    def char(self) -> str:
        return _ENTRY_CHARS[self]


ZERO = Entry.ZERO
ONE = Entry.ONE
EMPTY = Entry.EMPTY

_ENTRY_CHARS = {ZERO: "0", ONE: "1", EMPTY: "."}
_CHAR_ENTRIES = {c: e for e, c in _ENTRY_CHARS.items()}

GRID_DTYPE = np.int8


def _as_sums(name: str, values: Iterable[int]) -> Sums:
    sums = tuple(int(v) for v in values)
    if any(v < 0 for v in sums):
        raise MatrixError(
            f"Expected {name} to be non-negative, given {fmt(sums)}"
        )
    return sums


def _fmt_sums(sums: Sums) -> str:
    return ",".join(str(v) for v in sums)


@dataclass(frozen=True)
class MarginSpec:
    """
    Row sums `R` and column sums `S` of the class `A(R,S)`.

    ##### Examples #####

    ```python
    >>> spec = MarginSpec.uniform(4, 1)
    >>> spec.rows, spec.cols, spec.total
    (4, 4, 4)

    >>> spec.complement()
    MarginSpec(row_sums=(3, 3, 3, 3), col_sums=(3, 3, 3, 3))

    >>> MarginSpec((2, 1), (1, 1))
    Traceback (most recent call last):
        ...
    critsets.errors.MatrixError: Row sums total 3 but column sums total 2

    >>> MarginSpec((3,), (2, 1))
    Traceback (most recent call last):
        ...
    critsets.errors.MatrixError: Row sum 3 exceeds the column count 2

    ```
    """

    row_sums: Sums
    col_sums: Sums

    @classmethod
    def uniform(cls, n: int, x: int) -> MarginSpec:
        return cls((x,) * n, (x,) * n)

    @classmethod
    def parse_header(cls, line: str) -> MarginSpec:
        """
        ##### Examples #####

        ```python
        >>> MarginSpec.parse_header("R=2,1 S=1,1,1")
        MarginSpec(row_sums=(2, 1), col_sums=(1, 1, 1))

        >>> MarginSpec.parse_header("rows 2,1")
        Traceback (most recent call last):
            ...
        critsets.errors.ParseError: line 1: Expected margin header
            `R=<ints> S=<ints>`, given 'rows 2,1'

        ```
        """
        fields = dict(
            part.split("=", 1) for part in line.split() if "=" in part
        )
        if set(fields) != {"R", "S"}:
            raise ParseError(
                "Expected margin header `R=<ints> S=<ints>`, given {}".format(
                    fmt(line)
                ),
                line=1,
            )
        try:
            return cls(
                tuple(int(v) for v in fields["R"].split(",") if v),
                tuple(int(v) for v in fields["S"].split(",") if v),
            )
        except ValueError as error:
            raise ParseError(str(error), line=1) from error

    def __post_init__(self) -> None:
        row_sums = _as_sums("row sums", self.row_sums)
        col_sums = _as_sums("column sums", self.col_sums)
        object.__setattr__(self, "row_sums", row_sums)
        object.__setattr__(self, "col_sums", col_sums)

        if sum(row_sums) != sum(col_sums):
            raise MatrixError(
                f"Row sums total {sum(row_sums)} but column sums total "
                f"{sum(col_sums)}"
            )
        for r in row_sums:
            if r > len(col_sums):
                raise MatrixError(
                    f"Row sum {r} exceeds the column count {len(col_sums)}"
                )
        for s in col_sums:
            if s > len(row_sums):
                raise MatrixError(
                    f"Column sum {s} exceeds the row count {len(row_sums)}"
                )

    @property
    def rows(self) -> int:
        return len(self.row_sums)

    @property
    def cols(self) -> int:
        return len(self.col_sums)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def total(self) -> int:
        return sum(self.row_sums)

    @property
    def is_uniform(self) -> bool:
        return (
            self.rows == self.cols
            and len(set(self.row_sums) | set(self.col_sums)) <= 1
        )

    def transpose(self) -> MarginSpec:
        return MarginSpec(self.col_sums, self.row_sums)

    def complement(self) -> MarginSpec:
        return MarginSpec(
            tuple(self.cols - r for r in self.row_sums),
            tuple(self.rows - s for s in self.col_sums),
        )

    def permute(
        self, row_perm: Permutation, col_perm: Permutation
    ) -> MarginSpec:
        row_sums = [0] * self.rows
        col_sums = [0] * self.cols
        for i, target in enumerate(row_perm):
            row_sums[target - 1] = self.row_sums[i]
        for j, target in enumerate(col_perm):
            col_sums[target - 1] = self.col_sums[j]
        return MarginSpec(tuple(row_sums), tuple(col_sums))

    def header(self) -> str:
        return f"R={_fmt_sums(self.row_sums)} S={_fmt_sums(self.col_sums)}"


@dataclass(frozen=True)
class ClassSpec:
    """
    Identifies the class searched: `Λ(n, x)` (order `n`, every line sum `x`)
    or a general `A(R,S)`.

    ##### Examples #####

    ```python
    >>> spec = ClassSpec.uniform(4, 2)
    >>> spec
    ClassSpec(Λ(4,2))
    >>> spec.n, spec.x
    (4, 2)

    >>> ClassSpec.of(MarginSpec((1, 0), (0, 1)))
    ClassSpec(A(R=1,0 S=0,1))

    >>> ClassSpec.uniform(3, 4)
    Traceback (most recent call last):
        ...
    critsets.errors.MatrixError: Expected 0 <= x <= n, given n=3, x=4

    >>> ClassSpec.uniform(0, 0)
    Traceback (most recent call last):
        ...
    critsets.errors.MatrixError: Expected n >= 1, given n=0

    ```
    """

    margins: MarginSpec
    n: Optional[int] = None
    x: Optional[int] = None

    @classmethod
    def uniform(cls, n: int, x: int) -> ClassSpec:
        if n < 1:
            raise MatrixError(f"Expected n >= 1, given n={n}")
        if not 0 <= x <= n:
            raise MatrixError(f"Expected 0 <= x <= n, given n={n}, x={x}")
        return cls(MarginSpec.uniform(n, x), n, x)

    @classmethod
    def of(cls, margins: MarginSpec) -> ClassSpec:
        if margins.is_uniform and margins.rows > 0:
            return cls(margins, margins.rows, margins.row_sums[0])
        return cls(margins)

    @property
    def is_uniform(self) -> bool:
        return self.n is not None

    @property
    def order(self) -> int:
        return max(self.margins.rows, self.margins.cols)

    @property
    def label(self) -> str:
        if self.is_uniform:
            return f"Λ({self.n},{self.x})"
        return f"A({self.margins.header()})"

    def __repr__(self) -> str:
        return f"ClassSpec({self.label})"

    def to_json_encodable(self) -> dict[str, Any]:
        dct: dict[str, Any] = dict(
            rowSums=list(self.margins.row_sums),
            colSums=list(self.margins.col_sums),
        )
        if self.is_uniform:
            dct.update(n=self.n, x=self.x)
        return dct


def identity(n: int) -> Permutation:
    return tuple(range(1, n + 1))


def as_permutation(perm: PermutationCastable, n: int) -> Permutation:
    """
    ##### Examples #####

    ```python
    >>> as_permutation(None, 3)
    (1, 2, 3)

    >>> as_permutation([2, 2, 1], 3)
    Traceback (most recent call last):
        ...
    critsets.errors.MatrixError: Expected a permutation of 1..3,
        given [2, 2, 1]

    ```
    """
    if perm is None:
        return identity(n)
    if not is_permutation(perm, n):
        raise MatrixError(
            f"Expected a permutation of 1..{n}, given {fmt(perm)}"
        )
    return tuple(int(k) for k in perm)


def invert(perm: Permutation) -> Permutation:
    """
    ##### Examples #####

    ```python
    >>> invert((2, 3, 1))
    (3, 1, 2)

    ```
    """
    inverse = [0] * len(perm)
    for k, target in enumerate(perm, start=1):
        inverse[target - 1] = k
    return tuple(inverse)


GridCastable = Union[np.ndarray, Sequence[Sequence[int]], Sequence[str]]


def _as_grid(grid: GridCastable) -> np.ndarray:
    if isinstance(grid, np.ndarray):
        array = grid.astype(GRID_DTYPE, copy=True)
    else:
        rows = [
            [_CHAR_ENTRIES[c] for c in row] if isinstance(row, str) else row
            for row in grid
        ]
        array = np.array(rows, dtype=GRID_DTYPE)
    if array.ndim != 2:
        if array.size == 0:
            return np.zeros((0, 0), dtype=GRID_DTYPE)
        raise MatrixError(
            f"Expected a rectangular grid, given shape {array.shape}"
        )
    if not np.isin(array, (EMPTY, ZERO, ONE)).all():
        raise MatrixError("Grid entries must be 0, 1 or EMPTY (-1)")
    array.setflags(write=False)
    return array


class PartialMatrix:
    """
    An immutable partial (0,1)-matrix with its target margins. The
    set-of-triples view `triples` omits `EMPTY` cells and `size` counts the
    filled ones.

    ##### Examples #####

    ```python
    >>> M = PartialMatrix.from_rows(["1.0", "..1"], MarginSpec((2, 1), (1, 1, 1)))
    >>> M.size, M.triples()
    (3, ((1, 1, 1), (1, 3, 0), (2, 3, 1)))

    >>> M.with_cell(2, 1, 0).size
    4
    >>> M.without_cell(1, 1).triples()
    ((1, 3, 0), (2, 3, 1))

    >>> M.complement().triples()
    ((1, 1, 0), (1, 3, 1), (2, 3, 0))

    ```

    Complete grids can leave out the margins; they are read off the grid.

    ```python
    >>> PartialMatrix.from_rows(["110", "001"]).margins
    MarginSpec(row_sums=(2, 1), col_sums=(1, 1, 1))

    >>> PartialMatrix.from_rows(["1.0", "..1"])
    Traceback (most recent call last):
        ...
    critsets.errors.MatrixError: Margins are required for a grid with
        EMPTY cells

    ```
    """

    __slots__ = ("_grid", "_margins")

    _grid: np.ndarray
    _margins: MarginSpec

    @classmethod
    def empty(cls, margins: MarginSpec) -> PartialMatrix:
        return cls(
            np.full(margins.shape, EMPTY, dtype=GRID_DTYPE), margins
        )

    @classmethod
    def from_rows(
        cls, rows: GridCastable, margins: Optional[MarginSpec] = None
    ) -> PartialMatrix:
        return cls(rows, margins)

    @classmethod
    def from_triples(
        cls, margins: MarginSpec, triples: Iterable[Sequence[int]]
    ) -> PartialMatrix:
        grid = np.full(margins.shape, EMPTY, dtype=GRID_DTYPE)
        for triple in triples:
            i, j, v = (int(k) for k in triple)
            if not (1 <= i <= margins.rows and 1 <= j <= margins.cols):
                raise MatrixError(
                    f"Cell ({i},{j}) lies outside a {margins.rows}x"
                    f"{margins.cols} grid"
                )
            if v not in (ZERO, ONE):
                raise MatrixError(f"Triple value must be 0 or 1, given {v}")
            grid[i - 1, j - 1] = v
        return cls(grid, margins)

    def __init__(
        self, grid: GridCastable, margins: Optional[MarginSpec] = None
    ):
        array = _as_grid(grid)
        if margins is None:
            if (array == EMPTY).any():
                raise MatrixError(
                    "Margins are required for a grid with EMPTY cells"
                )
            margins = MarginSpec(
                tuple(int(v) for v in array.sum(axis=1)),
                tuple(int(v) for v in array.sum(axis=0)),
            )
        elif array.shape != margins.shape:
            raise MatrixError(
                f"Grid shape {array.shape} does not match margins for "
                f"{margins.rows}x{margins.cols}"
            )
        self._grid = array
        self._margins = margins

    # Views
    # ========================================================================

    @property
    def grid(self) -> np.ndarray:
        """The read-only `int8` grid, 0-based, with `EMPTY` as `-1`."""
        return self._grid

    @property
    def margins(self) -> MarginSpec:
        return self._margins

    @property
    def rows(self) -> int:
        return self._margins.rows

    @property
    def cols(self) -> int:
        return self._margins.cols

    @property
    def shape(self) -> tuple[int, int]:
        return self._margins.shape

    @property
    def size(self) -> int:
        return int((self._grid != EMPTY).sum())

    def __getitem__(self, cell: Cell) -> int:
        i, j = cell
        self._check_cell(i, j)
        return int(self._grid[i - 1, j - 1])

    def __contains__(self, item: object) -> bool:
        """A `Triple` is contained when that cell holds that value."""
        if isinstance(item, tuple) and len(item) == 3:
            i, j, v = item
            return (
                1 <= i <= self.rows
                and 1 <= j <= self.cols
                and v in (ZERO, ONE)
                and int(self._grid[i - 1, j - 1]) == v
            )
        return False

    def is_filled(self, i: int, j: int) -> bool:
        return self[i, j] != EMPTY

    def triples(self) -> tuple[Triple, ...]:
        """Filled cells as `(i, j, value)`, row-major."""
        return tuple(
            (int(i) + 1, int(j) + 1, int(self._grid[i, j]))
            for i, j in zip(*np.nonzero(self._grid != EMPTY))
        )

    def cells(self) -> tuple[Cell, ...]:
        """Filled cells, row-major."""
        return tuple((i, j) for i, j, _ in self.triples())

    def cells_with(self, value: int) -> tuple[Cell, ...]:
        return tuple(
            (int(i) + 1, int(j) + 1)
            for i, j in zip(*np.nonzero(self._grid == value))
        )

    def row_counts(self, value: int) -> np.ndarray:
        return (self._grid == value).sum(axis=1)

    def col_counts(self, value: int) -> np.ndarray:
        return (self._grid == value).sum(axis=0)

    def iter_rows(self) -> Iterator[str]:
        for row in self._grid:
            yield "".join(_ENTRY_CHARS[Entry(int(v))] for v in row)

    # Predicates
    # ========================================================================

    def is_valid(self) -> bool:
        """
        The four counting conditions of `A′(R,S)`: no line holds more Ones
        than its sum, nor more Zeros than its length minus its sum.
        """
        r = np.array(self._margins.row_sums, dtype=np.int64)
        s = np.array(self._margins.col_sums, dtype=np.int64)
        return bool(
            (self.row_counts(ONE) <= r).all()
            and (self.row_counts(ZERO) <= self.cols - r).all()
            and (self.col_counts(ONE) <= s).all()
            and (self.col_counts(ZERO) <= self.rows - s).all()
        )

    def is_complete(self) -> bool:
        return bool(
            not (self._grid == EMPTY).any()
            and tuple(self.row_counts(ONE)) == self._margins.row_sums
            and tuple(self.col_counts(ONE)) == self._margins.col_sums
        )

    def subset_of(self, other: PartialMatrix) -> bool:
        self._check_compatible(other)
        filled = self._grid != EMPTY
        return bool((self._grid[filled] == other._grid[filled]).all())

    # Derived matrices
    # ========================================================================

    def permute(
        self,
        row_perm: PermutationCastable = None,
        col_perm: PermutationCastable = None,
    ) -> PartialMatrix:
        """
        Cell `(row_perm[i], col_perm[j])` of the result holds cell `(i, j)`
        of `self`.
        """
        rp = np.array(as_permutation(row_perm, self.rows), dtype=np.intp) - 1
        cp = np.array(as_permutation(col_perm, self.cols), dtype=np.intp) - 1
        grid = np.empty_like(self._grid)
        grid[np.ix_(rp, cp)] = self._grid
        return PartialMatrix(
            grid,
            self._margins.permute(tuple(rp + 1), tuple(cp + 1)),
        )

    def transpose(self) -> PartialMatrix:
        return PartialMatrix(self._grid.T, self._margins.transpose())

    def complement(self) -> PartialMatrix:
        """Swap Zero and One everywhere, margins included."""
        grid = np.where(self._grid == EMPTY, EMPTY, 1 - self._grid)
        return PartialMatrix(grid, self._margins.complement())

    def flipped(self) -> PartialMatrix:
        """Swap Zero and One in the filled cells, keeping the margins."""
        grid = np.where(self._grid == EMPTY, EMPTY, 1 - self._grid)
        return PartialMatrix(grid, self._margins)

    def with_cell(self, i: int, j: int, value: int) -> PartialMatrix:
        self._check_cell(i, j)
        if value not in (ZERO, ONE):
            raise MatrixError(f"Cell value must be 0 or 1, given {value}")
        grid = self._grid.copy()
        grid[i - 1, j - 1] = value
        return PartialMatrix(grid, self._margins)

    def without_cell(self, i: int, j: int) -> PartialMatrix:
        self._check_cell(i, j)
        grid = self._grid.copy()
        grid[i - 1, j - 1] = EMPTY
        return PartialMatrix(grid, self._margins)

    def restricted_to(self, cells: Iterable[Sequence[int]]) -> PartialMatrix:
        """Keep only `cells` (pairs, or triples whose value is ignored)."""
        mask = np.zeros(self.shape, dtype=bool)
        for cell in cells:
            i, j = int(cell[0]), int(cell[1])
            self._check_cell(i, j)
            mask[i - 1, j - 1] = True
        return PartialMatrix(
            np.where(mask, self._grid, EMPTY), self._margins
        )

    def union(self, other: PartialMatrix) -> PartialMatrix:
        self._check_compatible(other)
        both = (self._grid != EMPTY) & (other._grid != EMPTY)
        if (self._grid[both] != other._grid[both]).any():
            raise MatrixError("Partial matrices disagree on a shared cell")
        return PartialMatrix(
            np.where(self._grid != EMPTY, self._grid, other._grid),
            self._margins,
        )

    def difference(self, other: PartialMatrix) -> PartialMatrix:
        """Empty every cell that is filled in `other`."""
        self._check_compatible(other)
        return PartialMatrix(
            np.where(other._grid != EMPTY, EMPTY, self._grid), self._margins
        )

    def emptied(self) -> PartialMatrix:
        return PartialMatrix.empty(self._margins)

    # Serialization
    # ========================================================================

    def to_text(self, *, header: bool = True) -> str:
        lines = list(self.iter_rows())
        if header:
            lines.insert(0, self._margins.header())
        return "\n".join(lines) + "\n"

    def to_json_encodable(self) -> dict[str, Any]:
        return dict(
            rows=self.rows,
            cols=self.cols,
            rowSums=list(self._margins.row_sums),
            colSums=list(self._margins.col_sums),
            triples=[list(t) for t in self.triples()],
        )

    # Dunders
    # ========================================================================

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PartialMatrix):
            return NotImplemented
        return self._margins == other._margins and bool(
            np.array_equal(self._grid, other._grid)
        )

    def __hash__(self) -> int:
        return hash((self._margins, self._grid.tobytes()))

    def __repr__(self) -> str:
        return (
            f"<PartialMatrix {self.rows}x{self.cols} size={self.size} "
            f"R={self._margins.row_sums} S={self._margins.col_sums}>"
        )

    def __str__(self) -> str:
        return "\n".join(self.iter_rows())

    def __rich_console__(
        self, console: Console, options: ConsoleOptions
    ) -> RenderResult:
        yield render(self)

    # Checks
    # ========================================================================

    def _check_cell(self, i: int, j: int) -> None:
        if not (1 <= i <= self.rows and 1 <= j <= self.cols):
            raise MatrixError(
                f"Cell ({i},{j}) lies outside a {self.rows}x{self.cols} grid"
            )

    def _check_compatible(self, other: PartialMatrix) -> None:
        if self.shape != other.shape:
            raise MatrixError(
                f"Dimension mismatch: {self.rows}x{self.cols} vs "
                f"{other.rows}x{other.cols}"
            )
        if self._margins != other._margins:
            raise MatrixError(
                "Margin mismatch: {} vs {}".format(
                    self._margins.header(), other._margins.header()
                )
            )


# Operations
# ============================================================================


def validate(M: PartialMatrix) -> bool:
    """
    `True` iff `M` satisfies the four counting conditions of `A′(R,S)`.

    ##### Examples #####

    ```python
    >>> validate(PartialMatrix.empty(MarginSpec.uniform(4, 2)))
    True

    >>> validate(PartialMatrix.from_rows(["11", ".."], MarginSpec.uniform(2, 1)))
    False

    ```
    """
    return M.is_valid()


def is_complete(M: PartialMatrix) -> bool:
    """
    ##### Examples #####

    ```python
    >>> is_complete(PartialMatrix.empty(MarginSpec.uniform(2, 1)))
    False

    >>> is_complete(PartialMatrix.from_rows(["10", "01"]))
    True

    ```
    """
    return M.is_complete()


def subset_of(D: PartialMatrix, M: PartialMatrix) -> bool:
    """
    ##### Examples #####

    ```python
    >>> M = PartialMatrix.from_rows(["10", "01"])
    >>> subset_of(M, M)
    True

    >>> subset_of(M.emptied().with_cell(1, 1, 0), M)
    False

    >>> subset_of(M, PartialMatrix.from_rows(["100", "010", "001"]))
    Traceback (most recent call last):
        ...
    critsets.errors.MatrixError: Dimension mismatch: 2x2 vs 3x3

    ```
    """
    return D.subset_of(M)


def permute(
    M: PartialMatrix,
    row_perm: PermutationCastable,
    col_perm: PermutationCastable,
) -> PartialMatrix:
    """
    ##### Examples #####

    ```python
    >>> M = PartialMatrix.from_rows(["1100", "0110", "0011", "1001"])
    >>> print(permute(M, (2, 3, 4, 1), None))
    1001
    1100
    0110
    0011

    >>> permute(permute(M, (2, 1, 3, 4), None), (2, 1, 3, 4), None) == M
    True

    >>> permute(M, (1, 1, 2, 3), None)
    Traceback (most recent call last):
        ...
    critsets.errors.MatrixError: Expected a permutation of 1..4,
        given (1, 1, 2, 3)

    ```
    """
    return M.permute(row_perm, col_perm)


def _content_lines(text: str) -> Iterator[tuple[int, str]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield number, line


def parse_text(text: str, margins: Optional[MarginSpec] = None) -> PartialMatrix:
    """
    Parse the text format: an optional `R=<ints> S=<ints>` header line, then
    one line per row of `0`, `1` and `.` characters. Blank lines, spaces
    inside rows and lines starting with `#` are ignored.

    Without a header the margins come from `margins`, or are read off the
    grid when it is complete.

    ##### Examples #####

    ```python
    >>> parse_text("1.\\n.0", MarginSpec.uniform(2, 1)).size
    2

    >>> parse_text("R=1,1 S=1,1\\n10\\n0")
    Traceback (most recent call last):
        ...
    critsets.errors.ParseError: line 3: Expected 2 cells in row, found 1

    >>> parse_text("R=1,1 S=1,1\\n1x\\n01")
    Traceback (most recent call last):
        ...
    critsets.errors.ParseError: line 2: Unexpected character 'x'

    >>> parse_text("R=1,1,1 S=1,1,1\\n10\\n01")
    Traceback (most recent call last):
        ...
    critsets.errors.ParseError: Header declares 3x3 but the grid is 2x2

    ```
    """
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("Empty input")

    if "=" in lines[0][1]:
        number, header = lines.pop(0)
        try:
            margins = MarginSpec.parse_header(header)
        except ParseError as error:
            raise ParseError(
                str(error).removeprefix("line 1: "), line=number
            ) from error

    rows: list[str] = []
    for number, line in lines:
        row = line.replace(" ", "")
        for c in row:
            if c not in _CHAR_ENTRIES:
                raise ParseError(f"Unexpected character {c!r}", line=number)
        if rows and len(row) != len(rows[0]):
            raise ParseError(
                f"Expected {len(rows[0])} cells in row, found {len(row)}",
                line=number,
            )
        rows.append(row)

    shape = (len(rows), len(rows[0]) if rows else 0)
    if margins is not None and margins.shape != shape:
        raise ParseError(
            "Header declares {}x{} but the grid is {}x{}".format(
                *margins.shape, *shape
            )
        )

    try:
        return PartialMatrix(rows, margins)
    except MatrixError as error:
        raise ParseError(str(error)) from error


def parse_json(text: Union[str, dict]) -> PartialMatrix:
    """
    Parse the JSON format produced by `serialize_json`.

    ##### Examples #####

    ```python
    >>> M = parse_json('{"rows": 2, "cols": 2, "rowSums": [1, 1], '
    ...                '"colSums": [1, 1], "triples": [[1, 2, 1]]}')
    >>> M.triples()
    ((1, 2, 1),)

    >>> parse_json('{"rows": 2}')
    Traceback (most recent call last):
        ...
    critsets.errors.ParseError: Missing JSON field 'rowSums'

    >>> parse_json('{"rowSums": [1, 1], "colSums": [1, 1], '
    ...            '"triples": [[1, 2, 1], [1, 2, 0]]}')
    Traceback (most recent call last):
        ...
    critsets.errors.ParseError: Cell (1,2) is given 2 times

    ```
    """
    try:
        data = json.loads(text) if isinstance(text, str) else text
    except json.JSONDecodeError as error:
        raise ParseError(error.msg, line=error.lineno) from error

    if not isinstance(data, dict):
        raise ParseError(f"Expected a JSON object, given {fmt(type(data))}")

    for key in ("rowSums", "colSums", "triples"):
        if key not in data:
            raise ParseError(f"Missing JSON field {key!r}")

    try:
        margins = MarginSpec(tuple(data["rowSums"]), tuple(data["colSums"]))
        for key, expected in (("rows", margins.rows), ("cols", margins.cols)):
            if key in data and data[key] != expected:
                raise ParseError(
                    f"Field {key!r} is {data[key]} but the sums give "
                    f"{expected}"
                )
        counts = Counter((int(i), int(j)) for i, j, _ in data["triples"])
        for (i, j), count in counts.items():
            if count > 1:
                raise ParseError(f"Cell ({i},{j}) is given {count} times")
        return PartialMatrix.from_triples(margins, data["triples"])
    except (TypeError, ValueError) as error:
        if isinstance(error, ParseError):
            raise
        raise ParseError(str(error)) from error


def parse(text: str, margins: Optional[MarginSpec] = None) -> PartialMatrix:
    """Parse either format; JSON input starts with `{`."""
    if text.lstrip().startswith("{"):
        return parse_json(text)
    return parse_text(text, margins)


def serialize(M: PartialMatrix) -> str:
    """
    ##### Examples #####

    ```python
    >>> text = "R=2,1,0 S=1,1,1\\n11.\\n0.1\\n000\\n"
    >>> serialize(parse(text)) == text
    True

    ```
    """
    return M.to_text()


def serialize_json(M: PartialMatrix) -> str:
    """
    ##### Examples #####

    ```python
    >>> M = PartialMatrix.from_rows(["1.", ".0"], MarginSpec.uniform(2, 1))
    >>> serialize_json(M)
    '{"rows":2,"cols":2,"rowSums":[1,1],"colSums":[1,1],"triples":[[1,1,1],[2,2,0]]}'

    >>> parse(serialize_json(M)) == M
    True

    ```
    """
    return json.dumps(M.to_json_encodable(), separators=(",", ":"))


def render(
    M: PartialMatrix,
    *,
    marked: Union[None, PartialMatrix, Iterable[Sequence[int]]] = None,
    title: Optional[str] = None,
) -> Table:
    """
    Render `M` as a `rich` table; `marked` cells (a partial matrix such as a
    critical set, or cells) are highlighted with the `matrix.marked` style.

    ##### Examples #####

    ```python
    >>> from critsets.lib.rich import capture_riches
    >>> M = PartialMatrix.from_rows(["10", "01"])
    >>> print(capture_riches(render(M, marked=[(1, 1)])).rstrip())
    1 0
    0 1

    ```
    """
    if isinstance(marked, PartialMatrix):
        marked_cells = set(marked.cells())
    else:
        marked_cells = {(int(c[0]), int(c[1])) for c in (marked or ())}

    table = Table.grid(padding=(0, 1))
    if title is not None:
        table.title = title
    for _ in range(M.cols):
        table.add_column(justify="center")

    styles = {ONE: "matrix.one", ZERO: "matrix.zero", EMPTY: "matrix.empty"}
    for i, row in enumerate(M.grid, start=1):
        cells = []
        for j, v in enumerate(row, start=1):
            entry = Entry(int(v))
            style = "matrix.marked" if (i, j) in marked_cells else styles[entry]
            cells.append(Text(entry.char, style=style))
        table.add_row(*cells)
    return table
