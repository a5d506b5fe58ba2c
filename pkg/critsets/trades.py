"""
Trades, disjoint mates and cycles.

A _trade_ is a partial matrix `T` with a _mate_ `T′` filled on the same
cells, differing on every one of them, with the same number of Ones and of
Zeros in every line. Swapping `T` for `T′` inside a matrix keeps its
margins. A _cycle_ is a trade with 0 or 2 filled cells per line; every trade
splits into cell-disjoint cycles.

A set `D ⊆ M` is defining exactly when every cycle contained in `M` meets
`D`, which is what `find_cycle_through` and `iter_cycles` are for.

##### Examples #####

```python
>>> from critsets.core import PartialMatrix

>>> I = PartialMatrix.from_rows(["10", "01"])
>>> J = PartialMatrix.from_rows(["01", "10"])
>>> T = trade_between(I, J)
>>> T
<Cycle length=4 cells={(1,1), (1,2), (2,1), (2,2)}>
>>> apply_trade(I, T) == J
True
>>> trade_between(I, I) is None
True

```
"""

from __future__ import annotations
from collections import deque
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from critsets.core import EMPTY, ONE, ZERO, MarginSpec, PartialMatrix
from critsets.errors import MatrixError, TradeError
from critsets.lib.text import fmt_cells
from critsets.typings import Cell, Triple

__all__ = [
    "Trade",
    "Cycle",
    "is_cycle",
    "trade_between",
    "decompose_cycles",
    "find_cycle_through",
    "iter_cycles",
    "apply_trade",
]


class Trade:
    """
    A trade `body` with its disjoint `mate`. Both carry the margins of the
    matrix the trade lives in.

    ##### Examples #####

    ```python
    >>> from critsets.core import MarginSpec

    >>> T = Trade.from_triples(
    ...     MarginSpec.uniform(2, 1), [(1, 1, 1), (1, 2, 0), (2, 1, 0), (2, 2, 1)]
    ... )
    >>> T.mate.triples()
    ((1, 1, 0), (1, 2, 1), (2, 1, 1), (2, 2, 0))
    >>> T.swapped().body == T.mate
    True

    >>> Trade.from_triples(MarginSpec.uniform(2, 1), [(1, 1, 1), (1, 2, 1)])
    Traceback (most recent call last):
        ...
    critsets.errors.TradeError: Row 1 of the trade holds 2 Ones but its mate
        holds 0

    ```
    """

    __slots__ = ("_body", "_mate")

    _body: PartialMatrix
    _mate: PartialMatrix

    @classmethod
    def from_triples(
        cls, margins: MarginSpec, triples: Iterable[Sequence[int]]
    ) -> Trade:
        """Build a trade from body triples; the mate flips every value."""
        triples = [tuple(int(k) for k in t) for t in triples]
        body = PartialMatrix.from_triples(margins, triples)
        mate = PartialMatrix.from_triples(
            margins, [(i, j, 1 - v) for i, j, v in triples]
        )
        return cls(body, mate)

    def __init__(self, body: PartialMatrix, mate: PartialMatrix):
        if body.margins != mate.margins:
            raise TradeError("A trade and its mate must share margins")
        b, t = body.grid, mate.grid
        if not np.array_equal(b == EMPTY, t == EMPTY):
            raise TradeError("A trade and its mate must fill the same cells")
        filled = b != EMPTY
        if not filled.any():
            raise TradeError("A trade must fill at least one cell")
        if (b[filled] == t[filled]).any():
            raise TradeError("A trade and its mate must differ on every cell")
        for axis, line in ((1, "Row"), (0, "Column")):
            for value, name in ((ONE, "Ones"), (ZERO, "Zeros")):
                body_counts = (b == value).sum(axis=axis)
                mate_counts = (t == value).sum(axis=axis)
                bad = np.nonzero(body_counts != mate_counts)[0]
                if bad.size:
                    k = int(bad[0])
                    raise TradeError(
                        f"{line} {k + 1} of the trade holds "
                        f"{int(body_counts[k])} {name} but its mate holds "
                        f"{int(mate_counts[k])}"
                    )
        self._body = body
        self._mate = mate

    @property
    def body(self) -> PartialMatrix:
        return self._body

    @property
    def mate(self) -> PartialMatrix:
        return self._mate

    @property
    def size(self) -> int:
        return self._body.size

    def cells(self) -> tuple[Cell, ...]:
        return self._body.cells()

    def triples(self) -> tuple[Triple, ...]:
        return self._body.triples()

    def swapped(self) -> Trade:
        return type(self)(self._mate, self._body)

    def mate_matrix(self, M: PartialMatrix) -> PartialMatrix:
        """`M` with this trade replaced by its mate."""
        return apply_trade(M, self)

    def to_json_encodable(self) -> list[list[int]]:
        return [list(t) for t in self.triples()]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Trade):
            return NotImplemented
        return self._body == other._body and self._mate == other._mate

    def __hash__(self) -> int:
        return hash((self._body, self._mate))

    def __repr__(self) -> str:
        return (
            f"<{self.__class__.__name__} size={self.size} "
            f"cells={fmt_cells(self.cells())}>"
        )


class Cycle(Trade):
    """
    A trade whose cells form one closed circuit, alternating between Ones
    and Zeros, with 0 or 2 cells in every line. `order` lists the cells
    along the circuit.
    """

    __slots__ = ("_order",)

    _order: tuple[Cell, ...]

    def __init__(
        self,
        body: PartialMatrix,
        mate: PartialMatrix,
        order: Optional[Sequence[Cell]] = None,
    ):
        super().__init__(body, mate)
        circuit = _circuit(body)
        if circuit is None:
            raise TradeError(
                "Cycle cells must form one closed circuit with 0 or 2 cells "
                "per line"
            )
        self._order = tuple(order) if order is not None else circuit
        if len(self._order) < 4 or len(self._order) % 2:
            raise TradeError(
                f"Cycle length must be even and at least 4, given "
                f"{len(self._order)}"
            )

    @classmethod
    def of(cls, trade: Trade) -> Cycle:
        return cls(trade.body, trade.mate)

    @property
    def order(self) -> tuple[Cell, ...]:
        return self._order

    @property
    def length(self) -> int:
        return len(self._order)

    def swapped(self) -> Cycle:
        return Cycle(self._mate, self._body, self._order)

    def __repr__(self) -> str:
        return f"<Cycle length={self.length} cells={fmt_cells(self.cells())}>"


def _circuit(body: PartialMatrix) -> Optional[tuple[Cell, ...]]:
    """
    The cells of `body` in circuit order starting from the first filled cell
    and moving along its row, or `None` when they are not a single circuit.
    """
    filled = body.grid != EMPTY
    if (
        not np.isin(filled.sum(axis=1), (0, 2)).all()
        or not np.isin(filled.sum(axis=0), (0, 2)).all()
    ):
        return None

    cells = body.cells()
    start = cells[0]
    order = [start]
    current = start
    along_row = True
    while True:
        i, j = current
        if along_row:
            (k,) = [c for c in np.nonzero(filled[i - 1])[0] if c != j - 1]
            current = (i, int(k) + 1)
        else:
            (k,) = [r for r in np.nonzero(filled[:, j - 1])[0] if r != i - 1]
            current = (int(k) + 1, j)
        along_row = not along_row
        if current == start:
            break
        order.append(current)

    if len(order) != len(cells):
        return None
    return tuple(order)


def is_cycle(T: Trade) -> bool:
    """
    ##### Examples #####

    ```python
    >>> from critsets.core import MarginSpec

    >>> square = Trade.from_triples(
    ...     MarginSpec.uniform(4, 2),
    ...     [(1, 1, 1), (1, 2, 0), (2, 1, 0), (2, 2, 1)],
    ... )
    >>> is_cycle(square)
    True

    >>> two_squares = Trade.from_triples(
    ...     MarginSpec.uniform(4, 2),
    ...     [(1, 1, 1), (1, 2, 0), (2, 1, 0), (2, 2, 1),
    ...      (3, 3, 1), (3, 4, 0), (4, 3, 0), (4, 4, 1)],
    ... )
    >>> is_cycle(two_squares)
    False

    ```
    """
    return _circuit(T.body) is not None


def _check_complete_pair(M1: PartialMatrix, M2: PartialMatrix) -> None:
    if M1.margins != M2.margins:
        raise MatrixError(
            "Margin mismatch: {} vs {}".format(
                M1.margins.header(), M2.margins.header()
            )
        )
    for M in (M1, M2):
        if not M.is_complete():
            raise MatrixError("Expected complete matrices")


def trade_between(M1: PartialMatrix, M2: PartialMatrix) -> Optional[Trade]:
    """
    The trade on the cells where `M1` and `M2` differ, body from `M1` and
    mate from `M2`; `None` when they are equal. A trade that happens to be
    a single circuit comes back as a `Cycle`.
    """
    _check_complete_pair(M1, M2)
    differ = M1.grid != M2.grid
    if not differ.any():
        return None
    body = PartialMatrix(np.where(differ, M1.grid, EMPTY), M1.margins)
    mate = PartialMatrix(np.where(differ, M2.grid, EMPTY), M1.margins)
    trade = Trade(body, mate)
    if is_cycle(trade):
        return Cycle.of(trade)
    return trade


def decompose_cycles(T: Trade) -> list[Cycle]:
    """
    Split a trade into cell-disjoint cycles.

    Rows and columns are the vertices and trade cells the edges. The walk
    leaves a row through one of its Ones and a column through one of its
    Zeros, always taking the lowest index available, and closes a cycle
    whenever it comes back to a vertex already on its path.

    ##### Examples #####

    ```python
    >>> X4 = PartialMatrix.from_rows(["1010", "0101", "1010", "0101"])
    >>> T = trade_between(X4, X4.complement())
    >>> T.size
    16
    >>> cycles = decompose_cycles(T)
    >>> [c.length for c in cycles]
    [4, 4, 4, 4]
    >>> cycles[0].order
    ((1, 1), (2, 1), (2, 2), (1, 2))

    ```
    """
    n = T.body.rows
    grid = T.body.grid

    # Ones are followed out of rows, Zeros out of columns
    ones_of_row = [set(np.nonzero(grid[i] == ONE)[0].tolist()) for i in range(n)]
    zeros_of_col = [
        set(np.nonzero(grid[:, j] == ZERO)[0].tolist())
        for j in range(T.body.cols)
    ]

    cycles: list[Cycle] = []
    # Path entries are ("r", i) or ("c", j), 0-based
    path: list[tuple[str, int]] = []
    edges: list[Cell] = []
    position: dict[tuple[str, int], int] = {}

    while True:
        if not path:
            start = next((i for i in range(n) if ones_of_row[i]), None)
            if start is None:
                break
            path = [("r", start)]
            position = {("r", start): 0}
            edges = []

        kind, k = path[-1]
        if kind == "r":
            j = min(ones_of_row[k])
            ones_of_row[k].discard(j)
            edges.append((k + 1, j + 1))
            nxt = ("c", j)
        else:
            i = min(zeros_of_col[k])
            zeros_of_col[k].discard(i)
            edges.append((i + 1, k + 1))
            nxt = ("r", i)

        if nxt in position:
            at = position[nxt]
            order = edges[at:]
            cycles.append(_cycle_on(T.body, T.mate, order))
            for vertex in path[at + 1 :]:
                del position[vertex]
            path = path[: at + 1]
            edges = edges[:at]
            if len(path) == 1 and not _has_exit(path[0], ones_of_row, zeros_of_col):
                path = []
        else:
            position[nxt] = len(path)
            path.append(nxt)

    return cycles


def _has_exit(vertex, ones_of_row, zeros_of_col) -> bool:
    kind, k = vertex
    return bool(ones_of_row[k] if kind == "r" else zeros_of_col[k])


def _cycle_on(
    body: PartialMatrix, mate: PartialMatrix, order: Sequence[Cell]
) -> Cycle:
    return Cycle(body.restricted_to(order), mate.restricted_to(order), order)


def find_cycle_through(
    M: PartialMatrix, D: PartialMatrix, cell: Cell
) -> Optional[Cycle]:
    """
    A shortest cycle contained in `M` that meets `D` in `cell` only, or
    `None`.

    From the column of `cell` the search moves to a row through a free cell
    holding the opposite value, and from a row to a column through a free
    cell holding the value of `cell`, breadth first and lowest index first,
    until it reaches the row of `cell`.

    ##### Examples #####

    ```python
    >>> M = PartialMatrix.from_rows(["10", "01"])
    >>> find_cycle_through(M, M.restricted_to([(1, 1)]), (1, 1)).order
    ((1, 1), (2, 1), (2, 2), (1, 2))

    >>> find_cycle_through(M, M, (1, 1)) is None
    True

    >>> find_cycle_through(M, M.restricted_to([(1, 1)]), (2, 2))
    Traceback (most recent call last):
        ...
    critsets.errors.MatrixError: Cell (2,2) is not filled in the given set

    ```
    """
    if not D.subset_of(M):
        raise MatrixError("Expected the set to be contained in the matrix")
    r0, c0 = cell
    if not D.is_filled(r0, c0):
        raise MatrixError(f"Cell ({r0},{c0}) is not filled in the given set")

    grid = M.grid
    free = D.grid == EMPTY
    v0 = int(grid[r0 - 1, c0 - 1])

    # Column -> row through the opposite value, row -> column through `v0`
    col_to_rows = [
        np.nonzero(free[:, j] & (grid[:, j] == 1 - v0))[0].tolist()
        for j in range(M.cols)
    ]
    row_to_cols = [
        np.nonzero(free[i] & (grid[i] == v0))[0].tolist()
        for i in range(M.rows)
    ]

    start = ("c", c0 - 1)
    target = ("r", r0 - 1)
    parent: dict[tuple[str, int], Optional[tuple[str, int]]] = {start: None}
    queue = deque([start])
    while queue:
        vertex = queue.popleft()
        kind, k = vertex
        nexts = (
            [("r", i) for i in col_to_rows[k]]
            if kind == "c"
            else [("c", j) for j in row_to_cols[k]]
        )
        for nxt in nexts:
            if nxt in parent:
                continue
            parent[nxt] = vertex
            if nxt == target:
                queue.clear()
                break
            queue.append(nxt)

    if target not in parent:
        return None

    # Rebuild c0 -> ... -> r0, then close through `cell`
    chain = [target]
    while (prev := parent[chain[-1]]) is not None:
        chain.append(prev)
    chain.reverse()

    order: list[Cell] = [(r0, c0)]
    for a, b in zip(chain, chain[1:]):
        if a[0] == "c":
            order.append((b[1] + 1, a[1] + 1))
        else:
            order.append((a[1] + 1, b[1] + 1))

    body = M.restricted_to(order)
    return Cycle(body, body.flipped(), order)


def iter_cycles(M: PartialMatrix) -> Iterator[Cycle]:
    """
    Every cycle contained in the complete matrix `M`, each exactly once, by
    smallest cell in row-major order. Exponential; meant for small `M`.

    ##### Examples #####

    ```python
    >>> [c.order for c in iter_cycles(PartialMatrix.from_rows(["10", "01"]))]
    [((1, 1), (2, 1), (2, 2), (1, 2))]

    >>> X4 = PartialMatrix.from_rows(["1010", "0101", "1010", "0101"])
    >>> sum(1 for _ in iter_cycles(X4))
    24

    ```
    """
    grid = M.grid
    rows, cols = M.shape

    for r0 in range(rows):
        for c0 in range(cols):
            v0 = int(grid[r0, c0])
            if v0 == EMPTY:
                continue

            def usable(i: int, j: int) -> bool:
                return (i, j) > (r0, c0)

            col_to_rows = [
                [i for i in range(rows) if grid[i, j] == 1 - v0 and usable(i, j)]
                for j in range(cols)
            ]
            row_to_cols = [
                [j for j in range(cols) if grid[i, j] == v0 and usable(i, j)]
                for i in range(rows)
            ]

            order = [(r0 + 1, c0 + 1)]
            seen_rows = {r0}
            seen_cols = {c0}
            yield from _extend(
                M, c0, r0, col_to_rows, row_to_cols, order, seen_rows, seen_cols
            )


def _extend(
    M: PartialMatrix,
    col: int,
    r0: int,
    col_to_rows: list[list[int]],
    row_to_cols: list[list[int]],
    order: list[Cell],
    seen_rows: set[int],
    seen_cols: set[int],
) -> Iterator[Cycle]:
    for i in col_to_rows[col]:
        order.append((i + 1, col + 1))
        if i == r0:
            body = M.restricted_to(order)
            yield Cycle(body, body.flipped(), tuple(order))
        elif i not in seen_rows:
            seen_rows.add(i)
            for j in row_to_cols[i]:
                if j in seen_cols:
                    continue
                seen_cols.add(j)
                order.append((i + 1, j + 1))
                yield from _extend(
                    M,
                    j,
                    r0,
                    col_to_rows,
                    row_to_cols,
                    order,
                    seen_rows,
                    seen_cols,
                )
                order.pop()
                seen_cols.discard(j)
            seen_rows.discard(i)
        order.pop()


def apply_trade(M: PartialMatrix, T: Trade) -> PartialMatrix:
    """
    `M` with the body of `T` replaced by its mate.

    ##### Examples #####

    ```python
    >>> I = PartialMatrix.from_rows(["10", "01"])
    >>> T = trade_between(I, PartialMatrix.from_rows(["01", "10"]))
    >>> apply_trade(apply_trade(I, T), T.swapped()) == I
    True

    >>> apply_trade(I, T.swapped())
    Traceback (most recent call last):
        ...
    critsets.errors.TradeError: The trade body is not contained in the
        matrix

    ```
    """
    if M.margins != T.body.margins or not T.body.subset_of(M):
        raise TradeError("The trade body is not contained in the matrix")
    mate = T.mate.grid
    return PartialMatrix(np.where(mate != EMPTY, mate, M.grid), M.margins)
