"""
South-East walks and the walk certificates of defining and critical sets.

A `Walk` on an `rows x cols` grid is stored as its depth sequence: `a_j` is
the number of rows lying above the walk in column `j`, so cell `(i, j)` is
_above_ the walk iff `i <= a_j`. The sequence is nondecreasing.

A `WalkCertificate` arranges a matrix by row and column permutations and
lays a walk over the result. Zeros below the walk together with Ones above
it always form a defining set (`induced_set`), and every defining set
contains one of these. When every block bordering the walk from below is
all Ones and every block bordering it from above is all Zeros
(`verify_handier`), the induced set is critical.

##### Examples #####

```python
>>> from critsets.core import PartialMatrix

>>> W = Walk((0, 1, 2, 3, 4, 6), rows=6)
>>> W.is_above(1, 2), W.is_above(2, 2)
(True, False)
>>> W.points()[:4]
((0, 0), (1, 0), (1, -1), (2, -1))

>>> structure = block_structure(W)
>>> structure.s, structure.t
((1, 1, 1, 1, 2), (1, 1, 1, 1, 1, 1))
>>> structure.L, structure.L_prime
(5, 6)

```
"""

from __future__ import annotations
from dataclasses import dataclass
import heapq
from itertools import permutations, product
from typing import Any, Iterator, Optional, Sequence

import numpy as np

from critsets.core import (
    EMPTY,
    ONE,
    ZERO,
    PartialMatrix,
    as_permutation,
    invert,
)
from critsets.errors import GuardExceeded, MatrixError, WalkError
from critsets.log import get_logger
from critsets.typings import Cell, Permutation, PermutationCastable

__all__ = [
    "Walk",
    "BlockStructure",
    "WalkCertificate",
    "MAX_CERTIFICATE_ORDER",
    "walk_from_points",
    "cell_above",
    "block_structure",
    "induced_defining_set",
    "verify_handier",
    "normalize",
    "search_walk_certificate",
    "complement_walk",
    "walk_certificates",
]

_LOG = get_logger(__name__)

#: Largest order `walk_certificates` enumerates; it tries every row order
#: against every depth vector.
MAX_CERTIFICATE_ORDER = 5

Point = tuple[int, int]


@dataclass(frozen=True)
class Walk:
    """
    A walk from the top-left corner `(0, 0)` to the bottom-right corner
    `(cols, -rows)` taking unit steps East and South.

    ##### Examples #####

    ```python
    >>> Walk.staircase(4)
    Walk(depths=(0, 1, 2, 3), rows=4)

    >>> Walk((2, 1), rows=3)
    Traceback (most recent call last):
        ...
    critsets.errors.WalkError: Walk depths must be nondecreasing, given
        (2, 1)

    >>> Walk((0, 4), rows=3)
    Traceback (most recent call last):
        ...
    critsets.errors.WalkError: Walk depths must lie in 0..3, given (0, 4)

    ```
    """

    depths: tuple[int, ...]
    rows: int

    @classmethod
    def staircase(cls, n: int) -> Walk:
        """The walk bordering the main diagonal from above: `a_j = j - 1`."""
        return cls(tuple(range(n)), n)

    @classmethod
    def all_below(cls, rows: int, cols: int) -> Walk:
        return cls((0,) * cols, rows)

    @classmethod
    def all_above(cls, rows: int, cols: int) -> Walk:
        return cls((rows,) * cols, rows)

    def __post_init__(self) -> None:
        depths = tuple(int(a) for a in self.depths)
        object.__setattr__(self, "depths", depths)
        if any(a > b for a, b in zip(depths, depths[1:])):
            raise WalkError(
                f"Walk depths must be nondecreasing, given {depths}"
            )
        if any(a < 0 or a > self.rows for a in depths):
            raise WalkError(
                f"Walk depths must lie in 0..{self.rows}, given {depths}"
            )

    @property
    def cols(self) -> int:
        return len(self.depths)

    @property
    def starts_east(self) -> bool:
        return self.cols > 0 and self.depths[0] == 0

    def is_above(self, i: int, j: int) -> bool:
        return i <= self.depths[j - 1]

    def above_mask(self) -> np.ndarray:
        """Boolean `rows x cols` mask of the cells above the walk."""
        return (
            np.arange(1, self.rows + 1)[:, None]
            <= np.array(self.depths, dtype=np.int64)[None, :]
        )

    def points(self) -> tuple[Point, ...]:
        """Lattice points `(x, y)` from `(0, 0)`; South steps lower `y`."""
        points = [(0, 0)]
        depth = 0
        for x, a in enumerate(self.depths):
            while depth < a:
                depth += 1
                points.append((x, -depth))
            points.append((x + 1, -depth))
        while depth < self.rows:
            depth += 1
            points.append((self.cols, -depth))
        return tuple(points)

    def corners(self) -> tuple[Point, ...]:
        """The start, every turning point and the end."""
        points = self.points()
        corners = [points[0]]
        for prev, here, nxt in zip(points, points[1:], points[2:]):
            if (here[0] - prev[0], here[1] - prev[1]) != (
                nxt[0] - here[0],
                nxt[1] - here[1],
            ):
                corners.append(here)
        if len(points) > 1:
            corners.append(points[-1])
        return tuple(corners)

    def transpose(self) -> Walk:
        """
        The walk on the transposed grid. A cell is above the transposed walk
        iff its transpose is below this one.

        ##### Examples #####

        ```python
        >>> Walk((1, 1, 3), rows=3).transpose()
        Walk(depths=(0, 2, 2), rows=3)

        ```
        """
        return Walk(
            tuple(
                sum(1 for a in self.depths if a < r)
                for r in range(1, self.rows + 1)
            ),
            self.cols,
        )

    def to_json_encodable(self) -> dict[str, Any]:
        return dict(depth=list(self.depths), rows=self.rows)


def walk_from_points(points: Sequence[Sequence[int]]) -> Walk:
    """
    Read a walk from its lattice points, `(0, 0)` first and
    `(cols, -rows)` last.

    ##### Examples #####

    ```python
    >>> walk_from_points([(0, 0), (1, 0), (1, -1), (2, -1), (2, -2)])
    Walk(depths=(0, 1), rows=2)

    >>> walk_from_points([(0, 0), (1, 0), (1, 1)])
    Traceback (most recent call last):
        ...
    critsets.errors.WalkError: Step 2 from (1, 0) to (1, 1) is neither
        East nor South

    ```
    """
    pts = [(int(p[0]), int(p[1])) for p in points]
    if not pts or pts[0] != (0, 0):
        raise WalkError("A walk starts at (0, 0)")

    depths: list[int] = []
    for k, (here, nxt) in enumerate(zip(pts, pts[1:]), start=1):
        step = (nxt[0] - here[0], nxt[1] - here[1])
        if step == (1, 0):
            depths.append(-here[1])
        elif step != (0, -1):
            raise WalkError(
                f"Step {k} from {here} to {nxt} is neither East nor South"
            )
    return Walk(tuple(depths), -pts[-1][1])


def cell_above(W: Walk, i: int, j: int) -> bool:
    return W.is_above(i, j)


@dataclass(frozen=True)
class BlockStructure:
    """
    The partition of the grid cut out by the corners of a walk starting
    East. Columns group into runs of equal depth (`t`, `L_prime` of them);
    rows group into runs between consecutive depths (`s`, `L` of them). Block
    `(i, j)` lies above the walk iff `i < j`.

    ##### Examples #####

    ```python
    >>> structure = block_structure(Walk((0, 0, 2, 2), rows=4))
    >>> structure.s, structure.t, structure.L, structure.L_prime
    ((2, 2), (2, 2), 2, 2)
    >>> structure.block(1, 2)
    ((1, 3), (1, 4), (2, 3), (2, 4))
    >>> structure.is_above(1, 2), structure.is_above(2, 2)
    (True, False)

    ```
    """

    walk: Walk
    s: tuple[int, ...]
    t: tuple[int, ...]

    @property
    def L(self) -> int:
        return len(self.s)

    @property
    def L_prime(self) -> int:
        return len(self.t)

    @property
    def corners(self) -> tuple[Point, ...]:
        return self.walk.corners()

    def row_band(self, i: int) -> range:
        start = sum(self.s[: i - 1])
        return range(start + 1, start + self.s[i - 1] + 1)

    def col_band(self, j: int) -> range:
        start = sum(self.t[: j - 1])
        return range(start + 1, start + self.t[j - 1] + 1)

    def block(self, i: int, j: int) -> tuple[Cell, ...]:
        return tuple(product(self.row_band(i), self.col_band(j)))

    def block_size(self, i: int, j: int) -> int:
        return self.s[i - 1] * self.t[j - 1]

    def is_above(self, i: int, j: int) -> bool:
        return i < j

    def block_slices(self, i: int, j: int) -> tuple[slice, slice]:
        """0-based slices of block `(i, j)` into a grid."""
        rows, cols = self.row_band(i), self.col_band(j)
        return slice(rows.start - 1, rows.stop - 1), slice(
            cols.start - 1, cols.stop - 1
        )


def block_structure(W: Walk) -> BlockStructure:
    if not W.starts_east:
        raise WalkError(
            "Block structure needs a walk starting East; normalize first"
        )
    levels: list[int] = []
    t: list[int] = []
    for a in W.depths:
        if levels and levels[-1] == a:
            t[-1] += 1
        else:
            levels.append(a)
            t.append(1)
    s = [b - a for a, b in zip(levels, levels[1:])]
    if levels[-1] < W.rows:
        s.append(W.rows - levels[-1])
    return BlockStructure(W, tuple(s), tuple(t))


def complement_walk(structure: BlockStructure) -> Walk:
    """
    The walk putting block `(i, j)` below it iff `i > j`: columns of band
    `j` get depth `s_1 + ... + s_min(j, L)`.

    ##### Examples #####

    ```python
    >>> complement_walk(block_structure(Walk((0, 1, 2, 3, 4, 6), rows=6)))
    Walk(depths=(1, 2, 3, 4, 6, 6), rows=6)

    ```
    """
    depths: list[int] = []
    for j, width in enumerate(structure.t, start=1):
        depths.extend([sum(structure.s[: min(j, structure.L)])] * width)
    return Walk(tuple(depths), structure.walk.rows)


@dataclass(frozen=True)
class WalkCertificate:
    """
    Row and column permutations plus a walk over the arranged matrix.
    Permutations follow `PartialMatrix.permute`: original row `i` moves to
    row `row_perm[i - 1]`.

    ##### Examples #####

    ```python
    >>> M = PartialMatrix.from_rows(["10", "01"])
    >>> cert = WalkCertificate.of(M, Walk((0, 1), rows=2))
    >>> cert.induced_set(M).triples()
    ((2, 1, 0),)

    >>> cert.verify_handier(M)
    True

    ```
    """

    row_perm: Permutation
    col_perm: Permutation
    walk: Walk

    @classmethod
    def of(
        cls,
        M: PartialMatrix,
        walk: Walk,
        row_perm: PermutationCastable = None,
        col_perm: PermutationCastable = None,
    ) -> WalkCertificate:
        if (walk.rows, walk.cols) != M.shape:
            raise WalkError(
                f"Walk is for a {walk.rows}x{walk.cols} grid, matrix is "
                f"{M.rows}x{M.cols}"
            )
        return cls(
            as_permutation(row_perm, M.rows),
            as_permutation(col_perm, M.cols),
            walk,
        )

    def arranged(self, M: PartialMatrix) -> PartialMatrix:
        return M.permute(self.row_perm, self.col_perm)

    def _arranged_induced(self, A: PartialMatrix) -> np.ndarray:
        above = self.walk.above_mask()
        grid = A.grid
        keep = (above & (grid == ONE)) | (~above & (grid == ZERO))
        return np.where(keep, grid, EMPTY)

    def induced_set(self, M: PartialMatrix) -> PartialMatrix:
        """Zeros below the walk and Ones above it, in `M`'s coordinates."""
        A = self.arranged(M)
        D = PartialMatrix(self._arranged_induced(A), A.margins)
        return D.permute(invert(self.row_perm), invert(self.col_perm))

    def verify_handy(self, M: PartialMatrix, D: PartialMatrix) -> bool:
        """Does the induced set lie inside `D ⊆ M`?"""
        return D.subset_of(M) and self.induced_set(M).subset_of(D)

    def verify_handier(self, M: PartialMatrix) -> bool:
        """
        Blocks on the diagonal are all Ones and blocks just right of it are
        all Zeros, in the arranged matrix. Walks starting South are checked
        on the transposed complement.
        """
        if not self.walk.starts_east:
            M, cert = normalize(M, self)
            return cert.verify_handier(M)

        grid = self.arranged(M).grid
        structure = block_structure(self.walk)
        for i in range(1, structure.L + 1):
            if not (grid[structure.block_slices(i, i)] == ONE).all():
                return False
        for i in range(1, min(structure.L, structure.L_prime - 1) + 1):
            if not (grid[structure.block_slices(i, i + 1)] == ZERO).all():
                return False
        return True

    def block_structure(self) -> BlockStructure:
        return block_structure(self.walk)

    def to_json_encodable(self) -> dict[str, Any]:
        return dict(
            rowPerm=list(self.row_perm),
            colPerm=list(self.col_perm),
            walk=self.walk.to_json_encodable(),
        )


def normalize(
    M: PartialMatrix, certificate: WalkCertificate
) -> tuple[PartialMatrix, WalkCertificate]:
    """
    Swap Zeros with Ones and transpose. The certificate's induced set maps
    to the induced set of the result, and a walk starting South becomes one
    starting East.

    ##### Examples #####

    ```python
    >>> M = PartialMatrix.from_rows(["110", "011", "101"])
    >>> cert = WalkCertificate.of(M, Walk((1, 2, 3), rows=3))
    >>> N, normal = normalize(M, cert)
    >>> normal.walk.starts_east
    True
    >>> normal.induced_set(N) == cert.induced_set(M).transpose().complement()
    True

    ```
    """
    return (
        M.transpose().complement(),
        WalkCertificate(
            certificate.col_perm, certificate.row_perm, certificate.walk.transpose()
        ),
    )


def induced_defining_set(
    M: PartialMatrix,
    row_perm: PermutationCastable,
    col_perm: PermutationCastable,
    W: Walk,
) -> PartialMatrix:
    """
    ##### Examples #####

    ```python
    >>> X4 = PartialMatrix.from_rows(["1010", "0101", "1010", "0101"])
    >>> induced_defining_set(X4, None, None, Walk.staircase(4)).size
    6

    >>> induced_defining_set(X4, None, None, Walk.all_below(4, 4)) == (
    ...     X4.restricted_to(X4.cells_with(0))
    ... )
    True

    ```
    """
    return WalkCertificate.of(M, W, row_perm, col_perm).induced_set(M)


def verify_handier(
    M: PartialMatrix,
    row_perm: PermutationCastable,
    col_perm: PermutationCastable,
    W: Walk,
) -> bool:
    return WalkCertificate.of(M, W, row_perm, col_perm).verify_handier(M)


def search_walk_certificate(
    M: PartialMatrix, D: PartialMatrix, *, exact: bool = False
) -> Optional[WalkCertificate]:
    """
    A certificate whose induced set lies inside `D`, or `None` when there is
    none (exactly when `D` is not defining). With `exact`, the induced set
    must equal `D`.

    Rows and columns get levels: every cell left out of the induced set
    forces an order between its row and column (a free One puts its row
    strictly after its column, a free Zero puts its column at or after its
    row). The order is satisfiable iff it has no cycle, and then the longest
    path levels give the arrangement and walk directly.

    ##### Examples #####

    ```python
    >>> X4 = PartialMatrix.from_rows(["1010", "0101", "1010", "0101"])
    >>> C = induced_defining_set(X4, None, None, Walk.staircase(4))
    >>> cert = search_walk_certificate(X4, C, exact=True)
    >>> cert.induced_set(X4) == C
    True

    >>> search_walk_certificate(X4, X4.emptied()) is None
    True

    >>> search_walk_certificate(X4, X4).induced_set(X4).size <= 16
    True

    ```
    """
    if not M.is_complete():
        raise MatrixError("Expected a complete matrix")
    if not D.subset_of(M):
        raise MatrixError("Expected the set to be contained in the matrix")

    n, m = M.shape
    grid = M.grid
    in_d = D.grid != EMPTY

    # Vertices: rows 0..n-1, columns n..n+m-1; edge weight 1 is strict
    succ: list[list[tuple[int, int]]] = [[] for _ in range(n + m)]
    for i in range(n):
        for j in range(m):
            one = grid[i, j] == ONE
            # A cell stays out of the induced set as a One below or a Zero
            # above; `exact` asks the opposite of every cell of `D`.
            below = one != bool(in_d[i, j])
            if not in_d[i, j] or exact:
                if below:
                    succ[n + j].append((i, 1))
                else:
                    succ[i].append((n + j, 0))

    indegree = [0] * (n + m)
    for edges in succ:
        for v, _ in edges:
            indegree[v] += 1
    level = [0] * (n + m)
    ready = [v for v in range(n + m) if indegree[v] == 0]
    heapq.heapify(ready)
    done = 0
    while ready:
        u = heapq.heappop(ready)
        done += 1
        for v, w in succ[u]:
            level[v] = max(level[v], level[u] + w)
            indegree[v] -= 1
            if indegree[v] == 0:
                heapq.heappush(ready, v)

    if done < n + m:
        _LOG.debug("No walk certificate", size=D.size, exact=exact)
        return None

    row_order = sorted(range(n), key=lambda i: (level[i], i))
    col_order = sorted(range(m), key=lambda j: (level[n + j], j))
    row_perm = [0] * n
    for pos, i in enumerate(row_order, start=1):
        row_perm[i] = pos
    col_perm = [0] * m
    for pos, j in enumerate(col_order, start=1):
        col_perm[j] = pos
    depths = tuple(
        sum(1 for i in range(n) if level[i] <= level[n + j]) for j in col_order
    )
    return WalkCertificate(tuple(row_perm), tuple(col_perm), Walk(depths, n))


def walk_certificates(
    M: PartialMatrix, *, max_order: int = MAX_CERTIFICATE_ORDER
) -> Iterator[WalkCertificate]:
    """
    One certificate for every distinct walk-induced set of `M`, trying
    every row order against every depth vector (columns are then sorted by
    depth). Certificates come out in order of first discovery.

    ##### Examples #####

    ```python
    >>> I = PartialMatrix.from_rows(["10", "01"])
    >>> sorted(c.induced_set(I).size for c in walk_certificates(I))
    [1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 3, 3, 3, 3]

    ```
    """
    n, m = M.shape
    if max(n, m) > max_order:
        raise GuardExceeded("walk_certificates", max(n, m), max_order)

    grid = M.grid
    depth_vectors = np.array(list(product(range(n + 1), repeat=m)), dtype=np.int64)
    weights = (1 << np.arange(n * m, dtype=np.int64)).reshape(n, m)
    seen: set[int] = set()

    for order in permutations(range(n)):
        pos = np.empty(n, dtype=np.int64)
        pos[list(order)] = np.arange(1, n + 1)
        # above[k, i, j]: row i is above the walk in column j for vector k
        above = pos[None, :, None] <= depth_vectors[:, None, :]
        keep = (above & (grid == ONE)[None]) | (~above & (grid == ZERO)[None])
        packed = (
            keep.reshape(len(depth_vectors), -1).astype(np.int64)
            @ weights.reshape(-1)
        )
        for k, mask in enumerate(packed):
            mask = int(mask)
            if mask in seen:
                continue
            seen.add(mask)
            depths = depth_vectors[k]
            col_order = sorted(range(m), key=lambda j: (depths[j], j))
            col_perm = [0] * m
            for p, j in enumerate(col_order, start=1):
                col_perm[j] = p
            yield WalkCertificate(
                tuple(int(p) for p in pos),
                tuple(col_perm),
                Walk(tuple(int(depths[j]) for j in col_order), n),
            )
