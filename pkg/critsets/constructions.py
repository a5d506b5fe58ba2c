"""
Explicit members of `Λ(2m,m)` with certified critical sets of every size
from `m²` up to `3m² - 4m + 2`, plus a pair of disjoint critical sets in
any member.

| Builder            | Matrix                       | Critical set size      |
| ------------------ | ---------------------------- | ---------------------- |
| `critical_X(m)`    | `X(2m)`                      | `3m² - 4m + 2`         |
| `critical_Y(m)`    | `Y(2m)`                      | `3m² - 4m + 1`         |
| `build_M_k(m, k)`  | `M(k)`                       | `k`, up to `m²+(m-1)²` |
| `spectrum_upper`   | `X(2m)` or `Y(2m)` traded    | `2m²-5m+15` and up     |
| `b_realize(pair)`  | `B(2m)`                      | `b_critical_size`      |

Every builder returns a `CertifiedCriticalSet` carrying its walk certificate
and one cycle per cell.

##### Examples #####

```python
>>> from critsets.fixtures import load_fixture

>>> print(build_X(2))
1010
0101
1010
0101

>>> X8 = critical_X(4)
>>> X8.size, X8.matrix == load_fixture("ookii").matrix
(34, True)
>>> X8.cells == load_fixture("ookii").critical_set
True

>>> build_X(5) == load_fixture("fig3").matrix
True
>>> build_Y(5) == load_fixture("fig4").matrix
True

```
"""

from __future__ import annotations
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Literal

import numpy as np

from critsets.compositions import (
    CompositionPair,
    b_critical_size,
    b_max_critical,
)
from critsets.core import GRID_DTYPE, ONE, ZERO, PartialMatrix
from critsets.defsets import CertifiedCriticalSet, certify, minimize_to_critical
from critsets.errors import MatrixError, TradeError
from critsets.fixtures import load_fixture
from critsets.log import get_logger
from critsets.trades import Trade, apply_trade
from critsets.typings import Cell, Permutation, PermutationCastable
from critsets.walks import Walk, WalkCertificate

__all__ = [
    "identity_2x2",
    "build_X",
    "critical_X",
    "build_Y",
    "critical_Y",
    "y_walk",
    "build_M_k",
    "trade_index_set",
    "FamilyTrade",
    "trade_family",
    "spectrum_upper",
    "spectrum_sources",
    "spectrum_member",
    "spectrum",
    "sup_pair",
    "interleave",
    "build_B",
    "b_realize",
    "b_critical_size",
    "b_max_critical",
]

_LOG = get_logger(__name__)

Base = Literal["X", "Y"]


def _certified(
    M: PartialMatrix,
    walk: Walk,
    row_perm: PermutationCastable = None,
    col_perm: PermutationCastable = None,
) -> CertifiedCriticalSet:
    certificate = WalkCertificate.of(M, walk, row_perm, col_perm)
    return certify(M, certificate.induced_set(M), certificate)


def _check_m(m: int, least: int) -> None:
    if m < least:
        raise MatrixError(f"Expected m >= {least}, given {m}")


# Small and extremal families
# ============================================================================


def identity_2x2() -> CertifiedCriticalSet:
    """
    The only order-2 case: either diagonal fixes the matrix through one
    cell.

    ##### Examples #####

    ```python
    >>> identity_2x2().cells.triples()
    ((2, 1, 0),)

    ```
    """
    return _certified(PartialMatrix.from_rows(["10", "01"]), Walk.staircase(2))


def _x_grid(m: int) -> np.ndarray:
    n = 2 * m
    i = np.arange(n)[:, None]
    j = np.arange(n)[None, :]
    d = (i - j) % n
    zero = ((d >= 1) & (d <= m - 1)) | (d == n - 1)
    return np.where(zero, ZERO, ONE).astype(GRID_DTYPE)


def build_X(m: int) -> PartialMatrix:
    """
    Cell `(i, j)` is Zero iff `(i - j) mod 2m` is one of `1..m-1` or
    `2m-1`.
    """
    _check_m(m, 2)
    return PartialMatrix(_x_grid(m))


def critical_X(m: int) -> CertifiedCriticalSet:
    """
    The Zeros on or below the diagonal and the Ones above it, which for
    `m >= 2` number `3m² - 4m + 2`.

    ##### Examples #####

    ```python
    >>> [critical_X(m).size for m in (1, 2, 3, 5)]
    [1, 6, 17, 57]
    >>> all(critical_X(m).verify() for m in (1, 2, 3, 5))
    True

    ```
    """
    if m == 1:
        return identity_2x2()
    return _certified(build_X(m), Walk.staircase(2 * m))


def build_Y(m: int) -> PartialMatrix:
    """
    `X(2m)` with cells `(m-1, 2m-1)`, `(m-1, 2m)`, `(2m, 2m-1)` and
    `(2m, 2m)` swapped, which is a 4-cycle of `X(2m)`.
    """
    _check_m(m, 3)
    grid = _x_grid(m)
    n = 2 * m
    for i, j in ((m - 1, n - 1), (m - 1, n), (n, n - 1), (n, n)):
        grid[i - 1, j - 1] = 1 - grid[i - 1, j - 1]
    return PartialMatrix(grid)


def y_walk(m: int) -> Walk:
    """The diagonal staircase with the last cell `(2m, 2m)` lifted above."""
    return Walk((*range(2 * m - 1), 2 * m), 2 * m)


def critical_Y(m: int) -> CertifiedCriticalSet:
    """
    ##### Examples #####

    ```python
    >>> [critical_Y(m).size for m in (3, 4, 5)]
    [16, 33, 56]
    >>> critical_Y(4).is_certified, critical_Y(4).verify()
    (True, True)

    >>> critical_Y(2)
    Traceback (most recent call last):
        ...
    critsets.errors.MatrixError: Expected m >= 3, given 2

    ```
    """
    return _certified(build_Y(m), y_walk(m))


# Lower part of the spectrum
# ============================================================================


def build_M_k(m: int, k: int) -> tuple[PartialMatrix, CertifiedCriticalSet]:
    """
    `M(k)` and its critical set of size `k`, for `m² <= k <= m² + (m-1)²`.

    Write `k - m² = α(m-1) + β` with `0 <= β < m-1`. The walk leaves the
    first `m` columns entirely below it, gives the next `β` columns depth
    `m-α-1`, the rest up to column `2m-1` depth `m-α`, and the last column
    depth `m`. The top right quadrant holds 1 below the walk and 0 above.
    The bottom left quadrant repeats it, the other two quadrants hold its
    complement. The critical set is every Zero of the first `m` columns
    plus every Zero of the bottom right quadrant.

    ##### Examples #####

    ```python
    >>> from critsets.fixtures import load_fixture

    >>> M, C = build_M_k(4, 20)
    >>> tryagain = load_fixture("tryagain")
    >>> M == tryagain.matrix, C.cells == tryagain.critical_set
    (True, True)
    >>> C.certificate.walk
    Walk(depths=(0, 0, 0, 0, 2, 3, 3, 4), rows=8)
    >>> C.verify(), all(build_M_k(3, k)[1].verify() for k in range(9, 14))
    (True, True)

    >>> build_M_k(2, 4)[0] == build_B(2)
    True

    >>> build_M_k(3, 14)
    Traceback (most recent call last):
        ...
    critsets.errors.MatrixError: Expected 9 <= k <= 13 for m=3, given k=14

    ```
    """
    _check_m(m, 1)
    lo, hi = m * m, m * m + (m - 1) ** 2
    if not lo <= k <= hi:
        raise MatrixError(f"Expected {lo} <= k <= {hi} for m={m}, given k={k}")
    if m == 1:
        C = identity_2x2()
        return C.matrix, C

    alpha, beta = divmod(k - m * m, m - 1)
    depths = (
        [0] * m
        + [m - alpha - 1] * beta
        + [m - alpha] * (m - 1 - beta)
        + [m]
    )
    walk = Walk(tuple(depths), 2 * m)

    q = np.where(walk.above_mask()[:m, m:], ZERO, ONE)
    grid = np.empty((2 * m, 2 * m), dtype=GRID_DTYPE)
    grid[:m, m:] = q
    grid[m:, :m] = q
    grid[:m, :m] = 1 - q
    grid[m:, m:] = 1 - q

    M = PartialMatrix(grid)
    _LOG.debug("Built M(k)", m=m, k=k, alpha=alpha, beta=beta)
    return M, _certified(M, walk)


# Upper part of the spectrum
# ============================================================================


def trade_index_set(m: int) -> tuple[Cell, ...]:
    """
    Cells `(i, j)` with `m < i <= 2m`, `1 <= j < m-2` and
    `m <= i - j < 2m-1`, in row-major order. There are `m(m+1)/2 - 7`.

    ##### Examples #####

    ```python
    >>> trade_index_set(5)
    ((6, 1), (7, 1), (7, 2), (8, 1), (8, 2), (9, 1), (9, 2), (10, 2))
    >>> [len(trade_index_set(m)) for m in range(4, 9)]
    [3, 8, 14, 21, 29]

    ```
    """
    return tuple(
        (i, j)
        for i in range(m + 1, 2 * m + 1)
        for j in range(1, m - 2)
        if m <= i - j < 2 * m - 1
    )


@dataclass(frozen=True)
class FamilyTrade:
    """
    The 4-cycle on `(i, j)`, `(i-m+1, j)`, `(i, i-j)` and `(i-m+1, i-j)`.
    Of its cells only the One at `(i-m+1, i-j)` lies above the walk, so
    three of them belong to the critical set; after the swap only one does.
    """

    cell: Cell
    trade: Trade

    @property
    def cells(self) -> tuple[Cell, ...]:
        return self.trade.cells()

    def to_json_encodable(self) -> dict[str, Any]:
        return dict(cell=list(self.cell), trade=self.trade)


def trade_family(m: int, base: Base = "X") -> tuple[FamilyTrade, ...]:
    """
    The trades on `trade_index_set(m)` inside `X(2m)` or `Y(2m)`, after
    checking each one's values and walk position and that no two share a
    cell.

    ##### Examples #####

    ```python
    >>> family = trade_family(5)
    >>> len(family)
    8
    >>> family[0].trade.triples()
    ((2, 1, 0), (2, 5, 1), (6, 1, 1), (6, 5, 0))
    >>> sorted(family[0].cells)
    [(2, 1), (2, 5), (6, 1), (6, 5)]

    >>> all(len(trade_family(m, base)) == m * (m + 1) // 2 - 7
    ...     for m in range(4, 9) for base in "XY")
    True

    ```
    """
    _check_m(m, 4)
    M = build_X(m) if base == "X" else build_Y(m)
    walk = Walk.staircase(2 * m) if base == "X" else y_walk(m)

    family: list[FamilyTrade] = []
    used: set[Cell] = set()
    for i, j in trade_index_set(m):
        r = i - m + 1
        triples = ((i, j, ONE), (r, i - j, ONE), (i, i - j, ZERO), (r, j, ZERO))
        for a, b, v in triples:
            if M[a, b] != v:
                raise TradeError(
                    f"Cell ({a},{b}) of {base}({2 * m}) holds {M[a, b]}, "
                    f"expected {v}"
                )
            if walk.is_above(a, b) != ((a, b) == (r, i - j)):
                raise TradeError(
                    f"Cell ({a},{b}) is on the wrong side of the walk"
                )
        cells = {(a, b) for a, b, _ in triples}
        if cells & used:
            raise TradeError(f"Trade at ({i},{j}) overlaps an earlier one")
        used |= cells
        family.append(
            FamilyTrade((i, j), Trade.from_triples(M.margins, triples))
        )
    return tuple(family)


def spectrum_upper(m: int, k: int) -> CertifiedCriticalSet:
    """
    A critical set of size `k` for `2m²-5m+15 <= k <= 3m²-4m+2`: swap the
    first `α` family trades of `X(2m)` when `3m²-4m+2-k = 2α`, or of `Y(2m)`
    when `3m²-4m+1-k = 2α`, and keep the walk.

    ##### Examples #####

    ```python
    >>> C = spectrum_upper(4, 28)
    >>> C.size, C.matrix == build_X(4)
    (28, False)
    >>> spectrum_upper(5, 41).size
    41

    >>> spectrum_upper(4, 26)
    Traceback (most recent call last):
        ...
    critsets.errors.MatrixError: Expected 27 <= k <= 34 for m=4, given k=26

    ```
    """
    _check_m(m, 4)
    lo, hi = 2 * m * m - 5 * m + 15, 3 * m * m - 4 * m + 2
    if not lo <= k <= hi:
        raise MatrixError(f"Expected {lo} <= k <= {hi} for m={m}, given k={k}")

    if (hi - k) % 2 == 0:
        base: Base = "X"
        M, walk, alpha = build_X(m), Walk.staircase(2 * m), (hi - k) // 2
    else:
        base = "Y"
        M, walk, alpha = build_Y(m), y_walk(m), (hi - 1 - k) // 2

    for member in trade_family(m, base)[:alpha]:
        M = apply_trade(M, member.trade)
    _LOG.debug("Traded", base=base, m=m, k=k, alpha=alpha)
    return _certified(M, walk)


def _from_fixture(name: str) -> CertifiedCriticalSet:
    fixture = load_fixture(name)
    return certify(fixture.matrix, fixture.critical_set, fixture.certificate)


def spectrum_sources(m: int) -> dict[int, str]:
    """
    Which construction `spectrum_member` uses for each size.

    ##### Examples #####

    ```python
    >>> spectrum_sources(3)
    {9: 'M(k)', 10: 'M(k)', 11: 'M(k)', 12: 'M(k)', 13: 'M(k)',
        14: 'fixture fig1', 15: 'fixture filly-left', 16: 'Y', 17: 'X'}
    >>> sorted(set(spectrum_sources(4).values()))
    ['M(k)', 'X', 'fixture filly-right', 'traded X', 'traded Y']

    ```
    """
    _check_m(m, 1)
    top = 3 * m * m - 4 * m + 2
    sources: dict[int, str] = {}
    for k in range(m * m, top + 1):
        if k <= m * m + (m - 1) ** 2:
            sources[k] = "M(k)"
        elif k == top:
            sources[k] = "X"
        elif (m, k) == (3, 14):
            sources[k] = "fixture fig1"
        elif (m, k) == (3, 15):
            sources[k] = "fixture filly-left"
        elif (m, k) == (3, 16):
            sources[k] = "Y"
        elif (m, k) == (4, 26):
            sources[k] = "fixture filly-right"
        elif m >= 4 and k >= 2 * m * m - 5 * m + 15:
            sources[k] = "traded X" if (top - k) % 2 == 0 else "traded Y"
        else:
            raise MatrixError(f"No construction of size {k} for m={m}")
    return sources


def spectrum_member(m: int, k: int) -> CertifiedCriticalSet:
    source = spectrum_sources(m).get(k)
    if source is None:
        raise MatrixError(
            f"Expected {m * m} <= k <= {3 * m * m - 4 * m + 2} for m={m}, "
            f"given k={k}"
        )
    if source == "M(k)":
        return build_M_k(m, k)[1]
    if source == "X":
        return critical_X(m)
    if source == "Y":
        return critical_Y(m)
    if source.startswith("fixture "):
        return _from_fixture(source.removeprefix("fixture "))
    return spectrum_upper(m, k)


def spectrum(m: int, *, threads: int = 1) -> dict[int, CertifiedCriticalSet]:
    """
    One certified critical set for every size `m² <= k <= 3m²-4m+2`, keyed
    by size in increasing order.

    ##### Examples #####

    ```python
    >>> sets = spectrum(2)
    >>> {k: C.size for k, C in sets.items()}
    {4: 4, 5: 5, 6: 6}
    >>> list(spectrum(3, threads=3)) == list(range(9, 18))
    True

    ```
    """
    sizes = list(spectrum_sources(m))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            members = list(executor.map(lambda k: spectrum_member(m, k), sizes))
    else:
        members = [spectrum_member(m, k) for k in sizes]
    return dict(zip(sizes, members))


# Disjoint pairs
# ============================================================================


def _stable_order(keys: np.ndarray) -> list[int]:
    return sorted(range(len(keys)), key=lambda index: bool(keys[index]))


def _positions(order: list[int]) -> Permutation:
    perm = [0] * len(order)
    for position, index in enumerate(order, start=1):
        perm[index] = position
    return tuple(perm)


def sup_pair(
    M: PartialMatrix, *, threads: int = 1
) -> tuple[CertifiedCriticalSet, CertifiedCriticalSet]:
    """
    Two disjoint critical sets of `M ∈ Λ(2m,m)` with sizes adding up to at
    least `3m² - 2m + 1`.

    Columns are first stably reordered so row 1 has its Ones in columns
    `1..m`, then rows so column 1 has its Ones in rows `1..m`. With row and
    column groups `{1}`, `{2..m}` and `{m+1..2m}`, the first set starts from
    cell `(1,1)` and every Zero outside the first row and column, then drops
    what it can among the Zeros of the last groups. The second starts from
    every One outside the first row and column and drops what it can among
    the Ones of the middle groups.

    ##### Examples #####

    ```python
    >>> from critsets.defsets import is_critical

    >>> B4 = build_B(2)
    >>> C1, C2 = sup_pair(B4)
    >>> C1.size + C2.size >= 9
    True
    >>> is_critical(B4, C1.cells), is_critical(B4, C2.cells)
    (True, True)
    >>> set(C1.cells.cells()) & set(C2.cells.cells())
    set()

    Only the Zeros of the last groups and the Ones of the middle groups are
    dropped:

    >>> B6 = build_B(3)
    >>> C1, C2 = sup_pair(B6)
    >>> C1.size, is_critical(B6, C1.cells)
    (13, True)
    >>> {(i, j) for i in range(4, 7) for j in range(4, 7)} <= set(C2.cells.cells())
    True

    ```
    """
    n = M.rows
    if not (
        M.is_complete()
        and M.margins.is_uniform
        and n % 2 == 0
        and n > 0
        and M.margins.row_sums[0] * 2 == n
    ):
        raise MatrixError(f"Expected a complete member of Λ(2m,m), given {M!r}")
    m = n // 2
    grid = M.grid

    col_order = _stable_order(grid[0, :] != ONE)
    row_order = _stable_order(grid[:, col_order[0]] != ONE)
    N = M.permute(_positions(row_order), _positions(col_order))

    def original(a: int, b: int) -> Cell:
        return (row_order[a] + 1, col_order[b] + 1)

    inner = [(a, b) for a in range(1, n) for b in range(1, n)]
    last = [(a, b) for a, b in inner if a >= m and b >= m]
    middle = [(a, b) for a, b in inner if a < m and b < m]
    ngrid = N.grid

    zeros = [(a, b) for a, b in inner if ngrid[a, b] == ZERO]
    ones = [(a, b) for a, b in inner if ngrid[a, b] == ONE]

    D1 = M.restricted_to([original(0, 0)] + [original(a, b) for a, b in zeros])
    order1 = [original(a, b) for a, b in last if ngrid[a, b] == ZERO]
    D2 = M.restricted_to([original(a, b) for a, b in ones])
    order2 = [original(a, b) for a, b in middle if ngrid[a, b] == ONE]

    C1 = minimize_to_critical(M, D1, order1, threads=threads, restrict=True)
    C2 = minimize_to_critical(M, D2, order2, threads=threads, restrict=True)
    _LOG.debug("Disjoint pair", m=m, first=C1.size, second=C2.size)
    return C1, C2


# B(2m)
# ============================================================================


def interleave(m: int) -> Permutation:
    """
    Sends rows `1..m` to the odd positions and `m+1..2m` to the even ones.

    ##### Examples #####

    ```python
    >>> interleave(3)
    (1, 3, 5, 2, 4, 6)
    >>> print(build_B(2).permute(interleave(2), interleave(2)))
    1010
    0101
    1010
    0101

    ```
    """
    return tuple(2 * i - 1 if i <= m else 2 * (i - m) for i in range(1, 2 * m + 1))


def build_B(m: int) -> PartialMatrix:
    """
    One exactly in the two diagonal `m x m` quadrants.

    ##### Examples #####

    ```python
    >>> print(build_B(2))
    1100
    1100
    0011
    0011

    ```
    """
    _check_m(m, 1)
    half = np.arange(2 * m) // m
    return PartialMatrix(
        np.where(half[:, None] == half[None, :], ONE, ZERO).astype(GRID_DTYPE)
    )


def b_realize(pair: CompositionPair) -> CertifiedCriticalSet:
    """
    The critical set of `B(2m)` whose walk has runs `pair`: odd row runs
    take rows from the top half, even ones from the bottom half, columns
    likewise, and column run `j` sits at depth `s_1 + ... + s_(j-1)`.

    ##### Examples #####

    ```python
    >>> from critsets.compositions import b_special_pair
    >>> from critsets.fixtures import load_fixture

    >>> unit = CompositionPair((1,) * 8, (1,) * 8)
    >>> C = b_realize(unit)
    >>> C.size
    28
    >>> C.cells.permute(interleave(4), interleave(4)) == (
    ...     load_fixture("suprri").critical_set
    ... )
    True

    >>> special = b_special_pair(3)
    >>> b_realize(special).size == special.size
    True
    >>> b_realize(special).certificate.block_structure().s
    (1, 2, 1, 1, 1)

    ```
    """
    if not pair.is_valid():
        raise MatrixError(f"Expected valid runs for B(2m), given {pair!r}")
    m = pair.m

    def arrange(runs: tuple[int, ...]) -> Permutation:
        halves = [iter(range(m)), iter(range(m, 2 * m))]
        perm = [0] * (2 * m)
        position = 1
        for band, run in enumerate(runs):
            for _ in range(run):
                perm[next(halves[band % 2])] = position
                position += 1
        return tuple(perm)

    depths: list[int] = []
    for j, run in enumerate(pair.t):
        depths.extend([sum(pair.s[:j])] * run)

    C = _certified(
        build_B(m), Walk(tuple(depths), 2 * m), arrange(pair.s), arrange(pair.t)
    )
    if C.size != b_critical_size(pair):
        raise MatrixError(
            f"Realized size {C.size} differs from the run formula "
            f"{b_critical_size(pair)}"
        )
    return C
