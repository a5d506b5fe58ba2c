"""
Counting and enumerating the completions of a partial matrix to members of
`A(R,S)`: the uniqueness oracle behind every defining-set check.

The search fills one row at a time. A row's candidates are the 0/1 patterns
that agree with its filled cells and carry exactly `r_i` Ones, tried in
lexicographic order, which is the order a cell-by-cell row-major search
branching Zero before One would produce. The search state between rows is
the vector of Ones each column still needs, so counting memoizes on it.

##### Examples #####

```python
>>> from critsets.core import MarginSpec, PartialMatrix

>>> D = PartialMatrix.empty(MarginSpec.uniform(2, 1))
>>> count_completions(D, CompletionBudget(limit=10))
2
>>> [str(M) for M in enumerate_completions(D)]
['01\\n10', '10\\n01']

>>> count_completions(PartialMatrix.empty(MarginSpec.uniform(4, 2)), UNLIMITED)
90

```
"""

from __future__ import annotations
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import accumulate, combinations, islice
import sys
from threading import Lock
from typing import Iterable, Iterator, Optional

import numpy as np

from critsets.core import (
    EMPTY,
    GRID_DTYPE,
    ONE,
    ZERO,
    ClassSpec,
    PartialMatrix,
)
from critsets.errors import (
    AmbiguousCompletion,
    BudgetError,
    BudgetExhausted,
    NoCompletion,
)
from critsets.log import LoggerProperty

__all__ = [
    "CompletionBudget",
    "UNLIMITED",
    "gale_ryser",
    "propagate_forced",
    "CompletionSearch",
    "count_completions",
    "enumerate_completions",
    "complete_unique",
    "count_class",
]

Need = tuple[int, ...]
Pattern = tuple[int, ...]


@dataclass(frozen=True)
class CompletionBudget:
    """
    `limit` is the count at which counting stops (results saturate there);
    `node_cap`, when set, bounds the nodes a search may visit before it
    gives up with `BudgetExhausted`.

    ##### Examples #####

    ```python
    >>> CompletionBudget()
    CompletionBudget(limit=2, node_cap=None)

    >>> CompletionBudget(limit=0)
    Traceback (most recent call last):
        ...
    critsets.errors.BudgetError: Expected limit >= 1, given 0

    >>> CompletionBudget(node_cap=0)
    Traceback (most recent call last):
        ...
    critsets.errors.BudgetError: Expected node_cap >= 1 or None, given 0

    ```
    """

    limit: int = 2
    node_cap: Optional[int] = None

    def __post_init__(self) -> None:
        if self.limit < 1:
            raise BudgetError(f"Expected limit >= 1, given {self.limit}")
        if self.node_cap is not None and self.node_cap < 1:
            raise BudgetError(
                f"Expected node_cap >= 1 or None, given {self.node_cap}"
            )


#: Count everything.
UNLIMITED = CompletionBudget(limit=sys.maxsize)


def gale_ryser(row_sums: Iterable[int], col_sums: Iterable[int]) -> bool:
    """
    Is there a (0,1)-matrix with these row and column sums?

    ##### Examples #####

    ```python
    >>> gale_ryser((2, 2, 2, 2), (2, 2, 2, 2))
    True

    >>> gale_ryser((3, 0), (1, 1, 1))
    True

    >>> gale_ryser((2, 0), (2, 0))
    False

    >>> gale_ryser((1, 1), (1,))
    False

    ```
    """
    r = sorted(row_sums, reverse=True)
    s = list(col_sums)
    if sum(r) != sum(s) or any(v < 0 for v in s) or (r and r[-1] < 0):
        return False
    for k, lhs in enumerate(accumulate(r), start=1):
        if lhs > sum(min(v, k) for v in s):
            return False
    return True


def propagate_forced(D: PartialMatrix) -> Optional[PartialMatrix]:
    """
    Fill the cells that line counts force: a line already holding its sum of
    Ones gets Zeros in its empty cells, a line that needs all of its empty
    cells gets Ones. Repeats until nothing changes. Returns `None` when a
    line can no longer meet its sum.

    ##### Examples #####

    ```python
    >>> from critsets.core import MarginSpec

    >>> D = PartialMatrix.from_rows(["1.", ".."], MarginSpec.uniform(2, 1))
    >>> print(propagate_forced(D))
    10
    01

    >>> print(propagate_forced(PartialMatrix.empty(MarginSpec.uniform(2, 1))))
    ..
    ..

    >>> propagate_forced(
    ...     PartialMatrix.from_rows(["1.", "1."], MarginSpec.uniform(2, 1))
    ... ) is None
    True

    ```
    """
    grid = D.grid.copy()
    r = np.array(D.margins.row_sums, dtype=np.int64)
    s = np.array(D.margins.col_sums, dtype=np.int64)

    changed = True
    while changed:
        changed = False
        for axis, sums in ((1, r), (0, s)):
            ones = (grid == ONE).sum(axis=axis)
            empties = (grid == EMPTY).sum(axis=axis)
            if ((ones > sums) | (ones + empties < sums)).any():
                return None
            fill_zero = np.expand_dims(ones == sums, axis)
            fill_one = np.expand_dims(ones + empties == sums, axis)
            mask_zero = (grid == EMPTY) & fill_zero
            mask_one = (grid == EMPTY) & fill_one & ~fill_zero
            if mask_zero.any() or mask_one.any():
                grid[mask_zero] = ZERO
                grid[mask_one] = ONE
                changed = True

    return PartialMatrix(grid, D.margins)


def _row_patterns(row: np.ndarray, ones: int) -> list[Pattern]:
    fixed_ones = int((row == ONE).sum())
    free = [j for j, v in enumerate(row) if v == EMPTY]
    k = ones - fixed_ones
    if k < 0 or k > len(free):
        return []
    base = [0 if v == EMPTY else int(v) for v in row]
    patterns = []
    for chosen in combinations(free, k):
        pattern = list(base)
        for j in chosen:
            pattern[j] = 1
        patterns.append(tuple(pattern))
    patterns.sort()
    return patterns


class CompletionSearch:
    """
    One search over the completions of a partial matrix. Holds the node
    counter, so a `node_cap` applies to everything done with one instance.

    `prune=False` leaves only the final "every column is satisfied" check,
    which is slow but useful as a reference for the pruned search.
    `threads > 1` splits the work over the candidates for the first row;
    counts and the enumeration order do not depend on it.

    ##### Examples #####

    ```python
    >>> from critsets.core import MarginSpec

    >>> search = CompletionSearch(PartialMatrix.empty(MarginSpec.uniform(4, 2)))
    >>> search.count()
    2
    >>> search.nodes > 0
    True

    >>> CompletionSearch(
    ...     PartialMatrix.empty(MarginSpec.uniform(6, 3)),
    ...     budget=CompletionBudget(limit=10, node_cap=5),
    ... ).count()
    Traceback (most recent call last):
        ...
    critsets.errors.BudgetExhausted: search budget exhausted after 6 nodes
        (cap 5)

    ```
    """

    _log = LoggerProperty()

    budget: CompletionBudget
    prune: bool
    propagate: bool
    threads: int
    nodes: int

    def __init__(
        self,
        D: PartialMatrix,
        *,
        budget: Optional[CompletionBudget] = None,
        prune: bool = True,
        propagate: bool = True,
        threads: int = 1,
    ):
        self.budget = CompletionBudget() if budget is None else budget
        self.prune = prune
        self.propagate = propagate
        self.threads = max(1, threads)
        self.nodes = 0
        self._lock = Lock()
        self._margins = D.margins

        start: Optional[PartialMatrix]
        if propagate:
            start = propagate_forced(D)
        else:
            start = D if D.is_valid() else None

        self._feasible_start = start is not None
        self._row_sums = D.margins.row_sums
        self._n = D.rows

        if start is None:
            self._patterns: list[list[Pattern]] = []
            self._lo: list[Need] = []
            self._hi: list[Need] = []
            return

        grid = start.grid
        self._patterns = [
            _row_patterns(grid[i], self._row_sums[i]) for i in range(self._n)
        ]

        # Bounds on what the rows from `k` on can still put in each column
        fixed_ones = np.zeros((self._n + 1, D.cols), dtype=np.int64)
        fixed_zeros = np.zeros((self._n + 1, D.cols), dtype=np.int64)
        for k in range(self._n - 1, -1, -1):
            fixed_ones[k] = fixed_ones[k + 1] + (grid[k] == ONE)
            fixed_zeros[k] = fixed_zeros[k + 1] + (grid[k] == ZERO)
        self._lo = [tuple(int(v) for v in row) for row in fixed_ones]
        self._hi = [
            tuple(int(self._n - k - v) for v in fixed_zeros[k])
            for k in range(self._n + 1)
        ]

    def _critsets_self_(self) -> dict[str, object]:
        return dict(
            shape=self._margins.shape,
            limit=self.budget.limit,
            nodes=self.nodes,
        )

    # Search
    # ========================================================================

    def _tick(self) -> None:
        with self._lock:
            self.nodes += 1
            nodes = self.nodes
        cap = self.budget.node_cap
        if cap is not None and nodes > cap:
            self._log.warning("Search budget exhausted", node_cap=cap)
            raise BudgetExhausted(cap, nodes)

    def _is_feasible(self, k: int, need: Need) -> bool:
        if not self.prune:
            return k < self._n or not any(need)
        lo, hi = self._lo[k], self._hi[k]
        for v, a, b in zip(need, lo, hi):
            if v < a or v > b:
                return False
        return gale_ryser(self._row_sums[k:], need)

    def _children(self, k: int, need: Need) -> Iterator[tuple[Pattern, Need]]:
        for pattern in self._patterns[k]:
            self._tick()
            child = tuple(v - p for v, p in zip(need, pattern))
            if self._is_feasible(k + 1, child):
                yield pattern, child

    def _count(self, k: int, need: Need, memo: dict) -> int:
        if k == self._n:
            return 0 if any(need) else 1
        key = (k, need)
        if (cached := memo.get(key)) is not None:
            return cached
        limit = self.budget.limit
        total = 0
        for _, child in self._children(k, need):
            total += self._count(k + 1, child, memo)
            if total >= limit:
                total = limit
                break
        memo[key] = total
        return total

    def _walk(
        self, k: int, need: Need, chosen: list[Pattern], dead: set
    ) -> Iterator[PartialMatrix]:
        if k == self._n:
            if not any(need):
                yield self._build(chosen)
            return
        key = (k, need)
        if key in dead:
            return
        found = False
        for pattern, child in self._children(k, need):
            chosen.append(pattern)
            for M in self._walk(k + 1, child, chosen, dead):
                found = True
                yield M
            chosen.pop()
        if not found:
            dead.add(key)

    def _build(self, chosen: list[Pattern]) -> PartialMatrix:
        if chosen:
            grid = np.array(chosen, dtype=GRID_DTYPE)
        else:
            grid = np.zeros(self._margins.shape, dtype=GRID_DTYPE)
        return PartialMatrix(grid, self._margins)

    def _root(self) -> Optional[Need]:
        need = self._margins.col_sums
        if not self._feasible_start or not self._is_feasible(0, need):
            return None
        return need

    def _first_row_branches(self, need: Need) -> list[tuple[Pattern, Need]]:
        return list(self._children(0, need))

    # API
    # ========================================================================

    def count(self) -> int:
        """Number of completions, saturating at `budget.limit`."""
        need = self._root()
        if need is None:
            total = 0
        elif self.threads <= 1 or self._n == 0:
            total = self._count(0, need, {})
        else:
            branches = self._first_row_branches(need)
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                counts = list(
                    pool.map(lambda b: self._count(1, b[1], {}), branches)
                )
            total = min(self.budget.limit, sum(counts))

        self._log.debug("Counted completions", count=total, nodes=self.nodes)
        return total

    def iter_completions(
        self, limit: Optional[int] = None
    ) -> Iterator[PartialMatrix]:
        """
        Every completion exactly once, in row-major Zero-before-One order.
        Stops after `limit` when given.
        """
        need = self._root()
        if need is None:
            return

        if self.threads <= 1 or self._n == 0:
            yield from islice(self._walk(0, need, [], set()), limit)
            return

        def run(branch: tuple[Pattern, Need]) -> list[PartialMatrix]:
            pattern, child = branch
            return list(islice(self._walk(1, child, [pattern], set()), limit))

        branches = self._first_row_branches(need)
        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            results = list(pool.map(run, branches))

        remaining = limit
        for completions in results:
            for M in completions:
                if remaining is not None:
                    if remaining == 0:
                        return
                    remaining -= 1
                yield M


def count_completions(
    D: PartialMatrix,
    budget: Optional[CompletionBudget] = None,
    *,
    prune: bool = True,
    propagate: bool = True,
    threads: int = 1,
) -> int:
    """
    `min(limit, number of completions of D)`; `0` means no completion.
    Raises `BudgetExhausted` rather than return a count it is unsure of.

    ##### Examples #####

    ```python
    >>> from critsets.fixtures import load_fixture

    >>> fig1 = load_fixture("fig1")
    >>> count_completions(fig1.critical_set)
    1
    >>> count_completions(fig1.critical_set, prune=False, propagate=False)
    1

    ```
    """
    return CompletionSearch(
        D, budget=budget, prune=prune, propagate=propagate, threads=threads
    ).count()


def enumerate_completions(
    D: PartialMatrix,
    budget: Optional[CompletionBudget] = None,
    *,
    prune: bool = True,
    propagate: bool = True,
    threads: int = 1,
) -> Iterator[PartialMatrix]:
    """
    Stream the completions of `D`. With no `budget` the stream is complete;
    with one it stops after `budget.limit` completions.

    ##### Examples #####

    ```python
    >>> M = PartialMatrix.from_rows(["10", "01"])
    >>> list(enumerate_completions(M)) == [M]
    True

    ```
    """
    search = CompletionSearch(
        D,
        budget=UNLIMITED if budget is None else budget,
        prune=prune,
        propagate=propagate,
        threads=threads,
    )
    return search.iter_completions(None if budget is None else budget.limit)


def complete_unique(
    D: PartialMatrix,
    *,
    node_cap: Optional[int] = None,
    prune: bool = True,
    propagate: bool = True,
    threads: int = 1,
) -> PartialMatrix:
    """
    The only completion of `D`. Counting and then finding it are two
    searches, each with its own `node_cap`.

    ##### Examples #####

    ```python
    >>> from critsets.core import MarginSpec

    >>> M = PartialMatrix.from_rows(["10", "01"])
    >>> complete_unique(M.restricted_to([(2, 2)])) == M
    True

    >>> complete_unique(PartialMatrix.empty(MarginSpec.uniform(2, 1)))
    Traceback (most recent call last):
        ...
    critsets.errors.AmbiguousCompletion: partial matrix has at least 2
        completions

    >>> complete_unique(
    ...     PartialMatrix.from_rows(["1.", "1."], MarginSpec.uniform(2, 1))
    ... )
    Traceback (most recent call last):
        ...
    critsets.errors.NoCompletion: partial matrix has no completion

    >>> from critsets.fixtures import load_fixture
    >>> fig1 = load_fixture("fig1")
    >>> D = fig1.critical_set
    >>> counting = CompletionSearch(D)
    >>> counting.count()
    1
    >>> finding = CompletionSearch(D, budget=CompletionBudget(limit=1))
    >>> _ = next(finding.iter_completions(1))
    >>> cap = max(counting.nodes, finding.nodes, 1)
    >>> complete_unique(D, node_cap=cap) == fig1.matrix
    True

    ```
    """
    def search(limit: int) -> CompletionSearch:
        return CompletionSearch(
            D,
            budget=CompletionBudget(limit, node_cap),
            prune=prune,
            propagate=propagate,
            threads=threads,
        )

    count = search(2).count()
    if count == 0:
        raise NoCompletion("partial matrix has no completion")
    if count > 1:
        raise AmbiguousCompletion(count)
    return next(search(1).iter_completions(1))


def count_class(
    spec: ClassSpec,
    budget: CompletionBudget = UNLIMITED,
    *,
    threads: int = 1,
) -> int:
    """
    Size of `A(R,S)`.

    ##### Examples #####

    ```python
    >>> count_class(ClassSpec.uniform(2, 1))
    2
    >>> count_class(ClassSpec.uniform(6, 3))
    297200
    >>> count_class(ClassSpec.uniform(6, 3), threads=4)
    297200

    ```
    """
    return count_completions(
        PartialMatrix.empty(spec.margins), budget, threads=threads
    )
