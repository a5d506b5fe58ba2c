"""Seeded random instances for the doctest property suites, excluded from the
distributed package."""

from __future__ import annotations
from typing import Iterator, Sequence

import numpy as np

from critsets.completion import CompletionBudget, enumerate_completions
from critsets.core import MarginSpec, PartialMatrix

__all__ = ["random_member", "random_subset", "instances"]


def random_member(
    margins: MarginSpec, rng: np.random.Generator, *, steps: int = 200
) -> PartialMatrix:
    """
    A member of `A(R,S)` reached from the first completion by `steps`
    random interchanges of 2 x 2 submatrices `[[1, 0], [0, 1]]`.

    ##### Examples #####

    ```python
    >>> M = random_member(MarginSpec.uniform(5, 2), np.random.default_rng(1))
    >>> M.is_complete(), M.margins == MarginSpec.uniform(5, 2)
    (True, True)

    ```
    """
    start = next(
        enumerate_completions(PartialMatrix.empty(margins), CompletionBudget(1))
    )
    grid = start.grid.copy()
    n, m = grid.shape
    if n < 2 or m < 2:
        return start
    for _ in range(steps):
        rows = np.sort(rng.choice(n, size=2, replace=False))
        cols = np.sort(rng.choice(m, size=2, replace=False))
        block = grid[np.ix_(rows, cols)]
        if (
            block[0, 0] == block[1, 1]
            and block[0, 1] == block[1, 0]
            and block[0, 0] != block[0, 1]
        ):
            grid[np.ix_(rows, cols)] = 1 - block
    return PartialMatrix(grid, margins)


def random_subset(
    M: PartialMatrix, rng: np.random.Generator, p: float = 0.5
) -> PartialMatrix:
    """Each filled cell of `M` kept with probability `p`."""
    keep = [cell for cell in M.cells() if rng.random() < p]
    return M.restricted_to(keep)


def instances(
    count: int, *, seed: int, orders: Sequence[int] = (2, 3, 4, 5, 6)
) -> Iterator[PartialMatrix]:
    """`count` random members of `Λ(n,x)`, `n` drawn from `orders`."""
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.choice(orders))
        x = int(rng.integers(1, n)) if n > 1 else 1
        yield random_member(MarginSpec.uniform(n, x), rng)
