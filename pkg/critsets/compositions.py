"""
Compositions and the critical set sizes of `B(2m)`.

A walk certificate on `B(2m)` cuts the rows into runs `s_1..s_L` and the
columns into runs `t_1..t_L′`, where `L′` is `L` or `L + 1`. Block `(i, j)`
of the arranged matrix is all Ones when `i + j` is even and all Zeros
otherwise, so every row and column holding `m` of each forces

    s_1 + s_3 + ... = m        s_2 + s_4 + ... = m

and the same for `t`. The critical set the walk induces has size

    sum of s_i t_j over i > j with i + j odd,
                   plus i < j with i + j even

which `b_critical_size` evaluates. Exhausting the pairs gives `2m² - m` as
the largest value up to `m = 3` only. From `m = 4` on, uneven runs beat it:
`s = (1, 3, 1, 1, 2)`, `t = (2, 1, 1, 3, 1)` gives 30 in `B(8)`.

##### Examples #####

```python
>>> list(iter_compositions(4, 2))
[(1, 3), (2, 2), (3, 1)]

>>> unit = CompositionPair((1, 1, 1, 1), (1, 1, 1, 1))
>>> b_critical_size(unit)
6
>>> [b_max_critical(m) for m in range(2, 7)]
[6, 15, 30, 51, 78]
>>> b_critical_size(CompositionPair((1, 3, 1, 1, 2), (2, 1, 1, 3, 1)))
30

```
"""

from __future__ import annotations
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cache
from itertools import product
from typing import Any, Iterator, Sequence, Union

import numpy as np

from critsets.errors import MatrixError
from critsets.log import get_logger

__all__ = [
    "CompositionPair",
    "iter_compositions",
    "iter_alternating",
    "iter_b_pairs",
    "b_size_weights",
    "b_critical_size",
    "b_critical_sizes",
    "b_max_critical",
    "b_maximizers",
    "b_special_pair",
]

_LOG = get_logger(__name__)

Composition = tuple[int, ...]


@dataclass(frozen=True)
class CompositionPair:
    """
    Row runs `s` and column runs `t` of a walk on `B(2m)`.

    ##### Examples #####

    ```python
    >>> pair = CompositionPair((1, 2, 1), (1, 1, 1, 1))
    >>> pair.L, pair.L_prime, pair.m
    (3, 4, 2)
    >>> pair.is_valid(), pair.size
    (True, 6)

    >>> CompositionPair((2, 2), (1, 3)).is_valid()
    False

    ```
    """

    s: Composition
    t: Composition

    def __post_init__(self) -> None:
        object.__setattr__(self, "s", tuple(int(x) for x in self.s))
        object.__setattr__(self, "t", tuple(int(x) for x in self.t))

    @property
    def L(self) -> int:
        return len(self.s)

    @property
    def L_prime(self) -> int:
        return len(self.t)

    @property
    def m(self) -> int:
        return sum(self.s) // 2

    @property
    def size(self) -> int:
        return b_critical_size(self)

    @property
    def is_strict(self) -> bool:
        return min(self.s + self.t, default=0) >= 1

    def is_valid(self, *, relaxed: bool = False) -> bool:
        """
        The four line-count constraints, with `L′` in `{L, L + 1}` and every
        run positive. `relaxed` lets `s_L` and `t_1` be zero.
        """
        m = self.m
        if self.L_prime not in (self.L, self.L + 1):
            return False
        if not all(
            sum(runs[0::2]) == m and sum(runs[1::2]) == m
            for runs in (self.s, self.t)
        ):
            return False
        s, t = list(self.s), list(self.t)
        if relaxed:
            s, t = s[:-1], t[1:]
        return min(s + t, default=1) >= 1 and min(self.s + self.t) >= 0

    def to_json_encodable(self) -> dict[str, Any]:
        return dict(s=list(self.s), t=list(self.t), size=self.size)


def iter_compositions(
    total: int, parts: int, minimum: Union[int, Sequence[int]] = 1
) -> Iterator[Composition]:
    """
    Compositions of `total` into `parts` parts, in lexicographic order.
    `minimum` bounds every part, or each part separately when a sequence.

    ##### Examples #####

    ```python
    >>> list(iter_compositions(3, 2, minimum=(0, 1)))
    [(0, 3), (1, 2), (2, 1)]
    >>> list(iter_compositions(2, 3))
    []

    ```
    """
    mins = (
        (minimum,) * parts if isinstance(minimum, int) else tuple(minimum)
    )
    if len(mins) != parts:
        raise ValueError(
            f"Expected {parts} minimums, given {len(mins)}: {mins!r}"
        )
    yield from _compositions(total, mins)


def _compositions(total: int, mins: tuple[int, ...]) -> Iterator[Composition]:
    if not mins:
        if total == 0:
            yield ()
        return
    rest_min = sum(mins[1:])
    for first in range(mins[0], total - rest_min + 1):
        for rest in _compositions(total - first, mins[1:]):
            yield (first, *rest)


def iter_alternating(
    m: int, parts: int, *, zero_first: bool = False, zero_last: bool = False
) -> Iterator[Composition]:
    """
    Compositions of `2m` into `parts` parts whose odd-indexed parts and
    even-indexed parts each sum to `m`. The flags let the first or last
    part be zero.

    ##### Examples #####

    ```python
    >>> list(iter_alternating(2, 3))
    [(1, 2, 1)]
    >>> list(iter_alternating(2, 3, zero_last=True))
    [(1, 2, 1), (2, 2, 0)]

    ```
    """
    odd_mins = [1] * ((parts + 1) // 2)
    even_mins = [1] * (parts // 2)
    for flag, index in ((zero_first, 0), (zero_last, parts - 1)):
        if flag and parts > 0:
            mins = even_mins if index % 2 else odd_mins
            mins[index // 2] = 0

    for odd, even in product(
        _compositions(m, tuple(odd_mins)), _compositions(m, tuple(even_mins))
    ):
        runs = [0] * parts
        runs[0::2] = odd
        runs[1::2] = even
        yield tuple(runs)


def _lengths(m: int) -> Iterator[tuple[int, int]]:
    for L in range(1, 2 * m + 1):
        for L_prime in (L, L + 1):
            if L_prime <= 2 * m:
                yield L, L_prime


def iter_b_pairs(m: int, *, relaxed: bool = False) -> Iterator[CompositionPair]:
    """
    Every run pair a walk on `B(2m)` can have. With `relaxed`, `s_L` and
    `t_1` may also be zero.

    ##### Examples #####

    ```python
    >>> [(p.s, p.t) for p in iter_b_pairs(1)]
    [((1, 1), (1, 1))]
    >>> strict = sum(1 for _ in iter_b_pairs(2))
    >>> strict, sum(1 for _ in iter_b_pairs(2, relaxed=True))
    (5, 15)

    ```
    """
    for L, L_prime in _lengths(m):
        for s in iter_alternating(m, L, zero_last=relaxed):
            for t in iter_alternating(m, L_prime, zero_first=relaxed):
                yield CompositionPair(s, t)


@cache
def b_size_weights(L: int, L_prime: int) -> np.ndarray:
    """
    `W[i-1, j-1]` is 1 when block `(i, j)` counts towards the critical set
    size.

    ##### Examples #####

    ```python
    >>> b_size_weights(3, 4)
    array([[0, 0, 1, 0],
           [1, 0, 0, 1],
           [0, 1, 0, 0]])

    ```
    """
    i = np.arange(1, L + 1)[:, None]
    j = np.arange(1, L_prime + 1)[None, :]
    odd = (i + j) % 2 == 1
    weights = ((i > j) & odd) | ((i < j) & ~odd)
    weights = weights.astype(np.int64)
    weights.flags.writeable = False
    return weights


def b_critical_size(pair: CompositionPair) -> int:
    weights = b_size_weights(pair.L, pair.L_prime)
    return int(np.array(pair.s) @ weights @ np.array(pair.t))


def b_critical_sizes(S: np.ndarray, T: np.ndarray) -> np.ndarray:
    """
    Sizes for every row of `S` against every row of `T` at once; `S` holds
    compositions of one length `L`, `T` of one length `L′`.

    ##### Examples #####

    ```python
    >>> b_critical_sizes(np.array([[1, 1, 1, 1]]), np.array([[1, 1, 1, 1]]))
    array([[6]])

    ```
    """
    S = np.atleast_2d(np.asarray(S, dtype=np.int64))
    T = np.atleast_2d(np.asarray(T, dtype=np.int64))
    return S @ b_size_weights(S.shape[1], T.shape[1]) @ T.T


def _group_maximum(
    m: int, L: int, L_prime: int, relaxed: bool
) -> tuple[int, list[CompositionPair]]:
    S = list(iter_alternating(m, L, zero_last=relaxed))
    T = list(iter_alternating(m, L_prime, zero_first=relaxed))
    if not S or not T:
        return -1, []
    sizes = b_critical_sizes(np.array(S), np.array(T))
    best = int(sizes.max())
    rows, cols = np.nonzero(sizes == best)
    return best, [CompositionPair(S[a], T[b]) for a, b in zip(rows, cols)]


def _maximum(
    m: int, relaxed: bool, threads: int
) -> tuple[int, list[CompositionPair]]:
    if m < 1:
        raise MatrixError(f"Expected m >= 1, given {m}")
    groups = list(_lengths(m))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            results = list(
                executor.map(
                    lambda lengths: _group_maximum(m, *lengths, relaxed),
                    groups,
                )
            )
    else:
        results = [_group_maximum(m, L, Lp, relaxed) for L, Lp in groups]

    best = max(size for size, _ in results)
    witnesses = [
        pair for size, pairs in results if size == best for pair in pairs
    ]
    _LOG.debug("B maximum", m=m, size=best, witnesses=len(witnesses))
    return best, witnesses


def b_max_critical(m: int, *, relaxed: bool = False, threads: int = 1) -> int:
    """
    The largest `b_critical_size` over `iter_b_pairs(m, relaxed=relaxed)`.
    Groups of equal lengths are evaluated as one matrix product each, on
    `threads` threads.
    """
    return _maximum(m, relaxed, threads)[0]


def b_maximizers(m: int, *, threads: int = 1) -> list[CompositionPair]:
    """
    ##### Examples #####

    ```python
    >>> witnesses = b_maximizers(2)
    >>> CompositionPair((1, 1, 1, 1), (1, 1, 1, 1)) in witnesses
    True
    >>> b_special_pair(2) in witnesses
    True

    ```
    """
    return _maximum(m, False, threads)[1]


def b_special_pair(m: int, k: int = 1) -> CompositionPair:
    """
    The odd-`L` maximizers: all runs 1 except `s_2k = 2`, with `L = 2m - 1`
    and `L′ = 2m`.

    ##### Examples #####

    ```python
    >>> b_special_pair(3, 2)
    CompositionPair(s=(1, 1, 1, 2, 1), t=(1, 1, 1, 1, 1, 1))
    >>> b_special_pair(3, 2).size
    15

    >>> b_special_pair(3, 3)
    Traceback (most recent call last):
        ...
    critsets.errors.MatrixError: Expected 1 <= k <= 2, given k=3

    ```
    """
    if m < 2:
        raise MatrixError(f"Expected m >= 2, given {m}")
    if not 1 <= k <= m - 1:
        raise MatrixError(f"Expected 1 <= k <= {m - 1}, given k={k}")
    s = [1] * (2 * m - 1)
    s[2 * k - 1] = 2
    return CompositionPair(tuple(s), (1,) * (2 * m))
