"""
Smallest and largest critical sets of small matrices and classes.

For a matrix `M`, `scs(M)` and `lcs(M)` are the sizes of its smallest and
largest critical sets. Over a class, `scs` and `lcs` take the minimum and
maximum of those, while

    inf = max of scs(M)        sup = min of lcs(M)

over the members `M`.

Every defining set holds a walk-induced one, so critical sets are exactly
the walk-induced sets that are critical. `scs_of` searches row orders and
lets each column pick its best depth. `lcs_of` works through the distinct
walk-induced sets from the largest down. `scs_by_subsets` and
`lcs_by_subsets` get the same numbers by brute force over every subset of
the cells, for cross-checking at order 4.

##### Examples #####

```python
>>> X4 = PartialMatrix.from_rows(["1010", "0101", "1010", "0101"])
>>> scs_of(X4), lcs_of(X4)
(4, 6)
>>> scs_by_subsets(X4), lcs_by_subsets(X4)
(4, 6)

>>> report = class_report(ClassSpec.uniform(4, 2))
>>> report.scs, report.inf
(4, 4)
>>> 6 <= report.lcs <= 8, 5 <= report.sup <= 6
(True, True)
>>> report.verify()
True

>>> scs_of(PartialMatrix.empty(MarginSpec.uniform(9, 4)))
Traceback (most recent call last):
    ...
critsets.errors.GuardExceeded: scs_of supports order at most 8, given 9

```
"""

from __future__ import annotations
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cache
from itertools import permutations
from typing import Any, Iterator, Mapping, Optional

import numpy as np
from rich.console import Group
from rich.table import Table
from rich.text import Text

from critsets.completion import enumerate_completions
from critsets.core import ClassSpec, MarginSpec, PartialMatrix, render
from critsets.defsets import CertifiedCriticalSet, certify, is_critical
from critsets.defsets import is_critical_by_cycles
from critsets.errors import GuardExceeded, MatrixError
from critsets.log import LoggerProperty, get_logger
from critsets.walks import MAX_CERTIFICATE_ORDER, Walk, WalkCertificate
from critsets.walks import walk_certificates

__all__ = [
    "MAX_CLASS_ORDER",
    "MAX_SCS_ORDER",
    "MAX_LCS_ORDER",
    "Witness",
    "ExtremalReport",
    "enumerate_class",
    "orbit_key",
    "smallest_certificate",
    "scs_of",
    "largest_critical_set",
    "lcs_of",
    "critical_sets_of",
    "scs_by_subsets",
    "lcs_by_subsets",
    "class_report",
]

_LOG = get_logger(__name__)

MAX_CLASS_ORDER = 6
MAX_SCS_ORDER = 8
MAX_LCS_ORDER = min(4, MAX_CERTIFICATE_ORDER)

STATISTICS = ("scs", "inf", "sup", "lcs")


def _guard(what: str, M: PartialMatrix, max_order: int) -> None:
    order = max(M.shape)
    if order > max_order:
        raise GuardExceeded(what, order, max_order)


def _check_complete(M: PartialMatrix) -> None:
    if not M.is_complete():
        raise MatrixError("Expected a complete matrix")


@cache
def _row_orders(n: int) -> np.ndarray:
    orders = np.array(list(permutations(range(n))), dtype=np.intp).reshape(-1, n)
    orders.flags.writeable = False
    return orders


# Class enumeration
# ============================================================================


def _canonical_code(grid: np.ndarray) -> int:
    # Smallest sorted column code tuple over all row orders, packed into an
    # int with the first column most significant.
    n, m = grid.shape
    weights = np.int64(1) << np.arange(n, dtype=np.int64)
    codes = np.sort(
        (grid[_row_orders(n)].astype(np.int64) * weights[None, :, None]).sum(
            axis=1
        ),
        axis=1,
    )
    shifts = np.int64(1) << np.arange(n * (m - 1), -1, -n, dtype=np.int64)
    return int((codes * shifts[None, :]).sum(axis=1).min())


def orbit_key(M: PartialMatrix) -> int:
    """
    Equal for two complete matrices of a class exactly when one turns into
    the other by permuting rows and columns, transposing, and swapping Zeros
    with Ones, the last two only when they keep the margins.

    ##### Examples #####

    ```python
    >>> X4 = PartialMatrix.from_rows(["1010", "0101", "1010", "0101"])
    >>> ring = PartialMatrix.from_rows(["1100", "0110", "0011", "1001"])
    >>> orbit_key(X4) == orbit_key(X4.permute((2, 4, 1, 3), (3, 1, 2, 4)))
    True
    >>> orbit_key(X4) == orbit_key(ring)
    False

    ```
    """
    _check_complete(M)
    if M.rows == 0 or M.cols == 0:
        return 0
    grids = [M.grid]
    if M.margins.transpose() == M.margins:
        grids.append(M.grid.T)
    if M.margins.complement() == M.margins:
        grids.extend([1 - g for g in grids])
    return min(_canonical_code(g) for g in grids)


def enumerate_class(
    spec: ClassSpec, *, reduced: bool = False, threads: int = 1
) -> Iterator[PartialMatrix]:
    """
    Every member of `A(R,S)` once, in the completion engine's order. With
    `reduced`, only the first member of each `orbit_key` orbit.

    ##### Examples #####

    ```python
    >>> sum(1 for _ in enumerate_class(ClassSpec.uniform(2, 1)))
    2
    >>> sum(1 for _ in enumerate_class(ClassSpec.uniform(4, 2)))
    90
    >>> sum(1 for _ in enumerate_class(ClassSpec.uniform(4, 2), reduced=True))
    2

    >>> next(enumerate_class(ClassSpec.uniform(7, 3)))
    Traceback (most recent call last):
        ...
    critsets.errors.GuardExceeded: enumerate_class supports order at most 6,
        given 7

    ```
    """
    if spec.order > MAX_CLASS_ORDER:
        raise GuardExceeded("enumerate_class", spec.order, MAX_CLASS_ORDER)

    members = enumerate_completions(
        PartialMatrix.empty(spec.margins), threads=threads
    )
    if not reduced:
        yield from members
        return

    seen: set[int] = set()
    for M in members:
        key = orbit_key(M)
        if key not in seen:
            seen.add(key)
            yield M
    _LOG.debug("Reduced class", spec=spec.label, orbits=len(seen))


# Per-matrix statistics
# ============================================================================


def smallest_certificate(M: PartialMatrix) -> WalkCertificate:
    """
    A certificate inducing a smallest critical set of `M`.

    For a fixed row order a column can take any depth independently (the
    columns are sorted by depth afterwards), so each column takes its
    cheapest one: the Ones above plus the Zeros below.

    ##### Examples #####

    ```python
    >>> ring = PartialMatrix.from_rows(["1100", "0110", "0011", "1001"])
    >>> C = smallest_certificate(ring).induced_set(ring)
    >>> C.size, is_critical(ring, C)
    (4, True)

    ```
    """
    _guard("scs_of", M, MAX_SCS_ORDER)
    _check_complete(M)
    n, m = M.shape

    orders = _row_orders(n)
    ones = M.grid[orders].astype(np.int64)
    ones_above = np.concatenate(
        [np.zeros((len(orders), 1, m), dtype=np.int64), ones.cumsum(axis=1)],
        axis=1,
    )
    zeros_above = np.arange(n + 1)[None, :, None] - ones_above
    # cost[p, d, j]: column `j` at depth `d` under row order `p`
    cost = ones_above + (zeros_above[:, n:, :] - zeros_above)
    best_depths = cost.argmin(axis=1)
    totals = cost.min(axis=1).sum(axis=1)
    p = int(totals.argmin())

    row_perm = [0] * n
    for position, i in enumerate(orders[p], start=1):
        row_perm[i] = position
    depths = best_depths[p]
    col_order = sorted(range(m), key=lambda j: (depths[j], j))
    col_perm = [0] * m
    for position, j in enumerate(col_order, start=1):
        col_perm[j] = position
    return WalkCertificate(
        tuple(row_perm),
        tuple(col_perm),
        Walk(tuple(int(depths[j]) for j in col_order), n),
    )


def scs_of(M: PartialMatrix) -> int:
    return smallest_certificate(M).induced_set(M).size


def _is_critical_induced(
    M: PartialMatrix, certificate: WalkCertificate, C: PartialMatrix
) -> bool:
    return certificate.verify_handier(M) or is_critical_by_cycles(M, C)


def _induced_sets(
    M: PartialMatrix,
) -> list[tuple[PartialMatrix, WalkCertificate]]:
    _guard("lcs_of", M, MAX_LCS_ORDER)
    _check_complete(M)
    return [
        (certificate.induced_set(M), certificate)
        for certificate in walk_certificates(M, max_order=MAX_LCS_ORDER)
    ]


def largest_critical_set(M: PartialMatrix) -> CertifiedCriticalSet:
    """
    A largest critical set of `M`, with its certificate and cycles.

    ##### Examples #####

    ```python
    >>> I = PartialMatrix.from_rows(["10", "01"])
    >>> largest_critical_set(I)
    <CertifiedCriticalSet 2x2 size=1 certificate=yes cycles=1>

    ```
    """
    candidates = sorted(_induced_sets(M), key=lambda pair: -pair[0].size)
    for C, certificate in candidates:
        if _is_critical_induced(M, certificate, C):
            return certify(M, C, certificate)
    raise MatrixError(f"No critical set found for {M!r}")


def lcs_of(M: PartialMatrix) -> int:
    return largest_critical_set(M).size


def critical_sets_of(M: PartialMatrix) -> list[CertifiedCriticalSet]:
    """
    Every critical set of `M`, each once, largest first.

    ##### Examples #####

    ```python
    >>> I = PartialMatrix.from_rows(["10", "01"])
    >>> sorted(c.cells.cells()[0] for c in critical_sets_of(I))
    [(1, 1), (1, 2), (2, 1), (2, 2)]

    ```
    """
    found = [
        certify(M, C, certificate)
        for C, certificate in _induced_sets(M)
        if _is_critical_induced(M, certificate, C)
    ]
    return sorted(found, key=lambda ccs: -ccs.size)


# Subset oracle
# ============================================================================


def _subset_tables(M: PartialMatrix) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    # Bit `i * cols + j` of a subset stands for cell `(i + 1, j + 1)`. A
    # subset defines `M` iff it meets the difference with every other member.
    _guard("the subset oracle", M, MAX_LCS_ORDER)
    _check_complete(M)
    cells = M.rows * M.cols
    flat = M.grid.reshape(-1).astype(np.int64)
    bits = np.int64(1) << np.arange(cells, dtype=np.int64)

    subsets = np.arange(1 << cells, dtype=np.int64)
    defining = np.ones(len(subsets), dtype=bool)
    for N in enumerate_completions(PartialMatrix.empty(M.margins)):
        diff = int(bits[N.grid.reshape(-1).astype(np.int64) != flat].sum())
        if diff:
            defining &= (subsets & diff) != 0

    sizes = np.zeros(len(subsets), dtype=np.int64)
    critical = defining.copy()
    for b in range(cells):
        held = ((subsets >> b) & 1) == 1
        sizes += held
        critical &= ~(held & defining[subsets & ~bits[b]])
    return sizes, defining, critical


def scs_by_subsets(M: PartialMatrix) -> int:
    sizes, defining, _ = _subset_tables(M)
    return int(sizes[defining].min())


def lcs_by_subsets(M: PartialMatrix) -> int:
    sizes, _, critical = _subset_tables(M)
    return int(sizes[critical].max())


# Class reports
# ============================================================================


@dataclass(frozen=True)
class Witness:
    """A member of the class and one of its critical sets."""

    matrix: PartialMatrix
    critical_set: PartialMatrix

    @property
    def size(self) -> int:
        return self.critical_set.size

    def to_json_encodable(self) -> dict[str, Any]:
        return dict(
            size=self.size,
            matrix=self.matrix,
            criticalSet=self.critical_set,
        )


@dataclass(frozen=True)
class _MatrixStats:
    matrix: PartialMatrix
    smallest: PartialMatrix
    largest: Optional[PartialMatrix]


@dataclass(frozen=True)
class ExtremalReport:
    """
    `scs`, `inf`, `sup` and `lcs` of a class, each with a witness. `lcs` and
    `sup` are `None` above order `MAX_LCS_ORDER`. A report over a sample of
    the class is not `exact`: its `scs` and `lcs` are then only bounds.

    ##### Examples #####

    ```python
    >>> from critsets.lib.rich import capture_riches

    >>> report = class_report(ClassSpec.uniform(2, 1), reduced=False)
    >>> report
    <ExtremalReport Λ(2,1) scs=1 inf=1 sup=1 lcs=1 examined=2 exact>
    >>> "examined 2 members" in capture_riches(report)
    True

    ```
    """

    spec: ClassSpec
    scs: int
    inf: int
    sup: Optional[int]
    lcs: Optional[int]
    witnesses: Mapping[str, Witness]
    examined: int
    exact: bool = True

    def statistics(self) -> dict[str, Optional[int]]:
        return {name: getattr(self, name) for name in STATISTICS}

    def verify(self, *, threads: int = 1) -> bool:
        """Bounds hold and every witness re-verifies as critical."""
        if not self.scs <= self.inf:
            return False
        if self.lcs is not None and self.sup is not None:
            if not (self.sup <= self.lcs and self.scs <= self.lcs):
                return False
        for name, witness in self.witnesses.items():
            if witness.size != getattr(self, name):
                return False
            if not is_critical(
                witness.matrix, witness.critical_set, threads=threads
            ):
                return False
        return True

    def to_json_encodable(self) -> dict[str, Any]:
        return dict(
            spec=self.spec,
            **self.statistics(),
            witnesses=dict(self.witnesses),
            examined=self.examined,
            exact=self.exact,
        )

    def __repr__(self) -> str:
        stats = " ".join(
            f"{name}={value}"
            for name, value in self.statistics().items()
            if value is not None
        )
        return (
            f"<ExtremalReport {self.spec.label} {stats} "
            f"examined={self.examined} {'exact' if self.exact else 'sampled'}>"
        )

    def __rich__(self) -> Group:
        table = Table(title=f"Critical sets of {self.spec.label}")
        table.add_column("statistic", style="report.label")
        table.add_column("value", style="report.value", justify="right")
        table.add_column("witness")
        for name, value in self.statistics().items():
            if value is None:
                continue
            witness = self.witnesses.get(name)
            table.add_row(
                name,
                str(value),
                ""
                if witness is None
                else render(witness.matrix, marked=witness.critical_set),
            )
        note = "exact" if self.exact else "sampled"
        return Group(
            table, Text(f"examined {self.examined} members ({note})")
        )


class _ClassScan:
    _log = LoggerProperty()

    spec: ClassSpec
    with_lcs: bool

    def __init__(self, spec: ClassSpec, with_lcs: bool):
        self.spec = spec
        self.with_lcs = with_lcs

    def _critsets_self_(self) -> dict[str, object]:
        return dict(spec=self.spec.label, lcs=self.with_lcs)

    def stats(self, M: PartialMatrix) -> _MatrixStats:
        smallest = smallest_certificate(M).induced_set(M)
        largest = largest_critical_set(M).cells if self.with_lcs else None
        return _MatrixStats(M, smallest, largest)

    def run(
        self, members: list[PartialMatrix], exact: bool, threads: int
    ) -> ExtremalReport:
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as executor:
                results = list(executor.map(self.stats, members))
        else:
            results = [self.stats(M) for M in members]

        def pick(field: str, best) -> Witness:
            # First member in enumeration order wins ties
            chosen = best(results, key=lambda s: getattr(s, field).size)
            return Witness(chosen.matrix, getattr(chosen, field))

        witnesses = {
            "scs": pick("smallest", min),
            "inf": pick("smallest", max),
        }
        if self.with_lcs:
            witnesses["sup"] = pick("largest", min)
            witnesses["lcs"] = pick("largest", max)

        report = ExtremalReport(
            spec=self.spec,
            scs=witnesses["scs"].size,
            inf=witnesses["inf"].size,
            sup=witnesses["sup"].size if self.with_lcs else None,
            lcs=witnesses["lcs"].size if self.with_lcs else None,
            witnesses=witnesses,
            examined=len(results),
            exact=exact,
        )
        self._log.info("Scanned class", **report.statistics())
        return report


def class_report(
    spec: ClassSpec,
    *,
    lcs: Optional[bool] = None,
    reduced: bool = True,
    sample: Optional[int] = None,
    seed: Optional[int] = None,
    threads: int = 1,
) -> ExtremalReport:
    """
    Scan the class. `lcs` defaults to on up to order `MAX_LCS_ORDER`;
    `reduced` scans one member per orbit, which leaves every statistic
    unchanged. `sample` scans that many members drawn with `seed`, for spot
    checks at order 6.

    ##### Examples #####

    ```python
    >>> class_report(ClassSpec.uniform(4, 1)).scs >= 1
    True

    >>> class_report(ClassSpec.uniform(6, 3), lcs=True)
    Traceback (most recent call last):
        ...
    critsets.errors.GuardExceeded: lcs_of supports order at most 4, given 6

    >>> spot = class_report(ClassSpec.uniform(4, 2), sample=3, seed=7)
    >>> spot.examined, spot.exact
    (3, False)

    ```
    """
    if spec.order > MAX_CLASS_ORDER:
        raise GuardExceeded("class_report", spec.order, MAX_CLASS_ORDER)
    if lcs is None:
        lcs = spec.order <= MAX_LCS_ORDER
    elif lcs and spec.order > MAX_LCS_ORDER:
        raise GuardExceeded("lcs_of", spec.order, MAX_LCS_ORDER)

    if sample is not None and sample < 1:
        raise ValueError(f"Expected sample >= 1, given {sample}")

    exact = True
    if sample is not None:
        # Sampling draws from the full class, not from orbit representatives
        members = list(enumerate_class(spec, threads=threads))
        if sample < len(members):
            rng = np.random.default_rng(seed)
            picks = sorted(
                rng.choice(len(members), size=sample, replace=False)
            )
            members = [members[int(k)] for k in picks]
            exact = False
    else:
        members = list(enumerate_class(spec, reduced=reduced, threads=threads))

    if not members:
        raise MatrixError(f"The class {spec.label} is empty")
    return _ClassScan(spec, lcs).run(members, exact, threads)
