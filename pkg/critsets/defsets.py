"""
Defining and critical sets.

A partial matrix `D ⊆ M` is _defining_ for `M` when `M` is its only
completion, and _critical_ when it is defining but no proper subset is.

Defining sets are closed upwards: when `D ⊆ D′ ⊆ M`, every completion of
`D′` completes `D`, so `D′` has at most as many completions. Hence a
defining `D` is critical as soon as every `D ∖ {e}` fails to define `M`,
and a single greedy sweep of removals (`minimize_to_critical`) already ends
on a critical set: a cell that could not go once can never go later, since
later sets are smaller.

##### Examples #####

```python
>>> from critsets.fixtures import load_fixture

>>> fig1 = load_fixture("fig1")
>>> M, C = fig1.matrix, fig1.critical_set
>>> is_defining(M, C), is_critical(M, C)
(True, True)
>>> is_critical(M, M)
False
>>> is_defining(M, M.emptied())
False

>>> is_critical_by_cycles(M, C)
True

>>> D = complement_defining(M, CertifiedCriticalSet(M, C, fig1.certificate))
>>> D.size, is_defining(M, D)
(16, True)
>>> set(D.cells()) & set(C.cells())
set()

>>> is_defining(M, complement_of(M, C))
True

```
"""

from __future__ import annotations
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Optional, Sequence

from critsets.completion import CompletionBudget, count_completions
from critsets.core import PartialMatrix
from critsets.errors import CertificateError, MatrixError
from critsets.log import get_logger
from critsets.trades import Cycle, find_cycle_through
from critsets.typings import Cell
from critsets.walks import (
    WalkCertificate,
    block_structure,
    complement_walk,
    normalize,
    search_walk_certificate,
)

__all__ = [
    "CertifiedCriticalSet",
    "is_defining",
    "is_critical",
    "is_critical_by_cycles",
    "minimize_to_critical",
    "certify",
    "complement_defining",
    "complement_of",
]

_LOG = get_logger(__name__)


@dataclass(frozen=True)
class CertifiedCriticalSet:
    """
    A critical set `cells` of `matrix`, optionally carrying the walk
    certificate that induces it and, for every cell, a cycle of `matrix`
    meeting `cells` in that cell only. Together those two prove criticality
    without counting completions.

    ##### Examples #####

    ```python
    >>> M = PartialMatrix.from_rows(["10", "01"])
    >>> certified = certify(M, M.restricted_to([(1, 1)]))
    >>> certified
    <CertifiedCriticalSet 2x2 size=1 certificate=yes cycles=1>
    >>> certified.verify()
    True

    >>> CertifiedCriticalSet(M, M.restricted_to([(1, 1)])).verify()
    True
    >>> CertifiedCriticalSet(M, M).verify()
    False

    ```
    """

    matrix: PartialMatrix
    cells: PartialMatrix
    certificate: Optional[WalkCertificate] = None
    cycles: Optional[Mapping[Cell, Cycle]] = field(default=None, compare=False)

    @property
    def size(self) -> int:
        return self.cells.size

    @property
    def is_certified(self) -> bool:
        return self.certificate is not None and self.cycles is not None

    def verify(self, *, threads: int = 1) -> bool:
        """
        Re-check criticality: through the certificate and cycles when both
        are present, by counting completions otherwise.
        """
        if not self.cells.subset_of(self.matrix):
            return False
        if not self.is_certified:
            return is_critical(self.matrix, self.cells, threads=threads)

        if not self.certificate.induced_set(self.matrix).subset_of(self.cells):
            return False
        filled = set(self.cells.cells())
        if set(self.cycles) != filled:
            return False
        for cell, cycle in self.cycles.items():
            if not cycle.body.subset_of(self.matrix):
                return False
            if set(cycle.cells()) & filled != {cell}:
                return False
        return True

    def to_json_encodable(self) -> dict[str, Any]:
        dct: dict[str, Any] = dict(
            matrix=self.matrix,
            size=self.size,
            triples=[list(t) for t in self.cells.triples()],
        )
        if self.certificate is not None:
            dct["certificate"] = self.certificate
        if self.cycles is not None:
            dct["cycles"] = [
                dict(cell=list(cell), cycle=[list(c) for c in cycle.order])
                for cell, cycle in sorted(self.cycles.items())
            ]
        return dct

    def __repr__(self) -> str:
        cycles = "none" if self.cycles is None else len(self.cycles)
        return (
            f"<CertifiedCriticalSet {self.matrix.rows}x{self.matrix.cols} "
            f"size={self.size} "
            f"certificate={'no' if self.certificate is None else 'yes'} "
            f"cycles={cycles}>"
        )


def _check_pair(M: PartialMatrix, D: PartialMatrix) -> None:
    if not M.is_complete():
        raise MatrixError("Expected a complete matrix")
    if not D.subset_of(M):
        raise MatrixError("Expected the set to be contained in the matrix")


def _defines(D: PartialMatrix, node_cap: Optional[int]) -> bool:
    return count_completions(D, CompletionBudget(2, node_cap)) == 1


def is_defining(
    M: PartialMatrix, D: PartialMatrix, *, node_cap: Optional[int] = None
) -> bool:
    """
    ##### Examples #####

    ```python
    >>> M = PartialMatrix.from_rows(["10", "01"])
    >>> is_defining(M, M.restricted_to([(2, 1)]))
    True
    >>> is_defining(M, PartialMatrix.from_rows(["01", "10"]))
    Traceback (most recent call last):
        ...
    critsets.errors.MatrixError: Expected the set to be contained in the
        matrix

    ```
    """
    _check_pair(M, D)
    return _defines(D, node_cap)


def is_critical(
    M: PartialMatrix,
    D: PartialMatrix,
    *,
    node_cap: Optional[int] = None,
    threads: int = 1,
) -> bool:
    """
    Defining, and no single cell can be dropped. With `threads > 1` the
    removals are tested in parallel.

    ##### Examples #####

    ```python
    >>> from critsets.fixtures import load_fixture

    >>> left = load_fixture("filly-left")
    >>> is_critical(left.matrix, left.critical_set, threads=4)
    True
    >>> C = left.critical_set
    >>> is_critical(left.matrix, C.without_cell(*C.cells()[0]))
    False

    ```
    """
    _check_pair(M, D)
    if not _defines(D, node_cap):
        return False

    def removable(cell: Cell) -> bool:
        return _defines(D.without_cell(*cell), node_cap)

    cells = D.cells()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            return not any(executor.map(removable, cells))
    return not any(removable(cell) for cell in cells)


def is_critical_by_cycles(M: PartialMatrix, C: PartialMatrix) -> bool:
    """
    Criticality without completion counts: `C` meets every cycle of `M`
    (it has a walk certificate), and every cell of `C` lies on a cycle of
    `M` that misses the rest of `C`.

    ##### Examples #####

    ```python
    >>> X4 = PartialMatrix.from_rows(["1010", "0101", "1010", "0101"])
    >>> is_critical_by_cycles(X4, X4.restricted_to(X4.cells_with(0)))
    False
    >>> is_critical_by_cycles(X4, X4.restricted_to([(1, 1), (3, 3), (2, 4)]))
    False

    ```
    """
    _check_pair(M, C)
    if search_walk_certificate(M, C) is None:
        return False
    return all(find_cycle_through(M, C, cell) is not None for cell in C.cells())


def certify(
    M: PartialMatrix,
    C: PartialMatrix,
    certificate: Optional[WalkCertificate] = None,
) -> CertifiedCriticalSet:
    """
    Attach an exact walk certificate and one cycle per cell to the critical
    set `C`, raising `CertificateError` when either is missing (then `C` is
    not critical). A given `certificate` must induce exactly `C`; otherwise
    one is searched for.

    ##### Examples #####

    ```python
    >>> X4 = PartialMatrix.from_rows(["1010", "0101", "1010", "0101"])
    >>> certify(X4, X4)
    Traceback (most recent call last):
        ...
    critsets.errors.CertificateError: No walk induces exactly the set

    ```
    """
    _check_pair(M, C)
    if certificate is not None:
        if certificate.induced_set(M) != C:
            raise CertificateError("The certificate does not induce the set")
    else:
        certificate = search_walk_certificate(M, C, exact=True)
    if certificate is None:
        if search_walk_certificate(M, C) is None:
            raise CertificateError("The set is not defining")
        raise CertificateError("No walk induces exactly the set")

    cycles: dict[Cell, Cycle] = {}
    for cell in C.cells():
        cycle = find_cycle_through(M, C, cell)
        if cycle is None:
            raise CertificateError(
                "No cycle of the matrix meets the set in "
                f"({cell[0]},{cell[1]}) alone"
            )
        cycles[cell] = cycle
    return CertifiedCriticalSet(M, C, certificate, cycles)


def minimize_to_critical(
    M: PartialMatrix,
    D: PartialMatrix,
    removal_order: Optional[Iterable[Sequence[int]]] = None,
    *,
    node_cap: Optional[int] = None,
    threads: int = 1,
    restrict: bool = False,
) -> CertifiedCriticalSet:
    """
    Drop the cells of the defining set `D`, in `removal_order`, whenever the
    rest still defines `M`. Cells of `D` missing from `removal_order` are
    tried afterwards in row-major order, or kept as they are with
    `restrict`; the default is row-major throughout.

    With `threads > 1`, the next `threads` candidates are tested together
    and the earliest removable one is taken, so the result does not depend
    on `threads`. With `restrict` the result is critical only when each
    kept cell outside `removal_order` is needed.

    ##### Examples #####

    ```python
    >>> X4 = PartialMatrix.from_rows(["1010", "0101", "1010", "0101"])
    >>> zeros = X4.restricted_to(X4.cells_with(0))
    >>> C = minimize_to_critical(X4, zeros)
    >>> C.size >= 4, C.cells.subset_of(zeros), is_critical(X4, C.cells)
    (True, True, True)
    >>> minimize_to_critical(X4, zeros, threads=3).cells == C.cells
    True

    >>> minimize_to_critical(X4, C.cells).cells == C.cells
    True

    >>> minimize_to_critical(X4, zeros, [], restrict=True).cells == zeros
    True

    >>> minimize_to_critical(X4, X4.restricted_to([(1, 1)]))
    Traceback (most recent call last):
        ...
    critsets.errors.MatrixError: Expected a defining set, the given set of
        size 1 is not

    ```
    """
    _check_pair(M, D)
    if not _defines(D, node_cap):
        raise MatrixError(
            f"Expected a defining set, the given set of size {D.size} is not"
        )

    filled = set(D.cells())
    order: list[Cell] = []
    for cell in [] if removal_order is None else removal_order:
        cell = (int(cell[0]), int(cell[1]))
        if cell in filled and cell not in order:
            order.append(cell)
    if not restrict:
        order.extend(cell for cell in D.cells() if cell not in order)

    # Subsets of a non-defining set do not define, so a kept cell stays needed
    current = D
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            k = 0
            while k < len(order):
                window = order[k : k + threads]
                results = executor.map(
                    lambda cell, base=current: _defines(
                        base.without_cell(*cell), node_cap
                    ),
                    window,
                )
                for offset, ok in enumerate(list(results)):
                    if ok:
                        current = current.without_cell(*window[offset])
                        k += offset + 1
                        break
                else:
                    k += len(window)
    else:
        for cell in order:
            candidate = current.without_cell(*cell)
            if _defines(candidate, node_cap):
                current = candidate

    _LOG.debug("Minimized", start=D.size, end=current.size)
    return CertifiedCriticalSet(
        M, current, search_walk_certificate(M, current, exact=True)
    )


def complement_defining(
    M: PartialMatrix, C: CertifiedCriticalSet
) -> PartialMatrix:
    """
    A defining set of `M` disjoint from the critical set `C`: the Ones
    below and the Zeros above the complement walk of `C`'s certificate,
    where every block of the walk is pushed down by one block row.

    ##### Examples #####

    ```python
    >>> X4 = PartialMatrix.from_rows(["1010", "0101", "1010", "0101"])
    >>> from critsets.walks import Walk
    >>> staircase = WalkCertificate.of(X4, Walk.staircase(4))
    >>> C = staircase.induced_set(X4)
    >>> D = complement_defining(X4, CertifiedCriticalSet(X4, C, staircase))
    >>> D.size <= 10, is_defining(X4, D), set(D.cells()) & set(C.cells())
    (True, True, set())

    >>> complement_defining(X4, CertifiedCriticalSet(X4, C))
    Traceback (most recent call last):
        ...
    critsets.errors.CertificateError: A walk certificate is required

    ```
    """
    if C.certificate is None:
        raise CertificateError("A walk certificate is required")
    _check_pair(M, C.cells)

    certificate = C.certificate
    if not certificate.walk.starts_east:
        N, normal = normalize(M, certificate)
        D = complement_defining(
            N, CertifiedCriticalSet(N, C.cells.transpose().complement(), normal)
        )
        return D.transpose().complement()

    W = complement_walk(block_structure(certificate.walk))
    shifted = WalkCertificate(certificate.row_perm, certificate.col_perm, W)
    D = shifted.induced_set(M.complement()).complement()
    if set(D.cells()) & set(C.cells.cells()):
        raise CertificateError(
            "The complement walk set meets the critical set; the certificate "
            "does not come from a critical set"
        )
    return D


def complement_of(M: PartialMatrix, C: PartialMatrix) -> PartialMatrix:
    """
    `M ∖ C`, which is defining whenever `C` is critical.

    ##### Examples #####

    ```python
    >>> M = PartialMatrix.from_rows(["10", "01"])
    >>> complement_of(M, M.restricted_to([(1, 1)])).triples()
    ((1, 2, 0), (2, 1, 0), (2, 2, 1))

    ```
    """
    _check_pair(M, C)
    return M.difference(C)
