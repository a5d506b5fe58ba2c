"""
Named example matrices shipped with the package, each with the walk that
certifies its critical set.

Every fixture reads `data/<name>.txt`. Those with a hand written critical
set also ship `data/<name>_cs.txt`; for the rest the critical set is the one
the walk induces.

##### Examples #####

```python
>>> fixture_names()
('fig1', 'fig3', 'fig4', 'filly-left', 'filly-right', 'ookii', 'suprri',
    'tryagain')

>>> fig1 = load_fixture("fig1")
>>> fig1
<Fixture fig1 Λ(6,3) critical=14>
>>> print(fig1.critical_set)
..11..
.....1
00..11
0.0..1
.0.0..
0.0...

>>> all(
...     load_fixture(name).critical_set
...     == load_fixture(name).certificate.induced_set(load_fixture(name).matrix)
...     for name in fixture_names()
... )
True

>>> load_fixture("fig2")
Traceback (most recent call last):
    ...
KeyError: "No fixture named 'fig2'; known: 'fig1', 'fig3', 'fig4',
    'filly-left', 'filly-right', 'ookii', 'suprri', 'tryagain'"

```
"""

from __future__ import annotations
from dataclasses import dataclass
from functools import cache
from pathlib import Path
from typing import Any, Optional

from critsets.core import ClassSpec, PartialMatrix, parse_text
from critsets.log import get_logger
from critsets.walks import Walk, WalkCertificate

__all__ = ["Fixture", "DATA_DIR", "fixture_names", "fixture_path", "load_fixture"]

_LOG = get_logger(__name__)

DATA_DIR = Path(__file__).parent / "data"

# name -> (description, walk depths or `None` for the unit staircase)
_REGISTRY: dict[str, tuple[str, Optional[tuple[int, ...]]]] = {
    "fig1": ("critical set of size 14 in Λ(6,3)", (0, 1, 2, 3, 4, 6)),
    "filly-left": ("critical set of size 15 in Λ(6,3)", (0, 1, 2, 3, 4, 5)),
    "filly-right": ("critical set of size 26 in Λ(8,4)", None),
    "tryagain": ("M(20) in Λ(8,4)", (0, 0, 0, 0, 2, 3, 3, 4)),
    "ookii": ("X(8), the largest critical set of Λ(8,4)", None),
    "fig3": ("X(10), the largest critical set of Λ(10,5)", None),
    "fig4": ("Y(10), one less than X(10)", (0, 1, 2, 3, 4, 5, 6, 7, 8, 10)),
    "suprri": ("interleaved B(8) with the unit staircase", None),
}


@dataclass(frozen=True)
class Fixture:
    name: str
    description: str
    matrix: PartialMatrix
    certificate: WalkCertificate
    critical_set: PartialMatrix

    @property
    def spec(self) -> ClassSpec:
        return ClassSpec.of(self.matrix.margins)

    @property
    def walk(self) -> Walk:
        return self.certificate.walk

    def to_json_encodable(self) -> dict[str, Any]:
        return dict(
            name=self.name,
            description=self.description,
            matrix=self.matrix,
            certificate=self.certificate,
            criticalSet=self.critical_set,
        )

    def __repr__(self) -> str:
        return (
            f"<Fixture {self.name} {self.spec.label} "
            f"critical={self.critical_set.size}>"
        )


def fixture_names() -> tuple[str, ...]:
    return tuple(sorted(_REGISTRY))


def fixture_path(name: str, *, critical_set: bool = False) -> Path:
    """
    ##### Examples #####

    ```python
    >>> fixture_path("fig1", critical_set=True).name
    'fig1_cs.txt'

    ```
    """
    _check_name(name)
    return DATA_DIR / (f"{name}_cs.txt" if critical_set else f"{name}.txt")


def _check_name(name: str) -> None:
    if name not in _REGISTRY:
        known = ", ".join(repr(n) for n in fixture_names())
        raise KeyError(f"No fixture named {name!r}; known: {known}")


@cache
def load_fixture(name: str) -> Fixture:
    _check_name(name)
    description, depths = _REGISTRY[name]
    matrix = parse_text(fixture_path(name).read_text(encoding="utf-8"))

    walk = (
        Walk.staircase(matrix.rows)
        if depths is None
        else Walk(depths, matrix.rows)
    )
    certificate = WalkCertificate.of(matrix, walk)

    cs_path = fixture_path(name, critical_set=True)
    if cs_path.exists():
        critical_set = parse_text(cs_path.read_text(encoding="utf-8"))
    else:
        critical_set = certificate.induced_set(matrix)

    _LOG.debug("Loaded fixture", name=name, size=critical_set.size)
    return Fixture(name, description, matrix, certificate, critical_set)
