from typing import Any, TypeGuard, TypeVar
from typeguard import check_type, TypeCheckError

T = TypeVar("T")


def satisfies(value: Any, expected_type: type[T]) -> TypeGuard[T]:
    """
    Runtime check of `value` against a type hint, answered as a `bool` rather
    than by raising.

    ##### Examples #####

    ```python
    >>> satisfies([1, 2, 3], list[int])
    True

    >>> satisfies((1, "2"), tuple[int, int])
    False

    ```
    """
    try:
        check_type(value, expected_type)
    except TypeCheckError:
        return False
    return True
