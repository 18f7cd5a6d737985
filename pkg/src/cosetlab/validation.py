"""Input checks shared by the estimator wrappers."""
from __future__ import annotations

from collections.abc import Iterable

import numpy as np

from .exceptions import NotAbelianError
from .sets import GroupSet


def check_groupset(X, *, allow_empty=False, abelian=False) -> GroupSet:
    if not isinstance(X, GroupSet):
        raise TypeError(f"expected a GroupSet, got {type(X).__name__}")
    if not allow_empty and not X:
        raise ValueError("expected a non-empty set")
    if abelian and not X.group.is_abelian:
        raise NotAbelianError(f"{X.group.descriptor} is not abelian")
    return X


def check_groupsets(X, **kwargs) -> list:
    if isinstance(X, GroupSet) or not isinstance(X, Iterable):
        raise TypeError("expected a sequence of GroupSets")
    return [check_groupset(x, **kwargs) for x in X]


def check_elements(elements, group) -> np.ndarray:
    """Element indices as an int array, validated against ``group``."""
    idx = np.asarray(elements, dtype=np.int64).ravel()
    if idx.size and (idx.min() < 0 or idx.max() >= group.order):
        raise ValueError(f"element index outside group of order {group.order}")
    return idx
