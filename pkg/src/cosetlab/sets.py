"""Subsets of a finite group as dense bit vectors, and their set algebra."""
from __future__ import annotations

from functools import cached_property

import numpy as np

from ._bits import indices_to_int, int_to_indices, int_to_mask, iter_bits, rows_to_ints
from .exceptions import GroupMismatchError


class GroupSet:
    """An immutable subset of ``group`` held as a Python integer bit vector.

    Supports ``|``, ``&``, ``^``, ``-`` and ``~`` (complement in the group),
    ``<=`` for inclusion, membership tests and iteration in index order.
    """

    __slots__ = ("group", "bits", "__dict__")

    def __init__(self, group, bits):
        if bits < 0 or bits >> group.order:
            raise ValueError("bit vector has bits outside the group")
        self.group = group
        self.bits = int(bits)

    @classmethod
    def from_indices(cls, group, indices):
        idx = np.asarray(list(indices) if not isinstance(indices, np.ndarray) else indices, dtype=np.int64)
        if idx.size and (idx.min() < 0 or idx.max() >= group.order):
            raise ValueError(f"element index out of range for group of order {group.order}")
        return cls(group, indices_to_int(idx, group.order) if idx.size else 0)

    @classmethod
    def from_mask(cls, group, mask):
        from ._bits import mask_to_int

        return cls(group, mask_to_int(mask))

    @cached_property
    def card(self):
        return self.bits.bit_count()

    @cached_property
    def indices(self):
        out = int_to_indices(self.bits, self.group.order)
        out.setflags(write=False)
        return out

    @property
    def mask(self):
        return int_to_mask(self.bits, self.group.order)

    def __len__(self):
        return self.card

    def __bool__(self):
        return self.bits != 0

    def __iter__(self):
        return iter_bits(self.bits)

    def __contains__(self, g):
        return 0 <= g < self.group.order and (self.bits >> g) & 1 == 1

    def __eq__(self, other):
        if not isinstance(other, GroupSet):
            return NotImplemented
        return self.bits == other.bits and self.group == other.group

    def __hash__(self):
        return hash((self.group.fingerprint, self.bits))

    def _check(self, other):
        if not isinstance(other, GroupSet):
            raise TypeError(f"expected GroupSet, got {type(other).__name__}")
        if other.group is not self.group and other.group != self.group:
            raise GroupMismatchError(f"sets belong to different groups: {self.group!r} vs {other.group!r}")

    def __or__(self, other):
        self._check(other)
        return GroupSet(self.group, self.bits | other.bits)

    def __and__(self, other):
        self._check(other)
        return GroupSet(self.group, self.bits & other.bits)

    def __xor__(self, other):
        self._check(other)
        return GroupSet(self.group, self.bits ^ other.bits)

    def __sub__(self, other):
        self._check(other)
        return GroupSet(self.group, self.bits & ~other.bits)

    def __invert__(self):
        return GroupSet(self.group, ((1 << self.group.order) - 1) ^ self.bits)

    def __le__(self, other):
        self._check(other)
        return self.bits & ~other.bits == 0

    def __ge__(self, other):
        return other <= self

    def sort_key(self):
        """Deterministic set ordering: by cardinality, then sorted elements."""
        return (self.card, tuple(int(i) for i in self.indices))

    def to_list(self):
        return [int(i) for i in self.indices]

    def literal(self):
        return ",".join(str(i) for i in self.to_list())

    def __repr__(self):
        return f"GroupSet({self.group.descriptor}, {{{self.literal()}}})"


def parse_set_literal(group, text) -> GroupSet:
    """Parse ``"0,1,6,7"`` (empty string or ``"{}"`` for the empty set)."""
    body = text.strip().strip("{}").strip()
    if not body:
        return group.empty_set()
    try:
        idx = [int(tok) for tok in body.split(",")]
    except ValueError:
        raise ValueError(f"set literal must be comma-separated integers: {text!r}") from None
    return GroupSet.from_indices(group, idx)


def _same_group(X, Y):
    X._check(Y)


def product_set(X: GroupSet, Y: GroupSet) -> GroupSet:
    """``{x*y : x in X, y in Y}``."""
    _same_group(X, Y)
    G = X.group
    if not X or not Y:
        return G.empty_set()
    prods = G.table[np.ix_(X.indices, Y.indices)]
    return GroupSet(G, indices_to_int(prods.ravel(), G.order))


def inverse_set(X: GroupSet) -> GroupSet:
    G = X.group
    if not X:
        return X
    return GroupSet(G, indices_to_int(G.inverse[X.indices], G.order))


def translate_set(g, X: GroupSet, side="left") -> GroupSet:
    """``g*X`` for ``side="left"``, ``X*g`` for ``side="right"``."""
    G = X.group
    if not 0 <= g < G.order:
        raise ValueError(f"element {g} not in group of order {G.order}")
    if not X:
        return X
    if side == "left":
        out = G.table[g, X.indices]
    elif side == "right":
        out = G.table[X.indices, g]
    else:
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    return GroupSet(G, indices_to_int(out, G.order))


def set_algebra(op, X: GroupSet, Y: GroupSet | None = None) -> GroupSet:
    """Apply ``union``, ``intersect``, ``symdiff``, ``difference`` or ``complement``."""
    if op == "complement":
        if Y is not None:
            raise ValueError("complement takes a single operand")
        return ~X
    if Y is None:
        raise ValueError(f"{op} needs two operands")
    ops = {
        "union": GroupSet.__or__,
        "intersect": GroupSet.__and__,
        "symdiff": GroupSet.__xor__,
        "difference": GroupSet.__sub__,
    }
    try:
        return ops[op](X, Y)
    except KeyError:
        raise ValueError(f"unknown set operation {op!r}") from None


def left_translate_bits(A: GroupSet):
    """Bit vectors of ``g*A`` for every ``g``, indexed by ``g``."""
    G = A.group
    n = G.order
    mat = np.zeros((n, n), dtype=bool)
    if A:
        cols = G.table[:, A.indices]
        mat[np.arange(n)[:, None], cols] = True
    return rows_to_ints(mat)
