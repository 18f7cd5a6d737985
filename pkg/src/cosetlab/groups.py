"""Finite groups given by a Cayley table over element indices ``0..n-1``.

The identity is always index 0. Structured groups use a fixed indexing:

* ``cyclic:n``: index ``k`` is the residue ``k``.
* ``vector:p,d`` and ``product:G1+G2+...``: mixed radix with the first
  coordinate least significant, so ``(x0, x1)`` in ``vector:p,2`` is
  ``x0 + p*x1``.
* ``dihedral:n``: index ``k + n*e`` is ``rot**k * ref**e``.
* ``symmetric:m``: permutations of ``range(m)`` in lexicographic order,
  multiplied as ``(s*t)(i) = s(t(i))``.
"""
from __future__ import annotations

import hashlib
import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np

from .exceptions import GroupSpecError, OrderCapExceeded

DEFAULT_ORDER_CAP = 5040
EXHAUSTIVE_ASSOC_LIMIT = 512
ASSOC_SAMPLES = 100_000


@dataclass(frozen=True)
class TableCheck:
    """Outcome of :func:`validate_cayley_table`.

    ``axiom`` is one of ``"shape"``, ``"closure"``, ``"identity"``,
    ``"inverse"``, ``"associativity"`` when the table is rejected.
    """

    ok: bool
    axiom: str | None = None
    witness: tuple = ()
    message: str = ""

    def __bool__(self):
        return self.ok


def _index_dtype(n):
    return np.int16 if n <= np.iinfo(np.int16).max else np.int32


def validate_cayley_table(table, seed=0) -> TableCheck:
    """Check the group axioms on an ``n x n`` multiplication table.

    Axioms are tested in the order identity, inverses, associativity, and
    the first failure is reported with a witness. Associativity is checked
    on every triple up to order 512 and on a seeded sample above that.
    """
    try:
        t = np.asarray(table, dtype=np.int64)
    except (TypeError, ValueError):
        return TableCheck(False, "shape", (), "table is not a rectangular integer matrix")
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        return TableCheck(False, "shape", (), f"expected a non-empty square table, got shape {t.shape}")
    n = t.shape[0]
    bad = np.argwhere((t < 0) | (t >= n))
    if len(bad):
        a, b = (int(v) for v in bad[0])
        return TableCheck(False, "closure", (a, b), f"entry ({a},{b}) = {t[a, b]} outside [0,{n})")

    ar = np.arange(n)
    ident = [e for e in range(n) if np.array_equal(t[e], ar) and np.array_equal(t[:, e], ar)]
    if not ident:
        return TableCheck(False, "identity", (), "no two-sided identity element")
    e = ident[0]

    for x in range(n):
        right = np.flatnonzero(t[x] == e)
        if not any(t[y, x] == e for y in right):
            return TableCheck(False, "inverse", (x,), f"no inverse for element {x}")

    if n <= EXHAUSTIVE_ASSOC_LIMIT:
        for a in range(n):
            lhs = t[t[a]]
            rhs = t[a][t]
            diff = np.argwhere(lhs != rhs)
            if len(diff):
                b, c = (int(v) for v in diff[0])
                return TableCheck(False, "associativity", (a, b, c), f"({a}*{b})*{c} != {a}*({b}*{c})")
    else:
        rng = np.random.default_rng(seed)
        trip = rng.integers(0, n, size=(ASSOC_SAMPLES, 3))
        a, b, c = trip.T
        diff = np.flatnonzero(t[t[a, b], c] != t[a, t[b, c]])
        if len(diff):
            a0, b0, c0 = (int(v) for v in trip[diff[0]])
            return TableCheck(False, "associativity", (a0, b0, c0), f"({a0}*{b0})*{c0} != {a0}*({b0}*{c0})")
    return TableCheck(True)


class Group:
    """A finite group stored as a Cayley table with identity at index 0.

    Instances are immutable. Two groups compare equal when their tables
    are identical.
    """

    def __init__(self, table, kind="table", descriptor=None, labels=None):
        t = np.array(table, dtype=np.int64)
        n = t.shape[0]
        if n and not (np.array_equal(t[0], np.arange(n)) and np.array_equal(t[:, 0], np.arange(n))):
            raise GroupSpecError("index 0 must be the identity; use build_group or canonicalize_table")
        self.table = t.astype(_index_dtype(n))
        self.table.setflags(write=False)
        self.order = n
        self.kind = kind
        self.descriptor = descriptor or kind
        self.labels = labels
        inv = np.empty(n, dtype=np.int64)
        rows, cols = np.nonzero(t == 0)
        inv[rows] = cols
        self.inverse = inv.astype(self.table.dtype)
        self.inverse.setflags(write=False)
        self.fingerprint = hashlib.sha1(self.table.astype(np.int32).tobytes()).hexdigest()

    identity = 0

    def mul(self, a, b):
        return int(self.table[a, b])

    def inv(self, a):
        return int(self.inverse[a])

    def __len__(self):
        return self.order

    def __eq__(self, other):
        return isinstance(other, Group) and self.fingerprint == other.fingerprint

    def __hash__(self):
        return hash(self.fingerprint)

    def __repr__(self):
        return f"Group({self.descriptor!r}, order={self.order})"

    @cached_property
    def is_abelian(self):
        return bool(np.array_equal(self.table, self.table.T))

    @cached_property
    def exponent(self):
        orders = [self.element_order(g) for g in range(self.order)]
        return math.lcm(*orders)

    def element_order(self, g):
        k, x = 1, int(g)
        while x != 0:
            x = int(self.table[x, g])
            k += 1
        return k

    def label(self, g):
        return self.labels[g] if self.labels is not None else g

    # set constructors; imported lazily to keep sets.py importing groups.py
    def set(self, indices=()):
        from .sets import GroupSet

        return GroupSet.from_indices(self, indices)

    def full_set(self):
        from .sets import GroupSet

        return GroupSet(self, (1 << self.order) - 1)

    def empty_set(self):
        from .sets import GroupSet

        return GroupSet(self, 0)


def canonicalize_table(table):
    """Relabel a valid table so that its identity is index 0 (swap with 0)."""
    t = np.asarray(table, dtype=np.int64)
    n = t.shape[0]
    ar = np.arange(n)
    e = next(x for x in range(n) if np.array_equal(t[x], ar) and np.array_equal(t[:, x], ar))
    if e == 0:
        return t
    perm = ar.copy()
    perm[0], perm[e] = e, 0
    # perm is an involution, so it is its own inverse
    return perm[t[np.ix_(perm, perm)]]


def _cyclic_table(n):
    ar = np.arange(n)
    return (ar[:, None] + ar[None, :]) % n


def _dihedral_table(n):
    idx = np.arange(2 * n)
    k, e = idx % n, idx // n
    sign = np.where(e == 1, -1, 1)
    rot = (k[:, None] + sign[:, None] * k[None, :]) % n
    ref = e[:, None] ^ e[None, :]
    return rot + n * ref


def _symmetric_table(m):
    perms = np.array(list(itertools.permutations(range(m))), dtype=np.int64).reshape(-1, m)
    weights = m ** np.arange(m - 1, -1, -1, dtype=np.int64)
    keys = perms @ weights
    n = len(perms)
    table = np.empty((n, n), dtype=np.int64)
    for s in range(n):
        composed = perms[s][perms]  # row t holds s(t(i))
        table[s] = np.searchsorted(keys, composed @ weights)
    return table, [tuple(int(v) for v in p) for p in perms]


def _product_table(t1, t2):
    n1, n2 = len(t1), len(t2)
    idx = np.arange(n1 * n2)
    a1, a2 = idx % n1, idx // n1
    return t1[np.ix_(a1, a1)] + n1 * t2[np.ix_(a2, a2)]


def read_cayley_table(path):
    """Read a table file: first line ``n``, then ``n`` rows of ``n`` indices."""
    lines = [ln.split() for ln in Path(path).read_text().splitlines() if ln.strip()]
    try:
        n = int(lines[0][0])
        rows = [[int(v) for v in ln] for ln in lines[1:]]
    except (IndexError, ValueError) as exc:
        raise GroupSpecError(f"malformed Cayley table file {path}: {exc}") from None
    if len(lines[0]) != 1 or len(rows) != n or any(len(r) != n for r in rows):
        raise GroupSpecError(f"Cayley table file {path} does not hold {n} rows of {n} entries")
    return np.array(rows, dtype=np.int64).reshape(n, n)


def write_cayley_table(group_or_table, path):
    t = group_or_table.table if isinstance(group_or_table, Group) else np.asarray(group_or_table)
    lines = [str(len(t))] + [" ".join(str(int(v)) for v in row) for row in t]
    Path(path).write_text("\n".join(lines) + "\n")


def _ints(text, count, desc):
    try:
        vals = [int(v) for v in text.split(",")]
    except ValueError:
        raise GroupSpecError(f"expected {count} integer(s) in {desc!r}") from None
    if len(vals) != count:
        raise GroupSpecError(f"expected {count} integer(s) in {desc!r}")
    return vals


def _is_prime(p):
    return p >= 2 and all(p % q for q in range(2, math.isqrt(p) + 1))


def _raw_table(desc, cap):
    kind, sep, arg = desc.strip().partition(":")
    if not sep:
        raise GroupSpecError(f"group descriptor {desc!r} has no ':'")
    labels = None
    if kind == "cyclic":
        (n,) = _ints(arg, 1, desc)
        if n < 1:
            raise GroupSpecError("cyclic order must be positive")
        order = n
    elif kind == "vector":
        p, d = _ints(arg, 2, desc)
        if not _is_prime(p) or d < 1:
            raise GroupSpecError(f"vector:p,d needs p prime and d >= 1, got {desc!r}")
        order = p**d
    elif kind == "dihedral":
        (n,) = _ints(arg, 1, desc)
        if n < 1:
            raise GroupSpecError("dihedral parameter must be positive")
        order = 2 * n
    elif kind == "symmetric":
        (m,) = _ints(arg, 1, desc)
        if m < 1:
            raise GroupSpecError("symmetric degree must be positive")
        order = math.factorial(m)
    elif kind == "product":
        parts = [p for p in arg.split("+")]
        if len(parts) < 2 or not all(parts):
            raise GroupSpecError(f"product needs at least two factors: {desc!r}")
        order = 1
        tables = []
        for part in parts:
            sub, _ = _raw_table(part, cap)
            tables.append(sub)
            order *= len(sub)
            if order > cap:
                raise OrderCapExceeded(f"group order {order} exceeds cap {cap}")
        table = tables[0]
        for sub in tables[1:]:
            table = _product_table(table, sub)
        return table, None
    elif kind == "table":
        table = read_cayley_table(arg)
        if len(table) > cap:
            raise OrderCapExceeded(f"group order {len(table)} exceeds cap {cap}")
        check = validate_cayley_table(table)
        if not check:
            raise GroupSpecError(f"table {arg} is not a group: {check.message}")
        return canonicalize_table(table), None
    else:
        raise GroupSpecError(f"unknown group kind {kind!r}")

    if order > cap:
        raise OrderCapExceeded(f"group order {order} exceeds cap {cap}")
    if kind == "cyclic":
        table = _cyclic_table(n)
    elif kind == "vector":
        table = _cyclic_table(p)
        for _ in range(d - 1):
            table = _product_table(table, _cyclic_table(p))
    elif kind == "dihedral":
        table = _dihedral_table(n)
    else:
        table, labels = _symmetric_table(m)
    return table, labels


def build_group(descriptor, max_order=DEFAULT_ORDER_CAP) -> Group:
    """Build a group from a descriptor string such as ``"cyclic:12"``.

    Accepted forms: ``cyclic:n``, ``vector:p,d``, ``dihedral:n`` (order 2n),
    ``symmetric:m``, ``product:spec+spec[+...]`` and ``table:path``.
    """
    if isinstance(descriptor, Group):
        return descriptor
    table, labels = _raw_table(descriptor, max_order)
    check = validate_cayley_table(table)
    if not check:
        raise GroupSpecError(f"{descriptor!r} did not produce a group: {check.message}")
    kind = descriptor.strip().partition(":")[0]
    return Group(table, kind=kind, descriptor=descriptor.strip(), labels=labels)


def group_from_table(table, descriptor="table") -> Group:
    check = validate_cayley_table(table)
    if not check:
        raise GroupSpecError(f"not a group: {check.message}")
    return Group(canonicalize_table(table), kind="table", descriptor=descriptor)


def permutation_index(group, perm):
    """Index of a permutation (tuple of images) in a ``symmetric:m`` group."""
    if group.labels is None:
        raise GroupSpecError("group has no permutation labels")
    return group.labels.index(tuple(perm))

