"""Ladders, weak normality and Sidon sets for the relation ``y*x in A``.

A ladder of height ``r`` is a pair of tuples ``a_1..a_r`` and ``b_1..b_r``
with ``b_j*a_i in A`` exactly when ``i <= j``. ``A`` is ``r``-stable when no
such ladder exists.

For a fixed ``b`` the points ``a`` with ``b*a in A`` form the left translate
``b^-1*A``, so a ladder is a chain of distinct translates ``R_1..R_r``
together with points ``a_i`` lying in ``R_i, ..., R_r`` and outside
``R_1, ..., R_{i-1}``. Left multiplication by any ``h`` maps ladders to
ladders, so the search may fix ``R_1 = A`` (that is ``b_1 = id``).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._bits import int_to_mask, iter_bits, rows_to_ints
from .exceptions import CosetLabError, NotAbelianError
from .sets import GroupSet, left_translate_bits, translate_set
from .subgroups import generated_subgroup

DEFAULT_LADDER_CAP = 8


@dataclass(frozen=True)
class LadderWitness:
    r: int
    a: tuple
    b: tuple

    def check(self, A: GroupSet):
        """Raise ValueError unless this witness is a valid ladder for ``A``."""
        T = A.group.table
        if len(self.a) != self.r or len(self.b) != self.r:
            raise ValueError("witness tuples must have length r")
        for i, ai in enumerate(self.a):
            for j, bj in enumerate(self.b):
                if (int(T[bj, ai]) in A) != (i <= j):
                    raise ValueError(f"ladder pattern fails at i={i + 1}, j={j + 1}")
        if len(set(self.a)) != self.r or len(set(self.b)) != self.r:
            raise ValueError("ladder entries must be pairwise distinct")


@dataclass(frozen=True)
class WeakNormality:
    degree: int
    point: int | None
    translates: tuple = ()  # (g, g*A) pairs through ``point``, one per distinct set
    flag: str = ""


@dataclass(frozen=True)
class SidonResult:
    is_sidon: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.is_sidon


@dataclass(frozen=True)
class StabilityProfile:
    max_ladder: int
    witness: LadderWitness | None
    wn_degree: int
    sidon: bool | None
    cap: int
    wn_point: int | None = None


@dataclass(frozen=True)
class Dichotomy:
    two_stable: bool
    two_wn: bool
    coset_or_empty: bool

    @property
    def consistent(self):
        return self.two_stable == self.two_wn == self.coset_or_empty


@dataclass
class _Rows:
    bits: list  # distinct translates b^-1*A in order of first b
    b: list
    through: list = field(default_factory=list)  # per point: bitmask of row ids


def _ladder_rows(A: GroupSet) -> _Rows:
    G = A.group
    trans = left_translate_bits(A)
    seen = {}
    bits, bs = [], []
    for b in range(G.order):
        R = trans[int(G.inverse[b])]
        if R not in seen:
            seen[R] = len(bits)
            bits.append(R)
            bs.append(b)
    mat = np.zeros((G.order, len(bits)), dtype=bool)
    for k, R in enumerate(bits):
        mat[int_to_mask(R, G.order), k] = True
    return _Rows(bits, bs, rows_to_ints(mat))


def ladder_search(A: GroupSet, r: int, cap: int = DEFAULT_LADDER_CAP) -> LadderWitness | None:
    """First ladder of height ``r`` in depth-first order, or None.

    Rows are distinct translates in order of their first ``b``; each new row
    must meet every current point pool ``S_i`` and leave the union of earlier
    rows. Pool points lying in too few eligible rows are discarded, which in
    turn discards rows, until a fixpoint.
    """
    if r < 1:
        raise ValueError("ladder height must be at least 1")
    if r > cap:
        raise ValueError(f"ladder height {r} exceeds cap {cap}")
    if not A:
        return None
    rows = _ladder_rows(A)
    through = rows.through
    start = rows.bits.index(A.bits)  # b = id gives the row A itself
    full = (1 << A.group.order) - 1

    def tighten(pools, union, need):
        # Every later row contains the eventual a_i of each pool, and a fresh
        # point outside ``union``; such points lie in >= need eligible rows.
        # Alternate pool and row filtering until nothing changes.
        pools = pools + [full & ~union]
        smallest = min(pools, key=int.bit_count)
        cand = 0
        for x in iter_bits(smallest):
            cand |= through[x]
        while True:
            if cand.bit_count() < need:
                return None
            kept = []
            for s in pools:
                good = 0
                for x in iter_bits(s):
                    if (through[x] & cand).bit_count() >= need:
                        good |= 1 << x
                if not good:
                    return None
                kept.append(good)
            pools = kept
            narrowed = 0
            for k in iter_bits(cand):
                R = rows.bits[k]
                if all(R & s for s in pools):
                    narrowed |= 1 << k
            if narrowed == cand:
                return pools, cand
            cand = narrowed

    def dfs(chain, pools, union):
        if len(chain) == r:
            return chain, pools
        tight = tighten(pools, union, r - len(chain))
        if tight is None:
            return None
        pools, cand = tight
        for k in iter_bits(cand):
            R = rows.bits[k]
            found = dfs(chain + [k], [s & R for s in pools], union | R)
            if found:
                return found
        return None

    A_bits = rows.bits[start]
    found = dfs([start], [A_bits], A_bits)
    if found is None:
        return None
    chain, pools = found
    a = tuple((s & -s).bit_length() - 1 for s in pools)
    b = tuple(rows.b[k] for k in chain)
    w = LadderWitness(r, a, b)
    w.check(A)
    return w


def max_ladder(A: GroupSet, cap: int = DEFAULT_LADDER_CAP):
    """Largest ``r <= cap`` admitting a ladder, with its witness.

    Ladders of height ``r`` contain ladders of every smaller height, so the
    ascending probe stops at the first failure.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    best, witness = 0, None
    for r in range(1, cap + 1):
        w = ladder_search(A, r, cap=cap)
        if w is None:
            break
        best, witness = r, w
    return best, witness


def weak_normality_degree(A: GroupSet) -> WeakNormality:
    """Largest number of distinct left translates ``g*A`` through one point.

    The family of translates is ``k``-weakly normal exactly when ``k``
    exceeds this degree.
    """
    G = A.group
    if not A:
        return WeakNormality(0, None, (), flag="empty")
    trans = left_translate_bits(A)
    first = {}
    for g, bits in enumerate(trans):
        first.setdefault(bits, g)
    distinct = list(first.items())
    mat = np.stack([int_to_mask(bits, G.order) for bits, _ in distinct])
    counts = mat.sum(axis=0)
    x = int(np.argmax(counts))
    through = tuple(
        (g, GroupSet(G, bits)) for bits, g in distinct if (bits >> x) & 1
    )
    return WeakNormality(int(counts[x]), x, through)


def is_sidon(A: GroupSet) -> SidonResult:
    """Whether ``a1 - a2 = a3 - a4`` in ``A`` forces ``a1 = a2`` or ``a1 = a3``.

    Differences of ordered pairs of distinct elements are scanned in
    descending order; a repeated difference gives the witness
    ``(a1, a2, a3, a4)`` with the earlier pair first.
    """
    G = A.group
    if not G.is_abelian:
        raise NotAbelianError(f"{G.descriptor} is not abelian")
    elems = sorted(A, reverse=True)
    diffs = {}
    for a1 in elems:
        for a2 in elems:
            if a1 == a2:
                continue
            d = int(G.table[a1, G.inverse[a2]])
            if d in diffs:
                a3, a4 = diffs[d]
                return SidonResult(False, (a3, a4, a1, a2))
            diffs[d] = (a1, a2)
    return SidonResult(True)


def is_coset_or_empty(A: GroupSet) -> bool:
    if not A:
        return True
    a = min(A)
    K = translate_set(A.group.inv(a), A)
    return generated_subgroup(K) == K


def classify_dichotomy(A: GroupSet, strict: bool = True) -> Dichotomy:
    """2-stability, 2-weak normality and being a coset, each computed separately.

    With ``strict`` a disagreement between the three raises, since they are
    equivalent for every subset of every group.
    """
    rec = Dichotomy(
        two_stable=ladder_search(A, 2, cap=max(2, DEFAULT_LADDER_CAP)) is None,
        two_wn=weak_normality_degree(A).degree <= 1,
        coset_or_empty=is_coset_or_empty(A),
    )
    if strict and not rec.consistent:
        raise CosetLabError(f"dichotomy violated for {A!r}: {rec}")
    return rec


def stability_profile(A: GroupSet, cap: int = DEFAULT_LADDER_CAP) -> StabilityProfile:
    height, witness = max_ladder(A, cap) if A else (0, None)
    wn = weak_normality_degree(A)
    sidon = is_sidon(A).is_sidon if A.group.is_abelian else None
    return StabilityProfile(height, witness, wn.degree, sidon, cap, wn.point)
