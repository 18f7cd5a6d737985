"""Growth of product sets, the normalised counting measure on ``B*B*B``,
Ruzsa covering, and the Plünnecke and bounded-exponent sanity checks.

All ratios are exact :class:`fractions.Fraction` values.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .exceptions import NotAbelianError
from .sets import GroupSet, inverse_set, product_set, translate_set
from .subgroups import generated_subgroup, is_subgroup


@dataclass(frozen=True)
class GrowthStats:
    set_card: int
    doubling: Fraction
    tripling: Fraction
    symmetrized_card: int
    triple_cube_card: int
    square_card: int
    cube_card: int


@dataclass(frozen=True)
class CheckResult:
    """Named pass/fail record with the exact values that decided it."""

    name: str
    passed: bool
    values: dict = field(default_factory=dict)
    flag: str = ""

    def __bool__(self):
        return self.passed


@dataclass(frozen=True)
class CoverResult:
    H: GroupSet
    C: tuple
    covered: GroupSet
    packing: tuple  # (|A*H|, |H|)

    @property
    def size(self):
        return len(self.C)


def _require_nonempty(A):
    if not A:
        raise ValueError("operation needs a non-empty set")


def growth_stats(A: GroupSet) -> GrowthStats:
    _require_nonempty(A)
    AA = product_set(A, A)
    AAA = product_set(AA, A)
    B = symmetrize(A)
    BBB = product_set(product_set(B, B), B)
    n = A.card
    return GrowthStats(
        set_card=n,
        doubling=Fraction(AA.card, n),
        tripling=Fraction(AAA.card, n),
        symmetrized_card=B.card,
        triple_cube_card=BBB.card,
        square_card=AA.card,
        cube_card=AAA.card,
    )


def symmetrize(A: GroupSet) -> GroupSet:
    """``A | A^-1 | {id}``."""
    return A | inverse_set(A) | A.group.set([0])


def triple_cube(A: GroupSet) -> GroupSet:
    B = symmetrize(A)
    return product_set(product_set(B, B), B)


def triple_cube_measure(X: GroupSet, A: GroupSet) -> Fraction:
    """``|X| / |B*B*B|`` for ``X`` inside ``B*B*B``, ``B = A | A^-1 | {id}``."""
    _require_nonempty(A)
    BBB = triple_cube(A)
    if not X <= BBB:
        raise ValueError("measured set must lie inside B*B*B")
    return Fraction(X.card, BBB.card)


def check_14k3(A: GroupSet) -> CheckResult:
    """``|B*B*B| <= 14 K^3 |A|`` and ``mu(A) >= 1/(14 K^3)`` with ``K`` the tripling."""
    st = growth_stats(A)
    K = st.tripling
    bound = 14 * K**3 * st.set_card
    mu = Fraction(st.set_card, st.triple_cube_card)
    floor = 1 / (14 * K**3)
    size_ok = st.triple_cube_card <= bound
    measure_ok = mu >= floor
    return CheckResult(
        "14k3",
        size_ok and measure_ok,
        {"K": K, "BBB": st.triple_cube_card, "bound": bound, "mu": mu, "mu_floor": floor},
    )


def _require_abelian(G):
    if not G.is_abelian:
        raise NotAbelianError(f"{G.descriptor} is not abelian")


def iterated_sumset(A: GroupSet, k: int, l: int) -> GroupSet:
    """``kA - lA`` in an abelian group."""
    _require_abelian(A.group)
    if k < 0 or l < 0 or k + l < 1:
        raise ValueError("need k, l >= 0 and k + l >= 1")
    G = A.group
    if not A:
        return A
    negA = inverse_set(A)
    out = G.set([0])
    for _ in range(k):
        out = product_set(out, A)
    for _ in range(l):
        out = product_set(out, negA)
    return out


def plunnecke_check(A: GroupSet, k: int, l: int) -> CheckResult:
    """``|kA - lA| <= K^(k+l) |A|`` with ``K`` the doubling of ``A``."""
    _require_abelian(A.group)
    K = growth_stats(A).doubling
    size = iterated_sumset(A, k, l).card
    bound = K ** (k + l) * A.card
    return CheckResult(f"plunnecke_{k}_{l}", size <= bound, {"K": K, "size": size, "bound": bound})


# r**K^4 is only ever compared against a subgroup order (at most the group
# order), so once the certified lower bound passes this many bits the check
# is settled without evaluating the power.
_ASTRONOMICAL_BITS = 4096
_EXACT_POWER_BITS = 1 << 20


def exponent_bound_check(A: GroupSet, r: int) -> CheckResult:
    """``|<A | {0}>| <= K^2 r^(K^4) |A|`` for abelian groups of exponent dividing ``r``.

    ``r^(K^4)`` is bracketed by ``r^floor(K^4)`` and ``r^ceil(K^4)``; the
    floor certifies a pass, the ceiling certifies a failure, and the narrow
    remaining case is decided by exact integer powers.
    """
    G = A.group
    _require_abelian(G)
    if r < 1 or r % G.exponent:
        raise ValueError(f"group exponent {G.exponent} does not divide {r}")
    _require_nonempty(A)
    K = growth_stats(A).doubling
    span = generated_subgroup(A | G.set([0])).card
    K4 = K**4
    lo_exp, hi_exp = math.floor(K4), math.ceil(K4)
    values = {"K": K, "span": span, "K4": K4}
    if r == 1:
        return CheckResult("exponent_bound", span <= K**2 * A.card, values)
    if lo_exp * math.log2(r) > _ASTRONOMICAL_BITS:
        return CheckResult("exponent_bound", True, values, flag="bound-astronomical")
    lower = K**2 * r**lo_exp * A.card
    values["bound_lower"] = lower
    if span <= lower:
        return CheckResult("exponent_bound", True, values)
    if span > K**2 * r**hi_exp * A.card:
        return CheckResult("exponent_bound", False, values)
    passed, flag = _ratio_within_power(Fraction(span) / (K**2 * A.card), r, K4)
    return CheckResult("exponent_bound", passed, values, flag=flag)


def _ratio_within_power(s: Fraction, r: int, e: Fraction):
    """Decide ``s <= r**e`` for rational ``e = p/q``: ``s**q <= r**p`` exactly
    while ``r**p`` stays below ``2**20`` bits, else by 60-digit logarithms."""
    p, q = e.numerator, e.denominator
    if p * math.log2(r) <= _EXACT_POWER_BITS:
        return s.numerator**q <= r**p * s.denominator**q, "exact-power"
    with mpmath.workdps(60):
        lhs = mpmath.log(s.numerator) - mpmath.log(s.denominator)
        rhs = mpmath.mpf(p) / q * mpmath.log(r)
        return bool(lhs <= rhs), "log-60-digits"


def ruzsa_cover(A: GroupSet, H: GroupSet) -> CoverResult:
    """Greedy transversal: scan ``A`` in index order, keep ``a`` unless ``a`` is in ``C*H``.

    The kept cosets ``c*H`` are pairwise disjoint, cover ``A`` and are
    exactly the left cosets of ``H`` meeting ``A``.
    """
    _require_nonempty(A)
    A._check(H)
    if not is_subgroup(H):
        raise ValueError("H is not a subgroup")
    G = A.group
    C = []
    covered = G.empty_set()
    for a in A:
        if a not in covered:
            C.append(a)
            covered = covered | translate_set(a, H)
    AH = product_set(A, H)
    return CoverResult(H=H, C=tuple(C), covered=covered, packing=(AH.card, H.card))


def left_cosets_meeting(A: GroupSet, H: GroupSet):
    """Distinct left cosets ``g*H`` that intersect ``A``, as GroupSets."""
    seen = {}
    for a in A:
        c = translate_set(a, H)
        seen.setdefault(c.bits, c)
    return list(seen.values())
