"""Coset structure of a set: subgroups inside ``A*A^-1`` (or ``A-A``) that
cover ``A`` with few cosets, the majority refinement of the transversal,
weakly normal representations and approximate stabilizers.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exceptions import BudgetExceeded, GroupMismatchError, NotAbelianError
from .growth import ruzsa_cover
from .sets import GroupSet, inverse_set, left_translate_bits, product_set, translate_set
from .stability import weak_normality_degree
from .subgroups import DEFAULT_MAX_SUBGROUPS, enumerate_subgroups, generated_subgroup, is_subgroup
from .synthesis import DEFAULT_MAX_COMPLEXITY, BoolExpr, boolean_synthesis


def as_fraction(value) -> Fraction:
    """Accept ``Fraction``, int, ``"p/q"`` strings or ``(p, q)`` pairs."""
    if isinstance(value, (tuple, list)):
        return Fraction(int(value[0]), int(value[1]))
    return Fraction(value)


@dataclass(frozen=True)
class CosetStructure:
    H: GroupSet
    C: tuple
    C_prime: tuple
    symdiff: int
    ratio_H: Fraction
    ratio_A: Fraction

    @property
    def cover_size(self):
        return len(self.C)


@dataclass(frozen=True)
class TheoremAResult:
    structures: tuple  # one per subgroup inside A*A^-1, in subgroup order
    pareto: tuple
    meeting_eps: tuple
    eps: Fraction
    empirical_n: int | None
    selected: CosetStructure | None  # fewest cosets among those meeting eps
    best_ratio: CosetStructure  # smallest ratio_H over non-trivial subgroups


@dataclass(frozen=True)
class CosetIntersection:
    H: GroupSet
    g: int
    size: int


@dataclass(frozen=True)
class RepresentationCert:
    r: int
    B_list: tuple
    C_list: tuple
    valid: bool
    degrees: tuple  # weak-normality degree of each B_j, then each C_i
    denotes_A: bool

    @property
    def k(self):
        return len(self.B_list)

    @property
    def l(self):
        return len(self.C_list)


@dataclass(frozen=True)
class TheoremBResult:
    cover: tuple  # (g, H) pairs in the order picked
    expressions: tuple  # BoolExpr per cover entry, None when unsynthesized
    difference_set: GroupSet

    @property
    def n(self):
        return len(self.cover)


@dataclass(frozen=True)
class Stabilizer:
    st: GroupSet
    generated: GroupSet
    delta: Fraction


def _coset_union(G, C, H):
    out = G.empty_set()
    for c in C:
        out = out | translate_set(c, H)
    return out


def refine_transversal(A: GroupSet, H: GroupSet, C) -> tuple:
    """Keep ``c`` exactly when ``A`` fills a strict majority of ``c*H``.

    Cosets are disjoint, so deciding each one separately minimises
    ``|A ^ C'*H|``; half-filled cosets are dropped.
    """
    G = A.group
    cosets = [translate_set(c, H) for c in C]
    if any(c not in A for c in C) or not A <= _coset_union(G, C, H):
        raise ValueError("C is not a transversal of A")
    return tuple(c for c, cH in zip(C, cosets) if 2 * (A & cH).card > H.card)


def coset_structure(A: GroupSet, H: GroupSet) -> CosetStructure:
    cover = ruzsa_cover(A, H)
    C_prime = refine_transversal(A, H, cover.C)
    sd = (A ^ _coset_union(A.group, C_prime, H)).card
    return CosetStructure(
        H=H,
        C=cover.C,
        C_prime=C_prime,
        symdiff=sd,
        ratio_H=Fraction(sd, H.card),
        ratio_A=Fraction(sd, A.card),
    )


def pareto_front(structures):
    """Structures not dominated in ``(cover_size, ratio_H)``."""
    out = []
    for s in structures:
        dominated = any(
            t.cover_size <= s.cover_size
            and t.ratio_H <= s.ratio_H
            and (t.cover_size < s.cover_size or t.ratio_H < s.ratio_H)
            for t in structures
        )
        if not dominated:
            out.append(s)
    out.sort(key=lambda s: (s.cover_size, s.ratio_H, s.H.sort_key()))
    return tuple(out)


def difference_set(A: GroupSet) -> GroupSet:
    """``A * A^-1`` (written ``A - A`` in abelian groups)."""
    return product_set(A, inverse_set(A))


def theorem_a_search(A: GroupSet, eps=1, max_subgroups=DEFAULT_MAX_SUBGROUPS) -> TheoremAResult:
    """Coset structure of ``A`` for every subgroup ``H`` inside ``A*A^-1``.

    Each ``H`` gets its Ruzsa cover ``C`` and majority refinement ``C'``.
    ``empirical_n`` is the fewest cosets among structures with
    ``|A ^ C'*H| < eps*|H|``.
    """
    if not A:
        raise ValueError("theorem_a_search needs a non-empty set")
    eps = as_fraction(eps)
    subs = enumerate_subgroups(A.group, within=difference_set(A), max_subgroups=max_subgroups)
    structures = tuple(coset_structure(A, H) for H in subs)
    meeting = tuple(s for s in structures if s.ratio_H < eps)
    selected = min(
        meeting, key=lambda s: (s.cover_size, s.ratio_H, -s.H.card, s.H.sort_key()), default=None
    )
    nontrivial = [s for s in structures if s.H.card > 1] or list(structures)
    best_ratio = min(nontrivial, key=lambda s: (s.ratio_H, s.cover_size, -s.H.card, s.H.sort_key()))
    return TheoremAResult(
        structures=structures,
        pareto=pareto_front(structures),
        meeting_eps=meeting,
        eps=eps,
        empirical_n=selected.cover_size if selected else None,
        selected=selected,
        best_ratio=best_ratio,
    )


def largest_coset_intersection(A: GroupSet, subgroups=None, max_subgroups=DEFAULT_MAX_SUBGROUPS):
    """For each subgroup ``H`` inside ``A*A^-1`` the left coset meeting ``A`` most.

    ``g`` is the smallest element of ``A`` in that coset; ties between
    cosets go to the smaller ``g``.
    """
    if subgroups is None:
        subgroups = enumerate_subgroups(A.group, within=difference_set(A), max_subgroups=max_subgroups)
    out = []
    for H in subgroups:
        best = None
        seen = set()
        for a in A:
            cH = translate_set(a, H)
            if cH.bits in seen:
                continue
            seen.add(cH.bits)
            size = (A & cH).card
            if best is None or size > best[1]:
                best = (a, size)
        out.append(CosetIntersection(H, best[0], best[1]))
    return out


def _require_abelian(G):
    if not G.is_abelian:
        raise NotAbelianError(f"{G.descriptor} is not abelian")


def wn_representation_verify(A: GroupSet, r: int, B_list, C_list=()) -> RepresentationCert:
    """Check ``A = (B_1 | ... | B_k) & ((G - C_1) | ... | (G - C_l))``
    with every ``B_j`` and ``C_i`` having weak-normality degree below ``r``.

    An empty ``C_list`` stands for the whole group in the second factor.
    """
    G = A.group
    _require_abelian(G)
    for S in list(B_list) + list(C_list):
        if S.group != G:
            raise GroupMismatchError("representation sets must live in the group of A")
    union_B = G.empty_set()
    for B in B_list:
        union_B = union_B | B
    if C_list:
        second = G.empty_set()
        for C in C_list:
            second = second | ~C
    else:
        second = G.full_set()
    denotes = (union_B & second) == A
    degrees = tuple(weak_normality_degree(S).degree for S in list(B_list) + list(C_list))
    valid = denotes and all(d <= r - 1 for d in degrees)
    return RepresentationCert(r, tuple(B_list), tuple(C_list), valid, degrees, denotes)


def theorem_b_search(
    A: GroupSet,
    max_complexity=DEFAULT_MAX_COMPLEXITY,
    containment="inside",
    max_subgroups=DEFAULT_MAX_SUBGROUPS,
    synthesize=True,
) -> TheoremBResult:
    """Greedy cover of ``A`` by cosets ``g+H`` with ``g`` in ``A`` and ``H`` inside ``A-A``.

    With ``containment="inside"`` only cosets contained in ``A`` are
    candidates, so the cover is exact; ``"any"`` allows every coset meeting
    ``A`` (the whole group then wins whenever it lies in ``A-A``). Each pick
    covers the most uncovered points, ties broken by larger ``H``, then
    smaller ``g``. The cover size is not guaranteed minimal.
    """
    G = A.group
    _require_abelian(G)
    if not A:
        raise ValueError("theorem_b_search needs a non-empty set")
    if containment not in ("inside", "any"):
        raise ValueError("containment must be 'inside' or 'any'")
    D = difference_set(A)
    subs = enumerate_subgroups(G, within=D, max_subgroups=max_subgroups)
    candidates = []
    for order, H in enumerate(subs):
        seen = set()
        for a in A:
            coset = translate_set(a, H)
            if coset.bits in seen:
                continue
            seen.add(coset.bits)
            if containment == "inside" and not coset <= A:
                continue
            candidates.append((a, order, H, coset.bits))

    uncovered = A.bits
    cover = []
    while uncovered:
        a, _, H, _ = max(
            candidates,
            key=lambda c: ((c[3] & uncovered).bit_count(), c[2].card, -c[0], -c[1]),
        )
        cover.append((a, H))
        uncovered &= ~translate_set(a, H).bits
    exprs = []
    cache = {}
    for _, H in cover:
        if not synthesize:
            exprs.append(None)
            continue
        if H.bits not in cache:
            try:
                cache[H.bits] = boolean_synthesis(H, A, max_complexity).expr
            except BudgetExceeded:
                cache[H.bits] = None
        exprs.append(cache[H.bits])
    _assert_theorem_b(A, D, cover)
    return TheoremBResult(tuple(cover), tuple(exprs), D)


def _assert_theorem_b(A, D, cover):
    covered = A.group.empty_set()
    for g, H in cover:
        if g not in A or not H <= D or not is_subgroup(H):
            raise AssertionError(f"invalid cover entry {(g, H)}")
        covered = covered | translate_set(g, H)
    if not A <= covered:
        raise AssertionError("cover does not contain A")


def approx_stabilizer(A: GroupSet, delta) -> Stabilizer:
    """``{g : |g*A & A| >= delta*|A|}`` and the subgroup it generates."""
    if not A:
        raise ValueError("approx_stabilizer needs a non-empty set")
    delta = as_fraction(delta)
    if not 0 < delta <= 1:
        raise ValueError("delta must lie in (0, 1]")
    threshold = delta * A.card
    st = [g for g, bits in enumerate(left_translate_bits(A)) if (bits & A.bits).bit_count() >= threshold]
    S = A.group.set(st)
    return Stabilizer(S, generated_subgroup(S), delta)


__all__ = [
    "BoolExpr",
    "CosetIntersection",
    "CosetStructure",
    "RepresentationCert",
    "Stabilizer",
    "TheoremAResult",
    "TheoremBResult",
    "approx_stabilizer",
    "as_fraction",
    "coset_structure",
    "difference_set",
    "largest_coset_intersection",
    "pareto_front",
    "refine_transversal",
    "theorem_a_search",
    "theorem_b_search",
    "wn_representation_verify",
]
