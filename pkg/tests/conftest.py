"""Brute-force oracles shared by the test modules.

Each oracle works from the raw Cayley table and Python sets, never from
the bitset helpers it is used to check.
"""
import itertools
import random

import pytest
from hypothesis import settings

from cosetlab.groups import build_group

settings.register_profile("lab", max_examples=60, deadline=None, derandomize=True)
settings.load_profile("lab")

SMALL_GROUPS = ("cyclic:1", "cyclic:6", "cyclic:8", "vector:2,2", "vector:2,3", "symmetric:3", "dihedral:4",
                "vector:3,2", "cyclic:10", "product:cyclic:2+cyclic:4")


@pytest.fixture(scope="session")
def groups():
    cache = {}

    def get(desc):
        if desc not in cache:
            cache[desc] = build_group(desc)
        return cache[desc]

    return get


def elems(A):
    return {int(x) for x in A.indices}


def mul(G, a, b):
    return int(G.table[a, b])


def inv(G, a):
    return next(x for x in range(G.order) if G.table[a, x] == 0)


def brute_product(G, X, Y):
    return {mul(G, x, y) for x in X for y in Y}


def brute_subgroups(G):
    """Every subset containing the identity and closed under products."""
    n = G.order
    out = []
    rest = list(range(1, n))
    for r in range(n):
        for combo in itertools.combinations(rest, r):
            S = {0, *combo}
            if all(mul(G, a, b) in S for a in S for b in S):
                out.append(frozenset(S))
    return out


def brute_ladder_exists(G, A, r):
    """Search b-tuples directly; each a_i is then an independent existence check."""
    A = set(A)
    n = G.order
    for bs in itertools.permutations(range(n), r):
        if all(
            any(all((mul(G, bj, a) in A) == (i <= j) for j, bj in enumerate(bs)) for a in range(n))
            for i in range(r)
        ):
            return True
    return False


def brute_max_ladder(G, A, cap):
    best = 0
    for r in range(1, cap + 1):
        if not brute_ladder_exists(G, A, r):
            break
        best = r
    return best


def brute_wn_degree(G, A):
    translates = {frozenset(mul(G, g, a) for a in A) for g in range(G.order)}
    return max((sum(x in T for T in translates) for x in range(G.order)), default=0)


def brute_is_sidon(G, A):
    for a1, a2, a3, a4 in itertools.product(A, repeat=4):
        if mul(G, a1, inv(G, a2)) == mul(G, a3, inv(G, a4)) and a1 != a2 and a1 != a3:
            return False
    return True


def brute_is_coset(G, A):
    A = set(A)
    if not A:
        return True
    for g in range(G.order):
        H = {mul(G, inv(G, g), a) for a in A}
        if 0 in H and all(mul(G, x, y) in H for x in H for y in H):
            return True
    return False


def brute_cosets_meeting(G, A, H):
    cosets = {frozenset(mul(G, g, h) for h in H) for g in range(G.order)}
    return [c for c in cosets if c & set(A)]


def brute_min_complexity(G, A, target, max_c):
    """Smallest atom count over every expression tree, no deduplication."""
    A = set(A)
    n = G.order
    full = frozenset(range(n))
    atoms = []
    for g in range(n):
        S = frozenset(mul(G, g, a) for a in A)
        atoms += [S, full - S]
    target = frozenset(target)
    by_c = {1: atoms}
    if target in atoms:
        return 1
    for c in range(2, max_c + 1):
        level = []
        for i in range(1, c):
            for x in by_c[i]:
                for y in by_c[c - i]:
                    level += [x | y, x & y]
        if target in level:
            return c
        by_c[c] = list(set(level))
    return None


def seeded(seed):
    return random.Random(seed)
