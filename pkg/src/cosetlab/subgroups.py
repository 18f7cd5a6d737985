"""Generated subgroups and subgroup-lattice enumeration."""
from __future__ import annotations

import numpy as np

from ._bits import indices_to_int
from .exceptions import BudgetExceeded
from .sets import GroupSet, inverse_set, product_set

DEFAULT_MAX_SUBGROUPS = 50_000


def _closure(G, gens, seed_mask=None, within=None):
    """Mask of the subgroup generated by ``gens``, or None if it leaves ``within``.

    Breadth-first right multiplication from the identity; in a finite group
    this reaches every product of generators, inverses included.
    """
    n = G.order
    seen = np.zeros(n, dtype=bool) if seed_mask is None else seed_mask.copy()
    seen[0] = True
    gens = np.asarray(sorted(set(int(g) for g in gens)), dtype=np.int64)
    frontier = np.flatnonzero(seen)
    while frontier.size:
        cand = np.unique(G.table[np.ix_(frontier, gens)].ravel())
        new = cand[~seen[cand]]
        if within is not None and new.size and not within[new].all():
            return None
        seen[new] = True
        frontier = new
    return seen


def generated_subgroup(S: GroupSet) -> GroupSet:
    """Smallest subgroup containing ``S``."""
    if not S:
        raise ValueError("generated_subgroup needs a non-empty generating set")
    G = S.group
    return GroupSet.from_mask(G, _closure(G, S.indices))


def cyclic_subgroup(G, g) -> GroupSet:
    return GroupSet.from_mask(G, _closure(G, [g]))


def is_subgroup(X: GroupSet) -> bool:
    """Identity in X, closed under products and inverses."""
    return 0 in X and product_set(X, X) == X and inverse_set(X) == X


def enumerate_subgroups(G, within=None, max_subgroups=DEFAULT_MAX_SUBGROUPS):
    """All subgroups of ``G``, optionally only those contained in ``within``.

    Starts from the cyclic subgroups and closes the list under joining with a
    cyclic subgroup until nothing new appears; every subgroup is the join of
    its cyclic subgroups, so the fixpoint is complete. A join that escapes
    ``within`` is discarded at once, which is sound because every
    intermediate join of a subgroup inside ``within`` stays inside it.

    Returns GroupSets sorted by ``(card, elements)``. Raises
    :class:`BudgetExceeded` instead of returning a partial list.
    """
    n = G.order
    allowed = None
    if within is not None:
        allowed = within.mask
        if not allowed[0]:
            return []

    found = {}  # bits -> (mask, generators)
    cyclic = {}  # bits -> (mask, generator)
    candidates = range(n) if allowed is None else np.flatnonzero(allowed)
    for g in candidates:
        g = int(g)
        mask = _closure(G, [g], within=allowed)
        if mask is None:
            continue
        bits = indices_to_int(np.flatnonzero(mask), n)
        if bits not in cyclic:
            cyclic[bits] = (mask, g)
    for bits, (mask, g) in cyclic.items():
        found[bits] = (mask, (g,))
    if len(found) > max_subgroups:
        raise BudgetExceeded(f"more than {max_subgroups} subgroups")

    cyc_list = sorted(cyclic.values(), key=lambda mg: mg[1])
    queue = list(found)
    while queue:
        nxt = []
        for bits in queue:
            mask, gens = found[bits]
            for cmask, z in cyc_list:
                if mask[z]:
                    continue
                joined = _closure(G, gens + (z,), seed_mask=mask, within=allowed)
                if joined is None:
                    continue
                jbits = indices_to_int(np.flatnonzero(joined), n)
                if jbits in found:
                    continue
                found[jbits] = (joined, gens + (z,))
                nxt.append(jbits)
                if len(found) > max_subgroups:
                    raise BudgetExceeded(f"more than {max_subgroups} subgroups")
        queue = nxt
    subs = [GroupSet(G, bits) for bits in found]
    subs.sort(key=GroupSet.sort_key)
    return subs
