"""Seeded instance generators.

Randomness comes from :class:`random.Random` (Mersenne Twister MT19937)
seeded with the instance seed; only ``random()``, ``randrange``, ``shuffle``
and ``sample`` are used, whose output for integer seeds is fixed across
platforms and Python versions since 3.2.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction

from .exceptions import GeneratorError
from .groups import DEFAULT_ORDER_CAP, build_group
from .sets import GroupSet, parse_set_literal, translate_set
from .subgroups import generated_subgroup

SEED_LIMIT = 1 << 64


@dataclass(frozen=True)
class PlantedCosets:
    """A union of left cosets ``t*H`` with ``noise`` elements toggled."""

    A: GroupSet
    exact: GroupSet
    H: GroupSet
    translates: tuple
    noise: int


def _rng(seed):
    if not 0 <= seed < SEED_LIMIT:
        raise GeneratorError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return random.Random(seed)


def _vector_params(group):
    if group.kind != "vector":
        raise GeneratorError(f"generator needs a vector:p,d group, got {group.descriptor}")
    p, d = (int(v) for v in group.descriptor.partition(":")[2].split(","))
    return p, d


def cross(group, p):
    gp, d = _vector_params(group)
    if d != 2 or gp != p:
        raise GeneratorError(f"cross({p}) needs vector:{p},2, got {group.descriptor}")
    return group.set([x for x in range(p)] + [p * y for y in range(p)])


def _rank_gf2(vectors):
    basis = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def subspace_plus_points(group, dim, k, rng):
    """Span of the first ``dim`` basis vectors plus ``k`` points independent modulo it."""
    p, d = _vector_params(group)
    if p != 2:
        raise GeneratorError("subspace_plus_points needs vector:2,d")
    if dim < 0 or k < 0 or dim + k > d:
        raise GeneratorError(f"need dim + k <= {d}, got dim={dim}, k={k}")
    sub = list(range(1 << dim))
    points = []
    while len(points) < k:
        v = rng.randrange(1 << d)
        if _rank_gf2([q >> dim for q in points + [v]]) == len(points) + 1:
            points.append(v)
    return group.set(sub + points)


def sidon_greedy(group, size, rng):
    """Scan the elements in a seeded random order, keeping each that preserves the Sidon property."""
    if not group.is_abelian:
        raise GeneratorError("sidon_greedy needs an abelian group")
    T, inv = group.table, group.inverse
    order = list(range(group.order))
    rng.shuffle(order)
    chosen, diffs = [], set()
    for x in order:
        new = []
        for s in chosen:
            new.append(int(T[x, inv[s]]))
            new.append(int(T[s, inv[x]]))
        if len(set(new)) == len(new) and not diffs.intersection(new) and 0 not in new:
            chosen.append(x)
            diffs.update(new)
            if len(chosen) == size:
                return group.set(chosen)
    if size == 0:
        return group.empty_set()
    raise GeneratorError(f"no Sidon set of size {size} found in {group.descriptor} (reached {len(chosen)})")


def plant_cosets(group, H_gens, translates=None, k=None, noise=0, rng=None) -> PlantedCosets:
    """Union of distinct left cosets of ``<H_gens>`` with ``noise`` random elements toggled.

    Either ``translates`` are given, or ``k`` cosets are drawn at random.
    """
    rng = rng or random.Random(0)
    H = generated_subgroup(group.set(H_gens)) if H_gens else group.set([0])
    if translates is None:
        if k is None:
            raise GeneratorError("coset_union needs translates or a coset count")
        order = list(range(group.order))
        rng.shuffle(order)
        translates, covered = [], group.empty_set()
        for g in order:
            if len(translates) == k:
                break
            if g not in covered:
                translates.append(g)
                covered = covered | translate_set(g, H)
        if len(translates) < k:
            raise GeneratorError(f"only {len(translates)} cosets of H exist, asked for {k}")
    exact = group.empty_set()
    for t in translates:
        if not 0 <= t < group.order:
            raise GeneratorError(f"translate {t} outside the group")
        exact = exact | translate_set(t, H)
    if noise < 0 or noise > group.order:
        raise GeneratorError(f"noise count {noise} out of range")
    flips = rng.sample(range(group.order), noise)
    A = exact ^ group.set(flips)
    return PlantedCosets(A, exact, H, tuple(translates), noise)


def interval(group, length):
    if group.kind != "cyclic":
        raise GeneratorError("interval needs a cyclic group")
    if not 0 <= length <= group.order:
        raise GeneratorError(f"interval length {length} out of range")
    return group.set(range(length))


def random_subset(group, density, rng):
    density = Fraction(density)
    if not 0 <= density <= 1:
        raise GeneratorError("density must lie in [0, 1]")
    return group.set([g for g in range(group.order) if rng.random() < density])


_CALL = re.compile(r"\s*(\w+)\s*\((.*)\)\s*$")


def _int_list(text):
    text = text.strip()
    return [int(v) for v in text.split(",")] if text else []


def parse_generator(text):
    """Split ``"name(args)"`` into ``(name, positional, keyword)``.

    Keyword form uses ``;`` between ``key=value`` items, e.g.
    ``coset_union(H=8;T=0,1;noise=0)``.
    """
    m = _CALL.match(text)
    if not m:
        raise GeneratorError(f"malformed generator spec {text!r}")
    name, inner = m.group(1), m.group(2).strip()
    if "=" in inner:
        kw = {}
        for item in inner.split(";"):
            key, sep, val = item.partition("=")
            if not sep:
                raise GeneratorError(f"expected key=value in {text!r}")
            kw[key.strip()] = val.strip()
        return name, [], kw
    return name, [a.strip() for a in inner.split(",")] if inner else [], {}


def generate(spec: str, group, seed: int = 0) -> GroupSet:
    """Deterministic set from a generator descriptor such as ``"cross(3)"``."""
    rng = _rng(seed)
    name, args, kw = parse_generator(spec)
    try:
        if name == "cross":
            return cross(group, int(args[0]))
        if name == "subspace_plus_points":
            return subspace_plus_points(group, int(args[0]), int(args[1]), rng)
        if name == "sidon_greedy":
            return sidon_greedy(group, int(args[0]), rng)
        if name == "interval":
            return interval(group, int(args[0]))
        if name == "random":
            return random_subset(group, args[0], rng)
        if name == "coset_union":
            unknown = set(kw) - {"H", "T", "k", "noise"}
            if unknown:
                raise GeneratorError(f"unknown coset_union keys {sorted(unknown)}")
            return plant_cosets(
                group,
                _int_list(kw.get("H", "")),
                translates=_int_list(kw["T"]) if "T" in kw else None,
                k=int(kw["k"]) if "k" in kw else None,
                noise=int(kw.get("noise", 0)),
                rng=rng,
            ).A
    except (IndexError, ValueError) as exc:
        if isinstance(exc, GeneratorError):
            raise
        raise GeneratorError(f"bad arguments in {spec!r}: {exc}") from None
    raise GeneratorError(f"unknown generator {name!r}")


@dataclass(frozen=True)
class InstanceSpec:
    group: str
    set: str
    seed: int = 0

    def resolve(self, max_order=DEFAULT_ORDER_CAP):
        G = build_group(self.group, max_order=max_order)
        if self.set.startswith("gen:"):
            return G, generate(self.set[4:], G, self.seed)
        return G, parse_set_literal(G, self.set)
