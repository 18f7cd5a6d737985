"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the lines are written
straight to the terminal so they survive output capturing.
"""
import itertools
import random
import time
from fractions import Fraction

import pytest

from cosetlab.cli import main
from cosetlab.generators import cross, plant_cosets, random_subset, sidon_greedy
from cosetlab.groups import build_group
from cosetlab.growth import check_14k3, exponent_bound_check, growth_stats, plunnecke_check, ruzsa_cover
from cosetlab.sets import GroupSet, translate_set
from cosetlab.stability import classify_dichotomy, max_ladder, weak_normality_degree
from cosetlab.structure import coset_structure, theorem_a_search, theorem_b_search
from cosetlab.subgroups import enumerate_subgroups

from conftest import brute_cosets_meeting, brute_product, elems, inv

CORPUS = ("cyclic:12", "cyclic:20", "cyclic:31", "vector:2,4", "vector:3,2", "symmetric:3", "symmetric:4",
          "dihedral:6", "dihedral:10", "product:cyclic:2+cyclic:6", "vector:2,5", "cyclic:48", "symmetric:5")
DENSITIES = ("1/10", "1/5", "1/3", "1/2", "2/3")
# proving that no 8-ladder exists is slow for sparse subsets of S5
SPARSE_LIMITED = {"symmetric:5": ("1/3", "1/2", "2/3")}

_groups = {}


def group(desc):
    if desc not in _groups:
        _groups[desc] = build_group(desc)
    return _groups[desc]


def corpus_sets(count, seed, names=CORPUS):
    rng = random.Random(seed)
    out = []
    i = 0
    while len(out) < count:
        desc = names[i % len(names)]
        dens = rng.choice(SPARSE_LIMITED.get(desc, DENSITIES))
        A = random_subset(group(desc), dens, random.Random(seed * 100_003 + i))
        i += 1
        if A:
            out.append(A)
    return out


@pytest.fixture
def verdict(capsys):
    def emit(num, title, ok, detail=""):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {num}: {title}" + (f" ({detail})" if detail else ""))
        assert ok, f"criterion {num} failed: {detail}"

    return emit


def test_c01_cross_ratio(verdict):
    t0 = time.perf_counter()
    bad = []
    for p in (3, 5, 7, 11, 13):
        A = cross(group(f"vector:{p},2"), p)
        got = growth_stats(A).doubling
        by_hand = Fraction(len(brute_product(A.group, elems(A), elems(A))), len(elems(A)))
        if not (got == by_hand == Fraction(p * p, 2 * p - 1)):
            bad.append((p, got))
    dt = time.perf_counter() - t0
    verdict(1, "cross doubling equals p^2/(2p-1)", not bad and dt < 1, f"{dt:.2f}s, mismatches={bad}")


def test_c02_dichotomy_exhaustive(verdict):
    t0 = time.perf_counter()
    descs = [f"cyclic:{n}" for n in range(1, 11)] + ["vector:2,3", "symmetric:3"]
    checked, bad = 0, []
    for d in descs:
        G = group(d)
        for bits in range(1 << G.order):
            rec = classify_dichotomy(GroupSet(G, bits), strict=False)
            checked += 1
            if not rec.consistent:
                bad.append((d, bits))
    dt = time.perf_counter() - t0
    verdict(2, "2-stable == 2-weakly normal == coset or empty", not bad and dt < 300,
            f"{checked} subsets, {dt:.1f}s, inconsistent={bad[:5]}")


def test_c03_weak_normality_bounds_ladder(verdict):
    bad = []
    sets = corpus_sets(500, seed=3)
    for A in sets:
        m, w = max_ladder(A, cap=8)
        if w is not None:
            w.check(A)
        if m > weak_normality_degree(A).degree:
            bad.append(A)
    verdict(3, "max_ladder <= wn_degree", not bad, f"{len(sets)} sets, violations={len(bad)}")


def test_c04_sidon_suite(verdict):
    G = group("cyclic:101")
    bad, n = [], 0
    for s in range(3, 7):
        for seed in range(25):
            A = sidon_greedy(G, s, random.Random(seed))
            n += 1
            if max_ladder(A, cap=8)[0] != 2 or weak_normality_degree(A).degree < s:
                bad.append(A)
    verdict(4, "Sidon sets have max_ladder 2 and wn_degree >= |A|", not bad, f"{n} sets, violations={bad[:3]}")


def test_c05_ruzsa_cover(verdict):
    rng = random.Random(5)
    names = ("cyclic:12", "cyclic:20", "vector:2,4", "vector:3,2", "symmetric:3", "symmetric:4", "dihedral:6",
             "product:cyclic:2+cyclic:6", "cyclic:48")
    bad = []
    for i in range(200):
        G = group(names[i % len(names)])
        H = rng.choice(enumerate_subgroups(G))
        A = random_subset(G, rng.choice(DENSITIES), rng) or G.set([rng.randrange(G.order)])
        res = ruzsa_cover(A, H)
        cosets = [set(elems(translate_set(c, H))) for c in res.C]
        union = set().union(*cosets)
        ok = (
            elems(A) <= union
            and sum(map(len, cosets)) == len(union)
            and all(c in A for c in res.C)
            and res.size == len(brute_cosets_meeting(G, elems(A), elems(H)))
        )
        if not ok:
            bad.append((G.descriptor, A.to_list(), H.to_list()))
    verdict(5, "Ruzsa cover: containment, disjointness, c in A, exact coset count", not bad,
            f"200 pairs, violations={len(bad)}")


def test_c06_14k3(verdict):
    bad = []
    for A in corpus_sets(500, seed=6):
        res = check_14k3(A)
        G = A.group
        B = elems(A) | {inv(G, a) for a in elems(A)} | {0}
        BBB = brute_product(G, brute_product(G, B, B), B)
        K = Fraction(len(brute_product(G, brute_product(G, elems(A), elems(A)), elems(A))), A.card)
        by_hand = len(BBB) <= 14 * K**3 * A.card and Fraction(A.card, len(BBB)) >= 1 / (14 * K**3)
        if not res.passed or not by_hand or res.values["BBB"] != len(BBB):
            bad.append((G.descriptor, A.to_list()))
    verdict(6, "|BBB| <= 14K^3|A| and mu(A) >= 1/(14K^3)", not bad, f"500 sets, violations={len(bad)}")


# groups of order <= 128 whose subgroup lattices stay small
PLANT_GROUPS = ("cyclic:120", "cyclic:96", "cyclic:128", "vector:5,3", "vector:3,4", "dihedral:30",
                "symmetric:4", "product:cyclic:4+cyclic:24", "product:cyclic:6+cyclic:12", "dihedral:32")


def _plant(G, H, k, rng, noise):
    """k distinct left cosets of H; the identity coset is always planted in non-abelian groups."""
    reps, covered = [], G.empty_set()
    order = list(range(G.order))
    rng.shuffle(order)
    if not G.is_abelian:
        order.remove(0)
        order.insert(0, 0)
    for g in order:
        if len(reps) == k:
            break
        if g not in covered:
            reps.append(g)
            covered = covered | translate_set(g, H)
    return plant_cosets(G, H.to_list(), translates=reps, noise=noise, rng=rng)


def _structure_instances():
    rng = random.Random(7)
    exact, noisy = [], []
    for i in range(100):
        G = group(PLANT_GROUPS[i % len(PLANT_GROUPS)])
        subs = [H for H in enumerate_subgroups(G) if 1 < H.card <= G.order // 2]
        H = rng.choice(subs)
        k = rng.randint(1, min(4, G.order // H.card))
        exact.append(_plant(G, H, k, rng, 0))
    for i in range(50):
        G = group(PLANT_GROUPS[i % len(PLANT_GROUPS)])
        subs = [H for H in enumerate_subgroups(G) if 20 <= H.card <= G.order // 2]
        if not subs:
            continue
        H = rng.choice(subs)
        k = rng.randint(1, min(3, G.order // H.card))
        noisy.append(_plant(G, H, k, rng, k * (H.card // 20)))
    return exact, noisy


_cache = {}


def structure_instances():
    if "inst" not in _cache:
        _cache["inst"] = _structure_instances()
    return _cache["inst"]


def test_c07_planted_recovery(verdict):
    t0 = time.perf_counter()
    exact, noisy = structure_instances()
    bad_exact, bad_noisy = [], []
    for p in exact:
        res = theorem_a_search(p.A)
        _cache.setdefault("results", []).append((p.A, res))
        if not any(s.symdiff == 0 and s.cover_size == len(p.translates) for s in res.structures):
            bad_exact.append((p.A.group.descriptor, p.H.card, p.translates))
    for p in noisy:
        res = theorem_a_search(p.A)
        _cache["results"].append((p.A, res))
        if res.best_ratio.symdiff > 2 * p.noise:
            bad_noisy.append((p.A.group.descriptor, p.H.card, p.noise, res.best_ratio.H.card, res.best_ratio.symdiff))
    dt = time.perf_counter() - t0
    verdict(7, "planted coset unions recovered", not bad_exact and not bad_noisy and dt < 600,
            f"{len(exact)} exact, {len(noisy)} noisy, {dt:.1f}s, exact misses={bad_exact[:3]}, "
            f"noisy misses={bad_noisy[:3]}")


def _min_symdiff(A, cosets):
    best = [A.card + sum(c.bit_count() for c in cosets)]

    def walk(i, union):
        if i == len(cosets):
            best[0] = min(best[0], (A.bits ^ union).bit_count())
            return
        walk(i + 1, union)
        walk(i + 1, union | cosets[i])

    walk(0, 0)
    return best[0]


def test_c08_refinement_optimal(verdict):
    if "results" not in _cache:
        exact, noisy = structure_instances()
        _cache["results"] = [(p.A, theorem_a_search(p.A)) for p in exact + noisy]
    pairs = [(A, s) for A, res in _cache["results"] for s in res.structures]
    rng = random.Random(8)
    for i in range(200):
        G = group(CORPUS[i % 10])
        A = random_subset(G, rng.choice(DENSITIES), rng) or G.set([0])
        pairs.append((A, coset_structure(A, rng.choice(enumerate_subgroups(G)))))
    checked, bad = 0, []
    for A, s in pairs:
        if s.cover_size > 12:
            continue
        checked += 1
        if s.symdiff != _min_symdiff(A, [translate_set(c, s.H).bits for c in s.C]):
            bad.append((A.group.descriptor, A.to_list(), s.H.to_list()))
    verdict(8, "majority refinement attains the minimum over all sub-lists", not bad and checked > 0,
            f"{checked} structures with |C| <= 12, violations={len(bad)}")


def test_c09_cover_of_cross(verdict):
    bad = []
    for p in (3, 5, 7):
        G = group(f"vector:{p},2")
        A = cross(G, p)
        axes = {G.set(range(p)).bits, G.set(range(0, p * p, p)).bits}
        res = theorem_b_search(A, max_complexity=2)
        ok = (
            res.n == 2
            and {H.bits for _, H in res.cover} == axes
            and all(g == 0 for g, _ in res.cover)
            and all(e is not None and e.complexity <= 2 and e.evaluate(A) == H
                    for (_, H), e in zip(res.cover, res.expressions))
        )
        if not ok:
            bad.append(p)
    verdict(9, "cross is covered by its two axes, each a 2-atom expression", not bad, f"failing p={bad}")


def test_c10_plunnecke_and_exponent(verdict):
    abelian = tuple(d for d in CORPUS if group(d).is_abelian)
    bad = []
    for A in corpus_sets(500, seed=10, names=abelian):
        for k, l in ((2, 0), (3, 0), (2, 2)):
            if not plunnecke_check(A, k, l):
                bad.append(("plunnecke", k, l, A.group.descriptor, A.to_list()))
    rng = random.Random(11)
    flags = {}
    for i in range(100):
        G = group(f"vector:2,{1 + i % 6}")
        A = G.set(rng.sample(range(G.order), rng.randint(1, G.order)))
        res = exponent_bound_check(A, 2)
        flags[res.flag] = flags.get(res.flag, 0) + 1
        if not res:
            bad.append(("exponent", G.descriptor, A.to_list()))
    verdict(10, "Plunnecke (2,0),(3,0),(2,2) and bounded-exponent checks", not bad,
            f"500 + 100 instances, flags={flags}, violations={bad[:3]}")


def test_c11_determinism(verdict, tmp_path):
    from pathlib import Path

    here = Path(__file__).parent
    outs = []
    for run in ("a", "b"):
        out = tmp_path / run
        assert main(["sweep", "--config", str(here / "data" / "corpus.json"), "--out-dir", str(out)]) == 0
        outs.append({p.name: p.read_bytes() for p in sorted(out.iterdir())})
    golden = {p.name: p.read_bytes() for p in sorted((here / "golden").iterdir())}
    verdict(11, "repeated sweeps are byte-identical and match the golden files",
            outs[0] == outs[1] == golden, f"{len(golden)} files")
